mod common;

use common::{count, free_generators, graded_counts, q};
use freefield::fock::{
    apply_mode, basis, gr_basis, gr_symbol, AlgebraDescriptor, Bidegree, ChargeFilter, GeneratorMode, Monomial,
    Species,
};
use freefield::State;

fn algebras() -> Vec<(AlgebraDescriptor, bool, bool)> {
    let mut out = Vec::new();
    for n in 1..=2 {
        out.push((AlgebraDescriptor::bg(n), true, false));
        out.push((AlgebraDescriptor::bc(n), false, true));
        out.push((AlgebraDescriptor::bcbg(n), true, true));
    }
    out
}

#[test]
fn basis_sizes_match_generating_function() {
    for (alg, bos, fer) in algebras() {
        let gens = free_generators(bos, fer, &vec![0; alg.rank as usize]);
        let table = graded_counts(&gens, 5, 5);
        for w in 0..=5 {
            for d in 0..=5 {
                let size = basis(&alg, Bidegree::new(w, d), None).len() as u64;
                assert_eq!(size, count(&table, w, d, 0), "{alg:?} ({w},{d})");
                assert_eq!(gr_basis(&alg, Bidegree::new(w, d)).len() as u64, size);
            }
        }
    }
}

#[test]
fn charge_filter_matches_generating_function() {
    let alg = AlgebraDescriptor::bg(2);
    let table = graded_counts(&free_generators(true, false, &[1, -1]), 4, 4);
    let filter = ChargeFilter::invariant(vec![vec![1, -1]]);
    for w in 0..=4 {
        for d in 0..=4 {
            let size = basis(&alg, Bidegree::new(w, d), Some(&filter)).len() as u64;
            assert_eq!(size, count(&table, w, d, 0));
        }
    }
}

#[test]
fn bases_are_sorted_and_duplicate_free() {
    for (alg, _, _) in algebras() {
        let b = basis(&alg, Bidegree::new(4, 3), None);
        assert!(b.windows(2).all(|w| w[0] < w[1]));
        assert!(b.iter().all(|m| m.weight() == 4 && m.degree() == 3));
    }
}

#[test]
fn canonical_commutation_relations() {
    // [x(k), y(m)] acting on every basis state of small bidegree
    let alg = AlgebraDescriptor::bcbg(1);
    let modes: Vec<GeneratorMode> = Species::ALL
        .iter()
        .flat_map(|&s| (-3..=2).map(move |k| GeneratorMode::new(s, 1, k)))
        .collect();
    let states: Vec<State> =
        (0..=3).flat_map(|w| (0..=3).flat_map(move |d| basis(&alg, Bidegree::new(w, d), None))).map(State::monomial).collect();
    for x in &modes {
        for y in &modes {
            let both_odd = x.is_odd() && y.is_odd();
            let expected = if y.species == x.species.partner() && x.mode + y.mode + 1 == 0 {
                // [β(a), γ(b)] = δ_{a+b+1,0} for all a, b; anticommutators of b, c are symmetric
                match x.species {
                    Species::Gamma => -1,
                    _ => 1,
                }
            } else {
                0
            };
            for s in &states {
                let xy = apply_mode(x, &apply_mode(y, s));
                let yx = apply_mode(y, &apply_mode(x, s));
                let lhs = if both_odd { xy.add(&yx) } else { xy.sub(&yx) };
                assert_eq!(lhs, s.scaled(&q(expected)), "{x} {y} on {s}");
            }
        }
    }
}

#[test]
fn gr_symbol_is_a_rescaling_of_monomials() {
    let alg = AlgebraDescriptor::bcbg(2);
    for m in basis(&alg, Bidegree::new(3, 3), None) {
        let g = gr_symbol(&State::monomial(m.clone())).unwrap();
        assert_eq!(g.iter().count(), 1);
        let (gm, _) = g.iter().next().unwrap();
        assert_eq!(gm.weight(), m.weight());
    }
}

#[test]
fn state_json_round_trip() {
    let alg = AlgebraDescriptor::bcbg(2);
    let mut s = State::zero();
    for (i, m) in basis(&alg, Bidegree::new(2, 2), None).into_iter().enumerate().take(7) {
        s.add_term(m, q(i as i64 - 3));
    }
    assert_eq!(State::from_json(&s.to_json()).unwrap(), s);
    assert!(Monomial::from_json(&serde_json::json!([["c", 1, -1], ["b", 1, -1]])).is_err());
}
