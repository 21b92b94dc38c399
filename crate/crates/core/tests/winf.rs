mod common;

use std::collections::BTreeMap;

use common::q;
use freefield::exactla::determinant;
use freefield::fock::AlgebraDescriptor;
use freefield::winf::{
    basis_bracket, build_mw, build_t, cocycle, d_bracket, lambda_mu, realized_action_coeffs, realized_kappa, verify_rep,
    DOp, ModeIndex, Realization,
};
use freefield::Rational;
use num_traits::Zero;
use proptest::prelude::*;

/// `J^l_k = -t^{l+k} ∂^l` acting on `t^s`, as a map `s ↦ {exponent: coeff}`.
fn act(x: &DOp<Rational>, s: i64) -> BTreeMap<i64, Rational> {
    let mut out = BTreeMap::new();
    for ((l, k), c) in x.iter() {
        let falling: i64 = (0..l as i64).map(|j| s - j).product();
        let e = out.entry(s + k).or_insert_with(Rational::zero);
        *e -= c.clone() * q(falling);
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn act_twice(x: &DOp<Rational>, y: &DOp<Rational>, s: i64) -> BTreeMap<i64, Rational> {
    let mut out: BTreeMap<i64, Rational> = BTreeMap::new();
    for (e, c) in act(y, s) {
        for (e2, c2) in act(x, e) {
            *out.entry(e2).or_insert_with(Rational::zero) += c.clone() * c2;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn letters() -> Vec<(u32, i64)> {
    (0..=3).flat_map(|l| (-3..=3).map(move |k| (l, k))).collect()
}

#[test]
fn bracket_matches_differential_operators_on_laurent_monomials() {
    for &(l1, k1) in &letters() {
        for &(l2, k2) in &letters() {
            let (x, y): (DOp<Rational>, DOp<Rational>) = (DOp::basis(l1, k1), DOp::basis(l2, k2));
            let br = basis_bracket::<Rational>(l1, k1, l2, k2);
            for s in -6..=6 {
                let mut lhs = act_twice(&x, &y, s);
                for (e, c) in act_twice(&y, &x, s) {
                    *lhs.entry(e).or_insert_with(Rational::zero) -= c;
                }
                lhs.retain(|_, c| !c.is_zero());
                assert_eq!(lhs, act(&br, s), "[J^{l1}_{k1}, J^{l2}_{k2}] on t^{s}");
            }
        }
    }
}

#[test]
fn heisenberg_and_antisymmetry() {
    for a in -4i64..=4 {
        assert_eq!(cocycle::<Rational>(0, a, 0, -a), q(a));
    }
    for &(l1, k1) in &letters() {
        for &(l2, k2) in &letters() {
            let xy = basis_bracket::<Rational>(l1, k1, l2, k2);
            let yx = basis_bracket::<Rational>(l2, k2, l1, k1);
            assert_eq!(xy, yx.scaled(&q(-1)));
        }
    }
}

proptest! {
    #[test]
    fn jacobi_identity_with_central_term(
        x in (0u32..=3, -3i64..=3), y in (0u32..=3, -3i64..=3), z in (0u32..=3, -3i64..=3)
    ) {
        let (x, y, z): (DOp<Rational>, DOp<Rational>, DOp<Rational>) = (DOp::basis(x.0, x.1), DOp::basis(y.0, y.1), DOp::basis(z.0, z.1));
        let j = d_bracket(&x, &d_bracket(&y, &z))
            .add(&d_bracket(&y, &d_bracket(&z, &x)))
            .add(&d_bracket(&z, &d_bracket(&x, &y)));
        prop_assert!(j.is_zero(), "{}", j);
    }
}

#[test]
fn realization_is_a_representation_at_low_weight() {
    for alg in [AlgebraDescriptor::bg(1), AlgebraDescriptor::bc(1)] {
        for &(l1, k1) in &[(0, 1), (1, -2), (2, 1), (1, 0)] {
            for &(l2, k2) in &[(0, -1), (2, -1), (1, 2)] {
                let report = verify_rep::<Rational>(l1, k1, l2, k2, &alg, 3, 3).unwrap();
                assert!(report.ok(), "{alg:?} {}", report.to_json());
            }
        }
    }
    assert_eq!(realized_kappa::<Rational>(&AlgebraDescriptor::bg(2)).unwrap(), q(-2));
    assert_eq!(realized_kappa::<Rational>(&AlgebraDescriptor::bc(2)).unwrap(), q(2));
}

#[test]
fn degree_one_action_matches_closed_forms() {
    let real = Realization::<Rational>::new(AlgebraDescriptor::bg(1)).unwrap();
    for w in 1..=3 {
        for k in 0..=5 {
            for l in 0..=3 {
                let got = realized_action_coeffs(&real, w, k, l, 1).unwrap();
                assert_eq!(got, lambda_mu::<Rational>(w, k, l), "w={w} k={k} l={l}");
            }
        }
    }
}

#[test]
fn matrix_determinants() {
    for r in 1..=4 {
        for m in 1..=4 {
            assert!(!determinant(&build_t::<Rational>(r, m)).unwrap().is_zero());
        }
    }
    assert_eq!(determinant(&build_mw::<Rational>(1, 0)).unwrap(), q(2));
}

#[test]
fn mode_index_conventions() {
    for l in 0..4 {
        for k in -3..4 {
            let m = ModeIndex::new(l, k);
            assert_eq!(ModeIndex::from_basis(m.to_basis().0, m.to_basis().1), m);
            assert_eq!(m.weight_shift(), l as i64 - k);
            assert_eq!(m.d_weight(), k - l as i64);
        }
    }
}

#[test]
fn dop_json_round_trip() {
    let mut x = DOp::<Rational>::central(q(-3));
    x.add_term(2, -1, q(5));
    x.add_term(0, 4, Rational::new(1.into(), 2.into()));
    assert_eq!(DOp::from_json(&x.to_json()).unwrap(), x);
}
