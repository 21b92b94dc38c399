use super::{AlgebraDescriptor, Bidegree, GeneratorMode, Monomial};

/// Restricts a basis listing to a fixed torus charge.
#[derive(Clone, Debug)]
pub struct ChargeFilter {
    pub charges: Vec<Vec<i64>>,
    pub target: Vec<i64>,
}

impl ChargeFilter {
    /// Charge zero for the given torus.
    pub fn invariant(charges: Vec<Vec<i64>>) -> Self {
        let target = vec![0; charges.len()];
        Self { charges, target }
    }
}

/// All creation modes of weight at most `max_weight`, in canonical order.
pub fn creation_modes(alg: &AlgebraDescriptor, max_weight: i64) -> Vec<GeneratorMode> {
    let mut out = Vec::new();
    for &species in alg.kind.species() {
        for index in 1..=alg.rank {
            let mut mode = -1;
            loop {
                let g = GeneratorMode::new(species, index, mode);
                if g.weight_shift() > max_weight {
                    break;
                }
                out.push(g);
                mode -= 1;
            }
        }
    }
    out.sort();
    out
}

/// Complete, duplicate-free, canonically ordered list of monomials of the
/// given weight and degree, optionally restricted to one charge.
pub fn basis(alg: &AlgebraDescriptor, bd: Bidegree, filter: Option<&ChargeFilter>) -> Vec<Monomial> {
    if bd.weight < 0 {
        return Vec::new();
    }
    let modes = creation_modes(alg, bd.weight);
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(bd.degree);
    extend(&modes, 0, bd.weight, bd.degree, &mut word, &mut out);
    if let Some(f) = filter {
        out.retain(|m| m.charge(&f.charges) == f.target);
    }
    out
}

/// Every monomial with weight at most `max_weight` and degree at most
/// `max_degree`, grouped by bidegree in increasing order.
pub fn basis_up_to(alg: &AlgebraDescriptor, max_weight: i64, max_degree: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for w in 0..=max_weight {
        for d in 0..=max_degree {
            out.extend(basis(alg, Bidegree::new(w, d), None));
        }
    }
    out
}

fn extend(
    modes: &[GeneratorMode],
    start: usize,
    weight_left: i64,
    degree_left: usize,
    word: &mut Vec<GeneratorMode>,
    out: &mut Vec<Monomial>,
) {
    if degree_left == 0 {
        if weight_left == 0 {
            out.push(Monomial::from_sorted_unchecked(word.clone()));
        }
        return;
    }
    for i in start..modes.len() {
        let g = modes[i];
        let w = g.weight_shift();
        if w > weight_left {
            continue;
        }
        word.push(g);
        // odd modes may not repeat
        let next = if g.is_odd() { i + 1 } else { i };
        extend(modes, next, weight_left - w, degree_left - 1, word, out);
        word.pop();
    }
}
