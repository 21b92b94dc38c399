//! Fock-space model of the βγ-system S(V), the bc-system E(V) and their
//! tensor product E(V)⊗S(V).
//!
//! A state is a finite linear combination of monomials in creation modes
//! applied to the vacuum. Generator modes follow the field convention
//! `a(z) = Σ a(m) z^{-m-1}`; the only nonzero (super)commutators are
//!
//! ```text
//! [β^i(k), γ^j(m)] = δ_ij δ_{k+m+1,0}      {b^i(k), c^j(m)} = δ_ij δ_{k+m+1,0}
//! ```
//!
//! β and b have conformal weight 1, γ and c weight 0, so the mode `a(m)`
//! of a weight-Δ generator shifts weight by `Δ - m - 1`.

mod basis;
mod gr;
mod state;

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

pub use basis::{basis, basis_up_to, creation_modes, ChargeFilter};
pub use gr::{gr_basis, gr_symbol, GrMonomial, GrPolynomial, GrSymbol};
pub use state::{apply_mode, apply_mode_monomial, State};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Species {
    Beta,
    Gamma,
    B,
    C,
}

impl Species {
    pub const ALL: [Species; 4] = [Species::Beta, Species::Gamma, Species::B, Species::C];

    pub fn is_odd(self) -> bool {
        matches!(self, Species::B | Species::C)
    }

    pub fn conformal_weight(self) -> i64 {
        match self {
            Species::Beta | Species::B => 1,
            Species::Gamma | Species::C => 0,
        }
    }

    /// The species whose modes pair nontrivially with this one.
    pub fn partner(self) -> Species {
        match self {
            Species::Beta => Species::Gamma,
            Species::Gamma => Species::Beta,
            Species::B => Species::C,
            Species::C => Species::B,
        }
    }

    /// Value of the (anti)commutator `[x(k), partner(-k-1)]` for `k >= 0`.
    pub(crate) fn contraction_sign(self) -> i64 {
        match self {
            Species::Gamma => -1,
            _ => 1,
        }
    }

    /// Whether this species transforms like a vector of V (as opposed to V*).
    pub fn is_vector_like(self) -> bool {
        matches!(self, Species::Beta | Species::B)
    }

    pub fn name(self) -> &'static str {
        match self {
            Species::Beta => "beta",
            Species::Gamma => "gamma",
            Species::B => "b",
            Species::C => "c",
        }
    }

    pub fn glyph(self) -> &'static str {
        match self {
            Species::Beta => "β",
            Species::Gamma => "γ",
            Species::B => "b",
            Species::C => "c",
        }
    }

    pub fn from_name(name: &str) -> Option<Species> {
        match name {
            "beta" | "β" => Some(Species::Beta),
            "gamma" | "γ" => Some(Species::Gamma),
            "b" | "bb" => Some(Species::B),
            "c" | "cc" => Some(Species::C),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    Bg,
    Bc,
    Bcbg,
}

impl AlgebraKind {
    pub fn name(self) -> &'static str {
        match self {
            AlgebraKind::Bg => "bg",
            AlgebraKind::Bc => "bc",
            AlgebraKind::Bcbg => "bcbg",
        }
    }

    pub fn from_name(name: &str) -> Option<AlgebraKind> {
        match name {
            "bg" => Some(AlgebraKind::Bg),
            "bc" => Some(AlgebraKind::Bc),
            "bcbg" => Some(AlgebraKind::Bcbg),
            _ => None,
        }
    }

    pub fn species(self) -> &'static [Species] {
        match self {
            AlgebraKind::Bg => &[Species::Beta, Species::Gamma],
            AlgebraKind::Bc => &[Species::B, Species::C],
            AlgebraKind::Bcbg => &Species::ALL,
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which free-field algebra on `V = C^rank` we work in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraDescriptor {
    pub kind: AlgebraKind,
    pub rank: u32,
}

impl AlgebraDescriptor {
    pub fn new(kind: AlgebraKind, rank: u32) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidArgument("rank must be at least 1".into()));
        }
        Ok(Self { kind, rank })
    }

    pub fn bg(rank: u32) -> Self {
        Self::new(AlgebraKind::Bg, rank).expect("rank >= 1")
    }

    pub fn bc(rank: u32) -> Self {
        Self::new(AlgebraKind::Bc, rank).expect("rank >= 1")
    }

    pub fn bcbg(rank: u32) -> Self {
        Self::new(AlgebraKind::Bcbg, rank).expect("rank >= 1")
    }

    pub fn allows(&self, species: Species) -> bool {
        self.kind.species().contains(&species)
    }

    pub fn check_mode(&self, mode: &GeneratorMode) -> Result<()> {
        if !self.allows(mode.species) {
            return Err(Error::InvalidSpecies {
                species: mode.species.name().into(),
                algebra: self.kind.name().into(),
            });
        }
        if mode.index == 0 || mode.index > self.rank {
            return Err(Error::IndexOutOfRange { index: mode.index, rank: self.rank });
        }
        Ok(())
    }
}

/// (conformal weight, filtration degree) of a homogeneous subspace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bidegree {
    pub weight: i64,
    pub degree: usize,
}

impl Bidegree {
    pub fn new(weight: i64, degree: usize) -> Self {
        Self { weight, degree }
    }
}

/// A single Fourier mode `species^index(mode)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorMode {
    pub species: Species,
    pub index: u32,
    pub mode: i32,
}

impl GeneratorMode {
    pub fn new(species: Species, index: u32, mode: i32) -> Self {
        Self { species, index, mode }
    }

    pub fn is_creation(&self) -> bool {
        self.mode < 0
    }

    pub fn is_odd(&self) -> bool {
        self.species.is_odd()
    }

    pub fn weight_shift(&self) -> i64 {
        self.species.conformal_weight() - self.mode as i64 - 1
    }

    /// The mode this one contracts against.
    pub fn partner(&self) -> GeneratorMode {
        GeneratorMode::new(self.species.partner(), self.index, -self.mode - 1)
    }
}

// Canonical order: species, then index ascending, then mode descending.
impl Ord for GeneratorMode {
    fn cmp(&self, other: &Self) -> Ordering {
        self.species
            .cmp(&other.species)
            .then(self.index.cmp(&other.index))
            .then(other.mode.cmp(&self.mode))
    }
}

impl PartialOrd for GeneratorMode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GeneratorMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}({})", self.species.glyph(), superscript(self.index as i64), self.mode)
    }
}

pub(crate) fn superscript(n: i64) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    let mut s = String::new();
    if n < 0 {
        s.push('⁻');
    }
    for ch in n.unsigned_abs().to_string().chars() {
        s.push(DIGITS[ch.to_digit(10).unwrap() as usize]);
    }
    s
}

/// Canonically ordered word of creation modes applied to the vacuum.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<GeneratorMode>);

impl Monomial {
    pub fn vacuum() -> Self {
        Monomial(Vec::new())
    }

    /// Sorts an arbitrary word of creation modes into canonical order,
    /// returning the sign picked up from transposing odd modes, or `None`
    /// when an odd mode repeats (the word vanishes).
    pub fn from_word(mut word: Vec<GeneratorMode>) -> Option<(i64, Monomial)> {
        debug_assert!(word.iter().all(GeneratorMode::is_creation));
        let mut sign = 1;
        for i in 1..word.len() {
            let mut j = i;
            while j > 0 && word[j - 1] > word[j] {
                if word[j - 1].is_odd() && word[j].is_odd() {
                    sign = -sign;
                }
                word.swap(j - 1, j);
                j -= 1;
            }
        }
        if word.windows(2).any(|w| w[0] == w[1] && w[0].is_odd()) {
            return None;
        }
        Some((sign, Monomial(word)))
    }

    pub fn factors(&self) -> &[GeneratorMode] {
        &self.0
    }

    pub fn is_vacuum(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> i64 {
        self.0.iter().map(GeneratorMode::weight_shift).sum()
    }

    /// True for an odd number of fermionic factors.
    pub fn is_odd(&self) -> bool {
        self.0.iter().filter(|g| g.is_odd()).count() % 2 == 1
    }

    /// Charge under a diagonal torus with `charges[r][i - 1]` the weight of
    /// the r-th circle on the i-th coordinate of V.
    pub fn charge(&self, charges: &[Vec<i64>]) -> Vec<i64> {
        let mut out = vec![0i64; charges.len()];
        for g in &self.0 {
            let sign = if g.species.is_vector_like() { 1 } else { -1 };
            for (r, row) in charges.iter().enumerate() {
                out[r] += sign * row.get(g.index as usize - 1).copied().unwrap_or(0);
            }
        }
        out
    }

    /// Splits off the leading factor: `self = first · rest`.
    pub fn split_first(&self) -> Option<(GeneratorMode, Monomial)> {
        self.0.split_first().map(|(g, rest)| (*g, Monomial(rest.to_vec())))
    }

    /// Deepest annihilation index that can act nontrivially on this monomial.
    pub fn max_depth(&self) -> i32 {
        self.0.iter().map(|g| -g.mode - 1).max().unwrap_or(-1)
    }

    pub(crate) fn from_sorted_unchecked(word: Vec<GeneratorMode>) -> Self {
        debug_assert!(word.windows(2).all(|w| w[0] <= w[1]));
        Monomial(word)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.0.iter().map(|g| serde_json::json!([g.species.name(), g.index, g.mode])).collect(),
        )
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let bad = || Error::Format(format!("monomial json: {value}"));
        let mut word = Vec::new();
        for triple in value.as_array().ok_or_else(bad)? {
            let species = triple[0].as_str().and_then(Species::from_name).ok_or_else(bad)?;
            let index = triple[1].as_u64().ok_or_else(bad)? as u32;
            let mode = triple[2].as_i64().ok_or_else(bad)? as i32;
            if mode >= 0 {
                return Err(bad());
            }
            word.push(GeneratorMode::new(species, index, mode));
        }
        let sorted = word.windows(2).all(|w| w[0] < w[1] || (w[0] == w[1] && !w[0].is_odd()));
        if !sorted {
            return Err(Error::Format("monomial not in canonical order".into()));
        }
        Ok(Monomial(word))
    }

    /// Field notation: `u(-k-1)` is written `∂^k u`, and the caller divides
    /// the coefficient by `Π k!`.
    pub fn field_notation(&self) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let letters: Vec<String> = self
            .0
            .iter()
            .map(|g| {
                let k = -g.mode - 1;
                let d = match k {
                    0 => String::new(),
                    1 => "∂".into(),
                    _ => format!("∂{}", superscript(k as i64)),
                };
                format!("{d}{}{}", g.species.glyph(), superscript(g.index as i64))
            })
            .collect();
        if letters.len() == 1 {
            letters[0].clone()
        } else {
            format!(":{}:", letters.join(" "))
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.0 {
            write!(f, "{g}")?;
        }
        f.write_str("|0⟩")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order() {
        let a = GeneratorMode::new(Species::Beta, 1, -1);
        let b = GeneratorMode::new(Species::Beta, 1, -3);
        let c = GeneratorMode::new(Species::Gamma, 1, -1);
        let d = GeneratorMode::new(Species::Beta, 2, -1);
        let mut v = vec![c, b, d, a];
        v.sort();
        assert_eq!(v, vec![a, b, d, c]);
    }

    #[test]
    fn fermionic_sort_sign() {
        let c1 = GeneratorMode::new(Species::C, 1, -1);
        let c2 = GeneratorMode::new(Species::C, 1, -2);
        let (s, m) = Monomial::from_word(vec![c2, c1]).unwrap();
        assert_eq!(s, -1);
        assert_eq!(m.factors(), &[c1, c2]);
        assert!(Monomial::from_word(vec![c1, c1]).is_none());
        let g = GeneratorMode::new(Species::Gamma, 1, -1);
        let (s, _) = Monomial::from_word(vec![c1, g, g]).unwrap();
        assert_eq!(s, 1);
    }

    #[test]
    fn mode_weights() {
        assert_eq!(GeneratorMode::new(Species::Beta, 1, -1).weight_shift(), 1);
        assert_eq!(GeneratorMode::new(Species::Gamma, 1, -1).weight_shift(), 0);
        assert_eq!(GeneratorMode::new(Species::Gamma, 1, -3).weight_shift(), 2);
        assert_eq!(GeneratorMode::new(Species::B, 1, -2).weight_shift(), 2);
    }

    #[test]
    fn descriptor_validation() {
        assert!(AlgebraDescriptor::new(AlgebraKind::Bg, 0).is_err());
        let alg = AlgebraDescriptor::bg(2);
        assert!(alg.check_mode(&GeneratorMode::new(Species::B, 1, -1)).is_err());
        assert!(alg.check_mode(&GeneratorMode::new(Species::Beta, 3, -1)).is_err());
        assert!(alg.check_mode(&GeneratorMode::new(Species::Gamma, 2, 4)).is_ok());
    }

    #[test]
    fn monomial_json_round_trip() {
        let (_, m) = Monomial::from_word(vec![
            GeneratorMode::new(Species::Gamma, 1, -2),
            GeneratorMode::new(Species::Beta, 2, -1),
        ])
        .unwrap();
        assert_eq!(Monomial::from_json(&m.to_json()).unwrap(), m);
        assert_eq!(m.to_json().to_string(), r#"[["beta",2,-1],["gamma",1,-2]]"#);
    }
}
