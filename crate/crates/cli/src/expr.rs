//! The expression language for states.
//!
//! ```text
//! expr := sum
//! sum  := prod (("+" | "-") prod)*
//! prod := [rational "*"] atom
//! atom := "vac" | gen | "D" ["^" int] "(" expr ")"
//!       | "NO(" expr ("," expr)+ ")" | "CP(" expr "," int "," expr ")" | "(" expr ")"
//! gen  := ("beta" | "gamma" | "bb" | "cc") "[" int "]" | "J" "[" int "]"
//! ```

use std::collections::BTreeSet;
use std::fmt;

use freefield::fieldcalc::{derive_n, FieldCalc};
use freefield::fock::{AlgebraDescriptor, GeneratorMode, Species};
use freefield::winf::realize;
use freefield::{Rational, State};
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Vac,
    Gen(Species, u32),
    /// Realized `J^l`.
    J(u32),
    /// `D^k(e)`, with `k ≥ 1`.
    D(u32, Box<Expr>),
    /// Right-nested normal ordering of two or more factors.
    No(Vec<Expr>),
    Cp(Box<Expr>, i32, Box<Expr>),
    /// A sum with at least two terms, or a single scaled term.
    Sum(Vec<Term>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    /// Joined with `-` rather than `+`; always false on the first term.
    pub negated: bool,
    pub coeff: Option<Rational>,
    pub atom: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub expected: BTreeSet<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let expected: Vec<&str> = self.expected.iter().map(String::as_str).collect();
        write!(f, "syntax error at byte {}: expected one of {}, found {}", self.offset, expected.join(" "), self.found)
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

const GENERATORS: [(&str, Species); 4] =
    [("beta", Species::Beta), ("gamma", Species::Gamma), ("bb", Species::B), ("cc", Species::C)];

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.rest().chars().next().filter(|c| c.is_whitespace()) {
            self.pos += c.len_utf8();
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn error<const N: usize>(&self, expected: [&str; N]) -> ParseError {
        let found = match self.rest().chars().next() {
            None => "end of input".to_string(),
            Some(c) => format!("{c:?}"),
        };
        ParseError { offset: self.pos, expected: expected.iter().map(|s| s.to_string()).collect(), found }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &'static str) -> Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error([token]))
        }
    }

    /// Keyword followed by `(` or `[`, so that e.g. `Dx` is not read as `D`.
    fn eat_keyword(&mut self, word: &str, next: char) -> bool {
        self.skip_ws();
        let rest = self.rest();
        if let Some(after) = rest.strip_prefix(word) {
            if after.trim_start().starts_with(next) {
                self.pos += word.len();
                return true;
            }
        }
        false
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        self.pos += len;
        (len > 0).then(|| &self.src[start..self.pos])
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let neg = self.eat("-");
        self.skip_ws();
        let Some(d) = self.digits() else {
            self.pos = start;
            return Err(self.error(["integer"]));
        };
        let v: i64 = d.parse().map_err(|_| {
            let mut e = self.error(["integer"]);
            e.offset = start;
            e
        })?;
        Ok(if neg { -v } else { v })
    }

    fn uint(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.digits().and_then(|d| d.parse().ok()) {
            Some(v) => Ok(v),
            None => {
                self.pos = start;
                Err(self.error(["non-negative integer"]))
            }
        }
    }

    /// `p` or `p/q` followed by `*`; rewinds when there is none.
    fn coefficient(&mut self) -> Result<Option<Rational>, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let neg = self.eat("-");
        self.skip_ws();
        let Some(p) = self.digits() else {
            self.pos = start;
            return Ok(None);
        };
        let mut value = Rational::from_integer(p.parse().unwrap());
        if self.eat("/") {
            self.skip_ws();
            let q = self.digits().ok_or_else(|| self.error(["denominator"]))?;
            let q: num_bigint::BigInt = q.parse().unwrap();
            if q.is_zero() {
                return Err(self.error(["nonzero denominator"]));
            }
            value /= Rational::from_integer(q);
        }
        if neg {
            value = -value;
        }
        self.expect("*")?;
        Ok(Some(value))
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut terms = vec![self.prod(false)?];
        loop {
            if self.eat("+") {
                terms.push(self.prod(false)?);
            } else if self.eat("-") {
                terms.push(self.prod(true)?);
            } else {
                break;
            }
        }
        if terms.len() == 1 && terms[0].coeff.is_none() {
            return Ok(terms.pop().unwrap().atom);
        }
        Ok(Expr::Sum(terms))
    }

    fn prod(&mut self, negated: bool) -> Result<Term, ParseError> {
        let coeff = self.coefficient()?;
        let atom = self.atom()?;
        Ok(Term { negated, coeff, atom })
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        if self.rest().starts_with("vac") && !self.ident_continues(3) {
            self.pos += 3;
            return Ok(Expr::Vac);
        }
        for (name, species) in GENERATORS {
            if self.eat_keyword(name, '[') {
                self.expect("[")?;
                let i = self.uint()?;
                self.expect("]")?;
                return Ok(Expr::Gen(species, i));
            }
        }
        if self.eat_keyword("J", '[') {
            self.expect("[")?;
            let l = self.uint()?;
            self.expect("]")?;
            return Ok(Expr::J(l));
        }
        if self.eat_keyword("NO", '(') {
            self.expect("(")?;
            let mut args = vec![self.sum()?];
            self.expect(",")?;
            args.push(self.sum()?);
            while self.eat(",") {
                args.push(self.sum()?);
            }
            self.expect(")")?;
            return Ok(Expr::No(args));
        }
        if self.eat_keyword("CP", '(') {
            self.expect("(")?;
            let a = self.sum()?;
            self.expect(",")?;
            let n = self.int()?;
            let n = i32::try_from(n).map_err(|_| self.error(["small integer"]))?;
            self.expect(",")?;
            let b = self.sum()?;
            self.expect(")")?;
            return Ok(Expr::Cp(Box::new(a), n, Box::new(b)));
        }
        if self.eat_keyword("D", '(') || self.eat_keyword("D", '^') {
            let k = if self.eat("^") {
                let k = self.uint()?;
                if k == 0 {
                    return Err(self.error(["positive integer"]));
                }
                k
            } else {
                1
            };
            self.expect("(")?;
            let e = self.sum()?;
            self.expect(")")?;
            return Ok(Expr::D(k, Box::new(e)));
        }
        if self.eat("(") {
            let e = self.sum()?;
            self.expect(")")?;
            return Ok(e);
        }
        Err(self.error(["vac", "beta[", "gamma[", "bb[", "cc[", "J[", "D", "NO(", "CP(", "(", "rational *"]))
    }

    fn ident_continues(&self, len: usize) -> bool {
        self.rest()[len..].chars().next().is_some_and(|c| c.is_alphanumeric() || c == '_')
    }
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.sum()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.error(["+", "-", "end of input"]));
    }
    Ok(e)
}

fn species_name(s: Species) -> &'static str {
    match s {
        Species::Beta => "beta",
        Species::Gamma => "gamma",
        Species::B => "bb",
        Species::C => "cc",
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Vac => f.write_str("vac"),
            Expr::Gen(s, i) => write!(f, "{}[{i}]", species_name(*s)),
            Expr::J(l) => write!(f, "J[{l}]"),
            Expr::D(1, e) => write!(f, "D({e})"),
            Expr::D(k, e) => write!(f, "D^{k}({e})"),
            Expr::No(args) => {
                let parts: Vec<String> = args.iter().map(ToString::to_string).collect();
                write!(f, "NO({})", parts.join(", "))
            }
            Expr::Cp(a, n, b) => write!(f, "CP({a}, {n}, {b})"),
            Expr::Sum(terms) => {
                for (i, t) in terms.iter().enumerate() {
                    if i > 0 {
                        f.write_str(if t.negated { " - " } else { " + " })?;
                    }
                    if let Some(c) = &t.coeff {
                        write!(f, "{c} * ")?;
                    }
                    match &t.atom {
                        Expr::Sum(_) => write!(f, "({})", t.atom)?,
                        a => write!(f, "{a}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

/// Evaluates an expression to a state of the given algebra. Fails on a
/// species or index the algebra lacks, and on `J[l]` in `bcbg`.
pub fn eval(e: &Expr, alg: &AlgebraDescriptor, calc: &FieldCalc<Rational>) -> freefield::Result<State> {
    Ok(match e {
        Expr::Vac => State::vacuum(),
        Expr::Gen(s, i) => {
            let g = GeneratorMode::new(*s, *i, -1);
            alg.check_mode(&g)?;
            State::from_modes(&[g])
        }
        Expr::J(l) => realize(*l, alg)?,
        Expr::D(k, inner) => derive_n(&eval(inner, alg, calc)?, *k),
        Expr::No(args) => {
            let states: Vec<State> = args.iter().map(|a| eval(a, alg, calc)).collect::<freefield::Result<_>>()?;
            calc.nprod(&states)?
        }
        Expr::Cp(a, n, b) => calc.circle(&eval(a, alg, calc)?, *n, &eval(b, alg, calc)?),
        Expr::Sum(terms) => {
            let mut out = State::zero();
            for t in terms {
                let mut c = t.coeff.clone().unwrap_or_else(Rational::one);
                if t.negated {
                    c = -c;
                }
                out.add_scaled(&c, &eval(&t.atom, alg, calc)?);
            }
            out
        }
    })
}
