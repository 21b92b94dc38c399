use freefield::fock::Species;
use freefield::Rational;
use freefield_cli::expr::{parse, Expr, Term};
use proptest::prelude::*;

fn species() -> impl Strategy<Value = Species> {
    prop_oneof![Just(Species::Beta), Just(Species::Gamma), Just(Species::B), Just(Species::C)]
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        Just(Expr::Vac),
        (species(), 1u32..=3).prop_map(|(s, i)| Expr::Gen(s, i)),
        (0u32..=5).prop_map(Expr::J),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        let term = (any::<bool>(), prop::option::of(rational()), inner.clone())
            .prop_map(|(negated, coeff, atom)| Term { negated, coeff, atom });
        prop_oneof![
            (1u32..=3, inner.clone()).prop_map(|(k, e)| Expr::D(k, Box::new(e))),
            prop::collection::vec(inner.clone(), 2..=3).prop_map(Expr::No),
            (inner.clone(), -3i32..=3, inner.clone()).prop_map(|(a, n, b)| Expr::Cp(Box::new(a), n, Box::new(b))),
            prop::collection::vec(term, 1..=3).prop_map(|mut terms| {
                terms[0].negated = false;
                if terms.len() == 1 && terms[0].coeff.is_none() {
                    terms[0].coeff = Some(Rational::from_integer(2.into()));
                }
                Expr::Sum(terms)
            }),
        ]
    })
}

proptest! {
    #[test]
    fn printing_then_parsing_is_the_identity(e in expr()) {
        let text = e.to_string();
        prop_assert_eq!(parse(&text), Ok(e), "{}", text);
    }

    #[test]
    fn parser_never_panics(s in "[ -~]{0,40}") {
        let _ = parse(&s);
    }
}

#[test]
fn whitespace_and_parentheses_are_insignificant() {
    let a = parse("NO(gamma[1],D(beta[1]))").unwrap();
    let b = parse("  NO( gamma[1] , D( (beta[1]) ) )  ").unwrap();
    assert_eq!(a, b);
    assert_eq!(a.to_string(), "NO(gamma[1], D(beta[1]))");
}

#[test]
fn error_offsets() {
    let err = parse("CP(J[0], x, J[0])").unwrap_err();
    assert_eq!(err.offset, 9);
    let err = parse("beta[1] +").unwrap_err();
    assert_eq!(err.offset, 9);
    assert_eq!(err.found, "end of input");
    assert!(parse("D^0(vac)").is_err());
    assert!(parse("NO(vac)").is_err());
}
