mod common;

use std::collections::BTreeMap;

use common::{p, poly_strategy, random_matrix, random_poly, rng};
use ncpoly::eval::{evaluate, MatrixTuple};
use ncpoly::parse::{format_poly, parse_field, parse_poly};
use ncpoly::{Context, Error, NcPoly, Scalar, UniPoly, Word};
use proptest::prelude::*;
use rand::Rng;

/// Schoolbook product on raw (letters, integer) pairs.
fn convolve(f: &NcPoly, g: &NcPoly) -> NcPoly {
    let mut acc: BTreeMap<Vec<u16>, i64> = BTreeMap::new();
    let int = |c: &Scalar| c.to_string().parse::<i64>().unwrap();
    for (u, a) in f.terms() {
        for (v, b) in g.terms() {
            let key: Vec<u16> = u.letters().iter().chain(v.letters()).map(|l| l.code()).collect();
            *acc.entry(key).or_default() += int(a) * int(b);
        }
    }
    let codes = |k: &[u16]| {
        Word::from_letters(k.iter().map(|&c| ncpoly::Letter::new((c >> 1) as usize, c & 1 == 1)))
    };
    NcPoly::from_terms(acc.into_iter().filter(|(_, c)| *c != 0).map(|(k, c)| (codes(&k), Scalar::from_int(c))))
}

#[test]
fn product_matches_schoolbook_oracle() {
    assert_eq!(&p("x + y") * &p("x - y"), p("x^2 - x*y + y*x - y^2"));
    let mut r = rng(1);
    for _ in 0..200 {
        let f = random_poly(&mut r, 3, 4, 5, true);
        let g = random_poly(&mut r, 3, 4, 5, true);
        assert_eq!(&f * &g, convolve(&f, &g));
    }
}

#[test]
fn letter_codes_round_trip() {
    for v in 0..4 {
        for s in [false, true] {
            let l = ncpoly::Letter::new(v, s);
            assert_eq!(((l.code() >> 1) as usize, l.code() & 1 == 1), (v, s));
        }
    }
}

#[test]
fn compose_star_and_cycles() {
    assert_eq!(p("x*y").compose(&UniPoly::from_ints(&[0, 1, 1])), p("x*y*x*y + x*y"));
    assert_eq!(p("x*x*").star(), p("x*x*"));
    assert!(p("x*x*").cyclically_equivalent(&p("x**x")));
    assert!(p("x*y*z").cyclically_equivalent(&p("z*x*y")));
    assert!(!p("x*y*z").cyclically_equivalent(&p("x*z*y")));
}

fn rotate(f: &NcPoly, r: &mut rand_chacha::ChaCha8Rng) -> NcPoly {
    NcPoly::from_terms(f.terms().map(|(w, c)| {
        let k = if w.is_empty() { 0 } else { r.gen_range(0..w.len()) };
        (w.suffix_from(k).concat(&w.prefix(k)), c.clone())
    }))
}

#[test]
fn cyclic_equivalence_preserves_traces() {
    let mut r = rng(2);
    for _ in 0..20 {
        let f = random_poly(&mut r, 2, 4, 5, false);
        let g = rotate(&f, &mut r);
        assert!(f.cyclically_equivalent(&g));
        for _ in 0..10 {
            let x = MatrixTuple::new(vec![random_matrix(&mut r, 3, 3, 5), random_matrix(&mut r, 3, 3, 5)]).unwrap();
            assert_eq!(evaluate(&f, &x).unwrap().trace(), evaluate(&g, &x).unwrap().trace());
        }
    }
}

#[test]
fn parse_errors_carry_positions() {
    let ctx = Context::default();
    for (src, col) in [("x + ", 5), ("x * (y", 7), ("2x + q", 6), ("x^", 3)] {
        match parse_poly(src, &ctx) {
            Err(Error::Parse { line: 1, col: c, .. }) => assert_eq!(c, col, "{src}"),
            other => panic!("{src}: {other:?}"),
        }
    }
    assert!(matches!(parse_field("R(i)"), Err(Error::Parse { .. })));
    assert!(matches!(ctx.parse("x/y"), Err(Error::Parse { .. })));
    assert!(matches!(ctx.parse("x/0"), Err(Error::Parse { .. })));
}

#[test]
fn tower_preamble() {
    let src = "field Q(sqrt5)(xi: xi^2 = 29 + 13*sqrt5)\n(sqrt5 - 1)/2*x + xi*y";
    let (ctx, f) = ncpoly::parse::parse_with_preamble(src, &Context::default()).unwrap();
    assert_eq!(ctx.parse(&ctx.print(&f)).unwrap(), f);
    let sq = &ctx.parse("xi").unwrap() * &ctx.parse("xi").unwrap();
    assert_eq!(sq, ctx.parse("29 + 13*sqrt5").unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ring_axioms(f in poly_strategy(2, 4, true), g in poly_strategy(2, 4, true), h in poly_strategy(2, 4, true)) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!((&f * &g).star(), &g.star() * &f.star());
    }

    #[test]
    fn degree_is_additive(f in poly_strategy(3, 4, true), g in poly_strategy(3, 4, true)) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        prop_assert_eq!((&f * &g).deg0(), f.deg0() + g.deg0());
    }

    #[test]
    fn compose_is_multiplicative(f in poly_strategy(2, 2, false), a in prop::collection::vec(-3i64..=3, 0..4), b in prop::collection::vec(-3i64..=3, 0..4)) {
        let (pa, pb) = (UniPoly::from_ints(&a), UniPoly::from_ints(&b));
        prop_assert_eq!(f.compose(&(&pa * &pb)), &f.compose(&pa) * &f.compose(&pb));
    }

    #[test]
    fn print_parse_round_trip(f in poly_strategy(3, 5, true)) {
        let ctx = Context::with_arity(3);
        prop_assert_eq!(ctx.parse(&ctx.print(&f)).unwrap(), f.clone());
        let named = vec!["a1".to_string(), "b".to_string(), "c_2".to_string()];
        prop_assert_eq!(parse_poly(&format_poly(&f, &named), &Context::new(named.clone(), ncpoly::Field::rationals())).unwrap(), f);
    }
}
