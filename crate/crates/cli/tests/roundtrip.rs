use drw_cli::corpus::{expr_round_trip, expr_text, symbol_round_trip, symbol_text};
use drw_cli::dsl::Dsl;
use drw_core::{FiniteField, FunctionField, LaurentRing, VarDecl};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rings() -> Vec<LaurentRing> {
    vec![
        LaurentRing::new(FiniteField::of(2, 1), vec![VarDecl::poly("x")]),
        LaurentRing::new(FiniteField::of(3, 1), vec![VarDecl::laurent("x"), VarDecl::poly("y")]),
        LaurentRing::new(FiniteField::of(3, 2), vec![VarDecl::laurent("a"), VarDecl::poly("b"), VarDecl::laurent("c")]),
    ]
}

#[test]
fn two_hundred_expressions() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let rings = rings();
    let mut done = 0;
    while done < 200 {
        let dsl = Dsl::new(rings[done % rings.len()].clone());
        let text = expr_text(&dsl, &mut rng, 3);
        if let Some(rt) = expr_round_trip(&dsl, &text) {
            assert!(rt.ok, "{:?} -> {:?}", rt.input, rt.printed);
            done += 1;
        }
    }
}

#[test]
fn printing_is_canonical() {
    let dsl = Dsl::new(rings()[1].clone());
    let a = dsl.parse_expr("d[x] + [y]*d[x] - 2").unwrap();
    let b = dsl.parse_expr("d([x]) + ([y])*(d[x]) + (-(2))").unwrap();
    assert_eq!(a, b);
    assert_eq!(dsl.print_expr(&a), "d([x]) + [y]*d([x]) + -2");
}

#[test]
fn parse_errors_carry_positions() {
    let dsl = Dsl::new(rings()[0].clone());
    let e = dsl.parse_expr("d[x] + [z]").unwrap_err();
    assert_eq!(e.line, 1);
    assert!(e.col >= 8, "{e}");
    assert!(dsl.parse_expr("[x^-1]").is_err());
    assert!(dsl.parse_expr("theta").is_err());
    assert!(dsl.parse_expr("d[x] +").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn expressions_round_trip(seed in any::<u64>(), which in 0usize..3) {
        let dsl = Dsl::new(rings()[which].clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let text = expr_text(&dsl, &mut rng, 2);
        if let Some(rt) = expr_round_trip(&dsl, &text) {
            prop_assert!(rt.ok, "{:?} -> {:?}", rt.input, rt.printed);
        }
    }

    #[test]
    fn symbols_round_trip(seed in any::<u64>(), q in prop::sample::select(vec![(2u32, 1u32), (3, 1), (2, 2), (5, 1)])) {
        let k = FunctionField::new(FiniteField::of(q.0, q.1));
        let dsl = Dsl::new(LaurentRing::new(k.field().clone(), vec![VarDecl::poly("t")]));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let text = symbol_text(&dsl, &mut rng);
        if let Some(rt) = symbol_round_trip(&dsl, &k, &text) {
            prop_assert!(rt.ok, "{:?} -> {:?}", rt.input, rt.printed);
        }
    }
}
