use drw_core::dlog_chern::{dlog_symbol, LineBundleP1, P1Cech};
use drw_core::milnor::{ClassValue, MilnorSymbol};
use drw_core::overconv::{classify_fixed, FixedClass};
use drw_core::PrimePower;

fn cech(p: u32) -> P1Cech {
    P1Cech::new(PrimePower::new(p, 1).unwrap()).unwrap()
}

#[test]
fn pairing_vanishes_on_coboundaries_at_level_one() {
    for p in [2, 3] {
        let c = cech(p);
        assert!(c.basis_elements(&c.u01, 0, 4, 1).unwrap().len() >= 9);
        assert!(c.basis_elements(&c.u0, 1, 4, 1).unwrap().len() >= 4);
        assert_eq!(c.coboundary_counterexample(4, 1).unwrap(), None);
    }
}

#[test]
fn pairing_vanishes_on_coboundaries_at_higher_levels() {
    for (p, n) in [(2, 2), (2, 3), (3, 2)] {
        let c = cech(p);
        assert_eq!(c.coboundary_counterexample(2, n).unwrap(), None);
    }
}

#[test]
fn comparison_square_for_line_bundles() {
    for p in [2u32, 3, 5] {
        let c = cech(p);
        for n in 1..=3u32 {
            let pn = (p as i64).pow(n);
            for m in -20..=20 {
                let l = LineBundleP1::new(m);
                let ClassValue::Int(deg) = c.c1_milnor(&l).unwrap().value else { panic!("degree class") };
                let pairing = c.pairing(&c.c1_overconvergent(&l, n).unwrap()).unwrap() as i64;
                assert_eq!(pairing, deg.rem_euclid(pn));
            }
        }
    }
}

#[test]
fn chern_class_is_additive() {
    let c = cech(3);
    let drw = &c.u01.drw;
    for a in -4..=4 {
        for b in -4..=4 {
            let (la, lb) = (LineBundleP1::new(a), LineBundleP1::new(b));
            let lhs = c.c1_overconvergent(&la.tensor(&lb), 2).unwrap().eta;
            let rhs = drw
                .add(&c.c1_overconvergent(&la, 2).unwrap().eta, &c.c1_overconvergent(&lb, 2).unwrap().eta)
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }
    assert!(c.c1_overconvergent(&LineBundleP1::new(0), 3).unwrap().eta.is_zero());
}

#[test]
fn cocycles_must_be_monomial_units() {
    let c = cech(2);
    let l = c.bundle_of_cocycle(&c.cocycle(&LineBundleP1::new(5))).unwrap();
    assert_eq!(l.m, 5);
    let r = &c.u01.poly;
    let bad = drw_core::ring::CommRing::add(r, &r.variable(0), &r.constant(r.field.one()));
    assert!(c.bundle_of_cocycle(&bad).is_err());
}

#[test]
fn dlog_images_are_log_fixed_and_anticommute() {
    let c = cech(3);
    let e = &c.u01;
    let f = e.drw.ring.field();
    let t = |k: i64, a: i64| e.poly.monomial(f.from_int(a), vec![k]).unwrap();
    for (a, b) in [(1, 2), (2, -1), (-3, 1)] {
        let s = MilnorSymbol::single(vec![t(a, 1)]);
        let w = dlog_symbol(e, &s, 2).unwrap();
        assert_eq!(classify_fixed(&e.drw, &w).unwrap(), FixedClass::LogFixed);
        let ab = MilnorSymbol::single(vec![t(a, 1), t(b, 2)]);
        let ba = MilnorSymbol::single(vec![t(b, 2), t(a, 1)]);
        let sum = dlog_symbol(e, &ab.add(&ba).unwrap(), 2).unwrap();
        assert!(sum.is_zero());
        // multiplicativity in the first slot
        let prod = MilnorSymbol::single(vec![e.poly.monomial(f.from_int(2), vec![a + b]).unwrap()]);
        let split = MilnorSymbol::single(vec![t(a, 1)]).add(&MilnorSymbol::single(vec![t(b, 2)])).unwrap();
        assert_eq!(dlog_symbol(e, &prod, 3).unwrap(), dlog_symbol(e, &split, 3).unwrap());
    }
}

#[test]
fn steinberg_images_vanish() {
    // constant units: dlog{c, 1−c} = 0
    let c = cech(5);
    let e = &c.u01;
    let f = e.drw.ring.field();
    for a in 2..5 {
        let s = MilnorSymbol::single(vec![e.poly.constant(f.from_int(a)), e.poly.constant(f.from_int(1 - a))]);
        assert!(dlog_symbol(e, &s, 2).unwrap().is_zero());
    }
}
