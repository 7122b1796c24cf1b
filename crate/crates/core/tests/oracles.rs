//! Worked examples with frozen expected values.

use arcsub_core::arith::rational::{exp, int, rat};
use arcsub_core::geometry::{
    is_singular_at, poly_along_arc, slice_branches, verify_arc_on_variety,
};
use arcsub_core::puiseux::newton::poly_to_series;
use arcsub_core::substitution::{
    arc_limit, discontinuity_witness, lift_arc, lojasiewicz_probe, point_lift, rational_along_arc,
    zero_containment_evidence, AlongArc, Containment,
};
use arcsub_core::{
    alg_op, alg_sign, isolate_real_roots, newton_puiseux, AlgOp, Arc, Limit, LojBound, MultiPoly,
    NewtonOptions, Order, PuiseuxSeries, Rational, RationalFn, RealAlgebraic, Relation, Residual,
    SliceSpec, UniPoly, Variety, WitnessOptions, WitnessOutcome,
};

fn up(cs: &[i64]) -> UniPoly {
    UniPoly::new(cs.iter().map(|&c| int(c)).collect())
}

fn names(s: &[&str]) -> Vec<String> {
    s.iter().map(|x| x.to_string()).collect()
}

fn ra(n: i64) -> RealAlgebraic {
    RealAlgebraic::from_int(n)
}

fn mono(c: Rational, n: i64, d: i64) -> PuiseuxSeries {
    PuiseuxSeries::monomial(RealAlgebraic::from_rational(c), exp(n, d))
}

fn t() -> PuiseuxSeries {
    PuiseuxSeries::t()
}

fn zero() -> PuiseuxSeries {
    PuiseuxSeries::zero()
}

fn one() -> PuiseuxSeries {
    PuiseuxSeries::from_rational(int(1))
}

fn var(n: usize, i: usize) -> MultiPoly {
    MultiPoly::var(n, i)
}

fn octic() -> Variety {
    let (x, y, z1, z2) = (var(4, 0), var(4, 1), var(4, 2), var(4, 3));
    Variety::new(
        names(&["x", "y", "z1", "z2"]),
        vec![x.pow(8).sub(&z1.pow(2).add(&z2.pow(2)).mul(&y.pow(8)))],
    )
    .unwrap()
}

fn cartan() -> Variety {
    let (x, y, z) = (var(3, 0), var(3, 1), var(3, 2));
    Variety::new(
        names(&["x", "y", "z"]),
        vec![x.pow(3).sub(&z.mul(&x.pow(2).add(&y.pow(2))))],
    )
    .unwrap()
}

fn shown(v: &[impl ToString]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

#[test]
fn root_isolation() {
    let ivs = isolate_real_roots(&up(&[-2, 0, 1]));
    assert_eq!(ivs.len(), 2);
    assert!(ivs[0].hi <= int(0) && ivs[1].lo >= int(0));
    assert!(isolate_real_roots(&up(&[1, 0, 1])).is_empty());
    let ivs = isolate_real_roots(&up(&[-1, 0, 0, 1]));
    assert_eq!(ivs.len(), 1);
    assert!(ivs[0].lo <= int(1) && int(1) <= ivs[0].hi);
}

#[test]
fn algebraic_arithmetic() {
    let s2 = RealAlgebraic::positive_root(&int(2), 2).unwrap();
    assert!(alg_op(&s2, &s2, AlgOp::Mul) == ra(2));
    assert!(alg_op(&s2, &ra(0), AlgOp::Add) == s2);
    // 2*sqrt(2) is the positive root of T^2 - 8
    let sum = alg_op(&s2, &s2, AlgOp::Add);
    assert!(sum == RealAlgebraic::positive_root(&int(8), 2).unwrap());
    assert_eq!(sum.mul(&sum).as_rational(), Some(int(8)));
    assert_eq!(
        alg_sign(&RealAlgebraic::from_root(&up(&[-2, 0, 1]), &int(1), &int(2)).unwrap()),
        1
    );
    assert_eq!(alg_sign(&ra(0)), 0);
    assert_eq!(
        alg_sign(&RealAlgebraic::from_root(&up(&[-2, 0, 1]), &int(-2), &int(-1)).unwrap()),
        -1
    );
}

#[test]
fn series_arithmetic() {
    let h = mono(int(1), 1, 2);
    assert_eq!(h.mul(&h).to_string(), "t");
    assert_eq!(one().add(&t()).mul(&one().sub(&t())).to_string(), "1 - t^2");
    // binomial coefficients of sqrt(1 + u) at u = t^2, computed independently
    let mut c = int(1);
    let mut terms = Vec::new();
    for k in 0..3i64 {
        terms.push((exp(2 * k, 1), RealAlgebraic::from_rational(c.clone())));
        c = c * (rat(1, 2) - int(k)) / int(k + 1);
    }
    let root = PuiseuxSeries::from_terms(terms, Some(exp(6, 1)));
    assert_eq!(root.to_string(), "1 + 1/2*t^2 - 1/8*t^4 + O(t^6)");
    assert_eq!(root.mul(&root).to_string(), "1 + t^2 + O(t^6)");
    assert_eq!(h.add(&t()).ord(), Order::Finite(exp(1, 2)));
    assert_eq!(zero().ord(), Order::Infinite);
    assert_eq!(
        PuiseuxSeries::from_rational(int(3)).sub(&t()).ord(),
        Order::Finite(exp(0, 1))
    );
}

#[test]
fn series_inverse() {
    let g = one().sub(&t()).invert(exp(5, 1)).unwrap();
    assert_eq!(g.to_string(), "1 + t + t^2 + t^3 + t^4 + O(t^5)");
    assert_eq!(t().invert(exp(5, 1)).unwrap().to_string(), "t^(-1)");
    let a = mono(int(1), 1, 2).mul(&one().add(&t()));
    let inv = a.invert(exp(4, 1)).unwrap();
    assert_eq!(
        inv.to_string(),
        "t^(-1/2) - t^(1/2) + t^(3/2) - t^(5/2) + t^(7/2) + O(t^4)"
    );
    // multiply back: 1 up to the precision of the product
    let back = a.mul(&inv);
    assert!(back.agrees_with(&one()), "{back}");
}

#[test]
fn ramification_and_denominators() {
    assert_eq!(mono(int(1), 1, 4).ramify(4).to_string(), "t");
    assert_eq!(one().add(&t()).ramify(2).to_string(), "1 + t^2");
    assert!(zero().ramify(3).is_exact_zero());
    assert_eq!(
        mono(int(1), 1, 2)
            .exponent_denominators()
            .into_iter()
            .collect::<Vec<_>>(),
        vec![2]
    );
    assert_eq!(
        mono(int(1), 2, 3)
            .exponent_denominators()
            .into_iter()
            .collect::<Vec<_>>(),
        vec![3]
    );
    assert_eq!(
        one()
            .add(&t())
            .exponent_denominators()
            .into_iter()
            .collect::<Vec<_>>(),
        vec![1]
    );
}

#[test]
fn numeric_evaluation() {
    let (lo, hi) = mono(int(1), 1, 2)
        .eval_numeric(&rat(1, 4), &rat(1, 1000))
        .unwrap();
    assert!(lo <= rat(1, 2) && rat(1, 2) <= hi && &hi - &lo <= rat(1, 1000));
    let s = PuiseuxSeries::from_terms(
        vec![
            (exp(0, 1), ra(1)),
            (exp(2, 1), RealAlgebraic::from_rational(rat(1, 2))),
            (exp(4, 1), RealAlgebraic::from_rational(rat(-1, 8))),
        ],
        None,
    );
    let u = rat(1, 100);
    let exact = int(1) + &u * &u / int(2) - &u * &u * &u * &u / int(8);
    assert_eq!(exact, rat(1, 1) + rat(1, 20000) - rat(1, 800_000_000));
    let (lo, hi) = s.eval_numeric(&u, &rat(1, 1_000_000_000_000)).unwrap();
    assert!(lo <= exact && exact <= hi);
    assert_eq!(
        zero().eval_numeric(&u, &rat(1, 10)).unwrap(),
        (int(0), int(0))
    );
}

fn ty(terms: &[((u32, u32), i64)]) -> MultiPoly {
    MultiPoly::from_terms(2, terms.iter().map(|&((a, b), c)| (vec![a, b], int(c)))).unwrap()
}

#[test]
fn newton_puiseux_examples() {
    let set = newton_puiseux(&ty(&[((0, 4), 1), ((2, 0), -1)]), 8).unwrap();
    assert_eq!(
        shown(&set.branches.iter().map(|b| &b.series).collect::<Vec<_>>()),
        ["-t^(1/2)", "t^(1/2)"]
    );
    assert!(set
        .branches
        .iter()
        .all(|b| b.residual == Residual::ExactZero));
    let set = newton_puiseux(&ty(&[((0, 3), 1), ((2, 0), -1)]), 8).unwrap();
    assert_eq!(
        shown(&set.branches.iter().map(|b| &b.series).collect::<Vec<_>>()),
        ["t^(2/3)"]
    );
    let set = newton_puiseux(&ty(&[((0, 2), 1), ((0, 0), -1), ((2, 0), -1)]), 6).unwrap();
    assert_eq!(
        shown(&set.branches.iter().map(|b| &b.series).collect::<Vec<_>>()),
        [
            "-1 - 1/2*t^2 + 1/8*t^4 + O(t^6)",
            "1 + 1/2*t^2 - 1/8*t^4 + O(t^6)"
        ]
    );
    assert!(
        newton_puiseux(&ty(&[((0, 2), 1), ((0, 0), 1), ((2, 0), 1)]), 8)
            .unwrap()
            .is_empty()
    );
    let _ = poly_to_series(&up(&[1]));
}

#[test]
fn arcs_on_varieties() {
    let (x, y) = (var(2, 0), var(2, 1));
    let r = poly_along_arc(
        &x.pow(2).add(&y.pow(2)),
        &Arc::new(vec![t(), zero()]).unwrap(),
    )
    .unwrap();
    assert_eq!(r.to_string(), "t^2");
    let mut a = Arc::new(vec![t(), t(), mono(rat(1, 2), 1, 1)]).unwrap();
    assert!(poly_along_arc(&cartan().polys()[0], &a)
        .unwrap()
        .is_exact_zero());
    assert!(
        verify_arc_on_variety(&mut a, &cartan(), exp(16, 1))
            .unwrap()
            .pass
    );
    let (z1, z2) = (var(4, 2), var(4, 3));
    let stick = Arc::new(vec![zero(), zero(), zero(), t()]).unwrap();
    assert_eq!(
        poly_along_arc(&z1.pow(2).add(&z2.pow(2)), &stick)
            .unwrap()
            .to_string(),
        "t^2"
    );
    let mut s = stick.clone();
    let rep = verify_arc_on_variety(&mut s, &octic(), exp(16, 1)).unwrap();
    assert_eq!(rep.residuals, vec![Residual::ExactZero]);
    let parabola = Variety::new(names(&["x", "y"]), vec![y.sub(&x.pow(2))]).unwrap();
    let mut p = Arc::new(vec![t(), t().mul(&t())]).unwrap();
    assert!(
        verify_arc_on_variety(&mut p, &parabola, exp(16, 1))
            .unwrap()
            .pass
    );
}

#[test]
fn slices() {
    let opts = NewtonOptions::default();
    let s = SliceSpec::from_integers(
        vec![ra(0), ra(0), ra(1), ra(0)],
        &[1, 0, 0, 0],
        &[0, 1, 0, 0],
    )
    .unwrap();
    assert_eq!(
        shown(&slice_branches(&octic(), &s, opts).unwrap().arcs),
        ["(t, -t, 1, 0)", "(t, t, 1, 0)"]
    );
    let s = SliceSpec::from_integers(
        vec![ra(0), ra(1), ra(0), ra(0)],
        &[1, 0, 0, 0],
        &[0, 0, 0, 1],
    )
    .unwrap();
    assert_eq!(
        shown(&slice_branches(&octic(), &s, opts).unwrap().arcs),
        ["(t, 1, 0, -t^4)", "(t, 1, 0, t^4)"]
    );
    let (x, y) = (var(2, 0), var(2, 1));
    let parabola = Variety::new(names(&["x", "y"]), vec![y.sub(&x.pow(2))]).unwrap();
    let s = SliceSpec::from_integers(vec![ra(0), ra(0)], &[1, 0], &[0, 1]).unwrap();
    assert_eq!(
        shown(&slice_branches(&parabola, &s, opts).unwrap().arcs),
        ["(t, t^2)"]
    );
}

#[test]
fn singular_loci() {
    let (x, y) = (var(2, 0), var(2, 1));
    let circle = Variety::new(
        names(&["x", "y"]),
        vec![x.pow(2).add(&y.pow(2)).sub(&MultiPoly::one(2))],
    )
    .unwrap();
    assert!(!is_singular_at(&circle, &[ra(1), ra(0)]).unwrap());
    assert!(is_singular_at(&cartan(), &[ra(0), ra(0), ra(5)]).unwrap());
    assert!(!is_singular_at(&cartan(), &[ra(1), ra(0), ra(1)]).unwrap());
    assert!(is_singular_at(&octic(), &[ra(0), ra(0), ra(2), ra(-1)]).unwrap());
    assert!(is_singular_at(&octic(), &[ra(0), ra(3), ra(0), ra(0)]).unwrap());
    assert!(!is_singular_at(&octic(), &[ra(1), ra(1), ra(1), ra(0)]).unwrap());
}

#[test]
fn functions_along_arcs() {
    let (x, y) = (var(3, 0), var(3, 1));
    let f = RationalFn::new(x.pow(3), x.pow(2).add(&y.pow(2))).unwrap();
    let a = Arc::new(vec![t(), t(), mono(rat(1, 2), 1, 1)]).unwrap();
    match rational_along_arc(&f, &a, exp(16, 1)).unwrap() {
        AlongArc::Series(s) => assert_eq!(s.to_string(), "1/2*t"),
        AlongArc::PoleArc => panic!(),
    }
    assert_eq!(
        arc_limit(&f, &a, exp(16, 1)).unwrap().to_string(),
        "FINITE(0)"
    );
    let stick = Arc::new(vec![zero(), zero(), t()]).unwrap();
    assert!(matches!(
        arc_limit(&f, &stick, exp(16, 1)).unwrap(),
        Limit::PoleArc
    ));
    let (x2, y2) = (var(2, 0), var(2, 1));
    let g = RationalFn::new(x2.clone(), x2.pow(2).add(&y2.pow(2))).unwrap();
    assert_eq!(
        arc_limit(&g, &Arc::new(vec![t(), zero()]).unwrap(), exp(16, 1))
            .unwrap()
            .to_string(),
        "DIVERGES(+)"
    );
    let h = RationalFn::new(var(4, 0), var(4, 1)).unwrap();
    let a = Arc::new(vec![t(), t(), one(), zero()]).unwrap();
    assert_eq!(
        arc_limit(&h, &a, exp(16, 1)).unwrap().to_string(),
        "FINITE(1)"
    );
}

fn rel(p: MultiPoly, n: usize) -> Relation {
    Relation::from_poly(&p, n).unwrap()
}

#[test]
fn liftings_along_arcs_and_points() {
    let opts = NewtonOptions::default();
    let (x, tt) = (var(2, 0), var(2, 1));
    let r = lift_arc(
        &rel(tt.pow(2).sub(&x.pow(2)), 1),
        &Arc::new(vec![t()]).unwrap(),
        opts,
    )
    .unwrap();
    assert_eq!(
        shown(&r.liftings.iter().map(|b| &b.series).collect::<Vec<_>>()),
        ["-t", "t"]
    );
    let (z1, z2, t5) = (var(5, 2), var(5, 3), var(5, 4));
    let stick = Arc::new(vec![zero(), zero(), zero(), t()]).unwrap();
    let r = lift_arc(
        &rel(t5.pow(4).sub(&z1.pow(2).add(&z2.pow(2))), 4),
        &stick,
        opts,
    )
    .unwrap();
    assert_eq!(
        shown(&r.liftings.iter().map(|b| &b.series).collect::<Vec<_>>()),
        ["-t^(1/2)", "t^(1/2)"]
    );
    let (z, t4) = (var(4, 2), var(4, 3));
    let s3 = Arc::new(vec![zero(), zero(), t()]).unwrap();
    let r = lift_arc(&rel(t4.pow(3).sub(&z.pow(2)), 3), &s3, opts).unwrap();
    assert_eq!(
        shown(&r.liftings.iter().map(|b| &b.series).collect::<Vec<_>>()),
        ["t^(2/3)"]
    );
    let cube = rel(t4.pow(3).sub(&MultiPoly::one(4).add(&z.pow(2))), 3);
    let r = lift_arc(&cube, &s3, NewtonOptions::with_order(6)).unwrap();
    assert_eq!(r.liftings.len(), 1);
    let l = &r.liftings[0].series;
    assert_eq!(l.to_string(), "1 + 1/3*t^2 - 1/9*t^4 + O(t^6)");
    // cube back: 1 + t^2 up to the truncation
    assert!(l.pow(3).agrees_with(&one().add(&t().mul(&t()))));

    let one2 = MultiPoly::one(2);
    assert_eq!(
        shown(&point_lift(&rel(tt.pow(2).sub(&one2.add(&x.pow(2))), 1), &[ra(0)]).unwrap()),
        ["-1", "1"]
    );
    assert_eq!(
        shown(&point_lift(&rel(tt.pow(2).sub(&x.pow(2)), 1), &[ra(0)]).unwrap()),
        ["0"]
    );
    assert_eq!(
        shown(&point_lift(&cube, &[ra(0), ra(0), ra(0)]).unwrap()),
        ["1"]
    );
}

#[test]
fn witnesses() {
    let (x, y) = (var(4, 0), var(4, 1));
    let at = [ra(0), ra(0), ra(1), ra(0)];
    let opts = WitnessOptions::default();
    let r = discontinuity_witness(
        &RationalFn::new(x.clone(), y.clone()).unwrap(),
        &octic(),
        &at,
        opts,
    )
    .unwrap();
    match r.outcome {
        WitnessOutcome::TwoLimits { l1, l2, .. } => assert_eq!(shown(&[l1, l2]), ["-1", "1"]),
        other => panic!("{other:?}"),
    }
    let r = discontinuity_witness(
        &RationalFn::new(x.pow(2), y.pow(2)).unwrap(),
        &octic(),
        &at,
        opts,
    )
    .unwrap();
    match r.outcome {
        WitnessOutcome::NoneFound { limits } => assert_eq!(shown(&limits), ["1"]),
        other => panic!("{other:?}"),
    }
    let (x2, y2) = (var(2, 0), var(2, 1));
    let plane = Variety::affine(names(&["x", "y"]));
    let g = RationalFn::new(x2.clone(), x2.pow(2).add(&y2.pow(2))).unwrap();
    let r = discontinuity_witness(&g, &plane, &[ra(0), ra(0)], opts).unwrap();
    match r.outcome {
        WitnessOutcome::Diverges { arc, sign } => {
            assert_eq!((arc.to_string(), sign), ("(t, 0)".to_string(), 1))
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn zero_set_containment() {
    let (x, y) = (var(2, 0), var(2, 1));
    let plane = Variety::affine(names(&["x", "y"]));
    let arcs = [
        Arc::new(vec![t(), zero()]).unwrap(),
        Arc::new(vec![t(), t()]).unwrap(),
        Arc::new(vec![zero(), t()]).unwrap(),
    ];
    let r =
        zero_containment_evidence(&x, &x.pow(2).add(&y.pow(2)), &plane, &arcs, exp(16, 1)).unwrap();
    assert!(matches!(r, Containment::Pass { .. }));
    let line = Variety::affine(names(&["x"]));
    let r = zero_containment_evidence(
        &MultiPoly::one(1),
        &var(1, 0),
        &line,
        &[Arc::new(vec![t()]).unwrap()],
        exp(16, 1),
    )
    .unwrap();
    assert!(matches!(r, Containment::Violation { index: 0 }));
    let (x3, y3) = (var(3, 0), var(3, 1));
    let stick = [
        Arc::new(vec![zero(), zero(), t()]).unwrap(),
        Arc::new(vec![zero(), zero(), t().neg()]).unwrap(),
    ];
    let r = zero_containment_evidence(
        &x3.pow(3),
        &x3.pow(2).add(&y3.pow(2)),
        &cartan(),
        &stick,
        exp(16, 1),
    )
    .unwrap();
    assert!(matches!(r, Containment::Pass { checked: 2 }));
}

#[test]
fn lojasiewicz_exponents() {
    let opts = NewtonOptions::default();
    let (x, y) = (var(3, 0), var(3, 1));
    let f = RationalFn::new(x.pow(3), x.pow(2).add(&y.pow(2))).unwrap();
    let a = Arc::new(vec![t(), t(), mono(rat(1, 2), 1, 1)]).unwrap();
    assert_eq!(
        lojasiewicz_probe(&f, &[ra(0), ra(0), ra(0)], &[a], None, opts)
            .unwrap()
            .bound,
        LojBound::Exponent(2)
    );
    let line = lojasiewicz_probe(
        &RationalFn::polynomial(var(1, 0)),
        &[ra(0)],
        &[Arc::new(vec![t()]).unwrap()],
        None,
        opts,
    );
    assert_eq!(line.unwrap().bound, LojBound::Exponent(2));
    let (z1, z2, t5) = (var(5, 2), var(5, 3), var(5, 4));
    let g = RationalFn::new(var(4, 0).pow(2), var(4, 1).pow(2)).unwrap();
    let stick = Arc::new(vec![zero(), zero(), zero(), t()]).unwrap();
    let via = rel(t5.pow(4).sub(&z1.pow(2).add(&z2.pow(2))), 4);
    let r = lojasiewicz_probe(
        &g,
        &[ra(0), ra(0), ra(0), ra(0)],
        &[stick],
        Some(&via),
        opts,
    )
    .unwrap();
    assert_eq!(r.bound, LojBound::Exponent(4));
    assert!(r
        .entries
        .iter()
        .all(|e| e.ord_f == Some(exp(1, 2)) && e.ord_rho == Some(exp(2, 1))));
    // a constant arc value away from the center value is unbounded
    let h = RationalFn::polynomial(MultiPoly::one(1).add(&var(1, 0)));
    let r = lojasiewicz_probe(&h, &[ra(0)], &[Arc::new(vec![t()]).unwrap()], None, opts).unwrap();
    assert_eq!(r.bound, LojBound::Exponent(2));
}
