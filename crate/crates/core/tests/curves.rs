use std::sync::Arc;

use biext_core::biext::{laws, AuditConfig, Biextension, Bisubgroup, Restricted, Twisted};
use biext_core::curve::sample::{random_disjoint_pair, random_function, random_principal};
use biext_core::curve::{
    disjoint_representatives, evaluate_at_divisor, function_with_divisor, pe_biextension, tame_reciprocity,
    tame_symbol, weil_pairing_oracle, weil_pairing_points, weil_reciprocity_check, Curve, CurveBisubgroup,
    CurveTrivialization, Divisor, FiniteField, FunctionProgram, Point,
};
use biext_core::SeededRng;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn field(p: u32, k: u32, modulus: &[u32]) -> Arc<FiniteField> {
    Arc::new(if k == 1 {
        FiniteField::prime(p).unwrap()
    } else {
        FiniteField::new(p, k, modulus).unwrap()
    })
}

fn elliptic(p: u32, k: u32, modulus: &[u32], a: i64, b: i64) -> Curve {
    let f = field(p, k, modulus);
    let (a, b) = (f.from_int(a), f.from_int(b));
    Curve::elliptic(f, a, b).unwrap()
}

fn line(p: u32) -> Curve {
    Curve::projective_line(field(p, 1, &[]))
}

/// Curves used throughout, with a torsion level whose points are all rational.
fn torsion_cases() -> Vec<(Curve, u32)> {
    vec![
        (elliptic(7, 1, &[], -1, 0), 2),
        (elliptic(7, 1, &[], 0, 2), 3),
        (elliptic(13, 1, &[], 0, 3), 3),
        (elliptic(31, 1, &[], 0, 11), 5),
        (elliptic(5, 2, &[3, 0, 1], 0, 1), 3),
        (elliptic(7, 2, &[1, 0, 1], -1, 0), 2),
    ]
}

fn all_curves() -> Vec<Curve> {
    let mut v = vec![line(7), line(13), elliptic(11, 1, &[], 1, 1), elliptic(41, 1, &[], 6, 0)];
    v.extend(torsion_cases().into_iter().map(|(c, _)| c));
    v
}

#[test]
fn constructed_functions_have_the_requested_divisor() {
    let mut rng = SeededRng::seed_from_u64(1);
    for c in all_curves() {
        for _ in 0..200 {
            let terms = rng.gen_range(1..=4);
            let d = random_principal(&c, terms, &mut rng);
            let f = function_with_divisor(&c, &d).unwrap();
            assert_eq!(f.divisor(&c).unwrap(), d, "{}", d.format(&c));
        }
    }
}

#[test]
fn full_torsion_is_rational_on_test_curves() {
    for (c, l) in torsion_cases() {
        assert_eq!(c.torsion(l).len() as u32, l * l, "{:?}", c.kind());
    }
}

#[test]
fn biextension_on_curves_passes_its_audit() {
    for c in all_curves() {
        pe_biextension(&c, &AuditConfig::default()).unwrap();
    }
}

#[test]
fn weil_pairing_matches_the_oracle_on_all_torsion_pairs() {
    let mut rng = SeededRng::seed_from_u64(3);
    for (c, l) in torsion_cases() {
        let f = c.field();
        let pts = c.torsion(l);
        for p in &pts {
            for q in &pts {
                let e = weil_pairing_points(&c, p, q, l, &mut rng).unwrap();
                let o = weil_pairing_oracle(&c, p, q, l, &mut rng).unwrap();
                assert_eq!(e, o, "e_{l}({}, {})", c.format_point(p), c.format_point(q));
                assert_eq!(f.pow(e, l as i64), Some(1));
            }
        }
    }
}

#[test]
fn weil_pairing_is_bilinear_alternating_and_nondegenerate() {
    let mut rng = SeededRng::seed_from_u64(5);
    for (c, l) in torsion_cases() {
        let f = c.field();
        let pts = c.torsion(l);
        let e = |p: &Point, q: &Point, rng: &mut SeededRng| weil_pairing_points(&c, p, q, l, rng).unwrap();
        let mut image = std::collections::BTreeSet::new();
        for p in &pts {
            assert_eq!(e(p, p, &mut rng), 1);
            for q in &pts {
                let v = e(p, q, &mut rng);
                image.insert(v);
                assert_eq!(f.mul(v, e(q, p, &mut rng)), 1);
                for r in pts.iter().take(4) {
                    let lhs = e(&c.add(p, r), q, &mut rng);
                    assert_eq!(lhs, f.mul(v, e(r, q, &mut rng)));
                }
            }
        }
        // The values form the full group of l-th roots of unity.
        assert_eq!(image.len() as u32, l);
    }
}

#[test]
fn forced_two_torsion_value_by_both_routes() {
    let c = elliptic(7, 1, &[], -1, 0);
    let mut rng = SeededRng::seed_from_u64(0);
    let (p, q) = (Point::affine(0, 0), Point::affine(1, 0));
    assert_eq!(weil_pairing_points(&c, &p, &q, 2, &mut rng).unwrap(), 6);
    assert_eq!(weil_pairing_oracle(&c, &p, &q, 2, &mut rng).unwrap(), 6);
    assert_eq!(weil_pairing_oracle(&c, &p, &Point::Infinity, 2, &mut rng).unwrap(), 1);
}

#[test]
fn weil_pairing_ignores_the_choice_of_lifts() {
    let mut rng = SeededRng::seed_from_u64(9);
    for (c, l) in torsion_cases() {
        let bx = Biextension::unchecked(CurveBisubgroup::new(c.clone()), CurveTrivialization::new(c.clone()), 9);
        let pts = c.torsion(l);
        let (p, q) = (pts[1], pts[pts.len() - 1]);
        let (z, w) = disjoint_representatives(&c, &p, &q, &mut rng).unwrap();
        let reference = bx.weil_pairing(&z, &w, l).unwrap();
        let mut checked = 0;
        while checked < 100 {
            let z2 = z.plus(&random_principal(&c, 2, &mut rng));
            let w2 = w.plus(&random_principal(&c, 2, &mut rng));
            if !z2.disjoint(&w2) {
                continue;
            }
            assert_eq!(bx.weil_pairing(&z2, &w2, l).unwrap(), reference);
            checked += 1;
        }
    }
}

#[test]
fn sampled_biextension_laws_on_curves() {
    let mut rng = SeededRng::seed_from_u64(13);
    for c in [elliptic(7, 1, &[], -1, 0), elliptic(13, 1, &[], 0, 3), line(7)] {
        let bx = pe_biextension(&c, &AuditConfig::default()).unwrap();
        laws::sampled(&bx, 40, &mut rng).unwrap();
    }
}

#[test]
fn restriction_and_twist_on_a_curve() {
    let c = elliptic(13, 1, &[], 0, 3);
    let full = pe_biextension(&c, &AuditConfig::default()).unwrap();
    let avoid = c.points()[1];
    let restricted = Biextension::unchecked(
        Restricted::new(CurveBisubgroup::new(c.clone()), move |z: &Divisor, w: &Divisor| {
            z.multiplicity(&avoid) == 0 && w.multiplicity(&avoid) == 0
        }),
        CurveTrivialization::new(c.clone()),
        2,
    );
    let (r0, r1) = (c.points()[2], c.points()[3]);
    let g = 2u32;
    let fq = c.field_arc();
    let phi = move |z: &Divisor, w: &Divisor| fq.pow(g, z.multiplicity(&r0) * w.multiplicity(&r1)).unwrap();
    let twisted = Biextension::build(
        CurveBisubgroup::new(c.clone()),
        Twisted::new(CurveTrivialization::new(c.clone()), phi.clone()),
        &AuditConfig::default(),
    )
    .unwrap();
    let mut rng = SeededRng::seed_from_u64(17);
    for _ in 0..20 {
        let (alpha, gamma) = laws::random_base(&full, &mut rng);
        let (beta, delta) = laws::random_base(&full, &mut rng);
        laws::restriction(&full, &restricted, (&alpha, &beta), (&gamma, &delta), &mut rng).unwrap();
        laws::twist(&full, &twisted, &phi, (&alpha, &beta), (&gamma, &delta), &mut rng).unwrap();
    }
}

#[test]
fn psi_slots_agree_on_pairs_of_principal_divisors() {
    let c = elliptic(11, 1, &[], 1, 1);
    let bx = pe_biextension(&c, &AuditConfig::default()).unwrap();
    let t = bx.bisubgroup();
    let mut rng = SeededRng::seed_from_u64(19);
    for _ in 0..50 {
        let (f, g) = random_disjoint_pair(&c, &mut rng).unwrap();
        let (df, dg) = (f.divisor(&c).unwrap(), g.divisor(&c).unwrap());
        assert!(t.contains(&df, &dg));
        assert_eq!(bx.psi(&df, &dg).unwrap(), evaluate_at_divisor(&c, &g, &df).unwrap());
        assert_eq!(bx.psi(&df, &dg).unwrap(), evaluate_at_divisor(&c, &f, &dg).unwrap());
    }
}

/// `Nm(x) = x · x^p` for `x ∈ F_{p²}`.
fn norm(f: &FiniteField, x: u32) -> u32 {
    f.mul(x, f.frobenius(x))
}

#[test]
fn conjugate_points_evaluate_to_norms() {
    let c = elliptic(7, 2, &[1, 0, 1], -1, 0);
    let f = c.field();
    let sub = |x: u32| f.coeffs(x)[1] == 0;
    let g = FunctionProgram::x_minus(f, 3).mul(f, &FunctionProgram::linear(f, 2, 1, 5).unwrap());
    let mut seen = 0;
    for p in c.points() {
        let Point::Affine { x, y } = p else { continue };
        if sub(x) && sub(y) {
            continue;
        }
        let conj = Point::affine(f.frobenius(x), f.frobenius(y));
        assert!(c.contains(&conj));
        let (Ok(v), Ok(w)) = (g.value_at(&c, &p), g.value_at(&c, &conj)) else { continue };
        // g has coefficients in F_7, so g(P^σ) = g(P)^σ and the product is a norm.
        assert_eq!(f.mul(v, w), norm(f, v));
        assert!(sub(f.mul(v, w)));
        seen += 1;
    }
    assert!(seen > 10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weil_reciprocity_on_random_pairs(seed in any::<u64>(), which in 0usize..4) {
        let c = all_curves().swap_remove(which);
        let mut rng = SeededRng::seed_from_u64(seed);
        let (f, g) = random_disjoint_pair(&c, &mut rng).unwrap();
        let r = weil_reciprocity_check(&c, &f, &g).unwrap();
        prop_assert!(r.equal, "{} vs {}", r.lhs, r.rhs);
    }

    #[test]
    fn evaluation_ignores_constant_factors(seed in any::<u64>(), which in 0usize..4) {
        let c = all_curves().swap_remove(which);
        let mut rng = SeededRng::seed_from_u64(seed);
        let (f, g) = random_disjoint_pair(&c, &mut rng).unwrap();
        let d = g.divisor(&c).unwrap();
        let k = rng.gen_range(1..c.field().order());
        prop_assert_eq!(
            evaluate_at_divisor(&c, &f.scaled(c.field(), k).unwrap(), &d).unwrap(),
            evaluate_at_divisor(&c, &f, &d).unwrap()
        );
    }

    #[test]
    fn tame_symbols_multiply_to_one(seed in any::<u64>(), which in 0usize..5) {
        let curves = [line(7), line(13), elliptic(13, 1, &[], 0, 3), elliptic(11, 1, &[], 1, 1), elliptic(41, 1, &[], 6, 0)];
        let c = &curves[which];
        let mut rng = SeededRng::seed_from_u64(seed);
        let f = random_function(c, 3, &mut rng).unwrap();
        // Overlapping supports are the interesting case.
        let g = if rng.gen::<bool>() { f.mul(c.field(), &random_function(c, 3, &mut rng).unwrap()) } else { random_function(c, 3, &mut rng).unwrap() };
        prop_assert_eq!(tame_reciprocity(c, &f, &g).unwrap(), 1);
        prop_assert_eq!(tame_reciprocity(c, &f, &f).unwrap(), 1);
    }

    #[test]
    fn steinberg_relation(seed in any::<u64>(), which in 0usize..3) {
        let curves = [line(7), line(13), elliptic(13, 1, &[], 0, 3)];
        let c = &curves[which];
        let fq = c.field();
        let mut rng = SeededRng::seed_from_u64(seed);
        let (a, b, k) = (rng.gen_range(0..fq.order()), rng.gen_range(0..fq.order()), rng.gen_range(1..fq.order()));
        let b = if c.is_elliptic() { b } else { 0 };
        let Ok(f) = FunctionProgram::linear(fq, a, b, rng.gen_range(0..fq.order())).and_then(|f| f.scaled(fq, k)) else {
            return Ok(());
        };
        let Some(g) = f.one_minus(fq) else { return Ok(()) };
        if g.is_constant() {
            return Ok(());
        }
        for p in c.points() {
            if let Ok(v) = tame_symbol(c, &f, &g, &p) {
                prop_assert_eq!(v, 1, "at {}", c.format_point(&p));
            }
        }
    }
}
