//! The acceptance suite behind `biextctl selftest`.
//!
//! Each criterion returns a one-line summary on success and the first
//! counterexample on failure. Criteria with a runtime budget fail when the
//! budget is exceeded, even if every check passed.

use std::sync::Arc;
use std::time::Instant;

use biext_core::abelian::FgAbGroup;
use biext_core::biext::chain::{biextension_from_chain_pairing, ChainBiextension};
use biext_core::biext::toy::{
    doubling_chain_pairing, doubling_dg_algebra, integer_toy, rank_two_chain_pairing, IntegerToy,
};
use biext_core::biext::{laws, AuditConfig, Biextension, BiextError, Bisubgroup, Restricted, Trivialization, Twisted};
use biext_core::curve::sample::{random_disjoint_pair, random_function, random_principal};
use biext_core::curve::{
    disjoint_representatives, pe_biextension, tame_reciprocity, tame_symbol, weil_pairing_oracle,
    weil_pairing_points, weil_reciprocity_check, Curve, CurveBisubgroup, CurveTrivialization, Divisor, FiniteField,
    FunctionProgram, Point,
};
use biext_core::group::El;
use biext_core::hodge::sample::{random_kernel, random_torsion, random_vector};
use biext_core::hodge::{
    analytic_weil, height_trivialization, poincare_biextension, poincare_psi, CVector, HodgeStructure,
    NonzeroComplex, PoincareBisubgroup, PoincareTrivialization, Slot, Tolerance,
};
use biext_core::SeededRng;
use num_bigint::BigInt;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use serde_json::json;

use crate::Report;

const EPS: f64 = 1e-9;

/// Outcome of one criterion.
#[derive(Clone, Debug)]
pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl Criterion {
    /// `[PASS] 3 oracle agreement: ... (0.41 s)`
    pub fn line(&self) -> String {
        format!(
            "[{}] {} {}: {} ({:.2} s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.seconds
        )
    }
}

type Check = fn(u64) -> Result<String, String>;

/// `(id, name, runtime budget in seconds, check)`.
const CRITERIA: [(u8, &str, Option<f64>, Check); 9] = [
    (1, "Weil reciprocity", Some(10.0), weil_reciprocity),
    (2, "tame reciprocity", None, tame),
    (3, "oracle agreement", Some(30.0), oracle_agreement),
    (4, "forced value", None, forced_value),
    (5, "chain pairing and Massey identity", None, chain_and_massey),
    (6, "quotient-biextension axioms", None, quotient_axioms),
    (7, "Poincaré biextension", Some(10.0), poincare),
    (8, "cross-world check", None, cross_world),
    (9, "Weil-pairing lift independence", None, lift_independence),
];

pub fn criterion_ids() -> impl Iterator<Item = u8> {
    CRITERIA.iter().map(|c| c.0)
}

/// Runs a single criterion by number.
pub fn run(id: u8, seed: u64) -> Option<Criterion> {
    let &(id, name, budget, check) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let result = check(seed);
    let seconds = start.elapsed().as_secs_f64();
    let (passed, detail) = match result {
        Ok(d) => match budget {
            Some(b) if seconds > b => (false, format!("{d}; over the {b} s budget")),
            _ => (true, d),
        },
        Err(e) => (false, e),
    };
    Some(Criterion {
        id,
        name,
        passed,
        detail,
        seconds,
    })
}

pub fn run_all(seed: u64) -> Vec<Criterion> {
    criterion_ids().filter_map(|id| run(id, seed)).collect()
}

/// JSON omits timings so that the output depends only on the seed.
pub fn report(results: &[Criterion]) -> Report {
    let passed = results.iter().filter(|c| c.passed).count();
    let body = json!({
        "criteria": results
            .iter()
            .map(|c| json!({"id": c.id.to_string(), "name": c.name, "pass": c.passed, "detail": c.detail}))
            .collect::<Vec<_>>(),
        "passed": format!("{passed}/{}", results.len()),
    });
    let mut text: String = results.iter().map(|c| c.line() + "\n").collect();
    text.push_str(&format!("{passed}/{} criteria passed\n", results.len()));
    Report {
        body,
        ok: passed == results.len(),
        text: Some(text),
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn field(p: u32, k: u32, modulus: &[u32]) -> Arc<FiniteField> {
    Arc::new(if k == 1 {
        FiniteField::prime(p).expect("prime field")
    } else {
        FiniteField::new(p, k, modulus).expect("irreducible modulus")
    })
}

fn elliptic(p: u32, k: u32, modulus: &[u32], a: i64, b: i64) -> Curve {
    let f = field(p, k, modulus);
    let (a, b) = (f.from_int(a), f.from_int(b));
    Curve::elliptic(f, a, b).expect("nonsingular curve")
}

fn line(p: u32) -> Curve {
    Curve::projective_line(field(p, 1, &[]))
}

fn reciprocity_curves() -> [(Curve, &'static str); 4] {
    [
        (line(7), "P¹/F7"),
        (line(13), "P¹/F13"),
        (elliptic(11, 1, &[], 1, 1), "y² = x³ + x + 1 over F11"),
        (elliptic(41, 1, &[], 6, 0), "y² = x³ + 6x over F41"),
    ]
}

/// Curves with all of `E[l]` rational.
fn torsion_cases() -> Vec<(Curve, u32, &'static str)> {
    vec![
        (elliptic(7, 1, &[], -1, 0), 2, "y² = x³ − x over F7"),
        (elliptic(7, 1, &[], 0, 2), 3, "y² = x³ + 2 over F7"),
        (elliptic(13, 1, &[], 0, 3), 3, "y² = x³ + 3 over F13"),
        (elliptic(31, 1, &[], 0, 11), 5, "y² = x³ + 11 over F31"),
        (elliptic(5, 2, &[3, 0, 1], 0, 1), 3, "y² = x³ + 1 over F25"),
    ]
}

fn weil_reciprocity(seed: u64) -> Result<String, String> {
    let mut rng = SeededRng::seed_from_u64(seed);
    let mut total = 0;
    for (c, name) in reciprocity_curves() {
        for _ in 0..200 {
            let (f, g) = random_disjoint_pair(&c, &mut rng).map_err(err)?;
            let r = weil_reciprocity_check(&c, &f, &g).map_err(err)?;
            if !r.equal {
                return Err(format!("{name}: f(div g) = {} but g(div f) = {}", r.lhs, r.rhs));
            }
            total += 1;
        }
    }
    Ok(format!("{total} random disjoint pairs on four curves, all equal"))
}

fn tame(seed: u64) -> Result<String, String> {
    let mut rng = SeededRng::seed_from_u64(seed);
    let mut pairs = 0;
    for (c, name) in reciprocity_curves() {
        let fq = c.field();
        for _ in 0..100 {
            let f = random_function(&c, 3, &mut rng).map_err(err)?;
            let g = random_function(&c, 3, &mut rng).map_err(err)?;
            // Half the pairs share support.
            let g = if rng.gen::<bool>() { f.mul(fq, &g) } else { g };
            let product = tame_reciprocity(&c, &f, &g).map_err(err)?;
            if product != 1 {
                return Err(format!("{name}: product of tame symbols is {}", fq.format(product)));
            }
            pairs += 1;
        }
    }
    let mut steinberg = 0;
    for (c, name) in reciprocity_curves() {
        let fq = c.field();
        for _ in 0..50 {
            let (a, c0, k) = (rng.gen_range(1..fq.order()), rng.gen_range(0..fq.order()), rng.gen_range(1..fq.order()));
            let b = if c.is_elliptic() { rng.gen_range(0..fq.order()) } else { 0 };
            let Ok(f) = FunctionProgram::linear(fq, a, b, c0).and_then(|f| f.scaled(fq, k)) else {
                continue;
            };
            let Some(g) = f.one_minus(fq) else { continue };
            if g.is_constant() {
                continue;
            }
            for p in c.points() {
                if let Ok(v) = tame_symbol(&c, &f, &g, &p) {
                    if v != 1 {
                        return Err(format!("{name}: tame(f, 1 − f) = {} at {}", fq.format(v), c.format_point(&p)));
                    }
                }
            }
            steinberg += 1;
        }
    }
    let c = line(7);
    let fq = c.field();
    let x = FunctionProgram::x_minus(fq, 0);
    let one_minus_x = x.one_minus(fq).ok_or("1 − x")?;
    let origin = Point::affine(0, 0);
    let s = tame_symbol(&c, &x, &one_minus_x, &origin).map_err(err)?;
    let xx = tame_symbol(&c, &x, &x, &origin).map_err(err)?;
    if s != 1 || xx != 6 {
        return Err(format!("on P¹/F7 at 0: tame(x, 1 − x) = {s}, tame(x, x) = {xx}"));
    }
    Ok(format!("{pairs} random pairs with trivial product; {steinberg} Steinberg instances trivial at every place"))
}

fn oracle_agreement(seed: u64) -> Result<String, String> {
    let mut rng = SeededRng::seed_from_u64(seed);
    let mut pairs = 0;
    let mut instances = 0;
    for (c, l, name) in torsion_cases() {
        let pts = c.torsion(l);
        if pts.len() as u32 != l * l {
            return Err(format!("{name}: found {} points of order dividing {l}", pts.len()));
        }
        for p in &pts {
            for q in &pts {
                let e = weil_pairing_points(&c, p, q, l, &mut rng).map_err(err)?;
                let o = weil_pairing_oracle(&c, p, q, l, &mut rng).map_err(err)?;
                if e != o {
                    return Err(format!(
                        "{name}: e_{l}({}, {}) = {} but the oracle gives {}",
                        c.format_point(p),
                        c.format_point(q),
                        c.field().format(e),
                        c.field().format(o)
                    ));
                }
                pairs += 1;
            }
        }
        instances += 1;
    }
    Ok(format!("{pairs} torsion pairs on {instances} (curve, l) instances, l ∈ {{2, 3, 5}}"))
}

fn forced_value(seed: u64) -> Result<String, String> {
    let mut rng = SeededRng::seed_from_u64(seed);
    let c = elliptic(7, 1, &[], -1, 0);
    let (p, q) = (Point::affine(0, 0), Point::affine(1, 0));
    let e = weil_pairing_points(&c, &p, &q, 2, &mut rng).map_err(err)?;
    let o = weil_pairing_oracle(&c, &p, &q, 2, &mut rng).map_err(err)?;
    if e != 6 || o != 6 {
        return Err(format!("biextension gives {e}, oracle gives {o}, expected 6"));
    }
    Ok("e₂((0,0), (1,0)) = 6 = −1 in F7 by the biextension and by the oracle".into())
}

fn chain_and_massey(seed: u64) -> Result<String, String> {
    let audit = AuditConfig {
        seed,
        ..AuditConfig::default()
    };
    let z4 = FgAbGroup::cyclic(4);
    let two = z4.element_i64(&[2]).map_err(err)?;
    let one = vec![BigInt::from(1)];
    let cp = doubling_chain_pairing(z4.clone(), 1, 1).map_err(err)?;
    let bx = biextension_from_chain_pairing(&cp, 1, &audit).map_err(err)?;
    let w = bx.weil_pairing(&one, &one, 2).map_err(err)?;
    let wf = bx.weil_pairing_from_fibers(&one, &one, 2).map_err(err)?;
    let alg = doubling_dg_algebra(false).map_err(err)?;
    let m = alg.massey_weil(1, &one, &one, &one, &one, 2).map_err(err)?;
    let induced = biextension_from_chain_pairing(&alg.chain_pairing().map_err(err)?, 1, &audit).map_err(err)?;
    let wi = induced.weil_pairing(&one, &one, 2).map_err(err)?;
    if w != two || wf != two || m != two || wi != two {
        return Err(format!(
            "Weil pairing {w:?}, from fibers {wf:?}, Massey {m:?}, induced {wi:?}; expected {two:?}"
        ));
    }
    let ext = doubling_dg_algebra(true).map_err(err)?;
    for k in -3i64..=3 {
        let (at, bt) = (vec![BigInt::from(1), BigInt::from(k)], vec![BigInt::from(1), BigInt::from(-k)]);
        let v = ext.massey_weil(1, &one, &one, &at, &bt, 2).map_err(err)?;
        if v != two {
            return Err(format!("Massey value {v:?} for bounding chains shifted by {k}"));
        }
    }
    Ok("Weil pairing of the generators is 2 ∈ Z/4 from ψ, from the fibers and from m₃, for 7 choices of bounding chains".into())
}

fn int_toy(seed: u64) -> Result<Biextension<IntegerToy, IntegerToy>, BiextError> {
    let (t, p) = integer_toy(3);
    Biextension::build(t, p, &AuditConfig { seed, ..AuditConfig::default() })
}

fn chain_instances(seed: u64) -> Result<Vec<(ChainBiextension, &'static str)>, BiextError> {
    let audit = AuditConfig {
        seed,
        ..AuditConfig::default()
    };
    Ok(vec![
        (
            biextension_from_chain_pairing(&doubling_chain_pairing(FgAbGroup::cyclic(4), 1, 1)?, 1, &audit)?,
            "doubling complex into Z/4",
        ),
        (biextension_from_chain_pairing(&rank_two_chain_pairing()?, 1, &audit)?, "rank-two complex into Z/8"),
    ])
}

/// Restriction and twist on every quadruple of base points.
fn modifiers_on_all_quadruples<T, R, P, Q, F>(
    full: &Biextension<T, P>,
    restricted: &Biextension<R, P>,
    twisted: &Biextension<T, Q>,
    phi: F,
    rng: &mut SeededRng,
) -> Result<usize, BiextError>
where
    T: Bisubgroup,
    R: Bisubgroup<A = T::A, B = T::B, QA = T::QA, QB = T::QB>,
    P: Trivialization<El<T::A>, El<T::B>>,
    Q: Trivialization<El<T::A>, El<T::B>, N = P::N>,
    F: Fn(&El<T::A>, &El<T::B>) -> El<P::N> + Copy,
{
    let (qa, qb) = full
        .bisubgroup()
        .quotient_elements()
        .ok_or_else(|| BiextError::Audit { check: "enumeration", detail: "quotients are not enumerable".into() })?;
    let mut count = 0;
    for alpha in &qa {
        for beta in &qa {
            for gamma in &qb {
                for delta in &qb {
                    laws::restriction(full, restricted, (alpha, beta), (gamma, delta), rng)?;
                    laws::twist(full, twisted, phi, (alpha, beta), (gamma, delta), rng)?;
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// Restriction and twist on `samples` random quadruples.
fn modifiers_sampled<T, R, P, Q, F>(
    full: &Biextension<T, P>,
    restricted: &Biextension<R, P>,
    twisted: &Biextension<T, Q>,
    phi: F,
    samples: usize,
    rng: &mut SeededRng,
) -> Result<usize, BiextError>
where
    T: Bisubgroup,
    R: Bisubgroup<A = T::A, B = T::B, QA = T::QA, QB = T::QB>,
    P: Trivialization<El<T::A>, El<T::B>>,
    Q: Trivialization<El<T::A>, El<T::B>, N = P::N>,
    F: Fn(&El<T::A>, &El<T::B>) -> El<P::N> + Copy,
{
    for _ in 0..samples {
        let (alpha, gamma) = laws::random_base(restricted, rng);
        let (beta, delta) = laws::random_base(restricted, rng);
        laws::restriction(full, restricted, (&alpha, &beta), (&gamma, &delta), rng)?;
        laws::twist(full, twisted, phi, (&alpha, &beta), (&gamma, &delta), rng)?;
    }
    Ok(samples)
}

fn chain_keep(a: &Vec<BigInt>, b: &Vec<BigInt>) -> bool {
    let zero = BigInt::from(0);
    &a[0] % 3 == zero || &b[0] % 3 == zero
}

fn quotient_axioms(seed: u64) -> Result<String, String> {
    let mut rng = SeededRng::seed_from_u64(seed);
    let mut exhaustive = 0;

    let toy = int_toy(seed).map_err(err)?;
    exhaustive += laws::exhaustive(&toy, &mut rng).map_err(|e| format!("integer toy: {e}"))?.unwrap_or(0);
    let (t, p) = integer_toy(3);
    let restricted = Biextension::unchecked(Restricted::new(t.clone(), |a: &i64, b: &i64| a % 3 == 0 || b % 3 == 0), p.clone(), seed);
    let z4 = FgAbGroup::cyclic(4);
    let phi = |a: &i64, b: &i64| z4.element_i64(&[a * b]).expect("rank one");
    let twisted = Biextension::build(t, Twisted::new(p, phi), &AuditConfig::default()).map_err(err)?;
    let mut modified = modifiers_on_all_quadruples(&toy, &restricted, &twisted, phi, &mut rng)
        .map_err(|e| format!("integer toy: {e}"))?;

    for (bx, name) in chain_instances(seed).map_err(err)? {
        exhaustive += laws::exhaustive(&bx, &mut rng).map_err(|e| format!("{name}: {e}"))?.unwrap_or(0);
        let restricted = Biextension::unchecked(
            Restricted::new(bx.bisubgroup().clone(), chain_keep),
            bx.trivialization().clone(),
            seed,
        );
        let n = bx.coefficients().clone();
        let phi = |a: &Vec<BigInt>, b: &Vec<BigInt>| {
            n.element(vec![&a[0] * &b[0] + &a[a.len() - 1] * &b[0]]).expect("rank one")
        };
        let twisted = Biextension::build(
            bx.bisubgroup().clone(),
            Twisted::new(bx.trivialization().clone(), phi),
            &AuditConfig::default(),
        )
        .map_err(err)?;
        modified += modifiers_on_all_quadruples(&bx, &restricted, &twisted, phi, &mut rng)
            .map_err(|e| format!("{name}: {e}"))?;
    }

    let mut curve_samples = 0;
    let curves = [elliptic(7, 1, &[], -1, 0), elliptic(13, 1, &[], 0, 3), line(7)];
    for c in &curves {
        let bx = pe_biextension(c, &AuditConfig { seed, ..AuditConfig::default() }).map_err(err)?;
        curve_samples += laws::sampled(&bx, 167, &mut rng).map_err(|e| format!("curve laws: {e}"))?;
    }
    let c = elliptic(13, 1, &[], 0, 3);
    let full = pe_biextension(&c, &AuditConfig { seed, ..AuditConfig::default() }).map_err(err)?;
    let avoid = c.points()[1];
    let restricted = Biextension::unchecked(
        Restricted::new(CurveBisubgroup::new(c.clone()), move |z: &Divisor, w: &Divisor| {
            z.multiplicity(&avoid) == 0 && w.multiplicity(&avoid) == 0
        }),
        CurveTrivialization::new(c.clone()),
        seed,
    );
    let (r0, r1) = (c.points()[2], c.points()[3]);
    let fq = c.field_arc();
    let phi = |z: &Divisor, w: &Divisor| fq.pow(2, z.multiplicity(&r0) * w.multiplicity(&r1)).expect("nonzero base");
    let twisted = Biextension::build(
        CurveBisubgroup::new(c.clone()),
        Twisted::new(CurveTrivialization::new(c.clone()), phi),
        &AuditConfig::default(),
    )
    .map_err(err)?;
    let curve_modified = modifiers_sampled(&full, &restricted, &twisted, phi, 100, &mut rng)
        .map_err(|e| format!("curve restriction or twist: {e}"))?;

    let mut torus_samples = 0;
    let mut torus_modified = 0;
    for h in torus_instances(seed) {
        let full = poincare_biextension(&h, &AuditConfig { seed, ..AuditConfig::default() }).map_err(err)?;
        torus_samples += laws::sampled(&full, 100, &mut rng).map_err(|e| format!("torus laws: {e}"))?;
        let real = |v: &CVector| v.iter().all(|z| z.im.abs() <= EPS);
        let restricted = Biextension::unchecked(
            Restricted::new(PoincareBisubgroup::new(&h).map_err(err)?, move |a: &CVector, b: &CVector| {
                real(a) || real(b)
            }),
            PoincareTrivialization::new(&h).map_err(err)?,
            seed,
        );
        let phi = |a: &CVector, b: &CVector| (Complex64::new(0.0, 0.1) * a[0] * b[0]).exp();
        let twisted = Biextension::build(
            PoincareBisubgroup::new(&h).map_err(err)?,
            Twisted::new(PoincareTrivialization::new(&h).map_err(err)?, phi),
            &AuditConfig::default(),
        )
        .map_err(err)?;
        torus_modified += modifiers_sampled(&full, &restricted, &twisted, phi, 20, &mut rng)
            .map_err(|e| format!("torus restriction or twist: {e}"))?;
    }
    Ok(format!(
        "exhaustive: {exhaustive} quadruples for the laws and {modified} for restriction and twist on three finite instances; \
         sampled: {curve_samples} curve and {torus_samples} torus tuples for the laws, \
         {curve_modified} curve and {torus_modified} torus tuples for restriction and twist"
    ))
}

/// Square lattice, a skew lattice and random structures of genus one and two.
fn torus_instances(seed: u64) -> Vec<HodgeStructure> {
    let mut rng = SeededRng::seed_from_u64(seed ^ 0x7015);
    let tol = Tolerance::default();
    vec![
        HodgeStructure::square_lattice(),
        HodgeStructure::from_lattice(Complex64::new(1.0, 0.0), Complex64::new(0.37, 1.21), tol).expect("lattice"),
        HodgeStructure::random(1, &mut rng, tol),
        HodgeStructure::random(2, &mut rng, tol),
        HodgeStructure::random(2, &mut rng, tol),
    ]
}

fn poincare(seed: u64) -> Result<String, String> {
    let mut rng = SeededRng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let mut track = |what: &str, r: f64| -> Result<(), String> {
        worst = worst.max(r);
        if r < EPS {
            Ok(())
        } else {
            Err(format!("{what}: residual {r:e}"))
        }
    };
    let mut tuples = 0;
    for h in torus_instances(seed) {
        let (n, g) = (h.rank(), h.genus());
        let dual = h.dual().map_err(err)?;
        for _ in 0..100 {
            let a = random_kernel(&h, &mut rng);
            let b = random_kernel(&dual, &mut rng);
            let p1 = poincare_psi(&h, &a, &b, Slot::First).map_err(err)?;
            let p2 = poincare_psi(&h, &a, &b, Slot::Second).map_err(err)?;
            track(&format!("slot overlap, g = {g}"), NonzeroComplex::residual(&p1, &p2))?;
            let x = random_vector(n, 1.0, &mut rng);
            let psi = poincare_psi(&h, &a, &x, Slot::First).map_err(err)?;
            let hx = height_trivialization(&h, &a, &x).map_err(err)?;
            track(&format!("height on the first slot, g = {g}"), (hx - psi.norm().ln()).abs())?;
            let psi = poincare_psi(&h, &x, &b, Slot::Second).map_err(err)?;
            let hx = height_trivialization(&h, &x, &b).map_err(err)?;
            track(&format!("height on the second slot, g = {g}"), (hx - psi.norm().ln()).abs())?;
        }
        for l in [2u32, 3, 5] {
            for _ in 0..10 {
                let (e, e2, f) = (random_torsion(n, l, &mut rng), random_torsion(n, l, &mut rng), random_torsion(n, l, &mut rng));
                let w = analytic_weil(&h, &e, &f, l).map_err(err)?;
                track(&format!("|e_{l}| = 1, g = {g}"), (w.norm() - 1.0).abs())?;
                track(&format!("e_{l}^{l} = 1, g = {g}"), (w.powi(l as i32) - 1.0).norm())?;
                let w2 = analytic_weil(&h, &e2, &f, l).map_err(err)?;
                let sum = analytic_weil(&h, &(&e + &e2), &f, l).map_err(err)?;
                track(&format!("bilinearity of e_{l}, g = {g}"), (sum - w * w2).norm())?;
            }
        }
        let bx = poincare_biextension(&h, &AuditConfig { seed, ..AuditConfig::default() }).map_err(err)?;
        tuples += laws::sampled(&bx, 20, &mut rng).map_err(|e| format!("biextension laws, g = {g}: {e}"))?;
    }
    Ok(format!(
        "five structures (g ∈ {{1, 2}}, square lattice included), {tuples} law tuples, largest residual {worst:.1e}"
    ))
}

fn cross_world(seed: u64) -> Result<String, String> {
    let mut rng = SeededRng::seed_from_u64(seed);
    let c = elliptic(7, 1, &[], -1, 0);
    let algebraic = weil_pairing_points(&c, &Point::affine(0, 0), &Point::affine(1, 0), 2, &mut rng).map_err(err)?;
    let h = HodgeStructure::square_lattice();
    let half = |i: usize| {
        let mut v = CVector::zeros(2);
        v[i] = Complex64::new(0.5, 0.0);
        v
    };
    let analytic = analytic_weil(&h, &half(0), &half(1), 2).map_err(err)?;
    let residual = (analytic + 1.0).norm();
    if algebraic != 6 || residual >= EPS {
        return Err(format!("algebraic {algebraic} in F7, analytic {analytic}"));
    }
    Ok(format!("algebraic side 6 = −1 in F7, analytic side −1 within {residual:.1e}"))
}

fn lift_independence(seed: u64) -> Result<String, String> {
    let mut rng = SeededRng::seed_from_u64(seed);
    let mut curve_instances = 0;
    for (c, l, name) in torsion_cases() {
        let bx = Biextension::unchecked(CurveBisubgroup::new(c.clone()), CurveTrivialization::new(c.clone()), seed);
        let pts = c.torsion(l);
        let (p, q) = (pts[1], pts[pts.len() - 1]);
        let (z, w) = disjoint_representatives(&c, &p, &q, &mut rng).map_err(err)?;
        let reference = bx.weil_pairing(&z, &w, l).map_err(err)?;
        let mut checked = 0;
        while checked < 100 {
            let z2 = z.plus(&random_principal(&c, 2, &mut rng));
            let w2 = w.plus(&random_principal(&c, 2, &mut rng));
            if !z2.disjoint(&w2) {
                continue;
            }
            let v = bx.weil_pairing(&z2, &w2, l).map_err(err)?;
            if v != reference {
                return Err(format!("{name}: lifts {} and {} give {v}, not {reference}", z2.format(&c), w2.format(&c)));
            }
            checked += 1;
        }
        curve_instances += 1;
    }
    let mut worst = 0.0f64;
    let mut torus_instances_checked = 0;
    for h in torus_instances(seed) {
        let dual = h.dual().map_err(err)?;
        let n = h.rank();
        for l in [2u32, 3] {
            let (e, f) = (random_torsion(n, l, &mut rng), random_torsion(n, l, &mut rng));
            let w = analytic_weil(&h, &e, &f, l).map_err(err)?;
            for _ in 0..100 {
                let e2 = &e + random_kernel(&h, &mut rng);
                let f2 = &f + random_kernel(&dual, &mut rng);
                let r = (analytic_weil(&h, &e2, &f2, l).map_err(err)? - w).norm();
                worst = worst.max(r);
                if r >= EPS {
                    return Err(format!("torus of genus {}: lift changes e_{l} by {r:e}", h.genus()));
                }
            }
            torus_instances_checked += 1;
        }
    }
    Ok(format!(
        "100 perturbations each: {curve_instances} curve instances exact, {torus_instances_checked} torus instances within {worst:.1e}"
    ))
}
