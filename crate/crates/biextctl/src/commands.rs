//! The subcommands. Each takes its deserialized input and returns a [`Report`].

use biext_core::abelian::GroupElement;
use biext_core::biext::chain::biextension_from_chain_pairing;
use biext_core::biext::toy::doubling_dg_algebra;
use biext_core::biext::{laws, AuditConfig};
use biext_core::curve::json::{field_element_json, CurveSpec, FunctionSpec, PointSpec};
use biext_core::curve::{
    tame_reciprocity, tame_symbol, weil_pairing_oracle, weil_pairing_points, weil_reciprocity_check, Curve,
    CurveError,
};
use biext_core::hodge::json::{complex_json, decimal, vector_from_json, ComplexJson, HodgeSpec};
use biext_core::hodge::sample::{random_kernel, random_torsion, random_vector};
use biext_core::hodge::{
    analytic_weil, height_trivialization, poincare_biextension, poincare_psi, CVector, HodgeError, HodgeStructure,
    NonzeroComplex, Slot,
};
use biext_core::SeededRng;
use num_bigint::BigInt;
use num_complex::Complex64;
use rand::SeedableRng;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::{CliError, Report};

fn curve_err(e: CurveError) -> CliError {
    CliError::input(e)
}

fn hodge_err(e: HodgeError) -> CliError {
    CliError::input(e)
}

fn element(c: &Curve, x: u32) -> Value {
    json!(field_element_json(c.field(), x))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeilInput {
    pub curve: CurveSpec,
    pub p: PointSpec,
    pub q: PointSpec,
    pub l: u32,
}

/// `e_l(P, Q)` from the biextension, its multiplicative order and the oracle value.
pub fn weil(input: WeilInput, seed: u64) -> Result<Report, CliError> {
    let c = input.curve.build().map_err(curve_err)?;
    let p = input.p.resolve(&c).map_err(curve_err)?;
    let q = input.q.resolve(&c).map_err(curve_err)?;
    let mut rng = SeededRng::seed_from_u64(seed);
    let value = weil_pairing_points(&c, &p, &q, input.l, &mut rng).map_err(curve_err)?;
    let oracle = weil_pairing_oracle(&c, &p, &q, input.l, &mut rng).map_err(curve_err)?;
    let f = c.field();
    let order = (1..=input.l).find(|&k| f.pow(value, k as i64) == Some(1));
    let agree = value == oracle && order.is_some();
    Ok(Report {
        body: json!({
            "p": c.format_point(&p),
            "q": c.format_point(&q),
            "l": input.l.to_string(),
            "value": element(&c, value),
            "order": order.map_or("none".to_string(), |k| k.to_string()),
            "oracle_value": element(&c, oracle),
            "agree": agree,
        }),
        ok: agree,
        text: None,
    })
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairInput {
    pub curve: CurveSpec,
    pub f: FunctionSpec,
    pub g: FunctionSpec,
    #[serde(default)]
    pub at: Option<PointSpec>,
}

/// `f(div g)` against `g(div f)`.
pub fn reciprocity(input: PairInput) -> Result<Report, CliError> {
    if input.at.is_some() {
        return Err(CliError::Input("reciprocity takes no point".into()));
    }
    let c = input.curve.build().map_err(curve_err)?;
    let f = input.f.build(&c).map_err(curve_err)?;
    let g = input.g.build(&c).map_err(curve_err)?;
    let r = weil_reciprocity_check(&c, &f, &g).map_err(curve_err)?;
    Ok(Report {
        body: json!({
            "lhs": element(&c, r.lhs),
            "rhs": element(&c, r.rhs),
            "equal": r.equal,
        }),
        ok: r.equal,
        text: None,
    })
}

/// The tame symbol at a point (when given) and the product over all places.
pub fn tame(input: PairInput) -> Result<Report, CliError> {
    let c = input.curve.build().map_err(curve_err)?;
    let f = input.f.build(&c).map_err(curve_err)?;
    let g = input.g.build(&c).map_err(curve_err)?;
    let mut body = serde_json::Map::new();
    if let Some(at) = &input.at {
        let p = at.resolve(&c).map_err(curve_err)?;
        let v = tame_symbol(&c, &f, &g, &p).map_err(curve_err)?;
        body.insert("at".into(), json!(c.format_point(&p)));
        body.insert("symbol".into(), element(&c, v));
    }
    let product = tame_reciprocity(&c, &f, &g).map_err(curve_err)?;
    body.insert("product".into(), element(&c, product));
    body.insert("trivial".into(), json!(product == 1));
    Ok(Report {
        body: Value::Object(body),
        ok: product == 1,
        text: None,
    })
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum TorusAction {
    Axioms,
    Weil,
    Height,
}

fn default_samples() -> usize {
    100
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusInput {
    pub hodge: HodgeSpec,
    pub action: TorusAction,
    #[serde(default)]
    pub e: Option<Vec<ComplexJson>>,
    #[serde(default)]
    pub f: Option<Vec<ComplexJson>>,
    #[serde(default)]
    pub l: Option<u32>,
    #[serde(default)]
    pub phi: Option<Vec<ComplexJson>>,
    #[serde(default)]
    pub phi_dual: Option<Vec<ComplexJson>>,
    #[serde(default = "default_samples")]
    pub samples: usize,
}

/// One named residual and whether it is within tolerance.
struct Checks {
    tol: f64,
    items: Vec<Value>,
    ok: bool,
}

impl Checks {
    fn new(tol: f64) -> Self {
        Checks { tol, items: Vec::new(), ok: true }
    }

    fn residual(&mut self, name: &str, residual: f64) {
        let pass = residual <= self.tol;
        self.ok &= pass;
        self.items.push(json!({"name": name, "residual": decimal_sci(residual), "pass": pass}));
    }

    fn verdict(&mut self, name: &str, result: Result<String, String>) {
        let pass = result.is_ok();
        self.ok &= pass;
        let detail = result.unwrap_or_else(|e| e);
        self.items.push(json!({"name": name, "detail": detail, "pass": pass}));
    }
}

/// Residuals are small; print them in scientific notation.
fn decimal_sci(x: f64) -> String {
    format!("{x:.3e}")
}

fn vector(v: &Option<Vec<ComplexJson>>, name: &str, h: &HodgeStructure) -> Result<CVector, CliError> {
    let v = v
        .as_ref()
        .ok_or_else(|| CliError::Input(format!("action needs {name}")))?;
    if v.len() != h.rank() {
        return Err(CliError::Input(format!("{name} has length {}, expected {}", v.len(), h.rank())));
    }
    Ok(vector_from_json(v))
}

pub fn torus(mut input: TorusInput, seed: u64, tolerance: Option<f64>) -> Result<Report, CliError> {
    if tolerance.is_some() {
        input.hodge.tolerance = tolerance;
    }
    let h = input.hodge.build().map_err(hodge_err)?;
    let inv = h.invariants().map_err(hodge_err)?;
    let mut rng = SeededRng::seed_from_u64(seed);
    let mut checks = Checks::new(h.tolerance().eps());
    let mut body = serde_json::Map::new();
    body.insert("genus".into(), json!(h.genus().to_string()));
    body.insert("condition_number".into(), json!(decimal_sci(inv.condition_number)));
    body.insert("lattice_distance".into(), json!(decimal_sci(inv.lattice_distance)));
    checks.residual("morphism condition", inv.morphism_residual);
    match input.action {
        TorusAction::Axioms => axioms(&h, input.samples, seed, &mut rng, &mut checks).map_err(hodge_err)?,
        TorusAction::Weil => {
            let e = vector(&input.e, "e", &h)?;
            let f = vector(&input.f, "f", &h)?;
            let l = input.l.ok_or_else(|| CliError::Input("action needs l".into()))?;
            let w = analytic_weil(&h, &e, &f, l).map_err(hodge_err)?;
            body.insert("value".into(), json!(complex_json(w)));
            checks.residual("unit modulus", (w.norm() - 1.0).abs());
            checks.residual("l-th root of unity", (w.powi(l as i32) - 1.0).norm());
            let dual = h.dual().map_err(hodge_err)?;
            let mut lift = 0.0f64;
            for _ in 0..input.samples {
                let e2 = &e + random_kernel(&h, &mut rng);
                let f2 = &f + random_kernel(&dual, &mut rng);
                lift = lift.max((analytic_weil(&h, &e2, &f2, l).map_err(hodge_err)? - w).norm());
            }
            checks.residual("lift independence", lift);
        }
        TorusAction::Height => {
            let phi = vector(&input.phi, "phi", &h)?;
            let phi_v = vector(&input.phi_dual, "phi_dual", &h)?;
            let value = height_trivialization(&h, &phi, &phi_v).map_err(hodge_err)?;
            body.insert("value".into(), json!(decimal(value)));
            let dual = h.dual().map_err(hodge_err)?;
            for (slot, inside, name) in [
                (Slot::First, h.integral_residual(&phi), "log|ψ| through the first slot"),
                (Slot::Second, dual.integral_residual(&phi_v), "log|ψ| through the second slot"),
            ] {
                if inside <= h.tolerance().eps() {
                    let psi = poincare_psi(&h, &phi, &phi_v, slot).map_err(hodge_err)?;
                    checks.residual(name, (psi.norm().ln() - value).abs());
                }
            }
        }
    }
    body.insert("checks".into(), Value::Array(checks.items));
    body.insert("ok".into(), json!(checks.ok));
    Ok(Report {
        body: Value::Object(body),
        ok: checks.ok,
        text: None,
    })
}

fn axioms(
    h: &HodgeStructure,
    samples: usize,
    seed: u64,
    rng: &mut SeededRng,
    checks: &mut Checks,
) -> Result<(), HodgeError> {
    let n = h.rank();
    let dual = h.dual()?;
    checks.residual("dual involution", h.filtration_distance(&dual.dual()?));
    let mut decomposition = 0.0f64;
    let mut overlap = 0.0f64;
    let mut height_s = 0.0f64;
    let mut additivity = 0.0f64;
    for _ in 0..samples {
        let phi = random_vector(n, 2.0, rng);
        let (r, eta) = h.decompose(&phi);
        let back = r.map(Complex64::from) + &eta;
        decomposition = decomposition.max((back - &phi).camax()).max(h.f0_residual(&eta));

        let a = random_kernel(h, rng);
        let b = random_kernel(&dual, rng);
        let p1 = poincare_psi(h, &a, &b, Slot::First)?;
        let p2 = poincare_psi(h, &a, &b, Slot::Second)?;
        overlap = overlap.max(NonzeroComplex::residual(&p1, &p2));

        let x = random_vector(n, 1.0, rng);
        let psi = poincare_psi(h, &a, &x, Slot::First)?;
        height_s = height_s.max((height_trivialization(h, &a, &x)? - psi.norm().ln()).abs());
        let psi = poincare_psi(h, &x, &b, Slot::Second)?;
        height_s = height_s.max((height_trivialization(h, &x, &b)? - psi.norm().ln()).abs());

        let (y, z) = (random_vector(n, 1.0, rng), random_vector(n, 1.0, rng));
        let sum = height_trivialization(h, &(&x + &y), &z)?;
        additivity = additivity.max((sum - height_trivialization(h, &x, &z)? - height_trivialization(h, &y, &z)?).abs());
    }
    checks.residual("decomposition round trip", decomposition);
    checks.residual("slot overlap", overlap);
    checks.residual("height equals log|ψ| on S", height_s);
    checks.residual("height additivity", additivity);

    let mut roots = 0.0f64;
    let mut bilinear = 0.0f64;
    for l in [2u32, 3, 5] {
        for _ in 0..samples.div_ceil(10) {
            let (e, e2, f) = (random_torsion(n, l, rng), random_torsion(n, l, rng), random_torsion(n, l, rng));
            let w = analytic_weil(h, &e, &f, l)?;
            roots = roots.max((w.norm() - 1.0).abs()).max((w.powi(l as i32) - 1.0).norm());
            let w2 = analytic_weil(h, &e2, &f, l)?;
            bilinear = bilinear.max((analytic_weil(h, &(&e + &e2), &f, l)? - w * w2).norm());
        }
    }
    checks.residual("Weil pairing in roots of unity", roots);
    checks.residual("Weil pairing bilinearity", bilinear);

    let audit = AuditConfig {
        seed,
        ..AuditConfig::default()
    };
    let laws = poincare_biextension(h, &audit).and_then(|bx| {
        laws::sampled(&bx, samples, rng).map_err(HodgeError::from)
    });
    checks.verdict(
        "interchange, units, associativity, commutativity, path independence",
        laws.map(|k| format!("{k} sampled tuples")).map_err(|e| e.to_string()),
    );
    Ok(())
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Algebra {
    Doubling,
    DoublingExtended,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MasseyInput {
    pub algebra: Algebra,
    pub p: i64,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub a_tilde: Vec<i64>,
    pub b_tilde: Vec<i64>,
    pub l: u32,
}

impl Default for MasseyInput {
    /// The `Z/4` toy at `l = 2` with unit cocycles and bounding chains.
    fn default() -> Self {
        MasseyInput {
            algebra: Algebra::Doubling,
            p: 1,
            a: vec![1],
            b: vec![1],
            a_tilde: vec![1],
            b_tilde: vec![1],
            l: 2,
        }
    }
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn coords(g: &GroupElement) -> Value {
    json!(g.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>())
}

/// The Massey-product value against the Weil pairing of the induced chain biextension.
pub fn massey(input: MasseyInput, seed: u64) -> Result<Report, CliError> {
    let alg = doubling_dg_algebra(input.algebra == Algebra::DoublingExtended).map_err(CliError::input)?;
    let m = alg
        .massey_weil(input.p, &big(&input.a), &big(&input.b), &big(&input.a_tilde), &big(&input.b_tilde), input.l)
        .map_err(CliError::input)?;
    let cp = alg.chain_pairing().map_err(CliError::input)?;
    let audit = AuditConfig {
        seed,
        ..AuditConfig::default()
    };
    let bx = biextension_from_chain_pairing(&cp, input.p, &audit).map_err(CliError::input)?;
    let w = bx.weil_pairing(&big(&input.a), &big(&input.b), input.l).map_err(CliError::input)?;
    let agree = m == w;
    Ok(Report {
        body: json!({
            "massey": coords(&m),
            "biextension": coords(&w),
            "coefficients": cp.coefficients().to_string(),
            "agree": agree,
        }),
        ok: agree,
        text: None,
    })
}
