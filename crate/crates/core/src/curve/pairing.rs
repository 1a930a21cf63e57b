use rand::Rng;

use super::{
    function_with_divisor, ClassGroup, Curve, CurveError, CurveKind, Divisor, DivisorGroup, FunctionProgram,
    Multiplicative, Point, REPAIR_ATTEMPTS,
};
use crate::biext::{AuditConfig, Biextension, BiextError, Bisubgroup, Trivialization};
use crate::SeededRng;

/// `Π f(P)^{n_P}` over the support of `d`, which must avoid the zeros and poles of `f`.
pub fn evaluate_at_divisor(c: &Curve, f: &FunctionProgram, d: &Divisor) -> Result<u32, CurveError> {
    d.check_on(c)?;
    let field = c.field();
    let mut acc = 1u32;
    for (p, n) in d.terms() {
        let v = f.value_at(c, p)?;
        acc = field.mul(acc, field.pow(v, *n).expect("nonzero value"));
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Reciprocity {
    /// `f(div g)`
    pub lhs: u32,
    /// `g(div f)`
    pub rhs: u32,
    pub equal: bool,
}

/// Both sides of Weil reciprocity for functions with disjoint divisors.
pub fn weil_reciprocity_check(
    c: &Curve,
    f: &FunctionProgram,
    g: &FunctionProgram,
) -> Result<Reciprocity, CurveError> {
    let (df, dg) = (f.divisor(c)?, g.divisor(c)?);
    if let Some(p) = df.support().find(|p| dg.multiplicity(p) != 0) {
        return Err(CurveError::SupportCollision(c.format_point(p)));
    }
    let lhs = evaluate_at_divisor(c, f, &dg)?;
    let rhs = evaluate_at_divisor(c, g, &df)?;
    Ok(Reciprocity {
        lhs,
        rhs,
        equal: lhs == rhs,
    })
}

/// `(−1)^{v(f)v(g)} (f^{v(g)} / g^{v(f)})(P)`.
pub fn tame_symbol(c: &Curve, f: &FunctionProgram, g: &FunctionProgram, at: &Point) -> Result<u32, CurveError> {
    c.check_point(at)?;
    let field = c.field();
    let (vf, lf) = f.local(c, at)?;
    let (vg, lg) = g.local(c, at)?;
    let num = field.pow(lf, vg).expect("nonzero");
    let den = field.pow(lg, vf).expect("nonzero");
    let v = field.div(num, den).expect("nonzero");
    Ok(if (vf * vg) % 2 != 0 { field.neg(v) } else { v })
}

/// Product of the tame symbols over every place where `f` or `g` has a zero or pole.
pub fn tame_reciprocity(c: &Curve, f: &FunctionProgram, g: &FunctionProgram) -> Result<u32, CurveError> {
    let places = f.divisor(c)?.plus(&Divisor::zero());
    let mut support: Vec<Point> = places.support().copied().collect();
    support.extend(g.divisor(c)?.support().copied());
    support.sort();
    support.dedup();
    let field = c.field();
    support
        .iter()
        .try_fold(1u32, |acc, p| Ok(field.mul(acc, tame_symbol(c, f, g, p)?)))
}

/// Whether `d` pairs trivially with every constant function; on a curve
/// this is exactly `deg d = 0`.
pub fn is_in_zprime(_c: &Curve, d: &Divisor) -> bool {
    d.degree() == 0
}

/// Degree-zero divisors, their classes, and `T = {(Z, W) : |Z| ∩ |W| = ∅}`.
#[derive(Clone, Debug)]
pub struct CurveBisubgroup {
    curve: Curve,
    divisors: DivisorGroup,
    classes: ClassGroup,
    exhaustive_limit: u64,
}

impl CurveBisubgroup {
    pub fn new(curve: Curve) -> Self {
        CurveBisubgroup {
            classes: ClassGroup::new(curve.clone()),
            curve,
            divisors: DivisorGroup,
            exhaustive_limit: 4096,
        }
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    /// A degree-zero divisor with a few random points.
    fn random_divisor(&self, rng: &mut SeededRng) -> Divisor {
        let c = &self.curve;
        let k = rng.gen_range(1..=3);
        let mut d = Divisor::zero();
        let base = c.random_point(rng);
        for _ in 0..k {
            let n = rng.gen_range(1..=2) * if rng.gen::<bool>() { 1 } else { -1 };
            d.add_term(c.random_point(rng), n);
            d.add_term(base, -n);
        }
        d
    }

    /// A linearly equivalent divisor disjoint from every partner.
    fn move_away(&self, d: &Divisor, partners: &[&Divisor], rng: &mut SeededRng) -> Option<Divisor> {
        if d.degree() != 0 || partners.iter().any(|p| p.degree() != 0) {
            return None;
        }
        if partners.iter().all(|p| d.disjoint(p)) {
            return Some(d.clone());
        }
        let alpha = d.sum(&self.curve);
        (0..REPAIR_ATTEMPTS)
            .map(|i| {
                if i % 2 == 0 {
                    self.translate(&alpha, rng)
                } else {
                    self.spread(&alpha, rng)
                }
            })
            .find(|c| partners.iter().all(|p| c.disjoint(p)))
    }

    /// `(α + R + U − S) + (S) − (R) − (U)`, a four-point representative of
    /// `α` for small curves where two-point ones keep colliding.
    fn spread(&self, alpha: &Point, rng: &mut SeededRng) -> Divisor {
        let c = &self.curve;
        let (r, s, u) = (c.random_point(rng), c.random_point(rng), c.random_point(rng));
        let x = c.sub(&c.add(&c.add(alpha, &r), &u), &s);
        Divisor::from_terms([(x, 1), (s, 1), (r, -1), (u, -1)])
    }

    /// `(α + R) − (R)`, a representative of the class `α`.
    fn translate(&self, alpha: &Point, rng: &mut SeededRng) -> Divisor {
        let c = &self.curve;
        let r = c.random_point(rng);
        match c.kind() {
            CurveKind::Elliptic { .. } => Divisor::from_terms([(c.add(alpha, &r), 1), (r, -1)]),
            CurveKind::ProjectiveLine => Divisor::from_terms([(r, 1), (c.random_point(rng), -1)]),
        }
    }
}

impl Bisubgroup for CurveBisubgroup {
    type A = DivisorGroup;
    type B = DivisorGroup;
    type QA = ClassGroup;
    type QB = ClassGroup;

    fn group_a(&self) -> &DivisorGroup {
        &self.divisors
    }

    fn group_b(&self) -> &DivisorGroup {
        &self.divisors
    }

    fn quotient_a(&self) -> &ClassGroup {
        &self.classes
    }

    fn quotient_b(&self) -> &ClassGroup {
        &self.classes
    }

    fn contains(&self, a: &Divisor, b: &Divisor) -> bool {
        a.degree() == 0 && b.degree() == 0 && a.disjoint(b)
    }

    fn project_a(&self, a: &Divisor) -> Point {
        a.sum(&self.curve)
    }

    fn project_b(&self, b: &Divisor) -> Point {
        b.sum(&self.curve)
    }

    fn section(&self, alpha: &Point, beta: &Point, rng: &mut SeededRng) -> Option<(Divisor, Divisor)> {
        for _ in 0..REPAIR_ATTEMPTS {
            let z = self.translate(alpha, rng);
            let w = self.translate(beta, rng);
            if z.disjoint(&w) {
                return Some((z, w));
            }
        }
        None
    }

    fn sample_a(&self, rng: &mut SeededRng) -> Divisor {
        self.random_divisor(rng)
    }

    fn sample_b(&self, rng: &mut SeededRng) -> Divisor {
        self.random_divisor(rng)
    }

    fn sample_kernel_a(&self, rng: &mut SeededRng) -> Divisor {
        let d = self.random_divisor(rng);
        let s = d.sum(&self.curve);
        d.minus(&Divisor::from_terms([(s, 1), (Point::Infinity, -1)]))
    }

    fn sample_kernel_b(&self, rng: &mut SeededRng) -> Divisor {
        self.sample_kernel_a(rng)
    }

    fn compact(&self, a: &Divisor, b: &Divisor, rng: &mut SeededRng) -> Option<(Divisor, Divisor)> {
        if a.terms().count() <= 2 && b.terms().count() <= 2 {
            return None;
        }
        self.section(&a.sum(&self.curve), &b.sum(&self.curve), rng)
    }

    fn adjust_a(&self, a: &Divisor, partners: &[&Divisor], rng: &mut SeededRng) -> Option<Divisor> {
        self.move_away(a, partners, rng)
    }

    fn adjust_b(&self, b: &Divisor, partners: &[&Divisor], rng: &mut SeededRng) -> Option<Divisor> {
        self.move_away(b, partners, rng)
    }

    fn quotient_elements(&self) -> Option<(Vec<Point>, Vec<Point>)> {
        let pts = match self.curve.kind() {
            CurveKind::Elliptic { .. } => {
                if (self.curve.field().order() as u64 + 1).pow(2) > self.exhaustive_limit * 4 {
                    return None;
                }
                self.curve.points()
            }
            CurveKind::ProjectiveLine => vec![Point::Infinity],
        };
        Some((pts.clone(), pts))
    }
}

/// `ψ(div f, W) = f(W)` and `ψ(Z, div g) = g(Z)`, valued in `F_q^*`.
#[derive(Clone, Debug)]
pub struct CurveTrivialization {
    curve: Curve,
    units: Multiplicative,
}

impl CurveTrivialization {
    pub fn new(curve: Curve) -> Self {
        CurveTrivialization {
            units: Multiplicative::new(curve.field_arc()),
            curve,
        }
    }

    fn principal(&self, d: &Divisor) -> bool {
        d.sum(&self.curve).is_infinity()
    }
}

fn triv_err(e: CurveError) -> BiextError {
    BiextError::Trivialization(e.to_string())
}

impl Trivialization<Divisor, Divisor> for CurveTrivialization {
    type N = Multiplicative;

    fn coefficients(&self) -> &Multiplicative {
        &self.units
    }

    fn psi(&self, a: &Divisor, b: &Divisor) -> Result<u32, BiextError> {
        let c = &self.curve;
        if self.principal(a) {
            let f = function_with_divisor(c, a).map_err(triv_err)?;
            return evaluate_at_divisor(c, &f, b).map_err(triv_err);
        }
        if self.principal(b) {
            let g = function_with_divisor(c, b).map_err(triv_err)?;
            return evaluate_at_divisor(c, &g, a).map_err(triv_err);
        }
        Err(BiextError::NotInS("neither divisor is principal".into()))
    }
}

pub type PeBiextension = Biextension<CurveBisubgroup, CurveTrivialization>;

/// The biextension of `Pic⁰ × Pic⁰` by `F_q^*` defined by evaluating
/// functions on divisors with disjoint support.
pub fn pe_biextension(c: &Curve, audit: &AuditConfig) -> Result<PeBiextension, CurveError> {
    Ok(Biextension::build(
        CurveBisubgroup::new(c.clone()),
        CurveTrivialization::new(c.clone()),
        audit,
    )?)
}

/// Checks `lP = lQ = O` and that all `l²` points of `E[l]` are rational.
pub fn check_full_torsion(c: &Curve, p: &Point, q: &Point, l: u32) -> Result<(), CurveError> {
    c.check_point(p)?;
    c.check_point(q)?;
    if !c.is_elliptic() {
        return Err(CurveError::InvalidCurve("Weil pairing needs an elliptic curve".into()));
    }
    if l == 0 {
        return Err(CurveError::TorsionPrecondition("l must be positive".into()));
    }
    for pt in [p, q] {
        if !c.mul(pt, l as i64).is_infinity() {
            return Err(CurveError::TorsionPrecondition(format!(
                "{} is not {l}-torsion",
                c.format_point(pt)
            )));
        }
    }
    let n = c.torsion(l).len() as u64;
    if n != (l as u64) * (l as u64) {
        return Err(CurveError::TorsionPrecondition(format!(
            "only {n} of the {} points of E[{l}] are rational",
            l * l
        )));
    }
    Ok(())
}

/// Divisors `Z ~ (P) − (O)`, `W ~ (Q) − (O)` with disjoint supports.
pub fn disjoint_representatives(
    c: &Curve,
    p: &Point,
    q: &Point,
    rng: &mut SeededRng,
) -> Result<(Divisor, Divisor), CurveError> {
    for _ in 0..REPAIR_ATTEMPTS {
        let (r1, r2) = (c.random_point(rng), c.random_point(rng));
        let z = Divisor::from_terms([(c.add(p, &r1), 1), (r1, -1)]);
        let w = Divisor::from_terms([(c.add(q, &r2), 1), (r2, -1)]);
        if z.disjoint(&w) {
            return Ok((z, w));
        }
    }
    Err(CurveError::DisjointnessRepair(REPAIR_ATTEMPTS))
}

/// The Weil pairing `e_l(P, Q) = f(W) / g(Z)` with `div f = lZ`, `div g = lW`,
/// computed as `ψ(lZ, W) − ψ(Z, lW)` in the curve biextension.
pub fn weil_pairing_points(
    c: &Curve,
    p: &Point,
    q: &Point,
    l: u32,
    rng: &mut SeededRng,
) -> Result<u32, CurveError> {
    check_full_torsion(c, p, q, l)?;
    let bx = Biextension::unchecked(
        CurveBisubgroup::new(c.clone()),
        CurveTrivialization::new(c.clone()),
        rng.gen(),
    );
    let (z, w) = disjoint_representatives(c, p, q, rng)?;
    Ok(bx.weil_pairing(&z, &w, l)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::FiniteField;
    use rand::SeedableRng;
    use std::sync::Arc;

    fn line7() -> Curve {
        Curve::projective_line(Arc::new(FiniteField::prime(7).unwrap()))
    }

    fn pt(x: u32) -> Point {
        Point::affine(x, 0)
    }

    #[test]
    fn evaluation_on_the_line() {
        let c = line7();
        let f = c.field();
        let g = FunctionProgram::linear(f, 1, 0, 0).unwrap().div(f, &FunctionProgram::x_minus(f, 2));
        let d = Divisor::from_terms([(pt(1), 1), (pt(3), -1)]);
        assert_eq!(evaluate_at_divisor(&c, &g, &d).unwrap(), 2);
        let k = FunctionProgram::constant(5).unwrap();
        assert_eq!(evaluate_at_divisor(&c, &k, &d).unwrap(), 1);
        assert_eq!(evaluate_at_divisor(&c, &g.scaled(f, 3).unwrap(), &d).unwrap(), 2);
        let bad = Divisor::from_terms([(pt(2), 1), (pt(3), -1)]);
        assert_eq!(
            evaluate_at_divisor(&c, &g, &bad),
            Err(CurveError::SupportCollision("(2)".into()))
        );
    }

    #[test]
    fn reciprocity_on_the_line() {
        let c = line7();
        let f = c.field();
        let a = FunctionProgram::linear(f, 1, 0, 0).unwrap().div(f, &FunctionProgram::x_minus(f, 2));
        let b = FunctionProgram::x_minus(f, 1).div(f, &FunctionProgram::x_minus(f, 3));
        let r = weil_reciprocity_check(&c, &a, &b).unwrap();
        assert_eq!((r.lhs, r.rhs, r.equal), (2, 2, true));
        let k = FunctionProgram::constant(4).unwrap();
        let r = weil_reciprocity_check(&c, &a, &k).unwrap();
        assert_eq!((r.lhs, r.rhs), (1, 1));
        assert!(weil_reciprocity_check(&c, &a, &a).is_err());
    }

    #[test]
    fn tame_symbols_on_the_line() {
        let c = line7();
        let f = c.field();
        let x = FunctionProgram::linear(f, 1, 0, 0).unwrap();
        assert_eq!(tame_symbol(&c, &x, &x, &pt(0)).unwrap(), 6);
        let one_minus_x = x.one_minus(f).unwrap();
        assert_eq!(tame_symbol(&c, &x, &one_minus_x, &pt(0)).unwrap(), 1);
        let u = FunctionProgram::x_minus(f, 5);
        assert_eq!(tame_symbol(&c, &u, &one_minus_x, &pt(3)).unwrap(), 1);
        let x1 = FunctionProgram::x_minus(f, 1);
        assert_eq!(tame_symbol(&c, &x, &x1, &pt(0)).unwrap(), 6);
        assert_eq!(tame_symbol(&c, &x, &x1, &pt(1)).unwrap(), 1);
        assert_eq!(tame_symbol(&c, &x, &x1, &Point::Infinity).unwrap(), 6);
        assert_eq!(tame_reciprocity(&c, &x, &x1).unwrap(), 1);
        assert_eq!(tame_reciprocity(&c, &FunctionProgram::constant(3).unwrap(), &x1).unwrap(), 1);
    }

    #[test]
    fn psi_on_the_line() {
        let c = line7();
        let bx = pe_biextension(&c, &AuditConfig::default()).unwrap();
        let z = Divisor::from_terms([(pt(0), 1), (Point::Infinity, -1)]);
        let w = Divisor::from_terms([(pt(1), 1), (pt(3), -1)]);
        // div(x) = (0) − (∞), and x(1)/x(3) = 3⁻¹ = 5.
        assert_eq!(bx.psi(&z, &w).unwrap(), 5);
        assert_eq!(bx.psi(&Divisor::zero(), &w).unwrap(), 1);
    }

    #[test]
    fn zprime_is_degree_zero() {
        let c = line7();
        assert!(is_in_zprime(&c, &Divisor::from_terms([(pt(1), 1), (pt(2), -1)])));
        assert!(!is_in_zprime(&c, &Divisor::point(pt(1))));
        assert!(is_in_zprime(&c, &Divisor::from_terms([(pt(1), 3), (pt(2), -2), (pt(4), -1)])));
    }

    #[test]
    fn forced_two_torsion_value() {
        let c = Curve::elliptic(Arc::new(FiniteField::prime(7).unwrap()), 6, 0).unwrap();
        let mut rng = SeededRng::seed_from_u64(0);
        let (p, q) = (Point::affine(0, 0), Point::affine(1, 0));
        assert_eq!(weil_pairing_points(&c, &p, &q, 2, &mut rng).unwrap(), 6);
        assert_eq!(weil_pairing_points(&c, &p, &p, 2, &mut rng).unwrap(), 1);
        let r = Point::affine(5, 1);
        assert!(c.contains(&r));
        assert!(matches!(
            weil_pairing_points(&c, &p, &r, 2, &mut rng),
            Err(CurveError::TorsionPrecondition(_))
        ));
    }
}
