//! Divisors and rational functions on the projective line and on elliptic
//! curves `y² = x³ + ax + b` over an explicit finite field.
//!
//! All points are rational over the working field. A place that is not
//! (a root outside the field) is reported as [`CurveError::NonRationalPlace`]
//! so the caller can enlarge the field.

mod divisor;
pub mod field;
mod function;
pub mod json;
mod miller;
mod oracle;
mod pairing;
pub mod sample;
pub(crate) mod poly;

use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::biext::BiextError;
use crate::group::AbGroup;
use crate::SeededRng;

pub use divisor::{Divisor, DivisorGroup};
pub use field::FiniteField;
pub use function::{FunctionProgram, LinearForm};
pub use miller::function_with_divisor;
pub use oracle::weil_pairing_oracle;
pub use pairing::{
    evaluate_at_divisor, is_in_zprime, pe_biextension, tame_reciprocity, tame_symbol,
    weil_pairing_points, weil_reciprocity_check, CurveBisubgroup, CurveTrivialization, PeBiextension,
    Reciprocity, check_full_torsion, disjoint_representatives,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("point {0} is not on the curve")]
    NotOnCurve(String),
    #[error("divisor has degree {0}, expected 0")]
    DegreeNotZero(i64),
    #[error("divisor is not principal: its points sum to {0}")]
    NotPrincipal(String),
    #[error("supports collide at {0}")]
    SupportCollision(String),
    #[error("place not rational over the working field ({0}); extend the field")]
    NonRationalPlace(String),
    #[error("indeterminate value: {0}")]
    Indeterminate(String),
    #[error("torsion precondition fails: {0}")]
    TorsionPrecondition(String),
    #[error("disjointness repair failed after {0} attempts")]
    DisjointnessRepair(usize),
    #[error(transparent)]
    Biext(#[from] BiextError),
}

/// A rational point. On the projective line `y` is always 0 and
/// `Infinity` is the point `∞`; on an elliptic curve it is the origin `O`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Infinity,
    Affine { x: u32, y: u32 },
}

impl Point {
    pub fn affine(x: u32, y: u32) -> Point {
        Point::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveKind {
    ProjectiveLine,
    /// `y² = x³ + a·x + b`.
    Elliptic { a: u32, b: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    field: Arc<FiniteField>,
    kind: CurveKind,
}

/// Number of random draws before giving up on disjointness repair.
pub const REPAIR_ATTEMPTS: usize = 64;

impl Curve {
    pub fn projective_line(field: Arc<FiniteField>) -> Curve {
        Curve {
            field,
            kind: CurveKind::ProjectiveLine,
        }
    }

    /// Requires characteristic at least 5 and `4a³ + 27b² ≠ 0`.
    pub fn elliptic(field: Arc<FiniteField>, a: u32, b: u32) -> Result<Curve, CurveError> {
        if field.characteristic() < 5 {
            return Err(CurveError::InvalidCurve(
                "short Weierstrass form needs characteristic at least 5".into(),
            ));
        }
        if !field.contains(a) || !field.contains(b) {
            return Err(CurveError::InvalidCurve("coefficient outside the field".into()));
        }
        let f = &*field;
        let a3 = f.mul(f.mul(a, a), a);
        let disc = f.add(f.mul(f.from_int(4), a3), f.mul(f.from_int(27), f.mul(b, b)));
        if disc == 0 {
            return Err(CurveError::InvalidCurve("discriminant 4a³ + 27b² vanishes".into()));
        }
        Ok(Curve {
            field,
            kind: CurveKind::Elliptic { a, b },
        })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn field_arc(&self) -> Arc<FiniteField> {
        self.field.clone()
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn is_elliptic(&self) -> bool {
        matches!(self.kind, CurveKind::Elliptic { .. })
    }

    /// `x³ + ax + b` at `x` (elliptic curves only).
    pub(crate) fn rhs(&self, x: u32) -> u32 {
        let f = &*self.field;
        match self.kind {
            CurveKind::Elliptic { a, b } => f.add(f.add(f.mul(f.mul(x, x), x), f.mul(a, x)), b),
            CurveKind::ProjectiveLine => 0,
        }
    }

    /// `3x² + a`, the derivative of the right-hand side.
    pub(crate) fn rhs_derivative(&self, x: u32) -> u32 {
        let f = &*self.field;
        match self.kind {
            CurveKind::Elliptic { a, .. } => f.add(f.mul(f.from_int(3), f.mul(x, x)), a),
            CurveKind::ProjectiveLine => 1,
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        match (*p, self.kind) {
            (Point::Infinity, _) => true,
            (Point::Affine { x, y }, CurveKind::ProjectiveLine) => self.field.contains(x) && y == 0,
            (Point::Affine { x, y }, CurveKind::Elliptic { .. }) => {
                let f = &*self.field;
                f.contains(x) && f.contains(y) && f.mul(y, y) == self.rhs(x)
            }
        }
    }

    pub fn check_point(&self, p: &Point) -> Result<(), CurveError> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(CurveError::NotOnCurve(self.format_point(p)))
        }
    }

    /// All rational points, `Infinity` first, then by `(x, y)`.
    pub fn points(&self) -> Vec<Point> {
        let f = &*self.field;
        let mut out = vec![Point::Infinity];
        for x in f.elements() {
            match self.kind {
                CurveKind::ProjectiveLine => out.push(Point::affine(x, 0)),
                CurveKind::Elliptic { .. } => {
                    let r = self.rhs(x);
                    if let Some(y) = f.sqrt(r) {
                        let mut ys = vec![y, f.neg(y)];
                        ys.sort_unstable();
                        ys.dedup();
                        out.extend(ys.into_iter().map(|y| Point::affine(x, y)));
                    }
                }
            }
        }
        out
    }

    pub fn random_point(&self, rng: &mut SeededRng) -> Point {
        let f = &*self.field;
        loop {
            let x = rng.gen_range(0..f.order());
            match self.kind {
                CurveKind::ProjectiveLine => {
                    // ∞ with the same weight as any finite point.
                    if rng.gen_range(0..=f.order()) == 0 {
                        return Point::Infinity;
                    }
                    return Point::affine(x, 0);
                }
                CurveKind::Elliptic { .. } => {
                    if let Some(y) = f.sqrt(self.rhs(x)) {
                        let y = if rng.gen::<bool>() { y } else { f.neg(y) };
                        return Point::affine(x, y);
                    }
                }
            }
        }
    }

    /// Group negation. The projective line has no group law; there every
    /// point is treated as the class of zero.
    pub fn neg(&self, p: &Point) -> Point {
        match *p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::affine(x, self.field.neg(y)),
        }
    }

    /// Chord-and-tangent addition on an elliptic curve.
    pub fn add(&self, p: &Point, q: &Point) -> Point {
        let CurveKind::Elliptic { a, .. } = self.kind else {
            return Point::Infinity;
        };
        let f = &*self.field;
        match (*p, *q) {
            (Point::Infinity, _) => *q,
            (_, Point::Infinity) => *p,
            (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) => {
                let lambda = if x1 == x2 {
                    if f.add(y1, y2) == 0 {
                        return Point::Infinity;
                    }
                    let num = f.add(f.mul(f.from_int(3), f.mul(x1, x1)), a);
                    f.div(num, f.add(y1, y1)).expect("y ≠ 0")
                } else {
                    f.div(f.sub(y2, y1), f.sub(x2, x1)).expect("x1 ≠ x2")
                };
                let x3 = f.sub(f.sub(f.mul(lambda, lambda), x1), x2);
                let y3 = f.sub(f.mul(lambda, f.sub(x1, x3)), y1);
                Point::affine(x3, y3)
            }
        }
    }

    pub fn sub(&self, p: &Point, q: &Point) -> Point {
        self.add(p, &self.neg(q))
    }

    pub fn mul(&self, p: &Point, k: i64) -> Point {
        let mut base = if k < 0 { self.neg(p) } else { *p };
        let mut n = k.unsigned_abs();
        let mut acc = Point::Infinity;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// All points `P` with `l·P = O`.
    pub fn torsion(&self, l: u32) -> Vec<Point> {
        self.points()
            .into_iter()
            .filter(|p| self.mul(p, l as i64).is_infinity())
            .collect()
    }

    pub fn format_point(&self, p: &Point) -> String {
        match *p {
            Point::Infinity => match self.kind {
                CurveKind::ProjectiveLine => "∞".into(),
                CurveKind::Elliptic { .. } => "O".into(),
            },
            Point::Affine { x, y } => match self.kind {
                CurveKind::ProjectiveLine => format!("({})", self.field.format(x)),
                CurveKind::Elliptic { .. } => {
                    format!("({}, {})", self.field.format(x), self.field.format(y))
                }
            },
        }
    }
}

/// `Pic⁰` of the curve: the point group of an elliptic curve (a divisor
/// class is represented by the sum of its points) or the trivial group on ℙ¹.
#[derive(Clone, Debug)]
pub struct ClassGroup {
    curve: Curve,
}

impl ClassGroup {
    pub fn new(curve: Curve) -> Self {
        ClassGroup { curve }
    }
}

impl AbGroup for ClassGroup {
    type Elem = Point;

    fn zero(&self) -> Point {
        Point::Infinity
    }

    fn add(&self, x: &Point, y: &Point) -> Point {
        self.curve.add(x, y)
    }

    fn neg(&self, x: &Point) -> Point {
        if self.curve.is_elliptic() {
            self.curve.neg(x)
        } else {
            Point::Infinity
        }
    }

    fn same(&self, x: &Point, y: &Point) -> bool {
        !self.curve.is_elliptic() || x == y
    }
}

/// `F_q^*`, written additively so it can serve as the coefficient group of a biextension.
#[derive(Clone, Debug)]
pub struct Multiplicative {
    field: Arc<FiniteField>,
}

impl Multiplicative {
    pub fn new(field: Arc<FiniteField>) -> Self {
        Multiplicative { field }
    }
}

impl AbGroup for Multiplicative {
    type Elem = u32;

    fn zero(&self) -> u32 {
        1
    }

    fn add(&self, x: &u32, y: &u32) -> u32 {
        self.field.mul(*x, *y)
    }

    fn neg(&self, x: &u32) -> u32 {
        self.field.inv(*x).expect("units only")
    }

    fn same(&self, x: &u32, y: &u32) -> bool {
        x == y
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> Arc<FiniteField> {
        Arc::new(FiniteField::prime(7).unwrap())
    }

    #[test]
    fn point_counts() {
        // y² = x³ − x over F_7 has 8 points, group (Z/2)×(Z/4).
        let e = Curve::elliptic(f7(), 6, 0).unwrap();
        assert_eq!(e.points().len(), 8);
        assert_eq!(e.torsion(2).len(), 4);
        // y² = x³ + 2 over F_7 has full rational 3-torsion.
        let e = Curve::elliptic(f7(), 0, 2).unwrap();
        assert_eq!(e.points().len(), 9);
        assert_eq!(e.torsion(3).len(), 9);
        assert_eq!(Curve::projective_line(f7()).points().len(), 8);
    }

    #[test]
    fn group_law() {
        let e = Curve::elliptic(f7(), 6, 0).unwrap();
        let pts = e.points();
        for p in &pts {
            assert!(e.add(p, &e.neg(p)).is_infinity());
            assert!(e.mul(p, 8).is_infinity());
            for q in &pts {
                let s = e.add(p, q);
                assert!(e.contains(&s));
                assert_eq!(s, e.add(q, p));
                for r in &pts {
                    assert_eq!(e.add(&s, r), e.add(p, &e.add(q, r)));
                }
            }
        }
    }

    #[test]
    fn singular_curve_rejected() {
        assert!(matches!(Curve::elliptic(f7(), 0, 0), Err(CurveError::InvalidCurve(_))));
        let f3 = Arc::new(FiniteField::prime(3).unwrap());
        assert!(Curve::elliptic(f3, 1, 1).is_err());
    }
}
