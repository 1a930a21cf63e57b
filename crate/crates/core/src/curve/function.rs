use std::collections::BTreeMap;

use super::field::FiniteField;
use super::poly;
use super::{Curve, CurveError, CurveKind, Divisor, Point};

/// `a·x + b·y + c`, scaled so the first nonzero of `(b, a)` is 1.
///
/// Forms with `a = b = 0` are constants and never stored as factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl LinearForm {
    /// Splits `a·x + b·y + c` into a scalar and a normalized form.
    fn normalize(f: &FiniteField, a: u32, b: u32, c: u32) -> Option<(u32, LinearForm)> {
        let lead = if b != 0 {
            b
        } else if a != 0 {
            a
        } else {
            return None;
        };
        let inv = f.inv(lead).expect("nonzero");
        Some((
            lead,
            LinearForm {
                a: f.mul(a, inv),
                b: f.mul(b, inv),
                c: f.mul(c, inv),
            },
        ))
    }

    pub fn eval(&self, f: &FiniteField, x: u32, y: u32) -> u32 {
        f.add(f.add(f.mul(self.a, x), f.mul(self.b, y)), self.c)
    }

    /// Order of vanishing and leading coefficient at `p` in the standard
    /// local parameter: `x − x₀` at points with `y₀ ≠ 0` (and on ℙ¹),
    /// `y` at points with `y₀ = 0`, `x/y` at `O`, `1/x` at `∞` on ℙ¹.
    fn local(&self, c: &Curve, p: &Point) -> Result<(i64, u32), CurveError> {
        let f = c.field();
        match (c.kind(), *p) {
            (CurveKind::ProjectiveLine, Point::Infinity) => {
                Ok(if self.a != 0 { (-1, self.a) } else { (0, self.c) })
            }
            (CurveKind::ProjectiveLine, Point::Affine { x, .. }) => {
                let v = self.eval(f, x, 0);
                Ok(if v != 0 { (0, v) } else { (1, self.a) })
            }
            (CurveKind::Elliptic { .. }, Point::Infinity) => Ok(if self.b != 0 {
                (-3, self.b)
            } else if self.a != 0 {
                (-2, self.a)
            } else {
                (0, self.c)
            }),
            (CurveKind::Elliptic { .. }, Point::Affine { x, y }) => {
                let v = self.eval(f, x, y);
                if v != 0 {
                    return Ok((0, v));
                }
                let fp = c.rhs_derivative(x);
                if y == 0 {
                    return Ok(if self.b != 0 {
                        (1, self.b)
                    } else {
                        (2, f.div(self.a, fp).expect("smooth curve"))
                    });
                }
                // y = y0 + y1 t + y2 t² + y3 t³ + … with t = x − x0.
                let two_y = f.add(y, y);
                let y1 = f.div(fp, two_y).expect("y ≠ 0");
                let y2 = f.div(f.sub(f.mul(f.from_int(3), x), f.mul(y1, y1)), two_y).expect("y ≠ 0");
                let y3 = f
                    .div(f.sub(1, f.mul(f.from_int(2), f.mul(y1, y2))), two_y)
                    .expect("y ≠ 0");
                let series = [f.add(self.a, f.mul(self.b, y1)), f.mul(self.b, y2), f.mul(self.b, y3)];
                series
                    .iter()
                    .position(|&s| s != 0)
                    .map(|i| (i as i64 + 1, series[i]))
                    .ok_or_else(|| {
                        CurveError::Indeterminate(format!(
                            "{self:?} vanishes to order > 3 at {}",
                            c.format_point(p)
                        ))
                    })
            }
        }
    }

    fn divisor(&self, c: &Curve) -> Result<Divisor, CurveError> {
        let f = c.field();
        match c.kind() {
            CurveKind::ProjectiveLine => {
                if self.b != 0 {
                    return Err(CurveError::InvalidCurve("y does not occur on the projective line".into()));
                }
                let root = f.neg(self.c);
                Ok(Divisor::from_terms([(Point::affine(root, 0), 1), (Point::Infinity, -1)]))
            }
            CurveKind::Elliptic { a: ca, b: cb } => {
                if self.b == 0 {
                    let x0 = f.neg(self.c);
                    let r = c.rhs(x0);
                    if r == 0 {
                        return Ok(Divisor::from_terms([(Point::affine(x0, 0), 2), (Point::Infinity, -2)]));
                    }
                    let y0 = f.sqrt(r).ok_or_else(|| {
                        CurveError::NonRationalPlace(format!("x = {} has y outside the field", f.format(x0)))
                    })?;
                    return Ok(Divisor::from_terms([
                        (Point::affine(x0, y0), 1),
                        (Point::affine(x0, f.neg(y0)), 1),
                        (Point::Infinity, -2),
                    ]));
                }
                // On the line y = m x + n: x³ + A x + B − (m x + n)² = 0.
                let (m, n) = (f.neg(self.a), f.neg(self.c));
                let cubic = vec![
                    f.sub(cb, f.mul(n, n)),
                    f.sub(ca, f.mul(f.from_int(2), f.mul(m, n))),
                    f.neg(f.mul(m, m)),
                    1,
                ];
                let mut d = Divisor::from_terms([(Point::Infinity, -3)]);
                let mut total = 0;
                for r in poly::roots(f, &cubic) {
                    let p = Point::affine(r, f.add(f.mul(m, r), n));
                    let (k, _) = self.local(c, &p)?;
                    total += k;
                    d.add_term(p, k);
                }
                if total != 3 {
                    return Err(CurveError::NonRationalPlace(format!(
                        "line {self:?} meets the curve outside the field"
                    )));
                }
                Ok(d)
            }
        }
    }
}

/// A rational function `c · Π L_i^{e_i}` with linear forms `L_i`.
///
/// Zeros, poles and leading coefficients are read from the factors, so no
/// power series or field extension is needed beyond root finding.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FunctionProgram {
    constant: u32,
    factors: BTreeMap<LinearForm, i64>,
}

impl FunctionProgram {
    pub fn one() -> Self {
        FunctionProgram {
            constant: 1,
            factors: BTreeMap::new(),
        }
    }

    pub fn constant(c: u32) -> Result<Self, CurveError> {
        if c == 0 {
            return Err(CurveError::Indeterminate("the zero function has no divisor".into()));
        }
        Ok(FunctionProgram {
            constant: c,
            factors: BTreeMap::new(),
        })
    }

    /// `a·x + b·y + c`; a nonzero constant when `a = b = 0`.
    pub fn linear(f: &FiniteField, a: u32, b: u32, c: u32) -> Result<Self, CurveError> {
        Self::one().times_form(f, a, b, c, 1)
    }

    /// `x − c`.
    pub fn x_minus(f: &FiniteField, c: u32) -> Self {
        Self::linear(f, 1, 0, f.neg(c)).expect("nonconstant")
    }

    /// Multiplies by `(a·x + b·y + c)^e`.
    pub fn times_form(mut self, f: &FiniteField, a: u32, b: u32, c: u32, e: i64) -> Result<Self, CurveError> {
        match LinearForm::normalize(f, a, b, c) {
            None => {
                let v = f.pow(c, e).ok_or_else(|| {
                    CurveError::Indeterminate("zero constant factor".into())
                })?;
                if v == 0 {
                    return Err(CurveError::Indeterminate("zero constant factor".into()));
                }
                self.constant = f.mul(self.constant, v);
            }
            Some((scale, form)) => {
                self.constant = f.mul(self.constant, f.pow(scale, e).expect("nonzero"));
                let entry = self.factors.entry(form).or_insert(0);
                *entry += e;
                if *entry == 0 {
                    self.factors.remove(&form);
                }
            }
        }
        Ok(self)
    }

    pub fn constant_term(&self) -> u32 {
        self.constant
    }

    pub fn factors(&self) -> impl Iterator<Item = (&LinearForm, &i64)> {
        self.factors.iter()
    }

    pub fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn mul(&self, f: &FiniteField, other: &FunctionProgram) -> FunctionProgram {
        let mut out = self.clone();
        out.constant = f.mul(out.constant, other.constant);
        for (form, e) in &other.factors {
            let entry = out.factors.entry(*form).or_insert(0);
            *entry += e;
            if *entry == 0 {
                out.factors.remove(form);
            }
        }
        out
    }

    pub fn pow(&self, f: &FiniteField, k: i64) -> FunctionProgram {
        if k == 0 {
            return FunctionProgram::one();
        }
        FunctionProgram {
            constant: f.pow(self.constant, k).expect("nonzero constant"),
            factors: self.factors.iter().map(|(l, e)| (*l, e * k)).collect(),
        }
    }

    pub fn inv(&self, f: &FiniteField) -> FunctionProgram {
        self.pow(f, -1)
    }

    pub fn div(&self, f: &FiniteField, other: &FunctionProgram) -> FunctionProgram {
        self.mul(f, &other.inv(f))
    }

    pub fn scaled(&self, f: &FiniteField, c: u32) -> Result<FunctionProgram, CurveError> {
        Ok(self.mul(f, &FunctionProgram::constant(c)?))
    }

    /// `1 − f` when `f` is a constant times a single linear form (or a constant ≠ 1).
    pub fn one_minus(&self, f: &FiniteField) -> Option<FunctionProgram> {
        let k = self.constant;
        match self.factors.iter().collect::<Vec<_>>().as_slice() {
            [] => FunctionProgram::constant(f.sub(1, k)).ok(),
            [(l, 1)] => FunctionProgram::linear(
                f,
                f.neg(f.mul(k, l.a)),
                f.neg(f.mul(k, l.b)),
                f.sub(1, f.mul(k, l.c)),
            )
            .ok(),
            _ => None,
        }
    }

    /// Rejects forms involving `y` on the projective line.
    pub fn check_on(&self, c: &Curve) -> Result<(), CurveError> {
        if c.kind() == CurveKind::ProjectiveLine && self.factors.keys().any(|l| l.b != 0) {
            return Err(CurveError::InvalidCurve("y does not occur on the projective line".into()));
        }
        Ok(())
    }

    /// The principal divisor, read off factor by factor.
    pub fn divisor(&self, c: &Curve) -> Result<Divisor, CurveError> {
        self.check_on(c)?;
        let mut d = Divisor::zero();
        for (form, e) in &self.factors {
            d = d.plus(&form.divisor(c)?.scaled(*e));
        }
        Ok(d)
    }

    /// Valuation at `p` and the leading coefficient in the standard local parameter.
    pub fn local(&self, c: &Curve, p: &Point) -> Result<(i64, u32), CurveError> {
        self.check_on(c)?;
        let f = c.field();
        let mut order = 0;
        let mut lead = self.constant;
        for (form, e) in &self.factors {
            let (k, l) = form.local(c, p)?;
            order += k * e;
            lead = f.mul(lead, f.pow(l, *e).expect("leading coefficients are nonzero"));
        }
        Ok((order, lead))
    }

    pub fn valuation(&self, c: &Curve, p: &Point) -> Result<i64, CurveError> {
        Ok(self.local(c, p)?.0)
    }

    /// `f(p)`, which must be neither a zero nor a pole.
    pub fn value_at(&self, c: &Curve, p: &Point) -> Result<u32, CurveError> {
        let (k, v) = self.local(c, p)?;
        if k != 0 {
            return Err(CurveError::SupportCollision(c.format_point(p)));
        }
        Ok(v)
    }

    pub fn format(&self, f: &FiniteField) -> String {
        let mut s = f.format(self.constant);
        for (l, e) in &self.factors {
            s.push_str(&format!(
                " · ({}x + {}y + {})^{e}",
                f.format(l.a),
                f.format(l.b),
                f.format(l.c)
            ));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn p1(p: u32) -> Curve {
        Curve::projective_line(Arc::new(FiniteField::prime(p).unwrap()))
    }

    #[test]
    fn divisors_on_the_line() {
        let c = p1(7);
        let f = c.field();
        let x = FunctionProgram::linear(f, 1, 0, 0).unwrap();
        let d = x.divisor(&c).unwrap();
        assert_eq!(d, Divisor::from_terms([(Point::affine(0, 0), 1), (Point::Infinity, -1)]));
        let g = x.div(f, &FunctionProgram::x_minus(f, 2));
        let d = g.divisor(&c).unwrap();
        assert_eq!(d, Divisor::from_terms([(Point::affine(0, 0), 1), (Point::affine(2, 0), -1)]));
        assert_eq!(g.value_at(&c, &Point::affine(1, 0)).unwrap(), f.from_int(-1));
        assert_eq!(g.local(&c, &Point::Infinity).unwrap(), (0, 1));
    }

    #[test]
    fn divisor_of_x_on_an_elliptic_curve() {
        // y² = x³ − x: x vanishes doubly at the 2-torsion point (0, 0).
        let c = Curve::elliptic(Arc::new(FiniteField::prime(7).unwrap()), 6, 0).unwrap();
        let x = FunctionProgram::linear(c.field(), 1, 0, 0).unwrap();
        assert_eq!(
            x.divisor(&c).unwrap(),
            Divisor::from_terms([(Point::affine(0, 0), 2), (Point::Infinity, -2)])
        );
        let y = FunctionProgram::linear(c.field(), 0, 1, 0).unwrap();
        let d = y.divisor(&c).unwrap();
        assert_eq!(d.degree(), 0);
        assert_eq!(d.multiplicity(&Point::Infinity), -3);
        for p in [Point::affine(0, 0), Point::affine(1, 0), Point::affine(6, 0)] {
            assert_eq!(d.multiplicity(&p), 1);
        }
    }

    #[test]
    fn tangent_lines_have_double_zeros() {
        let c = Curve::elliptic(Arc::new(FiniteField::prime(13).unwrap()), 0, 3).unwrap();
        let f = c.field();
        for p in c.points() {
            let Point::Affine { x, y } = p else { continue };
            if y == 0 {
                continue;
            }
            let lambda = f.div(c.rhs_derivative(x), f.add(y, y)).unwrap();
            // y − y0 − λ(x − x0)
            let t = FunctionProgram::linear(f, f.neg(lambda), 1, f.sub(f.mul(lambda, x), y)).unwrap();
            let d = t.divisor(&c).unwrap();
            assert!(d.multiplicity(&p) >= 2);
            assert_eq!(d.degree(), 0);
            assert_eq!(d.sum(&c), Point::Infinity);
        }
    }
}
