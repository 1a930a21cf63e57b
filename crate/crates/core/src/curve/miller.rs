use super::{Curve, CurveError, CurveKind, Divisor, FunctionProgram, Point};

/// A function `F` and a point `S` standing for the divisor `div F + (S) − (O)`.
type Reduced = (FunctionProgram, Point);

/// `(ℓ/v)` with `div(ℓ/v) = (S1) + (S2) − (S1 + S2) − (O)`: the chord (or
/// tangent) through `S1`, `S2` over the vertical line at their sum.
fn chord_over_vertical(c: &Curve, s1: &Point, s2: &Point) -> FunctionProgram {
    let f = c.field();
    let (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, .. }) = (*s1, *s2) else {
        return FunctionProgram::one();
    };
    let sum = c.add(s1, s2);
    if sum.is_infinity() {
        return FunctionProgram::x_minus(f, x1);
    }
    let lambda = if x1 == x2 {
        f.div(c.rhs_derivative(x1), f.add(y1, y1)).expect("not 2-torsion")
    } else {
        let Point::Affine { y: y2, .. } = *s2 else { unreachable!() };
        f.div(f.sub(y2, y1), f.sub(x2, x1)).expect("distinct x")
    };
    // y − y1 − λ(x − x1)
    let line = FunctionProgram::linear(f, f.neg(lambda), 1, f.sub(f.mul(lambda, x1), y1))
        .expect("nonconstant line");
    let Point::Affine { x: x3, .. } = sum else { unreachable!() };
    line.div(f, &FunctionProgram::x_minus(f, x3))
}

fn combine(c: &Curve, u: &Reduced, v: &Reduced) -> Reduced {
    let f = c.field();
    let g = u.0.mul(f, &v.0).mul(f, &chord_over_vertical(c, &u.1, &v.1));
    (g, c.add(&u.1, &v.1))
}

fn negate(c: &Curve, u: &Reduced) -> Reduced {
    let f = c.field();
    // −(S) + (O) = (−S) − (O) − div(x − x_S).
    let g = match u.1 {
        Point::Infinity => u.0.inv(f),
        Point::Affine { x, .. } => u.0.inv(f).div(f, &FunctionProgram::x_minus(f, x)),
    };
    (g, c.neg(&u.1))
}

fn scale(c: &Curve, base: &Reduced, n: i64) -> Reduced {
    let mut acc: Reduced = (FunctionProgram::one(), Point::Infinity);
    let mut b = if n < 0 { negate(c, base) } else { base.clone() };
    let mut k = n.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            acc = combine(c, &acc, &b);
        }
        k >>= 1;
        if k > 0 {
            b = combine(c, &b, &b);
        }
    }
    acc
}

/// A function whose principal divisor is exactly `d`.
///
/// On an elliptic curve each term `n(P)` is rewritten as
/// `div F + (nP) − n(O)` by Miller's double-and-add, and the leftover
/// points are merged with chord-over-vertical quotients until only the
/// sum of `d` remains; that sum must be `O`.
pub fn function_with_divisor(c: &Curve, d: &Divisor) -> Result<FunctionProgram, CurveError> {
    d.check_on(c)?;
    if d.degree() != 0 {
        return Err(CurveError::DegreeNotZero(d.degree()));
    }
    let f = c.field();
    match c.kind() {
        CurveKind::ProjectiveLine => {
            let mut g = FunctionProgram::one();
            for (p, n) in d.terms() {
                if let Point::Affine { x, .. } = p {
                    g = g.mul(f, &FunctionProgram::x_minus(f, *x).pow(f, *n));
                }
            }
            Ok(g)
        }
        CurveKind::Elliptic { .. } => {
            let s = d.sum(c);
            if !s.is_infinity() {
                return Err(CurveError::NotPrincipal(c.format_point(&s)));
            }
            let mut acc: Reduced = (FunctionProgram::one(), Point::Infinity);
            for (p, n) in d.terms() {
                if p.is_infinity() {
                    continue;
                }
                let term = scale(c, &(FunctionProgram::one(), *p), *n);
                acc = combine(c, &acc, &term);
            }
            debug_assert!(acc.1.is_infinity());
            Ok(acc.0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::FiniteField;
    use std::sync::Arc;

    #[test]
    fn zero_divisor_gives_constant() {
        let c = Curve::elliptic(Arc::new(FiniteField::prime(7).unwrap()), 6, 0).unwrap();
        let g = function_with_divisor(&c, &Divisor::zero()).unwrap();
        assert!(g.is_constant());
    }

    #[test]
    fn doubled_two_torsion_point_is_x() {
        let c = Curve::elliptic(Arc::new(FiniteField::prime(7).unwrap()), 6, 0).unwrap();
        let d = Divisor::from_terms([(Point::affine(0, 0), 2), (Point::Infinity, -2)]);
        let g = function_with_divisor(&c, &d).unwrap();
        assert_eq!(g.divisor(&c).unwrap(), d);
        // g / x has trivial divisor, so it is constant on the curve.
        let x = FunctionProgram::linear(c.field(), 1, 0, 0).unwrap();
        let ratio = g.div(c.field(), &x);
        let vals: Vec<u32> = c
            .points()
            .iter()
            .filter(|p| ratio.valuation(&c, p).unwrap() == 0 && g.valuation(&c, p).unwrap() == 0)
            .filter_map(|p| ratio.value_at(&c, p).ok())
            .collect();
        assert!(vals.windows(2).all(|w| w[0] == w[1]), "{vals:?}");
    }

    #[test]
    fn non_principal_reports_obstruction() {
        let c = Curve::elliptic(Arc::new(FiniteField::prime(7).unwrap()), 6, 0).unwrap();
        let d = Divisor::from_terms([(Point::affine(0, 0), 1), (Point::Infinity, -1)]);
        match function_with_divisor(&c, &d) {
            Err(CurveError::NotPrincipal(s)) => assert_eq!(s, "(0, 0)"),
            other => panic!("{other:?}"),
        }
        let d = Divisor::point(Point::affine(0, 0));
        assert!(matches!(function_with_divisor(&c, &d), Err(CurveError::DegreeNotZero(1))));
    }

    #[test]
    fn line_coordinate() {
        let c = Curve::projective_line(Arc::new(FiniteField::prime(7).unwrap()));
        let d = Divisor::from_terms([(Point::affine(0, 0), 1), (Point::Infinity, -1)]);
        let g = function_with_divisor(&c, &d).unwrap();
        assert_eq!(g, FunctionProgram::linear(c.field(), 1, 0, 0).unwrap());
    }
}
