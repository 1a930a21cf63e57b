//! A second, self-contained Weil pairing: Miller's loop evaluated directly
//! at points, without divisors, function programs or biextensions.

use super::{Curve, CurveError, Point, REPAIR_ATTEMPTS};
use crate::SeededRng;

/// Value at `r` of `ℓ_{S1,S2} / v_{S1+S2}`, or `None` at a zero or pole.
fn line_ratio(c: &Curve, s1: &Point, s2: &Point, r: &Point) -> Option<u32> {
    let f = c.field();
    let Point::Affine { x: xr, y: yr } = *r else {
        return None;
    };
    let (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) = (*s1, *s2) else {
        return Some(1);
    };
    if x1 == x2 && f.add(y1, y2) == 0 {
        let v = f.sub(xr, x1);
        return (v != 0).then_some(v);
    }
    let lambda = if x1 == x2 {
        f.div(c.rhs_derivative(x1), f.add(y1, y1))?
    } else {
        f.div(f.sub(y2, y1), f.sub(x2, x1))?
    };
    let num = f.sub(f.sub(yr, y1), f.mul(lambda, f.sub(xr, x1)));
    let Point::Affine { x: x3, .. } = c.add(s1, s2) else {
        unreachable!("sum is finite when the chord is not vertical")
    };
    let den = f.sub(xr, x3);
    if num == 0 || den == 0 {
        return None;
    }
    f.div(num, den)
}

/// `f_{l,P}(r)` with `div f_{l,P} = l(P) − (lP) − (l−1)(O)`.
fn miller(c: &Curve, p: &Point, l: u32, r: &Point) -> Option<u32> {
    let f = c.field();
    let mut t = *p;
    let mut acc = 1u32;
    let bits = 32 - l.leading_zeros();
    for i in (0..bits - 1).rev() {
        acc = f.mul(f.mul(acc, acc), line_ratio(c, &t, &t, r)?);
        t = c.add(&t, &t);
        if (l >> i) & 1 == 1 {
            acc = f.mul(acc, line_ratio(c, &t, p, r)?);
            t = c.add(&t, p);
        }
    }
    Some(acc)
}

/// `e_l(P, Q) = [f_P(Q+S) / f_P(S)] / [f_Q(P−S) / f_Q(−S)]` for a random
/// auxiliary point `S`, retried whenever an evaluation hits a zero or pole.
pub fn weil_pairing_oracle(
    c: &Curve,
    p: &Point,
    q: &Point,
    l: u32,
    rng: &mut SeededRng,
) -> Result<u32, CurveError> {
    c.check_point(p)?;
    c.check_point(q)?;
    if !c.is_elliptic() {
        return Err(CurveError::InvalidCurve("Weil pairing needs an elliptic curve".into()));
    }
    if l == 0 || !c.mul(p, l as i64).is_infinity() || !c.mul(q, l as i64).is_infinity() {
        return Err(CurveError::TorsionPrecondition(format!("points are not {l}-torsion")));
    }
    if p.is_infinity() || q.is_infinity() {
        return Ok(1);
    }
    let f = c.field();
    for _ in 0..REPAIR_ATTEMPTS {
        let s = c.random_point(rng);
        let value = (|| {
            let fp_num = miller(c, p, l, &c.add(q, &s))?;
            let fp_den = miller(c, p, l, &s)?;
            let fq_num = miller(c, q, l, &c.sub(p, &s))?;
            let fq_den = miller(c, q, l, &c.neg(&s))?;
            let top = f.div(fp_num, fp_den)?;
            let bottom = f.div(fq_num, fq_den)?;
            f.div(top, bottom)
        })();
        if let Some(v) = value {
            return Ok(v);
        }
    }
    Err(CurveError::DisjointnessRepair(REPAIR_ATTEMPTS))
}
