//! Random divisors and functions for property tests and self-checks.

use rand::Rng;

use super::{function_with_divisor, Curve, CurveError, Divisor, FunctionProgram};
use crate::SeededRng;

/// A degree-zero divisor on up to `terms` random points.
pub fn random_degree_zero(c: &Curve, terms: usize, rng: &mut SeededRng) -> Divisor {
    let mut d = Divisor::zero();
    let base = c.random_point(rng);
    for _ in 0..terms.max(1) {
        let n = rng.gen_range(1..=3) * if rng.gen::<bool>() { 1 } else { -1 };
        d.add_term(c.random_point(rng), n);
        d.add_term(base, -n);
    }
    d
}

/// A principal divisor: a degree-zero divisor with sum `S`, corrected by
/// `(S + R) − (R)` for a random point `R`.
pub fn random_principal(c: &Curve, terms: usize, rng: &mut SeededRng) -> Divisor {
    let d = random_degree_zero(c, terms, rng);
    let s = d.sum(c);
    let r = c.random_point(rng);
    d.minus(&Divisor::from_terms([(c.add(&s, &r), 1), (r, -1)]))
}

/// A random nonconstant function, built from a random principal divisor
/// on about `terms` points and a random nonzero constant.
pub fn random_function(c: &Curve, terms: usize, rng: &mut SeededRng) -> Result<FunctionProgram, CurveError> {
    loop {
        let d = random_principal(c, terms, rng);
        if d.is_zero() {
            continue;
        }
        let k = rng.gen_range(1..c.field().order());
        return function_with_divisor(c, &d)?.scaled(c.field(), k);
    }
}

const PAIR_ATTEMPTS: usize = 1024;

/// A pair of random functions whose divisors have disjoint supports.
pub fn random_disjoint_pair(
    c: &Curve,
    rng: &mut SeededRng,
) -> Result<(FunctionProgram, FunctionProgram), CurveError> {
    for _ in 0..PAIR_ATTEMPTS {
        let f = random_function(c, rng.gen_range(1..=2), rng)?;
        let g = random_function(c, rng.gen_range(1..=2), rng)?;
        if g.divisor(c)?.disjoint(&f.divisor(c)?) {
            return Ok((f, g));
        }
    }
    Err(CurveError::DisjointnessRepair(PAIR_ATTEMPTS))
}
