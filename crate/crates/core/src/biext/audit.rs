use rand::SeedableRng;

use super::{Biextension, BiextError, Bisubgroup, ElA, ElB, Trivialization};
use crate::group::AbGroup;
use crate::SeededRng;

/// Controls the checks run when a biextension is built.
#[derive(Clone, Debug)]
pub struct AuditConfig {
    /// Number of random tuples drawn for closure and bilinearity checks.
    pub samples: usize,
    pub seed: u64,
    /// Enumerate `A' × B'` through the section oracle when it has at most this many elements.
    pub exhaustive_limit: u64,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            samples: 64,
            seed: 0,
            exhaustive_limit: 4096,
        }
    }
}

fn fail(check: &'static str, detail: String) -> BiextError {
    BiextError::Audit { check, detail }
}

pub(super) fn run<T, P>(bx: &Biextension<T, P>, cfg: &AuditConfig) -> Result<(), BiextError>
where
    T: Bisubgroup,
    P: Trivialization<ElA<T>, ElB<T>>,
{
    let t = bx.bisubgroup();
    let (ga, gb, n) = (t.group_a(), t.group_b(), bx.coefficients());
    let mut rng = SeededRng::seed_from_u64(cfg.seed);

    let psi = |a: &ElA<T>, b: &ElB<T>| bx.psi(a, b);
    // ψ(x1, y) + ψ(x2, y) = ψ(x1 + x2, y), skipping tuples that leave T.
    let check_first = |x1: &ElA<T>, x2: &ElA<T>, y: &ElB<T>| -> Result<(), BiextError> {
        if !(t.contains(x1, y) && t.contains(x2, y)) {
            return Ok(());
        }
        let s = ga.add(x1, x2);
        if !t.contains(&s, y) {
            return Err(fail("closure", format!("({x1:?}, {y:?}) + ({x2:?}, {y:?}) leaves T")));
        }
        let lhs = n.add(&psi(x1, y)?, &psi(x2, y)?);
        let rhs = psi(&s, y)?;
        if !n.same(&lhs, &rhs) {
            return Err(fail(
                "bilinearity in the first slot",
                format!("ψ({x1:?}, {y:?}) + ψ({x2:?}, {y:?}) = {lhs:?} but ψ(sum) = {rhs:?}"),
            ));
        }
        Ok(())
    };
    let check_second = |x: &ElA<T>, y1: &ElB<T>, y2: &ElB<T>| -> Result<(), BiextError> {
        if !(t.contains(x, y1) && t.contains(x, y2)) {
            return Ok(());
        }
        let s = gb.add(y1, y2);
        if !t.contains(x, &s) {
            return Err(fail("closure", format!("({x:?}, {y1:?}) + ({x:?}, {y2:?}) leaves T")));
        }
        let lhs = n.add(&psi(x, y1)?, &psi(x, y2)?);
        let rhs = psi(x, &s)?;
        if !n.same(&lhs, &rhs) {
            return Err(fail(
                "bilinearity in the second slot",
                format!("ψ({x:?}, {y1:?}) + ψ({x:?}, {y2:?}) = {lhs:?} but ψ(sum) = {rhs:?}"),
            ));
        }
        Ok(())
    };

    for _ in 0..cfg.samples {
        let (a1, a2) = (t.sample_a(&mut rng), t.sample_a(&mut rng));
        let (b1, b2) = (t.sample_b(&mut rng), t.sample_b(&mut rng));
        let (k1, k2) = (t.sample_kernel_a(&mut rng), t.sample_kernel_a(&mut rng));
        let (m1, m2) = (t.sample_kernel_b(&mut rng), t.sample_kernel_b(&mut rng));

        // Closure of T in each variable on arbitrary elements.
        for (x1, x2, y) in [(&a1, &a2, &b1), (&a1, &k1, &b2)] {
            if t.contains(x1, y) && t.contains(x2, y) && !t.contains(&ga.add(x1, x2), y) {
                return Err(fail("closure", format!("first slot at ({x1:?}, {x2:?}; {y:?})")));
            }
        }
        for (x, y1, y2) in [(&a1, &b1, &b2), (&a2, &b1, &m1)] {
            if t.contains(x, y1) && t.contains(x, y2) && !t.contains(x, &gb.add(y1, y2)) {
                return Err(fail("closure", format!("second slot at ({x:?}; {y1:?}, {y2:?})")));
            }
        }

        // Bilinearity wherever all terms lie in S.
        check_first(&k1, &k2, &b1)?;
        check_first(&a1, &a2, &m1)?;
        check_first(&k1, &a1, &m2)?;
        check_second(&a1, &m1, &m2)?;
        check_second(&k1, &b1, &b2)?;
        check_second(&k2, &b2, &m1)?;

        // The section lands over the requested point.
        let (alpha, beta) = (t.project_a(&a1), t.project_b(&b1));
        check_section(t, &alpha, &beta, &mut rng)?;
    }

    if let Some((qa, qb)) = t.quotient_elements() {
        if (qa.len() as u64).saturating_mul(qb.len() as u64) <= cfg.exhaustive_limit {
            for alpha in &qa {
                for beta in &qb {
                    check_section(t, alpha, beta, &mut rng)?;
                }
            }
        }
    }
    Ok(())
}

fn check_section<T: Bisubgroup>(
    t: &T,
    alpha: &<T::QA as AbGroup>::Elem,
    beta: &<T::QB as AbGroup>::Elem,
    rng: &mut SeededRng,
) -> Result<(), BiextError> {
    let Some((a, b)) = t.section(alpha, beta, rng) else {
        return Err(fail("surjectivity", format!("no section over ({alpha:?}, {beta:?})")));
    };
    let ok = t.contains(&a, &b)
        && t.quotient_a().same(&t.project_a(&a), alpha)
        && t.quotient_b().same(&t.project_b(&b), beta);
    if ok {
        Ok(())
    } else {
        Err(fail(
            "surjectivity",
            format!("section over ({alpha:?}, {beta:?}) returned ({a:?}, {b:?})"),
        ))
    }
}
