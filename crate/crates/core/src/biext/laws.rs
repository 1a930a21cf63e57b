//! Checks of the biextension axioms on concrete fibers.
//!
//! Each check builds points with [`Biextension::point_over`], combines them
//! with the partial laws and compares the results by transport. A failure
//! is reported as [`BiextError::Audit`] naming the law.

use super::{twist_point, Biextension, BiextError, Bisubgroup, ElA, ElB, ElN, Fiber, Step, Trivialization};
use crate::group::{AbGroup, El};
use crate::SeededRng;

type Base<T> = (El<<T as Bisubgroup>::QA>, El<<T as Bisubgroup>::QB>);

fn violation(law: &'static str, detail: String) -> BiextError {
    BiextError::Audit { check: law, detail }
}

fn expect_same<T, P>(bx: &Biextension<T, P>, law: &'static str, x: &Fiber<T, P>, y: &Fiber<T, P>) -> Result<(), BiextError>
where
    T: Bisubgroup,
    P: Trivialization<ElA<T>, ElB<T>>,
{
    if bx.same_point(x, y)? {
        Ok(())
    } else {
        Err(violation(law, format!("{x:?} and {y:?} differ")))
    }
}

fn point<T, P>(bx: &Biextension<T, P>, alpha: &El<T::QA>, beta: &El<T::QB>, rng: &mut SeededRng) -> Result<Fiber<T, P>, BiextError>
where
    T: Bisubgroup,
    P: Trivialization<ElA<T>, ElB<T>>,
{
    bx.point_over(alpha, beta, rng)
}

/// A random point of `A' × B'`, drawn through the samplers of `T`.
pub fn random_base<T, P>(bx: &Biextension<T, P>, rng: &mut SeededRng) -> Base<T>
where
    T: Bisubgroup,
    P: Trivialization<ElA<T>, ElB<T>>,
{
    let t = bx.bisubgroup();
    (t.project_a(&t.sample_a(rng)), t.project_b(&t.sample_b(rng)))
}

/// `(x +₁ y) +₂ (z +₁ w) = (x +₂ z) +₁ (y +₂ w)` over `(α, γ), (β, γ), (α, δ), (β, δ)`.
pub fn interchange<T, P>(
    bx: &Biextension<T, P>,
    (alpha, beta): (&El<T::QA>, &El<T::QA>),
    (gamma, delta): (&El<T::QB>, &El<T::QB>),
    rng: &mut SeededRng,
) -> Result<(), BiextError>
where
    T: Bisubgroup,
    P: Trivialization<ElA<T>, ElB<T>>,
{
    let x = point(bx, alpha, gamma, rng)?;
    let y = point(bx, beta, gamma, rng)?;
    let z = point(bx, alpha, delta, rng)?;
    let w = point(bx, beta, delta, rng)?;
    let lhs = bx.add_second(&bx.add_first(&x, &y)?, &bx.add_first(&z, &w)?)?;
    let rhs = bx.add_first(&bx.add_second(&x, &z)?, &bx.add_second(&y, &w)?)?;
    expect_same(bx, "interchange", &lhs, &rhs)
}

/// Units, commutativity and associativity of both partial laws.
pub fn group_laws<T, P>(
    bx: &Biextension<T, P>,
    (alpha, beta): (&El<T::QA>, &El<T::QA>),
    (gamma, delta): (&El<T::QB>, &El<T::QB>),
    rng: &mut SeededRng,
) -> Result<(), BiextError>
where
    T: Bisubgroup,
    P: Trivialization<ElA<T>, ElB<T>>,
{
    let x = point(bx, alpha, gamma, rng)?;
    let y = point(bx, beta, gamma, rng)?;
    let z = point(bx, alpha, delta, rng)?;
    let e1 = bx.unit_first(x.b.clone())?;
    let e2 = bx.unit_second(x.a.clone())?;
    expect_same(bx, "unit of the first law", &bx.add_first(&x, &e1)?, &x)?;
    expect_same(bx, "unit of the second law", &bx.add_second(&x, &e2)?, &x)?;
    expect_same(bx, "commutativity of the first law", &bx.add_first(&x, &y)?, &bx.add_first(&y, &x)?)?;
    expect_same(bx, "commutativity of the second law", &bx.add_second(&x, &z)?, &bx.add_second(&z, &x)?)?;
    let u = point(bx, beta, gamma, rng)?;
    let l = bx.add_first(&bx.add_first(&x, &y)?, &u)?;
    let r = bx.add_first(&x, &bx.add_first(&y, &u)?)?;
    expect_same(bx, "associativity of the first law", &l, &r)?;
    let v = point(bx, alpha, delta, rng)?;
    let l = bx.add_second(&bx.add_second(&x, &z)?, &v)?;
    let r = bx.add_second(&x, &bx.add_second(&z, &v)?)?;
    expect_same(bx, "associativity of the second law", &l, &r)
}

/// Different orderings of the same kernel steps give the same value, and a
/// closed loop returns the starting value. Paths that leave `T` are skipped.
pub fn path_independence<T, P>(
    bx: &Biextension<T, P>,
    alpha: &El<T::QA>,
    gamma: &El<T::QB>,
    rng: &mut SeededRng,
) -> Result<(), BiextError>
where
    T: Bisubgroup,
    P: Trivialization<ElA<T>, ElB<T>>,
{
    let t = bx.bisubgroup();
    let (ga, gb, n) = (t.group_a(), t.group_b(), bx.coefficients());
    let x = point(bx, alpha, gamma, rng)?;
    let (k1, k2) = (t.sample_kernel_a(rng), t.sample_kernel_a(rng));
    let (m1, m2) = (t.sample_kernel_b(rng), t.sample_kernel_b(rng));
    let paths = [
        vec![
            Step::First(k1.clone()),
            Step::Second(m1.clone()),
            Step::First(k2.clone()),
            Step::Second(m2.clone()),
        ],
        vec![Step::Second(gb.add(&m1, &m2)), Step::First(ga.add(&k1, &k2))],
        vec![Step::First(k2), Step::Second(m2), Step::Second(m1), Step::First(k1)],
    ];
    let ends: Vec<_> = paths.iter().filter_map(|p| bx.apply_steps(&x, p).ok()).collect();
    for w in ends.windows(2) {
        if !n.same(&w[0].value, &w[1].value) {
            return Err(violation("path independence", format!("{:?} vs {:?}", w[0], w[1])));
        }
    }
    if let Some(end) = ends.first() {
        let back = bx.transport(end, &x.a, &x.b)?;
        if !n.same(&back.value, &x.value) {
            return Err(violation("path independence", format!("loop returns {:?}, not {:?}", back.value, x.value)));
        }
    }
    Ok(())
}

/// Points of a biextension on a smaller bisubgroup `T₂ ⊂ T` are points of
/// the biextension on `T`, and the partial laws and transport agree.
pub fn restriction<T1, T2, P1, P2>(
    full: &Biextension<T1, P1>,
    restricted: &Biextension<T2, P2>,
    (alpha, beta): (&El<T2::QA>, &El<T2::QA>),
    (gamma, delta): (&El<T2::QB>, &El<T2::QB>),
    rng: &mut SeededRng,
) -> Result<(), BiextError>
where
    T1: Bisubgroup,
    T2: Bisubgroup<A = T1::A, B = T1::B, QA = T1::QA, QB = T1::QB>,
    P1: Trivialization<ElA<T1>, ElB<T1>>,
    P2: Trivialization<ElA<T2>, ElB<T2>, N = P1::N>,
{
    let lift = |f: &Fiber<T2, P2>| full.point(f.value.clone(), f.a.clone(), f.b.clone());
    let x = point(restricted, alpha, gamma, rng)?;
    let y = point(restricted, beta, gamma, rng)?;
    let z = point(restricted, alpha, delta, rng)?;
    let s = full.add_first(&lift(&x)?, &lift(&y)?)?;
    expect_same(full, "restriction of the first law", &lift(&restricted.add_first(&x, &y)?)?, &s)?;
    let s = full.add_second(&lift(&x)?, &lift(&z)?)?;
    expect_same(full, "restriction of the second law", &lift(&restricted.add_second(&x, &z)?)?, &s)?;
    let target = point(restricted, alpha, gamma, rng)?;
    let moved = restricted.transport(&x, &target.a, &target.b)?;
    expect_same(full, "restriction of transport", &lift(&moved)?, &lift(&x)?)
}

/// `(n, (a, b)) ↦ (n + φ(a, b), (a, b))` carries `P_ψ` to `P_{ψ+φ}`,
/// respecting both laws and transport.
pub fn twist<T, P, Q, F>(
    base: &Biextension<T, P>,
    twisted: &Biextension<T, Q>,
    phi: F,
    (alpha, beta): (&El<T::QA>, &El<T::QA>),
    (gamma, delta): (&El<T::QB>, &El<T::QB>),
    rng: &mut SeededRng,
) -> Result<(), BiextError>
where
    T: Bisubgroup,
    P: Trivialization<ElA<T>, ElB<T>>,
    Q: Trivialization<ElA<T>, ElB<T>, N = P::N>,
    F: Fn(&ElA<T>, &ElB<T>) -> ElN<T, P>,
{
    let n = base.coefficients();
    let tw = |f: &Fiber<T, P>| twist_point(n, f, &phi);
    let x = point(base, alpha, gamma, rng)?;
    let y = point(base, beta, gamma, rng)?;
    let z = point(base, alpha, delta, rng)?;
    let l = tw(&base.add_first(&x, &y)?);
    expect_same(twisted, "twist of the first law", &l, &twisted.add_first(&tw(&x), &tw(&y))?)?;
    let l = tw(&base.add_second(&x, &z)?);
    expect_same(twisted, "twist of the second law", &l, &twisted.add_second(&tw(&x), &tw(&z))?)?;
    let target = point(base, alpha, gamma, rng)?;
    let moved = base.transport(&x, &target.a, &target.b)?;
    expect_same(twisted, "twist of transport", &tw(&moved), &tw(&x))
}

/// Interchange, group laws and path independence on `samples` random bases.
pub fn sampled<T, P>(bx: &Biextension<T, P>, samples: usize, rng: &mut SeededRng) -> Result<usize, BiextError>
where
    T: Bisubgroup,
    P: Trivialization<ElA<T>, ElB<T>>,
{
    for _ in 0..samples {
        let (alpha, gamma) = random_base(bx, rng);
        let (beta, delta) = random_base(bx, rng);
        interchange(bx, (&alpha, &beta), (&gamma, &delta), rng)?;
        group_laws(bx, (&alpha, &beta), (&gamma, &delta), rng)?;
        path_independence(bx, &alpha, &gamma, rng)?;
    }
    Ok(samples)
}

/// Interchange and group laws on every quadruple `(α, β, γ, δ)` of
/// `A' × A' × B' × B'`, and path independence over every base point.
/// Returns the number of quadruples, or `None` when the quotients are not enumerable.
pub fn exhaustive<T, P>(bx: &Biextension<T, P>, rng: &mut SeededRng) -> Result<Option<usize>, BiextError>
where
    T: Bisubgroup,
    P: Trivialization<ElA<T>, ElB<T>>,
{
    let Some((qa, qb)) = bx.bisubgroup().quotient_elements() else {
        return Ok(None);
    };
    let mut count = 0;
    for alpha in &qa {
        for gamma in &qb {
            path_independence(bx, alpha, gamma, rng)?;
            for beta in &qa {
                for delta in &qb {
                    interchange(bx, (alpha, beta), (gamma, delta), rng)?;
                    group_laws(bx, (alpha, beta), (gamma, delta), rng)?;
                    count += 1;
                }
            }
        }
    }
    Ok(Some(count))
}
