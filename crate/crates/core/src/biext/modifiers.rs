use super::{BiextError, Bisubgroup, FiberElement, Trivialization};
use crate::group::{AbGroup, El};
use crate::SeededRng;

/// A smaller bisubgroup `T₂ = {(a, b) ∈ T : keep(a, b)}` with the same quotients.
///
/// `keep` must cut out a bisubgroup that still surjects onto `A' × B'`;
/// the section retries with kernel perturbations until it lands in `T₂`.
pub struct Restricted<T, F> {
    inner: T,
    keep: F,
    attempts: usize,
}

impl<T, F> Restricted<T, F> {
    pub fn new(inner: T, keep: F) -> Self {
        Restricted {
            inner,
            keep,
            attempts: 256,
        }
    }

    pub fn inner(&self) -> &T {
        &self.inner
    }
}

impl<T, F> Bisubgroup for Restricted<T, F>
where
    T: Bisubgroup,
    F: Fn(&El<T::A>, &El<T::B>) -> bool,
{
    type A = T::A;
    type B = T::B;
    type QA = T::QA;
    type QB = T::QB;

    fn group_a(&self) -> &T::A {
        self.inner.group_a()
    }

    fn group_b(&self) -> &T::B {
        self.inner.group_b()
    }

    fn quotient_a(&self) -> &T::QA {
        self.inner.quotient_a()
    }

    fn quotient_b(&self) -> &T::QB {
        self.inner.quotient_b()
    }

    fn contains(&self, a: &El<T::A>, b: &El<T::B>) -> bool {
        self.inner.contains(a, b) && (self.keep)(a, b)
    }

    fn project_a(&self, a: &El<T::A>) -> El<T::QA> {
        self.inner.project_a(a)
    }

    fn project_b(&self, b: &El<T::B>) -> El<T::QB> {
        self.inner.project_b(b)
    }

    fn section(
        &self,
        alpha: &El<T::QA>,
        beta: &El<T::QB>,
        rng: &mut SeededRng,
    ) -> Option<(El<T::A>, El<T::B>)> {
        for _ in 0..self.attempts {
            let (a, b) = self.inner.section(alpha, beta, rng)?;
            if self.contains(&a, &b) {
                return Some((a, b));
            }
        }
        let (a, b) = self.inner.section(alpha, beta, rng)?;
        let (ga, gb) = (self.group_a(), self.group_b());
        for _ in 0..self.attempts {
            let a2 = ga.add(&a, &self.inner.sample_kernel_a(rng));
            let b2 = gb.add(&b, &self.inner.sample_kernel_b(rng));
            if self.contains(&a2, &b2) {
                return Some((a2, b2));
            }
        }
        None
    }

    fn sample_a(&self, rng: &mut SeededRng) -> El<T::A> {
        self.inner.sample_a(rng)
    }

    fn sample_b(&self, rng: &mut SeededRng) -> El<T::B> {
        self.inner.sample_b(rng)
    }

    fn sample_kernel_a(&self, rng: &mut SeededRng) -> El<T::A> {
        self.inner.sample_kernel_a(rng)
    }

    fn sample_kernel_b(&self, rng: &mut SeededRng) -> El<T::B> {
        self.inner.sample_kernel_b(rng)
    }

    fn adjust_a(&self, a: &El<T::A>, partners: &[&El<T::B>], rng: &mut SeededRng) -> Option<El<T::A>> {
        let ok = |c: &El<T::A>| partners.iter().all(|b| self.contains(c, b));
        if ok(a) {
            return Some(a.clone());
        }
        let g = self.group_a();
        std::iter::once(self.inner.adjust_a(a, partners, rng))
            .chain((0..self.attempts).map(|_| {
                let start = g.add(a, &self.inner.sample_kernel_a(rng));
                self.inner.adjust_a(&start, partners, rng)
            }))
            .flatten()
            .find(ok)
    }

    fn adjust_b(&self, b: &El<T::B>, partners: &[&El<T::A>], rng: &mut SeededRng) -> Option<El<T::B>> {
        let ok = |c: &El<T::B>| partners.iter().all(|a| self.contains(a, c));
        if ok(b) {
            return Some(b.clone());
        }
        let g = self.group_b();
        std::iter::once(self.inner.adjust_b(b, partners, rng))
            .chain((0..self.attempts).map(|_| {
                let start = g.add(b, &self.inner.sample_kernel_b(rng));
                self.inner.adjust_b(&start, partners, rng)
            }))
            .flatten()
            .find(ok)
    }

    fn quotient_elements(&self) -> Option<(Vec<El<T::QA>>, Vec<El<T::QB>>)> {
        self.inner.quotient_elements()
    }
}

/// `ψ + φ|_S` for a bilinear `φ` defined on all of `T`.
pub struct Twisted<P, F> {
    inner: P,
    phi: F,
}

impl<P, F> Twisted<P, F> {
    pub fn new(inner: P, phi: F) -> Self {
        Twisted { inner, phi }
    }

    pub fn inner(&self) -> &P {
        &self.inner
    }
}

impl<A, B, P, F> Trivialization<A, B> for Twisted<P, F>
where
    P: Trivialization<A, B>,
    F: Fn(&A, &B) -> El<P::N>,
{
    type N = P::N;

    fn coefficients(&self) -> &P::N {
        self.inner.coefficients()
    }

    fn psi(&self, a: &A, b: &B) -> Result<El<P::N>, BiextError> {
        let v = self.inner.psi(a, b)?;
        Ok(self.inner.coefficients().add(&v, &(self.phi)(a, b)))
    }
}

/// The isomorphism `P_ψ → P_{ψ+φ}`, `(n, (a, b)) ↦ (n + φ(a, b), (a, b))`.
pub fn twist_point<A: Clone, B: Clone, N: AbGroup>(
    n: &N,
    x: &FiberElement<A, B, N::Elem>,
    phi: impl Fn(&A, &B) -> N::Elem,
) -> FiberElement<A, B, N::Elem> {
    FiberElement {
        value: n.add(&x.value, &phi(&x.a, &x.b)),
        a: x.a.clone(),
        b: x.b.clone(),
    }
}
