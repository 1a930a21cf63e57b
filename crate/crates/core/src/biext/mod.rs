//! Biextensions presented by a bisubgroup and a trivialization.
//!
//! A [`Biextension`] over `(A', B')` by `N` is given by surjections
//! `A → A'`, `B → B'`, a bisubgroup `T ⊂ A × B` surjecting onto `A' × B'`,
//! and a bilinear `ψ: S → N` on
//! `S = T ∩ (Ker φ_A × B ∪ A × Ker φ_B)`. A fiber element is a pair
//! `(n, (a, b))` with `(a, b) ∈ T`; two such pairs name the same point when
//! one is carried to the other by ψ-transport. Fibers are never built as
//! quotient sets: equality is decided by transporting to a common basepoint.

mod audit;
pub mod chain;
pub mod laws;
pub mod massey;
mod modifiers;
pub mod toy;

use std::sync::Mutex;

use rand::SeedableRng;
use thiserror::Error;

use crate::abelian::AbelianError;
use crate::group::{AbGroup, El};
use crate::SeededRng;

pub use audit::AuditConfig;
pub use modifiers::{twist_point, Restricted, Twisted};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BiextError {
    #[error("pair is not in the bisubgroup T: {0}")]
    NotInT(String),
    #[error("pair is not in S (neither slot lies in the kernel): {0}")]
    NotInS(String),
    #[error("fiber elements lie over different base points: {0}")]
    BaseMismatch(String),
    #[error("audit failed ({check}): {detail}")]
    Audit { check: &'static str, detail: String },
    #[error("no transport path found: {0}")]
    Transport(String),
    #[error("Weil pairing precondition violated: {0}")]
    WeilPrecondition(String),
    #[error("chain-map condition fails in degree {degree} on generators (a{a_gen}, b{b_gen}): value {value}")]
    ChainCondition {
        degree: i64,
        a_gen: usize,
        b_gen: usize,
        value: String,
    },
    #[error("multiplication contract violated: {0}")]
    Multiplication(String),
    #[error("bounding chain equation fails: {0}")]
    BoundingChain(String),
    #[error("trivialization failed: {0}")]
    Trivialization(String),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
}

const ADJUST_ATTEMPTS: usize = 64;

/// A bisubgroup `T ⊂ A × B` with quotient maps to `A'` and `B'`.
///
/// Groups may be infinite or only presented through callbacks, so the
/// bisubgroup also provides samplers used by audits and path search.
pub trait Bisubgroup {
    type A: AbGroup;
    type B: AbGroup;
    type QA: AbGroup;
    type QB: AbGroup;

    fn group_a(&self) -> &Self::A;
    fn group_b(&self) -> &Self::B;
    fn quotient_a(&self) -> &Self::QA;
    fn quotient_b(&self) -> &Self::QB;

    fn contains(&self, a: &El<Self::A>, b: &El<Self::B>) -> bool;
    fn project_a(&self, a: &El<Self::A>) -> El<Self::QA>;
    fn project_b(&self, b: &El<Self::B>) -> El<Self::QB>;

    fn in_kernel_a(&self, a: &El<Self::A>) -> bool {
        self.quotient_a().is_zero(&self.project_a(a))
    }

    fn in_kernel_b(&self, b: &El<Self::B>) -> bool {
        self.quotient_b().is_zero(&self.project_b(b))
    }

    /// Some `(a, b) ∈ T` over `(alpha, beta)`.
    fn section(
        &self,
        alpha: &El<Self::QA>,
        beta: &El<Self::QB>,
        rng: &mut SeededRng,
    ) -> Option<(El<Self::A>, El<Self::B>)>;

    fn sample_a(&self, rng: &mut SeededRng) -> El<Self::A>;
    fn sample_b(&self, rng: &mut SeededRng) -> El<Self::B>;
    fn sample_kernel_a(&self, rng: &mut SeededRng) -> El<Self::A>;
    fn sample_kernel_b(&self, rng: &mut SeededRng) -> El<Self::B>;

    /// Some `a'` with `a' − a ∈ Ker φ_A` and `(a', b) ∈ T` for every `b` in
    /// `partners`. The default tries random kernel perturbations.
    fn adjust_a(&self, a: &El<Self::A>, partners: &[&El<Self::B>], rng: &mut SeededRng) -> Option<El<Self::A>> {
        if partners.iter().all(|b| self.contains(a, b)) {
            return Some(a.clone());
        }
        (0..ADJUST_ATTEMPTS)
            .map(|_| self.group_a().add(a, &self.sample_kernel_a(rng)))
            .find(|c| partners.iter().all(|b| self.contains(c, b)))
    }

    /// The second-slot counterpart of [`Bisubgroup::adjust_a`].
    fn adjust_b(&self, b: &El<Self::B>, partners: &[&El<Self::A>], rng: &mut SeededRng) -> Option<El<Self::B>> {
        if partners.iter().all(|a| self.contains(a, b)) {
            return Some(b.clone());
        }
        (0..ADJUST_ATTEMPTS)
            .map(|_| self.group_b().add(b, &self.sample_kernel_b(rng)))
            .find(|c| partners.iter().all(|a| self.contains(a, c)))
    }

    /// A preferred basepoint over the same base point as `(a, b)`, used to
    /// keep representatives small after the partial laws. `None` keeps `(a, b)`.
    fn compact(&self, _a: &El<Self::A>, _b: &El<Self::B>, _rng: &mut SeededRng) -> Option<(El<Self::A>, El<Self::B>)> {
        None
    }

    /// All elements of `A'` and `B'` when they are small enough to enumerate.
    fn quotient_elements(&self) -> Option<(Vec<El<Self::QA>>, Vec<El<Self::QB>>)> {
        None
    }
}

/// A bilinear map `ψ: S → N`.
pub trait Trivialization<A, B> {
    type N: AbGroup;

    fn coefficients(&self) -> &Self::N;

    /// ψ(a, b). Callers have already checked `(a, b) ∈ S`.
    fn psi(&self, a: &A, b: &B) -> Result<El<Self::N>, BiextError>;
}

/// A point of the biextension: `value ∈ N` attached to the basepoint `(a, b) ∈ T`.
#[derive(Clone, Debug)]
pub struct FiberElement<A, B, N> {
    pub value: N,
    pub a: A,
    pub b: B,
}

/// One elementary move of a basepoint inside its fiber.
#[derive(Clone, Debug)]
pub enum Step<A, B> {
    /// `(a, b) → (a + δ, b)` with `δ ∈ Ker φ_A`.
    First(A),
    /// `(a, b) → (a, b + δ)` with `δ ∈ Ker φ_B`.
    Second(B),
}

type ElA<T> = El<<T as Bisubgroup>::A>;
type ElB<T> = El<<T as Bisubgroup>::B>;
type ElN<T, P> = El<<P as Trivialization<ElA<T>, ElB<T>>>::N>;
pub type Fiber<T, P> = FiberElement<ElA<T>, ElB<T>, ElN<T, P>>;

/// The quotient biextension `P_ψ`.
pub struct Biextension<T, P>
where
    T: Bisubgroup,
    P: Trivialization<ElA<T>, ElB<T>>,
{
    bisubgroup: T,
    triv: P,
    bridge_attempts: usize,
    rng: Mutex<SeededRng>,
}

impl<T, P> Biextension<T, P>
where
    T: Bisubgroup,
    P: Trivialization<ElA<T>, ElB<T>>,
{
    /// Builds `P_ψ` after auditing closure of `T`, bilinearity of ψ and the
    /// section oracle.
    pub fn build(bisubgroup: T, triv: P, audit: &AuditConfig) -> Result<Self, BiextError> {
        let b = Self::unchecked(bisubgroup, triv, audit.seed);
        audit::run(&b, audit)?;
        Ok(b)
    }

    /// Builds without auditing; used for restricted and twisted variants of
    /// a biextension that was already audited.
    pub fn unchecked(bisubgroup: T, triv: P, seed: u64) -> Self {
        Biextension {
            bisubgroup,
            triv,
            bridge_attempts: 64,
            rng: Mutex::new(SeededRng::seed_from_u64(seed ^ 0x5eed_b1e7)),
        }
    }

    pub fn bisubgroup(&self) -> &T {
        &self.bisubgroup
    }

    pub fn trivialization(&self) -> &P {
        &self.triv
    }

    pub fn coefficients(&self) -> &P::N {
        self.triv.coefficients()
    }

    fn n(&self) -> &P::N {
        self.triv.coefficients()
    }

    pub fn in_s(&self, a: &ElA<T>, b: &ElB<T>) -> bool {
        self.bisubgroup.contains(a, b)
            && (self.bisubgroup.in_kernel_a(a) || self.bisubgroup.in_kernel_b(b))
    }

    /// ψ with the membership `(a, b) ∈ S` checked.
    pub fn psi(&self, a: &ElA<T>, b: &ElB<T>) -> Result<ElN<T, P>, BiextError> {
        if !self.bisubgroup.contains(a, b) {
            return Err(BiextError::NotInT(format!("({a:?}, {b:?})")));
        }
        if !(self.bisubgroup.in_kernel_a(a) || self.bisubgroup.in_kernel_b(b)) {
            return Err(BiextError::NotInS(format!("({a:?}, {b:?})")));
        }
        self.triv.psi(a, b)
    }

    pub fn point(&self, value: ElN<T, P>, a: ElA<T>, b: ElB<T>) -> Result<Fiber<T, P>, BiextError> {
        if !self.bisubgroup.contains(&a, &b) {
            return Err(BiextError::NotInT(format!("({a:?}, {b:?})")));
        }
        Ok(FiberElement { value, a, b })
    }

    /// A point over `(alpha, beta)` with value zero at a sectioned basepoint.
    pub fn point_over(
        &self,
        alpha: &El<T::QA>,
        beta: &El<T::QB>,
        rng: &mut SeededRng,
    ) -> Result<Fiber<T, P>, BiextError> {
        let (a, b) = self
            .bisubgroup
            .section(alpha, beta, rng)
            .ok_or_else(|| BiextError::Transport(format!("section failed over ({alpha:?}, {beta:?})")))?;
        self.point(self.n().zero(), a, b)
    }

    pub fn base(&self, x: &Fiber<T, P>) -> (El<T::QA>, El<T::QB>) {
        (self.bisubgroup.project_a(&x.a), self.bisubgroup.project_b(&x.b))
    }

    /// Neutral element of the first partial law over `(0, φ_B(b))`.
    pub fn unit_first(&self, b: ElB<T>) -> Result<Fiber<T, P>, BiextError> {
        self.point(self.n().zero(), self.bisubgroup.group_a().zero(), b)
    }

    /// Neutral element of the second partial law over `(φ_A(a), 0)`.
    pub fn unit_second(&self, a: ElA<T>) -> Result<Fiber<T, P>, BiextError> {
        self.point(self.n().zero(), a, self.bisubgroup.group_b().zero())
    }

    /// Moves the basepoint along the first slot: `(n, (a, b)) ~ (n + ψ(δ, b), (a + δ, b))`.
    pub fn step_first(&self, x: &Fiber<T, P>, delta: &ElA<T>) -> Result<Fiber<T, P>, BiextError> {
        if !self.bisubgroup.in_kernel_a(delta) {
            return Err(BiextError::Transport(format!("{delta:?} is not in Ker φ_A")));
        }
        let ga = self.bisubgroup.group_a();
        let a2 = ga.add(&x.a, delta);
        if !self.bisubgroup.contains(&a2, &x.b) {
            return Err(BiextError::NotInT(format!("({a2:?}, {:?})", x.b)));
        }
        let shift = self.psi(delta, &x.b)?;
        Ok(FiberElement {
            value: self.n().add(&x.value, &shift),
            a: a2,
            b: x.b.clone(),
        })
    }

    /// Moves the basepoint along the second slot: `(n, (a, b)) ~ (n + ψ(a, δ), (a, b + δ))`.
    pub fn step_second(&self, x: &Fiber<T, P>, delta: &ElB<T>) -> Result<Fiber<T, P>, BiextError> {
        if !self.bisubgroup.in_kernel_b(delta) {
            return Err(BiextError::Transport(format!("{delta:?} is not in Ker φ_B")));
        }
        let gb = self.bisubgroup.group_b();
        let b2 = gb.add(&x.b, delta);
        if !self.bisubgroup.contains(&x.a, &b2) {
            return Err(BiextError::NotInT(format!("({:?}, {b2:?})", x.a)));
        }
        let shift = self.psi(&x.a, delta)?;
        Ok(FiberElement {
            value: self.n().add(&x.value, &shift),
            a: x.a.clone(),
            b: b2,
        })
    }

    /// Applies a sequence of elementary moves.
    pub fn apply_steps(
        &self,
        x: &Fiber<T, P>,
        steps: &[Step<ElA<T>, ElB<T>>],
    ) -> Result<Fiber<T, P>, BiextError> {
        let mut cur = x.clone();
        for s in steps {
            cur = match s {
                Step::First(d) => self.step_first(&cur, d)?,
                Step::Second(d) => self.step_second(&cur, d)?,
            };
        }
        Ok(cur)
    }

    fn check_same_base(&self, x: &Fiber<T, P>, a: &ElA<T>, b: &ElB<T>) -> Result<(), BiextError> {
        let (qa, qb) = (self.bisubgroup.quotient_a(), self.bisubgroup.quotient_b());
        let ok = qa.same(&self.bisubgroup.project_a(&x.a), &self.bisubgroup.project_a(a))
            && qb.same(&self.bisubgroup.project_b(&x.b), &self.bisubgroup.project_b(b));
        if ok {
            Ok(())
        } else {
            Err(BiextError::BaseMismatch(format!(
                "basepoint ({:?}, {:?}) vs target ({a:?}, {b:?})",
                x.a, x.b
            )))
        }
    }

    fn two_step(&self, x: &Fiber<T, P>, a: &ElA<T>, b: &ElB<T>) -> Option<Fiber<T, P>> {
        let da = self.bisubgroup.group_a().sub(a, &x.a);
        let db = self.bisubgroup.group_b().sub(b, &x.b);
        let first_then_second = self
            .step_first(x, &da)
            .and_then(|y| self.step_second(&y, &db));
        if let Ok(y) = first_then_second {
            return Some(y);
        }
        self.step_second(x, &db)
            .and_then(|y| self.step_first(&y, &da))
            .ok()
    }

    /// Rewrites `x` at the basepoint `(a, b)`, which must lie over the same base point.
    ///
    /// Tries the two direct paths, then detours through randomly perturbed
    /// intermediate basepoints when `T` is not a product.
    pub fn transport(&self, x: &Fiber<T, P>, a: &ElA<T>, b: &ElB<T>) -> Result<Fiber<T, P>, BiextError> {
        if !self.bisubgroup.contains(a, b) {
            return Err(BiextError::NotInT(format!("({a:?}, {b:?})")));
        }
        self.check_same_base(x, a, b)?;
        if let Some(y) = self.two_step(x, a, b) {
            return Ok(y);
        }
        let t = &self.bisubgroup;
        let mut rng = self.rng.lock().expect("transport rng poisoned");
        for _ in 0..self.bridge_attempts {
            // Detour through (a₀, b′) or (a′, b₀) with the moved coordinate
            // compatible with both endpoints.
            let mids = [
                t.adjust_b(&x.b, &[&x.a, a], &mut rng).map(|mb| (x.a.clone(), mb)),
                t.adjust_a(&x.a, &[&x.b, b], &mut rng).map(|ma| (ma, x.b.clone())),
                // Both coordinates moved: each hop then changes one slot
                // against a partner it was chosen to avoid.
                t.adjust_a(&x.a, &[b], &mut rng)
                    .and_then(|ma| t.adjust_b(&x.b, &[&x.a, &ma], &mut rng).map(|mb| (ma, mb))),
                t.adjust_b(&x.b, &[a], &mut rng)
                    .and_then(|mb| t.adjust_a(&x.a, &[&x.b, &mb], &mut rng).map(|ma| (ma, mb))),
            ];
            for (ma, mb) in mids.into_iter().flatten() {
                if let Some(y) = self.two_step(x, &ma, &mb).and_then(|mid| self.two_step(&mid, a, b)) {
                    return Ok(y);
                }
            }
        }
        Err(BiextError::Transport(format!(
            "from ({:?}, {:?}) to ({a:?}, {b:?})",
            x.a, x.b
        )))
    }

    /// Whether two fiber elements name the same point.
    pub fn same_point(&self, x: &Fiber<T, P>, y: &Fiber<T, P>) -> Result<bool, BiextError> {
        let y2 = self.transport(y, &x.a, &x.b)?;
        Ok(self.n().same(&x.value, &y2.value))
    }

    /// `N`-difference `x − y` of two points in the same fiber.
    pub fn difference(&self, x: &Fiber<T, P>, y: &Fiber<T, P>) -> Result<ElN<T, P>, BiextError> {
        let y2 = self.transport(y, &x.a, &x.b)?;
        Ok(self.n().sub(&x.value, &y2.value))
    }

    /// Moves `x` to the bisubgroup's preferred basepoint when there is one
    /// and transport reaches it.
    fn compacted(&self, x: Fiber<T, P>) -> Result<Fiber<T, P>, BiextError> {
        let target = {
            let mut rng = self.rng.lock().expect("transport rng poisoned");
            self.bisubgroup.compact(&x.a, &x.b, &mut rng)
        };
        Ok(target
            .and_then(|(a, b)| self.transport(&x, &a, &b).ok())
            .unwrap_or(x))
    }

    /// Moves `y` to a basepoint whose second coordinate is `b`.
    fn rebase_second(&self, y: &Fiber<T, P>, b: &ElB<T>) -> Result<Fiber<T, P>, BiextError> {
        if self.bisubgroup.group_b().same(&y.b, b) {
            return Ok(y.clone());
        }
        for _ in 0..self.bridge_attempts {
            let a = {
                let mut rng = self.rng.lock().expect("transport rng poisoned");
                self.bisubgroup
                    .adjust_a(&y.a, &[b, &y.b], &mut rng)
                    .or_else(|| self.bisubgroup.adjust_a(&y.a, &[b], &mut rng))
            };
            if let Some(z) = a.and_then(|a| self.transport(y, &a, b).ok()) {
                return Ok(z);
            }
        }
        Err(BiextError::Transport(format!("cannot rebase ({:?}, {:?}) onto second coordinate {b:?}", y.a, y.b)))
    }

    fn rebase_first(&self, y: &Fiber<T, P>, a: &ElA<T>) -> Result<Fiber<T, P>, BiextError> {
        if self.bisubgroup.group_a().same(&y.a, a) {
            return Ok(y.clone());
        }
        for _ in 0..self.bridge_attempts {
            let b = {
                let mut rng = self.rng.lock().expect("transport rng poisoned");
                self.bisubgroup
                    .adjust_b(&y.b, &[a, &y.a], &mut rng)
                    .or_else(|| self.bisubgroup.adjust_b(&y.b, &[a], &mut rng))
            };
            if let Some(z) = b.and_then(|b| self.transport(y, a, &b).ok()) {
                return Ok(z);
            }
        }
        Err(BiextError::Transport(format!("cannot rebase ({:?}, {:?}) onto first coordinate {a:?}", y.a, y.b)))
    }

    /// `P_(α,γ) ⊗ P_(β,γ) → P_(α+β,γ)`.
    pub fn add_first(&self, x: &Fiber<T, P>, y: &Fiber<T, P>) -> Result<Fiber<T, P>, BiextError> {
        let qb = self.bisubgroup.quotient_b();
        let (gx, gy) = (self.bisubgroup.project_b(&x.b), self.bisubgroup.project_b(&y.b));
        if !qb.same(&gx, &gy) {
            return Err(BiextError::BaseMismatch(format!(
                "second base coordinates differ: {gx:?} vs {gy:?}"
            )));
        }
        let y = self.rebase_second(y, &x.b)?;
        let a = self.bisubgroup.group_a().add(&x.a, &y.a);
        self.compacted(self.point(self.n().add(&x.value, &y.value), a, x.b.clone())?)
    }

    /// `P_(α,γ) ⊗ P_(α,δ) → P_(α,γ+δ)`.
    pub fn add_second(&self, x: &Fiber<T, P>, y: &Fiber<T, P>) -> Result<Fiber<T, P>, BiextError> {
        let qa = self.bisubgroup.quotient_a();
        let (ax, ay) = (self.bisubgroup.project_a(&x.a), self.bisubgroup.project_a(&y.a));
        if !qa.same(&ax, &ay) {
            return Err(BiextError::BaseMismatch(format!(
                "first base coordinates differ: {ax:?} vs {ay:?}"
            )));
        }
        let y = self.rebase_first(y, &x.a)?;
        let b = self.bisubgroup.group_b().add(&x.b, &y.b);
        self.compacted(self.point(self.n().add(&x.value, &y.value), x.a.clone(), b)?)
    }

    /// Weil pairing of `(φ_A(a), φ_B(b))` at level `l`: `ψ(la, b) − ψ(a, lb)`.
    pub fn weil_pairing(&self, a: &ElA<T>, b: &ElB<T>, l: u32) -> Result<ElN<T, P>, BiextError> {
        if l == 0 {
            return Err(BiextError::WeilPrecondition("l must be positive".into()));
        }
        if !self.bisubgroup.contains(a, b) {
            return Err(BiextError::WeilPrecondition(format!("({a:?}, {b:?}) is not in T")));
        }
        let la = self.bisubgroup.group_a().mul_int(a, l as i64);
        let lb = self.bisubgroup.group_b().mul_int(b, l as i64);
        if !self.bisubgroup.in_kernel_a(&la) {
            return Err(BiextError::WeilPrecondition(format!("{l}·a is not in Ker φ_A")));
        }
        if !self.bisubgroup.in_kernel_b(&lb) {
            return Err(BiextError::WeilPrecondition(format!("{l}·b is not in Ker φ_B")));
        }
        if !self.bisubgroup.contains(&la, b) || !self.bisubgroup.contains(a, &lb) {
            return Err(BiextError::WeilPrecondition("(la, b) or (a, lb) is not in T".into()));
        }
        let first = self.psi(&la, b)?;
        let second = self.psi(a, &lb)?;
        Ok(self.n().sub(&first, &second))
    }

    /// The Weil pairing read off the partial group laws: the l-fold power of
    /// a point under each law, compared with the unit of that law.
    pub fn weil_pairing_from_fibers(
        &self,
        a: &ElA<T>,
        b: &ElB<T>,
        l: u32,
    ) -> Result<ElN<T, P>, BiextError> {
        if l == 0 {
            return Err(BiextError::WeilPrecondition("l must be positive".into()));
        }
        let u = self.point(self.n().zero(), a.clone(), b.clone())?;
        let mut p1 = u.clone();
        let mut p2 = u.clone();
        for _ in 1..l {
            p1 = self.add_first(&p1, &u)?;
            p2 = self.add_second(&p2, &u)?;
        }
        let e1 = self.unit_first(b.clone())?;
        let e2 = self.unit_second(a.clone())?;
        let d1 = self.difference(&p1, &e1)?;
        let d2 = self.difference(&p2, &e2)?;
        Ok(self.n().sub(&d2, &d1))
    }
}

#[cfg(test)]
mod tests {
    use super::toy::{integer_toy, IntegerToy};
    use super::*;
    use crate::abelian::{FgAbGroup, GroupElement};

    fn z4(v: i64) -> GroupElement {
        FgAbGroup::cyclic(4).element_i64(&[v]).unwrap()
    }

    fn toy() -> Biextension<IntegerToy, IntegerToy> {
        let (t, p) = integer_toy(3);
        Biextension::build(t, p, &AuditConfig::default()).unwrap()
    }

    #[test]
    fn weil_pairing_on_the_integer_toy() {
        let b = toy();
        assert_eq!(b.weil_pairing(&1, &1, 2).unwrap(), z4(2));
        assert_eq!(b.weil_pairing(&1, &2, 2).unwrap(), z4(0));
        assert_eq!(b.weil_pairing_from_fibers(&1, &1, 2).unwrap(), z4(2));
        // c = 1 also satisfies the overlap condition but gives the trivial pairing.
        let (t, p) = integer_toy(1);
        let b1 = Biextension::build(t, p, &AuditConfig::default()).unwrap();
        assert_eq!(b1.weil_pairing(&1, &1, 2).unwrap(), z4(0));
    }

    #[test]
    fn non_overlapping_constant_is_rejected_by_audit() {
        let (t, p) = integer_toy(2);
        let err = Biextension::build(t, p, &AuditConfig::default()).err().unwrap();
        assert!(matches!(err, BiextError::Audit { .. }), "{err}");
    }

    #[test]
    fn unit_and_group_law_on_trivial_base() {
        let b = toy();
        let x = b.point(z4(1), 0, 2).unwrap();
        let y = b.point(z4(3), 2, 4).unwrap();
        let s = b.add_first(&x, &y).unwrap();
        // Both over (0, 0): sum is the group law of N after transport.
        let y_at = b.transport(&y, &2, &2).unwrap();
        assert!(b.same_point(&s, &b.point(b.coefficients().add(&x.value, &y_at.value), 2, 2).unwrap()).unwrap());
        let e = b.unit_first(2).unwrap();
        assert!(b.same_point(&b.add_first(&x, &e).unwrap(), &x).unwrap());
    }

    #[test]
    fn mismatched_bases_are_errors() {
        let b = toy();
        let x = b.point(z4(0), 1, 0).unwrap();
        let y = b.point(z4(0), 1, 1).unwrap();
        assert!(matches!(b.add_first(&x, &y), Err(BiextError::BaseMismatch(_))));
        assert!(matches!(b.transport(&x, &0, &0), Err(BiextError::BaseMismatch(_))));
        assert!(matches!(b.weil_pairing(&1, &1, 0), Err(BiextError::WeilPrecondition(_))));
        assert!(matches!(b.psi(&1, &1), Err(BiextError::NotInS(_))));
    }
}
