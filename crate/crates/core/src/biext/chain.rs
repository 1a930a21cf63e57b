//! Biextensions attached to a pairing of bounded complexes.
//!
//! A pairing `φ_i: A^i ⊗ B^{-i} → N` satisfying
//! `φ_{i+1}(da, b) + (-1)^i φ_i(a, db) = 0` induces a biextension of
//! `H^p(A)' × H^{1-p}(B)'` by `N`, where the primed groups are the
//! annihilators of `H^{-p}(B)` and `H^{p-1}(A)` respectively.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

use super::{AuditConfig, Biextension, BiextError, Bisubgroup, Trivialization};
use crate::abelian::{
    annihilator_subgroup, homology, BoundedComplex, FgAbGroup, GroupElement, Homology, Subgroup,
};
use crate::group::AbGroup;
use crate::SeededRng;

/// Free abelian group `Z^rank` of cochains in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochains {
    rank: usize,
}

impl Cochains {
    pub fn new(rank: usize) -> Self {
        Cochains { rank }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl AbGroup for Cochains {
    type Elem = Vec<BigInt>;

    fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.rank]
    }

    fn add(&self, x: &Vec<BigInt>, y: &Vec<BigInt>) -> Vec<BigInt> {
        x.iter().zip(y).map(|(a, b)| a + b).collect()
    }

    fn neg(&self, x: &Vec<BigInt>) -> Vec<BigInt> {
        x.iter().map(|a| -a).collect()
    }

    fn same(&self, x: &Vec<BigInt>, y: &Vec<BigInt>) -> bool {
        x == y
    }
}

/// Pairing tables: `tables[i][s][t] = φ_i(e_s, f_t)` for generators
/// `e_s` of `A^i` and `f_t` of `B^{-i}`. Missing degrees pair to zero.
pub type PairingTables = BTreeMap<i64, Vec<Vec<GroupElement>>>;

/// A pairing of complexes into a finitely generated abelian group.
#[derive(Clone, Debug)]
pub struct ChainPairing {
    a: BoundedComplex,
    b: BoundedComplex,
    n: FgAbGroup,
    tables: PairingTables,
}

impl ChainPairing {
    /// Validates table shapes and the chain-map condition.
    pub fn new(
        a: BoundedComplex,
        b: BoundedComplex,
        n: FgAbGroup,
        tables: PairingTables,
    ) -> Result<Self, BiextError> {
        for (&i, t) in &tables {
            let (ra, rb) = (a.rank(i), b.rank(-i));
            if t.len() != ra || t.iter().any(|row| row.len() != rb) {
                return Err(BiextError::Abelian(crate::abelian::AbelianError::Shape(format!(
                    "pairing table in degree {i} must be {ra}x{rb}"
                ))));
            }
        }
        let cp = ChainPairing { a, b, n, tables };
        cp.check_chain_condition()?;
        Ok(cp)
    }

    pub fn complex_a(&self) -> &BoundedComplex {
        &self.a
    }

    pub fn complex_b(&self) -> &BoundedComplex {
        &self.b
    }

    pub fn coefficients(&self) -> &FgAbGroup {
        &self.n
    }

    /// `φ_i(x, y)` for `x ∈ A^i`, `y ∈ B^{-i}`.
    pub fn pair(&self, i: i64, x: &[BigInt], y: &[BigInt]) -> GroupElement {
        let Some(t) = self.tables.get(&i) else {
            return self.n.zero();
        };
        let mut acc = self.n.zero();
        for (s, xs) in x.iter().enumerate() {
            if xs.is_zero() {
                continue;
            }
            for (u, yu) in y.iter().enumerate() {
                if yu.is_zero() {
                    continue;
                }
                let c = xs * yu;
                let term = GroupElement(t[s][u].0.iter().map(|v| v * &c).collect());
                acc = self.n.add(&acc, &term);
            }
        }
        acc
    }

    /// Checks `φ_{i+1}(d e_s, f_t) + (-1)^i φ_i(e_s, d f_t) = 0` on all generator pairs.
    pub fn check_chain_condition(&self) -> Result<(), BiextError> {
        for i in self.a.lo()..=self.a.hi() {
            let (ra, rb) = (self.a.rank(i), self.b.rank(-i - 1));
            for s in 0..ra {
                let mut es = vec![BigInt::zero(); ra];
                es[s] = BigInt::from(1);
                let da = self.a.apply_d(i, &es);
                for t in 0..rb {
                    let mut ft = vec![BigInt::zero(); rb];
                    ft[t] = BigInt::from(1);
                    let db = self.b.apply_d(-i - 1, &ft);
                    let first = self.pair(i + 1, &da, &ft);
                    let second = self.pair(i, &es, &db);
                    let second = if i.rem_euclid(2) == 0 { second } else { self.n.neg(&second) };
                    let v = self.n.add(&first, &second);
                    if !self.n.is_zero(&v) {
                        return Err(BiextError::ChainCondition {
                            degree: i,
                            a_gen: s,
                            b_gen: t,
                            value: format!("{v:?}"),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// The pairing induced on cohomology, `H^i(A) × H^{-i}(B) → N`.
    fn annihilator(&self, h: &Homology, k: Option<&Homology>, i: i64, a_side: bool) -> Result<Subgroup, BiextError> {
        let Some(k) = k else {
            return Ok(whole(&h.group));
        };
        let pairing = |x: &GroupElement, y: &GroupElement| {
            if a_side {
                self.pair(i, &h.lift(x), &k.lift(y))
            } else {
                self.pair(i, &k.lift(y), &h.lift(x))
            }
        };
        Ok(annihilator_subgroup(pairing, &h.group, &k.group, &self.n)?)
    }
}

fn whole(g: &FgAbGroup) -> Subgroup {
    Subgroup {
        group: g.clone(),
        generators: (0..g.ngens()).map(|i| g.basis(i)).collect(),
    }
}

fn homology_in_range(c: &BoundedComplex, p: i64) -> Result<Option<Homology>, BiextError> {
    if p < c.lo() || p > c.hi() {
        Ok(None)
    } else {
        Ok(Some(homology(c, p)?))
    }
}

/// `T = Z^p(A)' × Z^{1-p}(B)'` with its quotient maps to cohomology.
#[derive(Clone, Debug)]
pub struct ChainBisubgroup {
    p: i64,
    a: BoundedComplex,
    b: BoundedComplex,
    ga: Cochains,
    gb: Cochains,
    ha: Homology,
    hb: Homology,
    prime_a: Subgroup,
    prime_b: Subgroup,
    exhaustive_limit: u64,
}

impl ChainBisubgroup {
    pub fn homology_a(&self) -> &Homology {
        &self.ha
    }

    pub fn homology_b(&self) -> &Homology {
        &self.hb
    }

    /// `H^p(A)'` inside `H^p(A)`.
    pub fn prime_a(&self) -> &Subgroup {
        &self.prime_a
    }

    /// `H^{1-p}(B)'` inside `H^{1-p}(B)`.
    pub fn prime_b(&self) -> &Subgroup {
        &self.prime_b
    }

    pub fn degree(&self) -> i64 {
        self.p
    }
}

fn random_vec(rank: usize, rng: &mut SeededRng) -> Vec<BigInt> {
    (0..rank).map(|_| BigInt::from(rng.gen_range(-3i64..=3))).collect()
}

fn random_in(sub: &Subgroup, parent: &FgAbGroup, rng: &mut SeededRng) -> GroupElement {
    let coords: Vec<BigInt> = (0..sub.group.ngens())
        .map(|_| BigInt::from(rng.gen_range(-5i64..=5)))
        .collect();
    let x = sub.group.element(coords).expect("coordinate count matches");
    sub.include(parent, &x)
}

impl ChainBisubgroup {
    fn boundary_a(&self, rng: &mut SeededRng) -> Vec<BigInt> {
        self.a.apply_d(self.p - 1, &random_vec(self.a.rank(self.p - 1), rng))
    }

    fn boundary_b(&self, rng: &mut SeededRng) -> Vec<BigInt> {
        self.b.apply_d(-self.p, &random_vec(self.b.rank(-self.p), rng))
    }

    fn member(h: &Homology, prime: &Subgroup, x: &[BigInt]) -> bool {
        h.is_cocycle(x)
            && h
                .class_of(x)
                .map(|c| prime.contains(&h.group, &c))
                .unwrap_or(false)
    }
}

impl Bisubgroup for ChainBisubgroup {
    type A = Cochains;
    type B = Cochains;
    type QA = FgAbGroup;
    type QB = FgAbGroup;

    fn group_a(&self) -> &Cochains {
        &self.ga
    }

    fn group_b(&self) -> &Cochains {
        &self.gb
    }

    fn quotient_a(&self) -> &FgAbGroup {
        &self.ha.group
    }

    fn quotient_b(&self) -> &FgAbGroup {
        &self.hb.group
    }

    fn contains(&self, a: &Vec<BigInt>, b: &Vec<BigInt>) -> bool {
        Self::member(&self.ha, &self.prime_a, a) && Self::member(&self.hb, &self.prime_b, b)
    }

    fn project_a(&self, a: &Vec<BigInt>) -> GroupElement {
        self.ha.class_of(a).unwrap_or_else(|_| self.ha.group.zero())
    }

    fn project_b(&self, b: &Vec<BigInt>) -> GroupElement {
        self.hb.class_of(b).unwrap_or_else(|_| self.hb.group.zero())
    }

    fn section(
        &self,
        alpha: &GroupElement,
        beta: &GroupElement,
        rng: &mut SeededRng,
    ) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
        if !self.prime_a.contains(&self.ha.group, alpha) || !self.prime_b.contains(&self.hb.group, beta) {
            return None;
        }
        let a = self.ga.add(&self.ha.lift(alpha), &self.boundary_a(rng));
        let b = self.gb.add(&self.hb.lift(beta), &self.boundary_b(rng));
        Some((a, b))
    }

    fn sample_a(&self, rng: &mut SeededRng) -> Vec<BigInt> {
        let c = random_in(&self.prime_a, &self.ha.group, rng);
        self.ga.add(&self.ha.lift(&c), &self.boundary_a(rng))
    }

    fn sample_b(&self, rng: &mut SeededRng) -> Vec<BigInt> {
        let c = random_in(&self.prime_b, &self.hb.group, rng);
        self.gb.add(&self.hb.lift(&c), &self.boundary_b(rng))
    }

    fn sample_kernel_a(&self, rng: &mut SeededRng) -> Vec<BigInt> {
        self.boundary_a(rng)
    }

    fn sample_kernel_b(&self, rng: &mut SeededRng) -> Vec<BigInt> {
        self.boundary_b(rng)
    }

    fn quotient_elements(&self) -> Option<(Vec<GroupElement>, Vec<GroupElement>)> {
        let lim = self.exhaustive_limit;
        Some((
            self.prime_a.parent_elements(&self.ha.group, lim)?,
            self.prime_b.parent_elements(&self.hb.group, lim)?,
        ))
    }
}

/// `ψ(da', b) = φ_{p-1}(a', b)` and `ψ(a, db') = (-1)^p φ_p(a, b')`.
#[derive(Clone, Debug)]
pub struct ChainTrivialization {
    p: i64,
    pairing: ChainPairing,
    ha: Homology,
    hb: Homology,
}

impl Trivialization<Vec<BigInt>, Vec<BigInt>> for ChainTrivialization {
    type N = FgAbGroup;

    fn coefficients(&self) -> &FgAbGroup {
        &self.pairing.n
    }

    fn psi(&self, a: &Vec<BigInt>, b: &Vec<BigInt>) -> Result<GroupElement, BiextError> {
        if let Some(a0) = self.ha.bounding_chain(a) {
            return Ok(self.pairing.pair(self.p - 1, &a0, b));
        }
        if let Some(b0) = self.hb.bounding_chain(b) {
            let v = self.pairing.pair(self.p, a, &b0);
            return Ok(if self.p.rem_euclid(2) == 0 { v } else { self.pairing.n.neg(&v) });
        }
        Err(BiextError::NotInS("neither cochain is a coboundary".into()))
    }
}

pub type ChainBiextension = Biextension<ChainBisubgroup, ChainTrivialization>;

/// The biextension of `H^p(A)' × H^{1-p}(B)'` by `N` defined by the pairing.
pub fn biextension_from_chain_pairing(
    cp: &ChainPairing,
    p: i64,
    audit: &AuditConfig,
) -> Result<ChainBiextension, BiextError> {
    let ha = homology(&cp.a, p)?;
    let hb = homology(&cp.b, 1 - p)?;
    // H^p(A)' pairs to zero with H^{-p}(B) under φ_p.
    let hb_dual = homology_in_range(&cp.b, -p)?;
    let prime_a = cp.annihilator(&ha, hb_dual.as_ref(), p, true)?;
    // H^{1-p}(B)' pairs to zero with H^{p-1}(A) under φ_{p-1}.
    let ha_dual = homology_in_range(&cp.a, p - 1)?;
    let prime_b = cp.annihilator(&hb, ha_dual.as_ref(), p - 1, false)?;
    let t = ChainBisubgroup {
        p,
        a: cp.a.clone(),
        b: cp.b.clone(),
        ga: Cochains::new(cp.a.rank(p)),
        gb: Cochains::new(cp.b.rank(1 - p)),
        ha: ha.clone(),
        hb: hb.clone(),
        prime_a,
        prime_b,
        exhaustive_limit: audit.exhaustive_limit,
    };
    let triv = ChainTrivialization {
        p,
        pairing: cp.clone(),
        ha,
        hb,
    };
    Biextension::build(t, triv, audit)
}
