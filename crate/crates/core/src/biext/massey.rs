//! Weil pairings from a differential graded algebra with a pushforward to `N`.
//!
//! For a complex `A^0 → … → A^d` with a product and `π: A^d → N`, the
//! pairing `φ_i(x, y) = π(x·y)` between `A` and its shift `B^j = A^{j+d}`
//! gives a chain pairing, and the Weil pairing of `l`-torsion classes
//! reduces to `π(ã·b) − (-1)^p π(a·b̃)` where `dã = l·a` and `d b̃ = l·b`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::chain::{ChainPairing, PairingTables};
use super::BiextError;
use crate::abelian::{AbelianError, BoundedComplex, FgAbGroup, GroupElement};
use crate::group::AbGroup;

/// Structure constants: `products[(i, j)][s][t]` is `e_s · e_t ∈ A^{i+j}`
/// for generators `e_s ∈ A^i`, `e_t ∈ A^j`. Missing pairs multiply to zero.
pub type ProductTables = BTreeMap<(i64, i64), Vec<Vec<Vec<BigInt>>>>;

#[derive(Clone, Debug)]
pub struct DgAlgebra {
    complex: BoundedComplex,
    products: ProductTables,
    /// Image in `N` of each generator of `A^d`.
    pushforward: Vec<GroupElement>,
    n: FgAbGroup,
}

impl DgAlgebra {
    /// Checks shapes, the Leibniz rule on generators, and that `π(x·y)`
    /// satisfies the chain-map condition.
    pub fn new(
        complex: BoundedComplex,
        products: ProductTables,
        pushforward: Vec<GroupElement>,
        n: FgAbGroup,
    ) -> Result<Self, BiextError> {
        let shape = |msg: String| BiextError::Abelian(AbelianError::Shape(msg));
        if complex.lo() != 0 {
            return Err(shape("the algebra must start in degree 0".into()));
        }
        for (&(i, j), t) in &products {
            let (ri, rj, rk) = (complex.rank(i), complex.rank(j), complex.rank(i + j));
            let ok = i + j <= complex.hi()
                && t.len() == ri
                && t.iter().all(|row| row.len() == rj && row.iter().all(|v| v.len() == rk));
            if !ok {
                return Err(shape(format!(
                    "product table A^{i} x A^{j} must be {ri}x{rj} vectors of length {rk}"
                )));
            }
        }
        let d = complex.hi();
        if pushforward.len() != complex.rank(d) {
            return Err(shape(format!(
                "pushforward needs {} images, got {}",
                complex.rank(d),
                pushforward.len()
            )));
        }
        let pushforward = pushforward
            .into_iter()
            .map(|g| n.element(g.0))
            .collect::<Result<Vec<_>, _>>()?;
        let alg = DgAlgebra {
            complex,
            products,
            pushforward,
            n,
        };
        alg.check_leibniz()?;
        alg.chain_pairing()?;
        Ok(alg)
    }

    pub fn complex(&self) -> &BoundedComplex {
        &self.complex
    }

    pub fn coefficients(&self) -> &FgAbGroup {
        &self.n
    }

    /// Top degree `d`.
    pub fn top(&self) -> i64 {
        self.complex.hi()
    }

    /// `x·y` for `x ∈ A^i`, `y ∈ A^j`.
    pub fn multiply(&self, i: i64, x: &[BigInt], j: i64, y: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.complex.rank(i + j)];
        let Some(t) = self.products.get(&(i, j)) else {
            return out;
        };
        for (s, xs) in x.iter().enumerate() {
            for (u, yu) in y.iter().enumerate() {
                if xs.is_zero() || yu.is_zero() {
                    continue;
                }
                let c = xs * yu;
                for (o, v) in out.iter_mut().zip(&t[s][u]) {
                    *o += v * &c;
                }
            }
        }
        out
    }

    /// `π(x)` for `x ∈ A^d`.
    pub fn push(&self, x: &[BigInt]) -> GroupElement {
        let mut acc = self.n.zero();
        for (c, g) in x.iter().zip(&self.pushforward) {
            acc = self.n.add(&acc, &GroupElement(g.0.iter().map(|v| v * c).collect()));
        }
        acc
    }

    /// `d(xy) = dx·y + (-1)^i x·dy` on generators, wherever `xy` has a successor degree.
    pub fn check_leibniz(&self) -> Result<(), BiextError> {
        let d = self.top();
        for i in 0..=d {
            for j in 0..=d - i {
                if i + j + 1 > d {
                    continue;
                }
                let (ri, rj) = (self.complex.rank(i), self.complex.rank(j));
                for s in 0..ri {
                    let x = unit(ri, s);
                    for t in 0..rj {
                        let y = unit(rj, t);
                        let lhs = self.complex.apply_d(i + j, &self.multiply(i, &x, j, &y));
                        let a = self.multiply(i + 1, &self.complex.apply_d(i, &x), j, &y);
                        let b = self.multiply(i, &x, j + 1, &self.complex.apply_d(j, &y));
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        let rhs: Vec<BigInt> = a.iter().zip(&b).map(|(p, q)| p + q * sign).collect();
                        if lhs != rhs {
                            return Err(BiextError::Multiplication(format!(
                                "Leibniz rule fails for generators {s} of A^{i} and {t} of A^{j}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The pairing `φ_i(x, y) = π(x·y)` between `A` and `B^j = A^{j+d}`.
    pub fn chain_pairing(&self) -> Result<ChainPairing, BiextError> {
        let d = self.top();
        let mut tables = PairingTables::new();
        for i in 0..=d {
            let (ri, rj) = (self.complex.rank(i), self.complex.rank(d - i));
            let t: Vec<Vec<GroupElement>> = (0..ri)
                .map(|s| {
                    (0..rj)
                        .map(|u| self.push(&self.multiply(i, &unit(ri, s), d - i, &unit(rj, u))))
                        .collect()
                })
                .collect();
            tables.insert(i, t);
        }
        ChainPairing::new(
            self.complex.clone(),
            self.complex.reindexed(d),
            self.n.clone(),
            tables,
        )
        .map_err(|e| match e {
            BiextError::ChainCondition { .. } => {
                BiextError::Multiplication(format!("induced pairing is not a chain map: {e}"))
            }
            other => other,
        })
    }

    /// `π(ã·b) − (-1)^p π(a·b̃)` for cocycles `a ∈ A^p`, `b ∈ A^{d+1-p}`
    /// with `dã = l·a` and `d b̃ = l·b`.
    pub fn massey_weil(
        &self,
        p: i64,
        a: &[BigInt],
        b: &[BigInt],
        a_tilde: &[BigInt],
        b_tilde: &[BigInt],
        l: u32,
    ) -> Result<GroupElement, BiextError> {
        let d = self.top();
        let q = d + 1 - p;
        let c = &self.complex;
        let lens = [
            (a.len(), c.rank(p), "a"),
            (b.len(), c.rank(q), "b"),
            (a_tilde.len(), c.rank(p - 1), "ã"),
            (b_tilde.len(), c.rank(q - 1), "b̃"),
        ];
        for (got, want, name) in lens {
            if got != want {
                return Err(BiextError::Abelian(AbelianError::Shape(format!(
                    "{name} has length {got}, expected {want}"
                ))));
            }
        }
        for (x, deg, name) in [(a, p, "a"), (b, q, "b")] {
            if c.apply_d(deg, x).iter().any(|v| !v.is_zero()) {
                return Err(BiextError::BoundingChain(format!("{name} is not a cocycle")));
            }
        }
        let scaled = |x: &[BigInt]| -> Vec<BigInt> { x.iter().map(|v| v * l).collect() };
        if c.apply_d(p - 1, a_tilde) != scaled(a) {
            return Err(BiextError::BoundingChain(format!("dã ≠ {l}·a")));
        }
        if c.apply_d(q - 1, b_tilde) != scaled(b) {
            return Err(BiextError::BoundingChain(format!("d b̃ ≠ {l}·b")));
        }
        let first = self.push(&self.multiply(p - 1, a_tilde, q, b));
        let second = self.push(&self.multiply(p, a, q - 1, b_tilde));
        Ok(if p.rem_euclid(2) == 0 {
            self.n.sub(&first, &second)
        } else {
            self.n.add(&first, &second)
        })
    }
}

fn unit(n: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::from(1);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biext::chain::biextension_from_chain_pairing;
    use crate::biext::toy::doubling_dg_algebra;
    use crate::biext::AuditConfig;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn toy_massey_value_is_two() {
        let alg = doubling_dg_algebra(false).unwrap();
        let w = alg.massey_weil(1, &big(&[1]), &big(&[1]), &big(&[1]), &big(&[1]), 2).unwrap();
        assert_eq!(w, FgAbGroup::cyclic(4).element_i64(&[2]).unwrap());
    }

    #[test]
    fn agrees_with_chain_biextension() {
        let alg = doubling_dg_algebra(false).unwrap();
        let cp = alg.chain_pairing().unwrap();
        let bx = biextension_from_chain_pairing(&cp, 1, &AuditConfig::default()).unwrap();
        let w = bx.weil_pairing(&big(&[1]), &big(&[1]), 2).unwrap();
        assert_eq!(w, FgAbGroup::cyclic(4).element_i64(&[2]).unwrap());
    }

    #[test]
    fn lift_choice_does_not_matter() {
        let alg = doubling_dg_algebra(true).unwrap();
        let base = alg.massey_weil(1, &big(&[1]), &big(&[1]), &big(&[1, 0]), &big(&[1, 0]), 2).unwrap();
        for k in -3..=3 {
            let w = alg.massey_weil(1, &big(&[1]), &big(&[1]), &big(&[1, k]), &big(&[1, -k]), 2).unwrap();
            assert_eq!(w, base);
        }
    }

    #[test]
    fn bad_bounding_chain_is_rejected() {
        let alg = doubling_dg_algebra(false).unwrap();
        let err = alg.massey_weil(1, &big(&[1]), &big(&[1]), &big(&[2]), &big(&[1]), 2).unwrap_err();
        assert!(matches!(err, BiextError::BoundingChain(_)));
    }
}
