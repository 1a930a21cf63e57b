use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::snf::{left_kernel, smith_normal_form, solve_integer};
use super::{AbelianError, IntMatrix};
use crate::group::AbGroup;

/// Element of an [`FgAbGroup`] in its normal-form basis.
///
/// Torsion coordinates come first, each reduced into `[0, d_i)`, followed by
/// the free coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(pub Vec<BigInt>);

impl GroupElement {
    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A finitely generated abelian group `Z^r ⊕ Z/d_1 ⊕ … ⊕ Z/d_t` with
/// `d_i | d_{i+1}` and every `d_i ≥ 2`.
///
/// The group remembers the presentation it was built from: elements given
/// in terms of the original generators can be converted with
/// [`FgAbGroup::from_generators`], and normal-form basis vectors can be
/// written back in the original generators with [`FgAbGroup::to_generators`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgAbGroup {
    torsion: Vec<BigInt>,
    rank: usize,
    /// original generators × normal basis; row i is the image of generator i.
    to_normal: IntMatrix,
    /// normal basis × original generators.
    from_normal: IntMatrix,
}

impl FgAbGroup {
    /// Cokernel of the relation matrix: one row per relation, one column per generator.
    pub fn from_relations(rels: &IntMatrix) -> Self {
        let n = rels.cols();
        let snf = smith_normal_form(rels);
        let diag = snf.diagonal();
        let mut torsion = Vec::new();
        let mut kept = Vec::new();
        for j in 0..n {
            let d = diag.get(j).cloned().unwrap_or_else(BigInt::zero);
            if d.is_one() {
                continue;
            }
            if d.is_zero() {
                continue;
            }
            torsion.push(d);
            kept.push(j);
        }
        let free: Vec<usize> = (0..n)
            .filter(|&j| diag.get(j).map_or(true, Zero::is_zero))
            .collect();
        let rank = free.len();
        kept.extend(free);
        let mut to_normal = IntMatrix::zeros(n, kept.len());
        let mut from_normal = IntMatrix::zeros(kept.len(), n);
        for (c, &j) in kept.iter().enumerate() {
            for i in 0..n {
                to_normal.set(i, c, snf.v.get(i, j).clone());
                from_normal.set(c, i, snf.v_inv.get(j, i).clone());
            }
        }
        FgAbGroup {
            torsion,
            rank,
            to_normal,
            from_normal,
        }
    }

    /// `Z^rank ⊕ ⊕ Z/d` for a list of moduli (any order, 0 = free, 1 dropped).
    pub fn from_moduli(moduli: &[i64]) -> Self {
        let n = moduli.len();
        let mut rels = IntMatrix::zeros(n, n);
        for (i, &d) in moduli.iter().enumerate() {
            rels.set(i, i, BigInt::from(d));
        }
        Self::from_relations(&rels)
    }

    pub fn free(rank: usize) -> Self {
        Self::from_relations(&IntMatrix::zeros(0, rank))
    }

    pub fn cyclic(order: i64) -> Self {
        Self::from_moduli(&[order])
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Number of normal-form basis elements (torsion then free).
    pub fn ngens(&self) -> usize {
        self.torsion.len() + self.rank
    }

    /// Number of generators of the presentation this group came from.
    pub fn presentation_gens(&self) -> usize {
        self.to_normal.rows()
    }

    /// Moduli of the normal-form coordinates, 0 for free coordinates.
    pub fn moduli(&self) -> Vec<BigInt> {
        let mut m = self.torsion.clone();
        m.extend(std::iter::repeat(BigInt::zero()).take(self.rank));
        m
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.torsion.iter().fold(BigInt::one(), |a, d| a * d))
    }

    pub fn is_trivial(&self) -> bool {
        self.ngens() == 0
    }

    /// Exponent of the torsion part (1 when there is none).
    pub fn exponent(&self) -> BigInt {
        self.torsion.last().cloned().unwrap_or_else(BigInt::one)
    }

    /// Reduces raw normal-form coordinates.
    pub fn element(&self, coords: Vec<BigInt>) -> Result<GroupElement, AbelianError> {
        if coords.len() != self.ngens() {
            return Err(AbelianError::Shape(format!(
                "element with {} coordinates in a group with {} generators",
                coords.len(),
                self.ngens()
            )));
        }
        Ok(self.reduce(coords))
    }

    pub fn element_i64(&self, coords: &[i64]) -> Result<GroupElement, AbelianError> {
        self.element(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn reduce(&self, mut coords: Vec<BigInt>) -> GroupElement {
        for (c, d) in coords.iter_mut().zip(&self.torsion) {
            *c = c.mod_floor(d);
        }
        GroupElement(coords)
    }

    /// The i-th normal-form basis element.
    pub fn basis(&self, i: usize) -> GroupElement {
        let mut v = vec![BigInt::zero(); self.ngens()];
        v[i] = BigInt::one();
        GroupElement(v)
    }

    /// Element given by coordinates over the presentation's original generators.
    pub fn from_generators(&self, x: &[BigInt]) -> Result<GroupElement, AbelianError> {
        if x.len() != self.presentation_gens() {
            return Err(AbelianError::Shape(format!(
                "{} coordinates for a presentation on {} generators",
                x.len(),
                self.presentation_gens()
            )));
        }
        Ok(self.reduce(self.to_normal.vec_mul(x)))
    }

    /// A representative of `x` over the original generators.
    pub fn to_generators(&self, x: &GroupElement) -> Vec<BigInt> {
        self.from_normal.vec_mul(&x.0)
    }

    /// Order of an element; `None` for elements of infinite order.
    pub fn element_order(&self, x: &GroupElement) -> Option<BigInt> {
        let t = self.torsion.len();
        if x.0[t..].iter().any(|c| !c.is_zero()) {
            return None;
        }
        let mut ord = BigInt::one();
        for (c, d) in x.0.iter().zip(&self.torsion) {
            let o = d / c.gcd(d);
            ord = ord.lcm(&o);
        }
        Some(ord)
    }

    /// All elements of a finite group, in lexicographic coordinate order.
    /// Returns `None` for infinite groups or when the order exceeds `limit`.
    pub fn elements(&self, limit: u64) -> Option<Vec<GroupElement>> {
        let order = self.order()?.to_u64()?;
        if order > limit {
            return None;
        }
        let mods: Vec<u64> = self.torsion.iter().map(|d| d.to_u64().unwrap()).collect();
        let mut out = Vec::with_capacity(order as usize);
        let mut cur = vec![0u64; mods.len()];
        loop {
            out.push(GroupElement(cur.iter().map(|&c| BigInt::from(c)).collect()));
            let mut i = mods.len();
            loop {
                if i == 0 {
                    return Some(out);
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < mods[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    /// Direct sum `self ⊕ other`, coordinates concatenated and renormalized.
    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        let mut moduli: Vec<BigInt> = self.moduli();
        moduli.extend(other.moduli());
        let n = moduli.len();
        let mut rels = IntMatrix::zeros(n, n);
        for (i, d) in moduli.into_iter().enumerate() {
            rels.set(i, i, d);
        }
        FgAbGroup::from_relations(&rels)
    }
}

impl AbGroup for FgAbGroup {
    type Elem = GroupElement;

    fn zero(&self) -> GroupElement {
        GroupElement(vec![BigInt::zero(); self.ngens()])
    }

    fn add(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        self.reduce(x.0.iter().zip(&y.0).map(|(a, b)| a + b).collect())
    }

    fn neg(&self, x: &GroupElement) -> GroupElement {
        self.reduce(x.0.iter().map(|a| -a).collect())
    }

    fn same(&self, x: &GroupElement, y: &GroupElement) -> bool {
        x == y
    }

    fn mul_int(&self, x: &GroupElement, k: i64) -> GroupElement {
        let k = BigInt::from(k);
        self.reduce(x.0.iter().map(|a| a * &k).collect())
    }
}

/// A subgroup together with its embedding into the parent group.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub group: FgAbGroup,
    /// Image in the parent of each normal-form basis element of `group`.
    pub generators: Vec<GroupElement>,
}

impl Subgroup {
    /// The embedding applied to an element of the subgroup.
    pub fn include(&self, parent: &FgAbGroup, x: &GroupElement) -> GroupElement {
        self.generators
            .iter()
            .zip(&x.0)
            .fold(parent.zero(), |acc, (g, c)| {
                let term = GroupElement(g.0.iter().map(|a| a * c).collect());
                parent.add(&acc, &term)
            })
    }

    /// Whether a parent element lies in the subgroup.
    pub fn contains(&self, parent: &FgAbGroup, x: &GroupElement) -> bool {
        let width = parent.ngens();
        let mut cols: Vec<Vec<BigInt>> = self.generators.iter().map(|g| g.0.clone()).collect();
        for (i, d) in parent.torsion.iter().enumerate() {
            let mut e = vec![BigInt::zero(); width];
            e[i] = d.clone();
            cols.push(e);
        }
        let m = IntMatrix::from_columns(&cols, width);
        solve_integer(&m, &x.0).is_some()
    }

    /// All parent elements of a finite subgroup.
    pub fn parent_elements(&self, parent: &FgAbGroup, limit: u64) -> Option<Vec<GroupElement>> {
        let mut v: Vec<GroupElement> = self
            .group
            .elements(limit)?
            .iter()
            .map(|x| self.include(parent, x))
            .collect();
        v.sort();
        Some(v)
    }
}

/// The subgroup of `parent` generated by `elems`.
pub fn subgroup_generated(parent: &FgAbGroup, elems: &[GroupElement]) -> Subgroup {
    let m = elems.len();
    let t = parent.torsion.len();
    let width = parent.ngens();
    // Relations among the generators: c with Σ c_k x_k ∈ Σ Z d_i e_i.
    let mut stacked = IntMatrix::zeros(m + t, width);
    for (k, x) in elems.iter().enumerate() {
        for (j, c) in x.0.iter().enumerate() {
            stacked.set(k, j, c.clone());
        }
    }
    for (i, d) in parent.torsion.iter().enumerate() {
        stacked.set(m + i, i, d.clone());
    }
    let rels: Vec<Vec<BigInt>> = left_kernel(&stacked)
        .into_iter()
        .map(|v| v[..m].to_vec())
        .collect();
    let rels = IntMatrix::from_big_rows(rels, m).expect("relation width");
    let group = FgAbGroup::from_relations(&rels);
    let generators = (0..group.ngens())
        .map(|i| {
            let combo = group.to_generators(&group.basis(i));
            combo
                .iter()
                .zip(elems)
                .fold(parent.zero(), |acc, (c, x)| {
                    let term = GroupElement(x.0.iter().map(|a| a * c).collect());
                    parent.add(&acc, &term)
                })
        })
        .collect();
    Subgroup { group, generators }
}

/// Kernel of the homomorphism from `source` sending the i-th normal-form
/// basis element to `images[i]`, a coordinate vector in a target whose
/// coordinates are taken modulo `target_moduli` (0 = free).
///
/// Fails when the images are incompatible with the torsion of `source`,
/// i.e. the assignment does not define a homomorphism.
pub fn kernel_of_map(
    source: &FgAbGroup,
    images: &[Vec<BigInt>],
    target_moduli: &[BigInt],
) -> Result<Subgroup, AbelianError> {
    let n = source.ngens();
    let w = target_moduli.len();
    if images.len() != n || images.iter().any(|v| v.len() != w) {
        return Err(AbelianError::Shape("image table does not match source/target".into()));
    }
    let in_target_lattice = |v: &[BigInt]| {
        v.iter()
            .zip(target_moduli)
            .all(|(c, d)| if d.is_zero() { c.is_zero() } else { c.is_multiple_of(d) })
    };
    for (i, d) in source.torsion.iter().enumerate() {
        let scaled: Vec<BigInt> = images[i].iter().map(|c| c * d).collect();
        if !in_target_lattice(&scaled) {
            return Err(AbelianError::NotHomomorphism(format!(
                "generator {i} of order {d} maps to {:?}, whose {d}-multiple is nonzero",
                images[i]
            )));
        }
    }
    let nonzero_moduli: Vec<(usize, &BigInt)> = target_moduli
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.is_zero())
        .collect();
    let mut stacked = IntMatrix::zeros(n + nonzero_moduli.len(), w);
    for (i, img) in images.iter().enumerate() {
        for (j, c) in img.iter().enumerate() {
            stacked.set(i, j, c.clone());
        }
    }
    for (r, (j, d)) in nonzero_moduli.iter().enumerate() {
        stacked.set(n + r, *j, (*d).clone());
    }
    let elems: Vec<GroupElement> = left_kernel(&stacked)
        .into_iter()
        .map(|v| source.reduce(v[..n].to_vec()))
        .collect();
    Ok(subgroup_generated(source, &elems))
}

/// The l-torsion subgroup `{a : l·a = 0}`.
pub fn l_torsion(g: &FgAbGroup, l: u64) -> Result<Subgroup, AbelianError> {
    if l == 0 {
        return Err(AbelianError::InvalidArgument("l must be positive".into()));
    }
    let l = BigInt::from(l);
    let images: Vec<Vec<BigInt>> = (0..g.ngens())
        .map(|i| g.basis(i).0.iter().map(|c| c * &l).collect())
        .collect();
    kernel_of_map(g, &images, &g.moduli())
}

/// `A ⊗ B`, presented on the products of normal-form generators.
pub fn tensor(a: &FgAbGroup, b: &FgAbGroup) -> FgAbGroup {
    let (ma, mb) = (a.moduli(), b.moduli());
    let n = ma.len() * mb.len();
    let mut rels = Vec::new();
    for (i, da) in ma.iter().enumerate() {
        for (j, db) in mb.iter().enumerate() {
            let idx = i * mb.len() + j;
            for d in [da, db] {
                if !d.is_zero() {
                    let mut r = vec![BigInt::zero(); n];
                    r[idx] = d.clone();
                    rels.push(r);
                }
            }
        }
    }
    FgAbGroup::from_relations(&IntMatrix::from_big_rows(rels, n).expect("tensor relations"))
}

/// The subgroup of `h` annihilating all of `k` under a bilinear map into `n`.
///
/// Only generator pairs are evaluated. The map is rejected when it is not
/// compatible with the torsion of `h` or `k`, or not additive on sums of
/// generator pairs.
pub fn annihilator_subgroup<F>(
    pairing: F,
    h: &FgAbGroup,
    k: &FgAbGroup,
    n: &FgAbGroup,
) -> Result<Subgroup, AbelianError>
where
    F: Fn(&GroupElement, &GroupElement) -> GroupElement,
{
    let table: Vec<Vec<GroupElement>> = (0..h.ngens())
        .map(|i| (0..k.ngens()).map(|j| pairing(&h.basis(i), &k.basis(j))).collect())
        .collect();
    for (i, row) in table.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if let Some(d) = h.torsion.get(i) {
                let d = d.to_i64().ok_or_else(|| AbelianError::InvalidArgument("modulus too large".into()))?;
                if !n.mul_int(v, d).0.iter().all(Zero::is_zero) {
                    return Err(AbelianError::NotBilinear(format!(
                        "pairing(h{i}, k{j}) = {v:?} is not killed by the order {d} of h{i}"
                    )));
                }
            }
            if let Some(d) = k.torsion.get(j) {
                let d = d.to_i64().ok_or_else(|| AbelianError::InvalidArgument("modulus too large".into()))?;
                if !n.mul_int(v, d).0.iter().all(Zero::is_zero) {
                    return Err(AbelianError::NotBilinear(format!(
                        "pairing(h{i}, k{j}) = {v:?} is not killed by the order {d} of k{j}"
                    )));
                }
            }
        }
    }
    // Additivity on pairs of generators in each slot.
    for i in 0..h.ngens() {
        for i2 in 0..h.ngens() {
            let hs = h.add(&h.basis(i), &h.basis(i2));
            for j in 0..k.ngens() {
                let lhs = pairing(&hs, &k.basis(j));
                let rhs = n.add(&table[i][j], &table[i2][j]);
                if lhs != rhs {
                    return Err(AbelianError::NotBilinear(format!(
                        "pairing(h{i} + h{i2}, k{j}) = {lhs:?} but the sum of values is {rhs:?}"
                    )));
                }
            }
        }
    }
    for j in 0..k.ngens() {
        for j2 in 0..k.ngens() {
            let ks = k.add(&k.basis(j), &k.basis(j2));
            for i in 0..h.ngens() {
                let lhs = pairing(&h.basis(i), &ks);
                let rhs = n.add(&table[i][j], &table[i][j2]);
                if lhs != rhs {
                    return Err(AbelianError::NotBilinear(format!(
                        "pairing(h{i}, k{j} + k{j2}) = {lhs:?} but the sum of values is {rhs:?}"
                    )));
                }
            }
        }
    }
    let nm = n.moduli();
    let mut target_moduli = Vec::new();
    for _ in 0..k.ngens() {
        target_moduli.extend(nm.iter().cloned());
    }
    let images: Vec<Vec<BigInt>> = table
        .iter()
        .map(|row| row.iter().flat_map(|v| v.0.iter().cloned()).collect())
        .collect();
    kernel_of_map(h, &images, &target_moduli)
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

pub fn is_zero_element(x: &GroupElement) -> bool {
    x.0.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn relations_examples() {
        let g = FgAbGroup::from_relations(&IntMatrix::from_rows(&[[2]]));
        assert_eq!((g.rank(), g.torsion()), (0, &big(&[2])[..]));
        let g = FgAbGroup::from_relations(&IntMatrix::from_rows(&[[2, 0], [0, 3]]));
        assert_eq!((g.rank(), g.torsion()), (0, &big(&[6])[..]));
        let g = FgAbGroup::from_relations(&IntMatrix::zeros(0, 2));
        assert_eq!((g.rank(), g.torsion().len()), (2, 0));
    }

    #[test]
    fn presentation_witness_round_trips() {
        let rels = IntMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
        let g = FgAbGroup::from_relations(&rels);
        // Relations map to zero.
        for i in 0..rels.rows() {
            assert!(is_zero_element(&g.from_generators(&rels.row(i)).unwrap()));
        }
        // Normal basis written in generators maps back to itself.
        for i in 0..g.ngens() {
            let b = g.basis(i);
            assert_eq!(g.from_generators(&g.to_generators(&b)).unwrap(), b);
        }
    }

    /// Brute-force count of l-torsion in a group of the form ⊕ Z/m_i.
    fn torsion_count_oracle(moduli: &[u64], l: u64) -> u64 {
        moduli
            .iter()
            .map(|&m| (0..m).filter(|x| (x * l) % m == 0).count() as u64)
            .product()
    }

    #[test]
    fn l_torsion_examples() {
        let z = FgAbGroup::free(1);
        assert!(l_torsion(&z, 5).unwrap().group.is_trivial());

        // Z/6, l = 3: {0, 2, 4}, generated by 2.
        let g = FgAbGroup::cyclic(6);
        let sub = l_torsion(&g, 3).unwrap();
        assert_eq!(sub.group.torsion(), &big(&[3])[..]);
        let elems = sub.parent_elements(&g, 100).unwrap();
        assert_eq!(elems, vec![g.element_i64(&[0]).unwrap(), g.element_i64(&[2]).unwrap(), g.element_i64(&[4]).unwrap()]);

        // Z ⊕ Z/4, l = 2: {0, 2·t}.
        let g = FgAbGroup::from_moduli(&[0, 4]);
        let sub = l_torsion(&g, 2).unwrap();
        assert_eq!(sub.group.torsion(), &big(&[2])[..]);
        assert_eq!(sub.generators, vec![g.element_i64(&[2, 0]).unwrap()]);
    }

    #[test]
    fn l_torsion_matches_enumeration() {
        for moduli in [vec![2u64, 4, 8], vec![3, 9], vec![6, 10, 15], vec![12, 18]] {
            let g = FgAbGroup::from_moduli(&moduli.iter().map(|&m| m as i64).collect::<Vec<_>>());
            for l in 1..=12u64 {
                let sub = l_torsion(&g, l).unwrap();
                let order = sub.group.order().unwrap();
                assert_eq!(order, BigInt::from(torsion_count_oracle(&moduli, l)));
                assert_eq!(l % sub.group.exponent().to_u64().unwrap(), 0);
            }
        }
    }

    #[test]
    fn tensor_examples() {
        let t = tensor(&FgAbGroup::free(1), &FgAbGroup::cyclic(3));
        assert_eq!((t.rank(), t.torsion()), (0, &big(&[3])[..]));
        let t = tensor(&FgAbGroup::cyclic(4), &FgAbGroup::cyclic(6));
        assert_eq!(t.torsion(), &big(&[2])[..]);
        let t = tensor(&FgAbGroup::free(2), &FgAbGroup::cyclic(2));
        assert_eq!(t.torsion(), &big(&[2, 2])[..]);
    }

    #[test]
    fn annihilator_examples() {
        let z2 = FgAbGroup::cyclic(2);
        let zero = |_: &GroupElement, _: &GroupElement| z2.zero();
        let sub = annihilator_subgroup(zero, &z2, &z2, &z2).unwrap();
        assert_eq!(sub.group.order(), Some(BigInt::from(2)));

        let mult = |x: &GroupElement, y: &GroupElement| {
            z2.element(vec![&x.0[0] * &y.0[0]]).unwrap()
        };
        let sub = annihilator_subgroup(mult, &z2, &z2, &z2).unwrap();
        assert!(sub.group.is_trivial());

        // Z/4 × Z/2 → Z/4, (x, y) ↦ 2xy: enumeration gives {0, 2}.
        let z4 = FgAbGroup::cyclic(4);
        let pair = |x: &GroupElement, y: &GroupElement| {
            z4.element(vec![BigInt::from(2) * &x.0[0] * &y.0[0]]).unwrap()
        };
        let sub = annihilator_subgroup(pair, &z4, &z2, &z4).unwrap();
        let elems = sub.parent_elements(&z4, 100).unwrap();
        let oracle: Vec<GroupElement> = (0..4)
            .filter(|x| (2 * x) % 4 == 0)
            .map(|x| z4.element_i64(&[x]).unwrap())
            .collect();
        assert_eq!(elems, oracle);
    }

    #[test]
    fn annihilator_rejects_non_bilinear() {
        let z2 = FgAbGroup::cyclic(2);
        let z4 = FgAbGroup::cyclic(4);
        // (x, y) ↦ xy in Z/4 is not well defined on Z/2 × Z/2.
        let bad = |x: &GroupElement, y: &GroupElement| {
            z4.element(vec![&x.0[0] * &y.0[0]]).unwrap()
        };
        assert!(matches!(
            annihilator_subgroup(bad, &z2, &z2, &z4),
            Err(AbelianError::NotBilinear(_))
        ));
    }

    #[test]
    fn element_orders_and_enumeration() {
        let g = FgAbGroup::from_moduli(&[4, 6]);
        assert_eq!(g.torsion(), &big(&[2, 12])[..]);
        let all = g.elements(1000).unwrap();
        assert_eq!(all.len(), 24);
        let max = all.iter().filter_map(|x| g.element_order(x)).max().unwrap();
        assert_eq!(max, BigInt::from(12));
        assert!(FgAbGroup::free(1).elements(10).is_none());
    }
}
