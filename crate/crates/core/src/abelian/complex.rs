use num_bigint::BigInt;
use num_traits::Zero;

use super::snf::{smith_normal_form, solve_with, SmithForm};
use super::{AbelianError, FgAbGroup, GroupElement, IntMatrix};

/// A bounded cochain complex of free abelian groups
/// `A^lo → A^{lo+1} → … → A^hi`, differentials acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedComplex {
    lo: i64,
    ranks: Vec<usize>,
    /// `diffs[i]` is `d^{lo+i}: A^{lo+i} → A^{lo+i+1}`, of shape rank(lo+i+1) × rank(lo+i).
    diffs: Vec<IntMatrix>,
}

impl BoundedComplex {
    /// Validates shapes and `d ∘ d = 0`.
    pub fn new(lo: i64, ranks: Vec<usize>, diffs: Vec<IntMatrix>) -> Result<Self, AbelianError> {
        if ranks.is_empty() {
            return Err(AbelianError::Shape("a complex needs at least one degree".into()));
        }
        if diffs.len() + 1 != ranks.len() {
            return Err(AbelianError::Shape(format!(
                "{} degrees need {} differentials, got {}",
                ranks.len(),
                ranks.len() - 1,
                diffs.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.rows() != ranks[i + 1] || d.cols() != ranks[i] {
                return Err(AbelianError::Shape(format!(
                    "d^{} has shape {}x{}, expected {}x{}",
                    lo + i as i64,
                    d.rows(),
                    d.cols(),
                    ranks[i + 1],
                    ranks[i]
                )));
            }
        }
        for (i, w) in diffs.windows(2).enumerate() {
            if !(&w[1] * &w[0]).is_zero() {
                return Err(AbelianError::NotAComplex(lo + i as i64));
            }
        }
        Ok(BoundedComplex { lo, ranks, diffs })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    /// Rank of `A^i`; zero outside the degree range.
    pub fn rank(&self, i: i64) -> usize {
        if i < self.lo || i > self.hi() {
            0
        } else {
            self.ranks[(i - self.lo) as usize]
        }
    }

    /// The differential `d^i: A^i → A^{i+1}` (a zero matrix outside the range).
    pub fn differential(&self, i: i64) -> IntMatrix {
        if i >= self.lo && i < self.hi() {
            self.diffs[(i - self.lo) as usize].clone()
        } else {
            IntMatrix::zeros(self.rank(i + 1), self.rank(i))
        }
    }

    pub fn apply_d(&self, i: i64, x: &[BigInt]) -> Vec<BigInt> {
        self.differential(i).mul_vec(x)
    }

    /// The same groups and differentials re-indexed so that old degree `i`
    /// becomes degree `i - shift`.
    pub fn reindexed(&self, shift: i64) -> BoundedComplex {
        BoundedComplex {
            lo: self.lo - shift,
            ranks: self.ranks.clone(),
            diffs: self.diffs.clone(),
        }
    }
}

/// `H^p` of a complex together with the maps between cocycles and classes.
#[derive(Clone, Debug)]
pub struct Homology {
    pub degree: i64,
    pub group: FgAbGroup,
    d_out: IntMatrix,
    d_in: IntMatrix,
    d_in_snf: SmithForm,
    /// Columns form a basis of the cocycles `Ker d^p`.
    cycle_basis: IntMatrix,
    /// Coordinates in `cycle_basis` of a cocycle: `kernel_coords · x`.
    kernel_coords: IntMatrix,
}

/// Computes `H^p = Ker d^p / Im d^{p-1}` with explicit class and lift maps.
pub fn homology(c: &BoundedComplex, p: i64) -> Result<Homology, AbelianError> {
    if p < c.lo() || p > c.hi() {
        return Err(AbelianError::DegreeOutOfRange {
            degree: p,
            lo: c.lo(),
            hi: c.hi(),
        });
    }
    let n = c.rank(p);
    let d_out = c.differential(p);
    let d_in = c.differential(p - 1);
    let snf = smith_normal_form(&d_out);
    let k = n - snf.rank;
    let mut cycle_basis = IntMatrix::zeros(n, k);
    let mut kernel_coords = IntMatrix::zeros(k, n);
    for (c_idx, j) in (snf.rank..n).enumerate() {
        for i in 0..n {
            cycle_basis.set(i, c_idx, snf.v.get(i, j).clone());
            kernel_coords.set(c_idx, i, snf.v_inv.get(j, i).clone());
        }
    }
    let rels: Vec<Vec<BigInt>> = (0..d_in.cols())
        .map(|j| kernel_coords.mul_vec(&d_in.column(j)))
        .collect();
    let group = FgAbGroup::from_relations(&IntMatrix::from_big_rows(rels, k)?);
    let d_in_snf = smith_normal_form(&d_in);
    Ok(Homology {
        degree: p,
        group,
        d_out,
        d_in,
        d_in_snf,
        cycle_basis,
        kernel_coords,
    })
}

impl Homology {
    pub fn is_cocycle(&self, x: &[BigInt]) -> bool {
        x.len() == self.d_out.cols() && self.d_out.mul_vec(x).iter().all(Zero::is_zero)
    }

    /// The class of a cocycle.
    pub fn class_of(&self, x: &[BigInt]) -> Result<GroupElement, AbelianError> {
        if x.len() != self.d_out.cols() {
            return Err(AbelianError::Shape(format!(
                "cochain of length {} in degree {} of rank {}",
                x.len(),
                self.degree,
                self.d_out.cols()
            )));
        }
        if !self.is_cocycle(x) {
            return Err(AbelianError::NotACocycle(self.degree));
        }
        self.group.from_generators(&self.kernel_coords.mul_vec(x))
    }

    /// A cocycle representing the class.
    pub fn lift(&self, h: &GroupElement) -> Vec<BigInt> {
        self.cycle_basis.mul_vec(&self.group.to_generators(h))
    }

    /// Some `y` with `d^{p-1} y = x`, when `x` is a coboundary.
    pub fn bounding_chain(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        solve_with(&self.d_in_snf, x)
    }

    pub fn is_coboundary(&self, x: &[BigInt]) -> bool {
        self.bounding_chain(x).is_some()
    }

    /// `d^{p-1}`, the differential into this degree.
    pub fn incoming(&self) -> &IntMatrix {
        &self.d_in
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::group::is_zero_element;
    use crate::group::AbGroup;
    use proptest::prelude::*;

    fn times_two() -> BoundedComplex {
        BoundedComplex::new(0, vec![1, 1], vec![IntMatrix::from_rows(&[[2]])]).unwrap()
    }

    #[test]
    fn multiplication_by_two() {
        let c = times_two();
        let h1 = homology(&c, 1).unwrap();
        assert_eq!(h1.group.torsion(), &[BigInt::from(2)][..]);
        assert_eq!(h1.group.rank(), 0);
        let h0 = homology(&c, 0).unwrap();
        assert!(h0.group.is_trivial());
    }

    #[test]
    fn zero_complex() {
        let c = BoundedComplex::new(0, vec![0, 0], vec![IntMatrix::zeros(0, 0)]).unwrap();
        assert!(homology(&c, 0).unwrap().group.is_trivial());
        assert!(homology(&c, 1).unwrap().group.is_trivial());
    }

    #[test]
    fn identity_differential() {
        let c = BoundedComplex::new(0, vec![1, 1], vec![IntMatrix::identity(1)]).unwrap();
        assert!(homology(&c, 0).unwrap().group.is_trivial());
        assert!(homology(&c, 1).unwrap().group.is_trivial());
    }

    #[test]
    fn errors() {
        let c = times_two();
        assert!(matches!(
            homology(&c, 2),
            Err(AbelianError::DegreeOutOfRange { .. })
        ));
        let bad = BoundedComplex::new(
            0,
            vec![1, 1, 1],
            vec![IntMatrix::from_rows(&[[1]]), IntMatrix::from_rows(&[[1]])],
        );
        assert!(matches!(bad, Err(AbelianError::NotAComplex(0))));
        let h0 = homology(&c, 0).unwrap();
        assert!(matches!(
            h0.class_of(&[BigInt::from(1)]),
            Err(AbelianError::NotACocycle(0))
        ));
    }

    /// A random complex Z^a → Z^b → Z^c with d1 ∘ d0 = 0, built as d1 = K·M where
    /// the rows of K span a subset of the left kernel of d0.
    fn random_complex() -> impl Strategy<Value = BoundedComplex> {
        (1usize..=4, 1usize..=4, 1usize..=3).prop_flat_map(|(a, b, c)| {
            (
                proptest::collection::vec(-6i64..=6, a * b),
                proptest::collection::vec(-4i64..=4, c * b),
            )
                .prop_map(move |(d0, mix)| {
                    let d0 = IntMatrix::from_vec(b, a, d0.into_iter().map(BigInt::from).collect())
                        .unwrap();
                    let lk = crate::abelian::snf::left_kernel(&d0);
                    let mut d1 = IntMatrix::zeros(c, b);
                    for i in 0..c {
                        for (r, kv) in lk.iter().enumerate() {
                            let coef = BigInt::from(mix[(i * b + r) % mix.len()]);
                            for j in 0..b {
                                let v = d1.get(i, j) + &coef * &kv[j];
                                d1.set(i, j, v);
                            }
                        }
                    }
                    BoundedComplex::new(0, vec![a, b, c], vec![d0, d1]).unwrap()
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn homology_invariants(c in random_complex(), seed in 0i64..1000) {
            let h = homology(&c, 1).unwrap();
            // class_of ∘ lift = id on basis elements and a pseudo-random element.
            for i in 0..h.group.ngens() {
                let b = h.group.basis(i);
                prop_assert_eq!(h.class_of(&h.lift(&b)).unwrap(), b);
            }
            let coords: Vec<BigInt> = (0..h.group.ngens()).map(|i| BigInt::from((seed * (i as i64 + 3)) % 17 - 8)).collect();
            let x = h.group.element(coords).unwrap();
            prop_assert_eq!(h.class_of(&h.lift(&x)).unwrap(), x.clone());
            // Coboundaries have zero class.
            for j in 0..c.rank(0) {
                let mut e = vec![BigInt::zero(); c.rank(0)];
                e[j] = BigInt::from(seed % 5 + 1);
                prop_assert!(is_zero_element(&h.class_of(&c.apply_d(0, &e)).unwrap()));
            }
            // Rank–nullity: rank H^1 = dim Ker d^1 − rank d^0.
            let ker = c.rank(1) - smith_normal_form(&c.differential(1)).rank;
            let im = smith_normal_form(&c.differential(0)).rank;
            prop_assert_eq!(h.group.rank(), ker - im);
            // Additivity of class_of on cocycles.
            let y = h.group.add(&x, &x);
            let lifted: Vec<BigInt> = h.lift(&x).iter().map(|v| v * 2).collect();
            prop_assert_eq!(h.class_of(&lifted).unwrap(), y);
        }
    }
}
