//! Small worked instances used by tests, the command-line self-test and
//! the examples in the documentation.

use num_bigint::BigInt;
use rand::Rng;

use super::chain::{ChainPairing, PairingTables};
use super::massey::{DgAlgebra, ProductTables};
use super::{BiextError, Bisubgroup, Trivialization};
use crate::abelian::{BoundedComplex, FgAbGroup, GroupElement, IntMatrix};
use crate::group::AbGroup;
use crate::SeededRng;

/// The integers as an additive group.
#[derive(Clone, Copy, Debug, Default)]
pub struct Integers;

impl AbGroup for Integers {
    type Elem = i64;

    fn zero(&self) -> i64 {
        0
    }

    fn add(&self, x: &i64, y: &i64) -> i64 {
        x + y
    }

    fn neg(&self, x: &i64) -> i64 {
        -x
    }

    fn same(&self, x: &i64, y: &i64) -> bool {
        x == y
    }
}

/// `A = B = Z` over `A' = B' = Z/2` with `T = A × B` and values in `Z/4`:
/// `ψ(2u, v) = uv` on the first slot and `ψ(u, 2v) = c·uv` on the second.
///
/// The two formulas agree on `2Z × 2Z` exactly when `c` is odd.
#[derive(Clone, Debug)]
pub struct IntegerToy {
    c: i64,
    ints: Integers,
    z2: FgAbGroup,
    z4: FgAbGroup,
}

pub fn integer_toy(c: i64) -> (IntegerToy, IntegerToy) {
    let t = IntegerToy {
        c,
        ints: Integers,
        z2: FgAbGroup::cyclic(2),
        z4: FgAbGroup::cyclic(4),
    };
    (t.clone(), t)
}

impl Bisubgroup for IntegerToy {
    type A = Integers;
    type B = Integers;
    type QA = FgAbGroup;
    type QB = FgAbGroup;

    fn group_a(&self) -> &Integers {
        &self.ints
    }

    fn group_b(&self) -> &Integers {
        &self.ints
    }

    fn quotient_a(&self) -> &FgAbGroup {
        &self.z2
    }

    fn quotient_b(&self) -> &FgAbGroup {
        &self.z2
    }

    fn contains(&self, _: &i64, _: &i64) -> bool {
        true
    }

    fn project_a(&self, a: &i64) -> GroupElement {
        self.z2.element_i64(&[*a]).expect("rank one")
    }

    fn project_b(&self, b: &i64) -> GroupElement {
        self.z2.element_i64(&[*b]).expect("rank one")
    }

    fn section(&self, alpha: &GroupElement, beta: &GroupElement, rng: &mut SeededRng) -> Option<(i64, i64)> {
        let lift = |g: &GroupElement| -> i64 { i64::try_from(&g.0[0]).expect("reduced mod 2") };
        Some((
            lift(alpha) + 2 * rng.gen_range(-5i64..=5),
            lift(beta) + 2 * rng.gen_range(-5i64..=5),
        ))
    }

    fn sample_a(&self, rng: &mut SeededRng) -> i64 {
        rng.gen_range(-10..=10)
    }

    fn sample_b(&self, rng: &mut SeededRng) -> i64 {
        rng.gen_range(-10..=10)
    }

    fn sample_kernel_a(&self, rng: &mut SeededRng) -> i64 {
        2 * rng.gen_range(-5i64..=5)
    }

    fn sample_kernel_b(&self, rng: &mut SeededRng) -> i64 {
        2 * rng.gen_range(-5i64..=5)
    }

    fn quotient_elements(&self) -> Option<(Vec<GroupElement>, Vec<GroupElement>)> {
        let all = self.z2.elements(2)?;
        Some((all.clone(), all))
    }
}

impl Trivialization<i64, i64> for IntegerToy {
    type N = FgAbGroup;

    fn coefficients(&self) -> &FgAbGroup {
        &self.z4
    }

    fn psi(&self, a: &i64, b: &i64) -> Result<GroupElement, BiextError> {
        let v = if a % 2 == 0 {
            (a / 2) * b
        } else if b % 2 == 0 {
            self.c * a * (b / 2)
        } else {
            return Err(BiextError::NotInS(format!("({a}, {b})")));
        };
        Ok(self.z4.element_i64(&[v])?)
    }
}

fn scalar_table(n: &FgAbGroup, v: i64) -> Vec<Vec<GroupElement>> {
    vec![vec![n.element_i64(&[v]).expect("rank one coefficients")]]
}

/// `A: Z --2--> Z` in degrees 0, 1 and `B: Z --2--> Z` in degrees -1, 0,
/// with `φ_0 = phi0·ab`, `φ_1 = phi1·ab` into a cyclic or free rank-one `N`.
pub fn doubling_chain_pairing(n: FgAbGroup, phi0: i64, phi1: i64) -> Result<ChainPairing, BiextError> {
    let two = IntMatrix::from_rows(&[[2]]);
    let a = BoundedComplex::new(0, vec![1, 1], vec![two.clone()])?;
    let b = BoundedComplex::new(-1, vec![1, 1], vec![two])?;
    let mut tables = PairingTables::new();
    tables.insert(0, scalar_table(&n, phi0));
    tables.insert(1, scalar_table(&n, phi1));
    ChainPairing::new(a, b, n, tables)
}

/// `A: Z² --diag(4,2)--> Z²` in degrees 0, 1 and the same `B` in degrees
/// -1, 0, paired into `Z/8`. Cohomology in the relevant degrees is
/// `Z/2 ⊕ Z/4` on both sides.
pub fn rank_two_chain_pairing() -> Result<ChainPairing, BiextError> {
    let d = IntMatrix::from_rows(&[[4, 0], [0, 2]]);
    let a = BoundedComplex::new(0, vec![2, 2], vec![d.clone()])?;
    let b = BoundedComplex::new(-1, vec![2, 2], vec![d])?;
    let n = FgAbGroup::cyclic(8);
    let table = |rows: [[i64; 2]; 2]| -> Vec<Vec<GroupElement>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| n.element_i64(&[v]).expect("rank one")).collect())
            .collect()
    };
    let mut tables = PairingTables::new();
    // d_s·φ_1(e_s, f_t) + d_t·φ_0(e_s, f_t) ≡ 0 (mod 8) for d = (4, 2).
    tables.insert(0, table([[1, 0], [1, 1]]));
    tables.insert(1, table([[1, 0], [2, 3]]));
    ChainPairing::new(a, b, n.clone(), tables)
}

/// `A^0 = Zu → A^1 = Zv` with `du = 2v`, `u·u = 2u`, `u·v = v·u = v` and
/// `π(v) = 1 ∈ Z/4`.
///
/// The extended variant adds a cocycle `e ∈ A^0` with `e·e = e`,
/// `e·u = u·e = 4u`, `e·v = v·e = 4v`, so `u + k·e` is another bounding
/// chain for `2v`.
pub fn doubling_dg_algebra(extended: bool) -> Result<DgAlgebra, BiextError> {
    let big = |v: &[i64]| -> Vec<BigInt> { v.iter().map(|&x| BigInt::from(x)).collect() };
    let n = FgAbGroup::cyclic(4);
    let mut products = ProductTables::new();
    let complex = if extended {
        products.insert((0, 0), vec![
            vec![big(&[2, 0]), big(&[4, 0])],
            vec![big(&[4, 0]), big(&[0, 1])],
        ]);
        products.insert((0, 1), vec![vec![big(&[1])], vec![big(&[4])]]);
        products.insert((1, 0), vec![vec![big(&[1]), big(&[4])]]);
        BoundedComplex::new(0, vec![2, 1], vec![IntMatrix::from_rows(&[[2, 0]])])?
    } else {
        products.insert((0, 0), vec![vec![big(&[2])]]);
        products.insert((0, 1), vec![vec![big(&[1])]]);
        products.insert((1, 0), vec![vec![big(&[1])]]);
        BoundedComplex::new(0, vec![1, 1], vec![IntMatrix::from_rows(&[[2]])])?
    };
    let pi = vec![n.element_i64(&[1])?];
    DgAlgebra::new(complex, products, pi, n)
}
