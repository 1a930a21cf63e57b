//! Weight −1 Hodge structures, their Jacobians `H_C / (H_Z + F⁰)`, and the
//! Poincaré biextension of `J(H) × J(H^∨)` by `C^*`.
//!
//! Lattices are identified with `Z^{2g}`; `F⁰` is given by `g` complex rows
//! in lattice coordinates and the duality with `H^∨` by an integral matrix
//! `Q`, so that `⟨x, y⟩ = exp(2πi·xᵀQy)`. All comparisons use one absolute
//! [`Tolerance`].

pub mod json;
mod poincare;
pub mod sample;
mod structure;

use std::f64::consts::PI;

use nalgebra::DVector;
use num_complex::Complex64;
use thiserror::Error;

use crate::biext::BiextError;
use crate::group::AbGroup;
use crate::SeededRng;

pub use poincare::{
    analytic_weil, height_trivialization, poincare_biextension, poincare_psi, PoincareBiextension,
    PoincareBisubgroup, PoincareTrivialization, Slot,
};
pub use structure::{abel_jacobi_elliptic, HodgeStructure, Invariants, JacobianPoint};

pub type CVector = DVector<Complex64>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HodgeError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("tolerance must be positive, got {0}")]
    Tolerance(f64),
    #[error("invariant {name} fails (residual {residual:e})")]
    Invariant { name: &'static str, residual: f64 },
    #[error("annihilator of F⁰ has dimension {found}, expected {expected}")]
    DualDimension { expected: usize, found: usize },
    #[error("not of the form γ + η with γ integral: distance {residual:e} from the lattice")]
    Decomposition { residual: f64 },
    #[error("torsion precondition fails: {0}")]
    Torsion(String),
    #[error("divisor has degree {0}, expected 0")]
    DegreeNotZero(i64),
    #[error(transparent)]
    Biext(#[from] BiextError),
}

/// Absolute tolerance for complex comparisons.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance(f64);

impl Tolerance {
    pub fn new(eps: f64) -> Result<Self, HodgeError> {
        if eps > 0.0 && eps.is_finite() {
            Ok(Tolerance(eps))
        } else {
            Err(HodgeError::Tolerance(eps))
        }
    }

    pub fn eps(&self) -> f64 {
        self.0
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance(1e-9)
    }
}

/// `2πi`
pub(crate) fn two_pi_i() -> Complex64 {
    Complex64::new(0.0, 2.0 * PI)
}

/// `C^n` under addition.
#[derive(Clone, Debug)]
pub struct ComplexVectors {
    dim: usize,
    tol: Tolerance,
}

impl ComplexVectors {
    pub fn new(dim: usize, tol: Tolerance) -> Self {
        ComplexVectors { dim, tol }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub(crate) fn random(&self, rng: &mut SeededRng, scale: f64) -> CVector {
        sample::random_vector(self.dim, scale, rng)
    }
}

impl AbGroup for ComplexVectors {
    type Elem = CVector;

    fn zero(&self) -> CVector {
        CVector::zeros(self.dim)
    }

    fn add(&self, x: &CVector, y: &CVector) -> CVector {
        x + y
    }

    fn neg(&self, x: &CVector) -> CVector {
        -x
    }

    fn same(&self, x: &CVector, y: &CVector) -> bool {
        x.iter().zip(y.iter()).all(|(a, b)| (a - b).norm() <= self.tol.eps())
    }

    fn mul_int(&self, x: &CVector, k: i64) -> CVector {
        x * Complex64::from(k as f64)
    }
}

/// The real torus `R^n / Z^n`, elements kept in `[0, 1)^n`.
#[derive(Clone, Debug)]
pub struct RealTorus {
    dim: usize,
    tol: Tolerance,
}

impl RealTorus {
    pub fn new(dim: usize, tol: Tolerance) -> Self {
        RealTorus { dim, tol }
    }

    pub fn reduce(v: &DVector<f64>) -> DVector<f64> {
        v.map(|t| {
            let r = t.rem_euclid(1.0);
            if r >= 1.0 {
                0.0
            } else {
                r
            }
        })
    }

    /// Largest coordinate distance to the nearest integer.
    pub fn distance_to_zero(v: &DVector<f64>) -> f64 {
        v.iter().map(|t| (t - t.round()).abs()).fold(0.0, f64::max)
    }
}

impl AbGroup for RealTorus {
    type Elem = DVector<f64>;

    fn zero(&self) -> DVector<f64> {
        DVector::zeros(self.dim)
    }

    fn add(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        Self::reduce(&(x + y))
    }

    fn neg(&self, x: &DVector<f64>) -> DVector<f64> {
        Self::reduce(&(-x))
    }

    fn same(&self, x: &DVector<f64>, y: &DVector<f64>) -> bool {
        Self::distance_to_zero(&(x - y)) <= self.tol.eps()
    }

    fn mul_int(&self, x: &DVector<f64>, k: i64) -> DVector<f64> {
        Self::reduce(&(x * k as f64))
    }
}

/// `C^*`, written additively; equality is relative to the larger modulus.
#[derive(Clone, Debug)]
pub struct NonzeroComplex {
    tol: Tolerance,
}

impl NonzeroComplex {
    pub fn new(tol: Tolerance) -> Self {
        NonzeroComplex { tol }
    }

    /// `|x − y| / max(1, |x|, |y|)`.
    pub fn residual(x: &Complex64, y: &Complex64) -> f64 {
        (x - y).norm() / 1f64.max(x.norm()).max(y.norm())
    }
}

impl AbGroup for NonzeroComplex {
    type Elem = Complex64;

    fn zero(&self) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    fn add(&self, x: &Complex64, y: &Complex64) -> Complex64 {
        x * y
    }

    fn neg(&self, x: &Complex64) -> Complex64 {
        x.inv()
    }

    fn same(&self, x: &Complex64, y: &Complex64) -> bool {
        Self::residual(x, y) <= self.tol.eps()
    }

    fn mul_int(&self, x: &Complex64, k: i64) -> Complex64 {
        x.powi(k as i32)
    }
}
