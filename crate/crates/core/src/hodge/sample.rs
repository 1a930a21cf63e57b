//! Random vectors for property tests and self-checks.

use num_complex::Complex64;
use rand::Rng;

use super::{CVector, HodgeStructure};
use crate::SeededRng;

/// Entries with real and imaginary parts uniform in `(-scale, scale)`.
pub fn random_vector(n: usize, scale: f64, rng: &mut SeededRng) -> CVector {
    CVector::from_fn(n, |_, _| Complex64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale)))
}

/// A random element of `F⁰`.
pub fn random_f0(h: &HodgeStructure, rng: &mut SeededRng) -> CVector {
    let mut v = CVector::zeros(h.rank());
    for k in 0..h.genus() {
        v += h.f0().row(k).transpose() * Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    }
    v
}

/// A random integral vector with entries in `[-3, 3]`.
pub fn random_integral(n: usize, rng: &mut SeededRng) -> CVector {
    CVector::from_fn(n, |_, _| Complex64::from(rng.gen_range(-3i64..=3) as f64))
}

/// A random element of `H_Z + F⁰`.
pub fn random_kernel(h: &HodgeStructure, rng: &mut SeededRng) -> CVector {
    random_integral(h.rank(), rng) + random_f0(h, rng)
}

/// A real vector with coordinates in `(1/l)Z ∩ [0, 1)`.
pub fn random_torsion(n: usize, l: u32, rng: &mut SeededRng) -> CVector {
    CVector::from_fn(n, |_, _| Complex64::from(rng.gen_range(0..l) as f64 / l as f64))
}
