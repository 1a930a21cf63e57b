use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;

use super::{two_pi_i, CVector, ComplexVectors, HodgeError, HodgeStructure, NonzeroComplex, RealTorus};
use crate::biext::{AuditConfig, Biextension, BiextError, Bisubgroup, Trivialization};
use crate::SeededRng;

/// Which slot of ψ lies in the kernel of the projection to the Jacobian.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    /// `a = γ + η` with `γ ∈ H_Z`, `η ∈ F⁰H`: `ψ = ⟨γ, b⟩`.
    First,
    /// `b = γ^∨ + η^∨` in `H^∨_Z + F⁰H^∨`: `ψ = ⟨a, η^∨⟩`.
    Second,
}

fn pairing_exp(h: &HodgeStructure, x: &CVector, y: &CVector) -> Complex64 {
    (two_pi_i() * h.pairing(x, y)).exp()
}

fn to_complex(v: &DVector<i64>) -> CVector {
    v.map(|t| Complex64::from(t as f64))
}

/// ψ on `(H_Z + F⁰) × H^∨_C ∪ H_C × (H^∨_Z + F⁰H^∨)`, computed through the
/// given slot. The two slots agree where both apply.
pub fn poincare_psi(h: &HodgeStructure, first: &CVector, second: &CVector, slot: Slot) -> Result<Complex64, HodgeError> {
    check_dim(h, first)?;
    check_dim(h, second)?;
    match slot {
        Slot::First => {
            let (gamma, _) = h.integral_part(first)?;
            Ok(pairing_exp(h, &to_complex(&gamma), second))
        }
        Slot::Second => {
            let (_, eta) = h.dual()?.integral_part(second)?;
            Ok(pairing_exp(h, first, &eta))
        }
    }
}

fn check_dim(h: &HodgeStructure, v: &CVector) -> Result<(), HodgeError> {
    if v.len() != h.rank() {
        return Err(HodgeError::Shape(format!("expected a vector of length {}, got {}", h.rank(), v.len())));
    }
    Ok(())
}

/// `T = H_C × H^∨_C` over `J(H) × J(H^∨)`, both Jacobians in real-torus coordinates.
#[derive(Clone, Debug)]
pub struct PoincareBisubgroup {
    h: HodgeStructure,
    dual: HodgeStructure,
    a: ComplexVectors,
    b: ComplexVectors,
    qa: RealTorus,
    qb: RealTorus,
}

impl PoincareBisubgroup {
    pub fn new(h: &HodgeStructure) -> Result<Self, HodgeError> {
        let (n, tol) = (h.rank(), h.tolerance());
        Ok(PoincareBisubgroup {
            h: h.clone(),
            dual: h.dual()?,
            a: ComplexVectors::new(n, tol),
            b: ComplexVectors::new(n, tol),
            qa: RealTorus::new(n, tol),
            qb: RealTorus::new(n, tol),
        })
    }

    pub fn structure(&self) -> &HodgeStructure {
        &self.h
    }

    fn kernel_sample(h: &HodgeStructure, rng: &mut SeededRng) -> CVector {
        let n = h.rank();
        let mut v = CVector::from_fn(n, |_, _| Complex64::from(rng.gen_range(-2i64..=2) as f64));
        for k in 0..h.genus() {
            let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            v += h.f0().row(k).transpose() * c;
        }
        v
    }
}

impl Bisubgroup for PoincareBisubgroup {
    type A = ComplexVectors;
    type B = ComplexVectors;
    type QA = RealTorus;
    type QB = RealTorus;

    fn group_a(&self) -> &ComplexVectors {
        &self.a
    }

    fn group_b(&self) -> &ComplexVectors {
        &self.b
    }

    fn quotient_a(&self) -> &RealTorus {
        &self.qa
    }

    fn quotient_b(&self) -> &RealTorus {
        &self.qb
    }

    fn contains(&self, _a: &CVector, _b: &CVector) -> bool {
        true
    }

    fn project_a(&self, a: &CVector) -> DVector<f64> {
        RealTorus::reduce(&self.h.decompose(a).0)
    }

    fn project_b(&self, b: &CVector) -> DVector<f64> {
        RealTorus::reduce(&self.dual.decompose(b).0)
    }

    fn section(&self, alpha: &DVector<f64>, beta: &DVector<f64>, _rng: &mut SeededRng) -> Option<(CVector, CVector)> {
        Some((alpha.map(Complex64::from), beta.map(Complex64::from)))
    }

    fn sample_a(&self, rng: &mut SeededRng) -> CVector {
        self.a.random(rng, 1.0)
    }

    fn sample_b(&self, rng: &mut SeededRng) -> CVector {
        self.b.random(rng, 1.0)
    }

    fn sample_kernel_a(&self, rng: &mut SeededRng) -> CVector {
        Self::kernel_sample(&self.h, rng)
    }

    fn sample_kernel_b(&self, rng: &mut SeededRng) -> CVector {
        Self::kernel_sample(&self.dual, rng)
    }

    fn compact(&self, a: &CVector, b: &CVector, _rng: &mut SeededRng) -> Option<(CVector, CVector)> {
        Some((self.project_a(a).map(Complex64::from), self.project_b(b).map(Complex64::from)))
    }
}

/// ψ with values in `C^*`, dispatching on whichever slot is in the kernel.
#[derive(Clone, Debug)]
pub struct PoincareTrivialization {
    h: HodgeStructure,
    dual: HodgeStructure,
    units: NonzeroComplex,
}

impl PoincareTrivialization {
    pub fn new(h: &HodgeStructure) -> Result<Self, HodgeError> {
        Ok(PoincareTrivialization {
            h: h.clone(),
            dual: h.dual()?,
            units: NonzeroComplex::new(h.tolerance()),
        })
    }
}

fn triv_err(e: HodgeError) -> BiextError {
    BiextError::Trivialization(e.to_string())
}

impl Trivialization<CVector, CVector> for PoincareTrivialization {
    type N = NonzeroComplex;

    fn coefficients(&self) -> &NonzeroComplex {
        &self.units
    }

    fn psi(&self, a: &CVector, b: &CVector) -> Result<Complex64, BiextError> {
        let eps = self.h.tolerance().eps();
        if self.h.integral_residual(a) <= eps {
            poincare_psi(&self.h, a, b, Slot::First).map_err(triv_err)
        } else if self.dual.integral_residual(b) <= eps {
            poincare_psi(&self.h, a, b, Slot::Second).map_err(triv_err)
        } else {
            Err(BiextError::NotInS("neither vector lies in the lattice plus F⁰".into()))
        }
    }
}

pub type PoincareBiextension = Biextension<PoincareBisubgroup, PoincareTrivialization>;

/// The audited Poincaré biextension of `J(H) × J(H^∨)` by `C^*`.
pub fn poincare_biextension(h: &HodgeStructure, audit: &AuditConfig) -> Result<PoincareBiextension, HodgeError> {
    Ok(Biextension::build(
        PoincareBisubgroup::new(h)?,
        PoincareTrivialization::new(h)?,
        audit,
    )?)
}

/// The Weil pairing on `l`-torsion points `e ∈ J(H)`, `f ∈ J(H^∨)` given by
/// complex representatives: `ψ(le, f) / ψ(e, lf)`.
pub fn analytic_weil(h: &HodgeStructure, e: &CVector, f: &CVector, l: u32) -> Result<Complex64, HodgeError> {
    check_dim(h, e)?;
    check_dim(h, f)?;
    if l == 0 {
        return Err(HodgeError::Torsion("l must be positive".into()));
    }
    let dual = h.dual()?;
    let eps = h.tolerance().eps();
    let (le, lf) = (e * Complex64::from(l as f64), f * Complex64::from(l as f64));
    let r = h.integral_residual(&le);
    if r > eps {
        return Err(HodgeError::Torsion(format!("{l}·e is {r:e} away from H_Z + F⁰")));
    }
    let r = dual.integral_residual(&lf);
    if r > eps {
        return Err(HodgeError::Torsion(format!("{l}·f is {r:e} away from H^∨_Z + F⁰H^∨")));
    }
    let bx = Biextension::unchecked(PoincareBisubgroup::new(h)?, PoincareTrivialization::new(h)?, 0);
    Ok(bx.weil_pairing(e, f, l)?)
}

/// `log|ψ|` extended to all of `H_C × H^∨_C`: `Re(2πi·rᵀQφ^∨)` where `r` is
/// the real part of `φ = r + η`.
pub fn height_trivialization(h: &HodgeStructure, phi: &CVector, phi_dual: &CVector) -> Result<f64, HodgeError> {
    check_dim(h, phi)?;
    check_dim(h, phi_dual)?;
    let r = h.decompose(phi).0.map(Complex64::from);
    Ok((two_pi_i() * h.pairing(&r, phi_dual)).re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn v(xs: &[(f64, f64)]) -> CVector {
        CVector::from_iterator(xs.len(), xs.iter().map(|&(re, im)| Complex64::new(re, im)))
    }

    #[test]
    fn square_lattice_values() {
        let h = HodgeStructure::square_lattice();
        // a = e₁ ∈ H_Z, b = i·e₂: ⟨e₁, ie₂⟩ = exp(2πi·i) = e^{−2π}.
        let a = v(&[(1.0, 0.0), (0.0, 0.0)]);
        let b = v(&[(0.0, 0.0), (0.0, 1.0)]);
        let psi = poincare_psi(&h, &a, &b, Slot::First).unwrap();
        assert!((psi - Complex64::from((-2.0 * PI).exp())).norm() < 1e-15);
        let height = height_trivialization(&h, &a, &b).unwrap();
        assert!((height + 2.0 * PI).abs() < 1e-12);
        assert!((height - psi.norm().ln()).abs() < 1e-9);
    }

    #[test]
    fn two_torsion_weil_is_minus_one() {
        let h = HodgeStructure::square_lattice();
        let e = v(&[(0.5, 0.0), (0.0, 0.0)]);
        let f = v(&[(0.0, 0.0), (0.5, 0.0)]);
        let w = analytic_weil(&h, &e, &f, 2).unwrap();
        assert!((w + 1.0).norm() < 1e-9, "{w}");
        let same = analytic_weil(&h, &e, &e, 2).unwrap();
        assert!((same - 1.0).norm() < 1e-9, "{same}");
        assert!(matches!(analytic_weil(&h, &e, &f, 3), Err(HodgeError::Torsion(_))));
    }

    #[test]
    fn slots_agree_on_overlap() {
        let h = HodgeStructure::square_lattice();
        let d = h.dual().unwrap();
        let eta = h.f0().row(0).transpose() * Complex64::new(0.3, -0.7);
        let eta_v = d.f0().row(0).transpose() * Complex64::new(-1.1, 0.4);
        let a = v(&[(2.0, 0.0), (-1.0, 0.0)]) + eta;
        let b = v(&[(1.0, 0.0), (3.0, 0.0)]) + eta_v;
        let p1 = poincare_psi(&h, &a, &b, Slot::First).unwrap();
        let p2 = poincare_psi(&h, &a, &b, Slot::Second).unwrap();
        assert!(NonzeroComplex::residual(&p1, &p2) < 1e-9, "{p1} vs {p2}");
        let off = v(&[(0.25, 0.0), (0.0, 0.0)]);
        assert!(matches!(
            poincare_psi(&h, &off, &b, Slot::First),
            Err(HodgeError::Decomposition { .. })
        ));
    }
}
