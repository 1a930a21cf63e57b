use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

use super::{CVector, HodgeError, RealTorus, Tolerance};
use crate::SeededRng;

/// A pure Hodge structure of weight −1 on `Z^{2g}` with a duality pairing `Q`.
#[derive(Clone, Debug)]
pub struct HodgeStructure {
    g: usize,
    f0: DMatrix<Complex64>,
    q: DMatrix<i64>,
    tol: Tolerance,
    /// Inverse of the real system `φ = r + Σ c_k f_k` in the unknowns `(r, Re c, Im c)`.
    decomp: DMatrix<f64>,
    condition: f64,
    dual: OnceLock<Box<HodgeStructure>>,
}

/// Residuals of the defining conditions.
#[derive(Clone, Debug, PartialEq)]
pub struct Invariants {
    /// Condition number of `[F⁰; conj F⁰]`.
    pub condition_number: f64,
    /// Smallest distance from a short nonzero integer vector to `F⁰`.
    pub lattice_distance: f64,
    /// Largest `|fᵀQf^∨|` over bases of `F⁰H` and `F⁰H^∨`.
    pub morphism_residual: f64,
}

fn singular_values(m: &DMatrix<Complex64>) -> Vec<f64> {
    let mut s: Vec<f64> = m.clone().singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

impl HodgeStructure {
    /// Checks the shapes, that `Q` is nondegenerate and that `F⁰ ⊕ conj F⁰ = H_C`.
    pub fn new(f0: DMatrix<Complex64>, q: DMatrix<i64>, tol: Tolerance) -> Result<Self, HodgeError> {
        let g = f0.nrows();
        if g == 0 || f0.ncols() != 2 * g {
            return Err(HodgeError::Shape(format!(
                "F⁰ must be g × 2g, got {} × {}",
                f0.nrows(),
                f0.ncols()
            )));
        }
        if q.nrows() != 2 * g || q.ncols() != 2 * g {
            return Err(HodgeError::Shape(format!(
                "Q must be {0} × {0}, got {1} × {2}",
                2 * g,
                q.nrows(),
                q.ncols()
            )));
        }
        let det = q.map(|v| v as f64).determinant();
        if det.abs() < 0.5 {
            return Err(HodgeError::Invariant {
                name: "nondegenerate duality pairing",
                residual: det.abs(),
            });
        }
        let mut stacked = DMatrix::zeros(2 * g, 2 * g);
        stacked.rows_mut(0, g).copy_from(&f0);
        stacked.rows_mut(g, g).copy_from(&f0.map(|z| z.conj()));
        let s = singular_values(&stacked);
        let (smax, smin) = (s[0], s[s.len() - 1]);
        if smin <= tol.eps() * smax {
            return Err(HodgeError::Invariant {
                name: "F⁰ ⊕ conj F⁰ = H_C",
                residual: smin / smax,
            });
        }
        let n = 2 * g;
        let mut m = DMatrix::<f64>::zeros(2 * n, 2 * n);
        for j in 0..n {
            m[(j, j)] = 1.0;
            for k in 0..g {
                let f = f0[(k, j)];
                m[(j, n + k)] = f.re;
                m[(j, n + g + k)] = -f.im;
                m[(n + j, n + k)] = f.im;
                m[(n + j, n + g + k)] = f.re;
            }
        }
        let decomp = m.try_inverse().ok_or(HodgeError::Invariant {
            name: "F⁰ ⊕ conj F⁰ = H_C",
            residual: 0.0,
        })?;
        Ok(HodgeStructure {
            g,
            f0,
            q,
            tol,
            decomp,
            condition: smax / smin,
            dual: OnceLock::new(),
        })
    }

    /// `[[0, I], [−I, 0]]` on `Z^{2g}`.
    pub fn symplectic(g: usize) -> DMatrix<i64> {
        DMatrix::from_fn(2 * g, 2 * g, |i, j| {
            if j == i + g {
                1
            } else if i == j + g {
                -1
            } else {
                0
            }
        })
    }

    /// The first homology of `C / (Zω₁ + Zω₂)`: `F⁰` is spanned by `(ω₂, −ω₁)`,
    /// the kernel of `x ↦ x₁ω₁ + x₂ω₂`.
    pub fn from_lattice(omega1: Complex64, omega2: Complex64, tol: Tolerance) -> Result<Self, HodgeError> {
        let f0 = DMatrix::from_row_slice(1, 2, &[omega2, -omega1]);
        HodgeStructure::new(f0, Self::symplectic(1), tol)
    }

    /// `ω₁ = 1`, `ω₂ = i`.
    pub fn square_lattice() -> Self {
        Self::from_lattice(Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), Tolerance::default())
            .expect("square lattice is a Hodge structure")
    }

    /// Random `F⁰` (entries of modulus below 2) with the symplectic `Q`.
    pub fn random(g: usize, rng: &mut SeededRng, tol: Tolerance) -> Self {
        loop {
            let f0 = DMatrix::from_fn(g, 2 * g, |_, _| {
                Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5))
            });
            if let Ok(h) = HodgeStructure::new(f0, Self::symplectic(g), tol) {
                if h.condition < 1e3 {
                    return h;
                }
            }
        }
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn rank(&self) -> usize {
        2 * self.g
    }

    pub fn f0(&self) -> &DMatrix<Complex64> {
        &self.f0
    }

    pub fn q(&self) -> &DMatrix<i64> {
        &self.q
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tol
    }

    pub fn condition_number(&self) -> f64 {
        self.condition
    }

    /// `xᵀQy`, complex bilinear.
    pub fn pairing(&self, x: &CVector, y: &CVector) -> Complex64 {
        let qy = self.q.map(|v| Complex64::from(v as f64)) * y;
        x.dot(&qy)
    }

    /// The unique `φ = r + η` with `r ∈ H_R` and `η ∈ F⁰`.
    pub fn decompose(&self, phi: &CVector) -> (DVector<f64>, CVector) {
        let n = self.rank();
        let rhs = DVector::from_fn(2 * n, |i, _| if i < n { phi[i].re } else { phi[i - n].im });
        let u = &self.decomp * rhs;
        let r = u.rows(0, n).into_owned();
        let eta = phi - r.map(Complex64::from);
        (r, eta)
    }

    /// Distance of the real part `r` of `φ` from `Z^{2g}`; zero exactly on `H_Z + F⁰`.
    pub fn integral_residual(&self, phi: &CVector) -> f64 {
        RealTorus::distance_to_zero(&self.decompose(phi).0)
    }

    /// `φ = γ + η` with `γ ∈ Z^{2g}`, `η ∈ F⁰`.
    pub fn integral_part(&self, phi: &CVector) -> Result<(DVector<i64>, CVector), HodgeError> {
        let (r, _) = self.decompose(phi);
        let residual = RealTorus::distance_to_zero(&r);
        if residual > self.tol.eps() {
            return Err(HodgeError::Decomposition { residual });
        }
        let gamma = r.map(|t| t.round() as i64);
        let eta = phi - gamma.map(|v| Complex64::from(v as f64));
        Ok((gamma, eta))
    }

    /// Distance of `v` from `F⁰`, measured by its real part.
    pub fn f0_residual(&self, v: &CVector) -> f64 {
        self.decompose(v).0.amax()
    }

    /// `H^∨ = Hom(H, Z(1))` on the same coordinates, with `F⁰H^∨` the
    /// annihilator of `F⁰H` under `Q` and duality pairing `Qᵀ`.
    pub fn dual(&self) -> Result<HodgeStructure, HodgeError> {
        if let Some(d) = self.dual.get() {
            return Ok((**d).clone());
        }
        let d = self.compute_dual()?;
        let _ = self.dual.set(Box::new(d.clone()));
        Ok(d)
    }

    fn compute_dual(&self) -> Result<HodgeStructure, HodgeError> {
        let (g, n) = (self.g, self.rank());
        let qc = self.q.map(|v| Complex64::from(v as f64));
        let mut m = DMatrix::<Complex64>::zeros(n, n);
        m.rows_mut(0, g).copy_from(&(&self.f0 * qc));
        let svd = m.svd(false, true);
        let v_t = svd.v_t.expect("requested V");
        let smax = svd.singular_values.max().max(1.0);
        let null: Vec<usize> = (0..n)
            .filter(|&i| svd.singular_values[i] <= self.tol.eps() * smax)
            .collect();
        if null.len() != g {
            return Err(HodgeError::DualDimension {
                expected: g,
                found: null.len(),
            });
        }
        // Null vectors are the conjugated rows of Vᴴ.
        let f0 = DMatrix::from_fn(g, n, |k, j| v_t[(null[k], j)].conj());
        HodgeStructure::new(f0, self.q.transpose(), self.tol)
    }

    /// Largest distance of a row of one `F⁰` from the other, in both directions.
    pub fn filtration_distance(&self, other: &HodgeStructure) -> f64 {
        let rows = |h: &HodgeStructure| -> Vec<CVector> {
            (0..h.g).map(|k| h.f0.row(k).transpose()).collect()
        };
        let a = rows(other).iter().map(|v| self.f0_residual(v) / v.norm()).fold(0.0, f64::max);
        let b = rows(self).iter().map(|v| other.f0_residual(v) / v.norm()).fold(0.0, f64::max);
        a.max(b)
    }

    pub fn invariants(&self) -> Result<Invariants, HodgeError> {
        let n = self.rank();
        let mut lattice_distance = f64::INFINITY;
        let mut v = vec![-2i64; n];
        loop {
            if v.iter().any(|&x| x != 0) {
                let c = CVector::from_fn(n, |i, _| Complex64::from(v[i] as f64));
                lattice_distance = lattice_distance.min(self.f0_residual(&c));
            }
            let Some(i) = v.iter().position(|&x| x < 2) else { break };
            v[i] += 1;
            v[..i].iter_mut().for_each(|x| *x = -2);
        }
        let dual = self.dual()?;
        let mut morphism_residual = 0.0f64;
        for i in 0..self.g {
            for j in 0..self.g {
                let x = self.f0.row(i).transpose();
                let y = dual.f0.row(j).transpose();
                morphism_residual = morphism_residual.max(self.pairing(&x, &y).norm());
            }
        }
        Ok(Invariants {
            condition_number: self.condition,
            lattice_distance,
            morphism_residual,
        })
    }

    /// A vector in `H_C` with the given lattice coordinates.
    pub fn real_vector(coords: &[f64]) -> CVector {
        CVector::from_iterator(coords.len(), coords.iter().map(|&t| Complex64::from(t)))
    }
}

/// A point of `J(H)` in normal form: real-torus coordinates in `[0, 1)^{2g}`
/// (the `F⁰`-component of the representative is zero).
#[derive(Clone, Debug, PartialEq)]
pub struct JacobianPoint {
    pub coords: DVector<f64>,
}

impl JacobianPoint {
    pub fn from_vector(h: &HodgeStructure, v: &CVector) -> Self {
        JacobianPoint {
            coords: RealTorus::reduce(&h.decompose(v).0),
        }
    }

    pub fn lift(&self) -> CVector {
        self.coords.map(Complex64::from)
    }
}

/// `Σ nᵢzᵢ mod Zω₁ + Zω₂` for a degree-zero formal sum of points of `C / Λ`,
/// in the coordinates `z = aω₁ + bω₂`.
pub fn abel_jacobi_elliptic(
    omega1: Complex64,
    omega2: Complex64,
    divisor: &[(Complex64, i64)],
) -> Result<JacobianPoint, HodgeError> {
    let deg: i64 = divisor.iter().map(|(_, n)| n).sum();
    if deg != 0 {
        return Err(HodgeError::DegreeNotZero(deg));
    }
    let z: Complex64 = divisor.iter().map(|(z, n)| z * *n as f64).sum();
    let m = nalgebra::Matrix2::new(omega1.re, omega2.re, omega1.im, omega2.im);
    let inv = m.try_inverse().ok_or(HodgeError::Invariant {
        name: "periods are linearly independent over R",
        residual: 0.0,
    })?;
    let ab = inv * nalgebra::Vector2::new(z.re, z.im);
    Ok(JacobianPoint {
        coords: RealTorus::reduce(&DVector::from_column_slice(ab.as_slice())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn square_lattice_dual_and_decomposition() {
        let h = HodgeStructure::square_lattice();
        let (r, eta) = h.decompose(&CVector::from_vec(vec![c(0.0, 1.0), c(0.0, 0.0)]));
        // i·e₁ = e₂ + i(e₁ + i e₂)
        assert!((r[0]).abs() < 1e-12 && (r[1] - 1.0).abs() < 1e-12);
        assert!((eta[0] - c(0.0, 1.0)).norm() < 1e-12 && (eta[1] - c(-1.0, 0.0)).norm() < 1e-12);
        let d = h.dual().unwrap();
        // F⁰H^∨ is the Q-annihilator of e₁ + ie₂: (x, y) with y·1 − x·i... spanned by (1, i).
        let v = d.f0().row(0).transpose();
        let ratio = v[1] / v[0];
        assert!((ratio - c(0.0, 1.0)).norm() < 1e-12, "{ratio}");
        assert!(h.filtration_distance(&d.dual().unwrap()) < 1e-12);
        assert_eq!(d.dual().unwrap().q(), h.q());
    }

    #[test]
    fn rejects_bad_input() {
        let tol = Tolerance::default();
        let real = DMatrix::from_row_slice(1, 2, &[c(1.0, 0.0), c(2.0, 0.0)]);
        assert!(matches!(
            HodgeStructure::new(real, HodgeStructure::symplectic(1), tol),
            Err(HodgeError::Invariant { name: "F⁰ ⊕ conj F⁰ = H_C", .. })
        ));
        let f0 = DMatrix::from_row_slice(1, 2, &[c(1.0, 0.0), c(0.0, 1.0)]);
        let degenerate = DMatrix::from_row_slice(2, 2, &[1, 1, 1, 1]);
        assert!(matches!(
            HodgeStructure::new(f0.clone(), degenerate, tol),
            Err(HodgeError::Invariant { name: "nondegenerate duality pairing", .. })
        ));
        assert!(matches!(
            HodgeStructure::new(f0, DMatrix::zeros(3, 3), tol),
            Err(HodgeError::Shape(_))
        ));
        assert!(Tolerance::new(0.0).is_err());
    }

    #[test]
    fn invariants_of_random_structures() {
        let mut rng = SeededRng::seed_from_u64(4);
        for g in 1..=2 {
            let h = HodgeStructure::random(g, &mut rng, Tolerance::default());
            let inv = h.invariants().unwrap();
            assert!(inv.lattice_distance > 1e-6);
            assert!(inv.morphism_residual < 1e-9);
        }
    }

    #[test]
    fn abel_jacobi_sums() {
        let (w1, w2) = (c(1.0, 0.0), c(0.3, 1.1));
        let a = c(0.4, 0.2);
        let b = c(-0.7, 0.9);
        let zero = c(0.0, 0.0);
        let p = abel_jacobi_elliptic(w1, w2, &[(a, 1), (zero, -1)]).unwrap();
        let direct = abel_jacobi_elliptic(w1, w2, &[(a + w1 * 3.0 - w2, 1), (zero, -1)]).unwrap();
        assert!(RealTorus::distance_to_zero(&(&p.coords - &direct.coords)) < 1e-12);
        let neg = abel_jacobi_elliptic(w1, w2, &[(a, 1), (-a, 1), (zero, -2)]).unwrap();
        assert!(RealTorus::distance_to_zero(&neg.coords) < 1e-12);
        let s = abel_jacobi_elliptic(w1, w2, &[(a, 1), (b, 1), (zero, -2)]).unwrap();
        let ab = abel_jacobi_elliptic(w1, w2, &[(a + b, 1), (zero, -1)]).unwrap();
        assert!(RealTorus::distance_to_zero(&(&s.coords - &ab.coords)) < 1e-12);
        assert!(matches!(
            abel_jacobi_elliptic(w1, w2, &[(a, 1)]),
            Err(HodgeError::DegreeNotZero(1))
        ));
    }
}
