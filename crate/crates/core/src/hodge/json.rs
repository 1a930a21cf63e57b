//! JSON descriptions of Hodge structures and complex vectors.
//!
//! Complex numbers are written `[re, im]` or as a bare real number.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{CVector, HodgeError, HodgeStructure, Tolerance};

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq)]
#[serde(untagged)]
pub enum ComplexJson {
    Real(f64),
    Pair([f64; 2]),
}

impl ComplexJson {
    pub fn value(&self) -> Complex64 {
        match *self {
            ComplexJson::Real(re) => Complex64::new(re, 0.0),
            ComplexJson::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

/// A real number as a fixed-point decimal string; `-0` prints as `0`.
pub fn decimal(x: f64) -> String {
    let s = format!("{x:.12}");
    if s.trim_start_matches('-').bytes().all(|b| b == b'0' || b == b'.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

/// `[re, im]` with both parts printed as decimal strings.
pub fn complex_json(z: Complex64) -> [String; 2] {
    [decimal(z.re), decimal(z.im)]
}

pub fn vector_from_json(v: &[ComplexJson]) -> CVector {
    CVector::from_iterator(v.len(), v.iter().map(ComplexJson::value))
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSpec {
    pub omega1: ComplexJson,
    pub omega2: ComplexJson,
}

/// Either `f0` and `q`, or a period `lattice`.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct HodgeSpec {
    #[serde(default)]
    pub f0: Option<Vec<Vec<ComplexJson>>>,
    #[serde(default)]
    pub q: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub lattice: Option<LatticeSpec>,
    #[serde(default)]
    pub tolerance: Option<f64>,
}

impl HodgeSpec {
    pub fn tolerance(&self) -> Result<Tolerance, HodgeError> {
        self.tolerance.map_or(Ok(Tolerance::default()), Tolerance::new)
    }

    pub fn build(&self) -> Result<HodgeStructure, HodgeError> {
        let tol = self.tolerance()?;
        match (&self.f0, &self.q, &self.lattice) {
            (None, None, Some(l)) => HodgeStructure::from_lattice(l.omega1.value(), l.omega2.value(), tol),
            (Some(f0), Some(q), None) => {
                let rows = f0.len();
                let cols = f0.first().map_or(0, Vec::len);
                if f0.iter().any(|r| r.len() != cols) || q.iter().any(|r| r.len() != q.len()) {
                    return Err(HodgeError::Shape("ragged matrix".into()));
                }
                let f0 = DMatrix::from_fn(rows, cols, |i, j| f0[i][j].value());
                let q = DMatrix::from_fn(q.len(), q.len(), |i, j| q[i][j]);
                HodgeStructure::new(f0, q, tol)
            }
            _ => Err(HodgeError::Shape("give either f0 and q, or lattice".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_forms() {
        let a: HodgeSpec = serde_json::from_str(r#"{"lattice": {"omega1": 1, "omega2": [0, 1]}}"#).unwrap();
        let b: HodgeSpec =
            serde_json::from_str(r#"{"f0": [[[0, 1], -1]], "q": [[0, 1], [-1, 0]], "tolerance": 1e-10}"#).unwrap();
        let (ha, hb) = (a.build().unwrap(), b.build().unwrap());
        assert!(ha.filtration_distance(&hb) < 1e-12);
        assert_eq!(hb.tolerance().eps(), 1e-10);
        let bad: HodgeSpec = serde_json::from_str(r#"{"q": [[0, 1], [-1, 0]]}"#).unwrap();
        assert!(matches!(bad.build(), Err(HodgeError::Shape(_))));
        assert!(serde_json::from_str::<HodgeSpec>(r#"{"lattice": {"omega1": 1, "omega2": 2}, "x": 1}"#).is_err());
    }

    #[test]
    fn decimals_have_no_negative_zero() {
        assert_eq!(complex_json(Complex64::new(-1e-15, -1.0)), ["0.000000000000", "-1.000000000000"]);
    }
}
