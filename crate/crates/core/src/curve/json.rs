//! JSON descriptions of fields, curves, points, divisors and function programs.
//!
//! Field elements are written as an integer (reduced into the prime field),
//! a decimal string, or an array of prime-field coefficients, low degree first.

use std::sync::Arc;

use serde::Deserialize;

use super::{Curve, CurveError, Divisor, FiniteField, FunctionProgram, Point};

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    fn value(&self) -> Result<i64, CurveError> {
        match self {
            Scalar::Int(n) => Ok(*n),
            Scalar::Text(s) => s
                .trim()
                .parse()
                .map_err(|_| CurveError::InvalidField(format!("not an integer: {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum FieldValue {
    Scalar(Scalar),
    Coeffs(Vec<Scalar>),
}

impl FieldValue {
    pub fn resolve(&self, f: &FiniteField) -> Result<u32, CurveError> {
        match self {
            FieldValue::Scalar(s) => Ok(f.from_int(s.value()?)),
            FieldValue::Coeffs(cs) => {
                let cs = cs.iter().map(Scalar::value).collect::<Result<Vec<_>, _>>()?;
                f.from_coeffs(&cs)
            }
        }
    }
}

/// Prime-field coefficients of `x` as decimal strings.
pub fn field_element_json(f: &FiniteField, x: u32) -> Vec<String> {
    f.coeffs(x).iter().map(|c| c.to_string()).collect()
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum CurveType {
    Elliptic,
    P1,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub p: u32,
    #[serde(default = "one")]
    pub k: u32,
    /// Monic modulus coefficients, low degree first; required when `k > 1`.
    #[serde(default)]
    pub modulus: Option<Vec<i64>>,
    pub curve: CurveType,
    #[serde(default)]
    pub a: Option<FieldValue>,
    #[serde(default)]
    pub b: Option<FieldValue>,
}

fn one() -> u32 {
    1
}

impl CurveSpec {
    pub fn field(&self) -> Result<FiniteField, CurveError> {
        match (&self.modulus, self.k) {
            (None, 1) => FiniteField::prime(self.p),
            (None, k) => Err(CurveError::InvalidField(format!("degree {k} needs a modulus"))),
            (Some(m), k) => {
                let m: Vec<u32> = m.iter().map(|c| c.rem_euclid(self.p.max(1) as i64) as u32).collect();
                FiniteField::new(self.p, k, &m)
            }
        }
    }

    pub fn build(&self) -> Result<Curve, CurveError> {
        let f = Arc::new(self.field()?);
        match self.curve {
            CurveType::P1 => {
                if self.a.is_some() || self.b.is_some() {
                    return Err(CurveError::InvalidCurve("the projective line takes no coefficients".into()));
                }
                Ok(Curve::projective_line(f))
            }
            CurveType::Elliptic => {
                let coeff = |v: &Option<FieldValue>, name: &str| {
                    v.as_ref()
                        .ok_or_else(|| CurveError::InvalidCurve(format!("missing coefficient {name}")))?
                        .resolve(&f)
                };
                let (a, b) = (coeff(&self.a, "a")?, coeff(&self.b, "b")?);
                Curve::elliptic(f, a, b)
            }
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSpec {
    #[serde(default)]
    pub x: Option<FieldValue>,
    #[serde(default)]
    pub y: Option<FieldValue>,
    #[serde(default)]
    pub inf: bool,
}

impl PointSpec {
    pub fn resolve(&self, c: &Curve) -> Result<Point, CurveError> {
        let f = c.field();
        let p = match (self.inf, &self.x) {
            (true, None) if self.y.is_none() => Point::Infinity,
            (true, _) => return Err(CurveError::NotOnCurve("point at infinity with coordinates".into())),
            (false, None) => return Err(CurveError::NotOnCurve("missing x".into())),
            (false, Some(x)) => {
                let x = x.resolve(f)?;
                let y = match (&self.y, c.is_elliptic()) {
                    (Some(y), true) => y.resolve(f)?,
                    (None, true) => return Err(CurveError::NotOnCurve("missing y".into())),
                    (Some(y), false) if y.resolve(f)? != 0 => {
                        return Err(CurveError::NotOnCurve("points of the line have no y".into()))
                    }
                    (_, false) => 0,
                };
                Point::affine(x, y)
            }
        };
        c.check_point(&p)?;
        Ok(p)
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorTerm {
    #[serde(flatten)]
    pub point: PointSpec,
    pub mult: i64,
}

pub fn divisor_from_json(c: &Curve, terms: &[DivisorTerm]) -> Result<Divisor, CurveError> {
    let mut d = Divisor::zero();
    for t in terms {
        d.add_term(t.point.resolve(c)?, t.mult);
    }
    Ok(d)
}

/// `(a·x + b·y + c)^exp`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorSpec {
    #[serde(default)]
    pub a: Option<FieldValue>,
    #[serde(default)]
    pub b: Option<FieldValue>,
    #[serde(default)]
    pub c: Option<FieldValue>,
    #[serde(default = "one_i64")]
    pub exp: i64,
}

fn one_i64() -> i64 {
    1
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionSpec {
    #[serde(default)]
    pub constant: Option<FieldValue>,
    #[serde(default)]
    pub factors: Vec<FactorSpec>,
}

impl FunctionSpec {
    pub fn build(&self, c: &Curve) -> Result<FunctionProgram, CurveError> {
        let f = c.field();
        let get = |v: &Option<FieldValue>| v.as_ref().map_or(Ok(0), |v| v.resolve(f));
        let k = self.constant.as_ref().map_or(Ok(1), |v| v.resolve(f))?;
        let mut g = FunctionProgram::constant(k)?;
        for fac in &self.factors {
            g = g.times_form(f, get(&fac.a)?, get(&fac.b)?, get(&fac.c)?, fac.exp)?;
        }
        g.check_on(c)?;
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> CurveSpec {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn parses_curves_and_points() {
        let c = spec(r#"{"p": 7, "curve": "elliptic", "a": -1, "b": 0}"#).build().unwrap();
        let p: PointSpec = serde_json::from_str(r#"{"x": 0, "y": "0"}"#).unwrap();
        assert_eq!(p.resolve(&c).unwrap(), Point::affine(0, 0));
        let o: PointSpec = serde_json::from_str(r#"{"inf": true}"#).unwrap();
        assert_eq!(o.resolve(&c).unwrap(), Point::Infinity);
        let bad: PointSpec = serde_json::from_str(r#"{"x": 0, "y": 1}"#).unwrap();
        assert!(matches!(bad.resolve(&c), Err(CurveError::NotOnCurve(_))));

        let e = spec(r#"{"p": 5, "k": 2, "modulus": [3, 0, 1], "curve": "elliptic", "a": 0, "b": 1}"#);
        let c = e.build().unwrap();
        assert_eq!(c.field().order(), 25);
        let x = FieldValue::Coeffs(vec![Scalar::Int(1), Scalar::Text("2".into())]);
        assert_eq!(field_element_json(c.field(), x.resolve(c.field()).unwrap()), vec!["1", "2"]);
    }

    #[test]
    fn rejects_unknown_fields_and_bad_input() {
        assert!(serde_json::from_str::<CurveSpec>(r#"{"p": 7, "curve": "p1", "z": 1}"#).is_err());
        assert!(spec(r#"{"p": 7, "curve": "elliptic", "a": 0}"#).build().is_err());
        assert!(spec(r#"{"p": 8, "curve": "p1"}"#).build().is_err());
        assert!(spec(r#"{"p": 5, "k": 2, "curve": "p1"}"#).build().is_err());
    }

    #[test]
    fn divisors_and_functions() {
        let c = spec(r#"{"p": 7, "curve": "p1"}"#).build().unwrap();
        let terms: Vec<DivisorTerm> =
            serde_json::from_str(r#"[{"x": 1, "mult": 1}, {"x": 3, "mult": -1}, {"inf": true, "mult": 0}]"#)
                .unwrap();
        let d = divisor_from_json(&c, &terms).unwrap();
        assert_eq!(d.degree(), 0);
        let f: FunctionSpec =
            serde_json::from_str(r#"{"factors": [{"a": 1}, {"a": 1, "c": -2, "exp": -1}]}"#).unwrap();
        let g = f.build(&c).unwrap();
        assert_eq!(super::super::evaluate_at_divisor(&c, &g, &d).unwrap(), 2);
    }
}
