use std::fmt;

use super::poly;
use super::CurveError;

/// Largest supported field order; multiplication uses log/antilog tables.
pub const MAX_ORDER: u64 = 1 << 20;

/// The finite field `F_p[x]/(m)` with `m` monic irreducible of degree `k`.
///
/// Elements are `u32` codes `Σ c_i p^i` for the coefficient vector
/// `(c_0, …, c_{k-1})`; `0` and `1` are the field's zero and one.
#[derive(Clone)]
pub struct FiniteField {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.p, self.k, self.modulus)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FiniteField {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self, CurveError> {
        Self::new(p, 1, &[0, 1])
    }

    /// `F_p[x]/(modulus)`, with `modulus` given low degree first and monic of degree `k`.
    pub fn new(p: u32, k: u32, modulus: &[u32]) -> Result<Self, CurveError> {
        if !is_prime(p) {
            return Err(CurveError::InvalidField(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(CurveError::InvalidField("extension degree must be at least 1".into()));
        }
        let q = (p as u64).checked_pow(k).filter(|&q| q <= MAX_ORDER).ok_or_else(|| {
            CurveError::InvalidField(format!("field order {p}^{k} exceeds {MAX_ORDER}"))
        })?;
        if modulus.len() != k as usize + 1 || modulus[k as usize] != 1 {
            return Err(CurveError::InvalidField(format!(
                "modulus must be monic of degree {k}, got {modulus:?}"
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(CurveError::InvalidField(format!(
                "modulus coefficients must lie in [0, {p})"
            )));
        }
        let mut f = FiniteField {
            p,
            k,
            q: q as u32,
            // Every monic linear modulus gives the same coding of F_p.
            modulus: if k == 1 { vec![0, 1] } else { modulus.to_vec() },
            exp: Vec::new(),
            log: Vec::new(),
        };
        if k > 1 {
            let base = FiniteField::prime(p)?;
            if !poly::is_irreducible(&base, modulus) {
                return Err(CurveError::InvalidField(format!(
                    "modulus {modulus:?} is reducible over F_{p}"
                )));
            }
        }
        f.build_tables();
        Ok(f)
    }

    fn build_tables(&mut self) {
        let q = self.q as u64;
        if q == 2 {
            self.exp = vec![1];
            self.log = vec![0, 0];
            return;
        }
        let factors = prime_factors(q - 1);
        let g = (2..self.q)
            .find(|&g| factors.iter().all(|r| self.slow_pow(g, (q - 1) / r) != 1))
            .expect("the multiplicative group of a finite field is cyclic");
        let mut exp = Vec::with_capacity(self.q as usize - 1);
        let mut log = vec![0u32; self.q as usize];
        let mut x = 1u32;
        for i in 0..self.q - 1 {
            exp.push(x);
            log[x as usize] = i;
            x = self.slow_mul(x, g);
        }
        self.exp = exp;
        self.log = log;
    }

    fn digits(&self, mut x: u32) -> Vec<u64> {
        let mut d = vec![0u64; self.k as usize];
        for c in d.iter_mut() {
            *c = (x % self.p) as u64;
            x /= self.p;
        }
        d
    }

    fn undigits(&self, d: &[u64]) -> u32 {
        d.iter().rev().fold(0u32, |acc, &c| acc * self.p + c as u32)
    }

    /// Schoolbook product reduced by the modulus; used only to build tables.
    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let k = self.k as usize;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * k - 1];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        for i in (k..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &m) in self.modulus[..k].iter().enumerate() {
                let idx = i - k + j;
                prod[idx] = (prod[idx] + p * p - c * m as u64) % p;
            }
        }
        self.undigits(&prod[..k])
    }

    fn slow_pow(&self, x: u32, mut e: u64) -> u32 {
        let (mut acc, mut b) = (1u32, x);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, b);
            }
            b = self.slow_mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn contains(&self, x: u32) -> bool {
        x < self.q
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    pub fn from_coeffs(&self, c: &[i64]) -> Result<u32, CurveError> {
        if c.len() > self.k as usize {
            return Err(CurveError::InvalidField(format!(
                "{} coefficients for a degree-{} extension",
                c.len(),
                self.k
            )));
        }
        let d: Vec<u64> = (0..self.k as usize)
            .map(|i| c.get(i).map_or(0, |&v| v.rem_euclid(self.p as i64) as u64))
            .collect();
        Ok(self.undigits(&d))
    }

    /// Coefficients over the prime field, low degree first, always `k` of them.
    pub fn coeffs(&self, x: u32) -> Vec<u32> {
        self.digits(x).into_iter().map(|c| c as u32).collect()
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return ((a as u64 + b as u64) % self.p as u64) as u32;
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.k {
            let d = (a % self.p + b % self.p) % self.p;
            out += d * place;
            place = place.wrapping_mul(self.p);
            a /= self.p;
            b /= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.k == 1 {
            return (self.p - a % self.p) % self.p;
        }
        let mut a = a;
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.k {
            let d = (self.p - a % self.p) % self.p;
            out += d * place;
            place = place.wrapping_mul(self.p);
            a /= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q as u64 - 1;
        let i = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % n;
        self.exp[i as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.q - 1;
        Some(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// `a^e`; negative exponents require `a ≠ 0`.
    pub fn pow(&self, a: u32, e: i64) -> Option<u32> {
        if e == 0 {
            return Some(1);
        }
        if a == 0 {
            return if e > 0 { Some(0) } else { None };
        }
        let n = (self.q - 1) as i64;
        let i = (self.log[a as usize] as i64 * e.rem_euclid(n)).rem_euclid(n);
        Some(self.exp[i as usize])
    }

    pub fn is_square(&self, a: u32) -> bool {
        a == 0 || self.q % 2 == 0 || self.log[a as usize] % 2 == 0
    }

    /// A square root, when one exists.
    pub fn sqrt(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return Some(0);
        }
        let n = self.q - 1;
        let l = self.log[a as usize];
        if self.q % 2 == 0 {
            // Squaring is a bijection; halve the log modulo the odd order n.
            let half = ((l as u64 * ((n as u64 + 1) / 2)) % n as u64) as u32;
            return Some(self.exp[half as usize]);
        }
        (l % 2 == 0).then(|| self.exp[(l / 2) as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: u32) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let n = (self.q - 1) as u64;
        let l = self.log[a as usize] as u64;
        Some(n / num_integer::gcd(n, l))
    }

    /// `x ↦ x^p`.
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p as i64).expect("positive exponent")
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    /// Canonical text form: the code itself for prime fields, the coefficient list otherwise.
    pub fn format(&self, a: u32) -> String {
        if self.k == 1 {
            a.to_string()
        } else {
            format!("{:?}", self.coeffs(a))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(f: &FiniteField) {
        let q = f.order();
        let step = (q / 37).max(1);
        for a in (0..q).step_by(step as usize) {
            assert_eq!(f.add(a, f.neg(a)), 0);
            assert_eq!(f.mul(a, 1), a);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                assert_eq!(f.pow(a, (q - 1) as i64), Some(1));
            }
            for b in (0..q).step_by((step * 3) as usize) {
                assert_eq!(f.mul(a, b), f.slow_mul(a, b));
                for c in (0..q).step_by((step * 7) as usize) {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn prime_fields() {
        for p in [2, 3, 5, 7, 13, 31] {
            check_axioms(&FiniteField::prime(p).unwrap());
        }
        let f = FiniteField::prime(7).unwrap();
        assert_eq!(f.inv(3), Some(5));
        assert_eq!(f.from_int(-1), 6);
        assert!(FiniteField::prime(9).is_err());
    }

    #[test]
    fn extension_fields() {
        // x^2 + 1 is irreducible over F_7 since -1 is not a square mod 7.
        let f = FiniteField::new(7, 2, &[1, 0, 1]).unwrap();
        assert_eq!(f.order(), 49);
        check_axioms(&f);
        let i = f.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f.mul(i, i), f.from_int(-1));
        assert_eq!(f.frobenius(i), f.neg(i));
        let f = FiniteField::new(2, 4, &[1, 1, 0, 0, 1]).unwrap();
        check_axioms(&f);
        let f = FiniteField::new(5, 2, &[3, 0, 1]).unwrap();
        check_axioms(&f);
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 - 2 = (x - 3)(x + 3) over F_7.
        assert!(matches!(
            FiniteField::new(7, 2, &[5, 0, 1]),
            Err(CurveError::InvalidField(_))
        ));
        // Degree-4 product of two irreducible quadratics over F_2 with no roots.
        // (x^2 + x + 1)^2 = x^4 + x^2 + 1.
        assert!(FiniteField::new(2, 4, &[1, 0, 1, 0, 1]).is_err());
        assert!(FiniteField::new(7, 2, &[1, 0, 2]).is_err());
    }

    #[test]
    fn square_roots() {
        let f = FiniteField::new(5, 2, &[3, 0, 1]).unwrap();
        for a in f.elements() {
            let s = f.mul(a, a);
            assert!(f.is_square(s));
            let r = f.sqrt(s).unwrap();
            assert_eq!(f.mul(r, r), s);
        }
        let f2 = FiniteField::new(2, 3, &[1, 1, 0, 1]).unwrap();
        for a in f2.elements() {
            let r = f2.sqrt(a).unwrap();
            assert_eq!(f2.mul(r, r), a);
        }
    }
}
