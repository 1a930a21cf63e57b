//! Dense univariate polynomials over a [`FiniteField`], low degree first.

use super::field::FiniteField;

pub type Poly = Vec<u32>;

pub fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn add(f: &FiniteField, a: &[u32], b: &[u32]) -> Poly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| f.add(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
            .collect(),
    )
}

pub fn sub(f: &FiniteField, a: &[u32], b: &[u32]) -> Poly {
    let nb: Poly = b.iter().map(|&c| f.neg(c)).collect();
    add(f, a, &nb)
}

pub fn mul(f: &FiniteField, a: &[u32], b: &[u32]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(f: &FiniteField, a: &[u32], b: &[u32]) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = f.inv(b[db]).expect("nonzero leading coefficient");
    let mut r = trim(a.to_vec());
    let mut q = vec![0u32; r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(r[dr], lead_inv);
        let shift = dr - db;
        q[shift] = c;
        for (j, &bj) in b[..=db].iter().enumerate() {
            r[shift + j] = f.sub(r[shift + j], f.mul(c, bj));
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn rem(f: &FiniteField, a: &[u32], b: &[u32]) -> Poly {
    divrem(f, a, b).1
}

pub fn monic(f: &FiniteField, a: &[u32]) -> Poly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = f.inv(a[d]).expect("nonzero leading coefficient");
            a[..=d].iter().map(|&c| f.mul(c, inv)).collect()
        }
    }
}

/// Monic greatest common divisor.
pub fn gcd(f: &FiniteField, a: &[u32], b: &[u32]) -> Poly {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

/// `base^e mod m`.
pub fn powmod(f: &FiniteField, base: &[u32], mut e: u64, m: &[u32]) -> Poly {
    let mut acc = vec![1u32];
    let mut b = rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &b), m);
        }
        e >>= 1;
        if e > 0 {
            b = rem(f, &mul(f, &b, &b), m);
        }
    }
    acc
}

pub fn eval(f: &FiniteField, a: &[u32], x: u32) -> u32 {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// Irreducibility over the prime field `f` by Rabin-style gcd checks:
/// `gcd(m, x^{p^i} − x) = 1` for `1 ≤ i ≤ k/2` and `m | x^{p^k} − x`.
pub fn is_irreducible(f: &FiniteField, m: &[u32]) -> bool {
    let Some(k) = degree(m) else {
        return false;
    };
    if k == 0 {
        return false;
    }
    let p = f.order() as u64;
    let x = vec![0u32, 1];
    let mut h = rem(f, &x, m);
    for i in 1..=k {
        h = powmod(f, &h, p, m);
        let diff = sub(f, &h, &x);
        if i <= k / 2 && degree(&gcd(f, m, &diff)) != Some(0) {
            return false;
        }
        if i == k {
            return rem(f, &diff, m).is_empty();
        }
    }
    unreachable!()
}

/// Distinct roots in `f` of a nonzero polynomial, sorted by code.
pub fn roots(f: &FiniteField, a: &[u32]) -> Vec<u32> {
    let a = trim(a.to_vec());
    let Some(d) = degree(&a) else {
        return Vec::new();
    };
    if d == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    if f.order() % 2 == 0 {
        out = f.elements().filter(|&x| eval(f, &a, x) == 0).collect();
    } else {
        // Product of the distinct linear factors.
        let x = vec![0u32, 1];
        let xq = powmod(f, &x, f.order() as u64, &a);
        let g = gcd(f, &a, &sub(f, &xq, &x));
        split(f, &g, &mut out);
        out.sort_unstable();
    }
    out
}

fn split(f: &FiniteField, g: &[u32], out: &mut Vec<u32>) {
    match degree(g) {
        None | Some(0) => {}
        Some(1) => out.push(f.neg(f.div(g[0], g[1]).expect("nonzero leading coefficient"))),
        Some(d) => {
            let half = (f.order() as u64 - 1) / 2;
            for delta in f.elements() {
                let shifted = vec![delta, 1];
                let h = sub(f, &powmod(f, &shifted, half, g), &[1]);
                let c = gcd(f, g, &h);
                if let Some(dc) = degree(&c) {
                    if dc > 0 && dc < d {
                        let (rest, _) = divrem(f, g, &c);
                        split(f, &c, out);
                        split(f, &rest, out);
                        return;
                    }
                }
            }
            unreachable!("equal-degree splitting of a product of linear factors");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_products() {
        let f = FiniteField::prime(13).unwrap();
        // (x - 2)^2 (x - 5) (x^2 + 2): x^2 + 2 has no roots mod 13 (-2 is a non-residue).
        let mut a = vec![1u32];
        for r in [2, 2, 5] {
            a = mul(&f, &a, &[f.neg(r), 1]);
        }
        a = mul(&f, &a, &[2, 0, 1]);
        assert_eq!(roots(&f, &a), vec![2, 5]);
    }

    #[test]
    fn roots_in_extension() {
        let f = FiniteField::new(7, 2, &[1, 0, 1]).unwrap();
        // x^2 + 1 splits over F_49.
        let r = roots(&f, &[1, 0, 1]);
        assert_eq!(r.len(), 2);
        for x in r {
            assert_eq!(eval(&f, &[1, 0, 1], x), 0);
        }
    }

    #[test]
    fn gcd_and_division() {
        let f = FiniteField::prime(7).unwrap();
        let a = mul(&f, &[1, 1], &[2, 1]);
        let b = mul(&f, &[1, 1], &[3, 1]);
        assert_eq!(gcd(&f, &a, &b), vec![1, 1]);
        let (q, r) = divrem(&f, &a, &[1, 1]);
        assert_eq!(q, vec![2, 1]);
        assert!(r.is_empty());
    }
}
