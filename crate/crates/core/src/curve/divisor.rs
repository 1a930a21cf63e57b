use std::collections::BTreeMap;

use super::{Curve, CurveError, Point};
use crate::group::AbGroup;

/// A divisor `Σ n_P (P)` with distinct points and nonzero multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Divisor {
    terms: BTreeMap<Point, i64>,
}

impl Divisor {
    pub fn zero() -> Self {
        Divisor::default()
    }

    /// The divisor `(P)`.
    pub fn point(p: Point) -> Self {
        Divisor::from_terms([(p, 1)])
    }

    /// Merges repeated points and drops zero multiplicities.
    pub fn from_terms<I: IntoIterator<Item = (Point, i64)>>(terms: I) -> Self {
        let mut d = Divisor::zero();
        for (p, n) in terms {
            d.add_term(p, n);
        }
        d
    }

    pub fn add_term(&mut self, p: Point, n: i64) {
        let e = self.terms.entry(p).or_insert(0);
        *e += n;
        if *e == 0 {
            self.terms.remove(&p);
        }
    }

    pub fn multiplicity(&self, p: &Point) -> i64 {
        self.terms.get(p).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Point, &i64)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Point> {
        self.terms.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn disjoint(&self, other: &Divisor) -> bool {
        self.terms.keys().all(|p| !other.terms.contains_key(p))
    }

    pub fn plus(&self, other: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (p, n) in &other.terms {
            d.add_term(*p, *n);
        }
        d
    }

    pub fn scaled(&self, k: i64) -> Divisor {
        Divisor::from_terms(self.terms.iter().map(|(p, n)| (*p, n * k)))
    }

    pub fn minus(&self, other: &Divisor) -> Divisor {
        self.plus(&other.scaled(-1))
    }

    /// Group-law sum of the points with multiplicity (`O` on the projective line).
    pub fn sum(&self, c: &Curve) -> Point {
        self.terms
            .iter()
            .fold(Point::Infinity, |acc, (p, n)| c.add(&acc, &c.mul(p, *n)))
    }

    pub fn check_on(&self, c: &Curve) -> Result<(), CurveError> {
        self.terms.keys().try_for_each(|p| c.check_point(p))
    }

    pub fn format(&self, c: &Curve) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(p, n)| format!("{n}{}", c.format_point(p)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// The group of divisors under addition.
#[derive(Clone, Copy, Debug, Default)]
pub struct DivisorGroup;

impl AbGroup for DivisorGroup {
    type Elem = Divisor;

    fn zero(&self) -> Divisor {
        Divisor::zero()
    }

    fn add(&self, x: &Divisor, y: &Divisor) -> Divisor {
        x.plus(y)
    }

    fn neg(&self, x: &Divisor) -> Divisor {
        x.scaled(-1)
    }

    fn same(&self, x: &Divisor, y: &Divisor) -> bool {
        x == y
    }

    fn mul_int(&self, x: &Divisor, k: i64) -> Divisor {
        x.scaled(k)
    }
}
