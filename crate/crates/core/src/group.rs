//! The abelian-group interface shared by every model.
//!
//! Groups are written additively. Elements carry no reference to their
//! group, so every operation goes through the group value; this lets the
//! same element type serve several groups (cochains in different degrees,
//! vectors compared with different tolerances).

use std::fmt::Debug;

pub trait AbGroup {
    type Elem: Clone + Debug;

    fn zero(&self) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    /// Equality in the group; numerical groups compare within a tolerance.
    fn same(&self, x: &Self::Elem, y: &Self::Elem) -> bool;

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.add(x, &self.neg(y))
    }

    fn is_zero(&self, x: &Self::Elem) -> bool {
        self.same(x, &self.zero())
    }

    /// `k · x` by double-and-add.
    fn mul_int(&self, x: &Self::Elem, k: i64) -> Self::Elem {
        let mut base = if k < 0 { self.neg(x) } else { x.clone() };
        let mut n = k.unsigned_abs();
        let mut acc = self.zero();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.add(&base, &base);
            }
        }
        acc
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// Shorthand for the element type of a group.
pub type El<G> = <G as AbGroup>::Elem;
