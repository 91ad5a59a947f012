//! Commutative coefficient rings for pairings and functional equations.

use std::fmt::Debug;

use crate::field::{Fe, FieldCtx};

pub trait Ring {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for non-units.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// The structure map from the coefficient field.
    fn from_base(&self, a: &Fe) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn sum<I: IntoIterator<Item = Self::Elem>>(&self, it: I) -> Self::Elem {
        it.into_iter().fold(self.zero(), |acc, x| self.add(&acc, &x))
    }
}

impl Ring for FieldCtx {
    type Elem = Fe;

    fn zero(&self) -> Fe {
        FieldCtx::zero(self)
    }

    fn one(&self) -> Fe {
        FieldCtx::one(self)
    }

    fn add(&self, a: &Fe, b: &Fe) -> Fe {
        FieldCtx::add(self, a, b)
    }

    fn neg(&self, a: &Fe) -> Fe {
        FieldCtx::neg(self, a)
    }

    fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        FieldCtx::mul(self, a, b)
    }

    fn inv(&self, a: &Fe) -> Option<Fe> {
        FieldCtx::inv(self, a).ok()
    }

    fn from_base(&self, a: &Fe) -> Fe {
        a.clone()
    }

    fn is_zero(&self, a: &Fe) -> bool {
        FieldCtx::is_zero(self, a)
    }
}
