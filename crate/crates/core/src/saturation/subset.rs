use std::fmt;

use serde::{Serialize, Serializer};

use crate::semigroup::{Elt, FiniteSemigroup};

/// Largest universe a [`SubsetElt`] can describe.
pub const MAX_UNIVERSE: usize = 64;

/// A nonempty subset of a semigroup `T` with at most 64 elements, as a bit
/// mask; an element of the power semigroup `2^T`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetElt(u64);

impl SubsetElt {
    /// `None` for the empty mask.
    pub fn from_mask(mask: u64) -> Option<Self> {
        (mask != 0).then_some(Self(mask))
    }

    pub fn singleton(t: Elt) -> Self {
        assert!(
            t < MAX_UNIVERSE,
            "element {t} outside a 64-element universe"
        );
        Self(1 << t)
    }

    pub fn from_elements(elems: &[Elt]) -> Option<Self> {
        let mut mask = 0u64;
        for &t in elems {
            if t >= MAX_UNIVERSE {
                return None;
            }
            mask |= 1 << t;
        }
        Self::from_mask(mask)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Always `false`; subsets are nonempty by construction.
    pub fn is_empty(self) -> bool {
        false
    }

    pub fn contains(self, t: Elt) -> bool {
        t < MAX_UNIVERSE && self.0 >> t & 1 == 1
    }

    pub fn is_subset_of(self, other: SubsetElt) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: SubsetElt) -> SubsetElt {
        Self(self.0 | other.0)
    }

    /// Members in increasing order.
    pub fn elements(self) -> Vec<Elt> {
        let mut out = Vec::with_capacity(self.len());
        let mut m = self.0;
        while m != 0 {
            out.push(m.trailing_zeros() as usize);
            m &= m - 1;
        }
        out
    }

    /// Highest element index plus one.
    pub(crate) fn span(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }
}

impl fmt::Debug for SubsetElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SubsetElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for SubsetElt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.elements().serialize(serializer)
    }
}

/// `XY = {xy : x in X, y in Y}`; the caller guarantees both lie in `T`.
pub(crate) fn product_unchecked(t: &FiniteSemigroup, x: SubsetElt, y: SubsetElt) -> SubsetElt {
    let ys = y.elements();
    let mut mask = 0u64;
    for a in x.elements() {
        let row = t.row(a);
        for &b in &ys {
            mask |= 1 << row[b];
        }
    }
    SubsetElt(mask)
}
