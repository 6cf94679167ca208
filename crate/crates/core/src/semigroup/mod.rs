//! Finite semigroups given by multiplication tables.
//!
//! Elements are dense indices `0..n`. When an operation needs the monoid
//! `S^I`, the adjoined identity is materialized as the fresh index `n` by
//! [`FiniteSemigroup::with_identity`].

mod green;
mod schutzenberger;
mod transformation;

pub use green::GreenData;
pub use schutzenberger::{
    is_h_element, lift_group_onto, lift_group_onto_with, maximal_subgroup, minimal_ideal,
    right_stabilizer, schutzenberger_right, IdempotentChoice, SchutzView,
};
pub use transformation::{compose, TransformationClosure};

use std::collections::HashSet;

use thiserror::Error;

/// Index of an element of a finite semigroup.
pub type Elt = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("a semigroup needs at least one element")]
    Empty,
    #[error("row {row} has {len} entries, expected {n}")]
    Shape { row: usize, len: usize, n: usize },
    #[error("entry {value} at ({row}, {col}) is out of range for {n} elements")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        n: usize,
    },
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NonAssociative(Elt, Elt, Elt),
    #[error("empty generator set")]
    EmptyGeneratorSet,
    #[error("generator {index} is not a total map on {degree} points")]
    BadTransformation { index: usize, degree: usize },
    #[error("element {0} is out of range")]
    ElementOutOfRange(Elt),
    #[error("element {0} is not a product of the declared generators")]
    NotGenerated(Elt),
    #[error("element {0} is not idempotent")]
    NotIdempotent(Elt),
    #[error("the map is not surjective onto the target group")]
    NotSurjective,
    #[error("closure has more than {cap} elements")]
    CapExceeded { cap: usize },
}

/// A finite semigroup with an explicit multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    n: usize,
    table: Vec<Elt>,
    generators: Option<Vec<Elt>>,
    identity: Option<Elt>,
}

impl FiniteSemigroup {
    /// Validates a table given as rows; `rows[i][j]` is `i*j`.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self, SemigroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(SemigroupError::Empty);
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(SemigroupError::Shape {
                    row: i,
                    len: row.len(),
                    n,
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(SemigroupError::IndexOutOfRange {
                        row: i,
                        col: j,
                        value: v,
                        n,
                    });
                }
            }
            table.extend(row);
        }
        let s = Self::from_table_unchecked(n, table);
        s.check_associative()?;
        Ok(s)
    }

    pub fn from_table_with_generators(
        rows: Vec<Vec<usize>>,
        generators: Vec<Elt>,
    ) -> Result<Self, SemigroupError> {
        let s = Self::from_table(rows)?;
        s.with_generators(generators)
    }

    /// Attaches a generating set, checking that it reaches every element.
    pub fn with_generators(mut self, generators: Vec<Elt>) -> Result<Self, SemigroupError> {
        if generators.is_empty() {
            return Err(SemigroupError::EmptyGeneratorSet);
        }
        if let Some(&g) = generators.iter().find(|&&g| g >= self.n) {
            return Err(SemigroupError::ElementOutOfRange(g));
        }
        let reached = self.generated_by(&generators);
        if reached.len() != self.n {
            let reached: HashSet<_> = reached.into_iter().collect();
            let missing = (0..self.n).find(|x| !reached.contains(x)).unwrap_or(0);
            return Err(SemigroupError::NotGenerated(missing));
        }
        self.generators = Some(generators);
        Ok(self)
    }

    /// Builds a semigroup from a table known to be associative (e.g. a
    /// subsemigroup of a power semigroup).
    pub(crate) fn from_table_unchecked(n: usize, table: Vec<Elt>) -> Self {
        debug_assert_eq!(table.len(), n * n);
        Self {
            n,
            table,
            generators: None,
            identity: None,
        }
    }

    /// Closes a set of transformations of `{0..degree-1}` under composition.
    ///
    /// Functions act on the right: the product `x*y` applies `x` first.
    /// Element 0 is the first generator.
    pub fn from_transformations(
        degree: usize,
        gens: &[Vec<usize>],
    ) -> Result<Self, SemigroupError> {
        let closure = TransformationClosure::new(degree, gens, usize::MAX)?;
        Ok(closure.to_semigroup())
    }

    fn check_associative(&self) -> Result<(), SemigroupError> {
        for i in 0..self.n {
            for j in 0..self.n {
                let ij = self.mul(i, j);
                for k in 0..self.n {
                    if self.mul(ij, k) != self.mul(i, self.mul(j, k)) {
                        return Err(SemigroupError::NonAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> std::ops::Range<Elt> {
        0..self.n
    }

    #[inline]
    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        self.table[a * self.n + b]
    }

    pub fn row(&self, a: Elt) -> &[Elt] {
        &self.table[a * self.n..(a + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<Elt>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn generators(&self) -> Option<&[Elt]> {
        self.generators.as_deref()
    }

    /// Index of the adjoined identity `I`, when this is some `S^I`.
    pub fn adjoined_identity(&self) -> Option<Elt> {
        self.identity
    }

    /// Edge labels for Cayley graphs: the generators when known, else everything.
    pub(crate) fn cayley_labels(&self) -> Vec<Elt> {
        match &self.generators {
            Some(g) => g.clone(),
            None => (0..self.n).collect(),
        }
    }

    /// `S^I`: a copy of `S` with a fresh identity at index `n`.
    pub fn with_identity(&self) -> FiniteSemigroup {
        let m = self.n + 1;
        let id = self.n;
        let mut table = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                table.push(if i == id {
                    j
                } else if j == id {
                    i
                } else {
                    self.mul(i, j)
                });
            }
        }
        let generators = self.generators.clone().map(|mut g| {
            g.push(id);
            g
        });
        FiniteSemigroup {
            n: m,
            table,
            generators,
            identity: Some(id),
        }
    }

    /// Direct product; the pair `(i, j)` has index `i * other.size() + j`.
    pub fn direct_product(&self, other: &FiniteSemigroup) -> FiniteSemigroup {
        let m = other.n;
        let n = self.n * m;
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let (a1, a2) = (a / m, a % m);
                let (b1, b2) = (b / m, b % m);
                table.push(self.mul(a1, b1) * m + other.mul(a2, b2));
            }
        }
        FiniteSemigroup::from_table_unchecked(n, table)
    }

    pub fn is_idempotent(&self, x: Elt) -> bool {
        self.mul(x, x) == x
    }

    pub fn idempotents(&self) -> Vec<Elt> {
        self.elements().filter(|&x| self.is_idempotent(x)).collect()
    }

    /// `x^k` for `k >= 1`.
    pub fn power(&self, x: Elt, k: usize) -> Elt {
        assert!(k >= 1, "semigroup powers start at 1");
        let mut acc = x;
        for _ in 1..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    /// The unique idempotent power of `x`.
    pub fn omega(&self, x: Elt) -> Elt {
        let mut seen = vec![false; self.n];
        let mut p = x;
        while !seen[p] {
            seen[p] = true;
            p = self.mul(p, x);
        }
        // `p` now lies on the cycle of the monogenic subsemigroup, which is a
        // group; its identity is the only idempotent there.
        let mut q = p;
        loop {
            if self.is_idempotent(q) {
                return q;
            }
            q = self.mul(q, x);
        }
    }

    /// Cyclic subsemigroup `{x, x^2, ...}` in order of first appearance.
    pub fn cyclic(&self, x: Elt) -> Vec<Elt> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut p = x;
        while !seen[p] {
            seen[p] = true;
            out.push(p);
            p = self.mul(p, x);
        }
        out
    }

    /// Subsemigroup generated by `gens`, in breadth-first order.
    pub fn generated_by(&self, gens: &[Elt]) -> Vec<Elt> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for &g in gens {
            if !seen[g] {
                seen[g] = true;
                out.push(g);
            }
        }
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out
    }

    /// `true` if every element is a product of elements of `set`, i.e. the
    /// set is closed under multiplication.
    pub fn is_closed(&self, set: &[Elt]) -> bool {
        let mut mark = vec![false; self.n];
        for &x in set {
            mark[x] = true;
        }
        set.iter()
            .all(|&a| set.iter().all(|&b| mark[self.mul(a, b)]))
    }

    /// Maximal subgroup at the idempotent `e` inside the subsemigroup `within`
    /// (or all of `S`): `{x : ex = x = xe, x^omega = e}`.
    pub(crate) fn group_at(&self, e: Elt, within: Option<&[Elt]>) -> Vec<Elt> {
        let test = |x: Elt| self.mul(e, x) == x && self.mul(x, e) == x && self.omega(x) == e;
        match within {
            Some(p) => {
                let mut v: Vec<Elt> = p.iter().copied().filter(|&x| test(x)).collect();
                v.sort_unstable();
                v.dedup();
                v
            }
            None => self.elements().filter(|&x| test(x)).collect(),
        }
    }

    pub fn green(&self) -> GreenData {
        GreenData::compute(self)
    }
}
