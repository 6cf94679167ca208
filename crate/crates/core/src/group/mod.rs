//! Finite groups extracted from semigroups, and their H-kernels.

mod kernel;
mod oracle;
mod word;

pub(crate) use kernel::for_each_tuple;
pub use kernel::{is_in_variety, kernel, kernel_indices, KernelFunctor};
pub use oracle::{kernel_minimality_oracle, normal_subgroups, subgroups, DEFAULT_ORACLE_CAP};
pub use word::{evaluate_group_word, parse_word_file, GroupWord};

use std::collections::HashMap;

use thiserror::Error;

use crate::semigroup::{Elt, FiniteSemigroup, TransformationClosure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("word has arity {expected}, got {got} arguments")]
    ArityMismatch { expected: usize, got: usize },
    #[error("group of order {order} exceeds the cap of {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("cannot parse group word {word:?}: {reason}")]
    WordParse { word: String, reason: String },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid variety parameters: {0}")]
    InvalidFunctor(String),
}

/// A finite group with its own multiplication table.
///
/// Local indices run over `0..order()`; `labels` records what each local
/// element stands for in a host structure (semigroup elements, permutations).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<usize>,
    mult: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let k = rows.len();
        Self::from_labeled_table((0..k).collect(), rows)
    }

    pub fn from_labeled_table(
        labels: Vec<usize>,
        rows: Vec<Vec<usize>>,
    ) -> Result<Self, GroupError> {
        let k = rows.len();
        if k == 0 || labels.len() != k {
            return Err(GroupError::NotAGroup("empty or mislabeled table".into()));
        }
        let mut mult = Vec::with_capacity(k * k);
        for row in &rows {
            if row.len() != k || row.iter().any(|&v| v >= k) {
                return Err(GroupError::NotAGroup("table shape".into()));
            }
            mult.extend_from_slice(row);
        }
        let m = |a: usize, b: usize| mult[a * k + b];
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(GroupError::NotAGroup(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let identity = (0..k)
            .find(|&e| (0..k).all(|a| m(e, a) == a && m(a, e) == a))
            .ok_or_else(|| GroupError::NotAGroup("no identity".into()))?;
        let mut inverse = Vec::with_capacity(k);
        for a in 0..k {
            let inv = (0..k)
                .find(|&b| m(a, b) == identity && m(b, a) == identity)
                .ok_or_else(|| GroupError::NotAGroup(format!("{a} has no inverse")))?;
            inverse.push(inv);
        }
        Ok(Self {
            labels,
            mult,
            identity,
            inverse,
        })
    }

    /// The group formed by `elems` inside `s`; labels are the semigroup elements.
    pub fn from_semigroup_subset(s: &FiniteSemigroup, elems: &[Elt]) -> Result<Self, GroupError> {
        let pos: HashMap<Elt, usize> = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut rows = Vec::with_capacity(elems.len());
        for &a in elems {
            let mut row = Vec::with_capacity(elems.len());
            for &b in elems {
                let p = pos
                    .get(&s.mul(a, b))
                    .ok_or_else(|| GroupError::NotAGroup(format!("{a}*{b} leaves the subset")))?;
                row.push(*p);
            }
            rows.push(row);
        }
        Self::from_labeled_table(elems.to_vec(), rows)
    }

    /// A group of permutations (composition left to right); labels are
    /// positions in `perms`.
    pub fn from_permutations(perms: &[Vec<usize>]) -> Result<Self, GroupError> {
        let pos: HashMap<&[usize], usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_slice(), i))
            .collect();
        let mut rows = Vec::with_capacity(perms.len());
        for a in perms {
            let mut row = Vec::with_capacity(perms.len());
            for b in perms {
                let c: Vec<usize> = a.iter().map(|&q| b[q]).collect();
                row.push(*pos.get(c.as_slice()).ok_or_else(|| {
                    GroupError::NotAGroup("permutations not closed under composition".into())
                })?);
            }
            rows.push(row);
        }
        Self::from_table(rows)
    }

    /// Closure of permutation generators on `degree` points.
    pub fn from_permutation_generators(
        degree: usize,
        gens: &[Vec<usize>],
    ) -> Result<Self, GroupError> {
        let closure = TransformationClosure::new(degree, gens, usize::MAX)
            .map_err(|e| GroupError::NotAGroup(e.to_string()))?;
        let perms: Vec<Vec<usize>> = closure
            .elements
            .iter()
            .map(|p| p.iter().map(|&q| q as usize).collect())
            .collect();
        Self::from_permutations(&perms)
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> usize {
        self.labels[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut p = a;
        while p != self.identity {
            p = self.mul(p, a);
            k += 1;
        }
        k
    }

    pub fn power(&self, a: usize, k: usize) -> usize {
        let mut acc = self.identity;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn conjugate(&self, a: usize, by: usize) -> usize {
        self.mul(self.mul(by, a), self.inv(by))
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    /// Subgroup generated by `gens`, as sorted local indices.
    pub fn generate(&self, gens: &[usize]) -> Vec<usize> {
        let mut mark = vec![false; self.order()];
        let mut out = vec![self.identity];
        mark[self.identity] = true;
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !mark[y] {
                    mark[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// Cyclic subgroup generated by `a`.
    pub fn cyclic(&self, a: usize) -> Vec<usize> {
        self.generate(&[a])
    }

    pub fn is_normal(&self, members: &[usize]) -> bool {
        let mut mark = vec![false; self.order()];
        for &x in members {
            mark[x] = true;
        }
        members
            .iter()
            .all(|&x| self.elements().all(|g| mark[self.conjugate(x, g)]))
    }

    pub fn normal_closure(&self, members: &[usize]) -> Vec<usize> {
        let conj: Vec<usize> = members
            .iter()
            .flat_map(|&x| self.elements().map(move |g| (x, g)))
            .map(|(x, g)| self.conjugate(x, g))
            .collect();
        self.generate(&conj)
    }

    /// `[A, B]`, generated by all commutators `[a, b]`.
    pub fn commutator_subgroup(&self, a: &[usize], b: &[usize]) -> Vec<usize> {
        let comms: Vec<usize> = a
            .iter()
            .flat_map(|&x| b.iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.commutator(x, y))
            .collect();
        self.generate(&comms)
    }

    /// The subgroup on `members` (local indices), relabeled with host labels.
    pub fn subgroup(&self, members: &[usize]) -> FiniteGroup {
        let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let k = members.len();
        let mut mult = Vec::with_capacity(k * k);
        for &a in members {
            for &b in members {
                mult.push(pos[&self.mul(a, b)]);
            }
        }
        let inverse = members.iter().map(|&a| pos[&self.inv(a)]).collect();
        FiniteGroup {
            labels: members.iter().map(|&a| self.labels[a]).collect(),
            mult,
            identity: pos[&self.identity],
            inverse,
        }
    }

    /// `G/N` for a normal subgroup `N`, with the quotient map on local indices.
    pub fn quotient(&self, normal: &[usize]) -> (FiniteGroup, Vec<usize>) {
        debug_assert!(self.is_normal(normal));
        let mut coset = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for g in self.elements() {
            if coset[g] == usize::MAX {
                let id = reps.len();
                reps.push(g);
                for &n in normal {
                    coset[self.mul(g, n)] = id;
                }
            }
        }
        let k = reps.len();
        let mut mult = Vec::with_capacity(k * k);
        for &a in &reps {
            for &b in &reps {
                mult.push(coset[self.mul(a, b)]);
            }
        }
        let inverse = reps.iter().map(|&a| coset[self.inv(a)]).collect();
        let q = FiniteGroup {
            labels: (0..k).collect(),
            mult,
            identity: coset[self.identity],
            inverse,
        };
        (q, coset)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn tables_are_validated() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]]).is_ok());
        // right zero semigroup has no identity
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![0, 1]]).is_err());
    }

    #[test]
    fn symmetric_group_orders() {
        let s3 = corpus::group_s3();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        let orders: Vec<usize> = s3.elements().map(|a| s3.element_order(a)).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 3);
        assert_eq!(orders.iter().filter(|&&o| o == 3).count(), 2);
    }

    #[test]
    fn quotient_by_alternating_group() {
        let s3 = corpus::group_s3();
        let a3: Vec<usize> = s3
            .elements()
            .filter(|&a| s3.element_order(a) != 2)
            .collect();
        assert!(s3.is_normal(&a3));
        let (q, map) = s3.quotient(&a3);
        assert_eq!(q.order(), 2);
        for a in s3.elements() {
            for b in s3.elements() {
                assert_eq!(map[s3.mul(a, b)], q.mul(map[a], map[b]));
            }
        }
    }

    #[test]
    fn permutation_generators() {
        let s4 = FiniteGroup::from_permutation_generators(4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]])
            .unwrap();
        assert_eq!(s4.order(), 24);
    }

    #[test]
    fn subgroup_keeps_host_labels() {
        let z4 = corpus::group_cyclic(4);
        let sub = z4.subgroup(&z4.cyclic(2));
        assert_eq!(sub.order(), 2);
        assert_eq!(sub.labels(), &[0, 2]);
    }
}
