use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use super::{Elt, FiniteSemigroup};

/// Strongly connected components of the graph on `0..n` given by `succ`.
///
/// Component ids are assigned in order of their smallest member. Also
/// returns, for every component, the set of components reachable from it.
pub(crate) fn scc_with_reachability<F>(n: usize, succ: F) -> (Vec<usize>, Vec<FixedBitSet>)
where
    F: Fn(usize) -> Vec<usize>,
{
    let (class_of, k, order) = scc_inner(n, &succ);
    let mut below = vec![FixedBitSet::with_capacity(k); k];
    // `order` lists components so that successors come first.
    for &c in &order {
        below[c].insert(c);
    }
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); k];
    for x in 0..n {
        members[class_of[x]].push(x);
    }
    for &c in &order {
        let mut acc = below[c].clone();
        for &x in &members[c] {
            for y in succ(x) {
                let d = class_of[y];
                if d != c {
                    acc.union_with(&below[d]);
                }
            }
        }
        below[c] = acc;
    }
    (class_of, below)
}

/// Component ids only (no reachability); ids ordered by smallest member.
pub(crate) fn scc_classes<F>(n: usize, succ: F) -> (Vec<usize>, usize)
where
    F: Fn(usize) -> Vec<usize>,
{
    let (class_of, k, _) = scc_inner(n, &succ);
    (class_of, k)
}

fn scc_inner<F>(n: usize, succ: &F) -> (Vec<usize>, usize, Vec<usize>)
where
    F: Fn(usize) -> Vec<usize>,
{
    let mut g: DiGraph<(), ()> = DiGraph::with_capacity(n, n);
    for _ in 0..n {
        g.add_node(());
    }
    for x in 0..n {
        for y in succ(x) {
            g.add_edge(NodeIndex::new(x), NodeIndex::new(y), ());
        }
    }
    // tarjan_scc yields components in reverse topological order.
    let comps = tarjan_scc(&g);
    let mut raw_of = vec![0usize; n];
    for (ci, comp) in comps.iter().enumerate() {
        for v in comp {
            raw_of[v.index()] = ci;
        }
    }
    let mut relabel: HashMap<usize, usize> = HashMap::new();
    let mut class_of = vec![0usize; n];
    for x in 0..n {
        let next = relabel.len();
        let id = *relabel.entry(raw_of[x]).or_insert(next);
        class_of[x] = id;
    }
    let order = (0..comps.len()).map(|ci| relabel[&ci]).collect();
    (class_of, relabel.len(), order)
}

/// Green's relations of a finite semigroup.
#[derive(Debug, Clone)]
pub struct GreenData {
    pub l_class: Vec<usize>,
    pub r_class: Vec<usize>,
    pub j_class: Vec<usize>,
    pub h_class: Vec<usize>,
    l_members: Vec<Vec<Elt>>,
    r_members: Vec<Vec<Elt>>,
    j_members: Vec<Vec<Elt>>,
    h_members: Vec<Vec<Elt>>,
    // `*_below[c]` holds every class d with d <= c.
    l_below: Vec<FixedBitSet>,
    r_below: Vec<FixedBitSet>,
    j_below: Vec<FixedBitSet>,
    pub idempotents: Vec<Elt>,
    /// H-classes containing an idempotent.
    pub group_h_classes: Vec<usize>,
}

fn members_of(class_of: &[usize], k: usize) -> Vec<Vec<Elt>> {
    let mut m = vec![Vec::new(); k];
    for (x, &c) in class_of.iter().enumerate() {
        m[c].push(x);
    }
    m
}

impl GreenData {
    pub fn compute(s: &FiniteSemigroup) -> Self {
        let n = s.size();
        let labels = s.cayley_labels();
        let (r_class, r_below) =
            scc_with_reachability(n, |x| labels.iter().map(|&a| s.mul(x, a)).collect());
        let (l_class, l_below) =
            scc_with_reachability(n, |x| labels.iter().map(|&a| s.mul(a, x)).collect());
        let (j_class, j_below) = scc_with_reachability(n, |x| {
            labels
                .iter()
                .flat_map(|&a| [s.mul(x, a), s.mul(a, x)])
                .collect()
        });

        let mut h_ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut h_class = vec![0; n];
        for x in 0..n {
            let next = h_ids.len();
            h_class[x] = *h_ids.entry((l_class[x], r_class[x])).or_insert(next);
        }
        let idempotents = s.idempotents();
        let mut group_h_classes: Vec<usize> = idempotents.iter().map(|&e| h_class[e]).collect();
        group_h_classes.sort_unstable();
        group_h_classes.dedup();

        Self {
            l_members: members_of(&l_class, l_below.len()),
            r_members: members_of(&r_class, r_below.len()),
            j_members: members_of(&j_class, j_below.len()),
            h_members: members_of(&h_class, h_ids.len()),
            l_class,
            r_class,
            j_class,
            h_class,
            l_below,
            r_below,
            j_below,
            idempotents,
            group_h_classes,
        }
    }

    pub fn leq_l(&self, x: Elt, y: Elt) -> bool {
        self.l_below[self.l_class[y]].contains(self.l_class[x])
    }

    pub fn leq_r(&self, x: Elt, y: Elt) -> bool {
        self.r_below[self.r_class[y]].contains(self.r_class[x])
    }

    pub fn leq_j(&self, x: Elt, y: Elt) -> bool {
        self.j_below[self.j_class[y]].contains(self.j_class[x])
    }

    pub fn leq_h(&self, x: Elt, y: Elt) -> bool {
        self.leq_l(x, y) && self.leq_r(x, y)
    }

    pub fn l_equiv(&self, x: Elt, y: Elt) -> bool {
        self.l_class[x] == self.l_class[y]
    }

    pub fn r_equiv(&self, x: Elt, y: Elt) -> bool {
        self.r_class[x] == self.r_class[y]
    }

    pub fn j_equiv(&self, x: Elt, y: Elt) -> bool {
        self.j_class[x] == self.j_class[y]
    }

    pub fn h_equiv(&self, x: Elt, y: Elt) -> bool {
        self.h_class[x] == self.h_class[y]
    }

    pub fn lt_l(&self, x: Elt, y: Elt) -> bool {
        self.leq_l(x, y) && !self.l_equiv(x, y)
    }

    pub fn lt_h(&self, x: Elt, y: Elt) -> bool {
        self.leq_h(x, y) && !self.h_equiv(x, y)
    }

    pub fn l_classes(&self) -> &[Vec<Elt>] {
        &self.l_members
    }

    pub fn r_classes(&self) -> &[Vec<Elt>] {
        &self.r_members
    }

    pub fn j_classes(&self) -> &[Vec<Elt>] {
        &self.j_members
    }

    pub fn h_classes(&self) -> &[Vec<Elt>] {
        &self.h_members
    }

    /// Order on L-class ids: `class_leq_l(c, d)` iff `c <= d`.
    pub fn class_leq_l(&self, c: usize, d: usize) -> bool {
        self.l_below[d].contains(c)
    }

    pub fn class_leq_r(&self, c: usize, d: usize) -> bool {
        self.r_below[d].contains(c)
    }

    pub fn class_leq_j(&self, c: usize, d: usize) -> bool {
        self.j_below[d].contains(c)
    }

    /// The J-class lying below every other one.
    pub fn minimal_j_class(&self) -> usize {
        (0..self.j_members.len())
            .find(|&c| (0..self.j_members.len()).all(|d| self.j_below[d].contains(c)))
            .expect("a finite semigroup has a minimal ideal")
    }
}
