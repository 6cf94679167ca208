use std::collections::HashMap;

use super::{Elt, FiniteSemigroup, GreenData, SemigroupError};
use crate::group::{kernel_indices, FiniteGroup, KernelFunctor};

/// The ≤_J-minimum J-class of `s`, sorted.
pub fn minimal_ideal(s: &FiniteSemigroup) -> Vec<Elt> {
    let g = s.green();
    g.j_classes()[g.minimal_j_class()].clone()
}

/// Minimal ideal of the subsemigroup `p` of `s`: `p^1 z p^1`, where `z` is
/// the product of all elements of `p`.
pub(crate) fn minimal_ideal_within(s: &FiniteSemigroup, p: &[Elt]) -> Vec<Elt> {
    debug_assert!(!p.is_empty());
    let z = p[1..].iter().fold(p[0], |acc, &x| s.mul(acc, x));
    let mut mark = vec![false; s.size()];
    mark[z] = true;
    for &a in p {
        let az = s.mul(a, z);
        mark[az] = true;
        mark[s.mul(z, a)] = true;
        for &b in p {
            mark[s.mul(az, b)] = true;
        }
    }
    (0..s.size()).filter(|&x| mark[x]).collect()
}

/// `{t in S^I : X t ⊆ X}` for a subset `X` of `S`.
///
/// Indices refer to `S^I`; the adjoined identity is `s.size()` and is always
/// included.
pub fn right_stabilizer(s: &FiniteSemigroup, set: &[Elt]) -> Vec<Elt> {
    let mut mark = vec![false; s.size()];
    for &x in set {
        mark[x] = true;
    }
    let mut out: Vec<Elt> = s
        .elements()
        .filter(|&t| set.iter().all(|&x| mark[s.mul(x, t)]))
        .collect();
    out.push(s.size());
    out
}

/// The right Schützenberger group of an H-class, as permutations of it.
#[derive(Debug, Clone)]
pub struct SchutzView {
    /// Members of the H-class, sorted.
    pub h_class: Vec<Elt>,
    /// Distinct permutations of positions in `h_class`; index 0 is the identity.
    pub permutations: Vec<Vec<usize>>,
    /// For each permutation, the least stabilizer element (in `S^I`) inducing it.
    pub witnesses: Vec<Elt>,
    /// Permutation index induced by every stabilizer element.
    pub induced: HashMap<Elt, usize>,
    /// Group structure on the permutation indices (composition left to right).
    pub group: FiniteGroup,
}

impl SchutzView {
    pub fn order(&self) -> usize {
        self.permutations.len()
    }

    /// Image of a stabilizer element of `S^I` in the group.
    pub fn image(&self, t: Elt) -> Option<usize> {
        self.induced.get(&t).copied()
    }
}

/// `Γ_R(H)`: the faithful quotient of `St_R(H)` acting on `H` by right
/// multiplication.
pub fn schutzenberger_right(s: &FiniteSemigroup, h: &[Elt]) -> SchutzView {
    let mut h_class = h.to_vec();
    h_class.sort_unstable();
    let pos: HashMap<Elt, usize> = h_class.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let id = s.size();
    let identity_perm: Vec<usize> = (0..h_class.len()).collect();
    let mut permutations = vec![identity_perm.clone()];
    let mut witnesses = vec![id];
    let mut perm_index: HashMap<Vec<usize>, usize> = HashMap::from([(identity_perm, 0)]);
    let mut induced = HashMap::from([(id, 0)]);
    for t in right_stabilizer(s, &h_class) {
        if t == id {
            continue;
        }
        let perm: Vec<usize> = h_class.iter().map(|&x| pos[&s.mul(x, t)]).collect();
        let k = *perm_index.entry(perm.clone()).or_insert_with(|| {
            permutations.push(perm);
            witnesses.push(t);
            permutations.len() - 1
        });
        induced.insert(t, k);
    }
    let group = FiniteGroup::from_permutations(&permutations)
        .expect("stabilizer permutations of an H-class form a group");
    SchutzView {
        h_class,
        permutations,
        witnesses,
        induced,
        group,
    }
}

/// The maximal subgroup `H_e` with its inherited multiplication; group
/// labels are semigroup elements.
pub fn maximal_subgroup(s: &FiniteSemigroup, e: Elt) -> Result<FiniteGroup, SemigroupError> {
    if e >= s.size() {
        return Err(SemigroupError::ElementOutOfRange(e));
    }
    if !s.is_idempotent(e) {
        return Err(SemigroupError::NotIdempotent(e));
    }
    let members = s.group_at(e, None);
    Ok(FiniteGroup::from_semigroup_subset(s, &members).expect("H_e is a group"))
}

/// Which idempotent of the minimal ideal [`lift_group_onto_with`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IdempotentChoice {
    #[default]
    Lowest,
    Highest,
}

/// A subgroup of the subsemigroup `p` of `s` mapped onto all of `target` by
/// `phi` (local indices of `target`).
pub fn lift_group_onto<F>(
    s: &FiniteSemigroup,
    p: &[Elt],
    phi: F,
    target: &FiniteGroup,
) -> Result<Vec<Elt>, SemigroupError>
where
    F: Fn(Elt) -> usize,
{
    lift_group_onto_with(s, p, phi, target, IdempotentChoice::Lowest)
}

/// As [`lift_group_onto`], taking the maximal subgroup at the chosen
/// idempotent of the minimal ideal of `p`.
pub fn lift_group_onto_with<F>(
    s: &FiniteSemigroup,
    p: &[Elt],
    phi: F,
    target: &FiniteGroup,
    choice: IdempotentChoice,
) -> Result<Vec<Elt>, SemigroupError>
where
    F: Fn(Elt) -> usize,
{
    if p.is_empty() {
        return Err(SemigroupError::NotSurjective);
    }
    if let Some(&x) = p.iter().find(|&&x| x >= s.size()) {
        return Err(SemigroupError::ElementOutOfRange(x));
    }
    let ideal = minimal_ideal_within(s, p);
    let mut idempotents = ideal.iter().copied().filter(|&x| s.is_idempotent(x));
    let e = match choice {
        IdempotentChoice::Lowest => idempotents.next(),
        IdempotentChoice::Highest => idempotents.next_back(),
    }
    .expect("a finite semigroup has an idempotent in its minimal ideal");
    let group = s.group_at(e, Some(p));
    let mut hit = vec![false; target.order()];
    for &x in &group {
        hit[phi(x)] = true;
    }
    if hit.iter().all(|&h| h) {
        Ok(group)
    } else {
        Err(SemigroupError::NotSurjective)
    }
}

/// `true` iff `K_H(Γ_R(H_x))` is trivial.
pub fn is_h_element(s: &FiniteSemigroup, green: &GreenData, x: Elt, k: &KernelFunctor) -> bool {
    let h = &green.h_classes()[green.h_class[x]];
    let view = schutzenberger_right(s, h);
    kernel_indices(&view.group, k).len() == 1
}
