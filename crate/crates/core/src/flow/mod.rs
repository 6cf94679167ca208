//! The flow automaton over the saturation `S`, built from a blowup operator,
//! and a verifier for the properties that make it a certificate.
//!
//! Chains are stored first letter first: index 0 holds `q_1` and the last
//! index holds `q_n`, the last letter. Written out they are shown last
//! letter first, as `(q_n, ..., q_1)`.

mod automaton;
mod chain;
mod verify;

pub use automaton::{build_automaton_and_flow, FlowAutomaton, FlowValue, DEFAULT_STATE_CAP};
pub use chain::{delta, format_chain, is_l_chain, is_strict, rho, Chain};
pub use verify::{
    verify_all, verify_with, CheckResult, VerifyOptions, VerifyReport, DEFAULT_VERIFY_CAP,
};

use std::collections::HashMap;

use thiserror::Error;

use crate::group::{kernel_indices, FiniteGroup, KernelFunctor};
use crate::saturation::{SaturationError, SaturationFamily, SubsetElt};
use crate::semigroup::{
    is_h_element, lift_group_onto_with, right_stabilizer, schutzenberger_right, Elt,
    FiniteSemigroup, GreenData, IdempotentChoice, SemigroupError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlowError {
    #[error("semigroup has {size} elements, above the verifier cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("more than {cap} reachable automaton states")]
    StateExplosion { cap: usize },
    #[error("transition semigroup has more than {cap} elements")]
    TransitionCapExceeded { cap: usize },
    #[error("blowup axiom {axiom} fails: {witness}")]
    AxiomViolation { axiom: String, witness: String },
    #[error("word {0} is not an L-chain")]
    NotAChain(String),
    #[error(transparent)]
    Saturation(#[from] SaturationError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

/// A right multiplier in `S^I`; `None` is the adjoined identity `I`.
pub type Multiplier = Option<Elt>;

/// The downward closure `S = ↓C` of a saturation family, as a semigroup on
/// member indices.
#[derive(Debug, Clone)]
pub struct SatSemigroup {
    universe: usize,
    members: Vec<SubsetElt>,
    index: HashMap<SubsetElt, usize>,
    semigroup: FiniteSemigroup,
    green: GreenData,
    h_element: Vec<bool>,
    singletons: Vec<Elt>,
}

/// Materializes `↓C`: every nonempty subset of `T` lying under a member of `c`.
pub fn materialize_downclosure(
    t: &FiniteSemigroup,
    c: &SaturationFamily,
    k: &KernelFunctor,
    cap: usize,
) -> Result<SatSemigroup, FlowError> {
    if t.size() > cap || t.size() > crate::saturation::MAX_UNIVERSE {
        return Err(FlowError::CapExceeded {
            size: t.size(),
            cap,
        });
    }
    if c.universe() != t.size() {
        return Err(SaturationError::UniverseMismatch {
            subset: c.maximal()[0],
            universe: t.size(),
        }
        .into());
    }
    let mut members = Vec::new();
    for &m in c.maximal() {
        // every nonempty submask of m
        let full = m.mask();
        let mut sub = full;
        while sub != 0 {
            members.push(SubsetElt::from_mask(sub).unwrap());
            sub = (sub - 1) & full;
        }
    }
    members.sort_unstable();
    members.dedup();
    let index: HashMap<SubsetElt, usize> =
        members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let n = members.len();
    let mut rows = Vec::with_capacity(n);
    for &a in &members {
        let mut row = Vec::with_capacity(n);
        for &b in &members {
            let p = crate::saturation::power_product(t, a, b)?;
            row.push(*index.get(&p).ok_or_else(|| FlowError::AxiomViolation {
                axiom: "closed".into(),
                witness: format!("{a}{b} = {p} lies under no member"),
            })?);
        }
        rows.push(row);
    }
    let semigroup = FiniteSemigroup::from_table(rows)?;
    let green = semigroup.green();
    let mut by_h: HashMap<usize, bool> = HashMap::new();
    let h_element = (0..n)
        .map(|x| {
            *by_h
                .entry(green.h_class[x])
                .or_insert_with(|| is_h_element(&semigroup, &green, x, k))
        })
        .collect();
    let singletons = t
        .elements()
        .map(|x| index[&SubsetElt::singleton(x)])
        .collect();
    Ok(SatSemigroup {
        universe: t.size(),
        members,
        index,
        semigroup,
        green,
        h_element,
        singletons,
    })
}

impl SatSemigroup {
    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Members sorted by mask.
    pub fn members(&self) -> &[SubsetElt] {
        &self.members
    }

    pub fn member(&self, x: Elt) -> SubsetElt {
        self.members[x]
    }

    pub fn index_of(&self, x: SubsetElt) -> Option<Elt> {
        self.index.get(&x).copied()
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn semigroup(&self) -> &FiniteSemigroup {
        &self.semigroup
    }

    pub fn green(&self) -> &GreenData {
        &self.green
    }

    pub fn is_h_element(&self, x: Elt) -> bool {
        self.h_element[x]
    }

    /// Index of `{t}`.
    pub fn singleton(&self, t: Elt) -> Elt {
        self.singletons[t]
    }

    pub fn mul(&self, x: Elt, y: Elt) -> Elt {
        self.semigroup.mul(x, y)
    }

    /// `x m` with `m` in `S^I`.
    pub fn mul_by(&self, x: Elt, m: Multiplier) -> Elt {
        match m {
            Some(m) => self.semigroup.mul(x, m),
            None => x,
        }
    }

    pub fn compose_multipliers(&self, a: Multiplier, b: Multiplier) -> Multiplier {
        match (a, b) {
            (Some(a), Some(b)) => Some(self.semigroup.mul(a, b)),
            (a, None) => a,
            (None, b) => b,
        }
    }

    pub fn contains(&self, x: Elt, y: Elt) -> bool {
        self.members[x].is_subset_of(self.members[y])
    }
}

/// A blowup operator `b` on `S` with multipliers, and the pre-blowup `b_0`
/// it was built from.
#[derive(Debug, Clone)]
pub struct BlowupOp {
    /// `b` as a map on member indices.
    pub map: Vec<Elt>,
    /// Multiplier of `b`, per L-class id.
    pub multipliers: Vec<Multiplier>,
    /// `b_0` as a map on member indices.
    pub pre_map: Vec<Elt>,
    /// `m_L`, per L-class id.
    pub pre_multipliers: Vec<Multiplier>,
    /// The lifted subgroup `G_L`, per L-class id (empty for H-element classes).
    pub lifted: Vec<Vec<Elt>>,
}

impl BlowupOp {
    pub fn apply(&self, x: Elt) -> Elt {
        self.map[x]
    }

    pub fn multiplier_of(&self, s: &SatSemigroup, x: Elt) -> Multiplier {
        self.multipliers[s.green.l_class[x]]
    }
}

/// Builds the blowup operator and checks its axioms.
pub fn build_blowup(s: &SatSemigroup, k: &KernelFunctor) -> Result<BlowupOp, FlowError> {
    let b = build_blowup_with(s, k, IdempotentChoice::Lowest)?;
    if let Some((axiom, witness)) = blowup_violations(s, &b).into_iter().next() {
        return Err(FlowError::AxiomViolation { axiom, witness });
    }
    Ok(b)
}

/// Builds the blowup operator without checking axioms, lifting each `G_L`
/// at the chosen idempotent.
pub fn build_blowup_with(
    s: &SatSemigroup,
    k: &KernelFunctor,
    choice: IdempotentChoice,
) -> Result<BlowupOp, FlowError> {
    let sg = &s.semigroup;
    let green = &s.green;
    let l_classes = green.l_classes();
    let mut pre_multipliers = Vec::with_capacity(l_classes.len());
    let mut lifted = Vec::with_capacity(l_classes.len());
    for class in l_classes {
        if s.h_element[class[0]] {
            pre_multipliers.push(None);
            lifted.push(Vec::new());
            continue;
        }
        let h = &green.h_classes()[green.h_class[class[0]]];
        let view = schutzenberger_right(sg, h);
        let stab: Vec<Elt> = right_stabilizer(sg, class)
            .into_iter()
            .filter(|&x| x < sg.size())
            .collect();
        let g_l = lift_group_onto_with(
            sg,
            &stab,
            |x| view.image(x).expect("L-stabilizer elements stabilize H"),
            &view.group,
            choice,
        )?;
        let group = FiniteGroup::from_semigroup_subset(sg, &g_l).expect("lifted subgroup");
        let union = kernel_indices(&group, k)
            .into_iter()
            .map(|i| s.members[group.label(i)])
            .reduce(SubsetElt::union)
            .expect("kernels are nonempty");
        let m = s.index_of(union).ok_or_else(|| FlowError::AxiomViolation {
            axiom: "saturated".into(),
            witness: format!("kernel union {union} is not in S"),
        })?;
        pre_multipliers.push(Some(m));
        lifted.push(g_l);
    }
    let pre_map: Vec<Elt> = (0..s.size())
        .map(|x| s.mul_by(x, pre_multipliers[green.l_class[x]]))
        .collect();

    // b = b_0^k for the first k making it idempotent; the multiplier of
    // b_0^k on L is the product of the b_0 multipliers along the orbit.
    let mut map = pre_map.clone();
    let mut multipliers = pre_multipliers.clone();
    let reps: Vec<Elt> = l_classes.iter().map(|c| c[0]).collect();
    while (0..s.size()).any(|x| map[map[x]] != map[x]) {
        for (l, &r) in reps.iter().enumerate() {
            let image = map[r];
            multipliers[l] =
                s.compose_multipliers(multipliers[l], pre_multipliers[green.l_class[image]]);
        }
        map = map.iter().map(|&x| pre_map[x]).collect();
    }
    Ok(BlowupOp {
        map,
        multipliers,
        pre_map,
        pre_multipliers,
        lifted,
    })
}

/// Every failed blowup axiom or derived property, as `(id, witness)`.
pub(crate) fn blowup_violations(s: &SatSemigroup, b: &BlowupOp) -> Vec<(String, String)> {
    let g = &s.green;
    let show = |x: Elt| s.members[x].to_string();
    let mut out = Vec::new();
    let mut fail = |id: &str, w: String| out.push((id.to_string(), w));
    for x in 0..s.size() {
        let y = b.map[x];
        if y != s.mul_by(x, b.multiplier_of(s, x)) {
            fail(
                "i",
                format!("{} b = {} is not {} m_L", show(x), show(y), show(x)),
            );
        }
        if s.h_element[x] {
            if y != x {
                fail("ii", format!("H-element {} moved to {}", show(x), show(y)));
            }
        } else if !(g.leq_h(y, x) && !g.h_equiv(y, x)) {
            fail(
                "ii",
                format!("{} b = {} is not strictly H-below", show(x), show(y)),
            );
        }
        if !s.contains(x, y) {
            fail(
                "iii",
                format!("{} is not contained in {}", show(x), show(y)),
            );
        }
        if b.map[y] != y {
            fail("iv", format!("b is not idempotent at {}", show(x)));
        }
        if !s.h_element[y] {
            fail(
                "image",
                format!("{} b = {} is not an H-element", show(x), show(y)),
            );
        }
        if g.r_equiv(y, x) && y != x {
            fail(
                "R-fixed",
                format!("{} b = {} is R-equivalent but different", show(x), show(y)),
            );
        }
    }
    for class in g.l_classes() {
        let l = g.l_class[class[0]];
        if class
            .iter()
            .any(|&x| s.h_element[x] != s.h_element[class[0]])
        {
            fail(
                "L-constant",
                format!("H-element flag varies on the L-class of {}", show(class[0])),
            );
        }
        for &x in class {
            if !g.l_equiv(b.map[x], b.map[class[0]]) {
                fail(
                    "L-class",
                    format!(
                        "{} and {} blow up to different L-classes",
                        show(x),
                        show(class[0])
                    ),
                );
            }
        }
        // G_L maps onto the Schützenberger group of every H-class in L.
        if !b.lifted[l].is_empty() {
            let mut h_ids: Vec<usize> = class.iter().map(|&x| g.h_class[x]).collect();
            h_ids.sort_unstable();
            h_ids.dedup();
            for h in h_ids {
                let view = schutzenberger_right(&s.semigroup, &g.h_classes()[h]);
                let mut hit = vec![false; view.order()];
                for &x in &b.lifted[l] {
                    if let Some(i) = view.image(x) {
                        hit[i] = true;
                    }
                }
                if hit.iter().any(|&h| !h) {
                    fail(
                        "lift",
                        format!(
                            "G_L does not cover the H-class of {}",
                            show(g.h_classes()[h][0])
                        ),
                    );
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::saturation::{saturate, Strategy};

    pub(crate) fn sat(t: &FiniteSemigroup, k: &KernelFunctor) -> SatSemigroup {
        let c = saturate(t, k, Strategy::Kernel).unwrap();
        materialize_downclosure(t, &c, k, DEFAULT_VERIFY_CAP).unwrap()
    }

    fn subset(xs: &[Elt]) -> SubsetElt {
        SubsetElt::from_elements(xs).unwrap()
    }

    #[test]
    fn downclosure_examples() {
        let z2 = corpus::cyclic_group(2);
        let s = sat(&z2, &KernelFunctor::Trivial);
        assert_eq!(s.members(), &[subset(&[0]), subset(&[1]), subset(&[0, 1])]);
        let s = sat(&z2, &KernelFunctor::Abelian);
        assert_eq!(s.members(), &[subset(&[0]), subset(&[1])]);
        let s = sat(&corpus::right_zero(2), &KernelFunctor::Trivial);
        assert_eq!(s.size(), 2);
    }

    #[test]
    fn z2_trivial_blowup() {
        let z2 = corpus::cyclic_group(2);
        let s = sat(&z2, &KernelFunctor::Trivial);
        let b = build_blowup(&s, &KernelFunctor::Trivial).unwrap();
        let full = s.index_of(subset(&[0, 1])).unwrap();
        for x in 0..s.size() {
            assert_eq!(b.apply(x), full);
        }
    }

    #[test]
    fn all_h_elements_give_identity_blowup() {
        for (name, t) in corpus::semigroups() {
            let s = sat(&t, &KernelFunctor::All);
            let b = build_blowup(&s, &KernelFunctor::All).unwrap();
            assert!((0..s.size()).all(|x| b.apply(x) == x), "{name}");
        }
        let s = sat(&corpus::right_zero(2), &KernelFunctor::Trivial);
        let b = build_blowup(&s, &KernelFunctor::Trivial).unwrap();
        assert!((0..s.size()).all(|x| b.apply(x) == x));
    }

    #[test]
    fn blowup_axioms_hold_on_corpus() {
        let functors = [
            KernelFunctor::Trivial,
            KernelFunctor::Abelian,
            KernelFunctor::PGroup(2),
            KernelFunctor::PGroup(3),
            KernelFunctor::Nilpotent,
        ];
        for (name, t) in corpus::semigroups() {
            for k in &functors {
                let s = sat(&t, k);
                let b = build_blowup_with(&s, k, IdempotentChoice::Lowest).unwrap();
                assert_eq!(blowup_violations(&s, &b), vec![], "{name} {k}");
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let t = corpus::brandt_b2();
        let c = saturate(&t, &KernelFunctor::Trivial, Strategy::Kernel).unwrap();
        assert_eq!(
            materialize_downclosure(&t, &c, &KernelFunctor::Trivial, 4).unwrap_err(),
            FlowError::CapExceeded { size: 5, cap: 4 }
        );
    }
}
