use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::chain::{format_chain, is_l_chain, rho, Chain};
use super::{
    blowup_violations, build_automaton_and_flow, build_blowup_with, materialize_downclosure,
    BlowupOp, FlowAutomaton, FlowError, FlowValue, SatSemigroup, DEFAULT_STATE_CAP,
};
use crate::group::{kernel_indices, FiniteGroup, KernelFunctor};
use crate::saturation::{SaturationFamily, SubsetElt};
use crate::semigroup::{Elt, FiniteSemigroup, IdempotentChoice, TransformationClosure};

/// Largest `|T|` the verifier accepts by default.
pub const DEFAULT_VERIFY_CAP: usize = 6;

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub max_size: usize,
    pub state_cap: usize,
    /// Largest transition semigroup examined by the H̄ check.
    pub transition_cap: usize,
    /// Random chains and words added to the exhaustive short ones.
    pub samples: usize,
    /// Exhaustive enumeration covers all chains up to this many in total.
    pub exhaustive_budget: usize,
    /// Longest exhaustively enumerated chain.
    pub exhaustive_length: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            max_size: DEFAULT_VERIFY_CAP,
            state_cap: DEFAULT_STATE_CAP,
            transition_cap: 100_000,
            samples: 400,
            exhaustive_budget: 5_000,
            exhaustive_length: 4,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Number of individual instances examined.
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub variety: String,
    pub universe: usize,
    /// Size of the generated family `C`.
    pub family_size: usize,
    pub maximal: Vec<SubsetElt>,
    /// Size of the materialized saturation `S`.
    pub saturation_size: usize,
    pub l_classes: usize,
    pub h_elements: usize,
    pub states: usize,
    pub transition_semigroup_size: usize,
    pub sampled_chains: usize,
    /// Distinct last letters of reachable states.
    pub flow_values: Vec<SubsetElt>,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_text(&self) -> String {
        let list = |xs: &[SubsetElt]| {
            xs.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut out = String::new();
        out.push_str(&format!("variety: {}\n", self.variety));
        out.push_str(&format!("universe: {}\n", self.universe));
        out.push_str(&format!("family size: {}\n", self.family_size));
        out.push_str(&format!("maximal: {}\n", list(&self.maximal)));
        out.push_str(&format!("saturation size: {}\n", self.saturation_size));
        out.push_str(&format!("L-classes: {}\n", self.l_classes));
        out.push_str(&format!("H-elements: {}\n", self.h_elements));
        out.push_str(&format!("states: {}\n", self.states));
        out.push_str(&format!(
            "transition semigroup size: {}\n",
            self.transition_semigroup_size
        ));
        out.push_str(&format!("sampled chains: {}\n", self.sampled_chains));
        out.push_str(&format!("flow values: {}\n", list(&self.flow_values)));
        for c in &self.checks {
            out.push_str(&format!(
                "{} {} ({} checked)",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.checked
            ));
            if let Some(w) = &c.witness {
                out.push_str(&format!(": {w}"));
            }
            out.push('\n');
        }
        out.push_str(if self.passed {
            "VERIFIED\n"
        } else {
            "FAILED\n"
        });
        out
    }
}

/// Accumulates one check, keeping the first witness.
struct Tally {
    name: &'static str,
    checked: usize,
    witness: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checked: 0,
            witness: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name.to_string(),
            passed: self.witness.is_none(),
            checked: self.checked,
            witness: self.witness,
        }
    }
}

/// Runs every check with default options.
pub fn verify_all(
    t: &FiniteSemigroup,
    k: &KernelFunctor,
    c: &SaturationFamily,
) -> Result<VerifyReport, FlowError> {
    verify_with(t, k, c, &VerifyOptions::default())
}

pub fn verify_with(
    t: &FiniteSemigroup,
    k: &KernelFunctor,
    c: &SaturationFamily,
    opts: &VerifyOptions,
) -> Result<VerifyReport, FlowError> {
    let s = materialize_downclosure(t, c, k, opts.max_size)?;
    let b = build_blowup_with(&s, k, IdempotentChoice::Lowest)?;
    let alt = build_blowup_with(&s, k, IdempotentChoice::Highest)?;
    let automaton = build_automaton_and_flow(t, &s, &b, opts.state_cap)?;
    let closure = TransformationClosure::new(
        automaton.state_count(),
        &automaton.letter_maps(),
        opts.transition_cap,
    )
    .map_err(|_| FlowError::TransitionCapExceeded {
        cap: opts.transition_cap,
    })?;

    let chains = sample_chains(&s, &automaton, opts);
    let words = sample_words(&s, opts);

    let checks = vec![
        check_flow(t, &s, &automaton),
        check_hbar(&closure, k),
        check_complete(&s, c, &automaton),
        check_blowup(&s, &b),
        check_rho_respect(t, &s, &b, &chains),
        check_zeiger(&s, &b, &chains),
        check_pre_zeiger(&s, &b, &chains, &words),
        check_b_flags(t, &s, &b, &chains),
        check_multiplier_independence(&s, &b, &alt, &chains),
    ];
    let flow_values: BTreeSet<SubsetElt> = (0..automaton.state_count())
        .filter_map(|q| match automaton.flow(&s, q) {
            FlowValue::Subset(x) => Some(x),
            FlowValue::Identity => None,
        })
        .collect();
    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport {
        variety: k.to_string(),
        universe: t.size(),
        family_size: c.members().len(),
        maximal: c.maximal().to_vec(),
        saturation_size: s.size(),
        l_classes: s.green().l_classes().len(),
        h_elements: (0..s.size()).filter(|&x| s.is_h_element(x)).count(),
        states: automaton.state_count(),
        transition_semigroup_size: closure.size(),
        sampled_chains: chains.len(),
        flow_values: flow_values.into_iter().collect(),
        checks,
        passed,
    })
}

/// All L-chains up to the length that fits the budget (at most
/// `exhaustive_length`), the reachable states, and seeded random chains of
/// length up to 5.
fn sample_chains(s: &SatSemigroup, a: &FlowAutomaton, opts: &VerifyOptions) -> Vec<Chain> {
    let below: Vec<Vec<Elt>> = (0..s.size())
        .map(|x| (0..s.size()).filter(|&y| s.green().leq_l(y, x)).collect())
        .collect();
    let mut out: BTreeSet<Chain> = BTreeSet::new();
    out.insert(Vec::new());
    let mut layer: Vec<Chain> = vec![Vec::new()];
    for _ in 0..opts.exhaustive_length {
        let mut next = Vec::new();
        for q in &layer {
            let choices: Vec<Elt> = match q.last() {
                None => (0..s.size()).collect(),
                Some(&x) => below[x].clone(),
            };
            for y in choices {
                let mut w = q.clone();
                w.push(y);
                next.push(w);
            }
        }
        if next.is_empty() || out.len() + next.len() > opts.exhaustive_budget {
            break;
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out.extend(a.states().iter().cloned());
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.samples {
        let len = rng.gen_range(1..=5);
        let mut w = vec![rng.gen_range(0..s.size())];
        while w.len() < len {
            let choices = &below[*w.last().unwrap()];
            w.push(choices[rng.gen_range(0..choices.len())]);
        }
        out.insert(w);
    }
    out.into_iter().collect()
}

/// Seeded random words, not necessarily chains.
fn sample_words(s: &SatSemigroup, opts: &VerifyOptions) -> Vec<Chain> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5eed);
    (0..opts.samples)
        .map(|_| {
            let len = rng.gen_range(2..=4);
            (0..len).map(|_| rng.gen_range(0..s.size())).collect()
        })
        .collect()
}

fn flow_times(s: &SatSemigroup, v: FlowValue, t: Elt) -> SubsetElt {
    match v {
        FlowValue::Identity => SubsetElt::singleton(t),
        FlowValue::Subset(x) => {
            let xi = s.index_of(x).expect("flow values are members");
            s.member(s.mul(xi, s.singleton(t)))
        }
    }
}

fn flow_within(v: SubsetElt, w: FlowValue) -> bool {
    match w {
        FlowValue::Identity => false,
        FlowValue::Subset(w) => v.is_subset_of(w),
    }
}

fn check_flow(t: &FiniteSemigroup, s: &SatSemigroup, a: &FlowAutomaton) -> CheckResult {
    let mut tally = Tally::new("FLOW");
    for q in 0..a.state_count() {
        for letter in t.elements() {
            let lhs = flow_times(s, a.flow(s, q), letter);
            let r = a.next(q, letter);
            let rhs = a.flow(s, r);
            tally.record(flow_within(lhs, rhs), || {
                format!(
                    "state {} letter {letter}: {lhs} is not within {rhs} at {}",
                    a.describe(s, q),
                    a.describe(s, r)
                )
            });
        }
    }
    tally.finish()
}

fn check_hbar(closure: &TransformationClosure, k: &KernelFunctor) -> CheckResult {
    let mut tally = Tally::new("HBAR");
    let (r, l) = closure.r_and_l_classes();
    let mut h_classes: HashMap<(usize, usize), Vec<Elt>> = HashMap::new();
    for x in 0..closure.size() {
        h_classes.entry((r[x], l[x])).or_default().push(x);
    }
    let mut seen = BTreeSet::new();
    for e in 0..closure.size() {
        if closure.mul(e, e) != e || !seen.insert((r[e], l[e])) {
            continue;
        }
        let h = &h_classes[&(r[e], l[e])];
        let pos: HashMap<Elt, usize> = h.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let rows: Vec<Vec<usize>> = h
            .iter()
            .map(|&x| h.iter().map(|&y| pos[&closure.mul(x, y)]).collect())
            .collect();
        let g = FiniteGroup::from_table(rows).expect("H-class of an idempotent is a group");
        tally.record(kernel_indices(&g, k).len() == 1, || {
            format!(
                "maximal subgroup of order {} at transition {:?} is not in the variety",
                g.order(),
                closure.elements[e]
            )
        });
    }
    tally.finish()
}

fn check_complete(s: &SatSemigroup, c: &SaturationFamily, a: &FlowAutomaton) -> CheckResult {
    let mut tally = Tally::new("COMPLETE");
    let values: Vec<SubsetElt> = (0..a.state_count())
        .filter_map(|q| match a.flow(s, q) {
            FlowValue::Subset(x) => Some(x),
            FlowValue::Identity => None,
        })
        .collect();
    for &m in c.maximal() {
        tally.record(values.iter().any(|&v| m.is_subset_of(v)), || {
            format!("maximal member {m} lies under no flow value")
        });
    }
    for &v in &values {
        tally.record(c.is_pointlike(v), || {
            format!("flow value {v} lies under no member of the family")
        });
    }
    tally.finish()
}

fn check_blowup(s: &SatSemigroup, b: &BlowupOp) -> CheckResult {
    let mut tally = Tally::new("BLOWUP");
    let violations = blowup_violations(s, b);
    tally.checked = s.size() + s.green().l_classes().len();
    if let Some((axiom, w)) = violations.into_iter().next() {
        tally.witness = Some(format!("axiom {axiom}: {w}"));
    }
    tally.finish()
}

fn check_rho_respect(
    t: &FiniteSemigroup,
    s: &SatSemigroup,
    b: &BlowupOp,
    chains: &[Chain],
) -> CheckResult {
    let mut tally = Tally::new("RHO-RESPECT");
    let respects = |f: &dyn Fn(&[Elt]) -> Chain, q: &[Elt]| -> bool {
        let (Ok(rq), Ok(direct)) = (rho(s, q), rho(s, &f(q))) else {
            return false;
        };
        rho(s, &f(&rq)).is_ok_and(|via| via == direct)
    };
    let multipliers: Vec<Option<Elt>> = std::iter::once(None)
        .chain((0..s.size()).map(Some))
        .collect();
    for q in chains {
        tally.record(respects(&|w| b.big_b_word(s, w), q), || {
            format!("B on {}", format_chain(s, q))
        });
        for &m in &multipliers {
            tally.record(respects(&|w| super::delta(s, w, m), q), || {
                let m = m.map_or("I".to_string(), |m| s.member(m).to_string());
                format!("Δ_{m} on {}", format_chain(s, q))
            });
        }
        for letter in t.elements() {
            tally.record(respects(&|w| b.tau_bar(s, w, letter), q), || {
                format!("τ̄_{letter} on {}", format_chain(s, q))
            });
        }
    }
    tally.finish()
}

/// Zeiger: if the second-to-last letter is unchanged and the last stays
/// R-equivalent, the last is unchanged too.
fn zeiger_holds(s: &SatSemigroup, q: &[Elt], image: &[Elt]) -> bool {
    let n = q.len();
    if image[n - 2] != q[n - 2] || !s.green().r_equiv(image[n - 1], q[n - 1]) {
        return true;
    }
    image[n - 1] == q[n - 1]
}

fn check_zeiger(s: &SatSemigroup, b: &BlowupOp, chains: &[Chain]) -> CheckResult {
    let mut tally = Tally::new("ZEIGER");
    for q in chains.iter().filter(|q| q.len() >= 2) {
        let image = b.big_b_word(s, q);
        tally.record(zeiger_holds(s, q, &image), || {
            format!(
                "B on {} gives {}",
                format_chain(s, q),
                format_chain(s, &image)
            )
        });
        for m in std::iter::once(None).chain((0..s.size()).map(Some)) {
            let image = super::delta(s, q, m);
            tally.record(zeiger_holds(s, q, &image), || {
                format!(
                    "Δ on {} gives {}",
                    format_chain(s, q),
                    format_chain(s, &image)
                )
            });
        }
    }
    tally.finish()
}

/// Pre-Zeiger: when the last two letters stay R-equivalent under `B`, one
/// multiplier in `S^I` realizes both.
fn check_pre_zeiger(
    s: &SatSemigroup,
    b: &BlowupOp,
    chains: &[Chain],
    words: &[Chain],
) -> CheckResult {
    let mut tally = Tally::new("PRE-ZEIGER");
    let g = s.green();
    for q in chains.iter().chain(words).filter(|q| q.len() >= 2) {
        let image = b.big_b_word(s, q);
        let n = q.len();
        let (a, c) = (q[n - 2], q[n - 1]);
        let (a2, c2) = (image[n - 2], image[n - 1]);
        if !(g.r_equiv(a, a2) && g.r_equiv(c, c2)) {
            continue;
        }
        let ok = std::iter::once(None)
            .chain((0..s.size()).map(Some))
            .any(|m| s.mul_by(a, m) == a2 && s.mul_by(c, m) == c2);
        tally.record(ok, || {
            format!(
                "B on {} gives {}",
                format_chain(s, q),
                format_chain(s, &image)
            )
        });
    }
    tally.finish()
}

/// `B` and `τ̄_t` produce L-chains of H-elements; `B` is idempotent on
/// chains, fixes H-element chains and grows every coordinate.
fn check_b_flags(
    t: &FiniteSemigroup,
    s: &SatSemigroup,
    b: &BlowupOp,
    chains: &[Chain],
) -> CheckResult {
    let mut tally = Tally::new("B-FLAGS");
    let h_chain = |w: &[Elt]| is_l_chain(s, w) && w.iter().all(|&x| s.is_h_element(x));
    for q in chains {
        let image = b.big_b_word(s, q);
        let show = || {
            format!(
                "B on {} gives {}",
                format_chain(s, q),
                format_chain(s, &image)
            )
        };
        tally.record(h_chain(&image), show);
        tally.record(b.big_b_word(s, &image) == image, show);
        tally.record(q.iter().zip(&image).all(|(&x, &y)| s.contains(x, y)), show);
        if q.iter().all(|&x| s.is_h_element(x)) {
            tally.record(image == *q, show);
        }
        for letter in t.elements() {
            let w = b.tau_bar(s, q, letter);
            tally.record(h_chain(&w), || {
                format!(
                    "τ̄_{letter} on {} gives {}",
                    format_chain(s, q),
                    format_chain(s, &w)
                )
            });
        }
    }
    tally.finish()
}

/// Lifting `G_L` at another idempotent gives the same `b` and the same `B`
/// on chains.
fn check_multiplier_independence(
    s: &SatSemigroup,
    b: &BlowupOp,
    alt: &BlowupOp,
    chains: &[Chain],
) -> CheckResult {
    let mut tally = Tally::new("MULTIPLIER-INDEPENDENCE");
    for x in 0..s.size() {
        tally.record(b.apply(x) == alt.apply(x), || {
            format!("b differs at {}", s.member(x))
        });
    }
    for q in chains {
        tally.record(b.big_b_word(s, q) == alt.big_b_word(s, q), || {
            format!("B differs on {}", format_chain(s, q))
        });
    }
    tally.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::saturation::{saturate, Strategy};

    fn run(t: &FiniteSemigroup, k: &KernelFunctor) -> VerifyReport {
        let c = saturate(t, k, Strategy::Kernel).unwrap();
        verify_all(t, k, &c).unwrap()
    }

    #[test]
    fn z2_trivial_passes() {
        let r = run(&corpus::cyclic_group(2), &KernelFunctor::Trivial);
        assert!(r.passed, "{}", r.to_text());
        assert_eq!(r.states, 2);
        assert_eq!(r.transition_semigroup_size, 1);
    }

    #[test]
    fn s3_abelian_flow_values() {
        let r = run(&corpus::s3(), &KernelFunctor::Abelian);
        assert!(r.passed, "{}", r.to_text());
        let a3 = SubsetElt::from_elements(&[0, 3, 4]).unwrap();
        let odd = SubsetElt::from_elements(&[1, 2, 5]).unwrap();
        assert!(r.flow_values.contains(&a3) && r.flow_values.contains(&odd));
    }

    #[test]
    fn right_zero_passes() {
        let r = run(&corpus::right_zero(2), &KernelFunctor::Trivial);
        assert!(r.passed, "{}", r.to_text());
    }

    #[test]
    fn report_text_lists_every_check() {
        let r = run(&corpus::null_semigroup(), &KernelFunctor::Abelian);
        let text = r.to_text();
        for name in [
            "FLOW",
            "HBAR",
            "COMPLETE",
            "BLOWUP",
            "RHO-RESPECT",
            "ZEIGER",
        ] {
            assert!(text.contains(&format!("PASS {name} ")), "{text}");
        }
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["checks"].as_array().unwrap().len(), r.checks.len());
    }
}
