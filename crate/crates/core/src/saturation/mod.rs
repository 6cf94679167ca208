//! The H̄-saturation of the singletons in the power semigroup `2^T`.
//!
//! The family `C` built here is closed under products and under the active
//! closure rule; its downward closure is the saturation, so a subset is
//! pointlike iff it lies under some member of `C`.

mod subset;

pub use subset::{SubsetElt, MAX_UNIVERSE};

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::group::{evaluate_group_word, kernel_indices, FiniteGroup, GroupWord, KernelFunctor};
use crate::semigroup::{Elt, FiniteSemigroup, GreenData};
use subset::product_unchecked;

pub const DEFAULT_SATURATION_CAP: usize = 8;
pub const DEFAULT_TUPLE_CAP: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SaturationError {
    #[error("semigroup has {size} elements, above the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("subset {subset} is not contained in a universe of {universe} elements")]
    UniverseMismatch { subset: SubsetElt, universe: usize },
    #[error("word of arity {arity} over {maximal} maximal members needs {work} evaluations, above the cap of {cap}")]
    TupleCapExceeded {
        arity: usize,
        maximal: usize,
        work: u128,
        cap: usize,
    },
    #[error("no finite word basis is available for variety {0}; use the kernel strategy")]
    NoWordBasis(String),
    #[error("kernel and pseudoidentity strategies disagree on maximal member {witness}")]
    StrategiesDisagree { witness: SubsetElt },
}

/// Which closure rule drives the fixpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Unions of H-kernels of maximal subgroups at idempotents.
    Kernel,
    /// Cyclic closures of pseudoidentity values `u(eX_1e, ..., eX_ne)`.
    #[serde(rename = "pseudo")]
    Pseudoidentity,
    /// Both of the above, run independently and compared.
    Both,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Kernel => "kernel",
            Strategy::Pseudoidentity => "pseudo",
            Strategy::Both => "both",
        })
    }
}

#[derive(Debug, Clone)]
pub struct SaturationOptions {
    /// Largest accepted `|T|`.
    pub cap: usize,
    /// Bound on `arity * |maximal|^arity` per word and round.
    pub tuple_cap: usize,
    /// Words for the pseudoidentity rule; defaults to the variety's basis.
    pub words: Option<Vec<GroupWord>>,
    /// Record every rule application.
    pub trace: bool,
}

impl Default for SaturationOptions {
    fn default() -> Self {
        Self {
            cap: DEFAULT_SATURATION_CAP,
            tuple_cap: DEFAULT_TUPLE_CAP,
            words: None,
            trace: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    Kernel,
    #[serde(rename = "pseudo")]
    Pseudoidentity,
}

/// One application of a closure rule that added a member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub round: usize,
    pub rule: Rule,
    /// The idempotent (kernel rule) or the argument tuple (pseudoidentity rule).
    pub source: Vec<SubsetElt>,
    pub added: SubsetElt,
}

/// Counters describing a fixpoint run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SaturationStats {
    pub rounds: usize,
    pub kernel_additions: usize,
    pub pseudo_additions: usize,
}

/// The generated family `C ⊆ 2^T` (not downward closed).
#[derive(Debug, Clone)]
pub struct SaturationFamily {
    universe: usize,
    /// Sorted by mask.
    members: Vec<SubsetElt>,
    index: HashMap<SubsetElt, usize>,
    /// Multiplication of `C` on member indices.
    semigroup: FiniteSemigroup,
    green: GreenData,
    maximal: Vec<SubsetElt>,
    trace: Vec<TraceEntry>,
    stats: SaturationStats,
    strategy: Strategy,
}

/// `XY` in `2^T`.
pub fn power_product(
    t: &FiniteSemigroup,
    x: SubsetElt,
    y: SubsetElt,
) -> Result<SubsetElt, SaturationError> {
    for z in [x, y] {
        if z.span() > t.size() {
            return Err(SaturationError::UniverseMismatch {
                subset: z,
                universe: t.size(),
            });
        }
    }
    Ok(product_unchecked(t, x, y))
}

/// ⊆-maximal elements of `sets`, sorted by mask.
pub fn maximal_antichain(sets: &[SubsetElt]) -> Vec<SubsetElt> {
    let mut by_size = sets.to_vec();
    by_size.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    by_size.dedup();
    let mut kept: Vec<SubsetElt> = Vec::new();
    for x in by_size {
        if !kept.iter().any(|&m| x.is_subset_of(m)) {
            kept.push(x);
        }
    }
    kept.sort_unstable();
    kept
}

/// A product-closed family under construction, in insertion order.
struct Closure<'a> {
    t: &'a FiniteSemigroup,
    members: Vec<SubsetElt>,
    index: HashMap<SubsetElt, usize>,
    closed_upto: usize,
}

impl<'a> Closure<'a> {
    fn new(t: &'a FiniteSemigroup, seed: &[SubsetElt]) -> Self {
        let mut c = Closure {
            t,
            members: Vec::new(),
            index: HashMap::new(),
            closed_upto: 0,
        };
        for &x in seed {
            c.insert(x);
        }
        c
    }

    fn insert(&mut self, x: SubsetElt) -> bool {
        if self.index.contains_key(&x) {
            return false;
        }
        self.index.insert(x, self.members.len());
        self.members.push(x);
        true
    }

    fn product_close(&mut self) {
        let mut k = self.closed_upto;
        while k < self.members.len() {
            for j in 0..=k {
                let (a, b) = (self.members[k], self.members[j]);
                self.insert(product_unchecked(self.t, a, b));
                self.insert(product_unchecked(self.t, b, a));
            }
            k += 1;
        }
        self.closed_upto = k;
    }

    /// Multiplication table of the (product-closed) family on member indices.
    fn semigroup(&self) -> FiniteSemigroup {
        let n = self.members.len();
        let mut table = Vec::with_capacity(n * n);
        for &a in &self.members {
            for &b in &self.members {
                table.push(self.index[&product_unchecked(self.t, a, b)]);
            }
        }
        FiniteSemigroup::from_table_unchecked(n, table)
    }
}

fn union_of(members: &[SubsetElt], idx: impl IntoIterator<Item = usize>) -> SubsetElt {
    idx.into_iter()
        .map(|i| members[i])
        .reduce(SubsetElt::union)
        .expect("groups are nonempty")
}

/// Kernel rule candidates: `(idempotent, ⋃ K_H(G_E))` for every idempotent
/// `E` of `C`.
fn kernel_candidates(
    members: &[SubsetElt],
    c: &FiniteSemigroup,
    k: &KernelFunctor,
) -> Vec<(Vec<SubsetElt>, SubsetElt)> {
    let mut out = Vec::new();
    for e in c.idempotents() {
        let group = c.group_at(e, None);
        let g = FiniteGroup::from_semigroup_subset(c, &group).expect("maximal subgroup");
        let kernel = kernel_indices(&g, k);
        let u = union_of(members, kernel.iter().map(|&x| g.label(x)));
        out.push((vec![members[e]], u));
    }
    out
}

fn for_each_tuple_of(choices: &[usize], arity: usize, mut f: impl FnMut(&[usize])) {
    crate::group::for_each_tuple(choices.len(), arity, |idx| {
        let args: Vec<usize> = idx.iter().map(|&i| choices[i]).collect();
        f(&args);
    });
}

/// Pseudoidentity rule candidates over tuples of maximal members.
fn pseudo_candidates(
    members: &[SubsetElt],
    c: &FiniteSemigroup,
    words: &[GroupWord],
    tuple_cap: usize,
) -> Result<Vec<(Vec<SubsetElt>, SubsetElt)>, SaturationError> {
    let maximal = maximal_antichain(members);
    let max_idx: Vec<usize> = maximal
        .iter()
        .map(|m| members.iter().position(|x| x == m).unwrap())
        .collect();
    let mut groups: HashMap<Elt, FiniteGroup> = HashMap::new();
    let mut out = Vec::new();
    for w in words {
        let arity = w.arity();
        let work = (arity as u128) * (max_idx.len() as u128).pow(arity as u32);
        if work > tuple_cap as u128 {
            return Err(SaturationError::TupleCapExceeded {
                arity,
                maximal: max_idx.len(),
                work,
                cap: tuple_cap,
            });
        }
        for_each_tuple_of(&max_idx, arity, |xs| {
            let e = minimal_ideal_idempotent(c, xs);
            let g = groups.entry(e).or_insert_with(|| {
                FiniteGroup::from_semigroup_subset(c, &c.group_at(e, None))
                    .expect("maximal subgroup")
            });
            let local: HashMap<Elt, usize> = g
                .labels()
                .iter()
                .enumerate()
                .map(|(i, &x)| (x, i))
                .collect();
            let args: Vec<usize> = xs.iter().map(|&x| local[&c.mul(c.mul(e, x), e)]).collect();
            let value = evaluate_group_word(g, w, &args).expect("arity matches");
            let u = union_of(members, g.cyclic(value).into_iter().map(|i| g.label(i)));
            out.push((xs.iter().map(|&x| members[x]).collect(), u));
        });
    }
    Ok(out)
}

/// An idempotent in the minimal ideal of the subsemigroup generated by `xs`:
/// the ω-power of the tuple product followed by every element of `⟨xs⟩`.
fn minimal_ideal_idempotent(c: &FiniteSemigroup, xs: &[Elt]) -> Elt {
    let z = xs[1..].iter().fold(xs[0], |acc, &x| c.mul(acc, x));
    let generated = c.generated_by(xs);
    c.omega(generated.iter().fold(z, |acc, &x| c.mul(acc, x)))
}

fn check_universe(t: &FiniteSemigroup, cap: usize) -> Result<(), SaturationError> {
    let cap = cap.min(MAX_UNIVERSE);
    if t.size() > cap {
        return Err(SaturationError::CapExceeded {
            size: t.size(),
            cap,
        });
    }
    Ok(())
}

fn resolve_words(
    k: &KernelFunctor,
    opts: &SaturationOptions,
) -> Result<Vec<GroupWord>, SaturationError> {
    match &opts.words {
        Some(w) => Ok(w.clone()),
        None => k
            .word_basis()
            .ok_or_else(|| SaturationError::NoWordBasis(k.to_string())),
    }
}

fn run_fixpoint(
    t: &FiniteSemigroup,
    k: &KernelFunctor,
    rule: Rule,
    words: &[GroupWord],
    seed: &[SubsetElt],
    opts: &SaturationOptions,
) -> Result<SaturationFamily, SaturationError> {
    let mut closure = Closure::new(t, seed);
    let mut trace = Vec::new();
    let mut stats = SaturationStats::default();
    loop {
        closure.product_close();
        stats.rounds += 1;
        let c = closure.semigroup();
        let candidates = match rule {
            Rule::Kernel => kernel_candidates(&closure.members, &c, k),
            Rule::Pseudoidentity => pseudo_candidates(&closure.members, &c, words, opts.tuple_cap)?,
        };
        let mut added = 0;
        for (source, u) in candidates {
            if closure.insert(u) {
                added += 1;
                if opts.trace {
                    trace.push(TraceEntry {
                        round: stats.rounds,
                        rule,
                        source,
                        added: u,
                    });
                }
            }
        }
        match rule {
            Rule::Kernel => stats.kernel_additions += added,
            Rule::Pseudoidentity => stats.pseudo_additions += added,
        }
        if added == 0 {
            break;
        }
    }
    let strategy = match rule {
        Rule::Kernel => Strategy::Kernel,
        Rule::Pseudoidentity => Strategy::Pseudoidentity,
    };
    Ok(SaturationFamily::from_members(
        t,
        closure.members,
        trace,
        stats,
        strategy,
    ))
}

/// The saturation of the singletons of `t` under the variety of `k`.
pub fn saturate(
    t: &FiniteSemigroup,
    k: &KernelFunctor,
    strategy: Strategy,
) -> Result<SaturationFamily, SaturationError> {
    saturate_with(t, k, strategy, &SaturationOptions::default())
}

pub fn saturate_with(
    t: &FiniteSemigroup,
    k: &KernelFunctor,
    strategy: Strategy,
    opts: &SaturationOptions,
) -> Result<SaturationFamily, SaturationError> {
    check_universe(t, opts.cap)?;
    let seed: Vec<SubsetElt> = t.elements().map(SubsetElt::singleton).collect();
    saturate_from(t, k, strategy, &seed, opts)
}

/// Fixpoint starting from `seed` (which should contain the singletons).
pub fn saturate_from(
    t: &FiniteSemigroup,
    k: &KernelFunctor,
    strategy: Strategy,
    seed: &[SubsetElt],
    opts: &SaturationOptions,
) -> Result<SaturationFamily, SaturationError> {
    check_universe(t, opts.cap)?;
    if let Some(&x) = seed.iter().find(|x| x.span() > t.size()) {
        return Err(SaturationError::UniverseMismatch {
            subset: x,
            universe: t.size(),
        });
    }
    match strategy {
        Strategy::Kernel => run_fixpoint(t, k, Rule::Kernel, &[], seed, opts),
        Strategy::Pseudoidentity => {
            let words = resolve_words(k, opts)?;
            run_fixpoint(t, k, Rule::Pseudoidentity, &words, seed, opts)
        }
        Strategy::Both => {
            let words = resolve_words(k, opts)?;
            let by_kernel = run_fixpoint(t, k, Rule::Kernel, &[], seed, opts)?;
            let by_words = run_fixpoint(t, k, Rule::Pseudoidentity, &words, seed, opts)?;
            if by_kernel.maximal != by_words.maximal {
                let witness = by_kernel
                    .maximal
                    .iter()
                    .find(|m| !by_words.maximal.contains(m))
                    .or_else(|| {
                        by_words
                            .maximal
                            .iter()
                            .find(|m| !by_kernel.maximal.contains(m))
                    })
                    .copied()
                    .expect("antichains differ");
                return Err(SaturationError::StrategiesDisagree { witness });
            }
            let mut family = by_kernel;
            family.strategy = Strategy::Both;
            family.stats.pseudo_additions = by_words.stats.pseudo_additions;
            family.trace.extend(by_words.trace);
            Ok(family)
        }
    }
}

impl SaturationFamily {
    fn from_members(
        t: &FiniteSemigroup,
        mut members: Vec<SubsetElt>,
        trace: Vec<TraceEntry>,
        stats: SaturationStats,
        strategy: Strategy,
    ) -> Self {
        members.sort_unstable();
        let index: HashMap<SubsetElt, usize> =
            members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let n = members.len();
        let mut table = Vec::with_capacity(n * n);
        for &a in &members {
            for &b in &members {
                table.push(index[&product_unchecked(t, a, b)]);
            }
        }
        let semigroup = FiniteSemigroup::from_table_unchecked(n, table);
        let green = semigroup.green();
        let maximal = maximal_antichain(&members);
        Self {
            universe: t.size(),
            members,
            index,
            semigroup,
            green,
            maximal,
            trace,
            stats,
            strategy,
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Members sorted by mask.
    pub fn members(&self) -> &[SubsetElt] {
        &self.members
    }

    pub fn index_of(&self, x: SubsetElt) -> Option<usize> {
        self.index.get(&x).copied()
    }

    /// Multiplication of `C` on member indices.
    pub fn semigroup(&self) -> &FiniteSemigroup {
        &self.semigroup
    }

    pub fn green(&self) -> &GreenData {
        &self.green
    }

    /// ⊆-maximal members, sorted by mask.
    pub fn maximal(&self) -> &[SubsetElt] {
        &self.maximal
    }

    pub fn trace(&self) -> &[TraceEntry] {
        &self.trace
    }

    pub fn stats(&self) -> &SaturationStats {
        &self.stats
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    /// `true` iff `x` lies under some member.
    pub fn is_pointlike(&self, x: SubsetElt) -> bool {
        self.maximal.iter().any(|&m| x.is_subset_of(m))
    }

    /// Pairs `s < t` lying together under some member.
    pub fn pointlike_pairs(&self) -> Vec<(Elt, Elt)> {
        let mut out = Vec::new();
        for s in 0..self.universe {
            for t in s + 1..self.universe {
                let pair = SubsetElt::from_elements(&[s, t]).unwrap();
                if self.is_pointlike(pair) {
                    out.push((s, t));
                }
            }
        }
        out
    }

    /// `true` iff every maximal member is a singleton.
    pub fn only_singletons(&self) -> bool {
        self.maximal.iter().all(|m| m.len() == 1)
    }

    /// Members added by one more kernel-rule pass (empty at a fixpoint).
    pub fn kernel_rule_step(&self, k: &KernelFunctor) -> Vec<SubsetElt> {
        self.fresh(kernel_candidates(&self.members, &self.semigroup, k))
    }

    /// Members added by one more pseudoidentity-rule pass.
    pub fn pseudoidentity_rule_step(
        &self,
        words: &[GroupWord],
        tuple_cap: usize,
    ) -> Result<Vec<SubsetElt>, SaturationError> {
        Ok(self.fresh(pseudo_candidates(
            &self.members,
            &self.semigroup,
            words,
            tuple_cap,
        )?))
    }

    fn fresh(&self, candidates: Vec<(Vec<SubsetElt>, SubsetElt)>) -> Vec<SubsetElt> {
        let mut out: Vec<SubsetElt> = candidates
            .into_iter()
            .map(|(_, u)| u)
            .filter(|u| !self.index.contains_key(u))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn report(&self, variety: &KernelFunctor, include_trace: bool) -> SaturationReport {
        SaturationReport {
            universe: self.universe,
            variety: variety.to_string(),
            strategy: self.strategy,
            member_count: self.members.len(),
            maximal: self.maximal.clone(),
            pointlike_pairs: None,
            stats: self.stats.clone(),
            trace: include_trace.then(|| self.trace.clone()),
        }
    }
}

/// Serializable summary of a saturation run.
#[derive(Debug, Clone, Serialize)]
pub struct SaturationReport {
    pub universe: usize,
    pub variety: String,
    pub strategy: Strategy,
    pub member_count: usize,
    pub maximal: Vec<SubsetElt>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pointlike_pairs: Option<Vec<(Elt, Elt)>>,
    pub stats: SaturationStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceEntry>>,
}

/// Direct membership test for H̄: every maximal subgroup of `t` lies in H.
pub fn is_member(t: &FiniteSemigroup, k: &KernelFunctor) -> bool {
    t.idempotents().into_iter().all(|e| {
        let g =
            FiniteGroup::from_semigroup_subset(t, &t.group_at(e, None)).expect("maximal subgroup");
        kernel_indices(&g, k).len() == 1
    })
}
