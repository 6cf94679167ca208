//! Command implementations. Each returns a serializable document with a
//! text rendering of the same fields.

use serde::Serialize;

use hbar::flow::{verify_with, VerifyOptions, VerifyReport};
use hbar::group::{kernel_indices, FiniteGroup, KernelFunctor};
use hbar::languages::{decide_separation_with, SeparationReport, DEFAULT_TRANSITION_CAP};
use hbar::saturation::{is_member, saturate_with, SaturationOptions, SaturationReport, Strategy};
use hbar::semigroup::{maximal_subgroup, Elt, FiniteSemigroup};

use crate::error::CliError;
use crate::input::{load_language, LanguageSource};

pub trait Document: Serialize {
    fn to_text(&self) -> String;
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

#[derive(Debug, Serialize)]
pub struct JClassOut {
    pub members: Vec<Elt>,
    pub regular: bool,
    pub r_classes: Vec<Vec<Elt>>,
    pub l_classes: Vec<Vec<Elt>>,
    /// `h_classes[r][l]` is the intersection of R-class `r` and L-class `l`.
    pub h_classes: Vec<Vec<Vec<Elt>>>,
    /// J-classes strictly below this one.
    pub below: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct GreenOut {
    pub size: usize,
    pub idempotents: Vec<Elt>,
    pub j_classes: Vec<JClassOut>,
}

pub fn green(t: &FiniteSemigroup) -> GreenOut {
    let g = t.green();
    let classes = g.j_classes();
    let j_classes = classes
        .iter()
        .enumerate()
        .map(|(j, members)| {
            let mut r_ids: Vec<usize> = Vec::new();
            let mut l_ids: Vec<usize> = Vec::new();
            for &x in members {
                if !r_ids.contains(&g.r_class[x]) {
                    r_ids.push(g.r_class[x]);
                }
                if !l_ids.contains(&g.l_class[x]) {
                    l_ids.push(g.l_class[x]);
                }
            }
            let h_classes = r_ids
                .iter()
                .map(|&r| {
                    l_ids
                        .iter()
                        .map(|&l| {
                            members
                                .iter()
                                .copied()
                                .filter(|&x| g.r_class[x] == r && g.l_class[x] == l)
                                .collect()
                        })
                        .collect()
                })
                .collect();
            JClassOut {
                members: members.clone(),
                regular: members.iter().any(|&x| t.is_idempotent(x)),
                r_classes: r_ids.iter().map(|&r| g.r_classes()[r].clone()).collect(),
                l_classes: l_ids.iter().map(|&l| g.l_classes()[l].clone()).collect(),
                h_classes,
                below: (0..classes.len())
                    .filter(|&d| d != j && g.class_leq_j(d, j))
                    .collect(),
            }
        })
        .collect();
    GreenOut {
        size: t.size(),
        idempotents: t.idempotents(),
        j_classes,
    }
}

impl Document for GreenOut {
    fn to_text(&self) -> String {
        let mut out = format!(
            "size: {}\nidempotents: {}\n",
            self.size,
            join(&self.idempotents, " ")
        );
        for (j, c) in self.j_classes.iter().enumerate() {
            out.push_str(&format!(
                "\nJ{j} {} below: {}\n",
                if c.regular { "regular" } else { "non-regular" },
                if c.below.is_empty() {
                    "-".to_string()
                } else {
                    join(&c.below, " ")
                }
            ));
            let cells: Vec<Vec<String>> = c
                .h_classes
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|h| {
                            let parts: Vec<String> = h
                                .iter()
                                .map(|&x| {
                                    if self.idempotents.contains(&x) {
                                        format!("{x}*")
                                    } else {
                                        x.to_string()
                                    }
                                })
                                .collect();
                            if parts.is_empty() {
                                ".".to_string()
                            } else {
                                parts.join(",")
                            }
                        })
                        .collect()
                })
                .collect();
            let widths: Vec<usize> = (0..c.l_classes.len())
                .map(|l| cells.iter().map(|row| row[l].len()).max().unwrap_or(1))
                .collect();
            let rule: String = widths
                .iter()
                .map(|w| format!("+{}", "-".repeat(w + 2)))
                .collect::<String>()
                + "+\n";
            out.push_str(&rule);
            for row in &cells {
                for (cell, w) in row.iter().zip(&widths) {
                    out.push_str(&format!("| {cell:<w$} "));
                }
                out.push_str("|\n");
                out.push_str(&rule);
            }
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct SubgroupOut {
    pub idempotent: Elt,
    pub order: usize,
    pub kernel_order: usize,
}

#[derive(Debug, Serialize)]
pub struct MemberOut {
    pub variety: String,
    pub size: usize,
    pub subgroups: Vec<SubgroupOut>,
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Elt>,
}

pub fn member(t: &FiniteSemigroup, k: &KernelFunctor) -> Result<MemberOut, CliError> {
    let mut subgroups = Vec::new();
    for e in t.idempotents() {
        let g = maximal_subgroup(t, e)?;
        subgroups.push(SubgroupOut {
            idempotent: e,
            order: g.order(),
            kernel_order: kernel_indices(&g, k).len(),
        });
    }
    let witness = subgroups
        .iter()
        .find(|s| s.kernel_order > 1)
        .map(|s| s.idempotent);
    debug_assert_eq!(witness.is_none(), is_member(t, k));
    Ok(MemberOut {
        variety: k.to_string(),
        size: t.size(),
        subgroups,
        verdict: if witness.is_none() {
            "MEMBER"
        } else {
            "NOT_MEMBER"
        },
        witness,
    })
}

impl Document for MemberOut {
    fn to_text(&self) -> String {
        let mut out = format!("variety: {}\nsize: {}\n", self.variety, self.size);
        for s in &self.subgroups {
            out.push_str(&format!(
                "subgroup at {}: order {}, kernel order {}\n",
                s.idempotent, s.order, s.kernel_order
            ));
        }
        if let Some(w) = self.witness {
            out.push_str(&format!("witness: {w}\n"));
        }
        out.push_str(self.verdict);
        out.push('\n');
        out
    }
}

#[derive(Debug, Serialize)]
pub struct KernelOut {
    pub variety: String,
    pub idempotent: Elt,
    /// Elements of the maximal subgroup at the idempotent.
    pub group: Vec<Elt>,
    /// Elements of its kernel.
    pub kernel: Vec<Elt>,
    pub in_variety: bool,
}

pub fn kernel(t: &FiniteSemigroup, e: Elt, k: &KernelFunctor) -> Result<KernelOut, CliError> {
    let g: FiniteGroup = maximal_subgroup(t, e)?;
    let mut group: Vec<Elt> = g.elements().map(|a| g.label(a)).collect();
    group.sort_unstable();
    let mut kernel: Vec<Elt> = kernel_indices(&g, k)
        .into_iter()
        .map(|a| g.label(a))
        .collect();
    kernel.sort_unstable();
    Ok(KernelOut {
        variety: k.to_string(),
        idempotent: e,
        in_variety: kernel.len() == 1,
        group,
        kernel,
    })
}

impl Document for KernelOut {
    fn to_text(&self) -> String {
        format!(
            "variety: {}\nidempotent: {}\ngroup: {{{}}}\nkernel: {{{}}}\n{}\n",
            self.variety,
            self.idempotent,
            join(&self.group, ","),
            join(&self.kernel, ","),
            if self.in_variety {
                "IN_VARIETY"
            } else {
                "NOT_IN_VARIETY"
            }
        )
    }
}

pub struct PointlikeArgs {
    pub strategy: Strategy,
    pub pairs: bool,
    pub trace: bool,
    pub cap: usize,
}

pub fn pointlikes(
    t: &FiniteSemigroup,
    k: &KernelFunctor,
    args: &PointlikeArgs,
) -> Result<SaturationReport, CliError> {
    let opts = SaturationOptions {
        cap: args.cap,
        trace: args.trace,
        ..SaturationOptions::default()
    };
    let family = saturate_with(t, k, args.strategy, &opts)?;
    let mut report = family.report(k, args.trace);
    if args.pairs {
        report.pointlike_pairs = Some(family.pointlike_pairs());
    }
    Ok(report)
}

impl Document for SaturationReport {
    fn to_text(&self) -> String {
        let mut out = format!(
            "variety: {}\nstrategy: {}\nuniverse: {}\nmembers: {}\nrounds: {}\nkernel additions: {}\npseudo additions: {}\n",
            self.variety,
            self.strategy,
            self.universe,
            self.member_count,
            self.stats.rounds,
            self.stats.kernel_additions,
            self.stats.pseudo_additions
        );
        out.push_str(&format!(
            "maximal pointlikes: {}\n",
            join(&self.maximal, " ")
        ));
        if let Some(pairs) = &self.pointlike_pairs {
            let ps: Vec<String> = pairs.iter().map(|(x, y)| format!("({x},{y})")).collect();
            out.push_str(&format!("pointlike pairs: {}\n", ps.join(" ")));
        }
        if let Some(trace) = &self.trace {
            for e in trace {
                let rule = serde_json::to_value(e.rule).expect("rule serializes");
                out.push_str(&format!(
                    "trace: round {} {} {} adds {}\n",
                    e.round,
                    rule.as_str().unwrap_or_default(),
                    join(&e.source, " "),
                    e.added
                ));
            }
        }
        out
    }
}

pub struct SeparateArgs {
    pub alphabet: Option<String>,
    pub strategy: Strategy,
    pub cap: usize,
}

pub fn separate(
    l1: &LanguageSource,
    l2: &LanguageSource,
    k: &KernelFunctor,
    args: &SeparateArgs,
) -> Result<SeparationReport, CliError> {
    let d1 = load_language(l1, args.alphabet.as_deref())?;
    let d2 = load_language(l2, args.alphabet.as_deref())?;
    let opts = SaturationOptions {
        cap: args.cap,
        ..SaturationOptions::default()
    };
    let (verdict, data) =
        decide_separation_with(&d1, &d2, k, args.strategy, &opts, DEFAULT_TRANSITION_CAP)?;
    Ok(SeparationReport::new(&d1, k, &verdict, &data))
}

impl Document for SeparationReport {
    fn to_text(&self) -> String {
        SeparationReport::to_text(self)
    }
}

pub fn verify(
    t: &FiniteSemigroup,
    k: &KernelFunctor,
    max_size: usize,
) -> Result<VerifyReport, CliError> {
    let opts = SaturationOptions {
        cap: max_size.min(hbar::saturation::MAX_UNIVERSE),
        ..SaturationOptions::default()
    };
    let family = saturate_with(t, k, Strategy::Kernel, &opts)?;
    let report = verify_with(
        t,
        k,
        &family,
        &VerifyOptions {
            max_size,
            ..VerifyOptions::default()
        },
    )?;
    Ok(report)
}

impl Document for VerifyReport {
    fn to_text(&self) -> String {
        VerifyReport::to_text(self)
    }
}
