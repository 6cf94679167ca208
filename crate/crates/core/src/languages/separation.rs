use serde::Serialize;

use super::{common_word, product, transition_closure, Dfa, LanguageError, DEFAULT_TRANSITION_CAP};
use crate::group::KernelFunctor;
use crate::saturation::{saturate_with, SaturationOptions, Strategy, SubsetElt};
use crate::semigroup::{Elt, FiniteSemigroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Separable,
    /// A pointlike pair `{x, y}` with `x` in the first image and `y` in the
    /// second.
    NotSeparable {
        witness: (Elt, Elt),
    },
}

/// One semigroup recognizing both languages.
#[derive(Debug, Clone)]
pub struct RecognitionData {
    /// Transition semigroup of the product automaton.
    pub semigroup: FiniteSemigroup,
    pub letter_map: Vec<Elt>,
    /// Elements whose words lie in the first language.
    pub image1: Vec<Elt>,
    pub image2: Vec<Elt>,
    /// A shortest word realizing each element.
    pub words: Vec<Vec<usize>>,
    pub product_states: usize,
}

/// Decides separability by the variety of `k` with the kernel strategy and
/// default caps.
pub fn decide_separation(
    d1: &Dfa,
    d2: &Dfa,
    k: &KernelFunctor,
) -> Result<(Verdict, RecognitionData), LanguageError> {
    decide_separation_with(
        d1,
        d2,
        k,
        Strategy::Kernel,
        &SaturationOptions::default(),
        DEFAULT_TRANSITION_CAP,
    )
}

pub fn decide_separation_with(
    d1: &Dfa,
    d2: &Dfa,
    k: &KernelFunctor,
    strategy: Strategy,
    opts: &SaturationOptions,
    transition_cap: usize,
) -> Result<(Verdict, RecognitionData), LanguageError> {
    d1.validate()?;
    d2.validate()?;
    for d in [d1, d2] {
        if d.is_final(d.initial) {
            return Err(LanguageError::EmptyWordAccepted);
        }
    }
    if let Some(w) = common_word(d1, d2)? {
        return Err(LanguageError::NotDisjoint {
            witness: d1.spell(&w),
        });
    }
    let (p, pairs) = product(d1, d2)?;
    let (closure, letter_map) = transition_closure(&p, transition_cap)?;
    let semigroup = closure.to_semigroup();

    let in_image = |x: Elt, first: bool| {
        let (q1, q2) = pairs[closure.elements[x][p.initial] as usize];
        if first {
            d1.is_final(q1)
        } else {
            d2.is_final(q2)
        }
    };
    let image1: Vec<Elt> = semigroup
        .elements()
        .filter(|&x| in_image(x, true))
        .collect();
    let image2: Vec<Elt> = semigroup
        .elements()
        .filter(|&x| in_image(x, false))
        .collect();

    let mut words: Vec<Option<Vec<usize>>> = vec![None; closure.size()];
    let mut queue = std::collections::VecDeque::new();
    for (a, &g) in letter_map.iter().enumerate() {
        if words[g].is_none() {
            words[g] = Some(vec![a]);
            queue.push_back(g);
        }
    }
    while let Some(x) = queue.pop_front() {
        for (a, &g) in letter_map.iter().enumerate() {
            let y = closure.mul(x, g);
            if words[y].is_none() {
                let mut w = words[x].clone().unwrap();
                w.push(a);
                words[y] = Some(w);
                queue.push_back(y);
            }
        }
    }
    let words: Vec<Vec<usize>> = words
        .into_iter()
        .map(|w| w.expect("every element is a product of letters"))
        .collect();

    let family = saturate_with(&semigroup, k, strategy, opts)?;
    let witness = image1.iter().find_map(|&x| {
        image2
            .iter()
            .find(|&&y| family.is_pointlike(SubsetElt::from_elements(&[x, y]).unwrap()))
            .map(|&y| (x, y))
    });
    let verdict = match witness {
        Some(witness) => Verdict::NotSeparable { witness },
        None => Verdict::Separable,
    };
    Ok((
        verdict,
        RecognitionData {
            semigroup,
            letter_map,
            image1,
            image2,
            words,
            product_states: p.states,
        },
    ))
}

/// Serializable summary of a separation decision; elements are shown by a
/// shortest word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparationReport {
    pub variety: String,
    pub alphabet: Vec<String>,
    pub product_states: usize,
    pub semigroup_size: usize,
    pub image1: Vec<String>,
    pub image2: Vec<String>,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<[String; 2]>,
}

impl SeparationReport {
    pub fn new(d1: &Dfa, k: &KernelFunctor, verdict: &Verdict, data: &RecognitionData) -> Self {
        let word = |x: Elt| d1.spell(&data.words[x]);
        SeparationReport {
            variety: k.to_string(),
            alphabet: d1.alphabet.clone(),
            product_states: data.product_states,
            semigroup_size: data.semigroup.size(),
            image1: data.image1.iter().map(|&x| word(x)).collect(),
            image2: data.image2.iter().map(|&x| word(x)).collect(),
            verdict: match verdict {
                Verdict::Separable => "SEPARABLE",
                Verdict::NotSeparable { .. } => "NOT_SEPARABLE",
            }
            .to_string(),
            witness: match verdict {
                Verdict::NotSeparable { witness: (x, y) } => Some([word(*x), word(*y)]),
                Verdict::Separable => None,
            },
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("variety: {}\n", self.variety));
        out.push_str(&format!("alphabet: {}\n", self.alphabet.join(" ")));
        out.push_str(&format!("product states: {}\n", self.product_states));
        out.push_str(&format!("semigroup size: {}\n", self.semigroup_size));
        out.push_str(&format!("image1: {}\n", self.image1.join(" ")));
        out.push_str(&format!("image2: {}\n", self.image2.join(" ")));
        if let Some([x, y]) = &self.witness {
            out.push_str(&format!("witness: {x} {y}\n"));
        }
        out.push_str(&self.verdict);
        out.push('\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::{alphabet_from_str, regex_to_dfa};
    use super::*;

    fn dfa(r: &str, letters: &str) -> Dfa {
        regex_to_dfa(r, &alphabet_from_str(letters).unwrap()).unwrap()
    }

    #[test]
    fn even_and_odd_powers() {
        let (l1, l2) = (dfa("(aa)+", "a"), dfa("a(aa)*", "a"));
        let (v, data) = decide_separation(&l1, &l2, &KernelFunctor::Trivial).unwrap();
        let Verdict::NotSeparable { witness: (x, y) } = v else {
            panic!("expected a witness");
        };
        assert_eq!(data.semigroup.size(), 2);
        assert_eq!(l1.spell(&data.words[x]), "aa");
        assert_eq!(l1.spell(&data.words[y]), "a");
        let (v, _) = decide_separation(&l1, &l2, &KernelFunctor::Abelian).unwrap();
        assert_eq!(v, Verdict::Separable);
    }

    #[test]
    fn alternating_words_separate_aperiodically() {
        let (l1, l2) = (dfa("(ab)+", "ab"), dfa("(ba)+", "ab"));
        let (v, _) = decide_separation(&l1, &l2, &KernelFunctor::Trivial).unwrap();
        assert_eq!(v, Verdict::Separable);
    }

    #[test]
    fn overlapping_languages_are_rejected() {
        let err =
            decide_separation(&dfa("a+", "a"), &dfa("aa", "a"), &KernelFunctor::All).unwrap_err();
        assert_eq!(
            err,
            LanguageError::NotDisjoint {
                witness: "aa".into()
            }
        );
    }

    #[test]
    fn report_shapes() {
        let (l1, l2) = (dfa("(aa)+", "a"), dfa("a(aa)*", "a"));
        let k = KernelFunctor::Trivial;
        let (v, data) = decide_separation(&l1, &l2, &k).unwrap();
        let r = SeparationReport::new(&l1, &k, &v, &data);
        assert_eq!(r.verdict, "NOT_SEPARABLE");
        assert_eq!(r.witness, Some(["aa".to_string(), "a".to_string()]));
        assert!(r.to_text().ends_with("NOT_SEPARABLE\n"));
    }
}
