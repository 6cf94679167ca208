//! Regular languages over `A⁺`: DFAs, their transition semigroups, and the
//! separation decision by pointlike pairs.

mod regex;
mod separation;

pub use self::regex::{alphabet_from_str, parse_regex, regex_to_dfa, Regex};
pub use separation::{
    decide_separation, decide_separation_with, RecognitionData, SeparationReport, Verdict,
};

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::saturation::SaturationError;
use crate::semigroup::{Elt, FiniteSemigroup, SemigroupError, TransformationClosure};

/// Default bound on the size of a transition semigroup.
pub const DEFAULT_TRANSITION_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LanguageError {
    #[error("regex parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("language contains the empty word; only languages of nonempty words are supported")]
    EmptyWordAccepted,
    #[error("alphabets differ: {left:?} vs {right:?}")]
    AlphabetMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    #[error("languages are not disjoint: both accept {witness:?}")]
    NotDisjoint { witness: String },
    #[error("invalid automaton: {0}")]
    InvalidDfa(String),
    #[error(transparent)]
    Saturation(#[from] SaturationError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

/// A complete deterministic automaton; `delta[q][a]` is the state reached
/// from `q` on letter index `a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dfa {
    pub alphabet: Vec<String>,
    pub states: usize,
    pub initial: usize,
    pub finals: Vec<usize>,
    pub delta: Vec<Vec<usize>>,
}

impl Dfa {
    pub fn validate(&self) -> Result<(), LanguageError> {
        let bad = |m: String| Err(LanguageError::InvalidDfa(m));
        if self.alphabet.is_empty() {
            return bad("empty alphabet".into());
        }
        for (i, a) in self.alphabet.iter().enumerate() {
            if a.is_empty() || self.alphabet[..i].contains(a) {
                return bad(format!("letter {a:?} is empty or repeated"));
            }
        }
        if self.states == 0 {
            return bad("no states".into());
        }
        if self.initial >= self.states {
            return bad(format!("initial state {} out of range", self.initial));
        }
        if let Some(f) = self.finals.iter().find(|&&f| f >= self.states) {
            return bad(format!("final state {f} out of range"));
        }
        if self.delta.len() != self.states {
            return bad(format!(
                "delta has {} rows for {} states",
                self.delta.len(),
                self.states
            ));
        }
        for (q, row) in self.delta.iter().enumerate() {
            if row.len() != self.alphabet.len() {
                return bad(format!("delta row {q} has {} entries", row.len()));
            }
            if let Some(r) = row.iter().find(|&&r| r >= self.states) {
                return bad(format!("delta[{q}] targets state {r} out of range"));
            }
        }
        Ok(())
    }

    /// Parses and validates the JSON form.
    pub fn from_json(src: &str) -> Result<Dfa, LanguageError> {
        let d: Dfa = serde_json::from_str(src)
            .map_err(|e| LanguageError::InvalidDfa(format!("JSON: {e}")))?;
        d.validate()?;
        Ok(d)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("DFA serializes")
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals.contains(&q)
    }

    pub fn run(&self, word: &[usize]) -> usize {
        word.iter().fold(self.initial, |q, &a| self.delta[q][a])
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.is_final(self.run(word))
    }

    /// Letter indices of a word written with this alphabet's letters.
    pub fn parse_word(&self, word: &str) -> Option<Vec<usize>> {
        let mut out = Vec::new();
        let mut rest = word;
        while !rest.is_empty() {
            let (i, a) = self
                .alphabet
                .iter()
                .enumerate()
                .filter(|(_, a)| rest.starts_with(a.as_str()))
                .max_by_key(|(_, a)| a.len())?;
            out.push(i);
            rest = &rest[a.len()..];
        }
        Some(out)
    }

    pub fn spell(&self, word: &[usize]) -> String {
        let sep = if self.alphabet.iter().all(|a| a.chars().count() == 1) {
            ""
        } else {
            "."
        };
        word.iter()
            .map(|&a| self.alphabet[a].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Reachable part, renumbered breadth-first in letter order.
    pub fn trim(&self) -> Dfa {
        let mut order = vec![self.initial];
        let mut id: HashMap<usize, usize> = HashMap::from([(self.initial, 0)]);
        let mut i = 0;
        while i < order.len() {
            for &r in &self.delta[order[i]] {
                if let Entry::Vacant(e) = id.entry(r) {
                    e.insert(order.len());
                    order.push(r);
                }
            }
            i += 1;
        }
        let mut finals: Vec<usize> = self
            .finals
            .iter()
            .filter_map(|f| id.get(f).copied())
            .collect();
        finals.sort_unstable();
        finals.dedup();
        Dfa {
            alphabet: self.alphabet.clone(),
            states: order.len(),
            initial: 0,
            finals,
            delta: order
                .iter()
                .map(|&q| self.delta[q].iter().map(|r| id[r]).collect())
                .collect(),
        }
    }

    /// The minimal complete automaton (Moore refinement), in canonical
    /// breadth-first numbering.
    pub fn minimize(&self) -> Dfa {
        let d = self.trim();
        let mut block: Vec<usize> = (0..d.states).map(|q| usize::from(d.is_final(q))).collect();
        let mut count = 0;
        loop {
            let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
            let next: Vec<usize> = (0..d.states)
                .map(|q| {
                    let mut sig = vec![block[q]];
                    sig.extend(d.delta[q].iter().map(|&r| block[r]));
                    let n = ids.len();
                    *ids.entry(sig).or_insert(n)
                })
                .collect();
            let blocks = ids.len();
            block = next;
            if blocks == count {
                break;
            }
            count = blocks;
        }
        let mut delta = vec![Vec::new(); count];
        let mut finals = Vec::new();
        for q in 0..d.states {
            delta[block[q]] = d.delta[q].iter().map(|&r| block[r]).collect();
            if d.is_final(q) {
                finals.push(block[q]);
            }
        }
        finals.sort_unstable();
        finals.dedup();
        Dfa {
            alphabet: d.alphabet,
            states: count,
            initial: block[0],
            finals,
            delta,
        }
        .trim()
    }

    /// The complement within `A⁺`.
    pub fn complement_plus(&self) -> Dfa {
        // a fresh non-final copy of the initial state keeps ε out
        let n = self.states;
        let mut delta = self.delta.clone();
        delta.push(self.delta[self.initial].clone());
        let finals = (0..n).filter(|&q| !self.is_final(q)).collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            states: n + 1,
            initial: n,
            finals,
            delta,
        }
        .minimize()
    }

    /// Same automaton over `alphabet`, which must be a permutation of this one.
    pub fn reorder_alphabet(&self, alphabet: &[String]) -> Result<Dfa, LanguageError> {
        let mismatch = || LanguageError::AlphabetMismatch {
            left: self.alphabet.clone(),
            right: alphabet.to_vec(),
        };
        if alphabet.len() != self.alphabet.len() {
            return Err(mismatch());
        }
        let perm: Vec<usize> = alphabet
            .iter()
            .map(|a| {
                self.alphabet
                    .iter()
                    .position(|b| b == a)
                    .ok_or_else(mismatch)
            })
            .collect::<Result<_, _>>()?;
        Ok(Dfa {
            alphabet: alphabet.to_vec(),
            states: self.states,
            initial: self.initial,
            finals: self.finals.clone(),
            delta: self
                .delta
                .iter()
                .map(|row| perm.iter().map(|&p| row[p]).collect())
                .collect(),
        })
    }
}

/// The reachable product automaton; state `(p, q)` is numbered breadth-first.
/// Returns the automaton (finals unset) and the pair behind each state.
pub fn product(d1: &Dfa, d2: &Dfa) -> Result<(Dfa, Vec<(usize, usize)>), LanguageError> {
    let d2 = d2.reorder_alphabet(&d1.alphabet)?;
    let start = (d1.initial, d2.initial);
    let mut pairs = vec![start];
    let mut id = HashMap::from([(start, 0usize)]);
    let mut delta = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        let (p, q) = pairs[i];
        let row = (0..d1.alphabet.len())
            .map(|a| {
                let next = (d1.delta[p][a], d2.delta[q][a]);
                *id.entry(next).or_insert_with(|| {
                    pairs.push(next);
                    pairs.len() - 1
                })
            })
            .collect();
        delta.push(row);
        i += 1;
    }
    Ok((
        Dfa {
            alphabet: d1.alphabet.clone(),
            states: pairs.len(),
            initial: 0,
            finals: Vec::new(),
            delta,
        },
        pairs,
    ))
}

/// A shortest nonempty word accepted by both automata, if any.
pub fn common_word(d1: &Dfa, d2: &Dfa) -> Result<Option<Vec<usize>>, LanguageError> {
    let (p, pairs) = product(d1, d2)?;
    let both = |s: usize| d1.is_final(pairs[s].0) && d2.is_final(pairs[s].1);
    // breadth-first over nonempty words: start from the one-letter successors
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; p.states];
    let mut seen = vec![false; p.states];
    let mut queue = VecDeque::new();
    for a in 0..p.alphabet.len() {
        let s = p.delta[0][a];
        if !seen[s] {
            seen[s] = true;
            parent[s] = Some((usize::MAX, a));
            queue.push_back(s);
        }
    }
    while let Some(s) = queue.pop_front() {
        if both(s) {
            let mut word = Vec::new();
            let mut cur = s;
            loop {
                let (prev, a) = parent[cur].unwrap();
                word.push(a);
                if prev == usize::MAX {
                    break;
                }
                cur = prev;
            }
            word.reverse();
            return Ok(Some(word));
        }
        for a in 0..p.alphabet.len() {
            let r = p.delta[s][a];
            if !seen[r] {
                seen[r] = true;
                parent[r] = Some((s, a));
                queue.push_back(r);
            }
        }
    }
    Ok(None)
}

/// The transition semigroup of `d` (words of `A⁺` only) with the element of
/// each letter.
pub fn transition_semigroup_of_dfa(
    d: &Dfa,
    cap: usize,
) -> Result<(FiniteSemigroup, Vec<Elt>), LanguageError> {
    let (closure, letter_map) = transition_closure(d, cap)?;
    Ok((closure.to_semigroup(), letter_map))
}

pub(crate) fn transition_closure(
    d: &Dfa,
    cap: usize,
) -> Result<(TransformationClosure, Vec<Elt>), LanguageError> {
    d.validate()?;
    let gens: Vec<Vec<usize>> = (0..d.alphabet.len())
        .map(|a| (0..d.states).map(|q| d.delta[q][a]).collect())
        .collect();
    let closure = TransformationClosure::new(d.states, &gens, cap)?;
    let letter_map = closure.generator_map.clone();
    Ok((closure, letter_map))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn letters(s: &str) -> Vec<String> {
        alphabet_from_str(s).unwrap()
    }

    #[test]
    fn json_round_trip_and_validation() {
        let d = regex_to_dfa("(ab)+", &letters("ab")).unwrap();
        assert_eq!(Dfa::from_json(&d.to_json()).unwrap(), d);
        let bad = r#"{"alphabet":["a"],"states":2,"initial":0,"finals":[3],"delta":[[1],[0]]}"#;
        assert!(matches!(
            Dfa::from_json(bad),
            Err(LanguageError::InvalidDfa(_))
        ));
        let bad = r#"{"alphabet":["a"],"states":2,"initial":0,"finals":[1],"delta":[[1]]}"#;
        assert!(matches!(
            Dfa::from_json(bad),
            Err(LanguageError::InvalidDfa(_))
        ));
        assert!(Dfa::from_json("{").is_err());
    }

    #[test]
    fn aa_plus_semigroup_is_z2() {
        let d = regex_to_dfa("(aa)+", &letters("a")).unwrap();
        let (s, map) = transition_semigroup_of_dfa(&d, DEFAULT_TRANSITION_CAP).unwrap();
        assert_eq!(s.size(), 2);
        let a = map[0];
        assert_eq!(s.mul(s.mul(a, a), a), a);
        assert!(s.is_idempotent(s.mul(a, a)));
    }

    #[test]
    fn single_state_dfa_has_trivial_semigroup() {
        let d = Dfa {
            alphabet: letters("ab"),
            states: 1,
            initial: 0,
            finals: vec![],
            delta: vec![vec![0, 0]],
        };
        let (s, _) = transition_semigroup_of_dfa(&d, 16).unwrap();
        assert_eq!(s.size(), 1);
    }

    #[test]
    fn ab_plus_semigroup_is_aperiodic() {
        let d = regex_to_dfa("(ab)+", &letters("ab")).unwrap();
        let (s, _) = transition_semigroup_of_dfa(&d, DEFAULT_TRANSITION_CAP).unwrap();
        let g = s.green();
        assert!(g.h_classes().iter().all(|h| h.len() == 1));
    }

    #[test]
    fn complement_and_common_words() {
        let ab = letters("ab");
        let d = regex_to_dfa("a(a|b)*", &ab).unwrap();
        let c = d.complement_plus();
        assert!(!c.accepts(&[]));
        assert!(c.accepts(&[1]) && !c.accepts(&[0]) && c.accepts(&[1, 0]));
        assert_eq!(common_word(&d, &c).unwrap(), None);
        let e = regex_to_dfa("(a|b)b", &ab).unwrap();
        assert_eq!(common_word(&d, &e).unwrap(), Some(vec![0, 1]));
    }

    #[test]
    fn alphabet_order_is_normalized() {
        let d1 = regex_to_dfa("ab", &letters("ab")).unwrap();
        let d2 = regex_to_dfa("ab", &letters("ba")).unwrap();
        assert_eq!(common_word(&d1, &d2).unwrap(), Some(vec![0, 1]));
        let d3 = regex_to_dfa("a", &letters("ac")).unwrap();
        assert!(matches!(
            common_word(&d1, &d3),
            Err(LanguageError::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn words_are_spelled_and_parsed() {
        let d = regex_to_dfa("(ab)+", &letters("ab")).unwrap();
        assert_eq!(d.parse_word("abab").unwrap(), vec![0, 1, 0, 1]);
        assert_eq!(d.spell(&[0, 1]), "ab");
        assert!(d.accepts(&d.parse_word("abab").unwrap()));
        assert!(d.parse_word("abc").is_none());
    }
}
