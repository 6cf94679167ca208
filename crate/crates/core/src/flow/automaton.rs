use std::collections::HashMap;
use std::fmt;

use serde::{Serialize, Serializer};

use super::chain::{format_chain, Chain};
use super::{BlowupOp, FlowError, SatSemigroup};
use crate::saturation::SubsetElt;
use crate::semigroup::{Elt, FiniteSemigroup};

pub const DEFAULT_STATE_CAP: usize = 20_000;

/// A flow value: `{I}` at the empty chain, else the last letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowValue {
    Identity,
    Subset(SubsetElt),
}

impl fmt::Display for FlowValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlowValue::Identity => f.write_str("{I}"),
            FlowValue::Subset(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for FlowValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            FlowValue::Identity => serializer.serialize_str("I"),
            FlowValue::Subset(x) => x.serialize(serializer),
        }
    }
}

/// The reachable part of the automaton on strict chains of H-elements,
/// with alphabet `T` and initial state `ε` (state 0).
#[derive(Debug, Clone)]
pub struct FlowAutomaton {
    states: Vec<Chain>,
    index: HashMap<Chain, usize>,
    /// `transitions[q][t]`.
    transitions: Vec<Vec<usize>>,
}

impl FlowAutomaton {
    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn state(&self, q: usize) -> &[Elt] {
        &self.states[q]
    }

    pub fn states(&self) -> &[Chain] {
        &self.states
    }

    pub fn index_of(&self, chain: &[Elt]) -> Option<usize> {
        self.index.get(chain).copied()
    }

    pub fn next(&self, q: usize, t: Elt) -> usize {
        self.transitions[q][t]
    }

    pub fn alphabet_size(&self) -> usize {
        self.transitions.first().map_or(0, Vec::len)
    }

    pub fn flow(&self, s: &SatSemigroup, q: usize) -> FlowValue {
        match self.states[q].last() {
            None => FlowValue::Identity,
            Some(&x) => FlowValue::Subset(s.member(x)),
        }
    }

    /// The action of each letter as a transformation of the states.
    pub fn letter_maps(&self) -> Vec<Vec<usize>> {
        (0..self.alphabet_size())
            .map(|t| self.transitions.iter().map(|row| row[t]).collect())
            .collect()
    }

    pub fn describe(&self, s: &SatSemigroup, q: usize) -> String {
        format_chain(s, &self.states[q])
    }
}

/// Breadth-first closure of `{ε}` under every `τ_t`.
pub fn build_automaton_and_flow(
    t: &FiniteSemigroup,
    s: &SatSemigroup,
    b: &BlowupOp,
    state_cap: usize,
) -> Result<FlowAutomaton, FlowError> {
    let mut states: Vec<Chain> = vec![Vec::new()];
    let mut index: HashMap<Chain, usize> = HashMap::from([(Vec::new(), 0)]);
    let mut transitions = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let mut row = Vec::with_capacity(t.size());
        for a in t.elements() {
            let next = b.tau_step(s, &states[i], a)?;
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    if states.len() >= state_cap {
                        return Err(FlowError::StateExplosion { cap: state_cap });
                    }
                    index.insert(next.clone(), states.len());
                    states.push(next);
                    states.len() - 1
                }
            };
            row.push(id);
        }
        transitions.push(row);
        i += 1;
    }
    Ok(FlowAutomaton {
        states,
        index,
        transitions,
    })
}

#[cfg(test)]
mod tests {
    use super::super::build_blowup;
    use super::super::tests::sat;
    use super::*;
    use crate::corpus;
    use crate::group::KernelFunctor;

    #[test]
    fn z2_trivial_automaton() {
        let t = corpus::cyclic_group(2);
        let k = KernelFunctor::Trivial;
        let s = sat(&t, &k);
        let b = build_blowup(&s, &k).unwrap();
        let a = build_automaton_and_flow(&t, &s, &b, DEFAULT_STATE_CAP).unwrap();
        assert_eq!(a.state_count(), 2);
        assert_eq!(a.flow(&s, 0), FlowValue::Identity);
        assert_eq!(a.flow(&s, 1).to_string(), "{0,1}");
        for q in 0..2 {
            for letter in 0..2 {
                assert_eq!(a.next(q, letter), 1);
            }
        }
    }

    #[test]
    fn state_cap() {
        let t = corpus::brandt_b2();
        let k = KernelFunctor::All;
        let s = sat(&t, &k);
        let b = build_blowup(&s, &k).unwrap();
        assert_eq!(
            build_automaton_and_flow(&t, &s, &b, 2).unwrap_err(),
            FlowError::StateExplosion { cap: 2 }
        );
    }
}
