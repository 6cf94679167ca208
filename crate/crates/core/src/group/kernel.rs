use std::fmt;

use serde::{Deserialize, Serialize};

use super::{evaluate_group_word, FiniteGroup, GroupError, GroupWord};

/// A variety of finite groups, realized through its kernel `G -> K_H(G)`:
/// the smallest normal subgroup with quotient in the variety.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KernelFunctor {
    /// Only the trivial group; `K(G) = G`.
    Trivial,
    /// Every finite group; `K(G) = 1`.
    All,
    Abelian,
    PGroup(u64),
    PiGroup(Vec<u64>),
    Nilpotent,
    Solvable,
    /// Defined by the identities `w = 1`.
    Verbal(Vec<GroupWord>),
}

pub(crate) fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl KernelFunctor {
    pub fn p_group(p: u64) -> Result<Self, GroupError> {
        if !is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        Ok(Self::PGroup(p))
    }

    pub fn pi_group(mut primes: Vec<u64>) -> Result<Self, GroupError> {
        if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(GroupError::NotPrime(p));
        }
        primes.sort_unstable();
        primes.dedup();
        Ok(Self::PiGroup(primes))
    }

    pub fn verbal(words: Vec<GroupWord>) -> Result<Self, GroupError> {
        if words.is_empty() {
            return Err(GroupError::InvalidFunctor(
                "verbal variety needs a word".into(),
            ));
        }
        Ok(Self::Verbal(words))
    }

    /// Checks the parameter invariants of a deserialized or hand-built value.
    pub fn validate(&self) -> Result<(), GroupError> {
        match self {
            Self::PGroup(p) if !is_prime(*p) => Err(GroupError::NotPrime(*p)),
            Self::PiGroup(ps) => match ps.iter().find(|&&p| !is_prime(p)) {
                Some(&p) => Err(GroupError::NotPrime(p)),
                None => Ok(()),
            },
            Self::Verbal(ws) if ws.is_empty() => Err(GroupError::InvalidFunctor(
                "verbal variety needs a word".into(),
            )),
            _ => Ok(()),
        }
    }

    /// A finite basis of group identities, when one is known.
    pub fn word_basis(&self) -> Option<Vec<GroupWord>> {
        match self {
            Self::All => Some(Vec::new()),
            Self::Trivial => Some(vec![GroupWord::variable()]),
            Self::Abelian => Some(vec![GroupWord::commutator()]),
            Self::Verbal(ws) => Some(ws.clone()),
            _ => None,
        }
    }
}

impl fmt::Display for KernelFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Trivial => write!(f, "trivial"),
            Self::All => write!(f, "all"),
            Self::Abelian => write!(f, "ab"),
            Self::PGroup(p) => write!(f, "p:{p}"),
            Self::PiGroup(ps) => {
                let ps: Vec<String> = ps.iter().map(u64::to_string).collect();
                write!(f, "pi:{}", ps.join(","))
            }
            Self::Nilpotent => write!(f, "nil"),
            Self::Solvable => write!(f, "sol"),
            Self::Verbal(ws) => {
                let ws: Vec<String> = ws.iter().map(|w| format!("[{w}]")).collect();
                write!(f, "verbal:{}", ws.join(";"))
            }
        }
    }
}

fn coprime_to_all(order: usize, primes: &[u64]) -> bool {
    primes.iter().all(|&p| !(order as u64).is_multiple_of(p))
}

/// Local indices of `K_H(g)`, sorted.
pub fn kernel_indices(g: &FiniteGroup, k: &KernelFunctor) -> Vec<usize> {
    let all: Vec<usize> = g.elements().collect();
    let out = match k {
        KernelFunctor::Trivial => all,
        KernelFunctor::All => vec![g.identity()],
        KernelFunctor::Abelian => g.commutator_subgroup(&all, &all),
        KernelFunctor::PGroup(p) => pi_prime_part(g, &[*p]),
        KernelFunctor::PiGroup(ps) => pi_prime_part(g, ps),
        KernelFunctor::Nilpotent => {
            let mut cur = all.clone();
            loop {
                let next = g.commutator_subgroup(&all, &cur);
                if next == cur {
                    break cur;
                }
                cur = next;
            }
        }
        KernelFunctor::Solvable => {
            let mut cur = all;
            loop {
                let next = g.commutator_subgroup(&cur, &cur);
                if next == cur {
                    break cur;
                }
                cur = next;
            }
        }
        KernelFunctor::Verbal(words) => {
            let mut values = Vec::new();
            for w in words {
                for_each_tuple(g.order(), w.arity(), |args| {
                    values.push(evaluate_group_word(g, w, args).expect("arity matches"));
                });
            }
            values.sort_unstable();
            values.dedup();
            let generated = g.generate(&values);
            debug_assert_eq!(g.normal_closure(&generated), generated);
            generated
        }
    };
    debug_assert!(g.is_normal(&out));
    out
}

/// Subgroup generated by the elements whose order avoids every prime of `primes`.
fn pi_prime_part(g: &FiniteGroup, primes: &[u64]) -> Vec<usize> {
    let gens: Vec<usize> = g
        .elements()
        .filter(|&a| coprime_to_all(g.element_order(a), primes))
        .collect();
    g.generate(&gens)
}

pub(crate) fn for_each_tuple(n: usize, arity: usize, mut f: impl FnMut(&[usize])) {
    let mut args = vec![0usize; arity];
    loop {
        f(&args);
        let mut i = 0;
        loop {
            if i == arity {
                return;
            }
            args[i] += 1;
            if args[i] < n {
                break;
            }
            args[i] = 0;
            i += 1;
        }
    }
}

/// `K_H(g)` as a group whose labels are the host labels of `g`.
pub fn kernel(g: &FiniteGroup, k: &KernelFunctor) -> FiniteGroup {
    g.subgroup(&kernel_indices(g, k))
}

pub fn is_in_variety(g: &FiniteGroup, k: &KernelFunctor) -> bool {
    kernel_indices(g, k).len() == 1
}
