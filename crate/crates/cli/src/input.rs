//! Loading semigroups, varieties and automata from command-line arguments.

use std::fs;

use hbar::corpus;
use hbar::group::{parse_word_file, KernelFunctor};
use hbar::io::parse_semigroup;
use hbar::languages::{alphabet_from_str, regex_to_dfa, Dfa};
use hbar::semigroup::FiniteSemigroup;

use crate::error::CliError;

fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::input(format!("{path}: {e}")))
}

/// `corpus:NAME` selects a bundled semigroup; anything else is a `.sgp` or
/// `.tgen` path.
pub fn load_semigroup(arg: &str) -> Result<FiniteSemigroup, CliError> {
    if let Some(name) = arg.strip_prefix("corpus:") {
        return corpus::semigroup_by_name(name).ok_or_else(|| {
            let names: Vec<&str> = corpus::semigroups().iter().map(|(n, _)| *n).collect();
            CliError::input(format!(
                "unknown corpus semigroup {name:?}; available: {}",
                names.join(", ")
            ))
        });
    }
    let src = read(arg)?;
    parse_semigroup(&src).map_err(|e| {
        let mut err = CliError::from(e);
        err.message = format!("{arg}: {}", err.message);
        err
    })
}

pub fn parse_variety(spec: &str) -> Result<KernelFunctor, CliError> {
    let (head, arg) = match spec.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (spec, None),
    };
    let primes = |a: &str| -> Result<Vec<u64>, CliError> {
        a.trim_matches(|c| c == '{' || c == '}')
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u64>()
                    .map_err(|_| CliError::input(format!("bad prime {p:?} in variety {spec:?}")))
            })
            .collect()
    };
    let k = match (head, arg) {
        ("trivial", None) => KernelFunctor::Trivial,
        ("all", None) => KernelFunctor::All,
        ("ab", None) => KernelFunctor::Abelian,
        ("nil", None) => KernelFunctor::Nilpotent,
        ("sol", None) => KernelFunctor::Solvable,
        ("p", Some(a)) => {
            let ps = primes(a)?;
            if ps.len() != 1 {
                return Err(CliError::input(format!("p:<prime> takes one prime, got {a:?}")));
            }
            KernelFunctor::p_group(ps[0])?
        }
        ("pi", Some(a)) => KernelFunctor::pi_group(primes(a)?)?,
        ("verbal", Some(path)) => KernelFunctor::verbal(parse_word_file(&read(path)?)?)?,
        _ => {
            return Err(CliError::input(format!(
                "unknown variety {spec:?}; expected trivial, all, ab, p:<prime>, pi:<p1,p2,...>, nil, sol or verbal:<file>"
            )))
        }
    };
    Ok(k)
}

/// Where a language comes from.
#[derive(Debug, Clone)]
pub enum LanguageSource {
    File(String),
    Regex(String),
}

/// Loads a language as a minimal DFA. Regexes need `alphabet`; file DFAs are
/// reordered to it when given.
pub fn load_language(src: &LanguageSource, alphabet: Option<&str>) -> Result<Dfa, CliError> {
    let alphabet = alphabet.map(alphabet_from_str).transpose()?;
    match src {
        LanguageSource::Regex(r) => {
            let a =
                alphabet.ok_or_else(|| CliError::input("--alphabet is required with --regex"))?;
            Ok(regex_to_dfa(r, &a)?)
        }
        LanguageSource::File(path) => {
            let d = Dfa::from_json(&read(path)?).map_err(|e| {
                let mut err = CliError::from(e);
                err.message = format!("{path}: {}", err.message);
                err
            })?;
            let d = match alphabet {
                Some(a) => d.reorder_alphabet(&a)?,
                None => d,
            };
            Ok(d.minimize())
        }
    }
}
