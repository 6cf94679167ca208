//! Regular expressions over a finite alphabet, compiled to minimal DFAs by
//! derivatives.
//!
//! Grammar: `e := t ('|' t)*`, `t := f+`, `f := atom ('*' | '+')*`,
//! `atom := letter | '(' e ')'`. Letters are single characters of the
//! alphabet; whitespace is ignored.

use std::collections::{BTreeSet, HashMap, VecDeque};

use super::{Dfa, LanguageError};

/// Regular expressions in a normal form that keeps the set of derivatives
/// finite: unions are flattened sets, concatenations flattened lists.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Regex {
    Empty,
    Epsilon,
    Letter(usize),
    Concat(Vec<Regex>),
    Union(BTreeSet<Regex>),
    Star(Box<Regex>),
}

impl Regex {
    pub fn concat(parts: Vec<Regex>) -> Regex {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                Regex::Empty => return Regex::Empty,
                Regex::Epsilon => {}
                Regex::Concat(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Regex::Epsilon,
            1 => flat.pop().unwrap(),
            _ => Regex::Concat(flat),
        }
    }

    pub fn union(parts: impl IntoIterator<Item = Regex>) -> Regex {
        let mut set = BTreeSet::new();
        for p in parts {
            match p {
                Regex::Empty => {}
                Regex::Union(inner) => set.extend(inner),
                other => {
                    set.insert(other);
                }
            }
        }
        match set.len() {
            0 => Regex::Empty,
            1 => set.into_iter().next().unwrap(),
            _ => Regex::Union(set),
        }
    }

    pub fn star(r: Regex) -> Regex {
        match r {
            Regex::Empty | Regex::Epsilon => Regex::Epsilon,
            s @ Regex::Star(_) => s,
            other => Regex::Star(Box::new(other)),
        }
    }

    pub fn plus(r: Regex) -> Regex {
        Regex::concat(vec![r.clone(), Regex::star(r)])
    }

    pub fn nullable(&self) -> bool {
        match self {
            Regex::Empty | Regex::Letter(_) => false,
            Regex::Epsilon | Regex::Star(_) => true,
            Regex::Concat(ps) => ps.iter().all(Regex::nullable),
            Regex::Union(ps) => ps.iter().any(Regex::nullable),
        }
    }

    /// The Brzozowski derivative by letter `a`.
    pub fn derivative(&self, a: usize) -> Regex {
        match self {
            Regex::Empty | Regex::Epsilon => Regex::Empty,
            Regex::Letter(b) => {
                if *b == a {
                    Regex::Epsilon
                } else {
                    Regex::Empty
                }
            }
            Regex::Union(ps) => Regex::union(ps.iter().map(|p| p.derivative(a))),
            Regex::Concat(ps) => {
                let rest = Regex::concat(ps[1..].to_vec());
                let head = Regex::concat(vec![ps[0].derivative(a), rest.clone()]);
                if ps[0].nullable() {
                    Regex::union([head, rest.derivative(a)])
                } else {
                    head
                }
            }
            Regex::Star(r) => Regex::concat(vec![r.derivative(a), self.clone()]),
        }
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    alphabet: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or_else(
            || self.chars.last().map_or(0, |&(i, c)| i + c.len_utf8()),
            |&(i, _)| i,
        )
    }

    fn error(&self, message: impl Into<String>) -> LanguageError {
        LanguageError::Parse {
            position: self.offset(),
            message: message.into(),
        }
    }

    fn union(&mut self) -> Result<Regex, LanguageError> {
        let mut parts = vec![self.concat()?];
        while self.peek() == Some('|') {
            self.pos += 1;
            parts.push(self.concat()?);
        }
        Ok(Regex::union(parts))
    }

    fn concat(&mut self) -> Result<Regex, LanguageError> {
        let mut parts = Vec::new();
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            parts.push(self.postfix()?);
        }
        if parts.is_empty() {
            return Err(self.error("expected a letter or '('"));
        }
        Ok(Regex::concat(parts))
    }

    fn postfix(&mut self) -> Result<Regex, LanguageError> {
        let mut r = self.atom()?;
        while let Some(c) = self.peek() {
            match c {
                '*' => r = Regex::star(r),
                '+' => r = Regex::plus(r),
                _ => break,
            }
            self.pos += 1;
        }
        Ok(r)
    }

    fn atom(&mut self) -> Result<Regex, LanguageError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let r = self.union()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(r)
            }
            Some(c) if "*+|)".contains(c) => Err(self.error(format!("unexpected '{c}'"))),
            Some(c) => {
                let letter = self
                    .alphabet
                    .iter()
                    .position(|a| a.chars().eq(std::iter::once(c)))
                    .ok_or_else(|| self.error(format!("'{c}' is not in the alphabet")))?;
                self.pos += 1;
                Ok(Regex::Letter(letter))
            }
            None => Err(self.error("unexpected end of expression")),
        }
    }
}

/// Parses `expr` over single-character letters of `alphabet`.
pub fn parse_regex(expr: &str, alphabet: &[String]) -> Result<Regex, LanguageError> {
    let mut p = Parser {
        chars: expr
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect(),
        pos: 0,
        alphabet,
    };
    let r = p.union()?;
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected '{}'", p.peek().unwrap())));
    }
    Ok(r)
}

/// Splits an alphabet string such as `ab` into one letter per character.
pub fn alphabet_from_str(letters: &str) -> Result<Vec<String>, LanguageError> {
    let mut out: Vec<String> = Vec::new();
    for c in letters.chars().filter(|c| !c.is_whitespace() && *c != ',') {
        if "()|*+".contains(c) {
            return Err(LanguageError::InvalidDfa(format!(
                "'{c}' cannot be a letter"
            )));
        }
        let s = c.to_string();
        if out.contains(&s) {
            return Err(LanguageError::InvalidDfa(format!("letter '{c}' repeated")));
        }
        out.push(s);
    }
    if out.is_empty() {
        return Err(LanguageError::InvalidDfa("empty alphabet".into()));
    }
    Ok(out)
}

/// The minimal complete DFA of a regex; the language must not contain the
/// empty word.
pub fn regex_to_dfa(expr: &str, alphabet: &[String]) -> Result<Dfa, LanguageError> {
    let r = parse_regex(expr, alphabet)?;
    if r.nullable() {
        return Err(LanguageError::EmptyWordAccepted);
    }
    let mut states = vec![r.clone()];
    let mut index = HashMap::from([(r, 0usize)]);
    let mut delta = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(q) = queue.pop_front() {
        let row: Vec<usize> = (0..alphabet.len())
            .map(|a| {
                let d = states[q].derivative(a);
                *index.entry(d.clone()).or_insert_with(|| {
                    states.push(d);
                    queue.push_back(states.len() - 1);
                    states.len() - 1
                })
            })
            .collect();
        if delta.len() <= q {
            delta.resize(q + 1, Vec::new());
        }
        delta[q] = row;
    }
    let finals = (0..states.len())
        .filter(|&q| states[q].nullable())
        .collect();
    let dfa = Dfa {
        alphabet: alphabet.to_vec(),
        states: states.len(),
        initial: 0,
        finals,
        delta,
    };
    Ok(dfa.minimize())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Vec<String> {
        vec!["a".into(), "b".into()]
    }

    #[test]
    fn parse_errors_have_positions() {
        let a = ab();
        assert_eq!(
            parse_regex("a|", &a).unwrap_err(),
            LanguageError::Parse {
                position: 2,
                message: "expected a letter or '('".into()
            }
        );
        assert!(matches!(
            parse_regex("(ab", &a),
            Err(LanguageError::Parse { position: 3, .. })
        ));
        assert!(matches!(
            parse_regex("ac", &a),
            Err(LanguageError::Parse { position: 1, .. })
        ));
        assert!(matches!(
            parse_regex("*a", &a),
            Err(LanguageError::Parse { position: 0, .. })
        ));
        assert!(matches!(
            parse_regex("a)", &a),
            Err(LanguageError::Parse { position: 1, .. })
        ));
    }

    #[test]
    fn nullable_languages_are_rejected() {
        assert_eq!(
            regex_to_dfa("a*", &ab()).unwrap_err(),
            LanguageError::EmptyWordAccepted
        );
        assert_eq!(
            regex_to_dfa("(a|b*)", &ab()).unwrap_err(),
            LanguageError::EmptyWordAccepted
        );
    }

    #[test]
    fn derivatives_normalize() {
        let r = parse_regex("(a|a)(b)", &ab()).unwrap();
        assert_eq!(r, Regex::Concat(vec![Regex::Letter(0), Regex::Letter(1)]));
        assert_eq!(r.derivative(0), Regex::Letter(1));
        assert_eq!(r.derivative(1), Regex::Empty);
    }

    #[test]
    fn example_dfas() {
        let a: Vec<String> = vec!["a".into()];
        let d = regex_to_dfa("(aa)+", &a).unwrap();
        assert_eq!(d.states, 3);
        assert_eq!(d.delta, vec![vec![1], vec![2], vec![1]]);
        assert_eq!(d.finals, vec![2]);
        let d = regex_to_dfa("a", &a).unwrap();
        assert_eq!(d.states, 3);
        assert!(d.accepts(&[0]) && !d.accepts(&[0, 0]));
        let d = regex_to_dfa("(ab)+", &ab()).unwrap();
        assert_eq!(d.states, 4);
    }

    #[test]
    fn alphabet_strings() {
        assert_eq!(alphabet_from_str("ab").unwrap(), ab());
        assert_eq!(alphabet_from_str("a,b").unwrap(), ab());
        assert!(alphabet_from_str("aa").is_err());
        assert!(alphabet_from_str("").is_err());
    }
}
