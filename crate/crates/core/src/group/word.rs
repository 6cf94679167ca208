use std::fmt;

use serde::{Deserialize, Serialize};

use super::{FiniteGroup, GroupError};

/// A group word over letters `x1..xk`, each letter carrying an exponent of
/// `+1` or `-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupWord {
    letters: Vec<(usize, bool)>,
    arity: usize,
}

impl GroupWord {
    /// `letters` holds `(letter index, inverted)`; letter indices are 0-based.
    pub fn new(letters: Vec<(usize, bool)>) -> Result<Self, GroupError> {
        if letters.is_empty() {
            return Err(GroupError::WordParse {
                word: String::new(),
                reason: "empty word".into(),
            });
        }
        let arity = letters.iter().map(|&(l, _)| l + 1).max().unwrap_or(0);
        Ok(Self { letters, arity })
    }

    /// `x`
    pub fn variable() -> Self {
        Self::new(vec![(0, false)]).unwrap()
    }

    /// `x y x' y'`
    pub fn commutator() -> Self {
        Self::new(vec![(0, false), (1, false), (0, true), (1, true)]).unwrap()
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn letters(&self) -> &[(usize, bool)] {
        &self.letters
    }

    /// Parses `x1 x2 x1' x2'`; letters may also be written without spaces.
    pub fn parse(src: &str) -> Result<Self, GroupError> {
        let err = |reason: &str| GroupError::WordParse {
            word: src.to_string(),
            reason: reason.to_string(),
        };
        let chars: Vec<char> = src.chars().collect();
        let mut i = 0;
        let mut letters = Vec::new();
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c != 'x' {
                return Err(err(&format!("unexpected {c:?} at {i}")));
            }
            i += 1;
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(err("letter index missing after 'x'"));
            }
            let idx: usize = chars[start..i]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| err("bad letter index"))?;
            if idx == 0 {
                return Err(err("letters are numbered from x1"));
            }
            let inverted = i < chars.len() && chars[i] == '\'';
            if inverted {
                i += 1;
            }
            letters.push((idx - 1, inverted));
        }
        Self::new(letters).map_err(|_| err("empty word"))
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(l, inv)| format!("x{}{}", l + 1, if inv { "'" } else { "" }))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// One word per non-empty line; `#` starts a comment line.
pub fn parse_word_file(src: &str) -> Result<Vec<GroupWord>, GroupError> {
    let words: Vec<GroupWord> = src
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(GroupWord::parse)
        .collect::<Result<_, _>>()?;
    if words.is_empty() {
        return Err(GroupError::WordParse {
            word: String::new(),
            reason: "word file contains no words".into(),
        });
    }
    Ok(words)
}

/// Value of `w` at `args` (local indices of `g`).
pub fn evaluate_group_word(
    g: &FiniteGroup,
    w: &GroupWord,
    args: &[usize],
) -> Result<usize, GroupError> {
    if args.len() != w.arity() {
        return Err(GroupError::ArityMismatch {
            expected: w.arity(),
            got: args.len(),
        });
    }
    Ok(w.letters.iter().fold(g.identity(), |acc, &(l, inv)| {
        let x = if inv { g.inv(args[l]) } else { args[l] };
        g.mul(acc, x)
    }))
}
