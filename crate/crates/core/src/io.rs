//! Text formats for semigroups: `.sgp` multiplication tables and `.tgen`
//! transformation generators.

use thiserror::Error;

use crate::semigroup::{FiniteSemigroup, SemigroupError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-empty, non-comment lines with their 1-based line numbers.
fn content_lines(src: &str) -> impl Iterator<Item = (usize, &str)> {
    src.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn numbers(line: usize, fields: &[&str]) -> Result<Vec<usize>, FormatError> {
    fields
        .iter()
        .map(|f| {
            f.parse::<usize>()
                .map_err(|_| syntax(line, format!("expected a non-negative integer, got {f:?}")))
        })
        .collect()
}

/// Parses a `.sgp` table:
///
/// ```text
/// # Z2
/// n 2
/// 0 1
/// 1 0
/// generators 1
/// ```
pub fn parse_sgp(src: &str) -> Result<FiniteSemigroup, FormatError> {
    let mut lines = content_lines(src);
    let (ln, header) = lines
        .next()
        .ok_or_else(|| syntax(1, "missing `n <count>` line"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 || fields[0] != "n" {
        return Err(syntax(ln, "expected `n <count>`"));
    }
    let n = numbers(ln, &fields[1..])?[0];
    if n == 0 {
        return Err(SemigroupError::Empty.into());
    }
    let mut rows = Vec::with_capacity(n);
    let mut generators = None;
    for (ln, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields[0] == "generators" {
            if generators.is_some() {
                return Err(syntax(ln, "duplicate generators line"));
            }
            if rows.len() != n {
                return Err(syntax(
                    ln,
                    format!("expected {n} table rows before generators"),
                ));
            }
            generators = Some(numbers(ln, &fields[1..])?);
            continue;
        }
        if generators.is_some() {
            return Err(syntax(ln, "unexpected content after generators"));
        }
        if rows.len() == n {
            return Err(syntax(ln, format!("more than {n} table rows")));
        }
        rows.push(numbers(ln, &fields)?);
    }
    if rows.len() != n {
        return Err(syntax(
            src.lines().count().max(1),
            format!("expected {n} table rows, found {}", rows.len()),
        ));
    }
    let s = FiniteSemigroup::from_table(rows)?;
    Ok(match generators {
        Some(g) => s.with_generators(g)?,
        None => s,
    })
}

pub fn format_sgp(s: &FiniteSemigroup, comment: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(c) = comment {
        for l in c.lines() {
            out.push_str(&format!("# {l}\n"));
        }
    }
    out.push_str(&format!("n {}\n", s.size()));
    for i in s.elements() {
        let row: Vec<String> = s.row(i).iter().map(usize::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    if let Some(g) = s.generators() {
        let g: Vec<String> = g.iter().map(usize::to_string).collect();
        out.push_str(&format!("generators {}\n", g.join(" ")));
    }
    out
}

/// Parses a `.tgen` file: `degree <d>`, then one transformation per line.
pub fn parse_tgen(src: &str) -> Result<(usize, Vec<Vec<usize>>), FormatError> {
    let mut lines = content_lines(src);
    let (ln, header) = lines
        .next()
        .ok_or_else(|| syntax(1, "missing `degree <d>` line"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 || fields[0] != "degree" {
        return Err(syntax(ln, "expected `degree <d>`"));
    }
    let degree = numbers(ln, &fields[1..])?[0];
    let mut gens = Vec::new();
    for (ln, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let g = numbers(ln, &fields)?;
        if g.len() != degree || g.iter().any(|&q| q >= degree) {
            return Err(syntax(
                ln,
                format!("not a transformation of {degree} points"),
            ));
        }
        gens.push(g);
    }
    if gens.is_empty() {
        return Err(SemigroupError::EmptyGeneratorSet.into());
    }
    Ok((degree, gens))
}

/// Loads either format, chosen by content: a `degree` header means `.tgen`.
pub fn parse_semigroup(src: &str) -> Result<FiniteSemigroup, FormatError> {
    let first = content_lines(src).next().map(|(_, l)| l).unwrap_or("");
    if first.starts_with("degree") {
        let (d, gens) = parse_tgen(src)?;
        Ok(FiniteSemigroup::from_transformations(d, &gens)?)
    } else {
        parse_sgp(src)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn round_trip_corpus() {
        for (name, s) in corpus::semigroups() {
            let text = format_sgp(&s, Some(name));
            assert_eq!(parse_sgp(&text).unwrap(), s, "{name}");
        }
    }

    #[test]
    fn generators_line() {
        let s = parse_sgp("n 2\n0 1\n1 0\ngenerators 1\n").unwrap();
        assert_eq!(s.generators(), Some(&[1][..]));
        assert!(matches!(
            parse_sgp("n 2\n0 1\n1 0\ngenerators 0\n").unwrap_err(),
            FormatError::Semigroup(SemigroupError::NotGenerated(1))
        ));
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(parse_sgp(""), Err(FormatError::Syntax { .. })));
        assert!(matches!(
            parse_sgp("n 2\n0 1\n"),
            Err(FormatError::Syntax { .. })
        ));
        assert!(matches!(
            parse_sgp("n 1\n0\n0\n"),
            Err(FormatError::Syntax { line: 3, .. })
        ));
        assert!(matches!(
            parse_sgp("n 1\nx\n"),
            Err(FormatError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_sgp("n 2\n1 1\n0 0\n"),
            Err(FormatError::Semigroup(SemigroupError::NonAssociative(..)))
        ));
    }

    #[test]
    fn tgen_files() {
        let s = parse_semigroup("# shift\ndegree 3\n1 2 0\n").unwrap();
        assert_eq!(s.size(), 3);
        assert!(parse_tgen("degree 2\n0 2\n").is_err());
        assert!(matches!(
            parse_tgen("degree 2\n"),
            Err(FormatError::Semigroup(SemigroupError::EmptyGeneratorSet))
        ));
    }
}
