//! Permutation-group text format (`.pgrp`):
//!
//! ```text
//! # comment
//! degree 5
//! (1 2 3)(4 5)
//! (1 2)
//! ```
//!
//! Points are 1-based in text and 0-based in memory. `()` is the identity.

use super::group::PermGroup;
use super::permutation::Permutation;
use super::PermError;

/// Parses one generator in 1-based cycle notation.
pub fn parse_cycles(degree: usize, text: &str) -> Result<Permutation, PermError> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| PermError::Syntax(format!("expected '(' in {text:?}")))?;
        let close = body
            .find(')')
            .ok_or_else(|| PermError::Syntax(format!("unclosed cycle in {text:?}")))?;
        let mut cycle = Vec::new();
        for tok in body[..close].split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let p: usize = tok
                .parse()
                .map_err(|_| PermError::Syntax(format!("bad point {tok:?}")))?;
            if p == 0 || p > degree {
                return Err(PermError::PointOutOfRange { point: p, degree });
            }
            cycle.push(p - 1);
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = body[close + 1..].trim_start();
    }
    Permutation::from_cycles(degree, &cycles)
}

/// Parses a `.pgrp` document into its degree and generator list.
pub fn parse_generators(text: &str) -> Result<(usize, Vec<Permutation>), PermError> {
    let mut degree = None;
    let mut gens = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        match degree {
            None => {
                let n = line
                    .strip_prefix("degree")
                    .map(str::trim)
                    .and_then(|s| s.parse::<usize>().ok())
                    .ok_or_else(|| {
                        PermError::Syntax(format!(
                            "line {}: expected `degree n`, found {line:?}",
                            lineno + 1
                        ))
                    })?;
                if n == 0 {
                    return Err(PermError::ZeroDegree);
                }
                degree = Some(n);
            }
            Some(n) => gens.push(parse_cycles(n, line).map_err(|e| match e {
                PermError::Syntax(msg) => PermError::Syntax(format!("line {}: {msg}", lineno + 1)),
                other => other,
            })?),
        }
    }
    let degree = degree.ok_or_else(|| PermError::Syntax("missing `degree` line".into()))?;
    Ok((degree, gens))
}

pub fn parse_perm_group(text: &str) -> Result<PermGroup, PermError> {
    let (degree, gens) = parse_generators(text)?;
    PermGroup::new(degree, gens)
}

pub fn format_perm_group(g: &PermGroup) -> String {
    let mut out = format!("degree {}\n", g.degree());
    for x in g.generators() {
        out.push_str(&x.to_cycle_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments_and_blank_lines() {
        let g = parse_perm_group("# S4\n\ndegree 4\n(1 2)   # a transposition\n(1 2 3 4)\n").unwrap();
        assert_eq!(g.order_u64(), Some(24));
        assert_eq!(g.generators()[0].apply(0), 1);
    }

    #[test]
    fn identity_and_round_trip() {
        let g = parse_perm_group("degree 3\n()\n(1,2,3)\n").unwrap();
        let again = parse_perm_group(&format_perm_group(&g)).unwrap();
        assert_eq!(g.generators(), again.generators());
    }

    #[test]
    fn rejects_bad_points() {
        assert!(parse_perm_group("degree 3\n(1 4)\n").is_err());
        assert!(parse_perm_group("degree 3\n(0 1)\n").is_err());
        assert!(parse_perm_group("(1 2)\n").is_err());
        assert!(parse_perm_group("degree 3\n(1 2\n").is_err());
    }
}
