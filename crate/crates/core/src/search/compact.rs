//! Compact cycle notation.
//!
//! `v →m w` is one edge of length `m` ending at the stated vertex `w`;
//! `v →^t m w` is `t` consecutive edges of length `m`. `->` works as an
//! arrow, and the TeX macros `\nxo{m}`, `\nxm{t}{m}` and `\nxt` are accepted.

use super::{Result, SearchError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Token {
    Num(i64),
    Arrow,
    Caret,
}

fn expand_macros(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut rest = s;
    while let Some(i) = rest.find('\\') {
        out.push_str(&rest[..i]);
        rest = &rest[i..];
        let args = |r: &str, count: usize| -> Option<(Vec<String>, usize)> {
            let mut args = Vec::new();
            let mut at = 0;
            for _ in 0..count {
                let open = r[at..].find('{')? + at;
                let close = r[open..].find('}')? + open;
                args.push(r[open + 1..close].trim().to_string());
                at = close + 1;
            }
            Some((args, at))
        };
        if let Some(r) = rest.strip_prefix("\\nxo") {
            if let Some((a, used)) = args(r, 1) {
                out.push_str(&format!(" → {} ", a[0]));
                rest = &r[used..];
                continue;
            }
        } else if let Some(r) = rest.strip_prefix("\\nxm") {
            if let Some((a, used)) = args(r, 2) {
                out.push_str(&format!(" →^{} {} ", a[0], a[1]));
                rest = &r[used..];
                continue;
            }
        } else if let Some(r) = rest.strip_prefix("\\nxt") {
            out.push_str(" → ");
            rest = r;
            continue;
        }
        out.push('\\');
        rest = &rest[1..];
    }
    out.push_str(rest);
    out
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let s = expand_macros(s).replace("->", "→");
    let mut tokens = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            '→' => {
                tokens.push(Token::Arrow);
                chars.next();
            }
            '^' => {
                tokens.push(Token::Caret);
                chars.next();
            }
            '-' | '0'..='9' => {
                let mut lit = String::new();
                lit.push(c);
                chars.next();
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    lit.push(d);
                    chars.next();
                }
                let value = lit.parse().map_err(|_| SearchError::Parse {
                    position: tokens.len(),
                    message: format!("bad number {lit:?}"),
                })?;
                tokens.push(Token::Num(value));
            }
            c if c.is_whitespace() || c == '$' || c == ',' || c == '{' || c == '}' => {
                chars.next();
            }
            other => {
                return Err(SearchError::Parse {
                    position: tokens.len(),
                    message: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    Ok(tokens)
}

/// Expand compact notation into signed steps, checking every stated vertex
/// against the running position mod `modulus`. The walk starts at the first
/// stated vertex.
pub fn parse_compact(notation: &str, modulus: u32) -> Result<Vec<i64>> {
    let tokens = tokenize(notation)?;
    let m = modulus as i64;
    let err = |position: usize, message: &str| SearchError::Parse {
        position,
        message: message.to_string(),
    };
    let num = |i: usize| match tokens.get(i) {
        Some(Token::Num(v)) => Ok(*v),
        _ => Err(err(i, "expected a number")),
    };
    let mut pos = num(0)?;
    let mut steps = Vec::new();
    let mut i = 1;
    let mut group = 0;
    while i < tokens.len() {
        if tokens[i] != Token::Arrow {
            return Err(err(i, "expected an arrow"));
        }
        i += 1;
        let mut times = 1;
        if tokens.get(i) == Some(&Token::Caret) {
            times = num(i + 1)?;
            if times < 1 {
                return Err(err(i + 1, "repeat count must be positive"));
            }
            i += 2;
        }
        let len = num(i)?;
        let stated = num(i + 1)?;
        i += 2;
        steps.extend(std::iter::repeat_n(len, times as usize));
        pos += len * times;
        group += 1;
        if (pos - stated).rem_euclid(m) != 0 {
            return Err(SearchError::VertexMismatch {
                group,
                stated,
                actual: pos.rem_euclid(m),
            });
        }
    }
    if steps.is_empty() {
        return Err(err(tokens.len(), "no edges"));
    }
    Ok(steps)
}

/// Forward steps of a vertex sequence `v0 → v1 → ... → v0`; each step is
/// the residue in `[1, M)`. The closing vertex may be omitted.
pub fn parse_vertex_cycle(notation: &str, modulus: u32) -> Result<Vec<i64>> {
    let tokens = tokenize(notation)?;
    let mut vertices = Vec::new();
    for (i, t) in tokens.iter().enumerate() {
        match (i % 2, t) {
            (0, Token::Num(v)) => vertices.push(*v),
            (1, Token::Arrow) => {}
            _ => {
                return Err(SearchError::Parse {
                    position: i,
                    message: "expected alternating vertices and arrows".into(),
                })
            }
        }
    }
    if vertices.len() > 1 && vertices.first() == vertices.last() {
        vertices.pop();
    }
    if vertices.len() < 3 {
        return Err(SearchError::Parse {
            position: tokens.len(),
            message: "a cycle needs at least 3 vertices".into(),
        });
    }
    let m = modulus as i64;
    Ok((0..vertices.len())
        .map(|i| (vertices[(i + 1) % vertices.len()] - vertices[i]).rem_euclid(m))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_and_repeated_groups() {
        assert_eq!(parse_compact("0 →3 3 →^2 1 5", 10).unwrap(), vec![3, 1, 1]);
        assert_eq!(
            parse_compact("0 -> 3 3 -> ^2 1 5", 10).unwrap(),
            vec![3, 1, 1]
        );
        assert_eq!(
            parse_compact(r"$0\nxo{3} 3 \nxm{2}{1} 5$", 10).unwrap(),
            vec![3, 1, 1]
        );
    }

    #[test]
    fn vertex_mismatch() {
        assert_eq!(
            parse_compact("0 →1 1 →1 3", 10),
            Err(SearchError::VertexMismatch {
                group: 2,
                stated: 3,
                actual: 2
            })
        );
    }

    #[test]
    fn malformed() {
        assert!(matches!(
            parse_compact("0 →", 10),
            Err(SearchError::Parse { .. })
        ));
        assert!(matches!(
            parse_compact("0 3", 10),
            Err(SearchError::Parse { .. })
        ));
        assert!(matches!(
            parse_compact("0 → x", 10),
            Err(SearchError::Parse { .. })
        ));
        assert!(matches!(
            parse_compact("0", 10),
            Err(SearchError::Parse { .. })
        ));
    }

    #[test]
    fn vertex_sequence() {
        assert_eq!(parse_vertex_cycle("0→4→5→0", 10).unwrap(), vec![4, 1, 5]);
        assert_eq!(
            parse_vertex_cycle(r"0\nxt 4\nxt 5", 10).unwrap(),
            vec![4, 1, 5]
        );
        assert!(parse_vertex_cycle("0→4", 10).is_err());
    }
}
