use std::collections::BTreeMap;

use crate::error::{ParseError, Pos};
use crate::lexer::{tokenize, Tok};
use crate::vsl::Value;

/// Snapshot of vocabulary item values, keyed by attribute-id path such as
/// `Price/PriceValue`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Valuation {
    entries: BTreeMap<String, Value>,
}

impl Valuation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, path: impl Into<String>, value: Value) -> Option<Value> {
        self.entries.insert(path.into(), value)
    }

    pub fn get(&self, path: &str) -> Option<&Value> {
        self.entries.get(path)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Value)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Reads `path = literal` lines; literals are numbers, quoted strings,
    /// `true` or `false`. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut out = Valuation::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = strip_comment(raw);
            if line.trim().is_empty() {
                continue;
            }
            let Some(eq) = line.find('=') else {
                return Err(ParseError::new(
                    Pos::new(line_no, 1),
                    "expected `attribute/path = literal`",
                ));
            };
            let path = line[..eq].trim();
            let path_col = line[..eq].len() - line[..eq].trim_start().len() + 1;
            if !is_path(path) {
                return Err(ParseError::new(
                    Pos::new(line_no, path_col),
                    format!("invalid attribute path `{path}`"),
                ));
            }
            let value = parse_value(&line[eq + 1..], line_no, eq + 2)?;
            if out.insert(path, value).is_some() {
                return Err(ParseError::new(
                    Pos::new(line_no, path_col),
                    format!("duplicate value for `{path}`"),
                ));
            }
        }
        Ok(out)
    }
}

impl FromIterator<(String, Value)> for Valuation {
    fn from_iter<T: IntoIterator<Item = (String, Value)>>(iter: T) -> Self {
        Valuation {
            entries: iter.into_iter().collect(),
        }
    }
}

// a `#` inside a quoted string is not a comment
fn strip_comment(line: &str) -> &str {
    let mut in_str = false;
    let mut escaped = false;
    for (i, c) in line.char_indices() {
        match c {
            _ if escaped => escaped = false,
            '\\' if in_str => escaped = true,
            '"' => in_str = !in_str,
            '#' if !in_str => return &line[..i],
            _ => {}
        }
    }
    line
}

fn is_path(path: &str) -> bool {
    !path.is_empty()
        && path.split('/').all(|seg| {
            let mut cs = seg.chars();
            cs.next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
        })
}

fn parse_value(text: &str, line: usize, col_offset: usize) -> Result<Value, ParseError> {
    let shift = |p: Pos| Pos::new(line, p.column + col_offset - 1);
    let toks = tokenize(text).map_err(|e| ParseError::new(shift(e.pos), e.message))?;
    let value = match toks.first().map(|t| &t.tok) {
        Some(Tok::Number(n)) => {
            Value::Number(n.parse().map_err(|e: crate::decimal::DecimalError| {
                ParseError::new(shift(toks[0].pos), e.to_string())
            })?)
        }
        Some(Tok::Str(s)) => Value::Text(s.clone()),
        Some(Tok::Ident(w)) if w == "true" => Value::Bool(true),
        Some(Tok::Ident(w)) if w == "false" => Value::Bool(false),
        _ => {
            return Err(ParseError::new(
                Pos::new(line, col_offset),
                "expected a number, string, true or false",
            ))
        }
    };
    if toks.len() != 2 {
        return Err(ParseError::new(
            shift(toks[1].pos),
            "unexpected text after value",
        ));
    }
    Ok(value)
}
