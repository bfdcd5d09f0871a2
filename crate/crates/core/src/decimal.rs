use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("`{0}` is not a decimal number")]
pub struct DecimalError(pub String);

/// A finite decimal number that remembers how it was written.
///
/// Equality (`==`) is textual, so `200.00` and `200.0` are different
/// literals; use [`Decimal::cmp_value`] or [`Decimal::value_eq`] for numeric
/// comparison, which is exact (no floating point involved).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Decimal {
    text: String,
}

/// Sign, integer digits without leading zeros, fraction digits without
/// trailing zeros. Zero is always non-negative.
struct Parts<'a> {
    negative: bool,
    int: &'a str,
    frac: &'a str,
}

impl Decimal {
    pub fn parse(text: &str) -> Result<Self, DecimalError> {
        let body = text.strip_prefix('-').unwrap_or(text);
        let (int, frac) = match body.split_once('.') {
            Some((i, f)) => (i, Some(f)),
            None => (body, None),
        };
        let all_digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
        if !all_digits(int) || frac.is_some_and(|f| !all_digits(f)) {
            return Err(DecimalError(text.to_string()));
        }
        Ok(Decimal {
            text: text.to_string(),
        })
    }

    /// Exactly as written.
    pub fn as_str(&self) -> &str {
        &self.text
    }

    pub fn has_fraction(&self) -> bool {
        self.text.contains('.')
    }

    fn parts(&self) -> Parts<'_> {
        let negative = self.text.starts_with('-');
        let body = self.text.trim_start_matches('-');
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        let int = int.trim_start_matches('0');
        let frac = frac.trim_end_matches('0');
        Parts {
            negative: negative && !(int.is_empty() && frac.is_empty()),
            int,
            frac,
        }
    }

    pub fn cmp_value(&self, other: &Decimal) -> Ordering {
        let a = self.parts();
        let b = other.parts();
        match (a.negative, b.negative) {
            (false, true) => Ordering::Greater,
            (true, false) => Ordering::Less,
            (false, false) => cmp_magnitude(&a, &b),
            (true, true) => cmp_magnitude(&b, &a),
        }
    }

    pub fn value_eq(&self, other: &Decimal) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

fn cmp_magnitude(a: &Parts<'_>, b: &Parts<'_>) -> Ordering {
    a.int
        .len()
        .cmp(&b.int.len())
        .then_with(|| a.int.cmp(b.int))
        // digit strings of equal "weight": lexical order of the fractions,
        // where a missing digit behaves like a trailing zero
        .then_with(|| a.frac.cmp(b.frac))
}

impl FromStr for Decimal {
    type Err = DecimalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Decimal::parse(s)
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}
