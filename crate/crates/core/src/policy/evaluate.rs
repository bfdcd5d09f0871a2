use thiserror::Error;

use crate::types::XsdType;
use crate::vsl::{compare, EvalError, Value};

use super::{Policy, PolicyConstraintsFunction, Valuation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolicyEvalError {
    #[error("missing value for `{0}`")]
    MissingValue(String),
    #[error("`{attribute_id}`: {detail}")]
    TypeMismatch {
        attribute_id: String,
        detail: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EvalMode {
    /// Empty alternatives hold vacuously.
    #[default]
    Standard,
    /// Empty alternatives are ignored, so only real assertions can satisfy
    /// the policy.
    SkipEmptyAlternatives,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternativeFailure {
    pub alternative: usize,
    pub function: PolicyConstraintsFunction,
    pub actual: Value,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatisfactionReport {
    pub satisfied: bool,
    /// Index of the first alternative that holds.
    pub satisfied_by: Option<usize>,
    /// When unsatisfied: the first failing function of each evaluated
    /// alternative.
    pub failures: Vec<AlternativeFailure>,
}

/// Decides one function against a valuation.
pub fn evaluate_function(
    f: &PolicyConstraintsFunction,
    valuation: &Valuation,
) -> Result<(bool, Value), PolicyEvalError> {
    let actual = valuation
        .get(&f.attribute_id)
        .ok_or_else(|| PolicyEvalError::MissingValue(f.attribute_id.clone()))?;
    let mismatch = |detail: String| PolicyEvalError::TypeMismatch {
        attribute_id: f.attribute_id.clone(),
        detail,
    };
    if actual.kind() != f.literal_xsd_type.value_kind() {
        return Err(mismatch(format!(
            "expected {} value, found {}",
            f.literal_xsd_type,
            actual.kind()
        )));
    }
    if let (XsdType::Integer, Value::Number(d)) = (f.literal_xsd_type, actual) {
        if d.has_fraction() {
            return Err(mismatch(format!("expected xsd:integer value, found `{d}`")));
        }
    }
    let holds =
        compare(f.op, actual, &f.literal).map_err(|e: EvalError| mismatch(e.to_string()))?;
    Ok((holds, actual.clone()))
}

pub fn evaluate(
    policy: &Policy,
    valuation: &Valuation,
) -> Result<SatisfactionReport, PolicyEvalError> {
    evaluate_with(policy, valuation, EvalMode::Standard)
}

/// A policy holds when at least one alternative has every function true.
/// All functions are evaluated, so a missing or ill-typed value is an error
/// even when another alternative already holds.
pub fn evaluate_with(
    policy: &Policy,
    valuation: &Valuation,
    mode: EvalMode,
) -> Result<SatisfactionReport, PolicyEvalError> {
    let mut satisfied_by = None;
    let mut failures = Vec::new();
    for (i, alt) in policy.alternatives.iter().enumerate() {
        if alt.is_empty() && mode == EvalMode::SkipEmptyAlternatives {
            continue;
        }
        let mut first_failure = None;
        for f in alt.functions() {
            let (holds, actual) = evaluate_function(f, valuation)?;
            if !holds && first_failure.is_none() {
                first_failure = Some(AlternativeFailure {
                    alternative: i,
                    function: f.clone(),
                    actual,
                });
            }
        }
        match first_failure {
            None if satisfied_by.is_none() => satisfied_by = Some(i),
            None => {}
            Some(fail) => failures.push(fail),
        }
    }
    let satisfied = satisfied_by.is_some();
    if satisfied {
        failures.clear();
    }
    Ok(SatisfactionReport {
        satisfied,
        satisfied_by,
        failures,
    })
}
