use thiserror::Error;

use super::ast::{Rel, RelOp, Value, ValueKind, VslLiteral};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("type mismatch: expected {expected} value, found {found}")]
    TypeMismatch {
        expected: ValueKind,
        found: ValueKind,
    },
    #[error("operator `{op}` is not defined on {kind} values")]
    OrderingUnsupported { op: RelOp, kind: ValueKind },
}

/// Decides `actual OP expected`. Numbers compare exactly as decimals, text
/// by code points; ordering operators need numbers.
pub fn compare(op: RelOp, actual: &Value, expected: &Value) -> Result<bool, EvalError> {
    if actual.kind() != expected.kind() {
        return Err(EvalError::TypeMismatch {
            expected: expected.kind(),
            found: actual.kind(),
        });
    }
    match (actual, expected) {
        (Value::Number(a), Value::Number(b)) => Ok(op.holds(a.cmp_value(b))),
        (a, b) => {
            if op.is_ordering() {
                return Err(EvalError::OrderingUnsupported { op, kind: a.kind() });
            }
            let eq = a == b;
            Ok(if op == RelOp::Eq { eq } else { !eq })
        }
    }
}

/// Evaluates one relation against the NFP's current value and unit.
/// A tuple literal additionally requires the unit to match exactly.
pub fn eval_rel(rel: &Rel, value: &Value, unit: Option<&str>) -> Result<bool, EvalError> {
    let holds = compare(rel.op, value, &rel.value.value())?;
    Ok(match &rel.value {
        VslLiteral::Tuple { unit: want, .. } => holds && unit == Some(want.as_str()),
        _ => holds,
    })
}
