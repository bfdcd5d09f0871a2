use std::cmp::Ordering;
use std::fmt;

use crate::decimal::Decimal;

/// Relational operator of a constraint atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl RelOp {
    pub const ALL: [RelOp; 6] = [
        RelOp::Eq,
        RelOp::Ne,
        RelOp::Lt,
        RelOp::Le,
        RelOp::Gt,
        RelOp::Ge,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            RelOp::Eq => "==",
            RelOp::Ne => "!=",
            RelOp::Lt => "<",
            RelOp::Le => "<=",
            RelOp::Gt => ">",
            RelOp::Ge => ">=",
        }
    }

    /// True for the four operators that need an ordered value type.
    pub fn is_ordering(self) -> bool {
        !matches!(self, RelOp::Eq | RelOp::Ne)
    }

    /// Whether `lhs OP rhs` holds given `lhs.cmp(rhs)`.
    pub fn holds(self, ord: Ordering) -> bool {
        match self {
            RelOp::Eq => ord == Ordering::Equal,
            RelOp::Ne => ord != Ordering::Equal,
            RelOp::Lt => ord == Ordering::Less,
            RelOp::Le => ord != Ordering::Greater,
            RelOp::Gt => ord == Ordering::Greater,
            RelOp::Ge => ord != Ordering::Less,
        }
    }
}

impl fmt::Display for RelOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Literal on the right-hand side of a relation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum VslLiteral {
    Number(Decimal),
    Text(String),
    Bool(bool),
    /// A measured value with its unit, written `(value, "unit")`.
    Tuple {
        value: Decimal,
        unit: String,
    },
}

impl VslLiteral {
    pub fn kind(&self) -> ValueKind {
        match self {
            VslLiteral::Number(_) | VslLiteral::Tuple { .. } => ValueKind::Number,
            VslLiteral::Text(_) => ValueKind::Text,
            VslLiteral::Bool(_) => ValueKind::Bool,
        }
    }

    /// The compared value, without its unit.
    pub fn value(&self) -> Value {
        match self {
            VslLiteral::Number(d) | VslLiteral::Tuple { value: d, .. } => Value::Number(d.clone()),
            VslLiteral::Text(s) => Value::Text(s.clone()),
            VslLiteral::Bool(b) => Value::Bool(*b),
        }
    }

    pub fn unit(&self) -> Option<&str> {
        match self {
            VslLiteral::Tuple { unit, .. } => Some(unit),
            _ => None,
        }
    }
}

/// Kind of a scalar value, independent of its XSD refinement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ValueKind {
    Number,
    Text,
    Bool,
}

impl fmt::Display for ValueKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ValueKind::Number => "number",
            ValueKind::Text => "string",
            ValueKind::Bool => "boolean",
        })
    }
}

/// A typed scalar: the value of a vocabulary item part at evaluation time,
/// or the literal side of a constraint function.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Value {
    Number(Decimal),
    Text(String),
    Bool(bool),
}

impl Value {
    pub fn kind(&self) -> ValueKind {
        match self {
            Value::Number(_) => ValueKind::Number,
            Value::Text(_) => ValueKind::Text,
            Value::Bool(_) => ValueKind::Bool,
        }
    }

    /// Lexical form used in emitted documents.
    pub fn lexical(&self) -> &str {
        match self {
            Value::Number(d) => d.as_str(),
            Value::Text(s) => s,
            Value::Bool(true) => "true",
            Value::Bool(false) => "false",
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Text(s) => write!(f, "{}", crate::lexer::quote(s)),
            other => f.write_str(other.lexical()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rel {
    pub nfp: String,
    pub op: RelOp,
    pub value: VslLiteral,
}

impl Rel {
    pub fn new(nfp: impl Into<String>, op: RelOp, value: VslLiteral) -> Self {
        Rel {
            nfp: nfp.into(),
            op,
            value,
        }
    }
}

/// Constraint expression: and/or aggregation over relational atoms.
///
/// Canonical trees have at least two children under every `Or`/`And` and
/// never nest a node directly under a node of the same kind; the smart
/// constructors [`VslExpression::or`] and [`VslExpression::and`] maintain
/// that shape.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum VslExpression {
    Or(Vec<VslExpression>),
    And(Vec<VslExpression>),
    Rel(Rel),
}

impl VslExpression {
    pub fn or(children: impl IntoIterator<Item = VslExpression>) -> Self {
        Self::aggregate(children, true)
    }

    pub fn and(children: impl IntoIterator<Item = VslExpression>) -> Self {
        Self::aggregate(children, false)
    }

    fn aggregate(children: impl IntoIterator<Item = VslExpression>, is_or: bool) -> Self {
        let mut flat = Vec::new();
        for child in children {
            match child {
                VslExpression::Or(inner) if is_or => flat.extend(inner),
                VslExpression::And(inner) if !is_or => flat.extend(inner),
                other => flat.push(other),
            }
        }
        assert!(!flat.is_empty(), "aggregation needs at least one child");
        if flat.len() == 1 {
            flat.pop().unwrap()
        } else if is_or {
            VslExpression::Or(flat)
        } else {
            VslExpression::And(flat)
        }
    }

    pub fn is_canonical(&self) -> bool {
        match self {
            VslExpression::Rel(_) => true,
            VslExpression::Or(cs) => {
                cs.len() >= 2
                    && cs
                        .iter()
                        .all(|c| !matches!(c, VslExpression::Or(_)) && c.is_canonical())
            }
            VslExpression::And(cs) => {
                cs.len() >= 2
                    && cs
                        .iter()
                        .all(|c| !matches!(c, VslExpression::And(_)) && c.is_canonical())
            }
        }
    }

    /// Leaves in left-to-right order.
    pub fn relations(&self) -> Vec<&Rel> {
        let mut out = Vec::new();
        self.collect_relations(&mut out);
        out
    }

    fn collect_relations<'a>(&'a self, out: &mut Vec<&'a Rel>) {
        match self {
            VslExpression::Rel(r) => out.push(r),
            VslExpression::Or(cs) | VslExpression::And(cs) => {
                cs.iter().for_each(|c| c.collect_relations(out))
            }
        }
    }

    /// Evaluates the tree with `leaf` deciding each relation. Every leaf is
    /// visited (no short-circuit), so the first error is the first failing
    /// leaf in source order.
    pub fn eval_with<E>(&self, leaf: &mut impl FnMut(&Rel) -> Result<bool, E>) -> Result<bool, E> {
        match self {
            VslExpression::Rel(r) => leaf(r),
            VslExpression::Or(cs) => {
                let mut any = false;
                for c in cs {
                    any |= c.eval_with(leaf)?;
                }
                Ok(any)
            }
            VslExpression::And(cs) => {
                let mut all = true;
                for c in cs {
                    all &= c.eval_with(leaf)?;
                }
                Ok(all)
            }
        }
    }
}

impl From<Rel> for VslExpression {
    fn from(r: Rel) -> Self {
        VslExpression::Rel(r)
    }
}

impl fmt::Display for VslExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::print_vsl(self))
    }
}
