//! WS-Policy meta-model: policies made of alternatives of assertions, each
//! assertion a group of WS-PolicyConstraints functions over vocabulary
//! items. Includes normalization and satisfaction checking.

mod evaluate;
mod normalize;
mod valuation;

use std::fmt;

pub use evaluate::{
    evaluate, evaluate_function, evaluate_with, AlternativeFailure, EvalMode, PolicyEvalError,
    SatisfactionReport,
};
pub use normalize::normalize;
pub use valuation::Valuation;

use crate::model::{ConstraintKind, SemanticAnnotation, SubjectKind};
use crate::transform::{function_id, UnsupportedFunction};
use crate::types::XsdType;
use crate::vsl::{RelOp, Value};

pub const DEFAULT_POLICY_DOMAIN: &str = "user-defined";

/// The WSDL element a policy is attached to.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolicySubjectRef {
    pub kind: SubjectKind,
    /// Owning service; equal to `name` for service subjects.
    pub service: String,
    pub name: String,
}

impl PolicySubjectRef {
    pub fn service(name: &str) -> Self {
        PolicySubjectRef {
            kind: SubjectKind::Service,
            service: name.to_string(),
            name: name.to_string(),
        }
    }

    pub fn endpoint(service: &str, name: &str) -> Self {
        PolicySubjectRef {
            kind: SubjectKind::Endpoint,
            service: service.to_string(),
            name: name.to_string(),
        }
    }
}

impl fmt::Display for PolicySubjectRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SubjectKind::Service => write!(f, "service {}", self.name),
            SubjectKind::Endpoint => write!(f, "endpoint {}/{}", self.service, self.name),
        }
    }
}

/// A named, typed aspect that constraint functions refer to (one per NFP).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VocabularyItem {
    pub name: String,
    /// Service whose vocabulary this item belongs to.
    pub service: String,
    pub nfp_type: String,
    pub xsd_value_type: XsdType,
    pub has_unit: bool,
    pub semantic: Option<SemanticAnnotation>,
    pub domain: String,
}

impl VocabularyItem {
    pub fn value_element(&self) -> String {
        format!("{}Value", self.name)
    }

    pub fn unit_element(&self) -> String {
        format!("{}Unit", self.name)
    }

    /// `Name/NameValue`
    pub fn value_path(&self) -> String {
        format!("{}/{}", self.name, self.value_element())
    }

    /// `Name/NameUnit`
    pub fn unit_path(&self) -> String {
        format!("{}/{}", self.name, self.unit_element())
    }
}

/// One XACML-style predicate: `attribute OP literal`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolicyConstraintsFunction {
    /// Function name, e.g. `double-less-than`.
    pub operator: String,
    pub op: RelOp,
    /// The literal as written in the constraint.
    pub literal: Value,
    pub literal_xsd_type: XsdType,
    pub vocabulary_item: String,
    pub attribute_id: String,
}

impl PolicyConstraintsFunction {
    pub fn new(
        op: RelOp,
        xsd: XsdType,
        literal: Value,
        vocabulary_item: &str,
        attribute_id: String,
    ) -> Result<Self, UnsupportedFunction> {
        Ok(PolicyConstraintsFunction {
            operator: function_id(op, xsd)?,
            op,
            literal,
            literal_xsd_type: xsd,
            vocabulary_item: vocabulary_item.to_string(),
            attribute_id,
        })
    }

    pub fn literal_text(&self) -> &str {
        self.literal.lexical()
    }
}

impl fmt::Display for PolicyConstraintsFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} on {} with {}",
            self.operator, self.attribute_id, self.literal
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolicyAssertion {
    pub functions: Vec<PolicyConstraintsFunction>,
}

/// A set of assertions that must all hold. Empty means "no requirement".
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct PolicyAlternative {
    pub assertions: Vec<PolicyAssertion>,
}

impl PolicyAlternative {
    pub fn is_empty(&self) -> bool {
        self.assertions.is_empty()
    }

    pub fn functions(&self) -> impl Iterator<Item = &PolicyConstraintsFunction> {
        self.assertions.iter().flat_map(|a| a.functions.iter())
    }
}

/// A policy in normal form: exactly one of `alternatives` must hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Policy {
    pub id: String,
    pub subject: PolicySubjectRef,
    pub kind: ConstraintKind,
    pub alternatives: Vec<PolicyAlternative>,
}

impl Policy {
    pub fn functions(&self) -> impl Iterator<Item = &PolicyConstraintsFunction> {
        self.alternatives.iter().flat_map(|a| a.functions())
    }
}

/// Names of the vocabulary items a policy constrains, in first-use order.
pub fn vocabulary_of(policy: &Policy) -> Vec<&str> {
    let mut out: Vec<&str> = Vec::new();
    for f in policy.functions() {
        if !out.contains(&f.vocabulary_item.as_str()) {
            out.push(&f.vocabulary_item);
        }
    }
    out
}
