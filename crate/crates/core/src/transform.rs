//! Model-to-model mapping from a [`ServiceModel`] to WS-Policy meta-model
//! instances:
//!
//! | model element                  | policy meta-model element          |
//! |--------------------------------|------------------------------------|
//! | NFP declaration                | `VocabularyItem`                   |
//! | semantic annotation            | `VocabularyItem::semantic`         |
//! | NFP type                       | XSD value type of the item         |
//! | constraint                     | one `Policy`                       |
//! | `or` aggregation               | alternatives of that policy        |
//! | `and` aggregation              | assertions of one alternative      |
//! | relational operator            | function name (`double-less-than`) |
//! | literal                        | function literal                   |
//! | `offered` kind                 | extra empty alternative            |

use indexmap::IndexMap;
use thiserror::Error;

use crate::model::{validate_model, ConstraintDecl, ConstraintKind, Diagnostic, ServiceModel};
use crate::policy::{
    Policy, PolicyAlternative, PolicyAssertion, PolicyConstraintsFunction, PolicySubjectRef,
    VocabularyItem, DEFAULT_POLICY_DOMAIN,
};
use crate::types::{check_literal, TypeDiagnostic, TypeLibrary, XsdType};
use crate::vsl::{to_dnf, Rel, RelOp, Value, ValueKind, VslLiteral};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("no function `{op}` for {xsd}: ordering needs xsd:double or xsd:integer")]
pub struct UnsupportedFunction {
    pub op: RelOp,
    pub xsd: XsdType,
}

/// WS-PolicyConstraints function name for an operator over a value type,
/// e.g. `(Ge, Integer)` gives `integer-greater-than-or-equals`.
pub fn function_id(op: RelOp, xsd: XsdType) -> Result<String, UnsupportedFunction> {
    if op.is_ordering() && !xsd.is_ordered() {
        return Err(UnsupportedFunction { op, xsd });
    }
    let word = match op {
        RelOp::Eq => "equals",
        RelOp::Ne => "not-equals",
        RelOp::Lt => "less-than",
        RelOp::Le => "less-than-or-equals",
        RelOp::Gt => "greater-than",
        RelOp::Ge => "greater-than-or-equals",
    };
    Ok(format!("{}-{word}", xsd.local_name()))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LowerError {
    #[error("literal is a {found}, `{item}` holds {expected}")]
    KindMismatch {
        item: String,
        expected: XsdType,
        found: ValueKind,
    },
    #[error("`{0}` carries no unit")]
    UnitlessItem(String),
    #[error(transparent)]
    Unsupported(#[from] UnsupportedFunction),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("{0}")]
    Invalid(Diagnostic),
    #[error("constraint `{constraint}`, NFP `{nfp}`: {source}")]
    Type {
        constraint: String,
        nfp: String,
        source: TypeDiagnostic,
    },
    #[error("constraint `{constraint}`, NFP `{nfp}`: {source}")]
    Lower {
        constraint: String,
        nfp: String,
        source: LowerError,
    },
    #[error("constraint `{constraint}`: NFP `{nfp}` is not in scope")]
    OutOfScope { constraint: String, nfp: String },
}

/// Output of the model-to-model stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolicyArtifacts {
    /// One per constraint, in declaration order.
    pub policies: Vec<Policy>,
    /// One per NFP name and service, in declaration order.
    pub vocabulary: Vec<VocabularyItem>,
    /// Every subject of the model with the ids of its policies.
    pub subject_index: IndexMap<PolicySubjectRef, Vec<String>>,
}

impl PolicyArtifacts {
    pub fn policy(&self, id: &str) -> Option<&Policy> {
        self.policies.iter().find(|p| p.id == id)
    }

    pub fn vocabulary_of_service<'a>(
        &'a self,
        service: &'a str,
    ) -> impl Iterator<Item = &'a VocabularyItem> + 'a {
        self.vocabulary.iter().filter(move |v| v.service == service)
    }

    pub fn policies_of<'a>(&'a self, subject: &PolicySubjectRef) -> Vec<&'a Policy> {
        self.subject_index
            .get(subject)
            .map(|ids| ids.iter().filter_map(|id| self.policy(id)).collect())
            .unwrap_or_default()
    }
}

pub fn transform_model(
    model: &ServiceModel,
    lib: &TypeLibrary,
) -> Result<PolicyArtifacts, TransformError> {
    if let Some(d) = validate_model(model, lib).into_iter().next() {
        return Err(TransformError::Invalid(d));
    }
    let mut policies = Vec::new();
    let mut vocabulary: Vec<VocabularyItem> = Vec::new();
    let mut subject_index = IndexMap::new();

    for (si, service) in model.services.iter().enumerate() {
        for subject in service.subjects(si) {
            let mut scope = Vec::with_capacity(subject.nfps.len());
            for nfp in subject.nfps {
                // validated: the type resolves
                let entry = lib
                    .lookup_type(&nfp.type_name)
                    .expect("validated model has resolvable NFP types");
                let item = VocabularyItem {
                    name: nfp.name.clone(),
                    service: service.name.clone(),
                    nfp_type: entry.name.clone(),
                    xsd_value_type: entry.xsd_value_type,
                    has_unit: entry.has_unit(),
                    semantic: nfp.semantic.clone(),
                    domain: DEFAULT_POLICY_DOMAIN.to_string(),
                };
                if !vocabulary
                    .iter()
                    .any(|v| v.service == item.service && v.name == item.name)
                {
                    vocabulary.push(item.clone());
                }
                scope.push(item);
            }

            let subject_ref = match subject.kind {
                crate::model::SubjectKind::Service => PolicySubjectRef::service(subject.name),
                crate::model::SubjectKind::Endpoint => {
                    PolicySubjectRef::endpoint(subject.service, subject.name)
                }
            };
            let mut ids = Vec::new();
            for decl in subject.constraints {
                for rel in decl.expression.relations() {
                    let nfp = subject
                        .nfp(&rel.nfp)
                        .ok_or_else(|| TransformError::OutOfScope {
                            constraint: decl.name.clone(),
                            nfp: rel.nfp.clone(),
                        })?;
                    let entry = lib.lookup_type(&nfp.type_name).expect("validated");
                    check_literal(entry, &rel.value).map_err(|source| TransformError::Type {
                        constraint: decl.name.clone(),
                        nfp: rel.nfp.clone(),
                        source,
                    })?;
                }
                let policy = lower_constraint(decl, &subject_ref, &scope)?;
                ids.push(policy.id.clone());
                policies.push(policy);
            }
            subject_index.insert(subject_ref, ids);
        }
    }
    Ok(PolicyArtifacts {
        policies,
        vocabulary,
        subject_index,
    })
}

/// Lowers one constraint: each DNF conjunct becomes an alternative whose
/// assertions are the lowered relations; `offered` constraints get one
/// trailing empty alternative.
pub fn lower_constraint(
    decl: &ConstraintDecl,
    subject: &PolicySubjectRef,
    scope: &[VocabularyItem],
) -> Result<Policy, TransformError> {
    let mut alternatives = Vec::new();
    for conjunct in to_dnf(&decl.expression) {
        let mut assertions = Vec::with_capacity(conjunct.len());
        for rel in &conjunct {
            let item = scope.iter().find(|v| v.name == rel.nfp).ok_or_else(|| {
                TransformError::OutOfScope {
                    constraint: decl.name.clone(),
                    nfp: rel.nfp.clone(),
                }
            })?;
            let assertion = lower_relation(rel, item).map_err(|source| TransformError::Lower {
                constraint: decl.name.clone(),
                nfp: rel.nfp.clone(),
                source,
            })?;
            assertions.push(assertion);
        }
        alternatives.push(PolicyAlternative { assertions });
    }
    if decl.kind == ConstraintKind::Offered {
        alternatives.push(PolicyAlternative::default());
    }
    Ok(Policy {
        id: decl.name.clone(),
        subject: subject.clone(),
        kind: decl.kind,
        alternatives,
    })
}

/// One value function, plus a string-equality unit function when the
/// literal is a `(value, "unit")` tuple.
pub fn lower_relation(rel: &Rel, item: &VocabularyItem) -> Result<PolicyAssertion, LowerError> {
    let xsd = item.xsd_value_type;
    if rel.value.kind() != xsd.value_kind() {
        return Err(LowerError::KindMismatch {
            item: item.name.clone(),
            expected: xsd,
            found: rel.value.kind(),
        });
    }
    let mut functions = vec![PolicyConstraintsFunction::new(
        rel.op,
        xsd,
        rel.value.value(),
        &item.name,
        item.value_path(),
    )?];
    if let VslLiteral::Tuple { unit, .. } = &rel.value {
        if !item.has_unit {
            return Err(LowerError::UnitlessItem(item.name.clone()));
        }
        functions.push(PolicyConstraintsFunction::new(
            RelOp::Eq,
            XsdType::String,
            Value::Text(unit.clone()),
            &item.name,
            item.unit_path(),
        )?);
    }
    Ok(PolicyAssertion { functions })
}
