use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::types::{check_literal, TypeLibrary};

use super::{ServiceModel, Subject};

/// Index path of a service or endpoint inside a model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubjectPath {
    pub service: usize,
    pub endpoint: Option<usize>,
}

/// Index path of a declaration inside a model, used to map diagnostics
/// back to source positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeclPath {
    Model,
    Subject(SubjectPath),
    Nfp(SubjectPath, usize),
    Constraint(SubjectPath, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    NoService,
    DuplicateService,
    DuplicateEndpoint,
    DuplicateNfp,
    UnknownNfpType,
    InvalidSemantic,
    ConflictingNfp,
    UndeclaredNfp,
    DuplicateConstraint,
    TypeError,
}

impl Rule {
    pub fn describe(self) -> &'static str {
        match self {
            Rule::NoService => "at least one service required",
            Rule::DuplicateService => "duplicate service name",
            Rule::DuplicateEndpoint => "duplicate endpoint name",
            Rule::DuplicateNfp => "duplicate NFP name",
            Rule::UnknownNfpType => "unknown NFP type",
            Rule::InvalidSemantic => "invalid semantic annotation",
            Rule::ConflictingNfp => "conflicting NFP declaration",
            Rule::UndeclaredNfp => "NFP not declared on subject",
            Rule::DuplicateConstraint => "duplicate constraint name",
            Rule::TypeError => "type error",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub path: DeclPath,
    /// `service X`, `endpoint X/Y` or `model`.
    pub subject: String,
    pub rule: Rule,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.subject, self.message)
    }
}

/// `scheme:rest` with an RFC 3986 scheme, a non-empty remainder and no
/// whitespace.
pub fn is_valid_uri(text: &str) -> bool {
    let Some((scheme, rest)) = text.split_once(':') else {
        return false;
    };
    let mut chars = scheme.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'))
        && !rest.is_empty()
        && !text.chars().any(char::is_whitespace)
}

/// Checks the cross-reference rules of a model. Returns diagnostics in
/// declaration order; empty means the model is well-formed.
pub fn validate_model(model: &ServiceModel, lib: &TypeLibrary) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut diag = |path, subject: String, rule: Rule, detail: String| {
        let message = if detail.is_empty() {
            rule.describe().to_string()
        } else {
            format!("{}: {detail}", rule.describe())
        };
        out.push(Diagnostic {
            path,
            subject,
            rule,
            message,
        });
    };

    if model.services.is_empty() {
        diag(
            DeclPath::Model,
            "model".into(),
            Rule::NoService,
            String::new(),
        );
    }

    let mut service_names = HashSet::new();
    let mut constraint_names = HashSet::new();
    for (si, service) in model.services.iter().enumerate() {
        let subjects = service.subjects(si);
        if !service_names.insert(service.name.as_str()) {
            diag(
                DeclPath::Subject(subjects[0].path),
                subjects[0].label(),
                Rule::DuplicateService,
                format!("`{}`", service.name),
            );
        }
        // first declaration of each NFP name across the service scope
        let mut scope: HashMap<&str, &super::NfpDecl> = HashMap::new();
        let mut endpoint_names = HashSet::new();
        for subject in &subjects {
            let label = subject.label();
            if subject.kind == super::SubjectKind::Endpoint && !endpoint_names.insert(subject.name)
            {
                diag(
                    DeclPath::Subject(subject.path),
                    label.clone(),
                    Rule::DuplicateEndpoint,
                    format!("`{}`", subject.name),
                );
            }
            let mut local = HashSet::new();
            for (ni, nfp) in subject.nfps.iter().enumerate() {
                let path = DeclPath::Nfp(subject.path, ni);
                if !local.insert(nfp.name.as_str()) {
                    diag(
                        path,
                        label.clone(),
                        Rule::DuplicateNfp,
                        format!("`{}`", nfp.name),
                    );
                    continue;
                }
                if lib.lookup_type(&nfp.type_name).is_err() {
                    diag(
                        path,
                        label.clone(),
                        Rule::UnknownNfpType,
                        format!("`{}` (NFP `{}`)", nfp.type_name, nfp.name),
                    );
                }
                if let Some(sem) = &nfp.semantic {
                    let uris = [
                        ("modelReference", Some(&sem.model_reference)),
                        ("loweringSchema", sem.lowering_schema.as_ref()),
                        ("liftingSchema", sem.lifting_schema.as_ref()),
                    ];
                    for (attr, uri) in uris {
                        if let Some(uri) = uri.filter(|u| !is_valid_uri(u)) {
                            diag(
                                path,
                                label.clone(),
                                Rule::InvalidSemantic,
                                format!("{attr} of `{}` is not a URI: {uri:?}", nfp.name),
                            );
                        }
                    }
                }
                match scope.get(nfp.name.as_str()) {
                    Some(first)
                        if first.type_name != nfp.type_name || first.semantic != nfp.semantic =>
                    {
                        diag(
                            path,
                            label.clone(),
                            Rule::ConflictingNfp,
                            format!(
                                "`{}` is declared elsewhere in service `{}` with a different type or annotation",
                                nfp.name, service.name
                            ),
                        );
                    }
                    Some(_) => {}
                    None => {
                        scope.insert(&nfp.name, nfp);
                    }
                }
            }
            for (ci, c) in subject.constraints.iter().enumerate() {
                let path = DeclPath::Constraint(subject.path, ci);
                if !constraint_names.insert(c.name.as_str()) {
                    diag(
                        path,
                        label.clone(),
                        Rule::DuplicateConstraint,
                        format!("`{}`", c.name),
                    );
                }
                let mut reported = HashSet::new();
                for rel in c.expression.relations() {
                    if subject.nfp(&rel.nfp).is_none() && reported.insert(rel.nfp.as_str()) {
                        diag(
                            path,
                            label.clone(),
                            Rule::UndeclaredNfp,
                            format!("`{}` in constraint `{}`", rel.nfp, c.name),
                        );
                    }
                }
            }
        }
    }
    out
}

/// Checks every constraint literal (and operator) against the declared
/// NFP type. Relations over undeclared NFPs or unknown types are skipped;
/// [`validate_model`] reports those.
pub fn type_check(model: &ServiceModel, lib: &TypeLibrary) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for subject in model.subjects() {
        check_subject(&subject, lib, &mut out);
    }
    out
}

fn check_subject(subject: &Subject<'_>, lib: &TypeLibrary, out: &mut Vec<Diagnostic>) {
    for (ci, c) in subject.constraints.iter().enumerate() {
        for rel in c.expression.relations() {
            let Some(entry) = subject
                .nfp(&rel.nfp)
                .and_then(|n| lib.lookup_type(&n.type_name).ok())
            else {
                continue;
            };
            let problem = match check_literal(entry, &rel.value) {
                Err(e) => Some(e.to_string()),
                Ok(()) if rel.op.is_ordering() && !entry.xsd_value_type.is_ordered() => {
                    Some(format!(
                        "{}: operator `{}` needs an ordered type, {} is {}",
                        entry.name, rel.op, entry.name, entry.xsd_value_type
                    ))
                }
                Ok(()) => None,
            };
            if let Some(detail) = problem {
                out.push(Diagnostic {
                    path: DeclPath::Constraint(subject.path, ci),
                    subject: subject.label(),
                    rule: Rule::TypeError,
                    message: format!("constraint `{}`, NFP `{}`: {detail}", c.name, rel.nfp),
                });
            }
        }
    }
}
