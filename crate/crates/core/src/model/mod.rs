//! Input model: services and endpoints with typed NFP declarations and the
//! constraints over them, as read from the textual model format.

mod parse;
mod print;
mod validate;

use std::fmt;

pub use parse::{parse_model, parse_model_with};
pub use print::print_model;
pub use validate::{
    is_valid_uri, type_check, validate_model, DeclPath, Diagnostic, Rule, SubjectPath,
};

use crate::vsl::VslExpression;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ServiceModel {
    pub services: Vec<ServiceDecl>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ServiceDecl {
    pub name: String,
    pub interface: Option<String>,
    pub nfps: Vec<NfpDecl>,
    pub constraints: Vec<ConstraintDecl>,
    pub endpoints: Vec<EndpointDecl>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndpointDecl {
    pub name: String,
    pub binding: Option<String>,
    pub nfps: Vec<NfpDecl>,
    pub constraints: Vec<ConstraintDecl>,
}

/// A property declaration. With `semantic` set it is a semantically
/// annotated NFP.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NfpDecl {
    pub name: String,
    pub type_name: String,
    pub semantic: Option<SemanticAnnotation>,
}

/// SAWSDL annotation attached to an NFP.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemanticAnnotation {
    pub model_reference: String,
    pub lowering_schema: Option<String>,
    pub lifting_schema: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstraintKind {
    Required,
    Offered,
    /// Accepted for completeness; lowered exactly like `Required`.
    Contract,
}

impl ConstraintKind {
    pub fn keyword(self) -> &'static str {
        match self {
            ConstraintKind::Required => "required",
            ConstraintKind::Offered => "offered",
            ConstraintKind::Contract => "contract",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Self> {
        match word {
            "required" => Some(ConstraintKind::Required),
            "offered" => Some(ConstraintKind::Offered),
            "contract" => Some(ConstraintKind::Contract),
            _ => None,
        }
    }
}

impl fmt::Display for ConstraintKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintDecl {
    pub kind: ConstraintKind,
    pub name: String,
    pub expression: VslExpression,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubjectKind {
    Service,
    Endpoint,
}

impl fmt::Display for SubjectKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubjectKind::Service => "service",
            SubjectKind::Endpoint => "endpoint",
        })
    }
}

/// Borrowed view of a policy subject: a service or one of its endpoints.
#[derive(Debug, Clone, Copy)]
pub struct Subject<'a> {
    pub kind: SubjectKind,
    pub name: &'a str,
    pub service: &'a str,
    pub path: SubjectPath,
    pub nfps: &'a [NfpDecl],
    pub constraints: &'a [ConstraintDecl],
}

impl Subject<'_> {
    pub fn nfp(&self, name: &str) -> Option<&NfpDecl> {
        self.nfps.iter().find(|n| n.name == name)
    }

    pub fn label(&self) -> String {
        match self.kind {
            SubjectKind::Service => format!("service {}", self.name),
            SubjectKind::Endpoint => format!("endpoint {}/{}", self.service, self.name),
        }
    }
}

impl ServiceDecl {
    /// The service itself followed by its endpoints, in declaration order.
    pub fn subjects(&self, index: usize) -> Vec<Subject<'_>> {
        let mut out = vec![Subject {
            kind: SubjectKind::Service,
            name: &self.name,
            service: &self.name,
            path: SubjectPath {
                service: index,
                endpoint: None,
            },
            nfps: &self.nfps,
            constraints: &self.constraints,
        }];
        out.extend(self.endpoints.iter().enumerate().map(|(ei, ep)| Subject {
            kind: SubjectKind::Endpoint,
            name: &ep.name,
            service: &self.name,
            path: SubjectPath {
                service: index,
                endpoint: Some(ei),
            },
            nfps: &ep.nfps,
            constraints: &ep.constraints,
        }));
        out
    }
}

impl ServiceModel {
    pub fn subjects(&self) -> impl Iterator<Item = Subject<'_>> {
        self.services
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.subjects(i))
    }

    pub fn service(&self, name: &str) -> Option<&ServiceDecl> {
        self.services.iter().find(|s| s.name == name)
    }
}
