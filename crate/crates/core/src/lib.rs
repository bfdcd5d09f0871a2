//! Compiler from service models annotated with non-functional properties
//! (NFPs) and VSL-style constraints to WS-Policy, XSD and SAWSDL artifacts,
//! plus a policy evaluator for concrete NFP values.
//!
//! Pipeline: [`model::parse_model`] → [`model::validate_model`] →
//! [`transform::transform_model`] → [`emit::emit_bundles`]; policies can be
//! checked against a [`policy::Valuation`] with [`policy::evaluate`].

pub mod decimal;
pub mod emit;
pub mod error;
mod lexer;
pub mod model;
pub mod policy;
pub mod transform;
pub mod types;
pub mod vsl;

pub use decimal::Decimal;
pub use emit::{emit_bundles, EmitConfig, EmittedBundle, FunctionIdMode};
pub use error::{ParseError, Pos};
pub use model::{parse_model, parse_model_with, ServiceModel};
pub use policy::{evaluate, normalize, Policy, Valuation};
pub use transform::{transform_model, PolicyArtifacts, TransformError};
pub use types::TypeLibrary;
