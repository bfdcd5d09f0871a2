use std::fmt::Write;

use crate::lexer::quote;
use crate::vsl::print_vsl;

use super::{ConstraintDecl, NfpDecl, ServiceModel};

/// Canonical model-file text; [`super::parse_model`] reads it back to an
/// equal model.
pub fn print_model(model: &ServiceModel) -> String {
    let mut out = String::new();
    for (i, s) in model.services.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "service {} {{", s.name);
        if let Some(iface) = &s.interface {
            let _ = writeln!(out, "  interface: {iface}");
        }
        write_body(&mut out, "  ", &s.nfps, &s.constraints);
        for ep in &s.endpoints {
            match &ep.binding {
                Some(b) => {
                    let _ = writeln!(out, "  endpoint {} binding: {b} {{", ep.name);
                }
                None => {
                    let _ = writeln!(out, "  endpoint {} {{", ep.name);
                }
            }
            write_body(&mut out, "    ", &ep.nfps, &ep.constraints);
            out.push_str("  }\n");
        }
        out.push_str("}\n");
    }
    out
}

fn write_body(out: &mut String, indent: &str, nfps: &[NfpDecl], constraints: &[ConstraintDecl]) {
    for n in nfps {
        let _ = write!(out, "{indent}nfp {} : {}", n.name, n.type_name);
        match &n.semantic {
            None => out.push('\n'),
            Some(sem) => {
                out.push_str(" semantic {\n");
                let _ = writeln!(
                    out,
                    "{indent}  modelReference = {}",
                    quote(&sem.model_reference)
                );
                if let Some(l) = &sem.lowering_schema {
                    let _ = writeln!(out, "{indent}  loweringSchema = {}", quote(l));
                }
                if let Some(l) = &sem.lifting_schema {
                    let _ = writeln!(out, "{indent}  liftingSchema = {}", quote(l));
                }
                let _ = writeln!(out, "{indent}}}");
            }
        }
    }
    for c in constraints {
        let _ = writeln!(
            out,
            "{indent}constraint {} {} : {}",
            c.kind,
            c.name,
            print_vsl(&c.expression)
        );
    }
}
