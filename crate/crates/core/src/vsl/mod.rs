//! The constraint language: a small subset of MARTE VSL made of relational
//! atoms (`Delay < (0.10, "ms")`) combined with `and` / `or`.

mod ast;
mod dnf;
mod eval;
mod parse;

pub use ast::{Rel, RelOp, Value, ValueKind, VslExpression, VslLiteral};
pub use dnf::{eval_dnf, to_dnf, Conjunct};
pub use eval::{compare, eval_rel, EvalError};
pub use parse::parse_vsl;

pub(crate) use parse::{is_reserved, parse_expr};

use crate::lexer::quote;

pub fn print_literal(lit: &VslLiteral) -> String {
    match lit {
        VslLiteral::Number(d) => d.to_string(),
        VslLiteral::Text(s) => quote(s),
        VslLiteral::Bool(b) => b.to_string(),
        VslLiteral::Tuple { value, unit } => format!("({value}, {})", quote(unit)),
    }
}

pub fn print_rel(rel: &Rel) -> String {
    format!("{} {} {}", rel.nfp, rel.op, print_literal(&rel.value))
}

/// Canonical text of an expression. Parentheses appear only around `or`
/// groups that sit inside an `and`.
pub fn print_vsl(expr: &VslExpression) -> String {
    let mut out = String::new();
    write_expr(expr, &mut out);
    out
}

fn write_expr(expr: &VslExpression, out: &mut String) {
    match expr {
        VslExpression::Rel(r) => out.push_str(&print_rel(r)),
        VslExpression::Or(cs) => {
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    out.push_str(" or ");
                }
                write_expr(c, out);
            }
        }
        VslExpression::And(cs) => {
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    out.push_str(" and ");
                }
                if matches!(c, VslExpression::Or(_)) {
                    out.push('(');
                    write_expr(c, out);
                    out.push(')');
                } else {
                    write_expr(c, out);
                }
            }
        }
    }
}
