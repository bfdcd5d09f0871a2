use crate::decimal::Decimal;
use crate::error::ParseError;
use crate::lexer::{Cursor, Tok};

use super::ast::{Rel, VslExpression, VslLiteral};

/// Parses a standalone constraint expression.
pub fn parse_vsl(text: &str) -> Result<VslExpression, ParseError> {
    let mut cur = Cursor::new(text)?;
    if cur.at_eof() {
        return Err(ParseError::new(cur.pos(), "empty expression"));
    }
    let expr = parse_expr(&mut cur)?;
    if !cur.at_eof() {
        return Err(cur.unexpected("`and`, `or` or end of input"));
    }
    Ok(expr)
}

/// Parses one expression and stops at the first token that cannot continue
/// it, which lets the model parser embed expressions without delimiters.
pub(crate) fn parse_expr(cur: &mut Cursor) -> Result<VslExpression, ParseError> {
    let mut terms = vec![parse_and(cur)?];
    while cur.eat_keyword("or") {
        terms.push(parse_and(cur)?);
    }
    Ok(VslExpression::or(terms))
}

fn parse_and(cur: &mut Cursor) -> Result<VslExpression, ParseError> {
    let mut factors = vec![parse_atom(cur)?];
    while cur.eat_keyword("and") {
        factors.push(parse_atom(cur)?);
    }
    Ok(VslExpression::and(factors))
}

fn parse_atom(cur: &mut Cursor) -> Result<VslExpression, ParseError> {
    match cur.peek().clone() {
        Tok::LParen => {
            cur.next();
            let inner = parse_expr(cur)?;
            cur.expect(&Tok::RParen)?;
            Ok(inner)
        }
        Tok::Ident(name) if !is_reserved(&name) => {
            cur.next();
            let op = match cur.peek() {
                Tok::Op(op) => *op,
                Tok::Assign => {
                    return Err(ParseError::new(
                        cur.pos(),
                        "unknown operator `=` (use `==` for equality)",
                    ))
                }
                _ => return Err(cur.unexpected("relational operator")),
            };
            cur.next();
            let value = parse_literal(cur)?;
            Ok(VslExpression::Rel(Rel {
                nfp: name,
                op,
                value,
            }))
        }
        _ => Err(cur.unexpected("NFP relation or `(`")),
    }
}

pub(crate) fn is_reserved(word: &str) -> bool {
    matches!(word, "and" | "or" | "true" | "false")
}

fn parse_literal(cur: &mut Cursor) -> Result<VslLiteral, ParseError> {
    let pos = cur.pos();
    match cur.peek().clone() {
        Tok::Number(n) => {
            cur.next();
            Ok(VslLiteral::Number(number(&n, pos)?))
        }
        Tok::Str(s) => {
            cur.next();
            Ok(VslLiteral::Text(s))
        }
        Tok::Ident(w) if w == "true" || w == "false" => {
            cur.next();
            Ok(VslLiteral::Bool(w == "true"))
        }
        Tok::LParen => {
            cur.next();
            let vpos = cur.pos();
            let value = match cur.peek().clone() {
                Tok::Number(n) => {
                    cur.next();
                    number(&n, vpos)?
                }
                _ => return Err(cur.unexpected("number in (value, \"unit\") tuple")),
            };
            cur.expect(&Tok::Comma)?;
            let upos = cur.pos();
            let unit = cur.expect_string("unit string")?;
            if unit.is_empty() {
                return Err(ParseError::new(upos, "unit must not be empty"));
            }
            cur.expect(&Tok::RParen)?;
            Ok(VslLiteral::Tuple { value, unit })
        }
        _ => Err(cur.unexpected("literal")),
    }
}

fn number(text: &str, pos: crate::error::Pos) -> Result<Decimal, ParseError> {
    Decimal::parse(text).map_err(|e| ParseError::new(pos, e.to_string()))
}
