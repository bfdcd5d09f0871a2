use std::collections::HashMap;

use crate::error::{ParseError, Pos};
use crate::lexer::{Cursor, Tok};
use crate::types::TypeLibrary;
use crate::vsl::{is_reserved, parse_expr};

use super::validate::{validate_model, DeclPath, SubjectPath};
use super::{
    ConstraintDecl, ConstraintKind, EndpointDecl, NfpDecl, SemanticAnnotation, ServiceDecl,
    ServiceModel,
};

/// Parses a model file against the built-in NFP type library.
pub fn parse_model(source: &str) -> Result<ServiceModel, ParseError> {
    parse_model_with(source, &TypeLibrary::builtin())
}

/// Parses a model file and checks its cross-reference rules. The first
/// rule violation is reported at the offending declaration.
pub fn parse_model_with(source: &str, lib: &TypeLibrary) -> Result<ServiceModel, ParseError> {
    let mut p = ModelParser {
        cur: Cursor::new(source)?,
        positions: HashMap::new(),
    };
    let model = p.model()?;
    if let Some(d) = validate_model(&model, lib).into_iter().next() {
        let pos = p.positions.get(&d.path).copied().unwrap_or(Pos::new(1, 1));
        return Err(ParseError::new(pos, d.to_string()));
    }
    Ok(model)
}

struct ModelParser {
    cur: Cursor,
    positions: HashMap<DeclPath, Pos>,
}

impl ModelParser {
    fn model(&mut self) -> Result<ServiceModel, ParseError> {
        self.positions.insert(DeclPath::Model, self.cur.pos());
        let mut services = Vec::new();
        while !self.cur.at_eof() {
            let index = services.len();
            services.push(self.service(index)?);
        }
        Ok(ServiceModel { services })
    }

    fn name(&mut self, what: &str) -> Result<(String, Pos), ParseError> {
        let (name, pos) = self.cur.expect_ident(what)?;
        if is_reserved(&name) {
            return Err(ParseError::new(pos, format!("`{name}` is a reserved word")));
        }
        Ok((name, pos))
    }

    fn service(&mut self, index: usize) -> Result<ServiceDecl, ParseError> {
        let path = SubjectPath {
            service: index,
            endpoint: None,
        };
        let pos = self.cur.expect_keyword("service")?;
        self.positions.insert(DeclPath::Subject(path), pos);
        let (name, _) = self.name("service name")?;
        self.cur.expect(&Tok::LBrace)?;
        let interface = if self.cur.eat_keyword("interface") {
            self.cur.expect(&Tok::Colon)?;
            Some(self.name("interface name")?.0)
        } else {
            None
        };
        let nfps = self.nfps(path)?;
        let constraints = self.constraints(path)?;
        let mut endpoints = Vec::new();
        while self.cur.is_keyword("endpoint") {
            let ep = SubjectPath {
                service: index,
                endpoint: Some(endpoints.len()),
            };
            endpoints.push(self.endpoint(ep)?);
        }
        self.close_block("`nfp`, `constraint`, `endpoint` or `}`")?;
        Ok(ServiceDecl {
            name,
            interface,
            nfps,
            constraints,
            endpoints,
        })
    }

    fn endpoint(&mut self, path: SubjectPath) -> Result<EndpointDecl, ParseError> {
        let pos = self.cur.expect_keyword("endpoint")?;
        self.positions.insert(DeclPath::Subject(path), pos);
        let (name, _) = self.name("endpoint name")?;
        let binding = if self.cur.eat_keyword("binding") {
            self.cur.expect(&Tok::Colon)?;
            Some(self.name("binding name")?.0)
        } else {
            None
        };
        self.cur.expect(&Tok::LBrace)?;
        let nfps = self.nfps(path)?;
        let constraints = self.constraints(path)?;
        self.close_block("`nfp`, `constraint` or `}`")?;
        Ok(EndpointDecl {
            name,
            binding,
            nfps,
            constraints,
        })
    }

    fn close_block(&mut self, wanted: &str) -> Result<(), ParseError> {
        if self.cur.eat(&Tok::RBrace) {
            Ok(())
        } else {
            Err(self.cur.unexpected(wanted))
        }
    }

    fn nfps(&mut self, subject: SubjectPath) -> Result<Vec<NfpDecl>, ParseError> {
        let mut out = Vec::new();
        while self.cur.is_keyword("nfp") {
            let pos = self.cur.next().pos;
            self.positions
                .insert(DeclPath::Nfp(subject, out.len()), pos);
            let (name, _) = self.name("NFP name")?;
            self.cur.expect(&Tok::Colon)?;
            let (type_name, _) = self.name("NFP type name")?;
            let semantic = if self.cur.eat_keyword("semantic") {
                Some(self.semantic()?)
            } else {
                None
            };
            out.push(NfpDecl {
                name,
                type_name,
                semantic,
            });
        }
        Ok(out)
    }

    fn semantic(&mut self) -> Result<SemanticAnnotation, ParseError> {
        self.cur.expect(&Tok::LBrace)?;
        self.cur.expect_keyword("modelReference")?;
        self.cur.expect(&Tok::Assign)?;
        let pos = self.cur.pos();
        let model_reference = self.cur.expect_string("URI string")?;
        if model_reference.is_empty() {
            return Err(ParseError::new(pos, "modelReference must not be empty"));
        }
        let mut lowering_schema = None;
        let mut lifting_schema = None;
        if self.cur.eat_keyword("loweringSchema") {
            self.cur.expect(&Tok::Assign)?;
            lowering_schema = Some(self.cur.expect_string("URI string")?);
        }
        if self.cur.eat_keyword("liftingSchema") {
            self.cur.expect(&Tok::Assign)?;
            lifting_schema = Some(self.cur.expect_string("URI string")?);
        }
        self.close_block("`loweringSchema`, `liftingSchema` or `}`")?;
        Ok(SemanticAnnotation {
            model_reference,
            lowering_schema,
            lifting_schema,
        })
    }

    fn constraints(&mut self, subject: SubjectPath) -> Result<Vec<ConstraintDecl>, ParseError> {
        let mut out = Vec::new();
        while self.cur.is_keyword("constraint") {
            let pos = self.cur.next().pos;
            self.positions
                .insert(DeclPath::Constraint(subject, out.len()), pos);
            let kpos = self.cur.pos();
            let (word, _) = self.cur.expect_ident("constraint kind")?;
            let kind = ConstraintKind::from_keyword(&word).ok_or_else(|| {
                ParseError::new(
                    kpos,
                    format!(
                        "unknown constraint kind `{word}` (expected required, offered or contract)"
                    ),
                )
            })?;
            let (name, _) = self.name("constraint name")?;
            self.cur.expect(&Tok::Colon)?;
            let expression = parse_expr(&mut self.cur)?;
            out.push(ConstraintDecl {
                kind,
                name,
                expression,
            });
        }
        Ok(out)
    }
}
