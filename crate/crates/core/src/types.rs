//! Library of basic NFP types: each type's XSD value type and the unit
//! literals a measured value of that type may carry.

use std::fmt;

use indexmap::IndexMap;
use thiserror::Error;

use crate::error::ParseError;
use crate::lexer::{Cursor, Tok};
use crate::vsl::{ValueKind, VslLiteral};

/// XSD simple type of a vocabulary item value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum XsdType {
    Double,
    Integer,
    Boolean,
    String,
}

impl XsdType {
    pub const ALL: [XsdType; 4] = [
        XsdType::Double,
        XsdType::Integer,
        XsdType::Boolean,
        XsdType::String,
    ];

    /// `double`, `integer`, ... as used in function names and `&xsd;` references.
    pub fn local_name(self) -> &'static str {
        match self {
            XsdType::Double => "double",
            XsdType::Integer => "integer",
            XsdType::Boolean => "boolean",
            XsdType::String => "string",
        }
    }

    pub fn qualified_name(self) -> String {
        format!("xsd:{}", self.local_name())
    }

    pub fn from_local_name(name: &str) -> Option<Self> {
        XsdType::ALL.into_iter().find(|t| t.local_name() == name)
    }

    pub fn value_kind(self) -> ValueKind {
        match self {
            XsdType::Double | XsdType::Integer => ValueKind::Number,
            XsdType::Boolean => ValueKind::Bool,
            XsdType::String => ValueKind::Text,
        }
    }

    pub fn is_ordered(self) -> bool {
        self.value_kind() == ValueKind::Number
    }
}

impl fmt::Display for XsdType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "xsd:{}", self.local_name())
    }
}

/// Which unit literals a type admits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Units {
    /// The type never carries a unit.
    Unitless,
    /// Any non-empty unit string.
    Open,
    /// Exactly one of the listed units.
    Closed(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NfpTypeEntry {
    pub name: String,
    pub xsd_value_type: XsdType,
    pub units: Units,
}

impl NfpTypeEntry {
    fn new(name: &str, xsd: XsdType, units: Units) -> Self {
        NfpTypeEntry {
            name: name.to_string(),
            xsd_value_type: xsd,
            units,
        }
    }

    pub fn has_unit(&self) -> bool {
        self.units != Units::Unitless
    }

    pub fn admits_unit(&self, unit: &str) -> bool {
        match &self.units {
            Units::Unitless => false,
            Units::Open => !unit.is_empty(),
            Units::Closed(list) => list.iter().any(|u| u == unit),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeDiagnostic {
    #[error("{ty}: expected {expected} literal, found {found}")]
    KindMismatch {
        ty: String,
        expected: XsdType,
        found: ValueKind,
    },
    #[error("{ty}: integer value required, found `{value}`")]
    IntegerRequired { ty: String, value: String },
    #[error("{ty}: inadmissible unit {unit:?} (allowed: {allowed})")]
    InadmissibleUnit {
        ty: String,
        unit: String,
        allowed: String,
    },
    #[error("{ty}: type is unitless, found unit {unit:?}")]
    UnitlessType { ty: String, unit: String },
}

/// Checks that a constraint literal fits an NFP type.
pub fn check_literal(entry: &NfpTypeEntry, literal: &VslLiteral) -> Result<(), TypeDiagnostic> {
    let xsd = entry.xsd_value_type;
    if literal.kind() != xsd.value_kind() {
        return Err(TypeDiagnostic::KindMismatch {
            ty: entry.name.clone(),
            expected: xsd,
            found: literal.kind(),
        });
    }
    if let VslLiteral::Number(d) | VslLiteral::Tuple { value: d, .. } = literal {
        if xsd == XsdType::Integer && d.has_fraction() {
            return Err(TypeDiagnostic::IntegerRequired {
                ty: entry.name.clone(),
                value: d.to_string(),
            });
        }
    }
    if let Some(unit) = literal.unit() {
        match &entry.units {
            Units::Unitless => {
                return Err(TypeDiagnostic::UnitlessType {
                    ty: entry.name.clone(),
                    unit: unit.to_string(),
                })
            }
            Units::Closed(list) if !entry.admits_unit(unit) => {
                return Err(TypeDiagnostic::InadmissibleUnit {
                    ty: entry.name.clone(),
                    unit: unit.to_string(),
                    allowed: list.join(", "),
                })
            }
            _ => {}
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown NFP type `{0}`")]
pub struct NotFound(pub String);

/// The set of NFP types a model may reference: the built-in table plus
/// any user extensions. Extensions can never replace a built-in entry.
#[derive(Debug, Clone)]
pub struct TypeLibrary {
    entries: IndexMap<String, NfpTypeEntry>,
    builtin_count: usize,
}

impl Default for TypeLibrary {
    fn default() -> Self {
        Self::builtin()
    }
}

impl TypeLibrary {
    pub fn builtin() -> Self {
        use XsdType::*;
        let closed = |us: &[&str]| Units::Closed(us.iter().map(|u| u.to_string()).collect());
        let table = [
            NfpTypeEntry::new("NFP_Real", Double, Units::Open),
            NfpTypeEntry::new("NFP_Integer", Integer, Units::Open),
            NfpTypeEntry::new("NFP_Boolean", Boolean, Units::Unitless),
            NfpTypeEntry::new("NFP_String", String, Units::Unitless),
            NfpTypeEntry::new("NFP_Percentage", Integer, closed(&["%"])),
            NfpTypeEntry::new("NFP_Price", Double, Units::Open),
            NfpTypeEntry::new(
                "NFP_Duration",
                Double,
                closed(&["s", "ms", "us", "min", "hr"]),
            ),
            NfpTypeEntry::new(
                "NFP_DataSize",
                Double,
                closed(&["bit", "Byte", "KB", "MB", "GB"]),
            ),
            NfpTypeEntry::new(
                "NFP_Frequency",
                Double,
                closed(&["Hz", "kHz", "MHz", "GHz"]),
            ),
        ];
        let builtin_count = table.len();
        TypeLibrary {
            entries: table.into_iter().map(|e| (e.name.clone(), e)).collect(),
            builtin_count,
        }
    }

    pub fn lookup_type(&self, name: &str) -> Result<&NfpTypeEntry, NotFound> {
        self.entries
            .get(name)
            .ok_or_else(|| NotFound(name.to_string()))
    }

    pub fn is_builtin(&self, name: &str) -> bool {
        self.entries
            .get_index_of(name)
            .is_some_and(|i| i < self.builtin_count)
    }

    pub fn entries(&self) -> impl Iterator<Item = &NfpTypeEntry> {
        self.entries.values()
    }

    pub fn add(&mut self, entry: NfpTypeEntry) -> Result<(), String> {
        if self.is_builtin(&entry.name) {
            return Err(format!("`{}` would shadow a built-in NFP type", entry.name));
        }
        if self.entries.contains_key(&entry.name) {
            return Err(format!("NFP type `{}` declared twice", entry.name));
        }
        if entry.units == Units::Closed(Vec::new()) {
            return Err(format!("NFP type `{}` has an empty unit list", entry.name));
        }
        self.entries.insert(entry.name.clone(), entry);
        Ok(())
    }

    /// Adds the declarations of an extension file:
    ///
    /// ```text
    /// nfptype NFP_Bandwidth : xsd:double units [ "bps", "kbps" ]
    /// nfptype NFP_Label     : xsd:string unitless
    /// nfptype NFP_Score     : xsd:integer units open
    /// ```
    pub fn extend_from_text(&mut self, text: &str) -> Result<(), ParseError> {
        let mut cur = Cursor::new(text)?;
        while !cur.at_eof() {
            cur.expect_keyword("nfptype")?;
            let (name, pos) = cur.expect_ident("type name")?;
            cur.expect(&Tok::Colon)?;
            let xpos = cur.pos();
            let (prefix, _) = cur.expect_ident("XSD type")?;
            cur.expect(&Tok::Colon)?;
            let (local, _) = cur.expect_ident("XSD type")?;
            let xsd = match XsdType::from_local_name(&local) {
                Some(t) if prefix == "xsd" => t,
                _ => {
                    return Err(ParseError::new(
                        xpos,
                        format!(
                            "unsupported XSD type `{prefix}:{local}` \
                             (expected xsd:double, xsd:integer, xsd:boolean or xsd:string)"
                        ),
                    ))
                }
            };
            let units = if cur.eat_keyword("unitless") {
                Units::Unitless
            } else {
                cur.expect_keyword("units")?;
                if cur.eat_keyword("open") {
                    Units::Open
                } else {
                    cur.expect(&Tok::LBracket)?;
                    let mut list = Vec::new();
                    if *cur.peek() != Tok::RBracket {
                        loop {
                            let upos = cur.pos();
                            let u = cur.expect_string("unit string")?;
                            if u.is_empty() {
                                return Err(ParseError::new(upos, "unit must not be empty"));
                            }
                            list.push(u);
                            if !cur.eat(&Tok::Comma) {
                                break;
                            }
                        }
                    }
                    cur.expect(&Tok::RBracket)?;
                    Units::Closed(list)
                }
            };
            self.add(NfpTypeEntry::new(&name, xsd, units))
                .map_err(|m| ParseError::new(pos, m))?;
        }
        Ok(())
    }
}
