//! Model-to-text stage: XSD vocabulary schema, WS-Policy documents with
//! WS-PolicyConstraints `Apply` predicates, and the WSDL 2.0 description
//! that carries the policies inline.
//!
//! Output is deterministic: fixed namespace prefixes, fixed attribute order,
//! 2-space indentation, LF line ends.

mod xml;

use indexmap::IndexMap;

use crate::model::{ServiceDecl, ServiceModel};
use crate::policy::{normalize, Policy, PolicySubjectRef, VocabularyItem};
use crate::transform::PolicyArtifacts;
use crate::types::XsdType;

use xml::{raw, text, XmlWriter};

pub const WSDL_NS: &str = "http://www.w3.org/ns/wsdl";
pub const WSP_NS: &str = "http://www.w3.org/ns/ws-policy";
pub const WSU_NS: &str =
    "http://docs.oasis-open.org/wss/2004/01/oasis-200401-wss-wssecurity-utility-1.0.xsd";
pub const SAWSDL_NS: &str = "http://www.w3.org/ns/sawsdl";
pub const XSD_NS: &str = "http://www.w3.org/2001/XMLSchema";
/// Replacement text of the `&xsd;` entity used in `DataType` attributes.
pub const XSD_ENTITY_VALUE: &str = "http://www.w3.org/2001/XMLSchema#";
pub const XACML_FUNCTION_PREFIX: &str = "urn:oasis:names:tc:xacml:1.0:function:";
/// Replacement text of the `&function;` entity in entity mode, so that
/// `wspc&function;double-equals` reads `wspc:function:double-equals`.
pub const FUNCTION_ENTITY_VALUE: &str = ":function:";

/// How `Apply/@FunctionId` is spelled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FunctionIdMode {
    /// `wspc&function;NAME`, with `function` declared as an internal entity.
    Entity,
    /// `urn:oasis:names:tc:xacml:1.0:function:NAME`
    #[default]
    XacmlUrn,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmitConfig {
    pub function_ids: FunctionIdMode,
    /// Namespaces are `<base>/<service>` (WSDL) and `<base>/<service>/types` (XSD).
    pub base_namespace: String,
}

impl Default for EmitConfig {
    fn default() -> Self {
        EmitConfig {
            function_ids: FunctionIdMode::default(),
            base_namespace: "http://example.org/nfp".to_string(),
        }
    }
}

impl EmitConfig {
    fn wsdl_namespace(&self, service: &str) -> String {
        format!("{}/{service}", self.base_namespace.trim_end_matches('/'))
    }

    fn types_namespace(&self, service: &str) -> String {
        format!("{}/types", self.wsdl_namespace(service))
    }

    fn function_id(&self, name: &str) -> String {
        match self.function_ids {
            FunctionIdMode::Entity => format!("wspc&function;{name}"),
            FunctionIdMode::XacmlUrn => format!("{XACML_FUNCTION_PREFIX}{name}"),
        }
    }

    fn entities(&self) -> Vec<(&'static str, &'static str)> {
        let mut out = vec![("xsd", XSD_ENTITY_VALUE)];
        if self.function_ids == FunctionIdMode::Entity {
            out.push(("function", FUNCTION_ENTITY_VALUE));
        }
        out
    }
}

/// The documents generated for one service.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmittedBundle {
    pub service: String,
    pub wsdl_text: String,
    pub xsd_text: String,
    /// Standalone copies of the service's policies, keyed by policy id.
    pub policy_texts: IndexMap<String, String>,
}

impl EmittedBundle {
    pub fn wsdl_file_name(&self) -> String {
        format!("{}.wsdl", self.service)
    }

    pub fn xsd_file_name(&self) -> String {
        xsd_file_name(&self.service)
    }

    /// `(file name, contents)` pairs; policy files only when `split_policies`.
    pub fn files(&self, split_policies: bool) -> Vec<(String, &str)> {
        let mut out = vec![
            (self.wsdl_file_name(), self.wsdl_text.as_str()),
            (self.xsd_file_name(), self.xsd_text.as_str()),
        ];
        if split_policies {
            out.extend(
                self.policy_texts
                    .iter()
                    .map(|(id, t)| (format!("{id}.xml"), t.as_str())),
            );
        }
        out
    }
}

fn xsd_file_name(service: &str) -> String {
    format!("{service}-types.xsd")
}

/// Emits one bundle per service, in declaration order.
pub fn emit_bundles(
    model: &ServiceModel,
    artifacts: &PolicyArtifacts,
    config: &EmitConfig,
) -> Vec<EmittedBundle> {
    model
        .services
        .iter()
        .map(|service| {
            let vocabulary: Vec<&VocabularyItem> =
                artifacts.vocabulary_of_service(&service.name).collect();
            let policy_texts = artifacts
                .policies
                .iter()
                .filter(|p| p.subject.service == service.name)
                .map(|p| (p.id.clone(), emit_policy(p, config)))
                .collect();
            EmittedBundle {
                service: service.name.clone(),
                wsdl_text: emit_wsdl(service, artifacts, config),
                xsd_text: emit_xsd(&service.name, &vocabulary, config),
                policy_texts,
            }
        })
        .collect()
}

/// XSD declaring, per vocabulary item, a complex type `<Name>Type` with a
/// `<Name>Value` element and (for unit-bearing items) a `<Name>Unit`
/// element, plus a global element `<Name>` of that type. Semantic
/// annotations go on the global element as SAWSDL attributes.
pub fn emit_xsd(service: &str, vocabulary: &[&VocabularyItem], config: &EmitConfig) -> String {
    let tns = config.types_namespace(service);
    let mut w = XmlWriter::new();
    w.open(
        "xsd:schema",
        &[
            text("xmlns:xsd", XSD_NS),
            text("xmlns:sawsdl", SAWSDL_NS),
            text("xmlns:tns", &tns),
            text("targetNamespace", &tns),
            text("elementFormDefault", "qualified"),
        ],
    );
    for item in vocabulary {
        let type_name = format!("{}Type", item.name);
        w.open("xsd:complexType", &[text("name", &type_name)]);
        w.open("xsd:sequence", &[]);
        let value_type = item.xsd_value_type.qualified_name();
        w.empty(
            "xsd:element",
            &[
                text("name", &item.value_element()),
                text("type", &value_type),
            ],
        );
        if item.has_unit {
            let unit_type = XsdType::String.qualified_name();
            w.empty(
                "xsd:element",
                &[text("name", &item.unit_element()), text("type", &unit_type)],
            );
        }
        w.close();
        w.close();

        let qualified_type = format!("tns:{type_name}");
        let mut attrs = vec![text("name", &item.name), text("type", &qualified_type)];
        if let Some(sem) = &item.semantic {
            attrs.push(text("sawsdl:modelReference", &sem.model_reference));
            if let Some(l) = &sem.lowering_schema {
                attrs.push(text("sawsdl:loweringSchemaMapping", l));
            }
            if let Some(l) = &sem.lifting_schema {
                attrs.push(text("sawsdl:liftingSchemaMapping", l));
            }
        }
        w.empty("xsd:element", &attrs);
    }
    w.close();
    w.finish()
}

/// A standalone policy document. The policy is normalized first.
pub fn emit_policy(policy: &Policy, config: &EmitConfig) -> String {
    let mut w = XmlWriter::new();
    w.doctype("wsp:Policy", &config.entities());
    write_policy(&mut w, &normalize(policy), config, true);
    w.finish()
}

fn write_policy(w: &mut XmlWriter, policy: &Policy, config: &EmitConfig, declare_ns: bool) {
    let mut attrs = Vec::new();
    if declare_ns {
        attrs.push(text("xmlns:wsp", WSP_NS));
        attrs.push(text("xmlns:wsu", WSU_NS));
    }
    attrs.push(text("wsu:Id", &policy.id));
    w.open("wsp:Policy", &attrs);
    if policy.alternatives.is_empty() {
        w.empty("wsp:ExactlyOne", &[]);
    } else {
        w.open("wsp:ExactlyOne", &[]);
        for alt in &policy.alternatives {
            if alt.is_empty() {
                w.empty("wsp:All", &[]);
                continue;
            }
            w.open("wsp:All", &[]);
            for f in alt.functions() {
                let fid = config.function_id(&f.operator);
                let dt = format!("&xsd;{}", f.literal_xsd_type.local_name());
                w.open("Apply", &[raw("FunctionId", &fid)]);
                w.text_element("AttributeValue", &[raw("DataType", &dt)], f.literal_text());
                w.empty(
                    "ResourceAttributeDesignator",
                    &[text("AttributeId", &f.attribute_id), raw("DataType", &dt)],
                );
                w.close();
            }
            w.close();
        }
        w.close();
    }
    w.close();
}

/// WSDL 2.0 description of one service with its policies attached inline
/// to the `wsdl:service` and `wsdl:endpoint` elements.
pub fn emit_wsdl(
    service: &ServiceDecl,
    artifacts: &PolicyArtifacts,
    config: &EmitConfig,
) -> String {
    let tns = config.wsdl_namespace(&service.name);
    let types_ns = config.types_namespace(&service.name);
    let schema_location = xsd_file_name(&service.name);

    let mut w = XmlWriter::new();
    w.doctype("wsdl:description", &config.entities());
    w.open(
        "wsdl:description",
        &[
            text("xmlns:wsdl", WSDL_NS),
            text("xmlns:wsp", WSP_NS),
            text("xmlns:wsu", WSU_NS),
            text("xmlns:sawsdl", SAWSDL_NS),
            text("xmlns:xsd", XSD_NS),
            text("xmlns:tns", &tns),
            text("targetNamespace", &tns),
        ],
    );
    w.open("wsdl:types", &[]);
    w.empty(
        "xsd:import",
        &[
            text("namespace", &types_ns),
            text("schemaLocation", &schema_location),
        ],
    );
    w.close();

    let mut attrs = vec![text("name", &service.name)];
    if let Some(iface) = &service.interface {
        attrs.push(text("interface", iface));
    }
    w.open("wsdl:service", &attrs);
    for p in artifacts.policies_of(&PolicySubjectRef::service(&service.name)) {
        write_policy(&mut w, &normalize(p), config, false);
    }
    for ep in &service.endpoints {
        let mut attrs = vec![text("name", &ep.name)];
        if let Some(b) = &ep.binding {
            attrs.push(text("binding", b));
        }
        let policies = artifacts.policies_of(&PolicySubjectRef::endpoint(&service.name, &ep.name));
        if policies.is_empty() {
            w.empty("wsdl:endpoint", &attrs);
            continue;
        }
        w.open("wsdl:endpoint", &attrs);
        for p in policies {
            write_policy(&mut w, &normalize(p), config, false);
        }
        w.close();
    }
    w.close();
    w.close();
    w.finish()
}
