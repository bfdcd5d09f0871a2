mod common;

use std::path::PathBuf;

use common::*;
use nfpc_core::emit::{emit_policy, emit_xsd, SAWSDL_NS, WSDL_NS, WSP_NS, XSD_NS};
use nfpc_core::model::ConstraintKind;
use nfpc_core::policy::{Policy, PolicySubjectRef};
use nfpc_core::{
    emit_bundles, parse_model, transform_model, EmitConfig, EmittedBundle, FunctionIdMode,
    TypeLibrary,
};

fn bundles(src: &str, mode: FunctionIdMode) -> Vec<EmittedBundle> {
    let lib = TypeLibrary::builtin();
    let model = parse_model(src).unwrap();
    let artifacts = transform_model(&model, &lib).unwrap();
    let config = EmitConfig {
        function_ids: mode,
        ..EmitConfig::default()
    };
    emit_bundles(&model, &artifacts, &config)
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

/// Compares against a checked-in file; `NFPC_UPDATE_GOLDEN=1` rewrites it.
fn check_golden(name: &str, actual: &str) {
    let path = golden(name);
    if std::env::var_os("NFPC_UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let expected =
        std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(expected == actual, "{name} differs from golden:\n{actual}");
}

#[test]
fn flight_goldens() {
    let b = &bundles(FLIGHT, FunctionIdMode::XacmlUrn)[0];
    check_golden("FlightService1.wsdl", &b.wsdl_text);
    check_golden("FlightService1-types.xsd", &b.xsd_text);
    let e = &bundles(FLIGHT, FunctionIdMode::Entity)[0];
    check_golden("FlightService1.entity.wsdl", &e.wsdl_text);
}

#[test]
fn flight_wsdl_structure() {
    let b = &bundles(FLIGHT, FunctionIdMode::XacmlUrn)[0];
    let doc = parse_xml(&b.wsdl_text);
    let root = doc.root_element();
    assert!(root.has_tag_name((WSDL_NS, "description")));
    let service = root
        .children()
        .find(|c| c.has_tag_name((WSDL_NS, "service")))
        .unwrap();
    assert_eq!(service.attribute("name"), Some("FlightService1"));
    assert_eq!(
        service.attribute("interface"),
        Some("FlightServiceInterface")
    );

    let service_policy = service
        .children()
        .find(|c| c.has_tag_name((WSP_NS, "Policy")))
        .unwrap();
    let endpoint = service
        .children()
        .find(|c| c.has_tag_name((WSDL_NS, "endpoint")))
        .unwrap();
    let endpoint_policy = endpoint
        .children()
        .find(|c| c.has_tag_name((WSP_NS, "Policy")))
        .unwrap();
    assert_eq!(
        service_policy
            .descendants()
            .filter(|n| n.has_tag_name("Apply"))
            .count(),
        4
    );
    assert_eq!(
        endpoint_policy
            .descendants()
            .filter(|n| n.has_tag_name("Apply"))
            .count(),
        2
    );

    let tree = policy_tree(&doc);
    assert_eq!(tree.len(), 2);
    assert_eq!(tree[0].0, "FlightService1NFPsPolicy");
    assert_eq!(tree[0].1.len(), 1);
    assert_eq!(tree[1].0, "FlightServiceEndpoint1NFPsPolicy");
    // offered: the bound plus the vacuous alternative
    assert_eq!(tree[1].1.len(), 2);
    assert!(tree[1].1[1].is_empty());

    let import = root
        .descendants()
        .find(|c| c.has_tag_name((XSD_NS, "import")))
        .unwrap();
    assert_eq!(
        import.attribute("schemaLocation"),
        Some("FlightService1-types.xsd")
    );
}

#[test]
fn entity_mode_resolves_entities() {
    let b = &bundles(FLIGHT, FunctionIdMode::Entity)[0];
    assert!(b
        .wsdl_text
        .contains("FunctionId=\"wspc&function;double-equals\""));
    assert!(b.wsdl_text.contains("DataType=\"&xsd;double\""));
    let doc = parse_xml(&b.wsdl_text);
    let a = applies(&doc);
    assert_eq!(a.len(), 6);
    assert_eq!(a[0].function_id, "wspc:function:double-equals");
    assert_eq!(a[0].value_type, "http://www.w3.org/2001/XMLSchema#double");
    assert_eq!(a[0].designator_type, a[0].value_type);

    let urn = &bundles(FLIGHT, FunctionIdMode::XacmlUrn)[0];
    assert!(!urn.wsdl_text.contains("&function;"));
    let doc = parse_xml(&urn.wsdl_text);
    assert_eq!(
        applies(&doc)[0].function_id,
        "urn:oasis:names:tc:xacml:1.0:function:double-equals"
    );
}

#[test]
fn standalone_policies_match_inline_ones() {
    for mode in [FunctionIdMode::XacmlUrn, FunctionIdMode::Entity] {
        for b in bundles(MAPPING, mode).iter().chain(&bundles(FLIGHT, mode)) {
            let wsdl = parse_xml(&b.wsdl_text);
            let inline = policy_tree(&wsdl);
            assert_eq!(inline.len(), b.policy_texts.len());
            for (id, text) in &b.policy_texts {
                let doc = parse_xml(text);
                assert!(doc.root_element().has_tag_name((WSP_NS, "Policy")));
                let standalone = policy_tree(&doc);
                assert_eq!(standalone.len(), 1);
                let found = inline.iter().find(|(i, _)| i == id).unwrap();
                assert_eq!(&standalone[0], found);
            }
        }
    }
}

#[test]
fn attribute_ids_resolve_in_schema() {
    for src in [FLIGHT, MAPPING] {
        for b in bundles(src, FunctionIdMode::XacmlUrn) {
            let paths = xsd_paths(&b.xsd_text);
            let doc = parse_xml(&b.wsdl_text);
            for a in applies(&doc) {
                assert!(
                    paths.contains(&a.attribute_id),
                    "{} not in {paths:?}",
                    a.attribute_id
                );
            }
        }
    }
}

#[test]
fn xsd_shape() {
    let b = &bundles(FLIGHT, FunctionIdMode::XacmlUrn)[0];
    assert_eq!(
        xsd_paths(&b.xsd_text),
        [
            "Price/PriceValue",
            "Price/PriceUnit",
            "Availability/AvailabilityValue",
            "Availability/AvailabilityUnit",
            "Delay/DelayValue",
            "Delay/DelayUnit",
        ]
    );
    let doc = parse_xml(&b.xsd_text);
    let root = doc.root_element();
    assert_eq!(
        root.attribute("targetNamespace"),
        Some("http://example.org/nfp/FlightService1/types")
    );
    let value_types: Vec<_> = root
        .descendants()
        .filter(|n| {
            n.has_tag_name((XSD_NS, "element"))
                && n.attribute("name").is_some_and(|s| s.ends_with("Value"))
        })
        .map(|n| n.attribute("type").unwrap())
        .collect();
    assert_eq!(value_types, ["xsd:double", "xsd:integer", "xsd:double"]);
}

#[test]
fn semantic_annotation_placement() {
    let b = &bundles(MAPPING, FunctionIdMode::XacmlUrn)[0];
    let doc = parse_xml(&b.xsd_text);
    let annotated: Vec<_> = doc
        .descendants()
        .filter(|n| n.attribute((SAWSDL_NS, "modelReference")).is_some())
        .collect();
    assert_eq!(annotated.len(), 1);
    let el = annotated[0];
    assert!(el.has_tag_name((XSD_NS, "element")));
    assert_eq!(el.attribute("name"), Some("Reliability"));
    assert_eq!(
        el.attribute((SAWSDL_NS, "loweringSchemaMapping")),
        Some("http://example.org/mappings/reliability-lowering.xq")
    );
    assert_eq!(
        el.attribute((SAWSDL_NS, "liftingSchemaMapping")),
        Some("http://example.org/mappings/reliability-lifting.xslt")
    );
    assert!(!b.wsdl_text.contains("modelReference"));
}

#[test]
fn model_without_constraints() {
    let b = &bundles(
        "service Bare { nfp Cost : NFP_Price endpoint E { } }",
        FunctionIdMode::XacmlUrn,
    )[0];
    let doc = parse_xml(&b.wsdl_text);
    assert_eq!(
        doc.descendants()
            .filter(|n| n.has_tag_name((WSP_NS, "Policy")))
            .count(),
        0
    );
    assert!(b.policy_texts.is_empty());
    assert_eq!(xsd_paths(&b.xsd_text), ["Cost/CostValue", "Cost/CostUnit"]);

    let empty = emit_xsd("Nothing", &[], &EmitConfig::default());
    let doc = parse_xml(&empty);
    assert_eq!(
        doc.root_element()
            .children()
            .filter(|c| c.is_element())
            .count(),
        0
    );
}

#[test]
fn empty_policy_documents() {
    let mut p = Policy {
        id: "Never".into(),
        subject: PolicySubjectRef::service("S"),
        kind: ConstraintKind::Required,
        alternatives: Vec::new(),
    };
    let text = emit_policy(&p, &EmitConfig::default());
    assert!(text.contains("<wsp:ExactlyOne/>"));
    assert_eq!(policy_tree(&parse_xml(&text))[0].1.len(), 0);

    p.alternatives.push(Default::default());
    p.alternatives.push(Default::default());
    let text = emit_policy(&p, &EmitConfig::default());
    // duplicates of the empty alternative collapse during normalization
    assert_eq!(
        policy_tree(&parse_xml(&text))[0].1,
        vec![Vec::<ApplyView>::new()]
    );
}

#[test]
fn escaping_survives_reparse() {
    let b = &bundles(
        r#"service S { nfp Tag : NFP_String
           constraint required Odd : Tag == "<a & \"b\">" or Tag != "it's" }"#,
        FunctionIdMode::XacmlUrn,
    )[0];
    let doc = parse_xml(&b.wsdl_text);
    let lits: Vec<_> = applies(&doc).into_iter().map(|a| a.literal).collect();
    assert_eq!(lits, ["<a & \"b\">", "it's"]);
}

#[test]
fn emission_is_deterministic() {
    for mode in [FunctionIdMode::XacmlUrn, FunctionIdMode::Entity] {
        assert_eq!(bundles(MAPPING, mode), bundles(MAPPING, mode));
    }
}

#[test]
fn base_namespace_is_configurable() {
    let lib = TypeLibrary::builtin();
    let model = parse_model(FLIGHT).unwrap();
    let artifacts = transform_model(&model, &lib).unwrap();
    let config = EmitConfig {
        base_namespace: "urn:acme:/".into(),
        ..EmitConfig::default()
    };
    let b = &emit_bundles(&model, &artifacts, &config)[0];
    let doc = parse_xml(&b.wsdl_text);
    assert_eq!(
        doc.root_element().attribute("targetNamespace"),
        Some("urn:acme:/FlightService1")
    );
}
