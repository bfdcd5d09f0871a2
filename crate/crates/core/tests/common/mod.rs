//! Shared generators and oracles for the integration tests.
#![allow(dead_code)]

use nfpc_core::model::{
    ConstraintDecl, ConstraintKind, EndpointDecl, NfpDecl, SemanticAnnotation, ServiceDecl,
    ServiceModel,
};
use nfpc_core::vsl::{Rel, RelOp, Value, VslExpression, VslLiteral};
use proptest::prelude::*;
use proptest::sample::select;

pub const FLIGHT: &str = include_str!("../../fixtures/flight_service.model");
pub const MAPPING: &str = include_str!("../../fixtures/mapping_coverage.model");

pub fn dec(s: &str) -> nfpc_core::Decimal {
    s.parse().unwrap()
}

// ---------------------------------------------------------------- XML views

pub fn parse_xml(text: &str) -> roxmltree::Document<'_> {
    roxmltree::Document::parse_with_options(
        text,
        roxmltree::ParsingOptions {
            allow_dtd: true,
            ..Default::default()
        },
    )
    .unwrap_or_else(|e| panic!("not well-formed: {e}\n{text}"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApplyView {
    pub function_id: String,
    pub value_type: String,
    pub literal: String,
    pub attribute_id: String,
    pub designator_type: String,
}

fn child<'a, 'i>(n: roxmltree::Node<'a, 'i>, name: &str) -> roxmltree::Node<'a, 'i> {
    n.children()
        .find(|c| c.is_element() && c.tag_name().name() == name)
        .unwrap_or_else(|| panic!("missing <{name}>"))
}

pub fn apply_view(apply: roxmltree::Node<'_, '_>) -> ApplyView {
    let value = child(apply, "AttributeValue");
    let designator = child(apply, "ResourceAttributeDesignator");
    ApplyView {
        function_id: apply.attribute("FunctionId").unwrap().to_string(),
        value_type: value.attribute("DataType").unwrap().to_string(),
        literal: value.text().unwrap_or("").to_string(),
        attribute_id: designator.attribute("AttributeId").unwrap().to_string(),
        designator_type: designator.attribute("DataType").unwrap().to_string(),
    }
}

pub fn applies(doc: &roxmltree::Document<'_>) -> Vec<ApplyView> {
    doc.descendants()
        .filter(|n| n.is_element() && n.tag_name().name() == "Apply")
        .map(apply_view)
        .collect()
}

/// Policy id → alternatives → Apply views, in document order.
pub fn policy_tree(doc: &roxmltree::Document<'_>) -> Vec<(String, Vec<Vec<ApplyView>>)> {
    let wsp = nfpc_core::emit::WSP_NS;
    let wsu = nfpc_core::emit::WSU_NS;
    doc.descendants()
        .filter(|n| n.has_tag_name((wsp, "Policy")))
        .map(|p| {
            let id = p.attribute((wsu, "Id")).unwrap().to_string();
            let exactly_one = p
                .children()
                .find(|c| c.has_tag_name((wsp, "ExactlyOne")))
                .expect("ExactlyOne");
            let alts = exactly_one
                .children()
                .filter(|c| c.is_element())
                .map(|all| {
                    assert!(all.has_tag_name((wsp, "All")));
                    all.children()
                        .filter(|c| c.is_element())
                        .map(apply_view)
                        .collect()
                })
                .collect();
            (id, alts)
        })
        .collect()
}

/// Canonical structure: (element name with namespace, sorted attributes,
/// trimmed text, children).
#[derive(Debug, PartialEq, Eq)]
pub struct Canon {
    pub name: (Option<String>, String),
    pub attrs: Vec<(Option<String>, String, String)>,
    pub text: String,
    pub children: Vec<Canon>,
}

pub fn canon(n: roxmltree::Node<'_, '_>) -> Canon {
    let mut attrs: Vec<_> = n
        .attributes()
        .map(|a| {
            (
                a.namespace().map(str::to_string),
                a.name().to_string(),
                a.value().to_string(),
            )
        })
        .collect();
    attrs.sort();
    let text = n
        .children()
        .filter(|c| c.is_text())
        .map(|c| c.text().unwrap_or(""))
        .collect::<String>()
        .trim()
        .to_string();
    Canon {
        name: (
            n.tag_name().namespace().map(str::to_string),
            n.tag_name().name().to_string(),
        ),
        attrs,
        text,
        children: n.children().filter(|c| c.is_element()).map(canon).collect(),
    }
}

/// Element paths `Item/ItemPart` declared by the emitted XSD.
pub fn xsd_paths(xsd: &str) -> Vec<String> {
    let doc = parse_xml(xsd);
    let xs = nfpc_core::emit::XSD_NS;
    let schema = doc.root_element();
    let mut out = Vec::new();
    for el in schema
        .children()
        .filter(|c| c.has_tag_name((xs, "element")))
    {
        let name = el.attribute("name").unwrap();
        let ty = el.attribute("type").unwrap();
        let local = ty.split_once(':').map(|(_, l)| l).unwrap_or(ty);
        let ct = schema
            .children()
            .find(|c| c.has_tag_name((xs, "complexType")) && c.attribute("name") == Some(local))
            .unwrap_or_else(|| panic!("complex type {local} not declared"));
        for part in ct.descendants().filter(|c| c.has_tag_name((xs, "element"))) {
            out.push(format!("{name}/{}", part.attribute("name").unwrap()));
        }
    }
    out
}

// --------------------------------------------------------------- generators

/// Arbitrary (possibly ill-typed) expression with arbitrary names and
/// literals; canonical by construction.
pub fn arb_literal() -> impl Strategy<Value = VslLiteral> {
    let num = "-?[0-9]{1,4}(\\.[0-9]{1,4})?";
    prop_oneof![
        num.prop_map(|s| VslLiteral::Number(dec(&s))),
        "[ -~]{0,8}".prop_map(VslLiteral::Text),
        "\\PC{0,4}".prop_map(VslLiteral::Text),
        any::<bool>().prop_map(VslLiteral::Bool),
        (num, "[ -~]{1,4}").prop_map(|(v, u)| VslLiteral::Tuple {
            value: dec(&v),
            unit: u
        }),
    ]
}

pub fn arb_name() -> impl Strategy<Value = String> {
    "[A-Za-z_][A-Za-z0-9_]{0,7}".prop_filter("reserved word", |s| {
        !matches!(s.as_str(), "and" | "or" | "true" | "false")
    })
}

pub fn arb_expr() -> impl Strategy<Value = VslExpression> {
    let leaf = (arb_name(), select(RelOp::ALL.to_vec()), arb_literal())
        .prop_map(|(n, op, v)| VslExpression::Rel(Rel::new(n, op, v)));
    leaf.prop_recursive(4, 32, 4, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..5).prop_map(VslExpression::or),
            prop::collection::vec(inner, 2..5).prop_map(VslExpression::and),
        ]
    })
}

/// NFP types used by the typed generators, with the value/unit domains
/// (two values each) the exhaustive checks enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoolType {
    Real,
    Integer,
    Text,
    Flag,
    Duration,
}

impl PoolType {
    pub const ALL: [PoolType; 5] = [
        PoolType::Real,
        PoolType::Integer,
        PoolType::Text,
        PoolType::Flag,
        PoolType::Duration,
    ];

    pub fn type_name(self) -> &'static str {
        match self {
            PoolType::Real => "NFP_Real",
            PoolType::Integer => "NFP_Integer",
            PoolType::Text => "NFP_String",
            PoolType::Flag => "NFP_Boolean",
            PoolType::Duration => "NFP_Duration",
        }
    }

    pub fn value_domain(self) -> [Value; 2] {
        match self {
            PoolType::Real | PoolType::Duration => {
                [Value::Number(dec("1")), Value::Number(dec("2.5"))]
            }
            PoolType::Integer => [Value::Number(dec("1")), Value::Number(dec("2"))],
            PoolType::Text => [Value::Text("a".into()), Value::Text("b".into())],
            PoolType::Flag => [Value::Bool(false), Value::Bool(true)],
        }
    }

    pub fn unit_domain(self) -> Option<[Value; 2]> {
        match self {
            PoolType::Real | PoolType::Integer | PoolType::Duration => {
                Some([Value::Text("ms".into()), Value::Text("s".into())])
            }
            PoolType::Text | PoolType::Flag => None,
        }
    }

    /// Well-typed relations for this type.
    pub fn arb_rel(self, name: String) -> BoxedStrategy<Rel> {
        let ordered = select(RelOp::ALL.to_vec());
        let equality = select(vec![RelOp::Eq, RelOp::Ne]);
        match self {
            PoolType::Real | PoolType::Integer | PoolType::Duration => {
                let nums = if self == PoolType::Integer {
                    vec!["1", "2", "0"]
                } else {
                    vec!["1", "1.0", "2.5", "2.50", "0.75"]
                };
                let lit = prop_oneof![
                    select(nums.clone()).prop_map(|n| VslLiteral::Number(dec(n))),
                    (select(nums), select(vec!["ms", "s"])).prop_map(|(n, u)| VslLiteral::Tuple {
                        value: dec(n),
                        unit: u.to_string()
                    }),
                ];
                (ordered, lit)
                    .prop_map(move |(op, v)| Rel::new(name.clone(), op, v))
                    .boxed()
            }
            PoolType::Text => (equality, select(vec!["a", "b", "c"]))
                .prop_map(move |(op, s)| Rel::new(name.clone(), op, VslLiteral::Text(s.into())))
                .boxed(),
            PoolType::Flag => (equality, any::<bool>())
                .prop_map(move |(op, b)| Rel::new(name.clone(), op, VslLiteral::Bool(b)))
                .boxed(),
        }
    }
}

/// Builds an and/or tree over `leaves` following `choices`
/// (`(is_or, split)` per internal node).
pub fn shape(leaves: &[Rel], choices: &[(bool, usize)]) -> VslExpression {
    if leaves.len() == 1 {
        return VslExpression::Rel(leaves[0].clone());
    }
    let (is_or, split) = choices.first().copied().unwrap_or((false, 0));
    let rest = choices.get(1..).unwrap_or(&[]);
    let at = split % (leaves.len() - 1) + 1;
    let half = rest.len() / 2;
    let left = shape(&leaves[..at], &rest[..half]);
    let right = shape(&leaves[at..], &rest[half..]);
    if is_or {
        VslExpression::or([left, right])
    } else {
        VslExpression::and([left, right])
    }
}

/// A typed NFP pool and a random constraint over it (1..=4 leaves).
#[derive(Debug, Clone)]
pub struct TypedConstraint {
    pub nfps: Vec<(String, PoolType)>,
    pub kind: ConstraintKind,
    pub expression: VslExpression,
}

impl TypedConstraint {
    pub fn model_text(&self) -> String {
        let mut s = String::from("service S {\n");
        for (n, t) in &self.nfps {
            s.push_str(&format!("  nfp {n} : {}\n", t.type_name()));
        }
        s.push_str(&format!(
            "  constraint {} C : {}\n}}\n",
            self.kind,
            nfpc_core::vsl::print_vsl(&self.expression)
        ));
        s
    }

    pub fn pool_type(&self, nfp: &str) -> PoolType {
        self.nfps.iter().find(|(n, _)| n == nfp).unwrap().1
    }
}

pub fn arb_typed_constraint() -> impl Strategy<Value = TypedConstraint> {
    let kind = select(vec![
        ConstraintKind::Required,
        ConstraintKind::Offered,
        ConstraintKind::Contract,
    ]);
    (
        prop::collection::vec(select(PoolType::ALL.to_vec()), 1..=4),
        kind,
    )
        .prop_flat_map(|(types, kind)| {
            let nfps: Vec<(String, PoolType)> = types
                .iter()
                .enumerate()
                .map(|(i, t)| (format!("P{i}"), *t))
                .collect();
            let leaf_choices: Vec<BoxedStrategy<Rel>> =
                nfps.iter().map(|(n, t)| t.arb_rel(n.clone())).collect();
            let leaf = proptest::strategy::Union::new(leaf_choices);
            (
                Just(nfps),
                Just(kind),
                prop::collection::vec(leaf, 1..=4),
                prop::collection::vec((any::<bool>(), 0usize..4), 3),
            )
        })
        .prop_map(|(nfps, kind, leaves, choices)| TypedConstraint {
            nfps,
            kind,
            expression: shape(&leaves, &choices),
        })
}

type RawConstraint = (
    ConstraintKind,
    Vec<prop::sample::Index>,
    Vec<(bool, usize)>,
    u64,
);
type RawSubject = (
    Vec<(PoolType, Option<SemanticAnnotation>)>,
    Vec<RawConstraint>,
);

fn arb_subject() -> impl Strategy<Value = RawSubject> {
    let nfp = (
        select(PoolType::ALL.to_vec()),
        prop::option::of(arb_semantic()),
    );
    let kind = select(vec![
        ConstraintKind::Required,
        ConstraintKind::Offered,
        ConstraintKind::Contract,
    ]);
    let constraint = (
        kind,
        prop::collection::vec(any::<prop::sample::Index>(), 1..=4),
        prop::collection::vec((any::<bool>(), 0usize..4), 3),
        any::<u64>(),
    );
    (
        prop::collection::vec(nfp, 0..4),
        prop::collection::vec(constraint, 0..3),
    )
}

struct Names(usize);

impl Names {
    /// Unique within a model; `base` keeps some randomness in the text.
    fn fresh(&mut self, base: &str) -> String {
        self.0 += 1;
        format!("{base}{}", self.0)
    }
}

fn build_subject(raw: RawSubject, names: &mut Names) -> (Vec<NfpDecl>, Vec<ConstraintDecl>) {
    let (nfps, constraints) = raw;
    let typed: Vec<(NfpDecl, PoolType)> = nfps
        .into_iter()
        .map(|(t, semantic)| {
            let decl = NfpDecl {
                name: names.fresh("N"),
                type_name: t.type_name().to_string(),
                semantic,
            };
            (decl, t)
        })
        .collect();
    let mut out = Vec::new();
    if !typed.is_empty() {
        for (kind, picks, choices, seed) in constraints {
            let leaves: Vec<Rel> = picks
                .iter()
                .enumerate()
                .map(|(i, ix)| {
                    let (d, t) = &typed[ix.index(typed.len())];
                    pick_rel(*t, &d.name, seed.wrapping_add(i as u64 * 7919))
                })
                .collect();
            out.push(ConstraintDecl {
                kind,
                name: names.fresh("C"),
                expression: shape(&leaves, &choices),
            });
        }
    }
    (typed.into_iter().map(|(d, _)| d).collect(), out)
}

/// Valid, well-typed model with 1..=3 services.
pub fn arb_model() -> impl Strategy<Value = ServiceModel> {
    let endpoint = (arb_name(), prop::option::of(arb_name()), arb_subject());
    let service = (
        arb_name(),
        prop::option::of(arb_name()),
        arb_subject(),
        prop::collection::vec(endpoint, 0..3),
    );
    prop::collection::vec(service, 1..=3).prop_map(|raw| {
        let mut names = Names(0);
        let services = raw
            .into_iter()
            .map(|(name, interface, subject, eps)| {
                let name = names.fresh(&name);
                let (nfps, constraints) = build_subject(subject, &mut names);
                let endpoints = eps
                    .into_iter()
                    .map(|(ename, binding, subject)| {
                        let name = names.fresh(&ename);
                        let (nfps, constraints) = build_subject(subject, &mut names);
                        EndpointDecl {
                            name,
                            binding,
                            nfps,
                            constraints,
                        }
                    })
                    .collect();
                ServiceDecl {
                    name,
                    interface,
                    nfps,
                    constraints,
                    endpoints,
                }
            })
            .collect();
        ServiceModel { services }
    })
}

fn arb_semantic() -> impl Strategy<Value = SemanticAnnotation> {
    let uri = "(http|urn|https):[a-z0-9/#._-]{1,12}";
    (uri, prop::option::of(uri), prop::option::of(uri)).prop_map(|(m, l, f)| SemanticAnnotation {
        model_reference: m,
        lowering_schema: l,
        lifting_schema: f,
    })
}

/// Deterministic well-typed relation from a seed.
pub fn pick_rel(t: PoolType, name: &str, seed: u64) -> Rel {
    let ops = RelOp::ALL;
    let pick = |n: u64, k: usize| (n % k as u64) as usize;
    match t {
        PoolType::Real | PoolType::Integer | PoolType::Duration => {
            let nums: &[&str] = if t == PoolType::Integer {
                &["1", "2", "0"]
            } else {
                &["1", "1.0", "2.5", "0.10"]
            };
            let v = dec(nums[pick(seed >> 3, nums.len())]);
            let lit = if seed & (1 << 8) == 0 {
                VslLiteral::Number(v)
            } else {
                VslLiteral::Tuple {
                    value: v,
                    unit: ["ms", "s"][pick(seed >> 9, 2)].to_string(),
                }
            };
            Rel::new(name, ops[pick(seed, 6)], lit)
        }
        PoolType::Text => Rel::new(
            name,
            ops[pick(seed, 2)],
            VslLiteral::Text(["a", "b & <c>", "\"q\""][pick(seed >> 3, 3)].to_string()),
        ),
        PoolType::Flag => Rel::new(name, ops[pick(seed, 2)], VslLiteral::Bool(seed & 8 == 0)),
    }
}
