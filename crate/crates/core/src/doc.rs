//! JSON documents for groupoids, homomorphisms, bihomomorphisms, norms and
//! partitions. Arrows and objects are referred to by label.

use std::collections::HashMap;

use indexmap::IndexMap;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::congruence::{CongruenceError, Partition};
use crate::groupoid::{ArrowId, FiniteGroupoid, GroupoidError, Limits, RawGroupoid};
use crate::hom::{AbelianGroupSig, GroupoidHom, HomError, HomValues};
use crate::norm::{NormError, NormTable, PolarizedForm};
use crate::scalar::{GaussianRational, Rational, SqValue};
use crate::sip::{sip_from_thetas, validate_bihom, Bihom, Field, SipError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error("expected a {expected} document, found a {found} document")]
    WrongKind {
        expected: &'static str,
        found: &'static str,
    },
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> DocError {
    DocError::Schema {
        path: path.into(),
        message: message.into(),
    }
}

/// Failure to turn a parsed document into a verified structure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoadError {
    #[error(transparent)]
    Doc(#[from] DocError),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Sip(#[from] SipError),
    #[error(transparent)]
    Norm(#[from] NormError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDecl {
    pub id: String,
    pub src: String,
    pub dst: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupoidDocument {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowDecl>,
    /// `[f, g, h]` means `fg = h`.
    pub compose: Vec<[String; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<IndexMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity: Option<IndexMap<String, String>>,
}

/// A scalar: a rational (`"p/q"` or an integer) or `{"re": .., "im": ..}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarDoc {
    Complex(GaussianRational),
    Real(Rational),
}

impl ScalarDoc {
    pub fn value(&self) -> GaussianRational {
        match self {
            ScalarDoc::Complex(z) => z.clone(),
            ScalarDoc::Real(r) => GaussianRational::real(r.clone()),
        }
    }

    pub fn from_value(z: &GaussianRational) -> Self {
        if z.is_real() {
            ScalarDoc::Real(z.re.clone())
        } else {
            ScalarDoc::Complex(z.clone())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementDoc {
    Scalar(ScalarDoc),
    Tuple(Vec<ScalarDoc>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomDocument {
    pub target: AbelianGroupSig,
    pub values: IndexMap<String, ElementDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BihomDocument {
    Thetas(Vec<HomDocument>),
    Table {
        field: Field,
        table: IndexMap<String, IndexMap<String, ScalarDoc>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormDocument {
    pub sq: IndexMap<String, SqValue>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionDocument {
    pub classes: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Groupoid(GroupoidDocument),
    Hom(HomDocument),
    Bihom(BihomDocument),
    Norm(NormDocument),
    Partition(PartitionDocument),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Groupoid(_) => "groupoid",
            Document::Hom(_) => "hom",
            Document::Bihom(_) => "bihom",
            Document::Norm(_) => "norm",
            Document::Partition(_) => "partition",
        }
    }

    pub fn to_json(&self) -> String {
        let mut map = serde_json::Map::new();
        map.insert("kind".into(), Value::String(self.kind().into()));
        let body = match self {
            Document::Groupoid(d) => serde_json::to_value(d),
            Document::Hom(d) => serde_json::to_value(d),
            Document::Bihom(d) => Ok(bihom_body(d)),
            Document::Norm(d) => serde_json::to_value(d),
            Document::Partition(d) => serde_json::to_value(d),
        }
        .expect("documents serialize");
        if let Value::Object(fields) = body {
            map.extend(fields);
        }
        let mut text = serde_json::to_string_pretty(&Value::Object(map)).expect("json value");
        text.push('\n');
        text
    }
}

fn bihom_body(d: &BihomDocument) -> Value {
    match d {
        BihomDocument::Thetas(thetas) => serde_json::json!({ "thetas": thetas }),
        BihomDocument::Table { field, table } => serde_json::json!({ "field": field, "table": table }),
    }
}

fn kind_name(kind: &str) -> Option<&'static str> {
    ["groupoid", "hom", "bihom", "norm", "partition"]
        .into_iter()
        .find(|k| *k == kind)
}

fn infer_kind(fields: &serde_json::Map<String, Value>) -> Option<&'static str> {
    [
        ("objects", "groupoid"),
        ("values", "hom"),
        ("table", "bihom"),
        ("thetas", "bihom"),
        ("sq", "norm"),
        ("classes", "partition"),
    ]
    .into_iter()
    .find(|(key, _)| fields.contains_key(*key))
    .map(|(_, kind)| kind)
}

fn typed<T: DeserializeOwned>(value: Value, prefix: &str) -> Result<T, DocError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let inner = e.path().to_string();
        let path = match (prefix.is_empty(), inner.as_str()) {
            (true, _) => inner.clone(),
            (false, ".") => prefix.to_string(),
            (false, _) => format!("{prefix}.{inner}"),
        };
        schema(path, e.into_inner().to_string())
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BihomFields {
    #[serde(default)]
    thetas: Option<Vec<Value>>,
    #[serde(default)]
    field: Option<Field>,
    #[serde(default)]
    table: Option<IndexMap<String, IndexMap<String, ScalarDoc>>>,
}

fn parse_value(value: Value, prefix: &str) -> Result<Document, DocError> {
    let root = if prefix.is_empty() { "$" } else { prefix };
    let Value::Object(mut fields) = value else {
        return Err(schema(root, "expected a JSON object"));
    };
    let kind = match fields.remove("kind") {
        Some(Value::String(k)) => {
            kind_name(&k).ok_or_else(|| schema(join(prefix, "kind"), format!("unknown document kind '{k}'")))?
        }
        Some(_) => return Err(schema(join(prefix, "kind"), "expected a string")),
        None => infer_kind(&fields).ok_or_else(|| schema(root, "cannot tell the document kind"))?,
    };
    let value = Value::Object(fields);
    let doc = match kind {
        "groupoid" => {
            let d: GroupoidDocument = typed(value, prefix)?;
            d.resolve(prefix)?;
            Document::Groupoid(d)
        }
        "hom" => Document::Hom(typed(value, prefix)?),
        "bihom" => {
            let f: BihomFields = typed(value, prefix)?;
            match (f.thetas, f.table) {
                (Some(thetas), None) => {
                    if f.field.is_some() {
                        return Err(schema(join(prefix, "field"), "not allowed next to thetas"));
                    }
                    let mut homs = Vec::with_capacity(thetas.len());
                    for (i, t) in thetas.into_iter().enumerate() {
                        match parse_value(t, &join(prefix, &format!("thetas[{i}]")))? {
                            Document::Hom(h) => homs.push(h),
                            other => {
                                return Err(DocError::WrongKind {
                                    expected: "hom",
                                    found: other.kind(),
                                })
                            }
                        }
                    }
                    Document::Bihom(BihomDocument::Thetas(homs))
                }
                (None, Some(table)) => Document::Bihom(BihomDocument::Table {
                    field: f.field.ok_or_else(|| schema(join(prefix, "field"), "required with table"))?,
                    table,
                }),
                _ => return Err(schema(root, "exactly one of thetas and table required")),
            }
        }
        "norm" => Document::Norm(typed(value, prefix)?),
        _ => Document::Partition(typed(value, prefix)?),
    };
    Ok(doc)
}

fn join(prefix: &str, key: &str) -> String {
    if prefix.is_empty() {
        key.to_string()
    } else {
        format!("{prefix}.{key}")
    }
}

pub fn parse_document(text: &str) -> Result<Document, DocError> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        let full = e.to_string();
        let suffix = format!(" at line {} column {}", e.line(), e.column());
        DocError::Syntax {
            line: e.line(),
            column: e.column(),
            message: full.strip_suffix(&suffix).unwrap_or(&full).to_string(),
        }
    })?;
    parse_value(value, "")
}

macro_rules! expect_kind {
    ($name:ident, $variant:ident, $ty:ty, $label:literal) => {
        pub fn $name(text: &str) -> Result<$ty, DocError> {
            match parse_document(text)? {
                Document::$variant(d) => Ok(d),
                other => Err(DocError::WrongKind {
                    expected: $label,
                    found: other.kind(),
                }),
            }
        }
    };
}

expect_kind!(parse_groupoid, Groupoid, GroupoidDocument, "groupoid");
expect_kind!(parse_hom, Hom, HomDocument, "hom");
expect_kind!(parse_bihom, Bihom, BihomDocument, "bihom");
expect_kind!(parse_norm, Norm, NormDocument, "norm");
expect_kind!(parse_partition, Partition, PartitionDocument, "partition");

fn index_labels<'a>(labels: impl Iterator<Item = &'a String>, path: &str) -> Result<HashMap<&'a str, usize>, DocError> {
    let mut map = HashMap::new();
    for (i, label) in labels.enumerate() {
        if map.insert(label.as_str(), i).is_some() {
            return Err(schema(format!("{path}[{i}]"), format!("duplicate label '{label}'")));
        }
    }
    Ok(map)
}

fn lookup(map: &HashMap<&str, usize>, label: &str, path: String, what: &str) -> Result<usize, DocError> {
    map.get(label)
        .copied()
        .ok_or_else(|| schema(path, format!("unknown {what} '{label}'")))
}

fn arrow_index(g: &FiniteGroupoid, label: &str, path: String) -> Result<ArrowId, DocError> {
    g.arrow_by_label(label)
        .ok_or_else(|| schema(path, format!("unknown arrow '{label}'")))
}

impl GroupoidDocument {
    fn resolve(&self, prefix: &str) -> Result<RawGroupoid, DocError> {
        let p = |s: String| join(prefix, &s);
        if self.objects.is_empty() {
            return Err(schema(p("objects".into()), "nonempty required"));
        }
        let objects = index_labels(self.objects.iter(), &p("objects".into()))?;
        let arrows = index_labels(self.arrows.iter().map(|a| &a.id), &p("arrows".into()))?;
        let mut source = Vec::with_capacity(self.arrows.len());
        let mut target = Vec::with_capacity(self.arrows.len());
        for (i, a) in self.arrows.iter().enumerate() {
            source.push(lookup(&objects, &a.src, p(format!("arrows[{i}].src")), "object")?);
            target.push(lookup(&objects, &a.dst, p(format!("arrows[{i}].dst")), "object")?);
        }
        let mut compose = Vec::with_capacity(self.compose.len());
        for (i, [f, g, h]) in self.compose.iter().enumerate() {
            let path = |j: usize| p(format!("compose[{i}][{j}]"));
            let (fi, gi, hi) = (
                lookup(&arrows, f, path(0), "arrow")?,
                lookup(&arrows, g, path(1), "arrow")?,
                lookup(&arrows, h, path(2), "arrow")?,
            );
            if target[fi] != source[gi] {
                return Err(schema(
                    p(format!("compose[{i}]")),
                    format!("target of '{f}' is not the source of '{g}'"),
                ));
            }
            compose.push((fi, gi, hi));
        }
        let inverse = match &self.inverse {
            None => None,
            Some(map) => {
                let mut inv = vec![usize::MAX; self.arrows.len()];
                for (k, v) in map {
                    let path = p(format!("inverse.{k}"));
                    let key = lookup(&arrows, k, path.clone(), "arrow")?;
                    inv[key] = lookup(&arrows, v, path, "arrow")?;
                }
                if let Some(i) = inv.iter().position(|&x| x == usize::MAX) {
                    return Err(schema(p("inverse".into()), format!("missing arrow '{}'", self.arrows[i].id)));
                }
                Some(inv)
            }
        };
        let identity = match &self.identity {
            None => None,
            Some(map) => {
                let mut ids = vec![usize::MAX; self.objects.len()];
                for (k, v) in map {
                    let path = p(format!("identity.{k}"));
                    let key = lookup(&objects, k, path.clone(), "object")?;
                    ids[key] = lookup(&arrows, v, path, "arrow")?;
                }
                if let Some(i) = ids.iter().position(|&x| x == usize::MAX) {
                    return Err(schema(p("identity".into()), format!("missing object '{}'", self.objects[i])));
                }
                Some(ids)
            }
        };
        Ok(RawGroupoid {
            object_labels: self.objects.clone(),
            arrow_labels: self.arrows.iter().map(|a| a.id.clone()).collect(),
            source,
            target,
            compose,
            inverse,
            identity,
        })
    }

    pub fn to_raw(&self) -> Result<RawGroupoid, DocError> {
        self.resolve("")
    }

    pub fn to_groupoid(&self, limits: Limits) -> Result<FiniteGroupoid, LoadError> {
        Ok(FiniteGroupoid::from_raw_with_limits(self.to_raw()?, limits)?)
    }

    pub fn from_groupoid(g: &FiniteGroupoid) -> Self {
        let label = |a: ArrowId| g.arrow_label(a).to_string();
        let mut compose = Vec::new();
        for x in g.arrows() {
            for y in g.arrows() {
                if let Some(xy) = g.compose(x, y) {
                    compose.push([label(x), label(y), label(xy)]);
                }
            }
        }
        GroupoidDocument {
            objects: g.object_labels().to_vec(),
            arrows: g
                .arrows()
                .map(|a| ArrowDecl {
                    id: label(a),
                    src: g.object_label(g.source(a)).to_string(),
                    dst: g.object_label(g.target(a)).to_string(),
                })
                .collect(),
            compose,
            inverse: Some(g.arrows().map(|a| (label(a), label(g.inverse_of(a)))).collect()),
            identity: Some(
                g.objects()
                    .map(|p| (g.object_label(p).to_string(), label(g.identity_at(p))))
                    .collect(),
            ),
        }
    }
}

impl HomDocument {
    pub fn to_values(&self, g: &FiniteGroupoid) -> Result<HomValues, DocError> {
        let mut values = vec![None; g.arrow_count()];
        for (label, element) in &self.values {
            let path = format!("values.{label}");
            let a = arrow_index(g, label, path.clone())?;
            let raw: Vec<GaussianRational> = match element {
                ElementDoc::Scalar(s) => vec![s.value()],
                ElementDoc::Tuple(t) => t.iter().map(ScalarDoc::value).collect(),
            };
            let element = self
                .target
                .element(raw)
                .map_err(|e| schema(path, e.to_string()))?;
            values[a.0] = Some(element);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| schema("values", format!("missing arrow '{}'", g.arrow_label(ArrowId(i))))))
            .collect::<Result<_, _>>()?;
        Ok(HomValues {
            target: self.target.clone(),
            values,
        })
    }

    pub fn to_hom<'g>(&self, g: &'g FiniteGroupoid) -> Result<GroupoidHom<'g>, LoadError> {
        Ok(GroupoidHom::new(g, self.to_values(g)?)?)
    }

    pub fn from_values(g: &FiniteGroupoid, hom: &HomValues) -> Self {
        let values = g
            .arrows()
            .map(|a| {
                let parts = hom.values[a.0].components();
                let element = if parts.len() == 1 {
                    ElementDoc::Scalar(ScalarDoc::from_value(&parts[0]))
                } else {
                    ElementDoc::Tuple(parts.iter().map(ScalarDoc::from_value).collect())
                };
                (g.arrow_label(a).to_string(), element)
            })
            .collect();
        HomDocument {
            target: hom.target.clone(),
            values,
        }
    }
}

impl BihomDocument {
    pub fn to_bihom<'g>(&self, g: &'g FiniteGroupoid) -> Result<Bihom<'g>, LoadError> {
        match self {
            BihomDocument::Thetas(docs) => {
                let thetas = docs.iter().map(|d| d.to_hom(g)).collect::<Result<Vec<_>, _>>()?;
                Ok(sip_from_thetas(thetas)?)
            }
            BihomDocument::Table { field, table } => {
                let n = g.arrow_count();
                let mut cells = vec![None; n * n];
                for (row_label, row) in table {
                    let r = arrow_index(g, row_label, format!("table.{row_label}"))?;
                    for (col_label, value) in row {
                        let c = arrow_index(g, col_label, format!("table.{row_label}.{col_label}"))?;
                        cells[r.0 * n + c.0] = Some(value.value());
                    }
                }
                let cells = cells
                    .into_iter()
                    .enumerate()
                    .map(|(i, v)| {
                        v.ok_or_else(|| {
                            schema(
                                format!("table.{}", g.arrow_label(ArrowId(i / n))),
                                format!("missing entry for '{}'", g.arrow_label(ArrowId(i % n))),
                            )
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(validate_bihom(g, *field, cells)?)
            }
        }
    }

    pub fn from_bihom(b: &Bihom<'_>) -> Self {
        let g = b.groupoid();
        let table = g
            .arrows()
            .map(|x| {
                let row = g
                    .arrows()
                    .map(|y| (g.arrow_label(y).to_string(), ScalarDoc::from_value(b.value(x, y))))
                    .collect();
                (g.arrow_label(x).to_string(), row)
            })
            .collect();
        BihomDocument::Table {
            field: b.field(),
            table,
        }
    }

    /// The defined entries of a polarized form; only complete tables load.
    pub fn from_polarized(form: &PolarizedForm<'_>) -> Self {
        let g = form.groupoid();
        let table = g
            .arrows()
            .map(|x| {
                let row = g
                    .arrows()
                    .filter_map(|y| {
                        form.value(x, y)
                            .map(|v| (g.arrow_label(y).to_string(), ScalarDoc::Real(v.clone())))
                    })
                    .collect();
                (g.arrow_label(x).to_string(), row)
            })
            .collect();
        BihomDocument::Table {
            field: Field::Real,
            table,
        }
    }
}

impl NormDocument {
    pub fn to_norm<'g>(&self, g: &'g FiniteGroupoid) -> Result<NormTable<'g>, LoadError> {
        let mut sq = vec![None; g.arrow_count()];
        for (label, value) in &self.sq {
            sq[arrow_index(g, label, format!("sq.{label}"))?.0] = Some(value.clone());
        }
        let sq = sq
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| schema("sq", format!("missing arrow '{}'", g.arrow_label(ArrowId(i))))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(NormTable::new(g, sq)?)
    }

    pub fn from_norm(n: &NormTable<'_>) -> Self {
        let g = n.groupoid();
        NormDocument {
            sq: g
                .arrows()
                .map(|a| (g.arrow_label(a).to_string(), n.sq(a).clone()))
                .collect(),
        }
    }
}

impl PartitionDocument {
    pub fn to_partition(&self, g: &FiniteGroupoid) -> Result<Partition, DocError> {
        let classes = self
            .classes
            .iter()
            .enumerate()
            .map(|(i, class)| {
                class
                    .iter()
                    .enumerate()
                    .map(|(j, label)| arrow_index(g, label, format!("classes[{i}][{j}]")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::from_classes(g.arrow_count(), classes).map_err(|e: CongruenceError| schema("classes", e.to_string()))
    }

    pub fn from_partition(g: &FiniteGroupoid, p: &Partition) -> Self {
        PartitionDocument {
            classes: p
                .classes()
                .iter()
                .map(|c| c.iter().map(|a| g.arrow_label(*a).to_string()).collect())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use proptest::prelude::*;

    const P2: &str = r#"{
  "kind": "groupoid",
  "objects": ["0", "1"],
  "arrows": [
    {"id": "e0", "src": "0", "dst": "0"},
    {"id": "e1", "src": "1", "dst": "1"},
    {"id": "a", "src": "0", "dst": "1"},
    {"id": "b", "src": "1", "dst": "0"}
  ],
  "compose": [
    ["e0", "e0", "e0"], ["e0", "a", "a"], ["e1", "e1", "e1"], ["e1", "b", "b"],
    ["a", "e1", "a"], ["a", "b", "e0"], ["b", "e0", "b"], ["b", "a", "e1"]
  ]
}"#;

    #[test]
    fn p2_document_parses() {
        let d = parse_groupoid(P2).unwrap();
        assert_eq!(d.objects.len(), 2);
        assert_eq!(d.arrows.len(), 4);
        let g = d.to_groupoid(Limits::default()).unwrap();
        assert_eq!(g.inverse_of(g.arrow_by_label("a").unwrap()), g.arrow_by_label("b").unwrap());
    }

    #[test]
    fn bad_compose_triple_is_a_schema_error() {
        let text = P2.replace(r#"["a", "b", "e0"]"#, r#"["a", "a", "e0"]"#);
        assert_eq!(
            parse_document(&text).unwrap_err(),
            schema("compose[5]", "target of 'a' is not the source of 'a'")
        );
    }

    #[test]
    fn empty_objects_rejected() {
        let err = parse_document(r#"{"objects": [], "arrows": [], "compose": []}"#).unwrap_err();
        assert_eq!(err.to_string(), "objects: nonempty required");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_document("{\n  \"objects\": [,]\n}").unwrap_err();
        assert!(matches!(err, DocError::Syntax { line: 2, .. }), "{err:?}");
    }

    #[test]
    fn schema_errors_carry_paths() {
        let text = P2.replace(r#""src": "1", "dst": "0""#, r#""src": 1, "dst": "0""#);
        match parse_document(&text).unwrap_err() {
            DocError::Schema { path, .. } => assert_eq!(path, "arrows[3].src"),
            other => panic!("{other:?}"),
        }
        let text = P2.replace(r#""id": "b", "src": "1", "dst": "0""#, r#""id": "b", "src": "1", "dst": "7""#);
        assert_eq!(parse_document(&text).unwrap_err(), schema("arrows[3].dst", "unknown object '7'"));
        let err = parse_document(r#"{"kind": "norm", "sq": {"a": "-1"}}"#).unwrap_err();
        assert!(matches!(err, DocError::Schema { ref path, .. } if path == "sq.a"), "{err:?}");
    }

    #[test]
    fn unknown_kind_and_wrong_kind() {
        assert!(parse_document(r#"{"kind": "ring"}"#).is_err());
        assert_eq!(
            parse_hom(P2).unwrap_err(),
            DocError::WrongKind { expected: "hom", found: "groupoid" }
        );
    }

    #[test]
    fn hom_document_round_trip() {
        let fam = families::complex_pair(2).unwrap();
        for hom in &fam.homs {
            let doc = HomDocument::from_values(&fam.groupoid, hom);
            let text = Document::Hom(doc.clone()).to_json();
            let back = parse_hom(&text).unwrap();
            assert_eq!(back, doc);
            assert_eq!(&back.to_values(&fam.groupoid).unwrap(), hom);
        }
    }

    #[test]
    fn hom_document_errors() {
        let g = parse_groupoid(P2).unwrap().to_groupoid(Limits::default()).unwrap();
        let doc = parse_hom(r#"{"target": ["int"], "values": {"e0": 0, "e1": 0, "a": -1}}"#).unwrap();
        assert_eq!(doc.to_values(&g).unwrap_err(), schema("values", "missing arrow 'b'"));
        let doc = parse_hom(r#"{"target": ["int"], "values": {"e0": 0, "e1": 0, "a": "1/2", "b": 1}}"#).unwrap();
        assert!(matches!(doc.to_values(&g), Err(DocError::Schema { path, .. }) if path == "values.a"));
        let doc = parse_hom(r#"{"target": ["int"], "values": {"e0": 0, "e1": 0, "a": 1, "b": 1}}"#).unwrap();
        assert!(matches!(doc.to_hom(&g), Err(LoadError::Hom(HomError::NotAdditive { .. }))));
    }

    #[test]
    fn bihom_documents() {
        let fam = families::pair(2).unwrap();
        let g = &fam.groupoid;
        let theta = HomDocument::from_values(g, &fam.homs[0]);
        let by_thetas = BihomDocument::Thetas(vec![theta]);
        let text = Document::Bihom(by_thetas.clone()).to_json();
        assert_eq!(parse_bihom(&text).unwrap(), by_thetas);
        let b = by_thetas.to_bihom(g).unwrap();
        let table = BihomDocument::from_bihom(&b);
        let back = parse_bihom(&Document::Bihom(table.clone()).to_json()).unwrap();
        assert_eq!(back, table);
        assert_eq!(back.to_bihom(g).unwrap().table(), b.table());

        let err = parse_document(r#"{"kind": "bihom", "table": {}}"#).unwrap_err();
        assert_eq!(err, schema("field", "required with table"));
        let partial = BihomDocument::Table { field: Field::Real, table: IndexMap::new() };
        assert!(matches!(partial.to_bihom(g), Err(LoadError::Doc(DocError::Schema { .. }))));
    }

    #[test]
    fn norm_and_partition_documents() {
        let fam = families::pair(3).unwrap();
        let g = &fam.groupoid;
        let sq = g.arrows().map(|a| SqValue::from_integer(a.0 as u32)).collect();
        let n = NormTable::new(g, sq).unwrap();
        let doc = NormDocument::from_norm(&n);
        let back = parse_norm(&Document::Norm(doc.clone()).to_json()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_norm(g).unwrap(), n);

        let p = Partition::from_keys(g.arrows().map(|a| a.0 % 2));
        let doc = PartitionDocument::from_partition(g, &p);
        let back = parse_partition(&Document::Partition(doc.clone()).to_json()).unwrap();
        assert_eq!(back.to_partition(g).unwrap(), p);
        let bad = PartitionDocument { classes: vec![vec!["(0,0)".into()]] };
        assert!(matches!(bad.to_partition(g), Err(DocError::Schema { .. })));
    }

    fn family() -> impl Strategy<Value = families::Generated> {
        (0usize..4, 1usize..4).prop_map(|(k, n)| match k {
            0 => families::pair(n).unwrap(),
            1 => families::cyclic_group(n + 1).unwrap(),
            2 => families::affine_cyclic(n + 1).unwrap(),
            _ => families::complex_pair(n.min(2)).unwrap(),
        })
    }

    proptest! {
        #[test]
        fn groupoid_document_round_trip(fam in family()) {
            let doc = GroupoidDocument::from_groupoid(&fam.groupoid);
            let text = Document::Groupoid(doc.clone()).to_json();
            let back = parse_groupoid(&text).unwrap();
            prop_assert_eq!(&back, &doc);
            prop_assert_eq!(Document::Groupoid(back.clone()).to_json(), text);
            let g = back.to_groupoid(Limits::default()).unwrap();
            prop_assert_eq!(g.to_raw(), fam.groupoid.to_raw());
        }
    }
}
