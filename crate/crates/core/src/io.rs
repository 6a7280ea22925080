//! JSON interchange: `tpa-algebra/1` for bundles, `tpa-report/1` for results.
//!
//! Scalars are always strings ("3", "-1/2"). Object keys come out sorted, so
//! emitting the same value twice gives the same bytes.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Map, Value};

use crate::algebra::{AlgebraBundle, BasisSpace, Element, Field, LinearMap, MultiLinearOp, Scalar, Symmetry};
use crate::axioms::{Binding, CheckReport, Role, ViolationWitness};
use crate::linalg::{Ambient, SolutionSpace};
use crate::search::{Counterexample, SearchReport};

pub const ALGEBRA_FORMAT: &str = "tpa-algebra/1";
pub const REPORT_FORMAT: &str = "tpa-report/1";

/// A schema or validation failure, located by a JSON path like `$.ops[1].table[0].out`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(path: &str, message: impl Into<String>) -> Result<T> {
    Err(ParseError {
        path: path.to_string(),
        message: message.into(),
    })
}

type Result<T> = std::result::Result<T, ParseError>;

fn object<'a>(v: &'a Value, path: &str, allowed: &[&str]) -> Result<&'a Map<String, Value>> {
    let Some(m) = v.as_object() else {
        return err(path, "expected an object");
    };
    if let Some(k) = m.keys().find(|k| !allowed.contains(&k.as_str())) {
        return err(path, format!("unexpected key {k:?}"));
    }
    Ok(m)
}

fn required<'a>(m: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    m.get(key).ok_or_else(|| ParseError {
        path: path.to_string(),
        message: format!("missing key {key:?}"),
    })
}

fn string<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| ParseError {
        path: path.to_string(),
        message: "expected a string".into(),
    })
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| ParseError {
        path: path.to_string(),
        message: "expected an array".into(),
    })
}

fn index(v: &Value, path: &str) -> Result<usize> {
    v.as_u64().map(|n| n as usize).ok_or_else(|| ParseError {
        path: path.to_string(),
        message: "expected a non-negative integer".into(),
    })
}

fn scalar(v: &Value, field: Field, path: &str) -> Result<Scalar> {
    let s = string(v, path)?;
    field.parse(s).or_else(|e| err(path, e.to_string()))
}

fn parse_field(v: &Value, path: &str) -> Result<Field> {
    match v {
        Value::String(s) if s == "Q" => Ok(Field::Rational),
        Value::Object(_) => {
            let m = object(v, path, &["gf"])?;
            let p_path = format!("{path}.gf");
            let p = required(m, "gf", path)?.as_u64().ok_or_else(|| ParseError {
                path: p_path.clone(),
                message: "expected a positive integer".into(),
            })?;
            Field::prime(p).or_else(|e| err(&p_path, e.to_string()))
        }
        _ => err(path, "expected \"Q\" or {\"gf\": p}"),
    }
}

fn field_json(field: Field) -> Value {
    match field {
        Field::Rational => json!("Q"),
        Field::Prime(p) => json!({ "gf": p }),
    }
}

/// Parse a `tpa-algebra/1` document.
pub fn parse_algebra(bytes: &[u8]) -> Result<AlgebraBundle> {
    let text = std::str::from_utf8(bytes).or_else(|e| err("$", format!("not UTF-8: {e}")))?;
    let v: Value = serde_json::from_str(text).or_else(|e| err("$", format!("invalid JSON: {e}")))?;
    algebra_from_json(&v)
}

pub fn algebra_from_json(v: &Value) -> Result<AlgebraBundle> {
    let root = object(v, "$", &["format", "field", "basis", "ops", "maps", "metadata"])?;
    let format = string(required(root, "format", "$")?, "$.format")?;
    if format != ALGEBRA_FORMAT {
        return err("$.format", format!("expected {ALGEBRA_FORMAT:?}, got {format:?}"));
    }
    let field = parse_field(required(root, "field", "$")?, "$.field")?;
    let labels = array(required(root, "basis", "$")?, "$.basis")?
        .iter()
        .enumerate()
        .map(|(i, l)| string(l, &format!("$.basis[{i}]")).map(str::to_string))
        .collect::<Result<Vec<_>>>()?;
    let space = BasisSpace::new(labels).or_else(|e| err("$.basis", e.to_string()))?;
    let dim = space.dim();
    let mut bundle = AlgebraBundle::new(space, field);

    if let Some(ops) = root.get("ops") {
        for (i, o) in array(ops, "$.ops")?.iter().enumerate() {
            let path = format!("$.ops[{i}]");
            let op = parse_op(o, field, dim, &path)?;
            bundle.add_op(op).or_else(|e| err(&path, e.to_string()))?;
        }
    }
    if let Some(maps) = root.get("maps") {
        for (i, m) in array(maps, "$.maps")?.iter().enumerate() {
            let path = format!("$.maps[{i}]");
            let (name, map) = parse_map(m, field, dim, &path)?;
            bundle.add_map(name, map).or_else(|e| err(&path, e.to_string()))?;
        }
    }
    if let Some(meta) = root.get("metadata") {
        let m = meta.as_object().ok_or_else(|| ParseError {
            path: "$.metadata".into(),
            message: "expected an object".into(),
        })?;
        for (k, v) in m {
            let s = string(v, &format!("$.metadata.{k}"))?;
            bundle.metadata.insert(k.clone(), s.to_string());
        }
    }
    Ok(bundle)
}

fn parse_op(v: &Value, field: Field, dim: usize, path: &str) -> Result<MultiLinearOp> {
    let m = object(v, path, &["name", "arity", "symmetry", "table"])?;
    let name = string(required(m, "name", path)?, &format!("{path}.name"))?;
    let arity = index(required(m, "arity", path)?, &format!("{path}.arity"))?;
    let sym_path = format!("{path}.symmetry");
    let sym_text = string(required(m, "symmetry", path)?, &sym_path)?;
    let symmetry = Symmetry::parse(sym_text).ok_or_else(|| ParseError {
        path: sym_path,
        message: format!("unknown symmetry {sym_text:?}"),
    })?;
    let mut raw = Vec::new();
    for (j, entry) in array(required(m, "table", path)?, &format!("{path}.table"))?.iter().enumerate() {
        let epath = format!("{path}.table[{j}]");
        let e = object(entry, &epath, &["in", "out"])?;
        let key = array(required(e, "in", &epath)?, &format!("{epath}.in"))?
            .iter()
            .enumerate()
            .map(|(k, x)| index(x, &format!("{epath}.in[{k}]")))
            .collect::<Result<Vec<_>>>()?;
        let value = parse_sparse(required(e, "out", &epath)?, field, dim, &format!("{epath}.out"))?;
        raw.push((key, value));
    }
    MultiLinearOp::normalize(name, arity, dim, field, symmetry, raw).or_else(|e| err(path, e.to_string()))
}

fn parse_sparse(v: &Value, field: Field, dim: usize, path: &str) -> Result<Element> {
    let Some(m) = v.as_object() else {
        return err(path, "expected an object from basis index to scalar");
    };
    let mut coeffs = vec![field.zero(); dim];
    for (k, s) in m {
        let kpath = format!("{path}.{k}");
        let i: usize = k.parse().or_else(|_| err(&kpath, "key is not a basis index"))?;
        if i >= dim {
            return err(&kpath, format!("basis index {i} out of range for dimension {dim}"));
        }
        coeffs[i] = scalar(s, field, &kpath)?;
    }
    Ok(Element::from_coeffs(coeffs))
}

fn parse_map(v: &Value, field: Field, dim: usize, path: &str) -> Result<(String, LinearMap)> {
    let m = object(v, path, &["name", "matrix"])?;
    let name = string(required(m, "name", path)?, &format!("{path}.name"))?.to_string();
    let mpath = format!("{path}.matrix");
    let rows = array(required(m, "matrix", path)?, &mpath)?;
    if rows.len() != dim {
        return err(&mpath, format!("expected {dim} rows, found {}", rows.len()));
    }
    let mut out = Vec::with_capacity(dim);
    for (i, r) in rows.iter().enumerate() {
        let rpath = format!("{mpath}[{i}]");
        let row = array(r, &rpath)?;
        if row.len() != dim {
            return err(&rpath, format!("expected {dim} entries, found {}", row.len()));
        }
        out.push(
            row.iter()
                .enumerate()
                .map(|(j, s)| scalar(s, field, &format!("{rpath}[{j}]")))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let map = LinearMap::from_rows(out).or_else(|e| err(&mpath, e.to_string()))?;
    Ok((name, map))
}

fn sparse_json(e: &Element) -> Value {
    let m: Map<String, Value> = e
        .support()
        .map(|i| (i.to_string(), json!(e.coeff(i).to_canonical_string())))
        .collect();
    Value::Object(m)
}

fn dense_json(e: &Element) -> Value {
    Value::Array(e.coeffs().iter().map(|s| json!(s.to_canonical_string())).collect())
}

fn matrix_json(m: &LinearMap) -> Value {
    Value::Array(
        m.rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(|s| json!(s.to_canonical_string())).collect()))
            .collect(),
    )
}

fn op_json(op: &MultiLinearOp) -> Value {
    let table: Vec<Value> = op
        .entries()
        .map(|(k, v)| json!({ "in": k, "out": sparse_json(v) }))
        .collect();
    json!({
        "name": op.name(),
        "arity": op.arity(),
        "symmetry": op.symmetry().as_str(),
        "table": table,
    })
}

pub fn algebra_to_json(bundle: &AlgebraBundle) -> Value {
    let maps: Vec<Value> = bundle
        .maps()
        .iter()
        .map(|(n, m)| json!({ "name": n, "matrix": matrix_json(m) }))
        .collect();
    json!({
        "format": ALGEBRA_FORMAT,
        "field": field_json(bundle.field()),
        "basis": bundle.space().labels(),
        "ops": bundle.ops().iter().map(op_json).collect::<Vec<_>>(),
        "maps": maps,
        "metadata": bundle.metadata,
    })
}

fn to_bytes(v: &Value) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(v).expect("values built here always serialize");
    s.push('\n');
    s.into_bytes()
}

/// Serialize a bundle as a `tpa-algebra/1` document.
pub fn emit_algebra(bundle: &AlgebraBundle) -> Vec<u8> {
    to_bytes(&algebra_to_json(bundle))
}

/// One entry of a report file.
#[derive(Debug, Clone)]
pub enum ReportItem {
    Check(CheckReport),
    Search(SearchReport),
    Solution { label: String, space: SolutionSpace },
    Construction { kind: String, output: Option<String>, bundle: AlgebraBundle },
}

fn witness_json(w: &ViolationWitness) -> Value {
    json!({
        "tuple": w.tuple,
        "part": w.part,
        "left": dense_json(&w.left),
        "right": dense_json(&w.right),
    })
}

pub fn check_json(r: &CheckReport) -> Value {
    json!({
        "kind": "check",
        "axiom": r.label(),
        "holds": r.holds,
        "tuples_checked": r.tuples_checked,
        "witness": r.witness.as_ref().map(witness_json),
    })
}

fn binding_json(b: &Binding) -> Value {
    let m: BTreeMap<&str, &str> = b.entries().map(|(r, n)| (Role::name(r), n)).collect();
    json!(m)
}

fn counterexample_json(c: &Counterexample) -> Value {
    json!({
        "axiom": c.axiom.name(),
        "binding": binding_json(&c.binding),
        "witness": witness_json(&c.witness),
        "instance": algebra_to_json(&c.instance),
    })
}

pub fn search_json(r: &SearchReport) -> Value {
    let hits: Vec<Value> = r
        .hits
        .iter()
        .map(|h| json!({ "index": h.index, "matrix": matrix_json(&h.map) }))
        .collect();
    json!({
        "kind": "search",
        "target": r.target,
        "candidates": r.candidates,
        "hits": hits,
        "counterexamples": r.counterexamples.iter().map(counterexample_json).collect::<Vec<_>>(),
        "seed": r.seed,
        "verdict": r.verdict.as_str(),
        "partial": r.partial,
        "notes": r.notes,
    })
}

fn solution_json(label: &str, s: &SolutionSpace) -> Value {
    let (ambient, dim) = match s.ambient {
        Ambient::MapEntries { dim } => ("map-entries", dim),
        Ambient::SymmetricProduct { dim } => ("symmetric-product", dim),
    };
    let basis: Vec<Value> = s
        .basis
        .iter()
        .map(|v| Value::Array(v.iter().map(|x| json!(x.to_canonical_string())).collect()))
        .collect();
    json!({
        "kind": "solution-space",
        "label": label,
        "ambient": ambient,
        "ambient_dim": dim,
        "dimension": s.dimension(),
        "basis": basis,
    })
}

fn item_json(item: &ReportItem) -> Value {
    match item {
        ReportItem::Check(r) => check_json(r),
        ReportItem::Search(r) => search_json(r),
        ReportItem::Solution { label, space } => solution_json(label, space),
        ReportItem::Construction { kind, output, bundle } => json!({
            "kind": "construction",
            "construction": kind,
            "output": output,
            "ops": bundle.ops().iter().map(|o| o.name()).collect::<Vec<_>>(),
            "maps": bundle.maps().iter().map(|(n, _)| n.as_str()).collect::<Vec<_>>(),
        }),
    }
}

/// Serialize results as a `tpa-report/1` document.
pub fn emit_report(subject: &str, items: &[ReportItem]) -> Vec<u8> {
    to_bytes(&json!({
        "format": REPORT_FORMAT,
        "subject": subject,
        "results": items.iter().map(item_json).collect::<Vec<_>>(),
    }))
}

/// Read a witness back from report JSON: `(tuple, part, left, right)`.
pub fn parse_witness(v: &Value, field: Field, dim: usize) -> Result<ViolationWitness> {
    let m = object(v, "$", &["tuple", "part", "left", "right"])?;
    let tuple = array(required(m, "tuple", "$")?, "$.tuple")?
        .iter()
        .enumerate()
        .map(|(i, x)| index(x, &format!("$.tuple[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let part = index(required(m, "part", "$")?, "$.part")?;
    let side = |key: &str| -> Result<Element> {
        let path = format!("$.{key}");
        let items = array(required(m, key, "$")?, &path)?;
        if items.len() != dim {
            return err(&path, format!("expected {dim} coefficients"));
        }
        let coeffs = items
            .iter()
            .enumerate()
            .map(|(i, s)| scalar(s, field, &format!("{path}[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Element::from_coeffs(coeffs))
    };
    Ok(ViolationWitness {
        tuple,
        part,
        left: side("left")?,
        right: side("right")?,
    })
}
