//! JSON instance files.
//!
//! One object per file: `{"kind": ..., "payload": {...}}` with every big
//! integer written as a decimal string. Payload shapes:
//!
//! * `eewhc`: `{"d": 2, "n": 3, "edges": [{"v": [0, 1], "w": "1"}], "t": "6"}`
//! * `subset_sum`: `{"items": ["4", "3"], "t": "4"}`
//! * `rbds` / `erbds` (at-most / exact mode): `{"n_red": 2, "n_blue": 1, "adj": ["1", "0"], "d": 1}`,
//!   one bit string per red vertex, character `q` for blue `q`
//! * `csp`: `{"n": 2, "language": [{"arity": 2, "table": "0001"}],
//!   "applications": [{"f": 0, "v": [0, 1], "w": "-5"}], "t": "5"}`, table character `i`
//!   is the value on the row whose argument `j` is bit `j` of `i`
//! * `bwvc`: `{"left": [0], "right": [1], "edges": [[0, 1]], "w": ["5", "3"]}`, weights indexed by vertex id
//!
//! Decimal strings are canonical: no sign on unsigned fields, no leading zeros.

use crate::instances::*;
use num_bigint::{BigInt, BigUint};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Hypergraph(WeightedHypergraph),
    SubsetSum(SubsetSumInstance),
    Rbds(RbdsInstance),
    Csp(CspFormula),
    Bipartite(NodeWeightedBipartiteGraph),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Hypergraph(_) => "eewhc",
            Instance::SubsetSum(_) => "subset_sum",
            Instance::Rbds(i) if i.mode == DominationMode::Exact => "erbds",
            Instance::Rbds(_) => "rbds",
            Instance::Csp(_) => "csp",
            Instance::Bipartite(_) => "bwvc",
        }
    }

    pub fn validate(&self) -> Result<(), Violation> {
        match self {
            Instance::Hypergraph(x) => x.validate(),
            Instance::SubsetSum(x) => x.validate(),
            Instance::Rbds(x) => x.validate(),
            Instance::Csp(x) => x.validate(),
            Instance::Bipartite(x) => x.validate(),
        }
    }
}

impl From<WeightedHypergraph> for Instance {
    fn from(x: WeightedHypergraph) -> Self {
        Instance::Hypergraph(x)
    }
}
impl From<SubsetSumInstance> for Instance {
    fn from(x: SubsetSumInstance) -> Self {
        Instance::SubsetSum(x)
    }
}
impl From<RbdsInstance> for Instance {
    fn from(x: RbdsInstance) -> Self {
        Instance::Rbds(x)
    }
}
impl From<CspFormula> for Instance {
    fn from(x: CspFormula) -> Self {
        Instance::Csp(x)
    }
}
impl From<NodeWeightedBipartiteGraph> for Instance {
    fn from(x: NodeWeightedBipartiteGraph) -> Self {
        Instance::Bipartite(x)
    }
}

/// Where and why parsing stopped. No partial instance is ever returned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub field: Option<String>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let (Some(l), Some(c)) = (self.line, self.column) {
            write!(f, "line {l} column {c}: ")?;
        }
        if let Some(field) = &self.field {
            write!(f, "field `{field}`: ")?;
        }
        f.write_str(&self.message)
    }
}

impl std::error::Error for ParseError {}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        let message = strip_position(&e.to_string());
        let field = message.split('`').nth(1).map(str::to_owned);
        let (line, column) = if e.line() == 0 { (None, None) } else { (Some(e.line()), Some(e.column())) };
        ParseError { line, column, field, message }
    }
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_owned(),
        None => msg.to_owned(),
    }
}

fn structural(field: impl Into<String>, message: impl Into<String>) -> ParseError {
    ParseError { line: None, column: None, field: Some(field.into()), message: message.into() }
}

/// Unsigned decimal string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dec(pub BigUint);

/// Signed decimal string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SDec(pub BigInt);

fn check_digits(s: &str) -> Result<(), String> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("invalid decimal integer \"{s}\""));
    }
    if s.len() > 1 && s.starts_with('0') {
        return Err(format!("non-canonical decimal integer \"{s}\" (leading zero)"));
    }
    Ok(())
}

pub fn parse_unsigned(s: &str) -> Result<BigUint, String> {
    check_digits(s)?;
    Ok(s.parse().expect("digits checked"))
}

pub fn parse_signed(s: &str) -> Result<BigInt, String> {
    let (neg, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    check_digits(digits)?;
    if neg && digits == "0" {
        return Err("non-canonical decimal integer \"-0\"".into());
    }
    Ok(s.parse().expect("digits checked"))
}

impl Serialize for Dec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_str_radix(10))
    }
}

impl<'de> Deserialize<'de> for Dec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_unsigned(&s).map(Dec).map_err(de::Error::custom)
    }
}

impl Serialize for SDec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_str_radix(10))
    }
}

impl<'de> Deserialize<'de> for SDec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_signed(&s).map(SDec).map_err(de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeEntry {
    v: Vec<usize>,
    w: Dec,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HypergraphPayload {
    d: usize,
    n: usize,
    edges: Vec<EdgeEntry>,
    t: Dec,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SubsetSumPayload {
    items: Vec<Dec>,
    t: Dec,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RbdsPayload {
    n_red: usize,
    n_blue: usize,
    adj: Vec<String>,
    d: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstraintEntry {
    arity: usize,
    table: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ApplicationEntry {
    f: usize,
    v: Vec<usize>,
    w: SDec,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CspPayload {
    n: usize,
    language: Vec<ConstraintEntry>,
    applications: Vec<ApplicationEntry>,
    t: SDec,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BipartitePayload {
    left: Vec<usize>,
    right: Vec<usize>,
    edges: Vec<(usize, usize)>,
    w: Vec<Dec>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "snake_case", deny_unknown_fields)]
enum Envelope {
    Eewhc(HypergraphPayload),
    SubsetSum(SubsetSumPayload),
    Rbds(RbdsPayload),
    Erbds(RbdsPayload),
    Csp(CspPayload),
    Bwvc(BipartitePayload),
}

fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn string_to_bits(s: &str, field: &str) -> Result<Vec<bool>, ParseError> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(structural(field, format!("expected '0' or '1', found {other:?}"))),
        })
        .collect()
}

fn to_envelope(x: &Instance) -> Envelope {
    match x {
        Instance::Hypergraph(h) => Envelope::Eewhc(HypergraphPayload {
            d: h.arity,
            n: h.n,
            edges: h.edges.iter().map(|(v, w)| EdgeEntry { v: v.clone(), w: Dec(w.clone()) }).collect(),
            t: Dec(h.target.clone()),
        }),
        Instance::SubsetSum(s) => Envelope::SubsetSum(SubsetSumPayload {
            items: s.items.iter().cloned().map(Dec).collect(),
            t: Dec(s.target.clone()),
        }),
        Instance::Rbds(r) => {
            let p = RbdsPayload {
                n_red: r.reds,
                n_blue: r.blues,
                adj: r.adjacency.iter().map(|row| bits_to_string(row)).collect(),
                d: r.budget,
            };
            match r.mode {
                DominationMode::AtMost => Envelope::Rbds(p),
                DominationMode::Exact => Envelope::Erbds(p),
            }
        }
        Instance::Csp(c) => Envelope::Csp(CspPayload {
            n: c.n,
            language: c
                .language
                .iter()
                .map(|f| ConstraintEntry { arity: f.arity, table: bits_to_string(&f.truth_table) })
                .collect(),
            applications: c
                .applications
                .iter()
                .map(|a| ApplicationEntry { f: a.constraint, v: a.indices.clone(), w: SDec(a.weight.clone()) })
                .collect(),
            t: SDec(c.target.clone()),
        }),
        Instance::Bipartite(g) => Envelope::Bwvc(BipartitePayload {
            left: g.left.clone(),
            right: g.right.clone(),
            edges: g.edges.clone(),
            w: g.weights.iter().cloned().map(Dec).collect(),
        }),
    }
}

fn from_envelope(e: Envelope) -> Result<Instance, ParseError> {
    Ok(match e {
        Envelope::Eewhc(p) => {
            let mut edges = BTreeMap::new();
            for (i, entry) in p.edges.into_iter().enumerate() {
                if edges.insert(entry.v, entry.w.0).is_some() {
                    return Err(structural(format!("edges[{i}].v"), "duplicate hyperedge"));
                }
            }
            Instance::Hypergraph(WeightedHypergraph { arity: p.d, n: p.n, edges, target: p.t.0 })
        }
        Envelope::SubsetSum(p) => Instance::SubsetSum(SubsetSumInstance {
            items: p.items.into_iter().map(|d| d.0).collect(),
            target: p.t.0,
        }),
        Envelope::Rbds(p) => Instance::Rbds(rbds_from(p, DominationMode::AtMost)?),
        Envelope::Erbds(p) => Instance::Rbds(rbds_from(p, DominationMode::Exact)?),
        Envelope::Csp(p) => {
            let language = p
                .language
                .into_iter()
                .enumerate()
                .map(|(i, c)| {
                    Ok(CspConstraint {
                        arity: c.arity,
                        truth_table: string_to_bits(&c.table, &format!("language[{i}].table"))?,
                    })
                })
                .collect::<Result<Vec<_>, ParseError>>()?;
            Instance::Csp(CspFormula {
                n: p.n,
                language,
                applications: p
                    .applications
                    .into_iter()
                    .map(|a| CspApplication { constraint: a.f, indices: a.v, weight: a.w.0 })
                    .collect(),
                target: p.t.0,
            })
        }
        Envelope::Bwvc(p) => Instance::Bipartite(NodeWeightedBipartiteGraph {
            left: p.left,
            right: p.right,
            edges: p.edges,
            weights: p.w.into_iter().map(|d| d.0).collect(),
        }),
    })
}

fn rbds_from(p: RbdsPayload, mode: DominationMode) -> Result<RbdsInstance, ParseError> {
    let adjacency = p
        .adj
        .iter()
        .enumerate()
        .map(|(x, row)| string_to_bits(row, &format!("adj[{x}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RbdsInstance { reds: p.n_red, blues: p.n_blue, adjacency, budget: p.d, mode })
}

/// Canonical pretty-printed JSON, newline-terminated.
pub fn serialize(x: &Instance) -> String {
    let mut s = serde_json::to_string_pretty(&to_envelope(x)).expect("instance serialization cannot fail");
    s.push('\n');
    s
}

/// Single-line form of the same document, used for corpus files.
pub fn serialize_compact(x: &Instance) -> String {
    serde_json::to_string(&to_envelope(x)).expect("instance serialization cannot fail")
}

pub fn parse(bytes: &[u8]) -> Result<Instance, ParseError> {
    let env: Envelope = serde_json::from_slice(bytes)?;
    from_envelope(env)
}

pub fn parse_str(s: &str) -> Result<Instance, ParseError> {
    parse(s.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k3_round_trip() {
        let text = r#"{"kind":"eewhc","payload":{"d":2,"n":3,"edges":[{"v":[0,1],"w":"1"},{"v":[0,2],"w":"2"},{"v":[1,2],"w":"3"}],"t":"12345678901234567890"}}"#;
        let x = parse_str(text).unwrap();
        let Instance::Hypergraph(h) = &x else { panic!("wrong kind") };
        assert_eq!(h.target.to_string(), "12345678901234567890");
        assert_eq!(parse_str(&serialize(&x)).unwrap(), x);
        assert_eq!(serialize(&parse_str(&serialize(&x)).unwrap()), serialize(&x));
    }

    #[test]
    fn unknown_field_is_reported() {
        let text = "{\"kind\":\"subset_sum\",\n \"payload\":{\"items\":[\"1\"],\"target\":\"1\"}}";
        let err = parse_str(text).unwrap_err();
        assert_eq!(err.field.as_deref(), Some("target"));
        assert_eq!(err.line, Some(2));
    }

    #[test]
    fn bad_decimals_are_rejected() {
        for bad in ["\"1e3\"", "\"-1\"", "\"01\"", "\"\"", "3"] {
            let text = format!("{{\"kind\":\"subset_sum\",\"payload\":{{\"items\":[],\"t\":{bad}}}}}");
            assert!(parse_str(&text).is_err(), "{bad}");
        }
        assert_eq!(parse_signed("-17").unwrap(), BigInt::from(-17));
        assert!(parse_signed("-0").is_err());
    }

    #[test]
    fn duplicate_hyperedge_is_rejected() {
        let text = r#"{"kind":"eewhc","payload":{"d":2,"n":2,"edges":[{"v":[0,1],"w":"1"},{"v":[0,1],"w":"2"}],"t":"0"}}"#;
        assert_eq!(parse_str(text).unwrap_err().field.as_deref(), Some("edges[1].v"));
    }

    #[test]
    fn unknown_kind_is_rejected() {
        assert!(parse_str(r#"{"kind":"sat","payload":{}}"#).is_err());
        assert!(parse_str(r#"{"kind":"subset_sum","payload":{"items":[],"t":"0"},"extra":1}"#).is_err());
    }

    #[test]
    fn rbds_modes_map_to_kinds() {
        let mut r = RbdsInstance::empty(2, 1, 1, DominationMode::Exact);
        r.adjacency[0][0] = true;
        let s = serialize(&r.clone().into());
        assert!(s.contains("\"erbds\""));
        assert!(s.contains("\"10\"") || s.contains("\"1\""));
        assert_eq!(parse_str(&s).unwrap(), Instance::Rbds(r));
    }
}
