//! JSON file formats. Values are strings (`"inf"`, integers, `"p/q"`);
//! bare JSON integers are accepted on input. Functions and sets refer to
//! points by name.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::functions::{Block, Development, FnOverSpace};
use crate::maps::SpaceMap;
use crate::pointset::PointSet;
use crate::separation::Scale;
use crate::space::FiniteSpace;
use crate::value::{format_rational, parse_rational, ExtValue};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceDoc {
    points: Vec<String>,
    q: Vec<Vec<ExtValue>>,
}

/// A space given inline or as a path relative to the referring file.
#[derive(Deserialize)]
#[serde(untagged)]
enum SpaceRef {
    Path(String),
    Inline(SpaceDoc),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctionDoc {
    #[serde(default)]
    #[allow(dead_code)]
    space: Option<Value>,
    values: BTreeMap<String, ExtValue>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BlockDoc {
    set: Vec<String>,
    level: ExtValue,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DevelopmentDoc {
    epsilon: ExtValue,
    blocks: Vec<BlockDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BreakpointDoc {
    threshold: Value,
    set: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScaleDoc {
    breakpoints: Vec<BreakpointDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MapDoc {
    domain: SpaceRef,
    codomain: SpaceRef,
    assignment: BTreeMap<String, String>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
}

fn space_from_doc(doc: SpaceDoc) -> Result<FiniteSpace> {
    FiniteSpace::new(doc.points, doc.q)
}

pub fn parse_space(text: &str) -> Result<FiniteSpace> {
    space_from_doc(parse(text)?)
}

pub fn read_space(path: &Path) -> Result<FiniteSpace> {
    parse_space(&read(path)?)
}

fn resolve(r: SpaceRef, base: Option<&Path>) -> Result<FiniteSpace> {
    match r {
        SpaceRef::Inline(doc) => space_from_doc(doc),
        SpaceRef::Path(p) => {
            let path = match base {
                Some(dir) => dir.join(&p),
                None => PathBuf::from(&p),
            };
            read_space(&path)
        }
    }
}

/// Values keyed by point name; every point must be present.
pub fn parse_function(s: &FiniteSpace, text: &str) -> Result<FnOverSpace> {
    let doc: FunctionDoc = parse(text)?;
    function_from_map(s, &doc.values)
}

fn function_from_map(s: &FiniteSpace, values: &BTreeMap<String, ExtValue>) -> Result<FnOverSpace> {
    for name in values.keys() {
        s.index_of(name)?;
    }
    let vals = s
        .points()
        .iter()
        .map(|p| values.get(p).copied().ok_or_else(|| Error::Parse(format!("no value for point `{p}`"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(FnOverSpace::new(vals))
}

pub fn read_function(s: &FiniteSpace, path: &Path) -> Result<FnOverSpace> {
    parse_function(s, &read(path)?)
}

pub fn parse_development(s: &FiniteSpace, text: &str) -> Result<Development> {
    let doc: DevelopmentDoc = parse(text)?;
    let blocks = doc
        .blocks
        .into_iter()
        .map(|b| Ok(Block { set: s.set_of(&b.set)?, level: b.level }))
        .collect::<Result<Vec<_>>>()?;
    Development::new(doc.epsilon, blocks)
}

pub fn read_development(s: &FiniteSpace, path: &Path) -> Result<Development> {
    parse_development(s, &read(path)?)
}

pub fn parse_scale(s: &FiniteSpace, text: &str) -> Result<Scale> {
    let doc: ScaleDoc = parse(text)?;
    let bps = doc
        .breakpoints
        .into_iter()
        .map(|b| {
            let t = match b.threshold {
                Value::String(t) => parse_rational(&t)?,
                Value::Number(n) => parse_rational(&n.to_string())?,
                other => return Err(Error::Parse(format!("bad threshold {other}"))),
            };
            Ok((t, s.set_of(&b.set)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Scale::new(s.len(), bps)
}

pub fn read_scale(s: &FiniteSpace, path: &Path) -> Result<Scale> {
    parse_scale(s, &read(path)?)
}

/// Paths inside the map file resolve against `base`.
pub fn parse_map(text: &str, base: Option<&Path>) -> Result<SpaceMap> {
    let doc: MapDoc = parse(text)?;
    let domain = resolve(doc.domain, base)?;
    let codomain = resolve(doc.codomain, base)?;
    for name in doc.assignment.keys() {
        domain.index_of(name)?;
    }
    let assignment = domain
        .points()
        .iter()
        .map(|p| {
            let y = doc.assignment.get(p).ok_or_else(|| Error::InvalidMap(format!("`{p}` is not assigned")))?;
            codomain.index_of(y)
        })
        .collect::<Result<Vec<_>>>()?;
    SpaceMap::new(domain, codomain, assignment)
}

pub fn read_map(path: &Path) -> Result<SpaceMap> {
    parse_map(&read(path)?, path.parent())
}

pub fn space_json(s: &FiniteSpace) -> Value {
    let n = s.len();
    let rows: Vec<Value> = (0..n)
        .map(|i| Value::Array((0..n).map(|j| Value::String(s.q(i, j).to_string())).collect()))
        .collect();
    json!({ "points": s.points(), "q": rows })
}

pub fn set_json(s: &FiniteSpace, set: PointSet) -> Value {
    json!(s.names_of(set))
}

pub fn value_json(v: ExtValue) -> Value {
    Value::String(v.to_string())
}

/// Object keyed by point name.
pub fn function_json(s: &FiniteSpace, f: &FnOverSpace) -> Value {
    let mut m = Map::new();
    for (i, v) in f.values().iter().enumerate() {
        m.insert(s.name(i).to_string(), value_json(*v));
    }
    Value::Object(m)
}

pub fn development_json(s: &FiniteSpace, d: &Development) -> Value {
    let blocks: Vec<Value> = d
        .blocks
        .iter()
        .map(|b| json!({ "set": set_json(s, b.set), "level": value_json(b.level) }))
        .collect();
    json!({ "epsilon": value_json(d.epsilon), "blocks": blocks })
}

pub fn scale_json(s: &FiniteSpace, sc: &Scale) -> Value {
    let bps: Vec<Value> = sc
        .breakpoints()
        .iter()
        .map(|(t, set)| json!({ "threshold": format_rational(t), "set": set_json(s, *set) }))
        .collect();
    json!({ "breakpoints": bps })
}

pub fn map_json(m: &SpaceMap) -> Value {
    let mut a = Map::new();
    for x in 0..m.domain.len() {
        a.insert(m.domain.name(x).to_string(), Value::String(m.codomain.name(m.apply(x)).to_string()));
    }
    json!({
        "domain": space_json(&m.domain),
        "codomain": space_json(&m.codomain),
        "assignment": a,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::value::{rat, INF};

    #[test]
    fn space_round_trip() {
        let e3 = catalog::exinorm();
        let text = space_json(&e3).to_string();
        assert_eq!(parse_space(&text).unwrap(), e3);
        let lit = r#"{"points": ["x","y","z"], "q": [["0","4","1"],["inf","0","2"],["inf","inf","0"]]}"#;
        assert_eq!(parse_space(lit).unwrap(), e3);
    }

    #[test]
    fn bad_space_reports_triangle() {
        let bad = r#"{"points": ["a","b","c"], "q": [[0,1,5],[1,0,1],[5,1,0]]}"#;
        assert!(matches!(parse_space(bad), Err(Error::TriangleViolation { .. })));
        assert!(matches!(parse_space("{"), Err(Error::Json(_))));
    }

    #[test]
    fn function_and_development() {
        let e3 = catalog::exinorm();
        let f = parse_function(&e3, r#"{"values": {"x": "4", "y": 0, "z": "1/2"}}"#).unwrap();
        assert_eq!(f.values(), &[ExtValue::int(4), ExtValue::ZERO, ExtValue::Finite(rat(1, 2))]);
        assert_eq!(parse_function(&e3, &json!({ "values": function_json(&e3, &f) }).to_string()).unwrap(), f);
        assert!(parse_function(&e3, r#"{"values": {"x": "4"}}"#).is_err());
        assert!(matches!(
            parse_function(&e3, r#"{"values": {"x": "4", "y": 0, "z": 1, "w": 1}}"#),
            Err(Error::UnknownPoint(_))
        ));
        let d = parse_development(
            &e3,
            r#"{"epsilon": "1", "blocks": [{"set": ["x"], "level": "4"}, {"set": ["y","z"], "level": "0"}]}"#,
        )
        .unwrap();
        assert_eq!(parse_development(&e3, &development_json(&e3, &d).to_string()).unwrap(), d);
        let g = parse_function(&e3, r#"{"values": {"x": "inf", "y": 0, "z": 1}}"#).unwrap();
        assert_eq!(g.get(0), INF);
    }

    #[test]
    fn map_round_trip() {
        let e3 = catalog::exinorm();
        let m = SpaceMap::identity(&e3);
        let text = map_json(&m).to_string();
        assert_eq!(parse_map(&text, None).unwrap(), m);
    }
}
