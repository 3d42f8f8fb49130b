//! Named instances: the small counterexamples, finite grids sampled from
//! infinite examples, and seeded random generators.
//!
//! Listed distances are read as `q(first, second)`. Passing `reversed=true`
//! to [`get`] yields the transpose for the opposite reading.
//!
//! Grids sample infinite spaces. Urysohn constructions restrict to them, so
//! normality verdicts of the Sorgenfrey and `q_S` grids are meaningful; the
//! non-normality of the anti-diagonal region `X_n` rests on a cardinality
//! argument that no finite sample inherits, so `Xn-grid` comes with no
//! expected verdict.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::pointset::{PointSet, MAX_POINTS};
use crate::space::{ClosureRelation, FiniteSpace, Matrix};
use crate::value::{ExtValue, Rational, INF};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub space: FiniteSpace,
    /// A pair the instance is built around, if any.
    pub designated: Option<(PointSet, PointSet)>,
    pub note: &'static str,
}

pub struct EntryInfo {
    pub name: &'static str,
    pub params: &'static [(&'static str, &'static str)],
    pub note: &'static str,
}

const ENTRIES: &[EntryInfo] = &[
    EntryInfo {
        name: "exInorm",
        params: &[],
        note: "3 points, q(x,y)=4, q(x,z)=1, q(y,z)=2; has condition (2) but is not normal",
    },
    EntryInfo {
        name: "exVO",
        params: &[],
        note: "4 points, q(x,z)=q(y,z)=q(w,z)=1, q(w,x)=q(w,y)=2; has condition (3) but not (2)",
    },
    EntryInfo {
        name: "exVO-repaired",
        params: &[],
        note: "exVO with designated pair ({x},{y}), separation degree 4 through w",
    },
    EntryInfo {
        name: "pplus-grid",
        params: &[("n", "5")],
        note: "q(x,y) = x ⊖ y on {0,…,n}; nonempty sets always share 0 in their closures",
    },
    EntryInfo {
        name: "sorgenfrey-grid",
        params: &[("n", "6"), ("step", "1")],
        note: "q(x,y) = y - x if x ≤ y, else inf, on n points k·step",
    },
    EntryInfo {
        name: "qS-grid",
        params: &[("n", "3"), ("step", "1")],
        note: "sum of two Sorgenfrey quasi-metrics on an n×n grid",
    },
    EntryInfo {
        name: "Xn-grid",
        params: &[("n", "2"), ("m", "3")],
        note: "points (i,j) of {0,…,m}² with i + j ≥ n under q_S; no verdict is expected",
    },
    EntryInfo {
        name: "random-metric",
        params: &[("n", "5"), ("seed", "0")],
        note: "seeded symmetric metric (triangle-completed), possibly with inf components",
    },
    EntryInfo {
        name: "random-quasimetric",
        params: &[("n", "5"), ("seed", "0")],
        note: "seeded quasi-metric (triangle-completed)",
    },
    EntryInfo {
        name: "random-topology",
        params: &[("n", "4"), ("seed", "0")],
        note: "space of a seeded random finite preorder ({0, inf}-valued)",
    },
];

pub fn list() -> &'static [EntryInfo] {
    ENTRIES
}

fn names(ns: &[&str]) -> Vec<String> {
    ns.iter().map(|s| s.to_string()).collect()
}

fn matrix(n: usize, entries: &[(usize, usize, i64)]) -> Matrix {
    let mut q = Matrix::filled(n, INF);
    for i in 0..n {
        q.set(i, i, ExtValue::ZERO);
    }
    for &(i, j, v) in entries {
        q.set(i, j, ExtValue::int(v));
    }
    q
}

/// `x, y, z` with `q(x,y)=4`, `q(x,z)=1`, `q(y,z)=2`.
pub fn exinorm() -> FiniteSpace {
    FiniteSpace::from_matrix(names(&["x", "y", "z"]), matrix(3, &[(0, 1, 4), (0, 2, 1), (1, 2, 2)]))
        .expect("valid")
}

/// `x, y, z, w` with `q(x,z)=q(y,z)=q(w,z)=1`, `q(w,x)=q(w,y)=2`.
pub fn exvo() -> FiniteSpace {
    let q = matrix(4, &[(0, 2, 1), (1, 2, 1), (3, 2, 1), (3, 0, 2), (3, 1, 2)]);
    FiniteSpace::from_matrix(names(&["x", "y", "z", "w"]), q).expect("valid")
}

pub fn pplus_grid(n: usize) -> Result<FiniteSpace> {
    if n + 1 > MAX_POINTS {
        return Err(Error::BadParams(format!("n = {n} gives more than {MAX_POINTS} points")));
    }
    let mut q = Matrix::filled(n + 1, ExtValue::ZERO);
    for x in 0..=n {
        for y in 0..=n {
            q.set(x, y, ExtValue::int(x as i64).tsub(ExtValue::int(y as i64)));
        }
    }
    FiniteSpace::from_matrix((0..=n).map(|i| i.to_string()).collect(), q)
}

fn sorgenfrey(x: Rational, y: Rational) -> ExtValue {
    if x <= y {
        ExtValue::Finite(y - x)
    } else {
        INF
    }
}

fn positive_step(step: ExtValue) -> Result<Rational> {
    match step.as_finite() {
        Some(r) if r > Rational::from_integer(0) => Ok(r),
        _ => Err(Error::BadParams("step must be finite and positive".into())),
    }
}

pub fn sorgenfrey_grid(n: usize, step: ExtValue) -> Result<FiniteSpace> {
    let step = positive_step(step)?;
    if n == 0 || n > MAX_POINTS {
        return Err(Error::BadParams(format!("n must be in 1..={MAX_POINTS}")));
    }
    let pts: Vec<Rational> = (0..n).map(|k| step * Rational::from_integer(k as i64)).collect();
    let mut q = Matrix::filled(n, ExtValue::ZERO);
    for i in 0..n {
        for j in 0..n {
            q.set(i, j, sorgenfrey(pts[i], pts[j]));
        }
    }
    let names = pts.iter().map(|p| ExtValue::Finite(*p).to_string()).collect();
    FiniteSpace::from_matrix(names, q)
}

fn plane(coords: Vec<(Rational, Rational)>) -> Result<FiniteSpace> {
    let n = coords.len();
    if n == 0 || n > MAX_POINTS {
        return Err(Error::BadParams(format!("grid has {n} points; allowed 1..={MAX_POINTS}")));
    }
    let mut q = Matrix::filled(n, ExtValue::ZERO);
    for (i, a) in coords.iter().enumerate() {
        for (j, b) in coords.iter().enumerate() {
            q.set(i, j, sorgenfrey(a.0, b.0) + sorgenfrey(a.1, b.1));
        }
    }
    let names = coords
        .iter()
        .map(|(a, b)| format!("({},{})", ExtValue::Finite(*a), ExtValue::Finite(*b)))
        .collect();
    FiniteSpace::from_matrix(names, q)
}

pub fn qs_grid(n: usize, step: ExtValue) -> Result<FiniteSpace> {
    let step = positive_step(step)?;
    let k = |i: usize| step * Rational::from_integer(i as i64);
    plane((0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| (k(i), k(j))).collect())
}

pub fn xn_grid(n: usize, m: usize) -> Result<FiniteSpace> {
    let k = |i: usize| Rational::from_integer(i as i64);
    plane(
        (0..=m)
            .flat_map(|i| (0..=m).map(move |j| (i, j)))
            .filter(|&(i, j)| i + j >= n)
            .map(|(i, j)| (k(i), k(j)))
            .collect(),
    )
}

fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

fn random_entry(rng: &mut ChaCha8Rng, zero_ok: bool) -> ExtValue {
    match rng.gen_range(0..10) {
        0 | 1 => INF,
        2 if zero_ok => ExtValue::ZERO,
        _ => ExtValue::int(rng.gen_range(1..=4)),
    }
}

/// Random symmetric entries in `{1,…,4, ∞}`, closed under the triangle
/// inequality.
pub fn random_metric(n: usize, seed: u64) -> FiniteSpace {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut q = Matrix::filled(n, ExtValue::ZERO);
    for i in 0..n {
        for j in 0..i {
            let v = random_entry(&mut rng, false);
            q.set(i, j, v);
            q.set(j, i, v);
        }
    }
    q.close_min_plus();
    FiniteSpace::from_matrix(default_names(n), q).expect("closure is a metric")
}

/// Random entries in `{0,…,4, ∞}`, closed under the triangle inequality.
pub fn random_quasimetric(n: usize, seed: u64) -> FiniteSpace {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut q = Matrix::filled(n, ExtValue::ZERO);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                q.set(i, j, random_entry(&mut rng, true));
            }
        }
    }
    q.close_min_plus();
    FiniteSpace::from_matrix(default_names(n), q).expect("closure is a quasi-metric")
}

/// Reflexive-transitive closure of a random relation.
pub fn random_preorder(n: usize, seed: u64) -> ClosureRelation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rel: Vec<Vec<bool>> =
        (0..n).map(|i| (0..n).map(|j| i == j || rng.gen_bool(0.3)).collect()).collect();
    for k in 0..n {
        for i in 0..n {
            if rel[i][k] {
                let row_k = rel[k].clone();
                for (dst, src) in rel[i].iter_mut().zip(row_k) {
                    *dst |= src;
                }
            }
        }
    }
    ClosureRelation::new(&rel).expect("square")
}

pub fn random_topology(n: usize, seed: u64) -> FiniteSpace {
    FiniteSpace::from_topology(default_names(n), &random_preorder(n, seed)).expect("preorder")
}

fn parse_params(items: &[&str]) -> Result<BTreeMap<String, String>> {
    items.iter()
        .map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Error::BadParams(format!("expected key=value, got `{p}`")))
        })
        .collect()
}

struct Params {
    given: BTreeMap<String, String>,
    resolved: BTreeMap<String, String>,
}

impl Params {
    fn take(&mut self, key: &str, default: &str) -> String {
        let v = self.given.remove(key).unwrap_or_else(|| default.to_string());
        self.resolved.insert(key.to_string(), v.clone());
        v
    }

    fn usize(&mut self, key: &str, default: &str) -> Result<usize> {
        let v = self.take(key, default);
        v.parse().map_err(|_| Error::BadParams(format!("{key} must be a nonnegative integer, got `{v}`")))
    }

    fn u64(&mut self, key: &str, default: &str) -> Result<u64> {
        let v = self.take(key, default);
        v.parse().map_err(|_| Error::BadParams(format!("{key} must be a nonnegative integer, got `{v}`")))
    }

    fn value(&mut self, key: &str, default: &str) -> Result<ExtValue> {
        let v = self.take(key, default);
        v.parse().map_err(|_| Error::BadParams(format!("{key} must be a value, got `{v}`")))
    }
}

fn random_size(n: usize) -> Result<usize> {
    if n == 0 || n > MAX_POINTS {
        return Err(Error::BadParams(format!("n must be in 1..={MAX_POINTS}")));
    }
    Ok(n)
}

/// Builds a named entry. Parameters are `key=value` strings; unknown keys
/// are rejected and `reversed=true` transposes the result.
pub fn get(name: &str, params: &[&str]) -> Result<CatalogEntry> {
    let info = ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownEntry(name.to_string()))?;
    let mut p = Params { given: parse_params(params)?, resolved: BTreeMap::new() };
    let reversed = match p.given.remove("reversed").as_deref() {
        None | Some("false") => false,
        Some("true") => true,
        Some(other) => return Err(Error::BadParams(format!("reversed must be true or false, got `{other}`"))),
    };
    let mut designated = None;
    let space = match name {
        "exInorm" => {
            designated = Some((PointSet::singleton(0), PointSet::singleton(1)));
            exinorm()
        }
        "exVO" => {
            designated = Some((PointSet::singleton(0), PointSet::from_bits(0b1110)));
            exvo()
        }
        "exVO-repaired" => {
            designated = Some((PointSet::singleton(0), PointSet::singleton(1)));
            exvo()
        }
        "pplus-grid" => pplus_grid(p.usize("n", "5")?)?,
        "sorgenfrey-grid" => {
            let n = p.usize("n", "6")?;
            sorgenfrey_grid(n, p.value("step", "1")?)?
        }
        "qS-grid" => {
            let n = p.usize("n", "3")?;
            qs_grid(n, p.value("step", "1")?)?
        }
        "Xn-grid" => {
            let n = p.usize("n", "2")?;
            xn_grid(n, p.usize("m", "3")?)?
        }
        "random-metric" => {
            let n = random_size(p.usize("n", "5")?)?;
            random_metric(n, p.u64("seed", "0")?)
        }
        "random-quasimetric" => {
            let n = random_size(p.usize("n", "5")?)?;
            random_quasimetric(n, p.u64("seed", "0")?)
        }
        "random-topology" => {
            let n = random_size(p.usize("n", "4")?)?;
            random_topology(n, p.u64("seed", "0")?)
        }
        _ => unreachable!("listed entry without a builder"),
    };
    if let Some(k) = p.given.keys().next() {
        return Err(Error::BadParams(format!("{name} has no parameter `{k}`")));
    }
    if reversed {
        p.resolved.insert("reversed".into(), "true".into());
    }
    Ok(CatalogEntry {
        name: name.to_string(),
        params: p.resolved,
        space: if reversed { space.transpose() } else { space },
        designated,
        note: info.note,
    })
}
