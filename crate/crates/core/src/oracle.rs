//! Brute-force authorities for small instances.
//!
//! Each query enumerates every assignment of grid values to the points and
//! tests the defining property directly. Candidate grids are built from the
//! instance so that the extremal witnesses of the closed forms lie on them:
//! truncated path sums for Urysohn functions, `μ(y) ± q(x, y)` for hulls,
//! `h(y)` plus path sums for interpolants and the matrix entries for the
//! expansive-map classes. That they do is itself tested.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::functions::{CodomainTag, FnOverSpace};
use crate::maps::{image_function, SpaceMap};
use crate::pointset::PointSet;
use crate::separation::separation_degree;
use crate::space::FiniteSpace;
use crate::value::{ExtValue, INF};
use crate::functions::classify;

pub const DEFAULT_LIMIT: usize = 4;

/// Candidate values, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    values: Vec<ExtValue>,
}

impl GridSpec {
    pub fn new(values: impl IntoIterator<Item = ExtValue>) -> Self {
        let set: BTreeSet<ExtValue> = values.into_iter().collect();
        GridSpec { values: set.into_iter().collect() }
    }

    pub fn values(&self) -> &[ExtValue] {
        &self.values
    }

    pub fn contains(&self, v: ExtValue) -> bool {
        self.values.binary_search(&v).is_ok()
    }

    pub fn contains_all(&self, f: &FnOverSpace) -> bool {
        f.values().iter().all(|&v| self.contains(v))
    }

    pub fn with(&self, extra: impl IntoIterator<Item = ExtValue>) -> Self {
        GridSpec::new(self.values.iter().copied().chain(extra))
    }

    /// Sums of at most `|X| − 1` entries, capped at `gamma`, plus 0 and
    /// `gamma`.
    pub fn urysohn(s: &FiniteSpace, gamma: ExtValue) -> Self {
        let sums = path_sums(s, gamma);
        GridSpec::new(sums.into_iter().chain([ExtValue::ZERO, gamma]))
    }

    pub fn lower_hull(s: &FiniteSpace, mu: &FnOverSpace) -> Self {
        let n = s.len();
        let shifted = (0..n).flat_map(|x| (0..n).map(move |y| mu.get(y) + s.q(x, y)));
        GridSpec::new(shifted.chain(mu.values().iter().copied()).chain([ExtValue::ZERO]))
    }

    pub fn upper_hull(s: &FiniteSpace, mu: &FnOverSpace) -> Self {
        let n = s.len();
        let shifted = (0..n).flat_map(|x| (0..n).map(move |y| mu.get(y).tsub(s.q(x, y))));
        GridSpec::new(shifted.chain(mu.values().iter().copied()).chain([ExtValue::ZERO]))
    }

    /// `h(y)` plus path sums, up to `max h`, with the values of `g` and `h`.
    pub fn interpolation(s: &FiniteSpace, g: &FnOverSpace, h: &FnOverSpace) -> Self {
        let top = h.max_value();
        let sums = path_sums(s, top);
        let shifted: Vec<ExtValue> = h
            .values()
            .iter()
            .flat_map(|&hy| sums.iter().map(move |&p| hy + p))
            .filter(|&v| v <= top)
            .collect();
        GridSpec::new(
            shifted.into_iter().chain(g.values().iter().copied()).chain(h.values().iter().copied()).chain([ExtValue::ZERO]),
        )
    }

    /// Entries of `q` with 0 and `∞`.
    pub fn lower_class(s: &FiniteSpace) -> Self {
        GridSpec::new(entries(s).into_iter().chain([ExtValue::ZERO, INF]))
    }

    /// Finite entries of `q` up to `omega`, with 0 and `omega`.
    pub fn upper_class(s: &FiniteSpace, omega: ExtValue) -> Self {
        GridSpec::new(
            entries(s).into_iter().filter(|&v| v <= omega).chain([ExtValue::ZERO, omega]),
        )
    }
}

fn entries(s: &FiniteSpace) -> Vec<ExtValue> {
    let n = s.len();
    (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| s.q(i, j)).collect()
}

fn path_sums(s: &FiniteSpace, cap: ExtValue) -> BTreeSet<ExtValue> {
    let steps: Vec<ExtValue> = s.positive_values();
    let mut all: BTreeSet<ExtValue> = [ExtValue::ZERO].into();
    let mut frontier = all.clone();
    for _ in 1..s.len() {
        let next: BTreeSet<ExtValue> = frontier
            .iter()
            .flat_map(|&p| steps.iter().map(move |&e| (p + e).min(cap)))
            .filter(|v| !all.contains(v))
            .collect();
        if next.is_empty() {
            break;
        }
        all.extend(next.iter().copied());
        frontier = next;
    }
    all
}

/// Regularity of `(f(i), f(j))` in both orders.
fn pair_ok(s: &FiniteSpace, tag: CodomainTag, i: usize, j: usize, fi: ExtValue, fj: ExtValue) -> bool {
    let lower = || fi.tsub(fj) <= s.q(i, j) && fj.tsub(fi) <= s.q(j, i);
    let upper = || fj.tsub(fi) <= s.q(i, j) && fi.tsub(fj) <= s.q(j, i);
    match tag {
        CodomainTag::Lower => lower(),
        CodomainTag::Upper => fi.is_finite() && upper(),
        CodomainTag::Euclid => lower() && upper(),
    }
}

/// All grid functions in a regularity class within pointwise bounds.
struct Search<'a> {
    s: &'a FiniteSpace,
    tag: CodomainTag,
    grid: &'a GridSpec,
    lo: Vec<ExtValue>,
    hi: Vec<ExtValue>,
}

impl Search<'_> {
    fn candidates(&self, i: usize) -> impl Iterator<Item = ExtValue> + '_ {
        self.grid.values().iter().copied().filter(move |&v| self.lo[i] <= v && v <= self.hi[i])
    }

    fn extends(&self, vals: &[ExtValue], v: ExtValue) -> bool {
        let i = vals.len();
        pair_ok(self.s, self.tag, i, i, v, v)
            && vals.iter().enumerate().all(|(j, &fj)| pair_ok(self.s, self.tag, i, j, v, fj))
    }

    fn dfs(&self, vals: &mut Vec<ExtValue>, visit: &mut dyn FnMut(&[ExtValue]) -> bool) -> bool {
        if vals.len() == self.s.len() {
            return visit(vals);
        }
        for v in self.candidates(vals.len()) {
            if self.extends(vals, v) {
                vals.push(v);
                let stop = self.dfs(vals, visit);
                vals.pop();
                if stop {
                    return true;
                }
            }
        }
        false
    }

    /// First function (lexicographic in grid order) satisfying `pred`.
    fn find_first(&self, pred: impl Fn(&[ExtValue]) -> bool + Sync) -> Option<FnOverSpace> {
        if self.s.is_empty() {
            return pred(&[]).then(|| FnOverSpace::new(vec![]));
        }
        let firsts: Vec<ExtValue> = self.candidates(0).collect();
        firsts.par_iter().find_map_first(|&v0| {
            let mut found = None;
            let mut vals = vec![v0];
            if self.extends(&[], v0) {
                self.dfs(&mut vals, &mut |f| {
                    if pred(f) {
                        found = Some(FnOverSpace::new(f.to_vec()));
                    }
                    found.is_some()
                });
            }
            found
        })
    }

    /// Pointwise fold of all functions with an associative `op`.
    fn fold(&self, op: impl Fn(&FnOverSpace, &FnOverSpace) -> FnOverSpace + Sync) -> Option<FnOverSpace> {
        let firsts: Vec<ExtValue> = self.candidates(0).collect();
        firsts
            .par_iter()
            .filter_map(|&v0| {
                let mut acc: Option<FnOverSpace> = None;
                let mut vals = vec![v0];
                if self.extends(&[], v0) {
                    self.dfs(&mut vals, &mut |f| {
                        let f = FnOverSpace::new(f.to_vec());
                        acc = Some(match acc.take() {
                            None => f,
                            Some(a) => op(&a, &f),
                        });
                        false
                    });
                }
                acc
            })
            .reduce_with(|a, b| op(&a, &b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HullSide {
    Lower,
    Upper,
}

/// Oracle queries with a configurable size limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    pub limit: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { limit: DEFAULT_LIMIT }
    }
}

impl Oracle {
    fn admit(&self, s: &FiniteSpace) -> Result<()> {
        if s.len() > self.limit {
            return Err(Error::InstanceTooLarge { size: s.len(), limit: self.limit });
        }
        Ok(())
    }

    /// A grid contraction equal to `γ` on `A^(0)` and 0 on `B^(0)`.
    pub fn urysohn_witness(
        &self,
        s: &FiniteSpace,
        a: PointSet,
        b: PointSet,
        gamma: ExtValue,
        grid: Option<&GridSpec>,
    ) -> Result<Option<FnOverSpace>> {
        self.admit(s)?;
        if gamma.is_inf() {
            return Err(Error::InvalidParameter("oracle needs a finite gamma".into()));
        }
        let own;
        let grid = match grid {
            Some(g) => g,
            None => {
                own = GridSpec::urysohn(s, gamma);
                &own
            }
        };
        let (ac, bc) = (s.closure(a), s.closure(b));
        let n = s.len();
        let lo = (0..n).map(|x| if ac.contains(x) { gamma } else { ExtValue::ZERO }).collect();
        let hi = (0..n).map(|x| if bc.contains(x) { ExtValue::ZERO } else { gamma }).collect();
        let search = Search { s, tag: CodomainTag::Euclid, grid, lo, hi };
        Ok(search.find_first(|_| true))
    }

    pub fn urysohn_exists(
        &self,
        s: &FiniteSpace,
        a: PointSet,
        b: PointSet,
        gamma: ExtValue,
        grid: Option<&GridSpec>,
    ) -> Result<bool> {
        Ok(self.urysohn_witness(s, a, b, gamma, grid)?.is_some())
    }

    /// Pointwise sup of grid functions of `𝔏` below `μ`, or inf of grid
    /// functions of `𝔘` above a bounded `μ`.
    pub fn hull(
        &self,
        s: &FiniteSpace,
        mu: &FnOverSpace,
        side: HullSide,
        grid: Option<&GridSpec>,
    ) -> Result<FnOverSpace> {
        self.admit(s)?;
        if mu.len() != s.len() {
            return Err(Error::CarrierMismatch(format!(
                "function has {} values, space has {} points",
                mu.len(),
                s.len()
            )));
        }
        let n = s.len();
        let own;
        let grid = match (grid, side) {
            (Some(g), _) => g,
            (None, HullSide::Lower) => {
                own = GridSpec::lower_hull(s, mu);
                &own
            }
            (None, HullSide::Upper) => {
                own = GridSpec::upper_hull(s, mu);
                &own
            }
        };
        let found = match side {
            HullSide::Lower => {
                let search = Search {
                    s,
                    tag: CodomainTag::Lower,
                    grid,
                    lo: vec![ExtValue::ZERO; n],
                    hi: mu.values().to_vec(),
                };
                search.fold(|a, b| a.join(b))
            }
            HullSide::Upper => {
                if !mu.is_bounded() {
                    return Err(Error::UnboundedInput);
                }
                let search = Search { s, tag: CodomainTag::Upper, grid, lo: mu.values().to_vec(), hi: vec![INF; n] };
                search.fold(|a, b| a.meet(b))
            }
        };
        found.ok_or_else(|| Error::InvalidParameter("grid admits no function for the hull".into()))
    }

    pub fn kt_witness(
        &self,
        s: &FiniteSpace,
        g: &FnOverSpace,
        h: &FnOverSpace,
        grid: Option<&GridSpec>,
    ) -> Result<Option<FnOverSpace>> {
        self.admit(s)?;
        if g.len() != s.len() || h.len() != s.len() {
            return Err(Error::CarrierMismatch("functions do not match the space".into()));
        }
        if !g.is_bounded() || !h.is_bounded() {
            return Err(Error::UnboundedInput);
        }
        let own;
        let grid = match grid {
            Some(gr) => gr,
            None => {
                own = GridSpec::interpolation(s, g, h);
                &own
            }
        };
        let search = Search { s, tag: CodomainTag::Euclid, grid, lo: g.values().to_vec(), hi: h.values().to_vec() };
        Ok(search.find_first(|_| true))
    }

    pub fn kt_exists(&self, s: &FiniteSpace, g: &FnOverSpace, h: &FnOverSpace, grid: Option<&GridSpec>) -> Result<bool> {
        Ok(self.kt_witness(s, g, h, grid)?.is_some())
    }

    /// A grid `μ ∈ 𝔏` whose image is not in `𝔏'`, if any.
    pub fn closed_expansive_violation(&self, m: &SpaceMap, grid: Option<&GridSpec>) -> Result<Option<FnOverSpace>> {
        let s = &m.domain;
        self.admit(s)?;
        let own;
        let grid = match grid {
            Some(g) => g,
            None => {
                own = GridSpec::lower_class(s);
                &own
            }
        };
        let n = s.len();
        let search = Search { s, tag: CodomainTag::Lower, grid, lo: vec![ExtValue::ZERO; n], hi: vec![INF; n] };
        Ok(search.find_first(|mu| {
            let img = image_function(m, &FnOverSpace::new(mu.to_vec()));
            !classify(&m.codomain, &img, CodomainTag::Lower)
        }))
    }

    /// A grid `ν ∈ 𝔘` whose image is not in `𝔘'`, if any. The grid bound
    /// exceeds every finite entry of both spaces.
    pub fn open_expansive_violation(&self, m: &SpaceMap, grid: Option<&GridSpec>) -> Result<Option<FnOverSpace>> {
        let s = &m.domain;
        self.admit(s)?;
        let own;
        let grid = match grid {
            Some(g) => g,
            None => {
                let top = entries(s)
                    .into_iter()
                    .chain(entries(&m.codomain))
                    .filter(|v| v.is_finite())
                    .max()
                    .unwrap_or(ExtValue::ZERO);
                own = GridSpec::upper_class(s, top + ExtValue::int(1));
                &own
            }
        };
        let n = s.len();
        let search = Search { s, tag: CodomainTag::Upper, grid, lo: vec![ExtValue::ZERO; n], hi: vec![INF; n] };
        Ok(search.find_first(|nu| {
            let img = image_function(m, &FnOverSpace::new(nu.to_vec()));
            !classify(&m.codomain, &img, CodomainTag::Upper)
        }))
    }

    /// Normality by definition: every pair with positive separation degree
    /// has a Urysohn function at that degree. An infinite degree is tested
    /// at a value above every finite path length.
    pub fn is_normal(&self, s: &FiniteSpace) -> Result<bool> {
        self.admit(s)?;
        let n = s.len();
        let beyond = s.positive_values().into_iter().fold(ExtValue::int(1), |acc, v| acc + v);
        for a in PointSet::nonempty_subsets(n) {
            for b in PointSet::nonempty_subsets(n) {
                let gamma = separation_degree(s, a, b)?;
                if gamma.is_zero() {
                    continue;
                }
                let gamma = if gamma.is_inf() { beyond } else { gamma };
                if !self.urysohn_exists(s, a, b, gamma, None)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Frame condition (2) with `C` ranging over all subsets.
    pub fn frame_condition2(&self, s: &FiniteSpace) -> Result<bool> {
        self.admit(s)?;
        let n = s.len();
        let all: Vec<PointSet> = PointSet::all_subsets(n).collect();
        for a in PointSet::nonempty_subsets(n) {
            for b in PointSet::nonempty_subsets(n) {
                let gamma = separation_degree(s, a, b)?;
                if gamma.is_zero() {
                    continue;
                }
                let half = gamma.scale(crate::value::rat(1, 2));
                let deg = |u: PointSet, v: PointSet| {
                    if u.is_empty() || v.is_empty() {
                        INF
                    } else {
                        separation_degree(s, u, v).expect("nonempty")
                    }
                };
                if !all.iter().any(|&c| deg(a, c) >= half && deg(c.complement(n), b) >= half) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

pub fn oracle_urysohn_exists(s: &FiniteSpace, a: PointSet, b: PointSet, gamma: ExtValue) -> Result<bool> {
    Oracle::default().urysohn_exists(s, a, b, gamma, None)
}

pub fn oracle_hull(s: &FiniteSpace, mu: &FnOverSpace, side: HullSide) -> Result<FnOverSpace> {
    Oracle::default().hull(s, mu, side, None)
}

pub fn oracle_kt_exists(s: &FiniteSpace, g: &FnOverSpace, h: &FnOverSpace) -> Result<bool> {
    Oracle::default().kt_exists(s, g, h, None)
}

pub fn oracle_closed_expansive(m: &SpaceMap) -> Result<Option<FnOverSpace>> {
    Oracle::default().closed_expansive_violation(m, None)
}

pub fn oracle_open_expansive(m: &SpaceMap) -> Result<Option<FnOverSpace>> {
    Oracle::default().open_expansive_violation(m, None)
}
