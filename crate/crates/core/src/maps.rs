//! Maps between finite spaces and the preservation statements for them.
//!
//! The expansive predicates quantify over whole function classes; on finite
//! spaces they reduce to pairwise criteria.
//!
//! Closed expansive: `f(μ) ∈ 𝔏'` for all `μ ∈ 𝔏` iff for all `y, y'` and
//! every `x' ∈ f⁻¹(y')`, `min_{x ∈ f⁻¹(y)} q(x, x') ≤ q'(y, y')`. Necessity
//! uses `μ = δ_{x'}`; sufficiency picks `x'` attaining `f(μ)(y')` and uses
//! `μ(x) ≤ μ(x') + q(x, x')`.
//!
//! Open expansive: `f(ν) ∈ 𝔘'` for all `ν ∈ 𝔘`. Images are `∞` off `f(X)`,
//! and `𝔘'` is bounded, so `f` must be onto. Then the condition is: for all
//! `y, y'` and every `x ∈ f⁻¹(y)`, `min_{x' ∈ f⁻¹(y')} q(x, x') ≤ q'(y, y')`,
//! with `ν = q(x, ·) ∧ ω` for necessity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::catalog;
use crate::error::{Error, Result};
use crate::functions::FnOverSpace;
use crate::pointset::PointSet;
use crate::separation::is_normal;
use crate::space::{FiniteSpace, Matrix};
use crate::value::{ExtValue, INF};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceMap {
    pub domain: FiniteSpace,
    pub codomain: FiniteSpace,
    assignment: Vec<usize>,
}

impl SpaceMap {
    pub fn new(domain: FiniteSpace, codomain: FiniteSpace, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != domain.len() {
            return Err(Error::InvalidMap(format!(
                "assignment has {} entries, domain has {} points",
                assignment.len(),
                domain.len()
            )));
        }
        if let Some(&y) = assignment.iter().find(|&&y| y >= codomain.len()) {
            return Err(Error::InvalidMap(format!("codomain has no point {y}")));
        }
        Ok(SpaceMap { domain, codomain, assignment })
    }

    pub fn identity(s: &FiniteSpace) -> Self {
        SpaceMap { domain: s.clone(), codomain: s.clone(), assignment: (0..s.len()).collect() }
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    pub fn preimage(&self, y: usize) -> PointSet {
        (0..self.domain.len()).filter(|&x| self.assignment[x] == y).collect()
    }

    pub fn image(&self) -> PointSet {
        self.assignment.iter().copied().collect()
    }

    pub fn is_surjective(&self) -> bool {
        self.image() == self.codomain.all()
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.domain.len()
    }
}

/// `q'(f(x), f(y)) ≤ q(x, y)` for all `x, y`.
pub fn is_contraction_map(m: &SpaceMap) -> bool {
    let n = m.domain.len();
    (0..n).all(|x| (0..n).all(|y| m.codomain.q(m.apply(x), m.apply(y)) <= m.domain.q(x, y)))
}

/// `f(μ)(y) = min_{x ∈ f⁻¹(y)} μ(x)`, `∞` off the image.
pub fn image_function(m: &SpaceMap, mu: &FnOverSpace) -> FnOverSpace {
    let mut out = FnOverSpace::constant(m.codomain.len(), INF);
    for x in 0..m.domain.len() {
        let y = m.apply(x);
        out.set(y, out.get(y).min(mu.get(x)));
    }
    out
}

pub fn is_closed_expansive(m: &SpaceMap) -> bool {
    let k = m.codomain.len();
    let pre: Vec<PointSet> = (0..k).map(|y| m.preimage(y)).collect();
    (0..k).all(|y| {
        (0..k).all(|y2| {
            pre[y2].iter().all(|x2| {
                let best = pre[y].iter().map(|x| m.domain.q(x, x2)).min().unwrap_or(INF);
                best <= m.codomain.q(y, y2)
            })
        })
    })
}

pub fn is_open_expansive(m: &SpaceMap) -> bool {
    if !m.is_surjective() {
        return false;
    }
    let k = m.codomain.len();
    let pre: Vec<PointSet> = (0..k).map(|y| m.preimage(y)).collect();
    (0..k).all(|y| {
        (0..k).all(|y2| {
            pre[y].iter().all(|x| {
                let best = pre[y2].iter().map(|x2| m.domain.q(x, x2)).min().unwrap_or(INF);
                best <= m.codomain.q(y, y2)
            })
        })
    })
}

/// The largest quasi-metric on `0..k` making `assignment` a contraction:
/// the min-plus closure of `min q(f⁻¹(y) × f⁻¹(y'))`.
pub fn quotient(s: &FiniteSpace, assignment: &[usize], k: usize) -> Result<SpaceMap> {
    let mut q = Matrix::filled(k, INF);
    for y in 0..k {
        q.set(y, y, ExtValue::ZERO);
    }
    for x in 0..s.len() {
        for x2 in 0..s.len() {
            let (y, y2) = (assignment[x], assignment[x2]);
            if y != y2 && s.q(x, x2) < q.get(y, y2) {
                q.set(y, y2, s.q(x, x2));
            }
        }
    }
    q.close_min_plus();
    let names = (0..k).map(|i| format!("c{i}")).collect();
    let codomain = FiniteSpace::from_matrix(names, q)?;
    SpaceMap::new(s.clone(), codomain, assignment.to_vec())
}

/// Counts from the randomized preservation suite.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PreservationReport {
    pub trials: u64,
    /// Surjections that are contractive, open and closed expansive.
    pub quotient_hypotheses_met: u64,
    pub quotient_normal_domain: u64,
    /// Injective closed expansive contractions into a normal space.
    pub embedding_hypotheses_met: u64,
    pub violations: Vec<String>,
}

fn random_space(rng: &mut ChaCha8Rng, trial: u64) -> FiniteSpace {
    let n = rng.gen_range(2..=6);
    let seed = rng.gen::<u64>();
    match trial % 3 {
        0 => catalog::random_metric(n, seed),
        1 => catalog::random_quasimetric(n, seed),
        _ => catalog::random_topology(n, seed),
    }
}

fn run_trial(trial: u64, seed: u64) -> Result<PreservationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ trial.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut rep = PreservationReport { trials: 1, ..Default::default() };
    let s = random_space(&mut rng, trial);
    let n = s.len();

    // Quotients: every codomain point gets at least one preimage.
    let k = rng.gen_range(1..=n);
    let mut assignment: Vec<usize> = (0..n).map(|x| if x < k { x } else { rng.gen_range(0..k) }).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        assignment.swap(i, j);
    }
    let m = quotient(&s, &assignment, k)?;
    if is_contraction_map(&m) && is_open_expansive(&m) && is_closed_expansive(&m) {
        rep.quotient_hypotheses_met += 1;
        if is_normal(&s)?.normal {
            rep.quotient_normal_domain += 1;
            if !is_normal(&m.codomain)?.normal {
                rep.violations.push(format!("trial {trial}: quotient of a normal space is not normal"));
            }
        }
    }

    // Subspaces: the inclusion of Y into s.
    let bits = rng.gen::<u64>() & s.all().bits();
    let ys = if bits == 0 { PointSet::singleton(0) } else { PointSet::from_bits(bits) };
    let sub = s.subspace(ys)?;
    let emb = SpaceMap::new(sub.clone(), s.clone(), ys.iter().collect())?;
    if emb.is_injective() && is_contraction_map(&emb) && is_closed_expansive(&emb) && is_normal(&s)?.normal {
        rep.embedding_hypotheses_met += 1;
        if !is_normal(&sub)?.normal {
            rep.violations.push(format!("trial {trial}: embedded subspace of a normal space is not normal"));
        }
    }
    Ok(rep)
}

/// Random quotients and subspace embeddings; each time a map meets the
/// hypotheses of a preservation statement, normality is checked on both
/// sides. Trials are independent and seeded per index.
pub fn run_preservation_suite(seed: u64, trials: u64) -> Result<PreservationReport> {
    let reports: Vec<PreservationReport> =
        (0..trials).into_par_iter().map(|t| run_trial(t, seed)).collect::<Result<_>>()?;
    Ok(reports.into_iter().fold(PreservationReport::default(), |mut acc, r| {
        acc.trials += r.trials;
        acc.quotient_hypotheses_met += r.quotient_hypotheses_met;
        acc.quotient_normal_domain += r.quotient_normal_domain;
        acc.embedding_hypotheses_met += r.embedding_hypotheses_met;
        acc.violations.extend(r.violations);
        acc
    }))
}
