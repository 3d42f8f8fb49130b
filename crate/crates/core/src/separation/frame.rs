//! The two frame-style conditions implied by normality.
//!
//! Condition (2): for every pair with `γ = sep(A, B) > 0` some `C` has
//! `sep(A, C) ≥ γ/2` and `sep(X∖C, B) ≥ γ/2`. Since
//! `sep(A, C) = min_{c ∈ C} sep(A, {c})`, the admissible `C` are exactly the
//! subsets of `C_max = {c | sep(A, {c}) ≥ γ/2}`, and `sep(X∖C, B)` only grows
//! with `C`, so testing `C_max` decides the search.
//!
//! Condition (3): for `A^(ε) ∩ B^(ε) = ∅` some `ρ > 0` and `C` have
//! `A^(ρ) ∩ C^(ρ) = ∅` and `(X∖C)^(ρ) ∩ B^(ρ) = ∅`. The same maximal-`C`
//! argument applies with `C_max = {c | A^(ρ) ∩ {c}^(ρ) = ∅}`.


use super::sep_raw;
use crate::pointset::PointSet;
use crate::space::FiniteSpace;
use crate::value::{r_div, rat, ExtValue, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameWitness {
    pub a: PointSet,
    pub b: PointSet,
    /// `γ` for condition (2), `ε` for condition (3).
    pub level: ExtValue,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameVerdict {
    pub holds: bool,
    pub witness: Option<FrameWitness>,
}

impl FrameVerdict {
    fn from_witness(witness: Option<FrameWitness>) -> Self {
        FrameVerdict { holds: witness.is_none(), witness }
    }
}

fn half(v: ExtValue) -> ExtValue {
    v.scale(rat(1, 2))
}

/// Whether some `C` witnesses condition (2) for `(A, B)` at `γ`.
pub(crate) fn cond2_pair(s: &FiniteSpace, a: PointSet, b: PointSet, gamma: ExtValue) -> bool {
    let h = half(gamma);
    let c_max: PointSet =
        (0..s.len()).filter(|&c| sep_raw(s, a, PointSet::singleton(c)) >= h).collect();
    sep_raw(s, c_max.complement(s.len()), b) >= h
}

/// First pair (by bitmask of `A`, then `B`) with positive separation degree
/// for which no `C` exists.
pub fn frame_condition2(s: &FiniteSpace) -> FrameVerdict {
    let n = s.len();
    for a in PointSet::nonempty_subsets(n) {
        for b in PointSet::nonempty_subsets(n) {
            let gamma = sep_raw(s, a, b);
            if !gamma.is_zero() && !cond2_pair(s, a, b, gamma) {
                return FrameVerdict::from_witness(Some(FrameWitness { a, b, level: gamma }));
            }
        }
    }
    FrameVerdict::from_witness(None)
}

/// Representatives for `ε > 0`: enlargements only change at realized
/// distances, and those lie among the entries of `q`. Each positive entry
/// stands for the interval above it; half the smallest one stands for the
/// interval below it.
pub(crate) fn epsilon_representatives(s: &FiniteSpace) -> Vec<Rational> {
    let vals: Vec<Rational> = s.positive_values().iter().filter_map(|v| v.as_finite()).collect();
    let floor = vals.first().copied().unwrap_or(Rational::from_integer(1));
    let mut reps = vec![r_div(floor, Rational::from_integer(2))];
    reps.extend(vals);
    reps
}

/// `ρ` candidates for a given `ε`, ascending: half of each positive entry
/// and `ε/5`.
pub(crate) fn rho_candidates(s: &FiniteSpace, eps: Rational) -> Vec<Rational> {
    let mut rhos: Vec<Rational> = s
        .positive_values()
        .iter()
        .filter_map(|v| v.as_finite())
        .map(|v| r_div(v, Rational::from_integer(2)))
        .collect();
    rhos.push(r_div(eps, Rational::from_integer(5)));
    rhos.sort();
    rhos.dedup();
    rhos
}

pub(crate) fn cond3_pair_at(s: &FiniteSpace, a: PointSet, b: PointSet, rho: ExtValue) -> bool {
    let n = s.len();
    let a_rho = s.enlargement(a, rho);
    let c_max: PointSet = (0..n)
        .filter(|&c| a_rho.is_disjoint(s.enlargement(PointSet::singleton(c), rho)))
        .collect();
    s.enlargement(c_max.complement(n), rho).is_disjoint(s.enlargement(b, rho))
}

pub fn frame_condition3(s: &FiniteSpace) -> FrameVerdict {
    let n = s.len();
    for eps in epsilon_representatives(s) {
        let e = ExtValue::Finite(eps);
        let rhos = rho_candidates(s, eps);
        for a in PointSet::nonempty_subsets(n) {
            let a_eps = s.enlargement(a, e);
            for b in PointSet::nonempty_subsets(n) {
                if !a_eps.is_disjoint(s.enlargement(b, e)) {
                    continue;
                }
                if !rhos.iter().any(|&r| cond3_pair_at(s, a, b, ExtValue::Finite(r))) {
                    return FrameVerdict::from_witness(Some(FrameWitness { a, b, level: e }));
                }
            }
        }
    }
    FrameVerdict::from_witness(None)
}
