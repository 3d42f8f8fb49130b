//! γ-separation, Urysohn contractions, contractive scales, the normality
//! decision procedure and the frame conditions.
//!
//! # Urysohn existence
//!
//! A contraction `f: X → ([0, γ], d_𝔼)` satisfies `|f(x) − f(y)| ≤ s(x, y)`
//! for the symmetrization `s`, hence `|f(x) − f(y)| ≤ d*(x, y)` for its path
//! closure. It is constant on closures, so `f = γ` on `Ā` and `f = 0` on `B̄`
//! forces `γ ≤ d*(a, b)` for all `a ∈ Ā`, `b ∈ B̄`. Conversely, if
//! `w = min d*(Ā × B̄) ≥ γ` then `x ↦ γ ∧ min_{b ∈ B̄} d*(x, b)` is
//! 1-Lipschitz for `d* ≤ s ≤ q` and takes the required boundary values. So a
//! Urysohn contraction exists iff `w ≥ γ`; the `oracle` module confirms this
//! by exhaustive search on small instances.

mod frame;
mod normality;
mod scale;

pub use frame::{frame_condition2, frame_condition3, FrameVerdict, FrameWitness};
pub use normality::{
    certify, is_normal, is_normal_sampled, Certificate, NormalityVerdict, Witness, NORMALITY_LIMIT,
};
pub use scale::{contraction_to_scale, scale_to_contraction, verify_normal_scale, Scale};

use crate::error::{Error, Result};
use crate::functions::{core, delta_fn, FnOverSpace};
use crate::pointset::PointSet;
use crate::space::{FiniteSpace, Matrix};
use crate::value::ExtValue;

/// `min_x δ(x, A) + δ(x, B)`, with no emptiness check: `∞` if either set is
/// empty.
pub(crate) fn sep_raw(s: &FiniteSpace, a: PointSet, b: PointSet) -> ExtValue {
    (0..s.len())
        .map(|x| s.distance(x, a) + s.distance(x, b))
        .min()
        .unwrap_or(ExtValue::Inf)
}

fn nonempty(a: PointSet, b: PointSet) -> Result<()> {
    if a.is_empty() || b.is_empty() {
        Err(Error::EmptySet)
    } else {
        Ok(())
    }
}

fn positive(gamma: ExtValue) -> Result<()> {
    if gamma.is_zero() {
        Err(Error::InvalidParameter("gamma must be positive".into()))
    } else {
        Ok(())
    }
}

fn positive_finite(gamma: ExtValue) -> Result<()> {
    positive(gamma)?;
    if gamma.is_inf() {
        return Err(Error::InvalidParameter("gamma must be finite".into()));
    }
    Ok(())
}

/// The largest `γ` for which `A` and `B` are γ-separated.
pub fn separation_degree(s: &FiniteSpace, a: PointSet, b: PointSet) -> Result<ExtValue> {
    nonempty(a, b)?;
    Ok(sep_raw(s, a, b))
}

/// `γ ≤ separation_degree(A, B)`.
pub fn is_gamma_separated(s: &FiniteSpace, a: PointSet, b: PointSet, gamma: ExtValue) -> Result<bool> {
    positive(gamma)?;
    Ok(gamma <= separation_degree(s, a, b)?)
}

/// γ-separation straight from the definition: `A^(α) ∩ B^(β) = ∅` whenever
/// `α + β < γ`. Enlargements only change at realized distances, and a point
/// in `A^(α) ∩ B^(β)` also lies in `A^(δ_A(x)) ∩ B^(δ_B(x))`, so realized
/// values of `δ_A` and `δ_B` are the only thresholds that need trying.
pub fn is_gamma_separated_direct(
    s: &FiniteSpace,
    a: PointSet,
    b: PointSet,
    gamma: ExtValue,
) -> Result<bool> {
    nonempty(a, b)?;
    positive(gamma)?;
    let realized = |set: PointSet| {
        let mut v: Vec<ExtValue> =
            (0..s.len()).map(|x| s.distance(x, set)).filter(|v| v.is_finite()).collect();
        v.sort();
        v.dedup();
        v
    };
    let (alphas, betas) = (realized(a), realized(b));
    for &alpha in &alphas {
        for &beta in &betas {
            if alpha + beta < gamma
                && !s.enlargement(a, alpha).is_disjoint(s.enlargement(b, beta))
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The three equivalent statements `(γ-separated, ι^γ_{X∖B} ≤ δ^γ_A,
/// ι^γ_{X∖A} ≤ δ^γ_B)`.
pub fn prop_inequal_check(
    s: &FiniteSpace,
    a: PointSet,
    b: PointSet,
    gamma: ExtValue,
) -> Result<(bool, bool, bool)> {
    positive_finite(gamma)?;
    let separated = is_gamma_separated(s, a, b, gamma)?;
    let n = s.len();
    let second = core(s, b.complement(n), gamma)?.le(&delta_fn(s, a, Some(gamma)));
    let third = core(s, a.complement(n), gamma)?.le(&delta_fn(s, b, Some(gamma)));
    Ok((separated, second, third))
}

/// Which set a Urysohn function sends to `γ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `f = γ` on `Ā`, `f = 0` on `B̄`.
    GammaOnA,
    /// `f = 0` on `Ā`, `f = γ` on `B̄`.
    ZeroOnA,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UrysohnOutcome {
    Found(FnOverSpace),
    /// No Urysohn contraction exists; `shortfall` is `min d*(Ā × B̄) < γ`.
    NoWitness { shortfall: ExtValue },
}

impl UrysohnOutcome {
    pub fn function(&self) -> Option<&FnOverSpace> {
        match self {
            UrysohnOutcome::Found(f) => Some(f),
            UrysohnOutcome::NoWitness { .. } => None,
        }
    }
}

/// `min_{b ∈ B} d(x, b)`.
pub(crate) fn dist_to(d: &Matrix, x: usize, b: PointSet) -> ExtValue {
    b.iter().map(|j| d.get(x, j)).min().unwrap_or(ExtValue::Inf)
}

/// `min d*(Ā × B̄)`.
pub fn closure_gap(s: &FiniteSpace, a: PointSet, b: PointSet) -> ExtValue {
    closure_gap_with(s, &s.path_closure(), a, b)
}

pub(crate) fn closure_gap_with(s: &FiniteSpace, d: &Matrix, a: PointSet, b: PointSet) -> ExtValue {
    let bc = s.closure(b);
    s.closure(a).iter().map(|x| dist_to(d, x, bc)).min().unwrap_or(ExtValue::Inf)
}

/// Urysohn contraction for `(A, B, γ)` with `f = γ` on `Ā` and `0` on `B̄`.
pub fn urysohn(s: &FiniteSpace, a: PointSet, b: PointSet, gamma: ExtValue) -> Result<UrysohnOutcome> {
    urysohn_oriented(s, a, b, gamma, Orientation::GammaOnA)
}

pub fn urysohn_oriented(
    s: &FiniteSpace,
    a: PointSet,
    b: PointSet,
    gamma: ExtValue,
    orientation: Orientation,
) -> Result<UrysohnOutcome> {
    positive_finite(gamma)?;
    let degree = separation_degree(s, a, b)?;
    if gamma > degree {
        return Err(Error::NotSeparated { gamma, degree });
    }
    Ok(urysohn_unchecked(s, &s.path_closure(), a, b, gamma, orientation))
}

/// The d*-formula without precondition checks. `d` must be the path closure.
pub(crate) fn urysohn_unchecked(
    s: &FiniteSpace,
    d: &Matrix,
    a: PointSet,
    b: PointSet,
    gamma: ExtValue,
    orientation: Orientation,
) -> UrysohnOutcome {
    let w = closure_gap_with(s, d, a, b);
    if w < gamma {
        return UrysohnOutcome::NoWitness { shortfall: w };
    }
    let bc = s.closure(b);
    let f = FnOverSpace::new((0..s.len()).map(|x| dist_to(d, x, bc).min(gamma)).collect());
    UrysohnOutcome::Found(match orientation {
        Orientation::GammaOnA => f,
        Orientation::ZeroOnA => f.reflect(gamma),
    })
}
