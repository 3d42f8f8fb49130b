//! Tietze extension of contractions from a subspace, gated by the
//! development condition, and the Urysohn functions it produces.
//!
//! Functions on `Y` and developments are indexed by the points of
//! `subspace(s, Y)`, which keeps the ambient order.

use crate::error::{Error, Result};
use crate::functions::{
    classify, lower_hull, upper_hull, Block, CodomainTag, Development, FnOverSpace,
};
use crate::interpolation::{kt_direct, Status};
use crate::pointset::PointSet;
use crate::separation::separation_degree;
use crate::space::FiniteSpace;
use crate::value::ExtValue;

/// `m_l − m_k > δ(x, M_k) + δ(x, M_l)` at an outside point `x`. Block
/// indices refer to the nonempty blocks in the order given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionViolation {
    pub x: usize,
    pub l: usize,
    pub k: usize,
    pub epsilon: ExtValue,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtensionStatus {
    Extended(FnOverSpace),
    ConditionFailed(ConditionViolation),
    NoExtension { point: usize, gap: ExtValue },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionResult {
    pub status: ExtensionStatus,
    pub mu_hat: FnOverSpace,
    pub mu_check: FnOverSpace,
    /// `𝔩(μ̂)`.
    pub lower_of_hat: Option<FnOverSpace>,
    /// `𝔲(μ̌)`.
    pub upper_of_check: Option<FnOverSpace>,
}

impl ExtensionResult {
    pub fn extension(&self) -> Option<&FnOverSpace> {
        match &self.status {
            ExtensionStatus::Extended(g) => Some(g),
            _ => None,
        }
    }
}

/// Indices of `ys` in ascending order, so subspace index `i` is `lift[i]`.
fn lift(ys: PointSet) -> Vec<usize> {
    ys.iter().collect()
}

fn lift_set(map: &[usize], set: PointSet) -> PointSet {
    set.iter().map(|i| map[i]).collect()
}

/// Checks `m_l − m_k ≤ δ(x, M_k) + δ(x, M_l)` for every `x ∉ Y` and every
/// pair of nonempty blocks, with `δ` taken in `X`.
pub fn tietze_condition(
    s: &FiniteSpace,
    ys: PointSet,
    dev: &Development,
) -> Result<Option<ConditionViolation>> {
    if ys.is_empty() {
        return Err(Error::EmptySubspace);
    }
    dev.check_partition(ys.len())?;
    let map = lift(ys);
    let blocks: Vec<(PointSet, ExtValue)> =
        dev.nonempty_blocks().map(|b| (lift_set(&map, b.set), b.level)).collect();
    for x in ys.complement(s.len()).iter() {
        let dist: Vec<ExtValue> = blocks.iter().map(|(m, _)| s.distance(x, *m)).collect();
        for l in 0..blocks.len() {
            for k in 0..blocks.len() {
                if blocks[l].1.tsub(blocks[k].1) > dist[k] + dist[l] {
                    return Ok(Some(ConditionViolation { x, l, k, epsilon: dev.epsilon }));
                }
            }
        }
    }
    Ok(None)
}

/// `μ̂ = f` on `Y` and `γ` off it; `μ̌ = f` on `Y` and `0` off it.
pub fn build_hats(
    s: &FiniteSpace,
    ys: PointSet,
    f: &FnOverSpace,
    gamma: ExtValue,
) -> Result<(FnOverSpace, FnOverSpace)> {
    if ys.is_empty() {
        return Err(Error::EmptySubspace);
    }
    if f.len() != ys.len() {
        return Err(Error::CarrierMismatch(format!(
            "function has {} values, subspace has {} points",
            f.len(),
            ys.len()
        )));
    }
    let map = lift(ys);
    if let Some(i) = (0..f.len()).find(|&i| f.get(i) > gamma) {
        return Err(Error::OutOfBound { point: s.name(map[i]).to_string() });
    }
    let mut hat = FnOverSpace::constant(s.len(), gamma);
    let mut check = FnOverSpace::constant(s.len(), ExtValue::ZERO);
    for (i, &x) in map.iter().enumerate() {
        hat.set(x, f.get(i));
        check.set(x, f.get(i));
    }
    Ok((hat, check))
}

/// The development whose blocks are the exact level sets of `f`. It
/// approximates `f` within every `ε > 0`, and its condition is the limit
/// of the conditions along any family of developments as `ε → 0`.
pub fn level_set_development(f: &FnOverSpace) -> Result<Development> {
    if !f.is_bounded() {
        return Err(Error::UnboundedInput);
    }
    let mut levels: Vec<ExtValue> = f.values().to_vec();
    levels.sort();
    levels.dedup();
    let blocks = levels
        .into_iter()
        .map(|v| Block { set: (0..f.len()).filter(|&i| f.get(i) == v).collect(), level: v })
        .collect();
    Development::new(ExtValue::int(1), blocks)
}

/// Extends `f: Y → [0, γ]` to a contraction on `X`.
///
/// The given development is checked first. The hull sandwich
/// `𝔲(μ̌) ≤ 𝔩(μ̂)` follows from the condition only up to `ε`, so the
/// level-set development (the `ε → 0` member of a family) is checked too;
/// a violation there is reported with `epsilon = 0`.
pub fn tietze_extend(
    s: &FiniteSpace,
    ys: PointSet,
    f: &FnOverSpace,
    gamma: ExtValue,
    dev: &Development,
) -> Result<ExtensionResult> {
    if gamma.is_inf() {
        return Err(Error::PreconditionFailed("gamma must be finite".into()));
    }
    let sub = s.subspace(ys)?;
    if f.len() != sub.len() {
        return Err(Error::CarrierMismatch(format!(
            "function has {} values, subspace has {} points",
            f.len(),
            sub.len()
        )));
    }
    if !classify(&sub, f, CodomainTag::Euclid) {
        return Err(Error::PreconditionFailed("f is not a contraction on the subspace".into()));
    }
    let (mu_hat, mu_check) = build_hats(s, ys, f, gamma)?;
    if !crate::functions::development_valid(dev, f)? {
        return Err(Error::PreconditionFailed("the development does not approximate f".into()));
    }
    let failed = |v: ConditionViolation, mu_hat, mu_check| ExtensionResult {
        status: ExtensionStatus::ConditionFailed(v),
        mu_hat,
        mu_check,
        lower_of_hat: None,
        upper_of_check: None,
    };
    if let Some(v) = tietze_condition(s, ys, dev)? {
        return Ok(failed(v, mu_hat, mu_check));
    }
    if let Some(v) = tietze_condition(s, ys, &level_set_development(f)?)? {
        return Ok(failed(ConditionViolation { epsilon: ExtValue::ZERO, ..v }, mu_hat, mu_check));
    }

    let l = lower_hull(s, &mu_hat)?;
    let u = upper_hull(s, &mu_check)?;
    assert!(u.le(&l), "hull sandwich fails although the condition holds");
    let status = match kt_direct(s, &u, &l)?.status {
        Status::Found(g) => {
            let map = lift(ys);
            assert!(
                (0..f.len()).all(|i| g.get(map[i]) == f.get(i)),
                "extension does not restrict to f"
            );
            ExtensionStatus::Extended(g)
        }
        Status::NoInterpolant { point, gap } => ExtensionStatus::NoExtension { point, gap },
    };
    Ok(ExtensionResult { status, mu_hat, mu_check, lower_of_hat: Some(l), upper_of_check: Some(u) })
}

/// A Urysohn function for `(A, B, γ)` obtained by extending `γ` on `Ā`,
/// `0` on `B̄` from `Y = Ā ∪ B̄`. The development has level `γ` on `Ā` and
/// `0` on `B̄`, matching the function it develops.
pub fn urysohn_via_tietze(
    s: &FiniteSpace,
    a: PointSet,
    b: PointSet,
    gamma: ExtValue,
) -> Result<ExtensionResult> {
    if gamma.is_inf() || gamma.is_zero() {
        return Err(Error::InvalidParameter("gamma must be finite and positive".into()));
    }
    let degree = separation_degree(s, a, b)?;
    if gamma > degree {
        return Err(Error::NotSeparated { gamma, degree });
    }
    let (ac, bc) = (s.closure(a), s.closure(b));
    let ys = ac.union(bc);
    let map = lift(ys);
    let values = map.iter().map(|&x| if ac.contains(x) { gamma } else { ExtValue::ZERO }).collect();
    let f = FnOverSpace::new(values);
    let local = |set: PointSet| -> PointSet {
        (0..map.len()).filter(|&i| set.contains(map[i])).collect()
    };
    let dev = Development::new(
        ExtValue::int(1),
        vec![Block { set: local(ac), level: gamma }, Block { set: local(bc), level: ExtValue::ZERO }],
    )?;
    tietze_extend(s, ys, &f, gamma, &dev)
}
