//! Contractive scales: monotone step families `F: ℚ → 2^X` whose gaps are
//! quantitatively separated, and their correspondence with contractions.

use num_traits::{Signed, Zero};

use super::sep_raw;
use crate::error::{Error, Result};
use crate::functions::{classify, CodomainTag, FnOverSpace};
use crate::pointset::PointSet;
use crate::space::FiniteSpace;
use crate::value::{r_sub, ExtValue, Rational};

/// `F(r)` is the set at the largest threshold `≤ r`, empty below the first
/// threshold. The last set is the whole space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scale {
    breakpoints: Vec<(Rational, PointSet)>,
}

impl Scale {
    /// Checks shape only: nonnegative strictly ascending thresholds,
    /// monotone sets, last set `X`. The scale property is separate.
    pub fn new(n: usize, breakpoints: Vec<(Rational, PointSet)>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidScale(m));
        let Some(last) = breakpoints.last() else {
            return bad("no breakpoints".into());
        };
        if last.1 != PointSet::full(n) {
            return bad("the last set must be the whole space".into());
        }
        if breakpoints[0].0.is_negative() {
            return bad("thresholds must be nonnegative".into());
        }
        for w in breakpoints.windows(2) {
            if w[0].0 >= w[1].0 {
                return bad("thresholds must be strictly ascending".into());
            }
            if !w[0].1.is_subset(w[1].1) {
                return bad(format!("sets at {} and {} are not nested", w[0].0, w[1].0));
            }
        }
        Ok(Scale { breakpoints })
    }

    pub fn breakpoints(&self) -> &[(Rational, PointSet)] {
        &self.breakpoints
    }

    /// `F(r)`.
    pub fn at(&self, r: Rational) -> PointSet {
        self.breakpoints
            .iter()
            .take_while(|(t, _)| *t <= r)
            .last()
            .map_or(PointSet::EMPTY, |(_, set)| *set)
    }

    /// Union of `F(r)` over `r` in the open interval `]lo, hi[`.
    fn union_open(&self, lo: Rational, hi: Rational) -> PointSet {
        let below_hi = self.breakpoints.iter().take_while(|(t, _)| *t < hi).last();
        match below_hi {
            Some((_, set)) if lo < hi => *set,
            _ => PointSet::EMPTY,
        }
    }
}

/// First `(t_i, t_j)` with `sep(F(t_i), X∖F(t_j)) < t_{j+1} − t_i`. Between
/// breakpoints `F` is constant, so for `r < s` the worst case is `r = t_i`
/// and `s` just below `t_{j+1}`.
pub(crate) fn scale_property_violation(s: &FiniteSpace, f: &Scale) -> Option<(Rational, Rational)> {
    let bp = f.breakpoints();
    let n = s.len();
    for i in 0..bp.len() {
        for j in i..bp.len().saturating_sub(1) {
            let need = ExtValue::Finite(r_sub(bp[j + 1].0, bp[i].0));
            if sep_raw(s, bp[i].1, bp[j].1.complement(n)) < need {
                return Some((bp[i].0, bp[j + 1].0));
            }
        }
    }
    None
}

/// `x ↦ min{r | x ∈ F(r)}`.
pub fn scale_to_contraction(s: &FiniteSpace, f: &Scale) -> Result<FnOverSpace> {
    if let Some((r, t)) = scale_property_violation(s, f) {
        return Err(Error::InvalidScale(format!(
            "F({r}) and the complement of F(s) are not (s-{r})-separated for s just below {t}"
        )));
    }
    let values = (0..s.len())
        .map(|x| {
            let (t, _) = f.breakpoints().iter().find(|(_, set)| set.contains(x)).unwrap();
            ExtValue::Finite(*t)
        })
        .collect();
    Ok(FnOverSpace::new(values))
}

/// `r ↦ {f ≤ r}`, with breakpoints at the distinct values of `f`.
pub fn contraction_to_scale(s: &FiniteSpace, f: &FnOverSpace) -> Result<Scale> {
    if f.len() != s.len() || !f.is_bounded() || !classify(s, f, CodomainTag::Euclid) {
        return Err(Error::NotContractive);
    }
    let mut levels: Vec<ExtValue> = f.values().to_vec();
    levels.sort();
    levels.dedup();
    let breakpoints = levels
        .into_iter()
        .map(|v| (v.as_finite().unwrap(), f.sublevel(v)))
        .collect();
    Scale::new(s.len(), breakpoints)
}

/// Normality conditions on the step representation, for a scale that is
/// `0` on `A` and reaches `B` only at `γ`:
///  (i) `F(r) = ∅` for `r < 0`, i.e. the first threshold is `≥ 0`;
///  (ii) `Ā ⊆ F(r)` for every `r > 0`, i.e. `Ā ⊆ F(0)` by right continuity;
///  (iii) `B̄` misses `F(r)` for every `r ∈ ]0, γ[`;
/// plus the scale property.
pub fn verify_normal_scale(
    s: &FiniteSpace,
    f: &Scale,
    a: PointSet,
    b: PointSet,
    gamma: ExtValue,
) -> bool {
    let Some(g) = gamma.as_finite() else {
        return false;
    };
    let first_ok = f.breakpoints().first().is_some_and(|(t, _)| !t.is_negative());
    let a_ok = s.closure(a).is_subset(f.at(Rational::zero()));
    let b_ok = s.closure(b).is_disjoint(f.union_open(Rational::zero(), g));
    first_ok && a_ok && b_ok && scale_property_violation(s, f).is_none()
}
