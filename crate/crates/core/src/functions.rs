//! `[0, ∞]`-valued functions on a finite space: indicators, regularity
//! classes, the hull operators and developments.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::space::FiniteSpace;
use crate::value::{r_div, r_mul, ExtValue, Rational, INF};

/// Values of a function, indexed like the points of its space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FnOverSpace {
    values: Vec<ExtValue>,
}

impl FnOverSpace {
    pub fn new(values: Vec<ExtValue>) -> Self {
        FnOverSpace { values }
    }

    pub fn constant(n: usize, c: ExtValue) -> Self {
        FnOverSpace { values: vec![c; n] }
    }

    pub fn values(&self) -> &[ExtValue] {
        &self.values
    }

    pub fn into_values(self) -> Vec<ExtValue> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> ExtValue {
        self.values[i]
    }

    pub fn set(&mut self, i: usize, v: ExtValue) {
        self.values[i] = v;
    }

    /// No value is `∞`.
    pub fn is_bounded(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    pub fn max_value(&self) -> ExtValue {
        self.values.iter().copied().max().unwrap_or(ExtValue::ZERO)
    }

    pub fn min_value(&self) -> ExtValue {
        self.values.iter().copied().min().unwrap_or(INF)
    }

    pub fn map(&self, mut op: impl FnMut(ExtValue) -> ExtValue) -> Self {
        FnOverSpace { values: self.values.iter().map(|&v| op(v)).collect() }
    }

    fn zip(&self, other: &Self, op: impl Fn(ExtValue, ExtValue) -> ExtValue) -> Self {
        assert_eq!(self.len(), other.len(), "carrier mismatch");
        FnOverSpace {
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| op(a, b)).collect(),
        }
    }

    /// Pointwise minimum.
    pub fn meet(&self, other: &Self) -> Self {
        self.zip(other, ExtValue::min)
    }

    /// Pointwise maximum.
    pub fn join(&self, other: &Self) -> Self {
        self.zip(other, ExtValue::max)
    }

    /// Pointwise `≤`.
    pub fn le(&self, other: &Self) -> bool {
        self.first_exceeding(other).is_none()
    }

    /// First point where `self > other`.
    pub fn first_exceeding(&self, other: &Self) -> Option<usize> {
        assert_eq!(self.len(), other.len(), "carrier mismatch");
        (0..self.len()).find(|&i| self.values[i] > other.values[i])
    }

    /// `f + c` for a nonnegative constant.
    pub fn plus(&self, c: ExtValue) -> Self {
        self.map(|v| v + c)
    }

    /// `f ∧ ω`.
    pub fn truncate(&self, omega: ExtValue) -> Self {
        self.map(|v| v.min(omega))
    }

    /// `ω ⊖ f`.
    pub fn reflect(&self, omega: ExtValue) -> Self {
        self.map(|v| omega.tsub(v))
    }

    /// Values at the points of `ys`, in ascending index order.
    pub fn restrict(&self, ys: PointSet) -> Self {
        FnOverSpace { values: ys.iter().map(|i| self.values[i]).collect() }
    }

    /// Sublevel set `{f ≤ v}`.
    pub fn sublevel(&self, v: ExtValue) -> PointSet {
        (0..self.len()).filter(|&i| self.values[i] <= v).collect()
    }

    /// Superlevel set `{f ≥ v}`.
    pub fn superlevel(&self, v: ExtValue) -> PointSet {
        (0..self.len()).filter(|&i| self.values[i] >= v).collect()
    }
}

/// Which quasi-metric on `[0, ∞]` a function is tested against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CodomainTag {
    /// `d_𝔼 = d_ℙ ∨ d_ℙ⁻`.
    Euclid,
    /// `d_ℙ(a, b) = a ⊖ b`: lower regular functions.
    Lower,
    /// `d_ℙ⁻(a, b) = b ⊖ a` on bounded functions: upper regular functions.
    Upper,
}

fn check_carrier(s: &FiniteSpace, f: &FnOverSpace) -> Result<()> {
    if f.len() != s.len() {
        return Err(Error::CarrierMismatch(format!(
            "function has {} values, space has {} points",
            f.len(),
            s.len()
        )));
    }
    Ok(())
}

/// `θ_A` (0 on `A`, `∞` off it) or, with `omega`, the truncation `θ^ω_A`.
pub fn theta(s: &FiniteSpace, a: PointSet, omega: Option<ExtValue>) -> FnOverSpace {
    let off = omega.unwrap_or(INF);
    FnOverSpace::new(
        (0..s.len()).map(|x| if a.contains(x) { ExtValue::ZERO } else { off }).collect(),
    )
}

/// Whether `f` is contractive into `[0, ∞]` with the tagged quasi-metric.
/// Checking singletons suffices since `δ(x, A)` is attained at a point.
pub fn classify(s: &FiniteSpace, f: &FnOverSpace, tag: CodomainTag) -> bool {
    if f.len() != s.len() {
        return false;
    }
    if tag == CodomainTag::Upper && !f.is_bounded() {
        return false;
    }
    let n = s.len();
    (0..n).all(|x| {
        (0..n).all(|y| {
            let (fx, fy) = (f.get(x), f.get(y));
            let d = match tag {
                CodomainTag::Lower => fx.tsub(fy),
                CodomainTag::Upper => fy.tsub(fx),
                CodomainTag::Euclid => fx.euclid(fy),
            };
            d <= s.q(x, y)
        })
    })
}

/// `𝔩(μ)(x) = min_y μ(y) + q(x, y)`: the largest lower regular minorant.
pub fn lower_hull(s: &FiniteSpace, mu: &FnOverSpace) -> Result<FnOverSpace> {
    check_carrier(s, mu)?;
    let n = s.len();
    Ok(FnOverSpace::new(
        (0..n).map(|x| (0..n).map(|y| mu.get(y) + s.q(x, y)).min().unwrap()).collect(),
    ))
}

/// `𝔲(μ)(x) = max_y μ(y) ⊖ q(x, y)`: the smallest upper regular majorant.
pub fn upper_hull(s: &FiniteSpace, mu: &FnOverSpace) -> Result<FnOverSpace> {
    check_carrier(s, mu)?;
    if !mu.is_bounded() {
        return Err(Error::UnboundedInput);
    }
    let n = s.len();
    Ok(FnOverSpace::new(
        (0..n).map(|x| (0..n).map(|y| mu.get(y).tsub(s.q(x, y))).max().unwrap()).collect(),
    ))
}

/// `ι^ω_A(x) = ω ⊖ δ(x, X∖A)`.
pub fn core(s: &FiniteSpace, a: PointSet, omega: ExtValue) -> Result<FnOverSpace> {
    if omega.is_inf() {
        return Err(Error::InvalidParameter("core needs a finite bound".into()));
    }
    let rest = a.complement(s.len());
    Ok(FnOverSpace::new((0..s.len()).map(|x| omega.tsub(s.distance(x, rest))).collect()))
}

/// `δ_A`, or `δ_A ∧ ω` when `omega` is given.
pub fn delta_fn(s: &FiniteSpace, a: PointSet, omega: Option<ExtValue>) -> FnOverSpace {
    let cap = omega.unwrap_or(INF);
    FnOverSpace::new((0..s.len()).map(|x| s.distance(x, a).min(cap)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    pub set: PointSet,
    pub level: ExtValue,
}

/// A finite step function `μ_ε = min_i (m_i + θ_{M_i})` approximating a
/// bounded function from below within `ε`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Development {
    pub epsilon: ExtValue,
    pub blocks: Vec<Block>,
}

impl Development {
    pub fn new(epsilon: ExtValue, blocks: Vec<Block>) -> Result<Self> {
        if epsilon.is_inf() || epsilon.is_zero() {
            return Err(Error::InvalidParameter("epsilon must be finite and positive".into()));
        }
        if let Some(b) = blocks.iter().find(|b| b.level.is_inf()) {
            return Err(Error::InvalidParameter(format!("block {:?} has level inf", b.set)));
        }
        Ok(Development { epsilon, blocks })
    }

    /// Blocks with an empty set removed.
    pub fn nonempty_blocks(&self) -> impl Iterator<Item = &Block> {
        self.blocks.iter().filter(|b| !b.set.is_empty())
    }

    /// Checks that the nonempty blocks partition `{0, …, n-1}`.
    pub fn check_partition(&self, n: usize) -> Result<()> {
        let mut seen = PointSet::EMPTY;
        for b in self.nonempty_blocks() {
            if !b.set.is_disjoint(seen) {
                return Err(Error::CarrierMismatch(format!("block {:?} overlaps another", b.set)));
            }
            seen = seen.union(b.set);
        }
        if seen != PointSet::full(n) {
            return Err(Error::CarrierMismatch(format!(
                "blocks cover {:?}, carrier has {n} points",
                seen
            )));
        }
        Ok(())
    }

    /// The step function `μ_ε`.
    pub fn approximant(&self, n: usize) -> Result<FnOverSpace> {
        self.check_partition(n)?;
        let mut values = vec![ExtValue::ZERO; n];
        for b in self.nonempty_blocks() {
            for i in b.set.iter() {
                values[i] = b.level;
            }
        }
        Ok(FnOverSpace::new(values))
    }
}

/// Level sets `f⁻¹([iε, (i+1)ε))` at level `iε`, in ascending order.
pub fn canonical_development(f: &FnOverSpace, epsilon: ExtValue) -> Result<Development> {
    let eps = match epsilon.as_finite() {
        Some(e) if !e.is_zero() => e,
        _ => return Err(Error::InvalidParameter("epsilon must be finite and positive".into())),
    };
    if !f.is_bounded() {
        return Err(Error::UnboundedInput);
    }
    let mut cells: Vec<(Rational, PointSet)> = Vec::new();
    for (x, v) in f.values().iter().enumerate() {
        let idx = r_div(v.as_finite().unwrap(), eps).floor();
        match cells.iter_mut().find(|(i, _)| *i == idx) {
            Some((_, set)) => set.insert(x),
            None => cells.push((idx, PointSet::singleton(x))),
        }
    }
    cells.sort();
    let blocks = cells
        .into_iter()
        .map(|(i, set)| Block { set, level: ExtValue::Finite(r_mul(i, eps)) })
        .collect();
    Development::new(epsilon, blocks)
}

/// Exact check of `μ_ε ≤ f ≤ μ_ε + ε`.
pub fn development_valid(dev: &Development, f: &FnOverSpace) -> Result<bool> {
    let mu = dev.approximant(f.len())?;
    Ok(mu.le(f) && f.le(&mu.plus(dev.epsilon)))
}
