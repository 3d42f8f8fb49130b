//! The normality decision procedure.
//!
//! A space is normal iff every γ-separated pair admits a Urysohn
//! contraction. Truncating a witness at `γ' ≤ γ` gives a witness at `γ'`, so
//! only `γ* = sep(A, B)` matters for each pair, and the existence criterion
//! of the parent module turns that into `min d*(Ā × B̄) ≥ γ*`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{contraction_to_scale, separation_degree, urysohn_unchecked, Orientation, Scale};
use super::UrysohnOutcome;
use crate::error::{Error, Result};
use crate::functions::FnOverSpace;
use crate::pointset::PointSet;
use crate::space::FiniteSpace;
use crate::value::ExtValue;

/// Largest space accepted by the exhaustive procedure.
pub const NORMALITY_LIMIT: usize = 16;

/// A pair that is `gamma`-separated but has no Urysohn contraction;
/// `shortfall = min d*(Ā × B̄) < gamma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub a: PointSet,
    pub b: PointSet,
    pub gamma: ExtValue,
    pub shortfall: ExtValue,
}

/// A Urysohn contraction for `(a, b, gamma)` in the `0 on A` orientation,
/// together with its scale.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub a: PointSet,
    pub b: PointSet,
    pub gamma: ExtValue,
    pub function: FnOverSpace,
    pub scale: Scale,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityVerdict {
    pub normal: bool,
    pub witness: Option<Witness>,
    /// False when only a sample of pairs was examined.
    pub exhaustive: bool,
    pub pairs_checked: u64,
}

/// Per-subset data: closure bits, `δ_A` and `D_A(x) = min_{a ∈ Ā} d*(x, a)`.
struct Table {
    n: usize,
    closure: Vec<u64>,
    delta: Vec<ExtValue>,
    reach: Vec<ExtValue>,
}

impl Table {
    fn build(s: &FiniteSpace) -> Table {
        let n = s.len();
        let d = s.path_closure();
        let count = 1usize << n;
        let mut closure = vec![0u64; count];
        let mut delta = vec![ExtValue::Inf; count * n];
        let mut reach = vec![ExtValue::Inf; count * n];
        // Fill incrementally: the subset with its lowest bit removed is
        // already done, so each entry is one min.
        for bits in 1..count {
            let low = bits.trailing_zeros() as usize;
            let rest = bits & (bits - 1);
            for x in 0..n {
                delta[bits * n + x] = delta[rest * n + x].min(s.q(x, low));
            }
        }
        for bits in 1..count {
            let c = (0..n)
                .filter(|&x| delta[bits * n + x].is_zero())
                .fold(0u64, |acc, x| acc | (1 << x));
            closure[bits] = c;
            for x in 0..n {
                reach[bits * n + x] = PointSet::from_bits(c)
                    .iter()
                    .map(|a| d.get(x, a))
                    .min()
                    .unwrap_or(ExtValue::Inf);
            }
        }
        Table { n, closure, delta, reach }
    }

    fn sep(&self, a: usize, b: usize) -> ExtValue {
        let n = self.n;
        (0..n).map(|x| self.delta[a * n + x] + self.delta[b * n + x]).min().unwrap()
    }

    fn gap(&self, a: usize, b: usize) -> ExtValue {
        let n = self.n;
        PointSet::from_bits(self.closure[a])
            .iter()
            .map(|x| self.reach[b * n + x])
            .min()
            .unwrap_or(ExtValue::Inf)
    }

    fn check(&self, a: usize, b: usize) -> Option<Witness> {
        if self.closure[a] & self.closure[b] != 0 {
            return None;
        }
        let gamma = self.sep(a, b);
        if gamma.is_zero() {
            return None;
        }
        let w = self.gap(a, b);
        (w < gamma).then(|| Witness {
            a: PointSet::from_bits(a as u64),
            b: PointSet::from_bits(b as u64),
            gamma,
            shortfall: w,
        })
    }
}

/// Exhaustive decision over all nonempty pairs `(A, B)`, ordered by the
/// bitmask of `A` and then of `B`; the witness is the first failure in that
/// order regardless of scheduling.
pub fn is_normal(s: &FiniteSpace) -> Result<NormalityVerdict> {
    let n = s.len();
    if n > NORMALITY_LIMIT {
        return Err(Error::InstanceTooLarge { size: n, limit: NORMALITY_LIMIT });
    }
    let table = Table::build(s);
    let count = 1usize << n;
    let witness = (1..count).into_par_iter().find_map_first(|a| {
        (1..count).find_map(|b| table.check(a, b))
    });
    let pairs = ((count - 1) as u64).pow(2);
    Ok(NormalityVerdict { normal: witness.is_none(), witness, exhaustive: true, pairs_checked: pairs })
}

/// Checks `samples` random nonempty pairs drawn from a seeded generator.
/// A `normal: true` answer only means no failure was found.
pub fn is_normal_sampled(s: &FiniteSpace, samples: u64, seed: u64) -> Result<NormalityVerdict> {
    let n = s.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full = PointSet::full(n).bits();
    let draw = |rng: &mut ChaCha8Rng| loop {
        let bits = rng.gen::<u64>() & full;
        if bits != 0 {
            return PointSet::from_bits(bits);
        }
    };
    let pairs: Vec<(PointSet, PointSet)> = (0..samples).map(|_| (draw(&mut rng), draw(&mut rng))).collect();
    let d = s.path_closure();
    let mut failures: Vec<Witness> = pairs
        .par_iter()
        .filter_map(|&(a, b)| {
            let gamma = separation_degree(s, a, b).ok()?;
            if gamma.is_zero() {
                return None;
            }
            let w = super::closure_gap_with(s, &d, a, b);
            (w < gamma).then_some(Witness { a, b, gamma, shortfall: w })
        })
        .collect();
    failures.sort_by_key(|w| (w.a, w.b));
    let witness = failures.into_iter().next();
    Ok(NormalityVerdict { normal: witness.is_none(), witness, exhaustive: false, pairs_checked: samples })
}

/// Urysohn contraction (0 on `Ā`, `γ` on `B̄`) and its scale for one pair.
/// With `gamma = None` the separation degree is used; an infinite degree
/// has no single certificate and is rejected.
pub fn certify(s: &FiniteSpace, a: PointSet, b: PointSet, gamma: Option<ExtValue>) -> Result<Certificate> {
    let degree = separation_degree(s, a, b)?;
    let gamma = gamma.unwrap_or(degree);
    if gamma.is_zero() || gamma.is_inf() {
        return Err(Error::InvalidParameter(format!("cannot certify at gamma = {gamma}")));
    }
    if gamma > degree {
        return Err(Error::NotSeparated { gamma, degree });
    }
    match urysohn_unchecked(s, &s.path_closure(), a, b, gamma, Orientation::ZeroOnA) {
        UrysohnOutcome::Found(function) => {
            let scale = contraction_to_scale(s, &function)?;
            Ok(Certificate { a, b, gamma, function, scale })
        }
        UrysohnOutcome::NoWitness { shortfall } => Err(Error::PreconditionFailed(format!(
            "no Urysohn contraction: min d* over the closures is {shortfall} < {gamma}"
        ))),
    }
}
