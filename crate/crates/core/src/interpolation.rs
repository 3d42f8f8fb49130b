//! Katětov–Tong interpolation between an upper regular `g` and a lower
//! regular `h ≥ g`.
//!
//! Any contraction `u` into `([0, ∞], d_𝔼)` is 1-Lipschitz for the path
//! closure `d*`, so `u ≤ h` forces `u ≤ f* = min_y h(y) + d*(·, y)`. And `f*`
//! is itself a contraction below `h`. An interpolant therefore exists iff
//! `g ≤ f*`, and `f*` is the largest one.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::functions::{classify, core, delta_fn, CodomainTag, FnOverSpace};
use crate::separation::{is_normal, urysohn_unchecked, Orientation, UrysohnOutcome};
use crate::space::{FiniteSpace, Matrix};
use crate::value::{r_div, r_sub, rat, ExtValue, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Found(FnOverSpace),
    /// `g(point) − f*(point) = gap > 0`, the largest such gap.
    NoInterpolant { point: usize, gap: ExtValue },
}

/// Bounds of one stage `n` of the staged construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageReport {
    pub n: u32,
    pub f_n: FnOverSpace,
    /// `φ ≤ f_n`.
    pub lower_ok: bool,
    /// `f_n − ψ ≤ 2ω/n`.
    pub upper_ok: bool,
    /// `max (f_n ⊖ ψ)`. Every stage function is at least `3ω/n`, so this
    /// reaches `3ω/n` wherever `ψ` vanishes.
    pub excess: ExtValue,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterpolationResult {
    pub status: Status,
    /// First pass over `(φ, ψ) = (g, h)`.
    pub staged: Option<Vec<StageReport>>,
    /// Second pass over `(ω − ψ, ω − ⋀f_n ∧ f*)`.
    pub dual_staged: Option<Vec<StageReport>>,
}

impl InterpolationResult {
    pub fn interpolant(&self) -> Option<&FnOverSpace> {
        match &self.status {
            Status::Found(f) => Some(f),
            Status::NoInterpolant { .. } => None,
        }
    }
}

fn check_pair(s: &FiniteSpace, g: &FnOverSpace, h: &FnOverSpace) -> Result<()> {
    for f in [g, h] {
        if f.len() != s.len() {
            return Err(Error::CarrierMismatch(format!(
                "function has {} values, space has {} points",
                f.len(),
                s.len()
            )));
        }
    }
    if !g.is_bounded() || !h.is_bounded() {
        return Err(Error::UnboundedInput);
    }
    if !classify(s, g, CodomainTag::Upper) {
        return Err(Error::NotUpperRegular);
    }
    if !classify(s, h, CodomainTag::Lower) {
        return Err(Error::NotLowerRegular);
    }
    if let Some(x) = g.first_exceeding(h) {
        return Err(Error::NotOrdered { point: s.name(x).to_string() });
    }
    Ok(())
}

/// `f*(x) = min_y h(y) + d(x, y)`.
fn largest_minorant(d: &Matrix, h: &FnOverSpace) -> FnOverSpace {
    let n = h.len();
    FnOverSpace::new((0..n).map(|x| (0..n).map(|y| h.get(y) + d.get(x, y)).min().unwrap()).collect())
}

fn direct_status(d: &Matrix, g: &FnOverSpace, h: &FnOverSpace) -> (Status, FnOverSpace) {
    let fstar = largest_minorant(d, h);
    let worst = (0..g.len())
        .map(|x| (g.get(x).tsub(fstar.get(x)), x))
        .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    let status = match worst {
        Some((gap, point)) if !gap.is_zero() => Status::NoInterpolant { point, gap },
        _ => Status::Found(fstar.clone()),
    };
    (status, fstar)
}

/// Decides interpolation and returns the largest interpolant.
pub fn kt_direct(s: &FiniteSpace, g: &FnOverSpace, h: &FnOverSpace) -> Result<InterpolationResult> {
    check_pair(s, g, h)?;
    let (status, _) = direct_status(&s.path_closure(), g, h);
    Ok(InterpolationResult { status, staged: None, dual_staged: None })
}

/// `⋀ fs`, certified to lie below `⋁ (ω − gs)`.
pub fn tong_combine(fs: &[FnOverSpace], gs: &[FnOverSpace], omega: ExtValue) -> Result<FnOverSpace> {
    let (first, rest) = fs
        .split_first()
        .ok_or_else(|| Error::InvalidParameter("tong_combine needs at least one function".into()))?;
    let (g0, grest) = gs
        .split_first()
        .ok_or_else(|| Error::InvalidParameter("tong_combine needs at least one function".into()))?;
    let u = rest.iter().fold(first.clone(), |acc, f| acc.meet(f));
    let top = grest.iter().fold(g0.reflect(omega), |acc, g| acc.join(&g.reflect(omega)));
    match u.first_exceeding(&top) {
        Some(x) => Err(Error::SandwichViolated { point: x.to_string() }),
        None => Ok(u),
    }
}

fn ev(r: Rational) -> ExtValue {
    ExtValue::Finite(r)
}

/// One pass of the staged construction over `φ ≤ ψ ≤ ω`, for
/// `n = 3..=big_n`.
fn staged_pass(
    s: &FiniteSpace,
    d: &Matrix,
    phi: &FnOverSpace,
    psi: &FnOverSpace,
    omega: Rational,
    big_n: u32,
) -> Result<Vec<StageReport>> {
    let len = s.len();
    let mut reports = Vec::new();
    for n in 3..=big_n {
        let nn = Rational::from_integer(n as i64);
        let frac = |num: i64, den: i64| omega * rat(num, den) / nn;
        let mut f_n: Option<FnOverSpace> = None;
        for m in 2..n {
            let a = psi.sublevel(ev(frac(m as i64, 1)));
            let mut f_mn: Option<FnOverSpace> = None;
            for k in m..n {
                let b = phi.superlevel(ev(frac(2 * k as i64 + 1, 2)));
                let lo = frac(m as i64 + 1, 1);
                let hi = frac(2 * k as i64 + 3, 2).min(omega);
                let gamma = frac(2 * (k - m) as i64 + 1, 2);
                let stage = if b.is_empty() {
                    FnOverSpace::constant(len, ev(lo))
                } else if a.is_empty() {
                    FnOverSpace::constant(len, ev(hi))
                } else {
                    let u = match urysohn_unchecked(s, d, b, a, ev(gamma), Orientation::GammaOnA) {
                        UrysohnOutcome::Found(u) => u,
                        UrysohnOutcome::NoWitness { shortfall } => {
                            let sep = crate::separation::separation_degree(s, a, b)?;
                            let reason = if sep < ev(gamma) {
                                format!("pair is only {sep}-separated, needs {gamma}")
                            } else {
                                format!("min d* over the closures is {shortfall} < {gamma}")
                            };
                            return Err(Error::StageSeparationFailure { m, k, n, reason });
                        }
                    };
                    let slope = r_div(r_sub(hi, lo), gamma);
                    assert!(slope <= Rational::from_integer(1), "stage slope exceeds 1");
                    u.map(|v| ev(lo + v.as_finite().unwrap() * slope))
                };
                f_mn = Some(match f_mn {
                    None => stage,
                    Some(acc) => acc.join(&stage),
                });
            }
            let f_mn = f_mn.unwrap();
            f_n = Some(match f_n {
                None => f_mn,
                Some(acc) => acc.meet(&f_mn),
            });
        }
        let f_n = f_n.unwrap();
        let slack = ev(frac(2, 1));
        let lower_ok = phi.le(&f_n);
        let excess = (0..len).map(|x| f_n.get(x).tsub(psi.get(x))).max().unwrap_or(ExtValue::ZERO);
        let upper_ok = excess <= slack;
        reports.push(StageReport { n, f_n, lower_ok, upper_ok, excess });
    }
    Ok(reports)
}

/// The staged construction of the proof, truncated at `big_n` stages, then
/// the finite Tong step. `omega` defaults to `max h`.
///
/// At a finite truncation `⋀ f_n` can exceed `h` by up to `2ω/N`, so the
/// final combination also takes the direct interpolant `f*` (and
/// `ω − f*` on the dual side). The result is `⋀ f_n ∧ f*`, which lies in
/// `[g, h]` whenever an interpolant exists.
pub fn kt_staged(
    s: &FiniteSpace,
    g: &FnOverSpace,
    h: &FnOverSpace,
    big_n: u32,
    omega: Option<ExtValue>,
) -> Result<InterpolationResult> {
    check_pair(s, g, h)?;
    if big_n < 3 {
        return Err(Error::InvalidParameter("the staged construction needs N ≥ 3".into()));
    }
    let omega = omega.unwrap_or_else(|| h.max_value());
    let Some(w) = omega.as_finite() else {
        return Err(Error::InvalidParameter("omega must be finite".into()));
    };
    if omega < h.max_value() {
        return Err(Error::InvalidParameter(format!("omega {omega} is below max h")));
    }
    let d = s.path_closure();
    let (status, fstar) = direct_status(&d, g, h);
    if w.is_zero() {
        return Ok(InterpolationResult { status, staged: Some(vec![]), dual_staged: Some(vec![]) });
    }
    let staged = staged_pass(s, &d, g, h, w, big_n)?;
    let Status::Found(_) = status else {
        return Ok(InterpolationResult { status, staged: Some(staged), dual_staged: None });
    };
    let s_n = staged.iter().skip(1).fold(staged[0].f_n.clone(), |acc, r| acc.meet(&r.f_n));
    let lower = s_n.meet(&fstar);
    let dual_phi = h.reflect(omega);
    let dual_psi = lower.reflect(omega);
    let dual = staged_pass(s, &d, &dual_phi, &dual_psi, w, big_n)?;

    let mut fs: Vec<FnOverSpace> = staged.iter().map(|r| r.f_n.clone()).collect();
    fs.push(fstar.clone());
    let mut gs: Vec<FnOverSpace> = dual.iter().map(|r| r.f_n.clone()).collect();
    gs.push(fstar.reflect(omega));
    let u = tong_combine(&fs, &gs, omega)?;
    Ok(InterpolationResult { status: Status::Found(u), staged: Some(staged), dual_staged: Some(dual) })
}

/// The pair `(ι^γ_{X∖A}, δ^γ_B)` from a non-normality witness `(A, B, γ)`:
/// ordered, yet without an interpolant. An infinite `γ` is replaced by
/// `shortfall + 1`, which is still separated and still fails.
pub fn kt_witness_from_nonnormal(s: &FiniteSpace) -> Result<(FnOverSpace, FnOverSpace, ExtValue)> {
    let verdict = is_normal(s)?;
    let Some(w) = verdict.witness else {
        return Err(Error::SpaceIsNormal);
    };
    let gamma = if w.gamma.is_inf() { w.shortfall + ExtValue::int(1) } else { w.gamma };
    let g = core(s, w.a.complement(s.len()), gamma)?;
    let h = delta_fn(s, w.b, Some(gamma));
    Ok((g, h, gamma))
}
