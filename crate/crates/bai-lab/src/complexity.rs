//! Hardness measures for best-arm identification instances and families.
//!
//! For an instance with best mean `mu*` and gaps `gap_k = mu* - mu_k`:
//!
//! * `complexity_h`    — exclusive sum `H = sum over suboptimal k of gap_k^-2`;
//! * `complexity_h2`   — `H2 = max over ranks k > |A*| of k * gap_(k)^-2`,
//!   with `gap_(k)` the gap of the k-th largest mean;
//! * `complexity_h_incl` — inclusive sum over all arms, where the (unique)
//!   best arm contributes the smallest suboptimal gap.
//!
//! The inclusive form satisfies `h2 <= h_incl <= ln(2K) * h2`; the exclusive
//! form does not bound `h2` from above (means `(0.5, 0.4, 0.3)` give
//! `H = 125 < H2 = 200`), which is why both are provided.

use serde::Serialize;

use crate::bandit::BanditInstance;
use crate::error::{Error, Result};
use crate::family::FlippedFamily;

/// KL divergence between Bernoulli(p) and Bernoulli(q), natural log.
///
/// `kl(p, q) = p ln(p/q) + (1-p) ln((1-p)/(1-q))`, defined for parameters
/// strictly inside `(0, 1)`.
pub fn kl_bernoulli(p: f64, q: f64) -> Result<f64> {
    for value in [p, q] {
        if !value.is_finite() || value <= 0.0 || value >= 1.0 {
            return Err(Error::KlDomain { value });
        }
    }
    Ok(p * (p / q).ln() + (1.0 - p) * ((1.0 - p) / (1.0 - q)).ln())
}

/// KL divergence between Bernoulli(p) and its flip Bernoulli(1-p):
/// `(1 - 2p) ln((1-p)/p)`. Symmetric in the two directions and zero at 1/2.
pub fn kl_flip(p: f64) -> Result<f64> {
    if !p.is_finite() || p <= 0.0 || p >= 1.0 {
        return Err(Error::KlDomain { value: p });
    }
    Ok((1.0 - 2.0 * p) * ((1.0 - p) / p).ln())
}

fn suboptimal_gaps(instance: &BanditInstance) -> Result<Vec<f64>> {
    let gaps: Vec<f64> = instance.gaps().into_iter().filter(|&g| g > 0.0).collect();
    if gaps.is_empty() {
        return Err(Error::AllArmsOptimal);
    }
    Ok(gaps)
}

/// Exclusive complexity `H`: sum of `gap^-2` over suboptimal arms only.
pub fn complexity_h(instance: &BanditInstance) -> Result<f64> {
    Ok(suboptimal_gaps(instance)?.iter().map(|g| g.powi(-2)).sum())
}

/// Rank-weighted complexity `H2 = max_{k > |A*|} k * gap_(k)^-2`, where
/// means are sorted descending and ranks are 1-based.
pub fn complexity_h2(instance: &BanditInstance) -> Result<f64> {
    let best = instance.best_mean();
    let mut sorted = instance.means().to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let first_suboptimal = sorted.iter().position(|&m| m < best).ok_or(Error::AllArmsOptimal)?;
    let mut h2 = 0.0f64;
    for (idx, &m) in sorted.iter().enumerate().skip(first_suboptimal) {
        let rank = (idx + 1) as f64;
        h2 = h2.max(rank / (best - m).powi(2));
    }
    Ok(h2)
}

/// Inclusive complexity: `sum_k gap'_k^-2` over all arms, where `gap'_k` is
/// the usual gap for suboptimal arms and the smallest suboptimal gap for the
/// best arm. Requires a unique optimum.
///
/// Unlike [`complexity_h`], this version dominates [`complexity_h2`]:
/// `h2 <= h_incl <= ln(2K) * h2`.
pub fn complexity_h_incl(instance: &BanditInstance) -> Result<f64> {
    if instance.best_arms().len() > 1 {
        return Err(Error::TiedOptimum);
    }
    let gaps = suboptimal_gaps(instance)?;
    let min_gap = gaps.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(min_gap.powi(-2) + gaps.iter().map(|g| g.powi(-2)).sum::<f64>())
}

/// All scalar complexities of one instance, plus its gap vector.
///
/// `h_incl` is `None` when the optimal mean is tied (the inclusive form is
/// undefined there); serialization writes `null`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplexityReport {
    pub h_excl: f64,
    pub h2: f64,
    pub h_incl: Option<f64>,
    pub gaps: Vec<f64>,
}

/// Computes every complexity of `instance`. Errors if all arms are optimal.
pub fn complexity_report(instance: &BanditInstance) -> Result<ComplexityReport> {
    let h_excl = complexity_h(instance)?;
    let h2 = complexity_h2(instance)?;
    let h_incl = match complexity_h_incl(instance) {
        Ok(v) => Some(v),
        Err(Error::TiedOptimum) => None,
        Err(e) => return Err(e),
    };
    Ok(ComplexityReport { h_excl, h2, h_incl, gaps: instance.gaps() })
}

/// Per-problem complexities of a flipped family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyComplexity {
    /// `h[i]` is the exclusive complexity of problem `i`, computed from the
    /// deficit sums `(d_i + d_k)^-2`; `h[0]` is always the maximum.
    pub h: Vec<f64>,
    /// `h_star = sum over i >= 1 of 1 / (d_i^2 * h[i])`; exactly 1 for K = 2.
    pub h_star: f64,
}

/// Evaluates `H(i) = sum_{k != i} (d_i + d_k)^-2` for every problem of the
/// family, and the spread statistic `h_star`.
pub fn family_complexities(family: &FlippedFamily) -> FamilyComplexity {
    let d = family.deficits();
    let arms = family.arms();
    let h: Vec<f64> = (0..arms)
        .map(|i| (0..arms).filter(|&k| k != i).map(|k| (d[i] + d[k]).powi(-2)).sum())
        .collect();
    let h_star = (1..arms).map(|i| 1.0 / (d[i] * d[i] * h[i])).sum();
    FamilyComplexity { h, h_star }
}
