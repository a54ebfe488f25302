//! Families of bandit problems built by flipping one arm's mean about 1/2.
//!
//! A family is described by base means `p_1 = 1/2` and `p_k in [1/4, 1/2)`
//! for `k >= 2` (0-based: `p[0] = 1/2`, tail strictly below `1/2`), with
//! deficits `d_k = 1/2 - p_k`. Problem `i` of the family keeps every base
//! mean except arm `i`, whose mean is flipped to `1/2 + d_i`; arm `i` is then
//! the unique best arm. Problem `0` is the base instance itself.

use serde::{Deserialize, Serialize};

use crate::bandit::BanditInstance;
use crate::error::{Error, Result};
use crate::rng::RngStream;

/// A flipped family: base means, deficits, and a stable label for reports.
#[derive(Debug, Clone, PartialEq)]
pub struct FlippedFamily {
    p: Vec<f64>,
    d: Vec<f64>,
    label: String,
}

impl FlippedFamily {
    /// Builds a family from the tail means `p_2, ..., p_K`.
    ///
    /// Each tail mean must lie in `[1/4, 1/2)`; the half-open upper end
    /// rejects degenerate arms with zero deficit.
    pub fn from_tail(p_tail: &[f64]) -> Result<Self> {
        if p_tail.is_empty() {
            return Err(Error::FamilyTooSmall);
        }
        let mut p = Vec::with_capacity(p_tail.len() + 1);
        p.push(0.5);
        for (offset, &value) in p_tail.iter().enumerate() {
            if !value.is_finite() || !(0.25..0.5).contains(&value) {
                return Err(Error::FamilyMeanOutOfRange { arm: offset + 1, value });
            }
            p.push(value);
        }
        // 0.5 - p is exact for p in [1/4, 1/2]: the difference lands on a
        // representable point of the finer of the two grids involved.
        let d: Vec<f64> = p.iter().map(|&pk| 0.5 - pk).collect();
        let label = format!("explicit_K{}", p.len());
        Ok(Self { p, d, label })
    }

    /// Builds the polynomial family with deficits `d_k = (1/4) (k/K)^alpha`
    /// for `k = 2..K` (1-based), so the last arm always sits at mean `1/4`.
    ///
    /// `alpha` controls how the deficits spread: 0 makes all tail arms equal,
    /// larger values concentrate small deficits near the best arm.
    pub fn alpha(arms: usize, alpha: f64) -> Result<Self> {
        if arms < 2 {
            return Err(Error::FamilyTooSmall);
        }
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "alpha must be finite and non-negative, got {alpha}"
            )));
        }
        let k_f = arms as f64;
        let mut p = Vec::with_capacity(arms);
        let mut d = Vec::with_capacity(arms);
        p.push(0.5);
        d.push(0.0);
        for k in 2..=arms {
            let deficit = 0.25 * (k as f64 / k_f).powf(alpha);
            d.push(deficit);
            p.push(0.5 - deficit);
        }
        let label = format!("alpha_K{arms}_a{alpha}");
        Ok(Self { p, d, label })
    }

    /// Number of arms (= number of problems in the family).
    pub fn arms(&self) -> usize {
        self.p.len()
    }

    /// Base means `p_k` (problem 0's means).
    pub fn base_means(&self) -> &[f64] {
        &self.p
    }

    /// Deficits `d_k = 1/2 - p_k`; `d[0] = 0`.
    pub fn deficits(&self) -> &[f64] {
        &self.d
    }

    /// Stable identifier used in emitted result tables.
    pub fn label(&self) -> &str {
        &self.label
    }

    /// Problem `i` of the family (0-based): arm `i`'s mean flipped to
    /// `1/2 + d_i`, every other arm at its base mean. Arm `i` is the unique
    /// best arm of the returned instance.
    pub fn instance(&self, i: usize) -> Result<BanditInstance> {
        if i >= self.arms() {
            return Err(Error::ArmOutOfRange { arm: i, arms: self.arms() });
        }
        let mut means = self.p.clone();
        means[i] = 0.5 + self.d[i];
        BanditInstance::new(means)
    }
}

/// Configuration-file description of a family.
///
/// `{"type": "alpha", "K": 16, "alpha": 1.0}` or
/// `{"type": "explicit", "p_tail": [0.25, 0.375]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum FamilySpec {
    Alpha {
        #[serde(rename = "K")]
        arms: usize,
        alpha: f64,
    },
    Explicit {
        p_tail: Vec<f64>,
    },
}

impl FamilySpec {
    pub fn build(&self) -> Result<FlippedFamily> {
        match self {
            FamilySpec::Alpha { arms, alpha } => FlippedFamily::alpha(*arms, *alpha),
            FamilySpec::Explicit { p_tail } => FlippedFamily::from_tail(p_tail),
        }
    }
}

/// Random instance with a unique optimal arm at mean `1/2` and suboptimal
/// means `1/2 - gap`, gaps drawn uniformly from `gap_range ⊂ (0, 1/2]`.
///
/// The optimal arm's position is drawn from the stream as well, so repeated
/// calls with distinct streams exercise all labelings.
pub fn make_uniform_random_instance(
    arms: usize,
    gap_range: (f64, f64),
    rng: &mut RngStream,
) -> Result<BanditInstance> {
    let (lo, hi) = gap_range;
    if arms < 2 {
        return Err(Error::InvalidArgument(format!(
            "random instance needs at least two arms, got {arms}"
        )));
    }
    if !(lo.is_finite() && hi.is_finite()) || lo <= 0.0 || lo > hi || hi > 0.5 {
        return Err(Error::InvalidArgument(format!(
            "gap range ({lo}, {hi}) must satisfy 0 < lo <= hi <= 1/2"
        )));
    }
    let best = (rng.next_u64() % arms as u64) as usize;
    let mut means = Vec::with_capacity(arms);
    for k in 0..arms {
        if k == best {
            means.push(0.5);
        } else {
            let gap = lo + rng.next_f64() * (hi - lo);
            means.push(0.5 - gap);
        }
    }
    BanditInstance::new(means)
}
