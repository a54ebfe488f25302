//! Bernoulli bandit instances and the outcome record of a single run.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// A K-armed Bernoulli bandit: arm `k` pays 1 with probability `means[k]`.
///
/// Serializes as a bare JSON array of means, e.g. `[0.5, 0.4, 0.3]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct BanditInstance {
    means: Vec<f64>,
}

impl TryFrom<Vec<f64>> for BanditInstance {
    type Error = Error;

    fn try_from(means: Vec<f64>) -> Result<Self> {
        BanditInstance::new(means)
    }
}

impl From<BanditInstance> for Vec<f64> {
    fn from(instance: BanditInstance) -> Self {
        instance.means
    }
}

impl BanditInstance {
    /// Validates that the instance is non-empty with all means in `[0, 1]`.
    pub fn new(means: Vec<f64>) -> Result<Self> {
        if means.is_empty() {
            return Err(Error::EmptyInstance);
        }
        for (arm, &value) in means.iter().enumerate() {
            if !value.is_finite() || !(0.0..=1.0).contains(&value) {
                return Err(Error::MeanOutOfRange { arm, value });
            }
        }
        Ok(Self { means })
    }

    /// Number of arms K.
    pub fn arms(&self) -> usize {
        self.means.len()
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    /// Largest mean mu*.
    pub fn best_mean(&self) -> f64 {
        self.means.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Indices of all arms attaining the largest mean, ascending.
    ///
    /// Ties are exact `f64` equality: instances are built from exact
    /// rationals, so equality of stored bits is the intended tie notion.
    pub fn best_arms(&self) -> Vec<usize> {
        let best = self.best_mean();
        (0..self.arms()).filter(|&k| self.means[k] == best).collect()
    }

    /// Whether `arm` attains the largest mean.
    pub fn is_best(&self, arm: usize) -> bool {
        self.means[arm] == self.best_mean()
    }

    /// Suboptimality gaps `mu* - mu_k` (zero at every optimal arm).
    pub fn gaps(&self) -> Vec<f64> {
        let best = self.best_mean();
        self.means.iter().map(|&m| best - m).collect()
    }

    /// Draws one Bernoulli reward from `arm` using the given stream.
    pub fn sample(&self, arm: usize, rng: &mut RngStream) -> Result<u8> {
        match self.means.get(arm) {
            Some(&p) => Ok(rng.bernoulli(p)),
            None => Err(Error::ArmOutOfRange { arm, arms: self.arms() }),
        }
    }
}

/// Outcome of one strategy run on one instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunResult {
    /// Recommended arm index (0-based).
    pub recommended: usize,
    /// Pull counts per arm; sums to at most the budget.
    pub pulls: Vec<u64>,
    /// Final empirical means per arm; 0.0 for arms never pulled.
    pub empirical_means: Vec<f64>,
}
