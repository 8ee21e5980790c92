use std::f64::consts::FRAC_PI_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::tuple::EigenTuple;
use crate::error::{Error, Result};

/// Samples eigen tuples on the level set `Σ arctan λ_i = θ̂`.
///
/// The first `dim − 1` angles `u_i = arctan λ_i` are uniform, the last one is
/// solved for and the draw is rejected when it falls outside
/// `(−π/2 + ε, π/2 − ε)`. Each free angle is proposed from the part of
/// `(−π/2 + ε, π/2 − ε)` that can still reach the target, which leaves the
/// distribution on the level set unchanged and keeps the acceptance rate
/// bounded near `θ̂ = ±dim·π/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelSetSampler {
    pub dim: usize,
    pub epsilon: f64,
    pub max_attempts_per_sample: u64,
}

impl Default for LevelSetSampler {
    fn default() -> Self {
        LevelSetSampler {
            dim: 4,
            epsilon: 1e-3,
            max_attempts_per_sample: 1_000_000,
        }
    }
}

impl LevelSetSampler {
    pub fn with_dim(dim: usize) -> Self {
        LevelSetSampler {
            dim,
            ..Default::default()
        }
    }

    fn half_width(&self) -> f64 {
        FRAC_PI_2 - self.epsilon
    }

    fn check_target(&self, theta_hat: f64) -> Result<()> {
        let bound = self.dim as f64 * FRAC_PI_2;
        if self.dim < 2 {
            return Err(Error::domain("level-set sampling needs dim >= 2"));
        }
        if !(theta_hat.abs() < bound) {
            return Err(Error::domain(format!(
                "theta_hat {theta_hat} outside (-{bound}, {bound})"
            )));
        }
        Ok(())
    }

    /// `count` samples from a ChaCha8 stream seeded with `seed`.
    pub fn sample(&self, theta_hat: f64, count: usize, seed: u64) -> Result<Vec<EigenTuple>> {
        if count == 0 {
            return Err(Error::domain("sample count must be at least 1"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| self.sample_one(theta_hat, &mut rng))
            .collect()
    }

    pub fn sample_one<R: Rng + ?Sized>(&self, theta_hat: f64, rng: &mut R) -> Result<EigenTuple> {
        self.check_target(theta_hat)?;
        let a = self.half_width();
        let others = (self.dim - 1) as f64 * a;
        let lo = (-a).max(theta_hat - others);
        let hi = a.min(theta_hat + others);
        let exhausted = Error::SamplingExhausted {
            theta_hat,
            attempts: self.max_attempts_per_sample,
        };
        if lo >= hi {
            return Err(exhausted);
        }

        let mut free = vec![0.0; self.dim - 1];
        for _ in 0..self.max_attempts_per_sample {
            for x in free.iter_mut() {
                *x = rng.gen_range(lo..hi).tan();
            }
            if let Some(t) = self.complete(theta_hat, &free) {
                return Ok(t);
            }
        }
        Err(exhausted)
    }

    /// Solves `λ_dim = tan(θ̂ − Σ arctan λ_i)` for the given free entries, or
    /// `None` when the remaining angle is outside the admissible window.
    pub fn complete(&self, theta_hat: f64, free: &[f64]) -> Option<EigenTuple> {
        debug_assert_eq!(free.len() + 1, self.dim);
        let rest = theta_hat - free.iter().map(|l| l.atan()).sum::<f64>();
        if rest.abs() >= self.half_width() {
            return None;
        }
        let mut values = free.to_vec();
        values.push(rest.tan());
        EigenTuple::new(values).ok()
    }
}

/// Four-dimensional level-set samples with the default sampler settings.
pub fn level_set_sample(theta_hat: f64, count: usize, seed: u64) -> Result<Vec<EigenTuple>> {
    LevelSetSampler::default().sample(theta_hat, count, seed)
}
