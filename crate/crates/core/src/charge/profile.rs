use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase::binomial;

/// Intersection numbers `d[k] = ∫ c1(L)^k ∧ ω^(n−k)`, `k = 0..=n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawProfile", into = "RawProfile")]
pub struct IntersectionProfile {
    n: usize,
    d: Vec<f64>,
    synthetic: bool,
}

#[derive(Serialize, Deserialize)]
struct RawProfile {
    n: usize,
    d: Vec<f64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    synthetic: bool,
}

impl TryFrom<RawProfile> for IntersectionProfile {
    type Error = Error;

    fn try_from(raw: RawProfile) -> Result<Self> {
        let mut p = IntersectionProfile::new(raw.n, raw.d)?;
        p.synthetic = raw.synthetic;
        Ok(p)
    }
}

impl From<IntersectionProfile> for RawProfile {
    fn from(p: IntersectionProfile) -> Self {
        RawProfile {
            n: p.n,
            d: p.d,
            synthetic: p.synthetic,
        }
    }
}

impl IntersectionProfile {
    pub fn new(n: usize, d: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("profile dimension must be positive"));
        }
        if d.len() != n + 1 {
            return Err(Error::domain(format!(
                "profile of dimension {n} needs {} intersection numbers, got {}",
                n + 1,
                d.len()
            )));
        }
        if d.iter().any(|x| !x.is_finite()) {
            return Err(Error::domain("intersection numbers must be finite"));
        }
        if !(d[0] > 0.0) {
            return Err(Error::domain(format!(
                "volume d[0] = {} must be positive",
                d[0]
            )));
        }
        Ok(IntersectionProfile {
            n,
            d,
            synthetic: false,
        })
    }

    /// Marks a profile that does not come from an actual pair of classes.
    pub fn into_synthetic(mut self) -> Self {
        self.synthetic = true;
        self
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> &[f64] {
        &self.d
    }

    pub fn is_synthetic(&self) -> bool {
        self.synthetic
    }

    /// `c · d` for `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::domain(format!("scale factor {c} must be positive")));
        }
        let mut p = IntersectionProfile::new(self.n, self.d.iter().map(|x| c * x).collect())?;
        p.synthetic = self.synthetic;
        Ok(p)
    }

    /// `S_k = C(n,k) d_k / d_0`, the integrated `σ_k` at unit volume.
    pub fn sigma_integrals(&self) -> Vec<f64> {
        let d0 = self.d[0];
        self.d
            .iter()
            .enumerate()
            .map(|(k, dk)| binomial(self.n, k) * dk / d0)
            .collect()
    }

    pub(crate) fn expect_dim(&self, n: usize, op: &str) -> Result<()> {
        if self.n != n {
            return Err(Error::domain(format!(
                "{op} needs n = {n}, profile has n = {}",
                self.n
            )));
        }
        Ok(())
    }
}
