use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::tuple::{lagrangian_phase, EigenTuple};
use crate::error::{Error, Result};
use crate::report::{InequalityEntry, InequalityReport};

/// Open phase interval on which a family of pointwise inequalities holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchInterval {
    /// `(3π/2, 2π)`, n = 4.
    Supercritical,
    /// `(π, 3π/2)`, n = 4.
    Mid,
    /// `(π, 2π)`, n = 4.
    Full,
    /// `(π/2, 3π/2)`, n = 3.
    N3,
}

impl BranchInterval {
    pub fn endpoints(self) -> (f64, f64) {
        match self {
            BranchInterval::Supercritical => (1.5 * PI, 2.0 * PI),
            BranchInterval::Mid => (PI, 1.5 * PI),
            BranchInterval::Full => (PI, 2.0 * PI),
            BranchInterval::N3 => (FRAC_PI_2, 1.5 * PI),
        }
    }

    pub fn dim(self) -> usize {
        match self {
            BranchInterval::N3 => 3,
            _ => 4,
        }
    }

    pub fn contains(self, phase: f64) -> bool {
        let (lo, hi) = self.endpoints();
        lo < phase && phase < hi
    }

    pub fn name(self) -> &'static str {
        match self {
            BranchInterval::Supercritical => "supercritical",
            BranchInterval::Mid => "mid",
            BranchInterval::Full => "full",
            BranchInterval::N3 => "n3",
        }
    }

    /// The narrowest four-dimensional branch containing `phase`, if any.
    pub fn for_phase_n4(phase: f64) -> Option<Self> {
        [BranchInterval::Mid, BranchInterval::Supercritical]
            .into_iter()
            .find(|b| b.contains(phase))
    }
}

impl fmt::Display for BranchInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BranchInterval {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "supercritical" => Ok(BranchInterval::Supercritical),
            "mid" => Ok(BranchInterval::Mid),
            "full" => Ok(BranchInterval::Full),
            "n3" => Ok(BranchInterval::N3),
            other => Err(Error::domain(format!("unknown branch {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BranchReport {
    pub branch: BranchInterval,
    pub phase: f64,
    pub inequalities: InequalityReport,
}

impl BranchReport {
    pub fn passed(&self) -> bool {
        self.inequalities.passed()
    }
}

/// Evaluates the pointwise inequalities that hold on `branch`, each with its
/// signed margin.
pub fn branch_check(lambda: &EigenTuple, branch: BranchInterval) -> Result<BranchReport> {
    if lambda.dim() != branch.dim() {
        return Err(Error::domain(format!(
            "branch {branch} needs {} eigenvalues, got {}",
            branch.dim(),
            lambda.dim()
        )));
    }
    let phase = lagrangian_phase(lambda);
    if !branch.contains(phase) {
        let (lo, hi) = branch.endpoints();
        return Err(Error::PhaseOutsideBranch {
            phase,
            branch: branch.name(),
            lo,
            hi,
        });
    }

    let l = lambda.values();
    let s = lambda.sigmas();
    let mut r = InequalityReport::new();
    match branch {
        BranchInterval::Supercritical => {
            r.push(InequalityEntry::strict("min_lambda", 0.0, l[0]));
            // ascending order: the smallest pairwise product is λ1λ2 once all are positive
            let min_pair = pairwise(l).fold(f64::INFINITY, f64::min);
            r.push(InequalityEntry::strict("min_pair_product", 1.0, min_pair));
            r.push(InequalityEntry::strict("sigma3_minus_sigma1", s[1], s[3]));
        }
        BranchInterval::Mid | BranchInterval::Full => {
            for k in 1..=3 {
                r.push(InequalityEntry::strict(format!("sigma{k}"), 0.0, s[k]));
            }
            r.push(InequalityEntry::strict("sigma3_minus_sigma1", s[1], s[3]));
            if branch == BranchInterval::Mid {
                r.push(InequalityEntry::strict(
                    "sigma2_minus_sigma4_minus_1",
                    1.0,
                    s[2] - s[4],
                ));
            }
            r.push(InequalityEntry::strict("sigma2_minus_2", 2.0, s[2]));
            r.push(InequalityEntry::strict("lambda2_lambda4", 1.0, l[1] * l[3]));
            r.push(InequalityEntry::strict("lambda3_lambda4", 1.0, l[2] * l[3]));
        }
        BranchInterval::N3 => {
            // cos θ < 0 gives σ2 > 1; each pair of arctangents sums to more than 0
            r.push(InequalityEntry::strict("sigma2_minus_1", 1.0, s[2]));
            r.push(InequalityEntry::strict("min_pair_sum", 0.0, l[0] + l[1]));
        }
    }
    Ok(BranchReport {
        branch,
        phase,
        inequalities: r,
    })
}

fn pairwise(l: &[f64]) -> impl Iterator<Item = f64> + '_ {
    (0..l.len()).flat_map(move |i| (i + 1..l.len()).map(move |j| l[i] * l[j]))
}
