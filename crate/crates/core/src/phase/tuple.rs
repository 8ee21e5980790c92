use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative eigenvalues of `ω⁻¹α` at a point, kept in ascending order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTuple", into = "RawTuple")]
pub struct EigenTuple {
    values: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RawTuple {
    lambda: Vec<f64>,
}

impl TryFrom<RawTuple> for EigenTuple {
    type Error = Error;

    fn try_from(raw: RawTuple) -> Result<Self> {
        EigenTuple::new(raw.lambda)
    }
}

impl From<EigenTuple> for RawTuple {
    fn from(t: EigenTuple) -> Self {
        RawTuple { lambda: t.values }
    }
}

impl EigenTuple {
    /// Sorts `values` ascending; rejects empty input and non-finite entries.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::domain("eigen tuple must have at least one entry"));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::domain(format!(
                "eigen tuple entry {bad} is not finite"
            )));
        }
        values.sort_by(f64::total_cmp);
        Ok(EigenTuple { values })
    }

    /// `n` copies of `c`, i.e. the eigenvalues of `α = c·ω`.
    pub fn constant(n: usize, c: f64) -> Result<Self> {
        EigenTuple::new(vec![c; n])
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `σ_0, …, σ_n`, expanded from `∏(1 + λ_j x)`.
    pub fn sigmas(&self) -> Vec<f64> {
        let n = self.dim();
        let mut e = vec![0.0; n + 1];
        e[0] = 1.0;
        for (i, &l) in self.values.iter().enumerate() {
            for k in (1..=i + 1).rev() {
                e[k] += l * e[k - 1];
            }
        }
        e
    }
}

/// Binomial coefficient as a float; exact for the small arguments used here.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// The `k`-th elementary symmetric polynomial of the tuple.
pub fn sigma(lambda: &EigenTuple, k: usize) -> Result<f64> {
    let n = lambda.dim();
    if k > n {
        return Err(Error::domain(format!(
            "sigma index {k} exceeds dimension {n}"
        )));
    }
    Ok(lambda.sigmas()[k])
}

/// `θ = Σ arctan λ_j`, the Lagrangian phase.
pub fn lagrangian_phase(lambda: &EigenTuple) -> f64 {
    lambda.values.iter().map(|l| l.atan()).sum()
}

/// Real and imaginary parts of `∏(1 + iλ_j)`, written through the
/// alternating sums of `σ_k`.
pub fn phase_components(lambda: &EigenTuple) -> (f64, f64) {
    let s = lambda.sigmas();
    let mut re = 0.0;
    let mut im = 0.0;
    for (k, sk) in s.iter().enumerate() {
        // i^k = 1, i, -1, -i
        match k % 4 {
            0 => re += sk,
            1 => im += sk,
            2 => re -= sk,
            _ => im -= sk,
        }
    }
    (re, im)
}

/// Both sides of the four-variable factorization
/// `σ3 − σ1(σ2 − λ2λ4) = −(λ2+λ3+λ4)(λ1+λ3)(λ1+λ2) − λ3λ4(λ1+λ3) − λ4²(λ1+λ3)`,
/// indices referring to the ascending order.
pub fn factorization_identity(lambda: &EigenTuple) -> Result<(f64, f64)> {
    let [l1, l2, l3, l4] = four(lambda)?;
    let s = lambda.sigmas();
    let lhs = s[3] - s[1] * (s[2] - l2 * l4);
    let rhs = -(l2 + l3 + l4) * (l1 + l3) * (l1 + l2) - l3 * l4 * (l1 + l3) - l4 * l4 * (l1 + l3);
    Ok((lhs, rhs))
}

/// Largest `k` with `σ_1, …, σ_k > 0`; `n` is the pointwise Kähler condition.
pub fn gamma_cone(lambda: &EigenTuple) -> usize {
    lambda.sigmas()[1..]
        .iter()
        .take_while(|&&s| s > 0.0)
        .count()
}

/// Sum over disjoint index sets `I`, `J` with `|I| = j`, `|J| = k` of
/// `∏_I λ · ∏_J μ`.
///
/// `lambda` and `mu` are diagonals of two simultaneously diagonal forms, so
/// the pairing by index matters. This is the coefficient of `x^j y^k` in
/// `∏(1 + λ_i x + μ_i y)`.
pub fn mixed_sigma(lambda: &[f64], mu: &[f64], j: usize, k: usize) -> Result<f64> {
    let n = lambda.len();
    if mu.len() != n {
        return Err(Error::domain(format!(
            "mixed_sigma dimension mismatch: {} vs {}",
            n,
            mu.len()
        )));
    }
    if j + k > n {
        return Err(Error::domain(format!(
            "mixed_sigma degrees {j}+{k} exceed dimension {n}"
        )));
    }
    let mut c = vec![vec![0.0; k + 1]; j + 1];
    c[0][0] = 1.0;
    for (&l, &m) in lambda.iter().zip(mu) {
        for a in (0..=j).rev() {
            for b in (0..=k).rev() {
                let mut add = 0.0;
                if a > 0 {
                    add += l * c[a - 1][b];
                }
                if b > 0 {
                    add += m * c[a][b - 1];
                }
                c[a][b] += add;
            }
        }
    }
    Ok(c[j][k])
}

pub(crate) fn four(lambda: &EigenTuple) -> Result<[f64; 4]> {
    <[f64; 4]>::try_from(lambda.values())
        .map_err(|_| Error::domain(format!("expected 4 eigenvalues, got {}", lambda.dim())))
}
