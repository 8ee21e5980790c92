//! Intersection profiles built from pointwise data, and a few named
//! geometric examples.

use std::f64::consts::{PI, TAU};
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::charge::{analytic_angle_from_integrals, compute_winding, z_of_t, IntersectionProfile};
use crate::error::{Error, Result};
use crate::phase::{binomial, lagrangian_phase, BranchInterval, EigenTuple};

/// Invariant-form torus: `d_k = σ_k(λ) / C(n,k)` at unit volume.
pub fn constant_model(lambda: &EigenTuple) -> IntersectionProfile {
    let n = lambda.dim();
    let d = lambda
        .sigmas()
        .into_iter()
        .enumerate()
        .map(|(k, s)| s / binomial(n, k))
        .collect();
    IntersectionProfile::new(n, d).expect("constant model has unit volume")
}

/// Weighted average of constant models. The result is marked synthetic:
/// no manifold stands behind it, so Khovanskii–Teissier need not hold.
pub fn weighted_model(points: &[(f64, EigenTuple)]) -> Result<IntersectionProfile> {
    let Some((_, first)) = points.first() else {
        return Err(Error::domain("weighted model needs at least one point"));
    };
    let n = first.dim();
    if points.iter().any(|(_, l)| l.dim() != n) {
        return Err(Error::domain(
            "all weighted points must share one dimension",
        ));
    }
    if let Some((w, _)) = points.iter().find(|(w, _)| !(*w > 0.0)) {
        return Err(Error::domain(format!("weight {w} must be positive")));
    }
    let total: f64 = points.iter().map(|(w, _)| w).sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::domain(format!("weights sum to {total}, expected 1")));
    }
    let mut d = vec![0.0; n + 1];
    for (w, l) in points {
        for (k, s) in l.sigmas().into_iter().enumerate() {
            d[k] += w * s / binomial(n, k);
        }
    }
    Ok(IntersectionProfile::new(n, d)?.into_synthetic())
}

/// Blow-up of P³ at a point with `ω = aH − bE`, `c1(L) = cH − eE`.
///
/// Uses `H³ = E³ = 1` and `H·E = 0`, so every mixed monomial vanishes.
pub fn blowup_p3(a: f64, b: f64, c: f64, e: f64) -> Result<IntersectionProfile> {
    if !(a > b && b > 0.0) {
        return Err(Error::domain(format!(
            "aH - bE with a = {a}, b = {b} is not a Kähler class (need a > b > 0)"
        )));
    }
    let d = vec![
        a.powi(3) - b.powi(3),
        c * a * a - e * b * b,
        c * c * a - e * e * b,
        c.powi(3) - e.powi(3),
    ];
    IntersectionProfile::new(3, d)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightedPoint {
    pub w: f64,
    pub lambda: Vec<f64>,
}

/// JSON model description.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum ModelSpec {
    Constant { lambda: Vec<f64> },
    Weighted { points: Vec<WeightedPoint> },
    BlowupP3 { omega: [f64; 2], alpha: [f64; 2] },
}

impl ModelSpec {
    pub fn build(&self) -> Result<IntersectionProfile> {
        match self {
            ModelSpec::Constant { lambda } => Ok(constant_model(&EigenTuple::new(lambda.clone())?)),
            ModelSpec::Weighted { points } => {
                let pts = points
                    .iter()
                    .map(|p| Ok((p.w, EigenTuple::new(p.lambda.clone())?)))
                    .collect::<Result<Vec<_>>>()?;
                weighted_model(&pts)
            }
            ModelSpec::BlowupP3 { omega, alpha } => {
                blowup_p3(omega[0], omega[1], alpha[0], alpha[1])
            }
        }
    }
}

/// Integer grid of classes on the blow-up; `b` always runs over `1..a`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlowupGrid {
    pub a: RangeInclusive<i64>,
    pub c: RangeInclusive<i64>,
    pub e: RangeInclusive<i64>,
    /// Keep only `0 ≤ e < c`, i.e. nef or Kähler `c1(L)`.
    pub nef_alpha: bool,
}

impl Default for BlowupGrid {
    fn default() -> Self {
        BlowupGrid {
            a: 2..=10,
            c: 1..=10,
            e: 0..=9,
            nef_alpha: true,
        }
    }
}

impl BlowupGrid {
    pub fn points(&self) -> impl Iterator<Item = [i64; 4]> + '_ {
        self.a.clone().flat_map(move |a| {
            (1..a).flat_map(move |b| {
                self.c.clone().flat_map(move |c| {
                    self.e
                        .clone()
                        .filter(move |&e| !self.nef_alpha || (0 <= e && e < c))
                        .map(move |e| [a, b, c, e])
                })
            })
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BlowupCandidate {
    pub omega: [i64; 2],
    pub alpha: [i64; 2],
    pub profile: IntersectionProfile,
    /// `min |Z(t)|` on `[1, t_max]` divided by `max_k |d_k| / 3!`.
    pub relative_min_modulus: f64,
    pub origin_hit: Option<f64>,
}

/// Scans the grid and returns the `keep` profiles whose central charge path
/// comes closest to the origin, closest first.
pub fn scan_blowup_p3(grid: &BlowupGrid, keep: usize) -> Vec<BlowupCandidate> {
    let mut out: Vec<BlowupCandidate> = grid
        .points()
        .filter_map(|[a, b, c, e]| {
            let p = blowup_p3(a as f64, b as f64, c as f64, e as f64).ok()?;
            let w = compute_winding(&p, 0).ok()?;
            let scale = p.d().iter().fold(0.0_f64, |m, x| m.max(x.abs())) / 6.0;
            Some(BlowupCandidate {
                omega: [a, b],
                alpha: [c, e],
                relative_min_modulus: w.min_modulus / scale,
                origin_hit: w.origin_hit,
                profile: p,
            })
        })
        .collect();
    out.sort_by(|x, y| x.relative_min_modulus.total_cmp(&y.relative_min_modulus));
    out.truncate(keep);
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct ConsistencyCheck {
    pub name: &'static str,
    pub expected: f64,
    pub actual: f64,
    pub tolerance: f64,
    /// False when the check does not apply to this tuple; it then passes.
    pub applies: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConsistencyReport {
    pub lambda: Vec<f64>,
    pub phase: f64,
    pub profile: IntersectionProfile,
    pub checks: Vec<ConsistencyCheck>,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn angle_gap(a: f64, b: f64) -> f64 {
    let r = (a - b).rem_euclid(TAU);
    r.min(TAU - r)
}

/// Cross-checks the pointwise and cohomological descriptions of the
/// constant model of `lambda`.
pub fn consistency_suite(lambda: &EigenTuple) -> Result<ConsistencyReport> {
    let n = lambda.dim();
    let p = constant_model(lambda);
    let phase = lagrangian_phase(lambda);
    let mut checks = Vec::new();

    if n == 4 {
        let actual = analytic_angle_from_integrals(&p)?;
        let tolerance = 1e-9;
        checks.push(ConsistencyCheck {
            name: "analytic_angle",
            expected: phase,
            actual,
            tolerance,
            applies: true,
            pass: angle_gap(actual, phase) < tolerance,
        });
    }

    let factorial: f64 = (1..=n).map(|k| k as f64).product();
    let r: f64 = lambda
        .values()
        .iter()
        .map(|l| (1.0 + l * l).sqrt())
        .product::<f64>()
        / factorial;
    let modulus = z_of_t(&p, 1.0)?.norm();
    let tolerance = 1e-10;
    checks.push(ConsistencyCheck {
        name: "charge_modulus",
        expected: r,
        actual: modulus,
        tolerance,
        applies: true,
        pass: (modulus - r).abs() <= tolerance * r,
    });

    if (1..=4).contains(&n) {
        let applies = match n {
            4 => BranchInterval::Full.contains(phase),
            3 => BranchInterval::N3.contains(phase),
            _ => (((n as f64) - 2.0) * PI / 2.0..n as f64 * PI / 2.0).contains(&phase),
        };
        let w = compute_winding(&p, 0)?;
        let tolerance = 1e-9;
        checks.push(ConsistencyCheck {
            name: "algebraic_angle",
            expected: phase,
            actual: w.theta_alg,
            tolerance,
            applies,
            pass: !applies || (w.theta_alg - phase).abs() < tolerance,
        });
    }

    Ok(ConsistencyReport {
        lambda: lambda.values().to_vec(),
        phase,
        profile: p,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(v: &[f64]) -> EigenTuple {
        EigenTuple::new(v.to_vec()).unwrap()
    }

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len()
            && a.iter()
                .zip(b)
                .all(|(x, y)| (x - y).abs() <= 1e-12 * x.abs().max(1.0))
    }

    #[test]
    fn constant_examples() {
        assert!(close(
            constant_model(&t(&[2.0, 3.0, 4.0, 5.0])).d(),
            &[1.0, 3.5, 71.0 / 6.0, 38.5, 120.0]
        ));
        assert_eq!(
            constant_model(&t(&[0.0; 4])).d(),
            &[1.0, 0.0, 0.0, 0.0, 0.0]
        );
        assert_eq!(constant_model(&t(&[1.0; 4])).d(), &[1.0; 5]);
    }

    #[test]
    fn weighted_examples() {
        let l = t(&[0.5, 1.0, 2.0, 3.0]);
        let w = weighted_model(&[(1.0, l.clone())]).unwrap();
        assert_eq!(w.d(), constant_model(&l).d());
        assert!(w.is_synthetic());

        let w = weighted_model(&[(0.5, t(&[0.0; 4])), (0.5, t(&[1.0; 4]))]).unwrap();
        assert_eq!(w.d(), &[1.0, 0.5, 0.5, 0.5, 0.5]);

        assert!(weighted_model(&[(0.5, l.clone())]).is_err());
        assert!(weighted_model(&[(1.5, l.clone()), (-0.5, l.clone())]).is_err());
        assert!(weighted_model(&[(0.5, l.clone()), (0.5, t(&[1.0; 3]))]).is_err());
        assert!(weighted_model(&[]).is_err());
    }

    #[test]
    fn weighted_common_level_set_keeps_angle() {
        let theta = 3.9;
        let pts: Vec<(f64, EigenTuple)> = crate::phase::level_set_sample(theta, 5, 11)
            .unwrap()
            .into_iter()
            .map(|l| (0.2, l))
            .collect();
        let w = weighted_model(&pts).unwrap();
        assert!((analytic_angle_from_integrals(&w).unwrap() - theta).abs() < 1e-9);
    }

    #[test]
    fn blowup_examples() {
        assert_eq!(
            blowup_p3(2.0, 1.0, 1.0, 0.0).unwrap().d(),
            &[7.0, 4.0, 2.0, 1.0]
        );
        assert_eq!(blowup_p3(2.0, 1.0, 2.0, 1.0).unwrap().d(), &[7.0; 4]);
        assert!(blowup_p3(1.0, 1.0, 1.0, 0.0).is_err());
        assert!(blowup_p3(2.0, 0.0, 1.0, 0.0).is_err());
        assert!(blowup_p3(-1.0, -2.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn model_spec_json() {
        let cases = [
            (
                r#"{"model":"constant","lambda":[5,4,3,2]}"#,
                vec![1.0, 3.5, 71.0 / 6.0, 38.5, 120.0],
            ),
            (
                r#"{"model":"weighted","points":[{"w":0.5,"lambda":[0,0,0,0]},{"w":0.5,"lambda":[1,1,1,1]}]}"#,
                vec![1.0, 0.5, 0.5, 0.5, 0.5],
            ),
            (
                r#"{"model":"blowup_p3","omega":[2,1],"alpha":[1,0]}"#,
                vec![7.0, 4.0, 2.0, 1.0],
            ),
        ];
        for (json, d) in cases {
            let spec: ModelSpec = serde_json::from_str(json).unwrap();
            assert!(close(spec.build().unwrap().d(), &d), "{json}");
        }
        assert!(serde_json::from_str::<ModelSpec>(r#"{"model":"torus"}"#).is_err());
    }

    #[test]
    fn default_grid_is_nef() {
        let g = BlowupGrid::default();
        assert!(g
            .points()
            .all(|[a, b, c, e]| a > b && b > 0 && 0 <= e && e < c));
        // Σ_{a=2}^{10} (a−1) · Σ_{c=1}^{10} c
        assert_eq!(g.points().count(), 45 * 55);
    }

    #[test]
    fn consistency_examples() {
        let r = consistency_suite(&t(&[1.0; 4])).unwrap();
        assert!(r.passed());
        let m = r
            .checks
            .iter()
            .find(|c| c.name == "charge_modulus")
            .unwrap();
        assert!((m.actual - 1.0 / 6.0).abs() < 1e-15);

        let r = consistency_suite(&t(&[0.0; 4])).unwrap();
        assert!(r.passed());
        let m = r
            .checks
            .iter()
            .find(|c| c.name == "charge_modulus")
            .unwrap();
        assert!((m.actual - 1.0 / 24.0).abs() < 1e-16);
        assert_eq!(r.phase, 0.0);

        let r = consistency_suite(&t(&[2.0, 3.0, 4.0, 5.0])).unwrap();
        assert!(r.passed());
        assert!(r.checks.iter().all(|c| c.applies));
    }
}
