//! Seeded batch suites: the Monte Carlo theorem suite over level-set constant
//! models, the algebraic identity suite, and the Khovanskii–Teissier suite.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::charge::{
    check_chern_n4, compute_winding, general_kt, integrated_sigma_chain, kt_chain, z_of_t,
};
use crate::error::{Error, Result};
use crate::models::constant_model;
use crate::phase::{
    branch_check, factorization_identity, gamma_cone, lagrangian_phase, phase_components,
    BranchInterval, EigenTuple, LevelSetSampler,
};

/// Margin kept from the ends of `(π, 2π)` when `θ̂` is drawn at random.
pub const THETA_MARGIN: f64 = 0.01;

/// Relative tolerance of the identity suite.
pub const IDENTITY_RTOL: f64 = 1e-10;

#[derive(Debug, Clone, Serialize)]
pub struct TheoremSample {
    pub theta_hat: f64,
    pub lambda: Vec<f64>,
    pub chern_pass: bool,
    pub first_margin: f64,
    pub second_margin: f64,
    pub branch: Option<BranchInterval>,
    pub branch_pass: bool,
    pub full_branch_pass: bool,
    pub min_branch_margin: f64,
    pub sigma_chain_pass: bool,
    pub theta_alg: f64,
    pub angle_error: f64,
    pub t_star: Option<f64>,
    /// `sign Re Z(T*) = sign(second margin)`, when `T*` exists.
    pub t_star_agrees: Option<bool>,
}

impl TheoremSample {
    pub fn passed(&self) -> bool {
        self.chern_pass
            && self.branch_pass
            && self.full_branch_pass
            && self.sigma_chain_pass
            && self.t_star_agrees != Some(false)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremSuiteReport {
    pub count: usize,
    pub seed: u64,
    pub theta: Option<f64>,
    pub chern_failures: usize,
    pub branch_failures: usize,
    pub sigma_chain_failures: usize,
    pub t_star_checked: usize,
    pub t_star_disagreements: usize,
    pub min_first_margin: f64,
    pub min_second_margin: f64,
    pub min_branch_margin: f64,
    pub max_angle_error: f64,
    /// Indices of failing samples (first 20).
    pub failures: Vec<usize>,
    pub pass: bool,
    #[serde(skip)]
    pub samples: Vec<TheoremSample>,
}

fn signum0(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

fn evaluate_sample(theta_hat: f64, lambda: EigenTuple) -> Result<TheoremSample> {
    let p = constant_model(&lambda);
    let chern = check_chern_n4(&p)?;
    let first_margin = chern.get("first").expect("first").margin;
    let second_margin = chern.get("second").expect("second").margin;
    let phase = lagrangian_phase(&lambda);

    let branch = BranchInterval::for_phase_n4(phase);
    let (branch_pass, branch_min) = match branch {
        Some(b) => {
            let r = branch_check(&lambda, b)?;
            (r.passed(), r.inequalities.min_margin())
        }
        None => (true, f64::INFINITY),
    };
    let full = branch_check(&lambda, BranchInterval::Full)?;
    let sigma_chain_pass = integrated_sigma_chain(&p)?.passed();

    let w = compute_winding(&p, 0)?;
    let t_star_agrees = match w.t_star {
        Some(t) => Some(signum0(z_of_t(&p, t)?.re) == signum0(second_margin)),
        None => None,
    };
    Ok(TheoremSample {
        theta_hat,
        lambda: lambda.values().to_vec(),
        chern_pass: chern.passed() && first_margin > 0.0 && second_margin > 0.0,
        first_margin,
        second_margin,
        branch,
        branch_pass,
        full_branch_pass: full.passed(),
        min_branch_margin: branch_min.min(full.inequalities.min_margin()),
        sigma_chain_pass,
        theta_alg: w.theta_alg,
        angle_error: (w.theta_alg - phase).abs(),
        t_star: w.t_star,
        t_star_agrees,
    })
}

/// Draws `count` level-set constant models with `θ̂` fixed or, when `theta`
/// is `None`, uniform in `(π + 0.01, 2π − 0.01)`, and checks both
/// four-dimensional Chern-number inequalities, the pointwise branch
/// inequalities, the integrated σ chain, the lifted angle and the `T*`
/// sign agreement on each.
pub fn theorem_suite(count: usize, seed: u64, theta: Option<f64>) -> Result<TheoremSuiteReport> {
    if let Some(t) = theta {
        if !BranchInterval::Full.contains(t) {
            return Err(Error::domain(format!(
                "theorem suite needs theta in (pi, 2pi), got {t}"
            )));
        }
    }
    if count == 0 {
        return Err(Error::domain("sample count must be at least 1"));
    }
    let sampler = LevelSetSampler::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(count);
    for _ in 0..count {
        let theta_hat =
            theta.unwrap_or_else(|| rng.gen_range(PI + THETA_MARGIN..2.0 * PI - THETA_MARGIN));
        let lambda = sampler.sample_one(theta_hat, &mut rng)?;
        samples.push(evaluate_sample(theta_hat, lambda)?);
    }

    let fold_min =
        |f: fn(&TheoremSample) -> f64| samples.iter().map(f).fold(f64::INFINITY, f64::min);
    let failures: Vec<usize> = samples
        .iter()
        .enumerate()
        .filter(|(_, s)| !s.passed())
        .map(|(i, _)| i)
        .collect();
    Ok(TheoremSuiteReport {
        count,
        seed,
        theta,
        chern_failures: samples.iter().filter(|s| !s.chern_pass).count(),
        branch_failures: samples
            .iter()
            .filter(|s| !(s.branch_pass && s.full_branch_pass))
            .count(),
        sigma_chain_failures: samples.iter().filter(|s| !s.sigma_chain_pass).count(),
        t_star_checked: samples.iter().filter(|s| s.t_star_agrees.is_some()).count(),
        t_star_disagreements: samples
            .iter()
            .filter(|s| s.t_star_agrees == Some(false))
            .count(),
        min_first_margin: fold_min(|s| s.first_margin),
        min_second_margin: fold_min(|s| s.second_margin),
        min_branch_margin: fold_min(|s| s.min_branch_margin),
        max_angle_error: samples.iter().map(|s| s.angle_error).fold(0.0, f64::max),
        pass: failures.is_empty(),
        failures: failures.into_iter().take(20).collect(),
        samples,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentitySuiteReport {
    pub count: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub max_complex_product_error: f64,
    pub max_factorization_error: f64,
    pub max_vieta_error: f64,
    pub pass: bool,
}

/// Random tuples in `[−10, 10]⁴`: the σ form of `∏(1 + iλ_j)` against the
/// complex product itself, the factorization identity, and Vieta's
/// expansion of `∏(x + λ_j)`, all as relative errors.
pub fn identity_suite(count: usize, seed: u64) -> Result<IdentitySuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut cp, mut fac, mut vieta) = (0.0_f64, 0.0_f64, 0.0_f64);
    for _ in 0..count {
        let lambda = EigenTuple::new((0..4).map(|_| rng.gen_range(-10.0..=10.0)).collect())?;
        let x: f64 = rng.gen_range(-10.0..=10.0);

        let (re, im) = phase_components(&lambda);
        let z: Complex64 = lambda
            .values()
            .iter()
            .map(|&l| Complex64::new(1.0, l))
            .product();
        let scale = z.norm().max(1.0);
        cp = cp.max((re - z.re).abs().max((im - z.im).abs()) / scale);

        let (lhs, rhs) = factorization_identity(&lambda)?;
        fac = fac.max((lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1.0));

        let s = lambda.sigmas();
        let product: f64 = lambda.values().iter().map(|l| x + l).product();
        let expanded: f64 = s.iter().fold(0.0, |acc, sk| acc * x + sk);
        let scale: f64 = lambda
            .values()
            .iter()
            .map(|l| x.abs() + l.abs())
            .product::<f64>()
            .max(1.0);
        vieta = vieta.max((product - expanded).abs() / scale);
    }
    Ok(IdentitySuiteReport {
        count,
        seed,
        tolerance: IDENTITY_RTOL,
        max_complex_product_error: cp,
        max_factorization_error: fac,
        max_vieta_error: vieta,
        pass: cp <= IDENTITY_RTOL && fac <= IDENTITY_RTOL && vieta <= IDENTITY_RTOL,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct KtSuiteReport {
    pub count: usize,
    pub seed: u64,
    pub chain_failures: usize,
    pub general_failures: usize,
    /// Smallest required margin divided by `max(|lhs|, |rhs|)`.
    pub min_relative_margin: f64,
    pub pass: bool,
}

/// Random constant models in the `Γ_3` cone (`λ ∈ [−10, 10]⁴`): the KT chain
/// on the profile, and the mixed KT inequalities of degree 2 and 3 against a
/// random diagonal `β`.
pub fn kt_suite(count: usize, seed: u64) -> Result<KtSuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chain_failures = 0;
    let mut general_failures = 0;
    let mut min_rel = f64::INFINITY;
    let mut done = 0;
    while done < count {
        let lambda = EigenTuple::new((0..4).map(|_| rng.gen_range(-10.0..=10.0)).collect())?;
        if gamma_cone(&lambda) < 3 {
            continue;
        }
        done += 1;
        let r = kt_chain(&constant_model(&lambda))?;
        chain_failures += usize::from(!r.passed());
        let mu: Vec<f64> = (0..4).map(|_| rng.gen_range(-10.0..=10.0)).collect();
        let mut reports = vec![r];
        for m in 2..=3 {
            let g = general_kt(&lambda, &mu, m)?;
            general_failures += usize::from(!g.passed());
            reports.push(g);
        }
        for e in reports
            .iter()
            .flat_map(|r| r.entries())
            .filter(|e| e.required)
        {
            let scale = e.lhs.abs().max(e.rhs.abs());
            if scale > 0.0 {
                min_rel = min_rel.min(e.margin / scale);
            }
        }
    }
    Ok(KtSuiteReport {
        count,
        seed,
        chain_failures,
        general_failures,
        min_relative_margin: min_rel,
        pass: chain_failures == 0 && general_failures == 0,
    })
}
