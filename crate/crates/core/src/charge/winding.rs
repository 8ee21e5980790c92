use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use super::profile::IntersectionProfile;
use super::roots::{eval, positive_roots_even, positive_roots_odd};
use crate::error::{Error, Result};
use crate::phase::binomial;

/// Relative threshold on `|Z(t)|` below which the path is taken to hit the
/// origin, measured against `max_k |d_k| / n!`.
pub const ORIGIN_RTOL: f64 = 1e-10;

/// `Z(t) = −(1/n!) P(t)` with `P(t) = Σ C(n,k) d_k (−it)^(n−k)`, split into
/// real and imaginary coefficient vectors of `P` indexed by the power of `t`.
#[derive(Debug, Clone)]
pub struct ChargePath {
    re: Vec<f64>,
    im: Vec<f64>,
    inv_factorial: f64,
    max_abs_d: f64,
}

impl ChargePath {
    pub fn new(p: &IntersectionProfile) -> Self {
        let n = p.dim();
        let mut re = vec![0.0; n + 1];
        let mut im = vec![0.0; n + 1];
        for (k, &dk) in p.d().iter().enumerate() {
            let m = n - k;
            let c = binomial(n, k) * dk;
            // (−i)^m cycles through 1, −i, −1, i
            match m % 4 {
                0 => re[m] = c,
                1 => im[m] = -c,
                2 => re[m] = -c,
                _ => im[m] = c,
            }
        }
        let factorial: f64 = (1..=n).map(|k| k as f64).product();
        ChargePath {
            re,
            im,
            inv_factorial: 1.0 / factorial,
            max_abs_d: p.d().iter().fold(0.0, |m, x| m.max(x.abs())),
        }
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        Complex64::new(
            -self.inv_factorial * eval(&self.re, t),
            -self.inv_factorial * eval(&self.im, t),
        )
    }

    /// Positive `t` where `Re Z` vanishes.
    pub fn re_roots(&self) -> Vec<f64> {
        positive_roots_even(&self.re)
    }

    /// Positive `t` where `Im Z` vanishes.
    pub fn im_roots(&self) -> Vec<f64> {
        positive_roots_odd(&self.im)
    }

    /// `|Z|` below this counts as passing through the origin.
    pub fn origin_threshold(&self) -> f64 {
        ORIGIN_RTOL * self.max_abs_d * self.inv_factorial
    }
}

/// Evaluates the central charge at `t > 0`.
pub fn z_of_t(p: &IntersectionProfile, t: f64) -> Result<Complex64> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::domain(format!("z_of_t needs t > 0, got {t}")));
    }
    Ok(ChargePath::new(p).eval(t))
}

/// Direction of `Z(t)` for `t → ∞`, i.e. `arg(−(−i)^n)` reduced to
/// `(−π, π]`; equals `π` for `n = 4`.
pub fn reference_angle(n: usize) -> f64 {
    wrap(PI - n as f64 * PI / 2.0)
}

/// Reduces an angle to `(−π, π]`.
fn wrap(x: f64) -> f64 {
    let r = x - TAU * (x / TAU).round();
    if r <= -PI {
        r + TAU
    } else if r > PI {
        r - TAU
    } else {
        r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PathSample {
    pub t: f64,
    pub re: f64,
    pub im: f64,
    pub arg_lift: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct WindingReport {
    pub n: usize,
    /// Winding angle of `Z(t)` from `t = t_max` down to `t = 1`, measured
    /// from the asymptotic direction; NaN when the path hits the origin.
    pub theta_alg: f64,
    pub reference_angle: f64,
    /// Largest `t > 1` at which the path crosses the real axis.
    pub t_star: Option<f64>,
    pub origin_hit: Option<f64>,
    /// `min |Z(t)|` over the candidate points of `[1, t_max]`.
    pub min_modulus: f64,
    pub t_max: f64,
    /// Lifted argument samples, ordered from `t_max` down to `1`.
    #[serde(skip)]
    pub arg_lift: Vec<PathSample>,
}

impl WindingReport {
    pub fn lift_at_one(&self) -> f64 {
        self.arg_lift.last().map_or(f64::NAN, |s| s.arg_lift)
    }
}

fn anchor_bound(p: &IntersectionProfile) -> f64 {
    let n = p.dim();
    let d = p.d();
    let factorial: f64 = (1..=n).map(|k| k as f64).product();
    let m = (0..n)
        .map(|k| {
            (factorial * d[k] / (binomial(n, k) * d[0]))
                .abs()
                .powf(1.0 / (n - k) as f64)
        })
        .fold(0.0, f64::max);
    2.0 * (1.0 + m)
}

/// Tracks the continuous argument of `Z(t)` from `t_max` down to `1`.
///
/// The interval is split at every root of `Re Z` and `Im Z`, so each piece
/// stays inside one closed quadrant and the lift is exact at the split
/// points; `samples` extra evenly spaced points are added for the trace.
/// Never fails on a degenerate path: `origin_hit` is set instead.
pub fn compute_winding(p: &IntersectionProfile, samples: usize) -> Result<WindingReport> {
    let n = p.dim();
    if !(1..=4).contains(&n) {
        return Err(Error::domain(format!(
            "winding needs 1 <= n <= 4, got n = {n}"
        )));
    }
    let path = ChargePath::new(p);
    let re_roots = path.re_roots();
    let im_roots = path.im_roots();
    let largest_root = re_roots
        .iter()
        .chain(&im_roots)
        .fold(0.0_f64, |m, &r| m.max(r));
    let t_max = anchor_bound(p).max(2.0 * (1.0 + largest_root));
    let t_star = im_roots
        .iter()
        .copied()
        .filter(|&t| t > 1.0)
        .fold(None, |acc: Option<f64>, t| {
            Some(acc.map_or(t, |a| a.max(t)))
        });

    let mut breaks: Vec<f64> = re_roots
        .iter()
        .chain(&im_roots)
        .copied()
        .filter(|&t| t > 1.0 && t < t_max)
        .collect();
    breaks.push(1.0);
    breaks.push(t_max);
    breaks.sort_by(|a, b| b.total_cmp(a));
    breaks.dedup();

    let (hit_t, min_modulus) = breaks.iter().map(|&t| (t, path.eval(t).norm())).fold(
        (f64::NAN, f64::INFINITY),
        |acc, x| if x.1 < acc.1 { x } else { acc },
    );
    let reference = reference_angle(n);
    if min_modulus < path.origin_threshold() || min_modulus == 0.0 {
        return Ok(WindingReport {
            n,
            theta_alg: f64::NAN,
            reference_angle: reference,
            t_star,
            origin_hit: Some(hit_t),
            min_modulus,
            t_max,
            arg_lift: Vec::new(),
        });
    }

    let mut ts = breaks.clone();
    ts.extend(breaks.windows(2).map(|w| 0.5 * (w[0] + w[1])));
    if samples >= 2 {
        let h = (t_max - 1.0) / (samples - 1) as f64;
        ts.extend((1..samples - 1).map(|i| t_max - i as f64 * h));
    }
    ts.sort_by(|a, b| b.total_cmp(a));
    ts.dedup();

    let mut arg_lift = Vec::with_capacity(ts.len());
    let mut prev_arg = 0.0;
    let mut lift = 0.0;
    for (i, &t) in ts.iter().enumerate() {
        let z = path.eval(t);
        let arg = z.im.atan2(z.re);
        lift = if i == 0 {
            // beyond every root the quadrant is that of the leading term
            arg + TAU * ((reference - arg) / TAU).round()
        } else {
            lift + wrap(arg - prev_arg)
        };
        prev_arg = arg;
        arg_lift.push(PathSample {
            t,
            re: z.re,
            im: z.im,
            arg_lift: lift,
        });
    }

    Ok(WindingReport {
        n,
        theta_alg: lift - reference,
        reference_angle: reference,
        t_star,
        origin_hit: None,
        min_modulus,
        t_max,
        arg_lift,
    })
}

/// The algebraic lifted angle with its trace; a path through the origin is
/// an error.
pub fn winding_report(p: &IntersectionProfile) -> Result<WindingReport> {
    let r = compute_winding(p, 64)?;
    match r.origin_hit {
        Some(t) => Err(Error::DegeneratePath {
            t,
            modulus: r.min_modulus,
        }),
        None => Ok(r),
    }
}
