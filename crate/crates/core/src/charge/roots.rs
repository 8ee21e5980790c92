//! Positive real roots of the real and imaginary parts of the central charge.
//!
//! For `n ≤ 4` the real part is an even polynomial of degree ≤ 4 in `t` and
//! the imaginary part an odd one, so both reduce to a quadratic in `u = t²`.

/// Real roots of `a u² + b u + c`, ascending. A vanishing polynomial has no
/// isolated roots and yields an empty list.
pub fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    if a == 0.0 {
        if b == 0.0 {
            return Vec::new();
        }
        return vec![-c / b];
    }
    let mut disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        // tangency blurred by roundoff
        if disc > -1e-12 * (b * b + (4.0 * a * c).abs()) {
            disc = 0.0;
        } else {
            return Vec::new();
        }
    }
    if disc == 0.0 {
        return vec![-b / (2.0 * a)];
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let (r1, r2) = if q == 0.0 {
        // b = 0 and disc > 0
        let r = (-c / a).sqrt();
        (-r, r)
    } else {
        (q / a, c / q)
    };
    if r1 <= r2 {
        vec![r1, r2]
    } else {
        vec![r2, r1]
    }
}

/// Horner evaluation of `Σ c[m] t^m`.
pub(crate) fn eval(c: &[f64], t: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &x| acc * t + x)
}

fn eval_deriv(c: &[f64], t: f64) -> f64 {
    c.iter()
        .enumerate()
        .skip(1)
        .rev()
        .fold(0.0, |acc, (m, &x)| acc * t + m as f64 * x)
}

/// One Newton step on the full polynomial in `t`.
fn polish(c: &[f64], t: f64) -> f64 {
    let dp = eval_deriv(c, t);
    if dp == 0.0 || !dp.is_finite() {
        return t;
    }
    let next = t - eval(c, t) / dp;
    if next.is_finite() && next > 0.0 {
        next
    } else {
        t
    }
}

fn u_quadratic(coeffs: [f64; 3], c: &[f64]) -> Vec<f64> {
    let mut roots: Vec<f64> = quadratic_roots(coeffs[2], coeffs[1], coeffs[0])
        .into_iter()
        .filter(|&u| u > 0.0)
        .map(|u| polish(c, u.sqrt()))
        .collect();
    roots.sort_by(f64::total_cmp);
    roots.dedup();
    roots
}

/// Positive roots of `Σ c[m] t^m` where only even `m ≤ 4` are nonzero.
pub fn positive_roots_even(c: &[f64]) -> Vec<f64> {
    assert!(c.len() <= 5, "even polynomial of degree > 4");
    let at = |m: usize| c.get(m).copied().unwrap_or(0.0);
    u_quadratic([at(0), at(2), at(4)], c)
}

/// Positive roots of `Σ c[m] t^m` where only odd `m ≤ 5` are nonzero; the
/// root at `t = 0` is left out.
pub fn positive_roots_odd(c: &[f64]) -> Vec<f64> {
    assert!(c.len() <= 6, "odd polynomial of degree > 5");
    let at = |m: usize| c.get(m).copied().unwrap_or(0.0);
    u_quadratic([at(1), at(3), at(5)], c)
}
