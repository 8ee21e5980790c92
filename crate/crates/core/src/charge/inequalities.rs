use std::f64::consts::TAU;

use serde::Serialize;

use super::profile::IntersectionProfile;
use super::winding::ChargePath;
use crate::error::{Error, Result};
use crate::phase::{gamma_cone, mixed_sigma, EigenTuple};
use crate::report::{InequalityEntry, InequalityReport};

/// Argument of `(1 − S2 + S4) + i(S1 − S3)`, the integrated form of
/// `∏(1 + iλ_j)`, in `(0, 2π]`.
pub fn analytic_angle_from_integrals(p: &IntersectionProfile) -> Result<f64> {
    p.expect_dim(4, "analytic_angle_from_integrals")?;
    let path = ChargePath::new(p);
    let modulus = path.eval(1.0).norm();
    if modulus < path.origin_threshold() || modulus == 0.0 {
        return Err(Error::UndefinedAngle { modulus });
    }
    let s = p.sigma_integrals();
    let angle = (s[1] - s[3]).atan2(1.0 - s[2] + s[4]);
    Ok(if angle <= 0.0 { angle + TAU } else { angle })
}

/// Both four-dimensional Chern-number inequalities, plus the
/// coefficient-2 form that holds when `c1(L)` is Kähler (reported, not
/// gating).
pub fn check_chern_n4(p: &IntersectionProfile) -> Result<InequalityReport> {
    p.expect_dim(4, "check_chern_n4")?;
    let &[d0, d1, d2, d3, d4] = p.d() else {
        unreachable!()
    };
    let mut r = InequalityReport::new();

    // (c1³·ω)/(c1·ω³) > 1 with the denominator cleared by its sign
    r.push(if d1 > 0.0 {
        InequalityEntry::strict("first", d1, d3)
    } else if d1 < 0.0 {
        InequalityEntry::strict("first", d3, d1)
    } else {
        InequalityEntry::strict("first", 0.0, 0.0)
    });

    let quad = |c: f64| d3 * d3 * d0 - c * d1 * d2 * d3 + d1 * d1 * d4;
    let scale = |c: f64| (d3 * d3 * d0).abs() + (c * d1 * d2 * d3).abs() + (d1 * d1 * d4).abs();
    r.push(InequalityEntry::strict("second", quad(6.0), 0.0).with_scale(scale(6.0)));
    if d1 != 0.0 && d3 != 0.0 {
        let ratio = d3 * d0 / d1 - 6.0 * d2 + d1 * d4 / d3;
        r.push(InequalityEntry::strict("second_ratio", ratio, 0.0).informational());
    }
    r.push(
        InequalityEntry::non_strict("kahler2", quad(2.0), 0.0)
            .with_scale(scale(2.0))
            .informational(),
    );
    Ok(r)
}

/// `(∫ω³)(∫c1³) < 9 (∫c1²∧ω)(∫c1∧ω²)`.
pub fn check_chern_n3(p: &IntersectionProfile) -> Result<InequalityReport> {
    p.expect_dim(3, "check_chern_n3")?;
    let d = p.d();
    Ok([InequalityEntry::strict(
        "chern_n3",
        d[0] * d[3],
        9.0 * d[2] * d[1],
    )]
    .into_iter()
    .collect())
}

/// Khovanskii–Teissier chain `d_{k−1} d_{k+1} ≤ d_k²` for `k = 1, 2, 3`, the
/// two products derived from it, and the combined coefficient-2 inequality.
pub fn kt_chain(p: &IntersectionProfile) -> Result<InequalityReport> {
    p.expect_dim(4, "kt_chain")?;
    let d = p.d();
    let mut r: InequalityReport = (1..=3)
        .map(|k| InequalityEntry::non_strict(format!("k{k}"), d[k - 1] * d[k + 1], d[k] * d[k]))
        .collect();
    r.push(InequalityEntry::non_strict(
        "eqn12",
        d[0] * d[3],
        d[1] * d[2],
    ));
    r.push(InequalityEntry::non_strict(
        "eqn23",
        d[1] * d[4],
        d[2] * d[3],
    ));
    if d[1] > 0.0 && d[3] > 0.0 {
        r.push(InequalityEntry::non_strict(
            "combined",
            d[3] * d[0] / d[1] + d[1] * d[4] / d[3],
            2.0 * d[2],
        ));
    } else {
        r.push(
            InequalityEntry::non_strict(
                "combined",
                d[3] * d[3] * d[0] + d[1] * d[1] * d[4],
                2.0 * d[1] * d[2] * d[3],
            )
            .informational(),
        );
    }
    Ok(r)
}

/// Diagonal-model mixed intersection number `ω^(n−j−k)·α^j·β^k / ω^n`.
fn mixed_intersection(lambda: &[f64], mu: &[f64], j: usize, k: usize) -> Result<f64> {
    let n = lambda.len();
    let fact = |m: usize| (1..=m).map(|x| x as f64).product::<f64>();
    Ok(fact(j) * fact(k) * fact(n - j - k) / fact(n) * mixed_sigma(lambda, mu, j, k)?)
}

/// `(ω^(n−m)·α^(m−2)·β²)(ω^(n−m)·α^m) ≤ (ω^(n−m)·α^(m−1)·β)²` for `α` in the
/// `Γ_m` cone. `mu` is the diagonal of `β` in the eigenbasis of `α`, aligned
/// with the ascending order of `lambda`.
pub fn general_kt(lambda: &EigenTuple, mu: &[f64], m: usize) -> Result<InequalityReport> {
    let n = lambda.dim();
    if !(2..=n).contains(&m) {
        return Err(Error::domain(format!(
            "KT degree m = {m} must lie in 2..={n}"
        )));
    }
    let cone = gamma_cone(lambda);
    if cone < m {
        return Err(Error::domain(format!(
            "alpha lies in Gamma_{cone}, the KT inequality of degree {m} needs Gamma_{m}"
        )));
    }
    let l = lambda.values();
    let mixed = mixed_intersection(l, mu, m - 1, 1)?;
    let lhs = mixed_intersection(l, mu, m - 2, 2)? * mixed_intersection(l, mu, m, 0)?;
    Ok([InequalityEntry::non_strict(
        format!("kt_m{m}"),
        lhs,
        mixed * mixed,
    )]
    .into_iter()
    .collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct SigmaChainReport {
    /// `S_k = C(4,k) d_k / d_0`.
    pub s: Vec<f64>,
    pub inequalities: InequalityReport,
    /// `final` and the `second` entry of [`check_chern_n4`] agree in sign.
    pub final_matches_chern_second: bool,
}

impl SigmaChainReport {
    pub fn passed(&self) -> bool {
        self.inequalities.passed() && self.final_matches_chern_second
    }
}

/// The chain of integrated `σ_k` estimates leading to the second
/// Chern-number inequality, at unit volume.
pub fn integrated_sigma_chain(p: &IntersectionProfile) -> Result<SigmaChainReport> {
    p.expect_dim(4, "integrated_sigma_chain")?;
    let s = p.sigma_integrals();
    let (s1, s2, s3, s4) = (s[1], s[2], s[3], s[4]);
    let mut r = InequalityReport::new();
    r.push(InequalityEntry::non_strict("chain_a", s3, s1 * s2 / 6.0));
    r.push(InequalityEntry::strict("chain_b", s1 + s3, s1 * s2));
    let fin = s3 * s3 - s1 * s2 * s3 + s1 * s1 * s4;
    let scale = (s3 * s3).abs() + (s1 * s2 * s3).abs() + (s1 * s1 * s4).abs();
    r.push(InequalityEntry::strict("final", fin, 0.0).with_scale(scale));

    let second = check_chern_n4(p)?;
    let second = second.get("second").expect("second entry").margin;
    let fin_margin = r.get("final").expect("final entry").margin;
    Ok(SigmaChainReport {
        s,
        inequalities: r,
        final_matches_chern_second: fin_margin.signum() == second.signum()
            || (fin_margin == 0.0 && second == 0.0),
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    fn profile(d: &[f64]) -> IntersectionProfile {
        IntersectionProfile::new(d.len() - 1, d.to_vec()).unwrap()
    }

    fn t(v: &[f64]) -> EigenTuple {
        EigenTuple::new(v.to_vec()).unwrap()
    }

    // constant models written out by hand: d_k = σ_k / C(4,k)
    const L2345: [f64; 5] = [1.0, 3.5, 71.0 / 6.0, 38.5, 120.0];
    const L05123: [f64; 5] = [1.0, 1.625, 14.0 / 6.0, 2.875, 3.0];
    const L1234: [f64; 5] = [1.0, 2.5, 35.0 / 6.0, 12.5, 24.0];

    #[test]
    fn analytic_angles() {
        assert!((analytic_angle_from_integrals(&profile(&[1.0; 5])).unwrap() - PI).abs() < 1e-15);
        let a = analytic_angle_from_integrals(&profile(&L05123)).unwrap();
        assert!((a - 3.60524).abs() < 1e-5);
        assert!((a - (-5.0f64).atan2(-10.0) - TAU).abs() < 1e-14);
        let a = analytic_angle_from_integrals(&profile(&L2345)).unwrap();
        assert!((a - 5.05541292).abs() < 1e-8);
        assert!(matches!(
            analytic_angle_from_integrals(&profile(&[1.0, 1.0, 1.0])),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn undefined_angle_when_z1_vanishes() {
        // S = (1, 1, 1, 1, 0): 1 − S2 + S4 = 0 and S1 = S3
        let d = [1.0, 0.25, 1.0 / 6.0, 0.25, 0.0];
        assert!(matches!(
            analytic_angle_from_integrals(&profile(&d)),
            Err(Error::UndefinedAngle { .. })
        ));
    }

    #[test]
    fn chern_n4_examples() {
        let r = check_chern_n4(&profile(&L2345)).unwrap();
        assert!(r.passed());
        assert_eq!(r.get("first").unwrap().margin, 35.0);
        assert!((r.get("second").unwrap().lhs + 6615.0).abs() < 1e-9);

        let r = check_chern_n4(&profile(&L05123)).unwrap();
        assert!(r.passed());
        assert!((r.get("second").unwrap().lhs + 787.5 / 16.0).abs() < 1e-12);

        let r = check_chern_n4(&profile(&[1.0; 5])).unwrap();
        assert!(!r.passed());
        let first = r.get("first").unwrap();
        assert_eq!(first.margin, 0.0);
        assert!(first.boundary);
        let k2 = r.get("kahler2").unwrap();
        assert!(k2.pass && k2.boundary);
    }

    #[test]
    fn chern_n4_negative_d1_flips_ratio() {
        // d3/d1 = 2 > 1 with both negative
        let r = check_chern_n4(&profile(&[1.0, -1.0, 0.0, -2.0, 0.0])).unwrap();
        assert!(r.get("first").unwrap().pass);
    }

    #[test]
    fn chern_n3_examples() {
        let r = check_chern_n3(&profile(&[1.0, 2.0, 11.0 / 3.0, 6.0])).unwrap();
        let e = r.get("chern_n3").unwrap();
        assert_eq!(e.lhs, 6.0);
        assert!((e.rhs - 66.0).abs() < 1e-12);
        assert!(r.passed());
        let r = check_chern_n3(&profile(&[1.0; 4])).unwrap();
        assert_eq!((r.entries()[0].lhs, r.entries()[0].rhs), (1.0, 9.0));
        let r = check_chern_n3(&profile(&[1.0, 0.0, 0.0, 0.0])).unwrap();
        assert!(!r.passed());
        assert!(check_chern_n3(&profile(&[1.0; 5])).is_err());
    }

    #[test]
    fn kt_chain_examples() {
        let r = kt_chain(&profile(&L1234)).unwrap();
        assert!(r.passed());
        let k = |name| r.get(name).unwrap();
        assert!((k("k1").lhs - 35.0 / 6.0).abs() < 1e-12 && k("k1").rhs == 6.25);
        assert!(k("k2").lhs == 31.25 && (k("k2").rhs - 34.0277).abs() < 1e-4);
        assert!(k("k3").lhs == 140.0 && k("k3").rhs == 156.25);
        let c = k("combined");
        assert!((c.lhs - c.rhs + 1.8667).abs() < 1e-4);

        for c in [0.5, 1.0, 2.0] {
            let d: Vec<f64> = (0..5).map(|k| f64::powi(c, k)).collect();
            let r = kt_chain(&profile(&d)).unwrap();
            assert!(r.passed());
            assert!(r.entries().iter().all(|e| e.boundary), "c = {c}");
        }
    }

    #[test]
    fn general_kt_examples() {
        let l = t(&[1.0, 2.0, 3.0, 4.0]);
        for m in 2..=4 {
            let r = general_kt(&l, l.values(), m).unwrap();
            assert!(r.entries()[0].boundary && r.passed());
        }
        let r = general_kt(&l, &[1.0; 4], 3).unwrap();
        let e = &r.entries()[0];
        assert!((e.lhs - 31.25).abs() < 1e-12);
        assert!((e.rhs - (35.0f64 / 6.0).powi(2)).abs() < 1e-12);

        assert!(general_kt(&t(&[-0.2, 1.0, 2.0, 3.0]), &[1.0; 4], 4).is_err());
        assert!(general_kt(&l, &[1.0; 4], 1).is_err());
        assert!(general_kt(&l, &[1.0; 4], 5).is_err());
        assert!(general_kt(&l, &[1.0; 3], 2).is_err());
    }

    #[test]
    fn sigma_chain_examples() {
        let r = integrated_sigma_chain(&profile(&L05123)).unwrap();
        for (a, b) in r.s.iter().zip([1.0, 6.5, 14.0, 11.5, 3.0]) {
            assert!((a - b).abs() < 1e-12);
        }
        let m = |name| r.inequalities.get(name).unwrap().clone();
        assert!((m("chain_a").margin - 11.0 / 3.0).abs() < 1e-12);
        assert!((m("chain_b").margin - 73.0).abs() < 1e-12);
        assert!((m("final").lhs + 787.5).abs() < 1e-9);
        assert!(r.passed());

        let r = integrated_sigma_chain(&profile(&[1.0; 5])).unwrap();
        let m = |name| r.inequalities.get(name).unwrap().clone();
        assert_eq!(m("final").lhs, -64.0);
        assert_eq!(m("chain_b").margin, 16.0);
        assert!(m("chain_a").boundary);
        assert!(r.passed());

        let r = integrated_sigma_chain(&profile(&L2345)).unwrap();
        assert!((r.inequalities.get("final").unwrap().lhs + 105840.0).abs() < 1e-6);
        assert!(r.final_matches_chern_second);
    }
}
