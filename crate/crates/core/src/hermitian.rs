//! Relative eigenvalues of a Hermitian form against a Hermitian metric.
//!
//! `G = L L*` by Cholesky, then the Hermitian matrix `L⁻¹ A L⁻*` is
//! diagonalized with cyclic complex Jacobi rotations.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase::{lagrangian_phase, EigenTuple};

/// Deviation from Hermitian symmetry tolerated (and symmetrized away),
/// relative to the largest entry.
pub const HERMITIAN_RTOL: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 50;
pub const JACOBI_RTOL: f64 = 1e-12;

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix", into = "RawMatrix")]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct RawMatrix {
    dim: usize,
    re: Vec<Vec<f64>>,
    #[serde(default)]
    im: Option<Vec<Vec<f64>>>,
}

impl TryFrom<RawMatrix> for CMatrix {
    type Error = Error;

    fn try_from(raw: RawMatrix) -> Result<Self> {
        let n = raw.dim;
        let shape_ok = |rows: &Vec<Vec<f64>>| rows.len() == n && rows.iter().all(|r| r.len() == n);
        if !shape_ok(&raw.re) || raw.im.as_ref().is_some_and(|im| !shape_ok(im)) {
            return Err(Error::InvalidPair(format!(
                "matrix rows do not match dim {n}"
            )));
        }
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let im = raw.im.as_ref().map_or(0.0, |im| im[i][j]);
                m[(i, j)] = Complex64::new(raw.re[i][j], im);
            }
        }
        Ok(m)
    }
}

impl From<CMatrix> for RawMatrix {
    fn from(m: CMatrix) -> Self {
        let rows = |f: fn(&Complex64) -> f64| {
            (0..m.dim)
                .map(|i| (0..m.dim).map(|j| f(&m[(i, j)])).collect())
                .collect()
        };
        RawMatrix {
            dim: m.dim,
            re: rows(|z| z.re),
            im: Some(rows(|z| z.im)),
        }
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        CMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = CMatrix::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = CMatrix::zeros(diag.len());
        for (i, &x) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(x, 0.0);
        }
        m
    }

    /// Builds a matrix from real rows and optional imaginary rows.
    pub fn from_rows(re: &[Vec<f64>], im: Option<&[Vec<f64>]>) -> Result<Self> {
        CMatrix::try_from(RawMatrix {
            dim: re.len(),
            re: re.to_vec(),
            im: im.map(<[Vec<f64>]>::to_vec),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn scale(&self, c: f64) -> Self {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    pub fn adjoint(&self) -> Self {
        let mut m = CMatrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[(i, j)] = self[(j, i)].conj();
            }
        }
        m
    }

    pub fn mul(&self, other: &CMatrix) -> Self {
        let n = self.dim;
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                for j in 0..n {
                    m[(i, j)] += a * other[(k, j)];
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// Frobenius norm of the strictly off-diagonal part.
    pub fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i != j {
                    s += self[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    }

    /// `(M + M*)/2` if `M` is Hermitian up to roundoff.
    fn hermitian_part(&self, what: &str) -> Result<Self> {
        let tol = HERMITIAN_RTOL * self.max_abs();
        let mut h = self.clone();
        for i in 0..self.dim {
            for j in i..self.dim {
                let a = self[(i, j)];
                let b = self[(j, i)].conj();
                if (a - b).norm() > tol {
                    return Err(Error::InvalidPair(format!(
                        "{what} is not Hermitian: entry ({i}, {j}) deviates by {:e}",
                        (a - b).norm()
                    )));
                }
                let avg = (a + b) * 0.5;
                h[(i, j)] = avg;
                h[(j, i)] = avg.conj();
            }
        }
        Ok(h)
    }
}

/// Positive-definite metric `G` and Hermitian form `A` of the same size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPair", into = "RawPair")]
pub struct HermitianPair {
    g: CMatrix,
    a: CMatrix,
    chol: CMatrix,
}

#[derive(Serialize, Deserialize)]
struct RawPair {
    g: CMatrix,
    a: CMatrix,
}

impl TryFrom<RawPair> for HermitianPair {
    type Error = Error;

    fn try_from(raw: RawPair) -> Result<Self> {
        HermitianPair::new(raw.g, raw.a)
    }
}

impl From<HermitianPair> for RawPair {
    fn from(p: HermitianPair) -> Self {
        RawPair { g: p.g, a: p.a }
    }
}

impl HermitianPair {
    pub fn new(g: CMatrix, a: CMatrix) -> Result<Self> {
        if g.dim != a.dim {
            return Err(Error::InvalidPair(format!(
                "metric is {0}x{0} but form is {1}x{1}",
                g.dim, a.dim
            )));
        }
        if g.dim == 0 {
            return Err(Error::InvalidPair("empty matrices".into()));
        }
        if g.data
            .iter()
            .chain(&a.data)
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidPair("non-finite entry".into()));
        }
        let g = g.hermitian_part("metric G")?;
        let a = a.hermitian_part("form A")?;
        let chol = cholesky(&g)?;
        Ok(HermitianPair { g, a, chol })
    }

    pub fn dim(&self) -> usize {
        self.g.dim
    }

    pub fn metric(&self) -> &CMatrix {
        &self.g
    }

    pub fn form(&self) -> &CMatrix {
        &self.a
    }

    /// `(P*GP, P*AP)`.
    pub fn congruent(&self, p: &CMatrix) -> Result<Self> {
        let ph = p.adjoint();
        HermitianPair::new(ph.mul(&self.g).mul(p), ph.mul(&self.a).mul(p))
    }

    /// Eigenpairs `(λ, v)` of `G⁻¹A`, ascending in `λ`, with unit `v`.
    pub fn eigenpairs(&self) -> Result<Vec<(f64, Vec<Complex64>)>> {
        let n = self.dim();
        let l = &self.chol;
        // C = L⁻¹ A L⁻* = L⁻¹ (L⁻¹ A)*
        let x = forward_solve(l, &self.a);
        let mut c = forward_solve(l, &x.adjoint());
        for i in 0..n {
            for j in i..n {
                let avg = (c[(i, j)] + c[(j, i)].conj()) * 0.5;
                c[(i, j)] = avg;
                c[(j, i)] = avg.conj();
            }
        }
        let (vals, vecs) = jacobi_eigen(&c)?;
        // v = L⁻* y
        let lh = l.adjoint();
        let mut pairs: Vec<(f64, Vec<Complex64>)> = (0..n)
            .map(|k| {
                let y: Vec<Complex64> = (0..n).map(|i| vecs[(i, k)]).collect();
                let mut v = backward_solve_vec(&lh, &y);
                let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                v.iter_mut().for_each(|z| *z /= norm);
                (vals[k], v)
            })
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(pairs)
    }
}

/// Lower-triangular `L` with `G = L L*`.
fn cholesky(g: &CMatrix) -> Result<CMatrix> {
    let n = g.dim;
    let mut l = CMatrix::zeros(n);
    for j in 0..n {
        let mut pivot = g[(j, j)].re;
        for k in 0..j {
            pivot -= l[(j, k)].norm_sqr();
        }
        if !(pivot > 0.0) {
            return Err(Error::InvalidPair(format!(
                "metric G is not positive definite: Cholesky pivot {j} is {pivot:e}"
            )));
        }
        let d = pivot.sqrt();
        l[(j, j)] = Complex64::new(d, 0.0);
        for i in j + 1..n {
            let mut s = g[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s / d;
        }
    }
    Ok(l)
}

/// Solves `L X = B` for lower-triangular `L`.
fn forward_solve(l: &CMatrix, b: &CMatrix) -> CMatrix {
    let n = l.dim;
    let mut x = CMatrix::zeros(n);
    for col in 0..n {
        for i in 0..n {
            let mut s = b[(i, col)];
            for k in 0..i {
                s -= l[(i, k)] * x[(k, col)];
            }
            x[(i, col)] = s / l[(i, i)];
        }
    }
    x
}

/// Solves `U x = y` for upper-triangular `U`.
fn backward_solve_vec(u: &CMatrix, y: &[Complex64]) -> Vec<Complex64> {
    let n = u.dim;
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for i in (0..n).rev() {
        let mut s = y[i];
        for k in i + 1..n {
            s -= u[(i, k)] * x[k];
        }
        x[i] = s / u[(i, i)];
    }
    x
}

/// Cyclic-by-row Jacobi for a Hermitian matrix. Returns the (unsorted)
/// eigenvalues and the unitary matrix whose columns are the eigenvectors.
pub fn jacobi_eigen(h: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let n = h.dim;
    let mut a = h.clone();
    let mut v = CMatrix::identity(n);
    let target = JACOBI_RTOL * h.frobenius();

    for sweep in 0..MAX_SWEEPS {
        let off = a.off_diagonal_norm();
        if off <= target {
            return Ok(((0..n).map(|i| a[(i, i)].re).collect(), v));
        }
        // skip small rotations during the first sweeps
        let threshold = if sweep < 3 {
            0.2 * off / (n * n) as f64
        } else {
            0.0
        };
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r == 0.0 || r <= threshold {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                if sweep >= 3 && r <= f64::EPSILON * 1e-3 * app.abs().min(aqq.abs()) {
                    a[(p, q)] = Complex64::new(0.0, 0.0);
                    a[(q, p)] = Complex64::new(0.0, 0.0);
                    continue;
                }
                rotate(&mut a, &mut v, p, q, app, aqq, apq);
            }
        }
    }
    if a.off_diagonal_norm() <= target {
        return Ok(((0..n).map(|i| a[(i, i)].re).collect(), v));
    }
    Err(Error::NoConvergence { sweeps: MAX_SWEEPS })
}

/// Annihilates `a[p][q]` with `A ← J* A J`, `V ← V J`, where
/// `J = diag(1, e^{−iφ}) · [[c, s], [−s, c]]` on the `(p, q)` plane.
fn rotate(
    a: &mut CMatrix,
    v: &mut CMatrix,
    p: usize,
    q: usize,
    app: f64,
    aqq: f64,
    apq: Complex64,
) {
    let n = a.dim;
    let r = apq.norm();
    let phase = apq / r;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let e = phase.conj();
    let j_pp = Complex64::new(c, 0.0);
    let j_pq = Complex64::new(s, 0.0);
    let j_qp = e * (-s);
    let j_qq = e * c;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * j_pp + akq * j_qp;
        a[(k, q)] = akp * j_pq + akq * j_qq;
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * j_pp + vkq * j_qp;
        v[(k, q)] = vkp * j_pq + vkq * j_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = j_pp.conj() * apk + j_qp.conj() * aqk;
        a[(q, k)] = j_pq.conj() * apk + j_qq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
}

/// Eigenvalues of `G⁻¹A`, ascending.
pub fn relative_spectrum(pair: &HermitianPair) -> Result<EigenTuple> {
    let values = pair.eigenpairs()?.into_iter().map(|(l, _)| l).collect();
    EigenTuple::new(values)
}

/// Lagrangian phase of the relative spectrum.
pub fn phase_of_pair(pair: &HermitianPair) -> Result<f64> {
    Ok(lagrangian_phase(&relative_spectrum(pair)?))
}
