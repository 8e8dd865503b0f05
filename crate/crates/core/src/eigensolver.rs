//! Dense Hermitian eigensolver.
//!
//! The matrix is reduced to a real symmetric tridiagonal form by Householder
//! reflections working on the lower triangle only, then diagonalized with
//! the implicit QL algorithm with Wilkinson shifts. Real input takes an
//! all-`f64` path; complex Hermitian input goes through a diagonal phase
//! transform that makes the tridiagonal off-diagonals real.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::OperatorMatrix;

const MAX_QL_SWEEPS: usize = 60;

/// Eigenvalues in ascending order, with optional eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[i]` belongs to `eigenvalues[i]`. The largest-modulus
    /// component of each vector is real and positive.
    pub eigenvectors: Option<Vec<Vec<Complex64>>>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Smallest `|λ|`.
    pub fn min_abs(&self) -> f64 {
        self.eigenvalues
            .iter()
            .map(|l| l.abs())
            .fold(f64::INFINITY, f64::min)
    }
}

/// Full spectrum of a Hermitian operator.
///
/// Fails on matrices whose Hermitian flag is unset and on empty matrices.
/// The result depends only on the input entries.
pub fn hermitian_eigen(m: &OperatorMatrix, want_vectors: bool) -> Result<Spectrum> {
    if m.dim() == 0 {
        return Err(Error::EmptyMatrix);
    }
    if !m.is_hermitian() {
        return Err(Error::NotHermitian {
            defect: m.hermitian_defect(),
        });
    }
    let n = m.dim();
    let (values, vectors) = if m.is_real() {
        let a: Vec<f64> = m.entries().iter().map(|z| z.re).collect();
        let (values, vectors) = solve(a, n, want_vectors)?;
        let vectors = vectors.map(|vs| {
            vs.into_iter()
                .map(|v| v.into_iter().map(|x| Complex64::new(x, 0.0)).collect())
                .collect()
        });
        (values, vectors)
    } else {
        solve(m.entries().to_vec(), n, want_vectors)?
    };

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]).then(i.cmp(&j)));
    let eigenvalues = order.iter().map(|&i| values[i]).collect();
    let eigenvectors = vectors.map(|mut vs: Vec<Vec<Complex64>>| {
        order
            .iter()
            .map(|&i| {
                let mut v = std::mem::take(&mut vs[i]);
                fix_phase(&mut v);
                v
            })
            .collect()
    });
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// Rotates `v` so that its first largest-modulus component is real positive.
fn fix_phase(v: &mut [Complex64]) {
    let mut best = 0;
    let mut best_norm = -1.0;
    for (i, z) in v.iter().enumerate() {
        let r = z.norm();
        if r > best_norm {
            best = i;
            best_norm = r;
        }
    }
    if best_norm > 0.0 {
        let phase = v[best].conj() / best_norm;
        for z in v.iter_mut() {
            *z *= phase;
        }
        v[best] = Complex64::new(v[best].re, 0.0);
    }
}

trait Scalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + PartialEq + Send + Sync
{
    const ZERO: Self;
    fn conj(self) -> Self;
    fn re(self) -> f64;
    fn norm_sqr(self) -> f64;
    fn scale(self, s: f64) -> Self;
    fn from_re(x: f64) -> Self;
    fn into_complex(self) -> Complex64;
}

impl Scalar for f64 {
    const ZERO: Self = 0.0;
    #[inline(always)]
    fn conj(self) -> Self {
        self
    }
    #[inline(always)]
    fn re(self) -> f64 {
        self
    }
    #[inline(always)]
    fn norm_sqr(self) -> f64 {
        self * self
    }
    #[inline(always)]
    fn scale(self, s: f64) -> Self {
        self * s
    }
    #[inline(always)]
    fn from_re(x: f64) -> Self {
        x
    }
    #[inline(always)]
    fn into_complex(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
}

impl Scalar for Complex64 {
    const ZERO: Self = Complex64::new(0.0, 0.0);
    #[inline(always)]
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    #[inline(always)]
    fn re(self) -> f64 {
        self.re
    }
    #[inline(always)]
    fn norm_sqr(self) -> f64 {
        Complex64::norm_sqr(&self)
    }
    #[inline(always)]
    fn scale(self, s: f64) -> Self {
        self * s
    }
    #[inline(always)]
    fn from_re(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    #[inline(always)]
    fn into_complex(self) -> Complex64 {
        self
    }
}

/// Output of the Householder reduction `A = Q T Q^H`.
struct Tridiagonal<T> {
    diag: Vec<f64>,
    /// `off[k] = T[k+1][k]`, length `n − 1`.
    off: Vec<T>,
    /// Reflectors `(k, tau, v)` with `v` supported on indices `k+1..n`.
    reflectors: Vec<(usize, f64, Vec<T>)>,
}

type Eigenpairs<T> = (Vec<f64>, Option<Vec<Vec<T>>>);

fn solve<T: Scalar + FromPhase>(a: Vec<T>, n: usize, want_vectors: bool) -> Result<Eigenpairs<T>> {
    let tri = tridiagonalize(a, n, want_vectors);

    // phases δ with δ_{k+1} = δ_k · off_k/|off_k| make D^H T D real
    let mut phases = vec![Complex64::new(1.0, 0.0); n];
    let mut sub = vec![0.0; n];
    for k in 0..n.saturating_sub(1) {
        let z = tri.off[k].into_complex();
        let r = z.norm();
        sub[k] = r;
        phases[k + 1] = if r > 0.0 {
            phases[k] * (z / r)
        } else {
            phases[k]
        };
    }
    let mut diag = tri.diag;
    let mut rows = want_vectors.then(|| {
        let mut z = vec![0.0; n * n];
        for i in 0..n {
            z[i * n + i] = 1.0;
        }
        z
    });
    tridiagonal_ql(&mut diag, &mut sub, rows.as_deref_mut())?;

    let vectors = rows.map(|z| {
        (0..n)
            .map(|i| {
                // row i of z holds the eigenvector of the real tridiagonal matrix
                let mut x: Vec<T> = (0..n)
                    .map(|j| T::from_phase(phases[j], z[i * n + j]))
                    .collect();
                for (k, tau, v) in tri.reflectors.iter().rev() {
                    apply_reflector(&mut x, *k, *tau, v);
                }
                x
            })
            .collect()
    });
    Ok((diag, vectors))
}

/// Builds `δ·x` in the scalar type; real matrices only ever see unit phases.
trait FromPhase: Sized {
    fn from_phase(phase: Complex64, x: f64) -> Self;
}

impl FromPhase for f64 {
    fn from_phase(phase: Complex64, x: f64) -> Self {
        phase.re * x
    }
}

impl FromPhase for Complex64 {
    fn from_phase(phase: Complex64, x: f64) -> Self {
        phase * x
    }
}

fn apply_reflector<T: Scalar>(x: &mut [T], k: usize, tau: f64, v: &[T]) {
    let s = k + 1;
    let mut dot = T::ZERO;
    for (vi, xi) in v[s..].iter().zip(&x[s..]) {
        dot = dot + vi.conj() * *xi;
    }
    let coef = dot.scale(tau);
    for (vi, xi) in v[s..].iter().zip(&mut x[s..]) {
        *xi = *xi - *vi * coef;
    }
}

/// Householder tridiagonalization on the lower triangle of a row-major
/// Hermitian matrix.
///
/// Each step's rank-2 update `A ← A − v w^H − w v^H` is deferred and fused
/// with the next step's product `A v'`, so the trailing block is swept once
/// per step.
fn tridiagonalize<T: Scalar>(mut a: Vec<T>, n: usize, keep_reflectors: bool) -> Tridiagonal<T> {
    let mut diag = vec![0.0; n];
    let mut off = vec![T::ZERO; n.saturating_sub(1)];
    let mut reflectors = Vec::new();
    let mut pending: Option<(Vec<T>, Vec<T>)> = None;

    for k in 0..n {
        if let Some((v, w)) = &pending {
            let (vk, wk) = (v[k].conj(), w[k].conj());
            for i in k..n {
                let idx = i * n + k;
                a[idx] = a[idx] - (v[i] * wk + w[i] * vk);
            }
        }
        diag[k] = a[k * n + k].re();
        if k + 1 == n {
            break;
        }

        let x0 = a[(k + 1) * n + k];
        let sigma: f64 = (k + 2..n).map(|i| a[i * n + k].norm_sqr()).sum();
        let reflector = if sigma == 0.0 {
            off[k] = x0;
            None
        } else {
            let x0_abs = x0.norm_sqr().sqrt();
            let alpha = (x0.norm_sqr() + sigma).sqrt();
            let phase = if x0_abs > 0.0 {
                x0.scale(1.0 / x0_abs)
            } else {
                T::from_re(1.0)
            };
            let mut v = vec![T::ZERO; n];
            v[k + 1] = x0 + phase.scale(alpha);
            for i in k + 2..n {
                v[i] = a[i * n + k];
            }
            let tau = 2.0 / (v[k + 1].norm_sqr() + sigma);
            off[k] = phase.scale(-alpha);
            Some((tau, v))
        };

        // sweep rows k+1.. once: finish the pending update, accumulate A·v
        let mut p = reflector.as_ref().map(|_| vec![T::ZERO; n]);
        for i in k + 1..n {
            let row = &mut a[i * n + k + 1..i * n + i + 1];
            if let Some((pv, pw)) = &pending {
                let (vi, wi) = (pv[i], pw[i]);
                for ((aij, &vj), &wj) in row.iter_mut().zip(&pv[k + 1..=i]).zip(&pw[k + 1..=i]) {
                    *aij = *aij - (vi * wj.conj() + wi * vj.conj());
                }
            }
            if let (Some((_, v)), Some(p)) = (&reflector, p.as_mut()) {
                let vi = v[i];
                let (head, diag_entry) = row.split_at(row.len() - 1);
                let (p_head, p_tail) = p[k + 1..=i].split_at_mut(i - k - 1);
                let mut acc = T::ZERO;
                for ((aij, &vj), pj) in head.iter().zip(&v[k + 1..i]).zip(p_head.iter_mut()) {
                    acc = acc + *aij * vj;
                    *pj = *pj + aij.conj() * vi;
                }
                p_tail[0] = p_tail[0] + acc + T::from_re(diag_entry[0].re()) * vi;
            }
        }

        pending = match (reflector, p) {
            (Some((tau, v)), Some(p)) => {
                let p: Vec<T> = p.into_iter().map(|x| x.scale(tau)).collect();
                let mut vhp = 0.0;
                for (vi, pi) in v[k + 1..].iter().zip(&p[k + 1..]) {
                    vhp += (vi.conj() * *pi).re();
                }
                let half_k = 0.5 * tau * vhp;
                let w: Vec<T> = p
                    .iter()
                    .zip(&v)
                    .map(|(&pi, &vi)| pi - vi.scale(half_k))
                    .collect();
                if keep_reflectors {
                    reflectors.push((k, tau, v.clone()));
                }
                Some((v, w))
            }
            _ => None,
        };
    }

    Tridiagonal {
        diag,
        off,
        reflectors,
    }
}

/// Implicit QL with Wilkinson shifts on a real symmetric tridiagonal matrix.
///
/// `sub[i]` couples `i` and `i+1`; `sub[n−1]` is scratch. When `rows` is given
/// it must hold the identity on entry and holds the eigenvectors as rows on
/// exit.
fn tridiagonal_ql(diag: &mut [f64], sub: &mut [f64], mut rows: Option<&mut [f64]>) -> Result<()> {
    let n = diag.len();
    if n > 0 {
        sub[n - 1] = 0.0;
    }
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if sub[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_QL_SWEEPS {
                return Err(Error::NoConvergence);
            }

            let mut g = (diag[l + 1] - diag[l]) / (2.0 * sub[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + sub[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * sub[i];
                let b = c * sub[i];
                r = f.hypot(g);
                sub[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    sub[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = rows.as_deref_mut() {
                    let (lo, hi) = z.split_at_mut((i + 1) * n);
                    let zi = &mut lo[i * n..];
                    let zi1 = &mut hi[..n];
                    for (a, b) in zi.iter_mut().zip(zi1.iter_mut()) {
                        let f = *b;
                        *b = s * *a + c * f;
                        *a = c * *a - s * f;
                    }
                }
            }
            if deflated {
                continue;
            }
            diag[l] -= p;
            sub[l] = g;
            sub[m] = 0.0;
        }
    }
    Ok(())
}
