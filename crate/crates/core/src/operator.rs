//! Dense complex operator matrices.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Entrywise tolerance on `|M − M^H|` for a matrix to be accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// A dense `dim × dim` complex matrix stored row-major.
///
/// The `hermitian` flag is only ever set after the entries have been checked
/// against [`HERMITIAN_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    dim: usize,
    entries: Vec<Complex64>,
    hermitian: bool,
}

impl OperatorMatrix {
    /// Wraps row-major entries without asserting any symmetry.
    pub fn general(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                actual: entries.len(),
            });
        }
        Ok(Self {
            dim,
            entries,
            hermitian: false,
        })
    }

    /// Wraps row-major entries and verifies they form a Hermitian matrix.
    pub fn hermitian(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        Self::general(dim, entries)?.into_hermitian()
    }

    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        Self::general(
            dim,
            entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
            hermitian: true,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![1.0; dim])
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n);
        for (i, &v) in values.iter().enumerate() {
            m.entries[i * n + i] = Complex64::new(v, 0.0);
        }
        m
    }

    /// Checks Hermiticity and sets the flag, or reports the defect.
    pub fn into_hermitian(mut self) -> Result<Self> {
        let defect = self.hermitian_defect();
        if defect >= HERMITIAN_TOL {
            return Err(Error::NotHermitian { defect });
        }
        self.hermitian = true;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    /// True when every entry has a vanishing imaginary part.
    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|z| z.im == 0.0)
    }

    /// `max |M_ij − conj(M_ji)|`.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out.hermitian = self.hermitian;
        out
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)];
            }
        }
        out.hermitian = self.hermitian && self.is_real();
        out
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&z| z * factor).collect(),
            hermitian: self.hermitian && factor.im == 0.0,
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Matrix–vector product `M·x`, the action on a ket with components `x`.
    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.dim, "vector length mismatch");
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Action on a function `f(n)` of the charge index.
    ///
    /// A function of `n` is the coefficient list of the bra `Σ f(n)⟨n|`, so the
    /// operator acts through its transpose: `(Mᵀ f)_i = Σ_j M_ji f_j`. Under
    /// this action the ladder operator, which raises kets `|n⟩ → |n+1⟩`,
    /// shifts functions as `f(n) → f(n+1)`.
    pub fn act_on_function(&self, f: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(f.len(), self.dim, "vector length mismatch");
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for (j, &fj) in f.iter().enumerate() {
            for (o, &m) in out.iter_mut().zip(self.row(j)) {
                *o += m * fj;
            }
        }
        out
    }

    /// Kronecker product `a ⊗ self` with a 2×2 matrix `a` (row-major).
    ///
    /// The 2×2 index is the outer (block) index, so the result consists of
    /// four `dim × dim` blocks `a[r][c]·self`.
    pub fn kron_2x2(a: [[Complex64; 2]; 2], block: &Self) -> Self {
        let n = block.dim;
        let mut out = Self::zeros(2 * n);
        for (r, arow) in a.iter().enumerate() {
            for (c, &acoef) in arow.iter().enumerate() {
                if acoef == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for i in 0..n {
                    for j in 0..n {
                        out[(r * n + i, c * n + j)] = acoef * block[(i, j)];
                    }
                }
            }
        }
        out.hermitian = false;
        out
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(&a, &b)| f(a, b))
                .collect(),
            hermitian: false,
        }
    }
}

impl std::ops::Index<(usize, usize)> for OperatorMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for OperatorMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        self.hermitian = false;
        &mut self.entries[i * self.dim + j]
    }
}

impl Add for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn add(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        let mut out = self.zip_with(rhs, |a, b| a + b);
        out.hermitian = self.hermitian && rhs.hermitian;
        out
    }
}

impl Sub for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn sub(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        let mut out = self.zip_with(rhs, |a, b| a - b);
        out.hermitian = self.hermitian && rhs.hermitian;
        out
    }
}

impl Mul for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn mul(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        let n = self.dim;
        assert_eq!(n, rhs.dim, "dimension mismatch");
        let mut out = OperatorMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * rhs.entries[k * n + j];
                }
            }
        }
        out.hermitian = false;
        out
    }
}
