//! The truncated charge lattice and the operators defined on it.
//!
//! Site `i` holds the charge eigenstate `|n⟩` with `n = n_min + i` and charge
//! `n·e`. The ladder operator raises kets, `Q|n⟩ = |n+1⟩`; on an open lattice
//! the top state is mapped to zero, on a periodic lattice it wraps to `n_min`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::operator::OperatorMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    Open,
    Periodic,
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Boundary::Open => "open",
            Boundary::Periodic => "periodic",
        })
    }
}

impl FromStr for Boundary {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "open" => Ok(Boundary::Open),
            "periodic" => Ok(Boundary::Periodic),
            other => Err(format!(
                "unknown boundary `{other}` (expected open|periodic)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChargeLattice {
    n_min: i64,
    n_max: i64,
    boundary: Boundary,
    e: f64,
}

impl ChargeLattice {
    pub fn new(n_min: i64, n_max: i64, boundary: Boundary, e: f64) -> Result<Self> {
        if n_max <= n_min {
            return Err(Error::InvalidLattice(format!(
                "n_max ({n_max}) must exceed n_min ({n_min})"
            )));
        }
        if !(e.is_finite() && e > 0.0) {
            return Err(Error::InvalidLattice(format!(
                "elementary charge must be positive and finite, got {e}"
            )));
        }
        Ok(Self {
            n_min,
            n_max,
            boundary,
            e,
        })
    }

    /// Lattice of `sites` charge states starting at `n = 0`.
    pub fn with_sites(sites: usize, boundary: Boundary, e: f64) -> Result<Self> {
        if sites < 2 {
            return Err(Error::InvalidLattice(format!(
                "need at least 2 sites, got {sites}"
            )));
        }
        Self::new(0, sites as i64 - 1, boundary, e)
    }

    pub fn n_min(&self) -> i64 {
        self.n_min
    }

    pub fn n_max(&self) -> i64 {
        self.n_max
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn e(&self) -> f64 {
        self.e
    }

    pub fn sites(&self) -> usize {
        (self.n_max - self.n_min + 1) as usize
    }

    /// Charge index `n` of site `i`.
    pub fn index(&self, site: usize) -> i64 {
        self.n_min + site as i64
    }

    /// Charge eigenvalue `n·e` of site `i`.
    pub fn charge(&self, site: usize) -> f64 {
        self.index(site) as f64 * self.e
    }

    pub fn site_of(&self, n: i64) -> Option<usize> {
        (self.n_min..=self.n_max)
            .contains(&n)
            .then(|| (n - self.n_min) as usize)
    }

    /// Unit ket `|n⟩`.
    pub fn basis_vector(&self, n: i64) -> Option<Vec<Complex64>> {
        let site = self.site_of(n)?;
        let mut v = vec![Complex64::new(0.0, 0.0); self.sites()];
        v[site] = Complex64::new(1.0, 0.0);
        Some(v)
    }
}

/// Diagonal charge operator `q` with entries `n·e`.
pub fn charge_operator(lat: &ChargeLattice) -> OperatorMatrix {
    let charges: Vec<f64> = (0..lat.sites()).map(|i| lat.charge(i)).collect();
    OperatorMatrix::diagonal(&charges)
}

/// Charge-raising operator `Q`, `Q|n⟩ = |n+1⟩`.
pub fn ladder_operator(lat: &ChargeLattice) -> OperatorMatrix {
    let n = lat.sites();
    let mut q = OperatorMatrix::zeros(n);
    let one = Complex64::new(1.0, 0.0);
    for i in 0..n - 1 {
        q[(i + 1, i)] = one;
    }
    if lat.boundary() == Boundary::Periodic {
        q[(0, n - 1)] = one;
    }
    q
}

/// Right discrete derivative `(Q − 1)/e`.
///
/// On functions of `n` (see [`OperatorMatrix::act_on_function`]) this is the
/// forward difference `[f(n+1) − f(n)]/e`.
pub fn discrete_derivative_right(lat: &ChargeLattice) -> OperatorMatrix {
    let q = ladder_operator(lat);
    (&q - &OperatorMatrix::identity(lat.sites())).scale_real(1.0 / lat.e())
}

/// Left discrete derivative `(1 − Q^H)/e`, the backward difference
/// `[f(n) − f(n−1)]/e` on functions of `n`.
pub fn discrete_derivative_left(lat: &ChargeLattice) -> OperatorMatrix {
    let qd = ladder_operator(lat).adjoint();
    (&OperatorMatrix::identity(lat.sites()) - &qd).scale_real(1.0 / lat.e())
}

/// Truncated conductance eigenvector with uniform coefficients:
/// component `exp(i·n·e·G/β)/√N` at charge index `n`.
///
/// On a periodic lattice with `e·G/β = 2πk/N` this is an exact eigenvector
/// of every circulant operator built from `Q` and `Q^H`. Off that grid the
/// truncated vectors are neither orthogonal nor eigenvectors.
pub fn conductance_plane_wave(lat: &ChargeLattice, g: f64, beta: f64) -> Result<Vec<Complex64>> {
    if !(beta.is_finite() && beta > 0.0) {
        return Err(invalid("beta", format!("must be positive, got {beta}")));
    }
    let norm = 1.0 / (lat.sites() as f64).sqrt();
    let phase_per_charge = lat.e() * g / beta;
    Ok((0..lat.sites())
        .map(|i| Complex64::from_polar(norm, lat.index(i) as f64 * phase_per_charge))
        .collect())
}

/// Conductance values `G_k = 2πk·β/(N·e)`, `k = 0..N`, on which plane waves of a
/// periodic lattice are exact eigenvectors.
pub fn commensurate_conductances(lat: &ChargeLattice, beta: f64) -> Vec<f64> {
    let n = lat.sites();
    (0..n)
        .map(|k| 2.0 * PI * k as f64 / n as f64 * beta / lat.e())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn sampled(lat: &ChargeLattice, f: impl Fn(f64) -> f64) -> Vec<Complex64> {
        (0..lat.sites())
            .map(|i| c(f(lat.index(i) as f64)))
            .collect()
    }

    #[test]
    fn lattice_validation() {
        assert!(ChargeLattice::new(0, 0, Boundary::Open, 1.0).is_err());
        assert!(ChargeLattice::new(3, 1, Boundary::Open, 1.0).is_err());
        assert!(ChargeLattice::new(0, 1, Boundary::Open, 0.0).is_err());
        assert!(ChargeLattice::with_sites(1, Boundary::Periodic, 1.0).is_err());
        let lat = ChargeLattice::new(-2, 2, Boundary::Open, 0.5).unwrap();
        assert_eq!(lat.sites(), 5);
        assert_eq!(lat.charge(0), -1.0);
        assert_eq!(lat.site_of(2), Some(4));
        assert_eq!(lat.site_of(3), None);
    }

    #[test]
    fn charge_operator_examples() {
        let diag = |lat: ChargeLattice| -> Vec<f64> {
            let q = charge_operator(&lat);
            assert!(q.is_hermitian());
            (0..lat.sites()).map(|i| q[(i, i)].re).collect()
        };
        assert_eq!(
            diag(ChargeLattice::new(0, 2, Boundary::Open, 1.0).unwrap()),
            vec![0.0, 1.0, 2.0]
        );
        assert_eq!(
            diag(ChargeLattice::new(-1, 1, Boundary::Open, 1.0).unwrap()),
            vec![-1.0, 0.0, 1.0]
        );
        assert_eq!(
            diag(ChargeLattice::new(0, 1, Boundary::Open, 2.0).unwrap()),
            vec![0.0, 2.0]
        );
    }

    #[test]
    fn ladder_shifts_kets() {
        let open = ChargeLattice::new(0, 2, Boundary::Open, 1.0).unwrap();
        let q = ladder_operator(&open);
        assert_eq!(
            q.apply(&open.basis_vector(0).unwrap()),
            open.basis_vector(1).unwrap()
        );
        assert!(q
            .apply(&open.basis_vector(2).unwrap())
            .iter()
            .all(|z| z.norm() == 0.0));

        let per = ChargeLattice::new(0, 2, Boundary::Periodic, 1.0).unwrap();
        let q = ladder_operator(&per);
        assert_eq!(
            q.apply(&per.basis_vector(2).unwrap()),
            per.basis_vector(0).unwrap()
        );
    }

    #[test]
    fn periodic_ladder_is_unitary() {
        for n in [2, 3, 7] {
            let lat = ChargeLattice::with_sites(n, Boundary::Periodic, 1.0).unwrap();
            let q = ladder_operator(&lat);
            let id = OperatorMatrix::identity(n);
            assert!((&q * &q.adjoint()).max_abs_diff(&id) < 1e-14);
            assert!((&q.adjoint() * &q).max_abs_diff(&id) < 1e-14);
        }
    }

    #[test]
    fn commutator_with_charge_raises_by_e() {
        let lat = ChargeLattice::new(-3, 4, Boundary::Open, 0.7).unwrap();
        let q = charge_operator(&lat);
        let ladder = ladder_operator(&lat);
        let comm = &(&q * &ladder) - &(&ladder * &q);
        for n in lat.n_min()..lat.n_max() {
            let v = lat.basis_vector(n).unwrap();
            let lhs = comm.apply(&v);
            let rhs: Vec<_> = ladder.apply(&v).iter().map(|z| z * lat.e()).collect();
            for (a, b) in lhs.iter().zip(&rhs) {
                assert!((a - b).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn right_derivative_on_functions() {
        let lat = ChargeLattice::new(-4, 5, Boundary::Open, 0.5).unwrap();
        let d = discrete_derivative_right(&lat);
        let interior = 0..lat.sites() - 1;
        let lin = d.act_on_function(&sampled(&lat, |n| n));
        let sq = d.act_on_function(&sampled(&lat, |n| n * n));
        let cst = d.act_on_function(&sampled(&lat, |_| 3.0));
        for i in interior {
            let n = lat.index(i) as f64;
            assert!((lin[i] - c(1.0 / lat.e())).norm() < 1e-14);
            assert!((sq[i] - c((2.0 * n + 1.0) / lat.e())).norm() < 1e-14);
            assert!(cst[i].norm() < 1e-14);
        }
    }

    #[test]
    fn left_derivative_on_functions() {
        let lat = ChargeLattice::new(-4, 5, Boundary::Open, 0.5).unwrap();
        let d = discrete_derivative_left(&lat);
        let lin = d.act_on_function(&sampled(&lat, |n| n));
        let sq = d.act_on_function(&sampled(&lat, |n| n * n));
        let cst = d.act_on_function(&sampled(&lat, |_| 1.0));
        for i in 1..lat.sites() {
            let n = lat.index(i) as f64;
            assert!((lin[i] - c(1.0 / lat.e())).norm() < 1e-14);
            assert!((sq[i] - c((2.0 * n - 1.0) / lat.e())).norm() < 1e-14);
            assert!(cst[i].norm() < 1e-14);
        }
    }

    #[test]
    fn derivative_difference_is_second_difference() {
        let lat = ChargeLattice::new(-3, 3, Boundary::Open, 1.0).unwrap();
        let diff = &discrete_derivative_right(&lat) - &discrete_derivative_left(&lat);
        let out = diff.act_on_function(&sampled(&lat, |n| n * n));
        for x in &out[1..lat.sites() - 1] {
            assert!((x - c(2.0 / lat.e())).norm() < 1e-14);
        }

        // (∇r − ∇l)·e = Q + Q^H − 2 on interior rows
        let q = ladder_operator(&lat);
        let hop = &(&q + &q.adjoint()) - &OperatorMatrix::identity(lat.sites()).scale_real(2.0);
        let scaled = diff.scale_real(lat.e());
        for i in 1..lat.sites() - 1 {
            for j in 0..lat.sites() {
                assert_eq!(scaled[(i, j)], hop[(i, j)], "({i},{j})");
            }
        }
    }

    #[test]
    fn periodic_left_is_adjoint_shift_of_right() {
        let lat = ChargeLattice::new(-2, 3, Boundary::Periodic, 0.25).unwrap();
        let q = ladder_operator(&lat);
        let right = discrete_derivative_right(&lat);
        let left = discrete_derivative_left(&lat);
        assert_eq!(&q.adjoint() * &right, left);
        let diff = &right - &left;
        let hop = &(&q + &q.adjoint()) - &OperatorMatrix::identity(lat.sites()).scale_real(2.0);
        assert_eq!(diff.scale_real(lat.e()), hop);
    }

    #[test]
    fn plane_wave_basics() {
        let lat = ChargeLattice::new(-3, 4, Boundary::Open, 1.0).unwrap();
        let flat = conductance_plane_wave(&lat, 0.0, 0.3).unwrap();
        let expect = 1.0 / (lat.sites() as f64).sqrt();
        assert!(flat.iter().all(|z| (z - c(expect)).norm() < 1e-15));
        for g in [0.0, 0.17, 3.9, -12.5] {
            let v = conductance_plane_wave(&lat, g, 0.3).unwrap();
            let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() < 1e-14);
        }
        assert!(conductance_plane_wave(&lat, 1.0, 0.0).is_err());
        assert!(conductance_plane_wave(&lat, 1.0, -1.0).is_err());
    }

    #[test]
    fn commensurate_plane_waves_are_hamiltonian_eigenvectors() {
        let beta = 0.37;
        let v = 1.3;
        let lat = ChargeLattice::new(-5, 10, Boundary::Periodic, 1.0).unwrap();
        let q = ladder_operator(&lat);
        let h = (&(&q + &q.adjoint()) - &OperatorMatrix::identity(lat.sites()).scale_real(2.0))
            .scale_real(-v / 2.0);
        for g in commensurate_conductances(&lat, beta) {
            let psi = conductance_plane_wave(&lat, g, beta).unwrap();
            let lambda = v * (1.0 - (lat.e() * g / beta).cos());
            let hpsi = h.apply(&psi);
            let residual: f64 = hpsi
                .iter()
                .zip(&psi)
                .map(|(a, b)| (a - b * lambda).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(residual < 1e-10, "G={g}: residual {residual}");
        }
    }
}
