//! The quantized biased-conductance circuit.
//!
//! Charge and conductance satisfy `[q, G] = iβ` and the Hamiltonian is
//! `V(eG/β)²/2`. With discrete charge the kinetic term becomes the second
//! difference `−(V/2)(Q + Q^H − 2)`, whose eigenvalues `E/e` form the cosine
//! band `E = eV(1 − cos(eG/β))`. At zero excess energy the allowed
//! conductances are `G_m = 2πmβ/e`, `m = 0, 1, 2, …`.

use std::f64::consts::PI;

use crate::band::{sorted_mismatch, BandReport};
use crate::eigensolver::hermitian_eigen;
use crate::error::{invalid, Error, Result};
use crate::lattice::{ladder_operator, Boundary, ChargeLattice};
use crate::operator::OperatorMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchrodingerCircuit {
    voltage: f64,
    beta: f64,
    lattice: ChargeLattice,
}

impl SchrodingerCircuit {
    /// `voltage` may be zero (a flat band); `beta` must be positive.
    pub fn new(voltage: f64, beta: f64, lattice: ChargeLattice) -> Result<Self> {
        if !(voltage.is_finite() && voltage >= 0.0) {
            return Err(invalid("V", format!("must be non-negative, got {voltage}")));
        }
        if !(beta.is_finite() && beta > 0.0) {
            return Err(invalid("beta", format!("must be positive, got {beta}")));
        }
        Ok(Self {
            voltage,
            beta,
            lattice,
        })
    }

    pub fn voltage(&self) -> f64 {
        self.voltage
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn lattice(&self) -> &ChargeLattice {
        &self.lattice
    }

    fn e(&self) -> f64 {
        self.lattice.e()
    }

    /// `2πβ/e`
    pub fn step(&self) -> f64 {
        2.0 * PI * self.beta / self.e()
    }

    /// Top of the band, `2eV`.
    pub fn band_top(&self) -> f64 {
        2.0 * self.e() * self.voltage
    }
}

/// Conductance values with a uniform spacing.
#[derive(Debug, Clone, PartialEq)]
pub struct ConductanceLevelSet {
    pub levels: Vec<f64>,
    pub step: f64,
}

/// `−(V/2)(Q + Q^H − 2)`. Eigenvalues are `E/e`.
pub fn build_hamiltonian(c: &SchrodingerCircuit) -> OperatorMatrix {
    let n = c.lattice.sites();
    let q = ladder_operator(&c.lattice);
    let hop = &(&q + &q.adjoint()) - &OperatorMatrix::identity(n).scale_real(2.0);
    hop.scale_real(-c.voltage / 2.0)
        .into_hermitian()
        .expect("second-difference operator is symmetric")
}

/// `E(G) = eV(1 − cos(eG/β))`
pub fn dispersion(c: &SchrodingerCircuit, g: f64) -> f64 {
    c.e() * c.voltage * (1.0 - (c.e() * g / c.beta).cos())
}

/// Conductances `(β/e)(arccos(1 − E/eV) + 2mπ)` for `m = 0..=m_max`.
///
/// Only the principal arccos branch is enumerated. Its mirror
/// `−arccos(·) + 2mπ` also solves the dispersion but is not part of the
/// level set; for `m = 0` it would be a negative conductance.
pub fn conductance_levels_at_energy(
    c: &SchrodingerCircuit,
    energy: f64,
    m_max: u32,
) -> Result<ConductanceLevelSet> {
    let top = c.band_top();
    if !energy.is_finite() || energy < 0.0 || energy > top || top == 0.0 {
        return Err(Error::OutOfBand {
            energy,
            band_top: top,
        });
    }
    let theta = (1.0 - energy / (c.e() * c.voltage)).clamp(-1.0, 1.0).acos();
    Ok(level_set(c, theta, m_max))
}

/// Zero-energy levels `G_m = 2πmβ/e`. With the calibrated `β` the spacing is
/// `e²/h`.
pub fn zero_energy_levels(c: &SchrodingerCircuit, m_max: u32) -> ConductanceLevelSet {
    level_set(c, 0.0, m_max)
}

fn level_set(c: &SchrodingerCircuit, theta: f64, m_max: u32) -> ConductanceLevelSet {
    let scale = c.beta / c.e();
    ConductanceLevelSet {
        levels: (0..=m_max)
            .map(|m| scale * (theta + 2.0 * PI * f64::from(m)))
            .collect(),
        step: c.step(),
    }
}

/// Band energies `eV(1 − cos(2πk/N))`, `k = 0..N`, sorted ascending.
pub fn analytic_band(c: &SchrodingerCircuit) -> Vec<f64> {
    let n = c.lattice.sites();
    let mut band: Vec<f64> = (0..n)
        .map(|k| c.e() * c.voltage * (1.0 - (2.0 * PI * k as f64 / n as f64).cos()))
        .collect();
    band.sort_by(f64::total_cmp);
    band
}

/// Diagonalizes the Hamiltonian on a periodic lattice and compares `e·λ`
/// with [`analytic_band`].
pub fn band_check(c: &SchrodingerCircuit) -> Result<BandReport> {
    if c.lattice.boundary() != Boundary::Periodic {
        return Err(Error::RequiresPeriodic);
    }
    let e = c.e();
    let spectrum = hermitian_eigen(&build_hamiltonian(c), false)?;
    let numeric = spectrum.eigenvalues.iter().map(|&l| e * l).collect();
    let mismatch = sorted_mismatch(numeric, analytic_band(c))?;
    Ok(BandReport::new(
        c.lattice.sites(),
        mismatch,
        1e-10 * e * c.voltage,
    ))
}
