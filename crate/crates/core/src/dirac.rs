//! The graphene-analog circuit: a biased conductance with a current source,
//! quantized with two-component states.
//!
//! The operator is `σ_z ⊗ V(Q − Q^H)/(2i) − σ_y ⊗ μ`, with `μ = I0·e/β'`.
//! In the conductance representation its eigenvalues are
//! `E/e = ±sqrt(V² sin²(eG/β') + μ²)`: a sine band gapped by the source.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::band::{sorted_mismatch, BandReport};
use crate::eigensolver::hermitian_eigen;
use crate::error::{invalid, Error, Result};
use crate::lattice::{ladder_operator, Boundary, ChargeLattice};
use crate::operator::OperatorMatrix;
use crate::units::UnitSystem;

/// `diag(1, −1)`
pub const SIGMA_Z: [[Complex64; 2]; 2] = [
    [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
    [Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0)],
];

/// `[[0, −i], [i, 0]]`
pub const SIGMA_Y: [[Complex64; 2]; 2] = [
    [Complex64::new(0.0, 0.0), Complex64::new(0.0, -1.0)],
    [Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)],
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracCircuit {
    voltage: f64,
    beta_prime: f64,
    i0: f64,
    lattice: ChargeLattice,
}

impl DiracCircuit {
    pub fn new(voltage: f64, beta_prime: f64, i0: f64, lattice: ChargeLattice) -> Result<Self> {
        if !(voltage.is_finite() && voltage >= 0.0) {
            return Err(invalid("V", format!("must be non-negative, got {voltage}")));
        }
        if !(beta_prime.is_finite() && beta_prime > 0.0) {
            return Err(invalid(
                "beta_prime",
                format!("must be positive, got {beta_prime}"),
            ));
        }
        if !(i0.is_finite() && i0 >= 0.0) {
            return Err(invalid("I0", format!("must be non-negative, got {i0}")));
        }
        Ok(Self {
            voltage,
            beta_prime,
            i0,
            lattice,
        })
    }

    /// Circuit whose source term `I0·e/β'` equals `mass`.
    pub fn with_mass(
        voltage: f64,
        beta_prime: f64,
        mass: f64,
        lattice: ChargeLattice,
    ) -> Result<Self> {
        Self::new(
            voltage,
            beta_prime,
            mass * beta_prime / lattice.e(),
            lattice,
        )
    }

    pub fn voltage(&self) -> f64 {
        self.voltage
    }

    pub fn beta_prime(&self) -> f64 {
        self.beta_prime
    }

    pub fn i0(&self) -> f64 {
        self.i0
    }

    pub fn lattice(&self) -> &ChargeLattice {
        &self.lattice
    }

    fn e(&self) -> f64 {
        self.lattice.e()
    }

    /// Dimensionless source term `μ = I0·e/β'`.
    pub fn mass(&self) -> f64 {
        self.i0 * self.e() / self.beta_prime
    }

    /// Half-width of the gap in energy units, `I0·e²/β'`.
    pub fn gap(&self) -> f64 {
        self.e() * self.mass()
    }

    /// `I0·e/(β'·V)`; the quantization condition needs its modulus ≤ 1.
    pub fn source_ratio(&self) -> f64 {
        self.mass() / self.voltage
    }

    /// `2πβ'/e`
    pub fn step(&self) -> f64 {
        2.0 * PI * self.beta_prime / self.e()
    }
}

/// The `2N × 2N` spinor operator. Eigenvalues are `E/e`.
pub fn build_dirac_operator(c: &DiracCircuit) -> OperatorMatrix {
    let n = c.lattice.sites();
    let q = ladder_operator(&c.lattice);
    // (Q − Q^H)/(2i) is Hermitian
    let momentum = (&q - &q.adjoint()).scale(Complex64::new(0.0, -0.5 * c.voltage));
    let kinetic = OperatorMatrix::kron_2x2(SIGMA_Z, &momentum);
    let source =
        OperatorMatrix::kron_2x2(SIGMA_Y, &OperatorMatrix::identity(n)).scale_real(c.mass());
    (&kinetic - &source)
        .into_hermitian()
        .expect("spinor operator is Hermitian by construction")
}

/// `(E+, E−) = ±e·sqrt(V² sin²(eG/β') + μ²)`
pub fn dispersion_branches(c: &DiracCircuit, g: f64) -> (f64, f64) {
    let s = (c.e() * g / c.beta_prime).sin();
    let mu = c.mass();
    let e_plus = c.e() * (c.voltage * c.voltage * s * s + mu * mu).sqrt();
    (e_plus, -e_plus)
}

/// Determinant of `V σ_z sin(eG/β') − σ_y μ` at zero energy,
/// `−(V² sin²(eG/β') + μ²)`.
///
/// It vanishes only where both terms vanish, so for `I0 > 0` the 2×2 system
/// has no exact zero-energy solution; [`quantization_condition`] is evaluated
/// independently of this value.
pub fn zero_energy_determinant(c: &DiracCircuit, g: f64) -> f64 {
    let s = (c.e() * g / c.beta_prime).sin();
    let mu = c.mass();
    -(c.voltage * c.voltage * s * s + mu * mu)
}

/// `G_m = (β'/e)(arcsin(I0·e/(β'V)) + 2mπ)` on the principal arcsin branch.
pub fn quantization_condition(c: &DiracCircuit, m: i64) -> Result<f64> {
    if m < 0 {
        return Err(invalid("m", format!("must be non-negative, got {m}")));
    }
    if c.voltage == 0.0 {
        return Err(invalid("V", "quantization condition needs a non-zero bias"));
    }
    let ratio = c.source_ratio();
    if ratio.abs() > 1.0 {
        return Err(Error::NoSolution { ratio });
    }
    Ok(c.beta_prime / c.e() * (ratio.asin() + 2.0 * PI * m as f64))
}

/// `β' = (v_F/c)·β`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrapheneScaling {
    pub vf_over_c: f64,
    pub beta: f64,
    pub beta_prime: f64,
}

impl GrapheneScaling {
    /// Conductance step `2πβ'/e`.
    pub fn step(&self, e: f64) -> f64 {
        2.0 * PI * self.beta_prime / e
    }
}

pub fn graphene_beta(beta: f64, vf_over_c: f64) -> Result<GrapheneScaling> {
    if !(vf_over_c > 0.0 && vf_over_c <= 1.0) {
        return Err(invalid(
            "vf_over_c",
            format!("must lie in (0, 1], got {vf_over_c}"),
        ));
    }
    if !(beta.is_finite() && beta > 0.0) {
        return Err(invalid("beta", format!("must be positive, got {beta}")));
    }
    Ok(GrapheneScaling {
        vf_over_c,
        beta,
        beta_prime: vf_over_c * beta,
    })
}

/// Source intensity `I0 = V·(β'/e)·sin(G0·e/β')`.
///
/// Feeding this `I0` back through [`quantization_condition`] with `m = 0`
/// returns `G0` only when `G0·e/β'` lies in `[0, π/2]`, the range of the
/// principal arcsin; see [`calibration_on_principal_branch`].
pub fn calibrate_i0(g0: f64, voltage: f64, beta_prime: f64, e: f64) -> Result<f64> {
    if !(voltage.is_finite() && voltage > 0.0) {
        return Err(invalid("V", format!("must be positive, got {voltage}")));
    }
    if !(beta_prime.is_finite() && beta_prime > 0.0) {
        return Err(invalid(
            "beta_prime",
            format!("must be positive, got {beta_prime}"),
        ));
    }
    Ok(voltage * (beta_prime / e) * (g0 * e / beta_prime).sin())
}

pub fn calibration_on_principal_branch(g0: f64, beta_prime: f64, e: f64) -> bool {
    let phase = g0 * e / beta_prime;
    (0.0..=FRAC_PI_2).contains(&phase)
}

/// `degeneracy · e²/h`; graphene's spin and valley degeneracy give 4.
pub fn min_conductivity(u: &UnitSystem, degeneracy: u32) -> Result<f64> {
    if degeneracy == 0 {
        return Err(invalid("degeneracy", "must be at least 1"));
    }
    Ok(f64::from(degeneracy) * u.conductance_quantum())
}

/// Band energies `±e·sqrt(V² sin²(2πk/N) + μ²)`, `k = 0..N`, sorted ascending.
pub fn analytic_spinor_band(c: &DiracCircuit) -> Vec<f64> {
    let n = c.lattice.sites();
    let mu = c.mass();
    let mut band: Vec<f64> = (0..n)
        .flat_map(|k| {
            let s = (2.0 * PI * k as f64 / n as f64).sin();
            let e_plus = c.e() * (c.voltage * c.voltage * s * s + mu * mu).sqrt();
            [e_plus, -e_plus]
        })
        .collect();
    band.sort_by(f64::total_cmp);
    band
}

/// Tolerance scale `max(eV, I0·e²/β')` for spinor band comparisons.
pub fn band_scale(c: &DiracCircuit) -> f64 {
    (c.e() * c.voltage).max(c.gap())
}

/// Diagonalizes the spinor operator on a periodic lattice and compares `e·λ`
/// with [`analytic_spinor_band`].
pub fn spinor_band_check(c: &DiracCircuit) -> Result<BandReport> {
    if c.lattice.boundary() != Boundary::Periodic {
        return Err(Error::RequiresPeriodic);
    }
    let e = c.e();
    let spectrum = hermitian_eigen(&build_dirac_operator(c), false)?;
    let numeric = spectrum.eigenvalues.iter().map(|&l| e * l).collect();
    let mismatch = sorted_mismatch(numeric, analytic_spinor_band(c))?;
    Ok(BandReport::new(
        c.lattice.sites(),
        mismatch,
        1e-10 * band_scale(c),
    ))
}
