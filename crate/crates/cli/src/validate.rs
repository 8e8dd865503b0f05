//! `validate`: every numerical cross-check in one report.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;

use circuitq::band::sorted_mismatch;
use circuitq::dirac::{self, DiracCircuit};
use circuitq::landauer::{self, Waveguide2DEG};
use circuitq::lattice::{
    charge_operator, discrete_derivative_left, discrete_derivative_right, ladder_operator,
};
use circuitq::schrodinger::{self, SchrodingerCircuit};
use circuitq::table::format_float;
use circuitq::{hermitian_eigen, Boundary, ChargeLattice, OperatorMatrix, UnitMode, UnitSystem};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::json;

use crate::args::ValidateArgs;
use crate::CliError;

/// Relative perturbation applied to β by the negative-control hook.
const CORRUPTION: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckResult {
    fn new(name: &'static str, residual: f64, tolerance: f64) -> Self {
        Self {
            name,
            residual,
            tolerance,
            passed: residual <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub units: UnitMode,
    pub n_sites: usize,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# circuitq validate units={} n_sites={} seed={} version={}",
            self.units,
            self.n_sites,
            self.seed,
            crate::VERSION
        );
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{} {} residual={} tolerance={}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                format_float(c.residual),
                format_float(c.tolerance)
            );
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        let _ = writeln!(out, "# {passed}/{} checks passed", self.checks.len());
        out
    }

    pub fn to_json(&self) -> String {
        let checks: Vec<_> = self
            .checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "passed": c.passed,
                    "residual": c.residual,
                    "tolerance": c.tolerance,
                })
            })
            .collect();
        let doc = json!({
            "metadata": {
                "command": "validate",
                "units": self.units.to_string(),
                "n_sites": self.n_sites,
                "seed": self.seed,
                "version": crate::VERSION,
            },
            "checks": checks,
            "all_passed": self.all_passed(),
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
        s.push('\n');
        s
    }
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs().max(a.abs())
    }
}

fn max_vec_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn operator_algebra(sites: usize, e: f64) -> Result<f64, CliError> {
    let open = ChargeLattice::with_sites(sites, Boundary::Open, e)?;
    let q = charge_operator(&open);
    let ladder = ladder_operator(&open);
    let comm = &(&q * &ladder) - &(&ladder * &q);
    let mut worst = 0.0_f64;
    for n in open.n_min()..open.n_max() {
        let v = open.basis_vector(n).expect("in range");
        let lhs = comm.apply(&v);
        let rhs: Vec<_> = ladder.apply(&v).iter().map(|z| z * e).collect();
        // (n+1)e − ne cancels, so compare against the largest charge
        worst = worst.max(max_vec_diff(&lhs, &rhs) / q.max_abs().max(e));
    }

    let sampled = |f: fn(f64) -> f64| -> Vec<Complex64> {
        (0..open.sites())
            .map(|i| Complex64::new(f(open.index(i) as f64), 0.0))
            .collect()
    };
    let right = discrete_derivative_right(&open);
    let left = discrete_derivative_left(&open);
    // (f, forward difference, backward difference)
    type F = fn(f64) -> f64;
    let cases: [(F, F, F); 3] = [
        (|_| 1.0, |_| 0.0, |_| 0.0),
        (|n| n, |_| 1.0, |_| 1.0),
        (|n| n * n, |n| 2.0 * n + 1.0, |n| 2.0 * n - 1.0),
    ];
    for (f, dr, dl) in cases {
        let values = sampled(f);
        // differences of f cancel, so measure against the size of f itself
        let size = values.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let r = right.act_on_function(&values);
        let l = left.act_on_function(&values);
        for i in 1..open.sites() - 1 {
            let n = open.index(i) as f64;
            worst = worst.max(((r[i].re * e - dr(n)).abs() + r[i].im.abs() * e) / size);
            worst = worst.max(((l[i].re * e - dl(n)).abs() + l[i].im.abs() * e) / size);
        }
    }

    let periodic = ChargeLattice::with_sites(sites, Boundary::Periodic, e)?;
    let qp = ladder_operator(&periodic);
    let id = OperatorMatrix::identity(sites);
    worst = worst.max((&qp * &qp.adjoint()).max_abs_diff(&id));
    worst = worst.max((&qp.adjoint() * &qp).max_abs_diff(&id));
    Ok(worst)
}

pub fn validate(a: &ValidateArgs, mode: UnitMode) -> Result<ValidationReport, CliError> {
    if a.n_sites < 2 {
        return Err(CliError::Usage(format!(
            "--n-sites must be at least 2, got {}",
            a.n_sites
        )));
    }
    let units = UnitSystem::new(mode);
    let e = units.e;
    let mut rng = StdRng::seed_from_u64(a.seed);
    let corrupt = if a.inject_corrupt_beta {
        1.0 + CORRUPTION
    } else {
        1.0
    };
    let mut checks = Vec::new();

    checks.push(CheckResult::new(
        "operator_algebra",
        operator_algebra(a.n_sites, e)?,
        1e-14,
    ));

    // cosine band
    let voltage = rng.gen_range(0.1..=10.0);
    let periodic = ChargeLattice::with_sites(a.n_sites, Boundary::Periodic, e)?;
    let sc = SchrodingerCircuit::new(voltage, units.calibrated_beta().beta, periodic)?;
    let spectrum = hermitian_eigen(&schrodinger::build_hamiltonian(&sc), false)?;
    let energies: Vec<f64> = spectrum.eigenvalues.iter().map(|l| e * l).collect();
    let ev = e * voltage;
    let mismatch = sorted_mismatch(energies.clone(), schrodinger::analytic_band(&sc))?;
    checks.push(CheckResult::new("schrodinger_band", mismatch / ev, 1e-10));
    let outside = energies
        .iter()
        .map(|&x| (-x).max(x - 2.0 * ev).max(0.0))
        .fold(0.0, f64::max);
    checks.push(CheckResult::new(
        "schrodinger_spectrum_bounds",
        outside / ev,
        1e-12,
    ));

    // spinor band, symmetry and gap
    let dv = rng.gen_range(0.5..=3.0);
    let mass = rng.gen_range(0.05..=1.5);
    let dc = DiracCircuit::with_mass(dv, 1.0, mass, periodic)?;
    let spinor = hermitian_eigen(&dirac::build_dirac_operator(&dc), false)?;
    let spinor_e: Vec<f64> = spinor.eigenvalues.iter().map(|l| e * l).collect();
    let scale = dirac::band_scale(&dc);
    let mismatch = sorted_mismatch(spinor_e.clone(), dirac::analytic_spinor_band(&dc))?;
    checks.push(CheckResult::new("dirac_band", mismatch / scale, 1e-10));
    let mirrored: Vec<f64> = spinor_e.iter().map(|x| -x).collect();
    checks.push(CheckResult::new(
        "dirac_particle_hole",
        sorted_mismatch(spinor_e.clone(), mirrored)? / scale,
        1e-12,
    ));
    let min_abs = spinor_e
        .iter()
        .map(|x| x.abs())
        .fold(f64::INFINITY, f64::min);
    checks.push(CheckResult::new(
        "dirac_gap_law",
        rel(min_abs, dc.gap()),
        1e-10,
    ));

    // conductance step calibration in both unit systems
    for (name, u) in [
        (
            "step_calibration_dimensionless",
            UnitSystem::dimensionless(),
        ),
        ("step_calibration_si", UnitSystem::si()),
    ] {
        let beta = u.calibrated_beta().beta * corrupt;
        let lat = ChargeLattice::with_sites(2, Boundary::Open, u.e)?;
        let c = SchrodingerCircuit::new(1.0, beta, lat)?;
        let step = schrodinger::zero_energy_levels(&c, 1).step;
        checks.push(CheckResult::new(
            name,
            rel(step, u.conductance_quantum()),
            1e-12,
        ));
    }

    let beta = units.calibrated_beta().beta * corrupt;
    let minimal = ChargeLattice::with_sites(2, Boundary::Open, e)?;
    let sc = SchrodingerCircuit::new(1.0, beta, minimal)?;
    let spin_step = 2.0 * schrodinger::zero_energy_levels(&sc, 1).step;
    checks.push(CheckResult::new(
        "circuit_vs_landauer_step",
        rel(spin_step, landauer::conductance(1, &units)),
        1e-12,
    ));

    let massless = DiracCircuit::new(1.0, beta, 0.0, minimal)?;
    let levels = schrodinger::zero_energy_levels(&sc, 10).levels;
    let mut worst = 0.0_f64;
    for (m, level) in levels.iter().enumerate() {
        worst = worst.max(rel(
            dirac::quantization_condition(&massless, m as i64)?,
            *level,
        ));
    }
    checks.push(CheckResult::new("massless_reduction", worst, 1e-14));

    let scaling = dirac::graphene_beta(beta, 1.0 / 300.0)?;
    checks.push(CheckResult::new(
        "graphene_step_suppression",
        rel(scaling.step(e), units.conductance_quantum() / 300.0),
        1e-12,
    ));

    let bp = scaling.beta_prime;
    let mut worst = 0.0_f64;
    for _ in 0..50 {
        // (0, π/2]
        let g0_phase = FRAC_PI_2 * (1.0 - rng.gen::<f64>());
        let g0 = g0_phase * bp / e;
        let i0 = dirac::calibrate_i0(g0, dv, bp, e)?;
        let c = DiracCircuit::new(dv, bp, i0, minimal)?;
        worst = worst.max(rel(dirac::quantization_condition(&c, 0)?, g0));
    }
    checks.push(CheckResult::new("i0_calibration_roundtrip", worst, 1e-12));

    let wg = Waveguide2DEG::new(1.0, PI, 0.0, UnitSystem::dimensionless())?;
    let occupied = wg.occupied_below(12.5, wg.required_cutoff(12.5))?;
    checks.push(CheckResult::new(
        "landauer_worked_case",
        (occupied as f64 - 4.0).abs(),
        0.0,
    ));

    Ok(ValidationReport {
        units: mode,
        n_sites: a.n_sites,
        seed: a.seed,
        checks,
    })
}
