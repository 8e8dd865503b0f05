use std::f64::consts::PI;

use circuitq::band::sorted_mismatch;
use circuitq::dirac::{self, DiracCircuit};
use circuitq::landauer::{self, StaircaseSweep, SweepParameter, Waveguide2DEG};
use circuitq::schrodinger::{self, SchrodingerCircuit};
use circuitq::table::format_float;
use circuitq::{hermitian_eigen, Boundary, Cell, ChargeLattice, SweepTable, UnitSystem};

use crate::args::{
    BetaArgs, CalibrateArgs, DiracArgs, DiracDispersionArgs, DiracRootsArgs, LandauerArgs,
    SchrodingerBandArgs, SchrodingerLevelsArgs, SweepKind,
};
use crate::CliError;

fn resolve_beta(args: &BetaArgs, units: &UnitSystem) -> (f64, &'static str) {
    match args.beta {
        Some(b) => (b, "explicit"),
        None => (units.calibrated_beta().beta, "calibrated"),
    }
}

/// Levels and roots are analytic; the lattice only supplies `e`.
fn minimal_lattice(units: &UnitSystem) -> Result<ChargeLattice, CliError> {
    Ok(ChargeLattice::with_sites(2, Boundary::Open, units.e)?)
}

pub fn schrodinger_levels(
    a: &SchrodingerLevelsArgs,
    units: &UnitSystem,
) -> Result<SweepTable, CliError> {
    let (beta, source) = resolve_beta(&a.beta, units);
    let circuit = SchrodingerCircuit::new(a.voltage, beta, minimal_lattice(units)?)?;
    let mut table = match a.energy {
        Some(energy) => {
            let set = schrodinger::conductance_levels_at_energy(&circuit, energy, a.m_max)?;
            let mut t = SweepTable::new(["m", "G", "E_roundtrip"]);
            for (m, &g) in set.levels.iter().enumerate() {
                t.push_row(vec![
                    Cell::Int(m as i64),
                    Cell::Float(g),
                    Cell::Float(schrodinger::dispersion(&circuit, g)),
                ])?;
            }
            t.set_meta("energy", format_float(energy));
            t.set_meta("step", format_float(set.step));
            t
        }
        None => {
            let set = schrodinger::zero_energy_levels(&circuit, a.m_max);
            let mut t = SweepTable::new(["m", "G"]);
            for (m, &g) in set.levels.iter().enumerate() {
                t.push_row(vec![Cell::Int(m as i64), Cell::Float(g)])?;
            }
            t.set_meta("energy", format_float(0.0));
            t.set_meta("step", format_float(set.step));
            t
        }
    };
    table.set_meta("V", format_float(a.voltage));
    table.set_meta("beta", format_float(beta));
    table.set_meta("beta_source", source);
    table.set_meta("m_max", a.m_max);
    table.set_meta(
        "conductance_quantum",
        format_float(units.conductance_quantum()),
    );
    Ok(table)
}

/// Spectrum table plus whether the periodic band comparison passed.
pub fn schrodinger_band(
    a: &SchrodingerBandArgs,
    units: &UnitSystem,
) -> Result<(SweepTable, bool), CliError> {
    let (beta, source) = resolve_beta(&a.beta, units);
    let lattice = ChargeLattice::with_sites(a.n_sites, a.boundary, units.e)?;
    let circuit = SchrodingerCircuit::new(a.voltage, beta, lattice)?;
    let spectrum = hermitian_eigen(&schrodinger::build_hamiltonian(&circuit), false)?;
    let energies: Vec<f64> = spectrum.eigenvalues.iter().map(|l| units.e * l).collect();

    let mut passed = true;
    let mut table = if a.boundary == Boundary::Periodic {
        let analytic = schrodinger::analytic_band(&circuit);
        let mismatch = sorted_mismatch(energies.clone(), analytic.clone())?;
        let tolerance = 1e-10 * units.e * a.voltage;
        passed = mismatch <= tolerance;
        let mut t = SweepTable::new(["index", "E_numeric", "E_analytic"]);
        for (i, (n, an)) in energies.iter().zip(&analytic).enumerate() {
            t.push_row(vec![Cell::Int(i as i64), Cell::Float(*n), Cell::Float(*an)])?;
        }
        t.set_meta("max_mismatch", format_float(mismatch));
        t.set_meta("tolerance", format_float(tolerance));
        t.set_meta("passed", passed);
        t
    } else {
        let mut t = SweepTable::new(["index", "E_numeric"]);
        for (i, n) in energies.iter().enumerate() {
            t.push_row(vec![Cell::Int(i as i64), Cell::Float(*n)])?;
        }
        t
    };
    table.set_meta("V", format_float(a.voltage));
    table.set_meta("beta", format_float(beta));
    table.set_meta("beta_source", source);
    table.set_meta("n_sites", a.n_sites);
    table.set_meta("boundary", a.boundary);
    Ok((table, passed))
}

struct ResolvedDirac {
    circuit: DiracCircuit,
    meta: Vec<(&'static str, String)>,
}

fn resolve_dirac(a: &DiracArgs, units: &UnitSystem) -> Result<ResolvedDirac, CliError> {
    let mut meta = vec![("V", format_float(a.voltage))];
    let (beta_prime, reference_beta) = match a.beta_prime {
        Some(bp) => {
            meta.push(("beta_source", "explicit".to_string()));
            (bp, units.calibrated_beta().beta)
        }
        None => {
            let (beta, source) = resolve_beta(&a.beta, units);
            let scaling = dirac::graphene_beta(beta, a.vf_over_c.unwrap_or(1.0))?;
            meta.push(("beta", format_float(beta)));
            meta.push(("beta_source", source.to_string()));
            meta.push(("vf_over_c", format_float(scaling.vf_over_c)));
            (scaling.beta_prime, beta)
        }
    };
    let i0 = match a.calibrate_g0 {
        Some(g0) => {
            meta.push(("calibrate_G0", format_float(g0)));
            meta.push((
                "calibration_principal_branch",
                dirac::calibration_on_principal_branch(g0, beta_prime, units.e).to_string(),
            ));
            dirac::calibrate_i0(g0, a.voltage, beta_prime, units.e)?
        }
        None => a.i0.unwrap_or(0.0),
    };
    let circuit = DiracCircuit::new(a.voltage, beta_prime, i0, minimal_lattice(units)?)?;
    meta.push(("beta_prime", format_float(beta_prime)));
    meta.push(("I0", format_float(i0)));
    meta.push(("source_term", format_float(circuit.mass())));
    meta.push(("step", format_float(circuit.step())));
    meta.push(("step_ratio", format_float(beta_prime / reference_beta)));
    Ok(ResolvedDirac { circuit, meta })
}

fn dirac_roots_of(c: &DiracCircuit, m_max: u32) -> Result<Vec<(i64, f64, f64)>, CliError> {
    (0..=i64::from(m_max))
        .map(|m| {
            let g = dirac::quantization_condition(c, m)?;
            Ok((m, g, dirac::zero_energy_determinant(c, g)))
        })
        .collect()
}

pub fn dirac_dispersion(
    a: &DiracDispersionArgs,
    units: &UnitSystem,
) -> Result<SweepTable, CliError> {
    if a.g_points < 2 {
        return Err(CliError::Usage(format!(
            "--g-points must be at least 2, got {}",
            a.g_points
        )));
    }
    let resolved = resolve_dirac(&a.circuit, units)?;
    let c = &resolved.circuit;
    let mut table = SweepTable::new(["G", "E_plus", "E_minus"]);
    let last = a.g_points - 1;
    for i in 0..a.g_points {
        let phase = 2.0 * PI * i as f64 / last as f64;
        let g = phase * c.beta_prime() / units.e;
        let (plus, minus) = dirac::dispersion_branches(c, g);
        table.push_row(vec![Cell::Float(g), Cell::Float(plus), Cell::Float(minus)])?;
    }
    for (k, v) in &resolved.meta {
        table.set_meta(*k, v);
    }
    table.set_meta("g_points", a.g_points);
    if a.no_roots {
        table.set_meta("roots", "skipped");
    } else {
        table.set_meta("m_max", a.m_max);
        for (m, g, det) in dirac_roots_of(c, a.m_max)? {
            table.set_meta(format!("root_m{m}"), format_float(g));
            table.set_meta(format!("det_m{m}"), format_float(det));
        }
    }
    Ok(table)
}

pub fn dirac_roots(a: &DiracRootsArgs, units: &UnitSystem) -> Result<SweepTable, CliError> {
    let resolved = resolve_dirac(&a.circuit, units)?;
    let mut table = SweepTable::new(["m", "G", "det_zero_energy"]);
    for (m, g, det) in dirac_roots_of(&resolved.circuit, a.m_max)? {
        table.push_row(vec![Cell::Int(m), Cell::Float(g), Cell::Float(det)])?;
    }
    for (k, v) in &resolved.meta {
        table.set_meta(*k, v);
    }
    table.set_meta("m_max", a.m_max);
    Ok(table)
}

pub fn landauer_staircase(a: &LandauerArgs, units: &UnitSystem) -> Result<SweepTable, CliError> {
    let wg = Waveguide2DEG::new(a.m_eff, a.width, a.e0, *units)?;
    let (parameter, control) = match a.sweep {
        SweepKind::Fermi => (SweepParameter::FermiEnergy, "fermi"),
        SweepKind::Width => (
            SweepParameter::Width {
                fermi_kinetic: a.fermi,
            },
            "width",
        ),
    };
    let sweep = StaircaseSweep {
        parameter,
        from: a.from,
        to: a.to,
        points: a.points,
    };
    let points = landauer::staircase_sweep(&wg, &sweep)?;
    let mut table = landauer::staircase_table(&points, control);
    table.set_meta("sweep", control);
    table.set_meta("from", format_float(a.from));
    table.set_meta("to", format_float(a.to));
    table.set_meta("points", a.points);
    table.set_meta("m_eff", format_float(a.m_eff));
    match a.sweep {
        SweepKind::Fermi => table.set_meta("width", format_float(a.width)),
        SweepKind::Width => table.set_meta("fermi", format_float(a.fermi)),
    }
    table.set_meta("e0", format_float(a.e0));
    table.set_meta("step", format_float(landauer::conductance(1, units)));
    Ok(table)
}

pub fn calibrate(a: &CalibrateArgs, units: &UnitSystem) -> Result<SweepTable, CliError> {
    let cal = units.calibrated_beta();
    let mut columns = vec!["beta", "step", "G0", "G0_spin", "min_conductivity"];
    let mut row = vec![
        cal.beta,
        cal.step,
        units.conductance_quantum(),
        landauer::conductance(1, units),
        dirac::min_conductivity(units, a.degeneracy)?,
    ];
    let mut beta_prime = cal.beta;
    if let Some(ratio) = a.vf_over_c {
        let scaling = dirac::graphene_beta(cal.beta, ratio)?;
        beta_prime = scaling.beta_prime;
        columns.extend(["beta_prime", "step_prime"]);
        row.extend([scaling.beta_prime, scaling.step(units.e)]);
    }
    if let Some(g0) = a.calibrate_g0 {
        columns.push("I0");
        row.push(dirac::calibrate_i0(g0, a.voltage, beta_prime, units.e)?);
    }
    let mut table = SweepTable::new(columns);
    table.push_row(row.into_iter().map(Cell::Float).collect())?;
    table.set_meta("e", format_float(units.e));
    table.set_meta("hbar", format_float(units.hbar));
    table.set_meta("h", format_float(units.h));
    table.set_meta("degeneracy", a.degeneracy);
    if let Some(r) = a.vf_over_c {
        table.set_meta("vf_over_c", format_float(r));
    }
    if let Some(g0) = a.calibrate_g0 {
        table.set_meta("calibrate_G0", format_float(g0));
        table.set_meta("V", format_float(a.voltage));
        table.set_meta(
            "calibration_principal_branch",
            dirac::calibration_on_principal_branch(g0, beta_prime, units.e),
        );
    }
    Ok(table)
}
