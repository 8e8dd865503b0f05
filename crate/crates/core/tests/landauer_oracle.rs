//! Staircase sweeps against a brute-force subband count.

use std::f64::consts::PI;

use circuitq::landauer::{self, StaircaseSweep, SweepParameter, Waveguide2DEG};
use circuitq::UnitSystem;
use proptest::prelude::*;

/// Counts `n ≥ 1` with `ħ²π²n²/(2mW²) < E_F` by direct enumeration.
fn brute_force_count(hbar: f64, m: f64, w: f64, fermi: f64) -> usize {
    let mut n = 0usize;
    loop {
        let next = (n + 1) as f64;
        let eps = hbar * hbar * PI * PI * next * next / (2.0 * m * w * w);
        if eps >= fermi {
            return n;
        }
        n += 1;
    }
}

fn step() -> f64 {
    2.0 * UnitSystem::dimensionless().conductance_quantum()
}

fn check_staircase(points: &[landauer::StaircasePoint]) {
    let step = step();
    for w in points.windows(2) {
        assert!(w[1].conductance >= w[0].conductance, "{w:?}");
    }
    for p in points {
        assert_eq!(p.conductance, p.occupied as f64 * step);
    }
}

#[test]
fn worked_example() {
    let wg = Waveguide2DEG::new(1.0, PI, 0.0, UnitSystem::dimensionless()).unwrap();
    assert_eq!(landauer::occupied_subbands(&wg, 5.0, 8).unwrap(), 4);
    assert_eq!(brute_force_count(1.0, 1.0, PI, 12.5), 4);
    assert_eq!(landauer::conductance(4, wg.units()), 4.0 * step());
}

#[test]
fn width_sweep_matches_brute_force() {
    let wg = Waveguide2DEG::new(1.0, 1.0, 0.0, UnitSystem::dimensionless()).unwrap();
    let sweep = StaircaseSweep {
        parameter: SweepParameter::Width {
            fermi_kinetic: 12.5,
        },
        from: 0.3,
        to: 9.0,
        points: 400,
    };
    let points = landauer::staircase_sweep(&wg, &sweep).unwrap();
    check_staircase(&points);
    for p in &points {
        assert_eq!(
            p.occupied,
            brute_force_count(1.0, 1.0, p.control, 12.5),
            "W = {}",
            p.control
        );
    }
    assert_eq!(
        points.last().unwrap().occupied,
        brute_force_count(1.0, 1.0, 9.0, 12.5)
    );
}

#[test]
fn fermi_sweep_matches_brute_force() {
    let wg = Waveguide2DEG::new(0.5, 2.0, 3.0, UnitSystem::dimensionless()).unwrap();
    let sweep = StaircaseSweep {
        parameter: SweepParameter::FermiEnergy,
        from: 0.0,
        to: 60.0,
        points: 301,
    };
    let points = landauer::staircase_sweep(&wg, &sweep).unwrap();
    check_staircase(&points);
    for p in &points {
        assert_eq!(p.occupied, brute_force_count(1.0, 0.5, 2.0, p.control));
    }
}

#[test]
fn si_units_staircase() {
    // GaAs-like channel: m = 0.067 m_e, W = 200 nm, E_F = 10 meV
    let m_e = 9.1093837015e-31;
    let wg = Waveguide2DEG::new(0.067 * m_e, 200e-9, 0.0, UnitSystem::si()).unwrap();
    let ef = 10e-3 * 1.602176634e-19;
    let n = wg.occupied_below(ef, wg.required_cutoff(ef)).unwrap();
    assert_eq!(
        n,
        brute_force_count(1.054571817e-34, 0.067 * m_e, 200e-9, ef)
    );
    assert!(n > 0);
}

proptest! {
    #[test]
    fn conductance_independent_of_geometry(n in 0usize..50, m in 0.01..10.0f64, w in 0.1..10.0f64) {
        let u = UnitSystem::dimensionless();
        let _wg = Waveguide2DEG::new(m, w, 0.0, u).unwrap();
        prop_assert_eq!(landauer::conductance(n, &u), n as f64 * 2.0 * u.conductance_quantum());
    }

    #[test]
    fn random_sweeps_monotone(m in 0.1..5.0f64, w in 0.5..5.0f64, top in 1.0..200.0f64, points in 2usize..200) {
        let wg = Waveguide2DEG::new(m, w, 0.0, UnitSystem::dimensionless()).unwrap();
        let fermi = landauer::staircase_sweep(&wg, &StaircaseSweep {
            parameter: SweepParameter::FermiEnergy, from: 0.0, to: top, points,
        }).unwrap();
        check_staircase(&fermi);
        let width = landauer::staircase_sweep(&wg, &StaircaseSweep {
            parameter: SweepParameter::Width { fermi_kinetic: top }, from: 0.1, to: 10.0 * w, points,
        }).unwrap();
        check_staircase(&width);
    }
}
