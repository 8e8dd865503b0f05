//! Landauer staircase for a hard-wall constriction in a 2DEG.
//!
//! Transverse subbands of a channel of width `W` sit at
//! `ε_n = (ħπn/W)²/(2m)`. With unit transmission and zero temperature each
//! subband below the Fermi kinetic energy contributes `2e²/h`.

use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};
use crate::table::{Cell, SweepTable};
use crate::units::UnitSystem;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Waveguide2DEG {
    m_eff: f64,
    width: f64,
    /// Band-edge offset; occupancy never depends on it.
    e0: f64,
    units: UnitSystem,
}

impl Waveguide2DEG {
    pub fn new(m_eff: f64, width: f64, e0: f64, units: UnitSystem) -> Result<Self> {
        if !(m_eff.is_finite() && m_eff > 0.0) {
            return Err(invalid("m_eff", format!("must be positive, got {m_eff}")));
        }
        if !(width.is_finite() && width > 0.0) {
            return Err(invalid("width", format!("must be positive, got {width}")));
        }
        Ok(Self {
            m_eff,
            width,
            e0,
            units,
        })
    }

    pub fn m_eff(&self) -> f64 {
        self.m_eff
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn e0(&self) -> f64 {
        self.e0
    }

    pub fn units(&self) -> &UnitSystem {
        &self.units
    }

    pub fn with_width(&self, width: f64) -> Result<Self> {
        Self::new(self.m_eff, width, self.e0, self.units)
    }

    /// `ε_n` for a single subband index `n ≥ 1`.
    pub fn subband_energy(&self, n: usize) -> f64 {
        // ε_1·n², with ε_1 formed first so that W = π·ħ gives exact values
        let q = self.units.hbar * PI / self.width;
        let n = n as f64;
        q * q / (2.0 * self.m_eff) * (n * n)
    }

    /// `ħ²k²/(2m)`
    pub fn kinetic_energy(&self, k: f64) -> f64 {
        let p = self.units.hbar * k;
        p * p / (2.0 * self.m_eff)
    }

    /// Smallest cutoff `n_max` whose subband reaches `fermi_kinetic`.
    pub fn required_cutoff(&self, fermi_kinetic: f64) -> usize {
        let mut n = ((fermi_kinetic.max(0.0) / self.subband_energy(1))
            .sqrt()
            .floor() as usize)
            .max(1);
        while self.subband_energy(n) < fermi_kinetic {
            n += 1;
        }
        n
    }

    /// Number of subbands with `ε_n < fermi_kinetic` among `1..=n_max`.
    pub fn occupied_below(&self, fermi_kinetic: f64, n_max: usize) -> Result<usize> {
        if n_max == 0 {
            return Err(invalid("n_max", "must be at least 1"));
        }
        let top = self.subband_energy(n_max);
        if top < fermi_kinetic {
            return Err(Error::CutoffTooSmall {
                n_max,
                top,
                fermi: fermi_kinetic,
            });
        }
        Ok((1..=n_max)
            .take_while(|&n| self.subband_energy(n) < fermi_kinetic)
            .count())
    }
}

/// `ε_1, …, ε_{n_max}`
pub fn subband_energies(wg: &Waveguide2DEG, n_max: usize) -> Vec<f64> {
    (1..=n_max).map(|n| wg.subband_energy(n)).collect()
}

/// Subbands with `ε_n < ħ²k_F²/(2m)`. The inequality is strict: a subband
/// whose edge coincides with the Fermi energy carries no current.
pub fn occupied_subbands(wg: &Waveguide2DEG, k_fermi: f64, n_max: usize) -> Result<usize> {
    if !(k_fermi.is_finite() && k_fermi >= 0.0) {
        return Err(invalid(
            "k_F",
            format!("must be non-negative, got {k_fermi}"),
        ));
    }
    wg.occupied_below(wg.kinetic_energy(k_fermi), n_max)
}

/// `N·2e²/h`; independent of the dispersion and of the channel geometry.
pub fn conductance(occupied: usize, u: &UnitSystem) -> f64 {
    occupied as f64 * 2.0 * u.conductance_quantum()
}

/// `ħk/m`
pub fn electron_velocity(k: f64, wg: &Waveguide2DEG) -> f64 {
    wg.units.hbar * k / wg.m_eff
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepParameter {
    /// Sweep the Fermi kinetic energy at the waveguide's width.
    FermiEnergy,
    /// Sweep the channel width at a fixed Fermi kinetic energy.
    Width { fermi_kinetic: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaircaseSweep {
    pub parameter: SweepParameter,
    pub from: f64,
    pub to: f64,
    pub points: usize,
}

impl StaircaseSweep {
    /// Uniform grid `from + i·(to − from)/(points − 1)`, endpoints exact.
    pub fn grid(&self) -> Vec<f64> {
        let span = self.to - self.from;
        let last = self.points - 1;
        (0..self.points)
            .map(|i| {
                if i == last {
                    self.to
                } else {
                    self.from + span * i as f64 / last as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaircasePoint {
    pub control: f64,
    pub occupied: usize,
    pub conductance: f64,
}

pub fn staircase_sweep(wg: &Waveguide2DEG, sweep: &StaircaseSweep) -> Result<Vec<StaircasePoint>> {
    if !(sweep.from.is_finite() && sweep.to.is_finite() && sweep.from < sweep.to) {
        return Err(invalid(
            "range",
            format!("need from < to, got [{}, {}]", sweep.from, sweep.to),
        ));
    }
    if sweep.points < 2 {
        return Err(invalid(
            "points",
            format!("need at least 2, got {}", sweep.points),
        ));
    }
    sweep
        .grid()
        .into_iter()
        .map(|control| {
            let (channel, fermi) = match sweep.parameter {
                SweepParameter::FermiEnergy => (*wg, control),
                SweepParameter::Width { fermi_kinetic } => (wg.with_width(control)?, fermi_kinetic),
            };
            let occupied = channel.occupied_below(fermi, channel.required_cutoff(fermi))?;
            Ok(StaircasePoint {
                control,
                occupied,
                conductance: conductance(occupied, &wg.units),
            })
        })
        .collect()
}

/// Table with columns `(control, N, G)`.
pub fn staircase_table(points: &[StaircasePoint], control_name: &str) -> SweepTable {
    let mut table = SweepTable::new([control_name, "N", "G"]);
    for p in points {
        table
            .push_row(vec![
                Cell::Float(p.control),
                Cell::Int(p.occupied as i64),
                Cell::Float(p.conductance),
            ])
            .expect("three columns");
    }
    table
}
