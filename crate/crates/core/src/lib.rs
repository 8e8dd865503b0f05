//! Quantized electric circuits on a discrete charge lattice.
//!
//! Two circuits are modelled. A biased conductance quantized with
//! `[q, G] = iβ` on integer charges `n·e` gives a cosine band and
//! zero-energy conductance levels spaced by `2πβ/e`; with the calibrated
//! `β` that spacing is `e²/h`. Adding a current source and two-component
//! states gives a gapped sine band whose source term fixes a minimum
//! conductance. A hard-wall Landauer model of a constricted 2DEG provides
//! the reference staircase the circuits are checked against.
//!
//! ```
//! use circuitq::{lattice::{Boundary, ChargeLattice}, schrodinger, units::UnitSystem};
//!
//! let u = UnitSystem::dimensionless();
//! let lat = ChargeLattice::with_sites(16, Boundary::Periodic, u.e).unwrap();
//! let c = schrodinger::SchrodingerCircuit::new(1.0, u.calibrated_beta().beta, lat).unwrap();
//! let levels = schrodinger::zero_energy_levels(&c, 3);
//! assert!((levels.step - u.conductance_quantum()).abs() < 1e-15);
//! assert!(schrodinger::band_check(&c).unwrap().passed);
//! ```

pub mod band;
pub mod dirac;
pub mod eigensolver;
pub mod error;
pub mod landauer;
pub mod lattice;
pub mod operator;
pub mod schrodinger;
pub mod table;
pub mod units;

pub use band::BandReport;
pub use eigensolver::{hermitian_eigen, Spectrum};
pub use error::{Error, Result};
pub use lattice::{Boundary, ChargeLattice};
pub use operator::OperatorMatrix;
pub use table::{Cell, SweepTable};
pub use units::{UnitMode, UnitSystem};
