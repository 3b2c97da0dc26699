//! Energy levels of hydrogen-like atoms with an effective-mass correction.
//!
//! A bound electron sits in the nuclear Coulomb field, and requiring energy to
//! be conserved locally (at every point of the orbit, not just on average)
//! makes its effective mass position-dependent: `m' = m(1 + eφ/mc²)`, with
//! `eφ < 0` for an attractive potential. Feeding that mass back into the bound
//! state shifts every level down by roughly `α²Z²/n²` of itself and shifts all
//! transition lines with it.
//!
//! The crate computes, in plain `f64`:
//!
//! * point diagnostics of the field coupling ([`field`]): potential energy,
//!   effective mass, velocity shift;
//! * two-point energy-balance residuals and the classically implied speed at a
//!   second radius ([`conservation`]);
//! * fine-structure level energies, their corrected values, and the
//!   displacement between the two ([`levels`]);
//! * transition-line energies, wavelengths, and line shifts ([`transitions`]);
//! * bulk tables over (Z, n, j) grids with CSV/JSON emission ([`report`]).
//!
//! Sign convention: level energies are binding energies in eV, positive for a
//! bound state. The spectroscopic level energy is their negative. Displacements
//! carry their own sign and are negative (levels sink) for an attractive field.
//!
//! All inputs arrive in the units used throughout: radii in nm, speeds as
//! fractions of c, energies in eV. Physical constants live in a [`Constants`]
//! bundle passed explicitly; nothing is read from global state.

pub mod cli;
pub mod conservation;
pub mod constants;
pub mod error;
pub mod field;
pub mod levels;
pub mod report;
pub mod transitions;

pub use constants::Constants;
pub use error::{Error, Result};
pub use levels::{LevelResult, QuantumState};
pub use transitions::Transition;
