//! Transition lines between corrected levels.
//!
//! A downward jump from state `u` to state `l` (same nucleus, `n_u > n_l`)
//! emits a photon of energy `B(l) - B(u)` in the binding-energy convention.
//! Both levels sink under the effective-mass correction, the deeper one by
//! more, so every line energy shrinks and every wavelength stretches toward
//! the red.
//!
//! The line shift is reported two ways:
//!
//! * `shift_level_difference`: difference of the two exact level
//!   displacements, the reference value;
//! * `shift_substitution`: the one-level displacement formula with each
//!   explicit `1/n²` replaced by `1/n_l² - 1/n_u²`, keeping the lower state's
//!   bracket. A common shortcut, accurate for wide jumps (`1/n_l²` dominant)
//!   and off by an order-one factor for near-degenerate ones.

use serde::Serialize;

use crate::constants::Constants;
use crate::error::{Error, Result};
use crate::levels::{level_corrected, QuantumState};

/// One emission line with both level bundles folded in. Energies in eV,
/// wavelengths in nm; wavelengths are infinite if the line energy is zero
/// (α = 0), and serialize as null in JSON.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Transition {
    pub upper: QuantumState,
    pub lower: QuantumState,
    /// Uncorrected line energy B(lower) - B(upper), eV. Positive.
    pub e_line_uncorrected_ev: f64,
    /// Corrected line energy, eV. Below the uncorrected one.
    pub e_line_corrected_ev: f64,
    /// Line shift as the difference of exact level displacements, eV.
    /// Negative.
    pub shift_level_difference_ev: f64,
    /// Line shift from the substitution shortcut, eV. Negative.
    pub shift_substitution_ev: f64,
    /// hc over the uncorrected line energy, nm.
    pub lambda_uncorrected_nm: f64,
    /// hc over the corrected line energy, nm.
    pub lambda_corrected_nm: f64,
}

fn check_same_nucleus(upper: &QuantumState, lower: &QuantumState) -> Result<()> {
    if upper.z() != lower.z() {
        return Err(Error::MismatchedCharge { upper_z: upper.z(), lower_z: lower.z() });
    }
    Ok(())
}

/// Uncorrected and corrected line energies `(B(lower) - B(upper))` in eV.
///
/// Only the shared nucleus is checked here, not the level order, so the pair
/// is antisymmetric under swapping the arguments. [`transition`] adds the
/// `n_upper > n_lower` requirement.
pub fn line_energies(
    upper: &QuantumState,
    lower: &QuantumState,
    constants: &Constants,
) -> Result<(f64, f64)> {
    check_same_nucleus(upper, lower)?;
    let lo = level_corrected(lower, constants);
    let up = level_corrected(upper, constants);
    Ok((
        lo.e_uncorrected_ev - up.e_uncorrected_ev,
        lo.e_corrected_ev - up.e_corrected_ev,
    ))
}

/// Substitution-shortcut line shift in eV: the displacement formula with
/// `1/n²` replaced by `d = 1/n_l² - 1/n_u²` wherever it appears explicitly,
/// bracket fixed to the lower state's. Zero when `n_l = n_u`.
fn substitution_shift(
    z: u32,
    n_lower: u32,
    n_upper: u32,
    bracket_lower: f64,
    constants: &Constants,
) -> f64 {
    let nl = n_lower as f64;
    let nu = n_upper as f64;
    let zf = z as f64;
    let d = 1.0 / (nl * nl) - 1.0 / (nu * nu);
    let alpha2 = constants.alpha * constants.alpha;
    let half_alpha2_mc2 = (0.5 * alpha2) * constants.electron_rest_energy_ev;
    let u = ((zf * zf) * d) * bracket_lower;
    -((half_alpha2_mc2 * alpha2) * (u * u))
}

/// Full line bundle for the downward jump `upper -> lower`.
pub fn transition(
    upper: &QuantumState,
    lower: &QuantumState,
    constants: &Constants,
) -> Result<Transition> {
    check_same_nucleus(upper, lower)?;
    if upper.n() <= lower.n() {
        return Err(Error::NotATransition { lower_n: lower.n(), upper_n: upper.n() });
    }
    let lo = level_corrected(lower, constants);
    let up = level_corrected(upper, constants);
    let e_line_uncorrected_ev = lo.e_uncorrected_ev - up.e_uncorrected_ev;
    let e_line_corrected_ev = lo.e_corrected_ev - up.e_corrected_ev;
    Ok(Transition {
        upper: *upper,
        lower: *lower,
        e_line_uncorrected_ev,
        e_line_corrected_ev,
        shift_level_difference_ev: lo.delta_exact_ev - up.delta_exact_ev,
        shift_substitution_ev: substitution_shift(
            lower.z(),
            lower.n(),
            upper.n(),
            lo.bracket,
            constants,
        ),
        lambda_uncorrected_nm: constants.hc_ev_nm / e_line_uncorrected_ev,
        lambda_corrected_nm: constants.hc_ev_nm / e_line_corrected_ev,
    })
}

/// All lines ending on `lower` with upper principal number up to `n_max`,
/// upper states taking the lower state's j. Ascending in line energy, which
/// piles up toward the series limit `B(lower)`.
pub fn series(
    lower: &QuantumState,
    n_max: i64,
    constants: &Constants,
) -> Result<Vec<Transition>> {
    if n_max <= lower.n() as i64 {
        return Err(Error::EmptySeries { lower_n: lower.n(), n_max });
    }
    let offset = (lower.twice_j() as i64 + 1) / 2;
    let mut lines = Vec::with_capacity((n_max - lower.n() as i64) as usize);
    for n_upper in (lower.n() as i64 + 1)..=n_max {
        let upper = QuantumState::new(
            lower.z() as i64,
            n_upper - offset,
            lower.twice_j() as i64,
            constants,
        )?;
        lines.push(transition(&upper, lower, constants)?);
    }
    Ok(lines)
}
