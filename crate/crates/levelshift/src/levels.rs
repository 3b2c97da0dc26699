//! Fine-structure levels and their effective-mass correction.
//!
//! The uncorrected binding energy of level (Z, n, j), through the leading
//! fine-structure term, is
//!
//! ```text
//! B = (α² mc² / 2) (Z²/n²) [1 + (α²Z²/n)(1/(j + 1/2) - 3/(4n))]
//! ```
//!
//! with the square bracket called the Sommerfeld bracket here. Writing
//! `t = (Z²/n²) [..]` gives `B = (α² mc²/2) t` and a coupling `k = α² t`.
//!
//! A bound electron has lowered its effective mass, and since every level is
//! proportional to the mass of the orbiting electron, the correction closes
//! on itself: the corrected binding energy solves `E = B - k E`, so
//!
//! ```text
//! E_corr = B / (1 + k)
//! ```
//!
//! The displacement is `ΔE = -B k / (1 + k)` exactly, or `-B k` to first
//! order in `k`. Displacements are negative: binding weakens, the level sinks
//! toward the continuum by a fraction `k` of itself.

use serde::Serialize;

use crate::constants::Constants;
use crate::error::{Error, Result};

/// Charge numbers above this sit outside the range where the fine-structure
/// bracket is usually tabulated; results are produced with a warning.
pub const HIGH_Z_WARNING_THRESHOLD: u32 = 92;

/// A validated bound-state label (Z, n_r, j), with `n = n_r + j + 1/2`.
///
/// `j` is stored doubled so it stays integral; `twice_j` must be odd. The
/// supercritical wall `αZ >= 1` is checked at construction against the
/// constants in use, so a state object is always safe to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuantumState {
    z: u32,
    n_radial: u32,
    twice_j: u32,
}

impl QuantumState {
    pub fn new(z: i64, n_radial: i64, twice_j: i64, constants: &Constants) -> Result<Self> {
        if z < 1 {
            return Err(Error::NonpositiveChargeNumber(z));
        }
        let z_u32 = u32::try_from(z).map_err(|_| Error::ChargeOutOfRange(z))?;
        if n_radial < 0 {
            return Err(Error::NegativeRadialNumber(n_radial));
        }
        if twice_j < 1 || twice_j % 2 == 0 {
            return Err(Error::InvalidTwiceJ(twice_j));
        }
        let alpha_z = constants.alpha * z as f64;
        if alpha_z >= 1.0 {
            return Err(Error::SupercriticalCharge { z, alpha_z });
        }
        Ok(QuantumState {
            z: z_u32,
            n_radial: n_radial as u32,
            twice_j: twice_j as u32,
        })
    }

    pub fn z(&self) -> u32 {
        self.z
    }

    pub fn n_radial(&self) -> u32 {
        self.n_radial
    }

    pub fn twice_j(&self) -> u32 {
        self.twice_j
    }

    /// Principal quantum number `n = n_r + j + 1/2`, at least 1.
    pub fn n(&self) -> u32 {
        self.n_radial + (self.twice_j + 1) / 2
    }

    /// Total angular momentum j as a float (1/2, 3/2, ...).
    pub fn j(&self) -> f64 {
        self.twice_j as f64 / 2.0
    }

    /// True above [`HIGH_Z_WARNING_THRESHOLD`]: still computable, but flagged.
    pub fn high_z(&self) -> bool {
        self.z > HIGH_Z_WARNING_THRESHOLD
    }
}

/// The corrected-level bundle for one state. Energies in eV, binding-energy
/// sign convention (positive bound, displacements negative).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LevelResult {
    /// Sommerfeld bracket actually used.
    pub bracket: f64,
    /// Correction coupling k = α² (Z²/n²) bracket.
    pub k: f64,
    /// Uncorrected binding energy B, eV.
    pub e_uncorrected_ev: f64,
    /// Corrected binding energy B / (1 + k), eV.
    pub e_corrected_ev: f64,
    /// First-order displacement -B k, eV.
    pub delta_first_order_ev: f64,
    /// Exact displacement -B k / (1 + k), eV.
    pub delta_exact_ev: f64,
    /// Effective-mass ratio of the bound electron,
    /// 1 - 2 E_corr / mc², in (0, 1).
    pub m_eff_over_m: f64,
}

/// The Sommerfeld bracket `1 + (α²Z²/n)(1/(j + 1/2) - 3/(4n))`.
///
/// Exceeds 1 for j + 1/2 < 4n/3 (all low-j states) and dips just below 1 for
/// high j at large n. Exactly 1 when α = 0.
pub fn sommerfeld_bracket(state: &QuantumState, constants: &Constants) -> f64 {
    let nf = state.n() as f64;
    let zf = state.z as f64;
    let az2 = (constants.alpha * constants.alpha) * (zf * zf);
    let inv_j_half = 1.0 / (0.5 * (state.twice_j as f64 + 1.0));
    1.0 + (az2 / nf) * (inv_j_half - 3.0 / (4.0 * nf))
}

/// Uncorrected binding energy B in eV.
pub fn level_uncorrected(state: &QuantumState, constants: &Constants) -> f64 {
    level_corrected(state, constants).e_uncorrected_ev
}

/// The full corrected bundle for one state.
pub fn level_corrected(state: &QuantumState, constants: &Constants) -> LevelResult {
    level_corrected_with_bracket(state, constants, sommerfeld_bracket(state, constants))
}

/// Same as [`level_corrected`] but with the bracket supplied by the caller.
///
/// `bracket = 1.0` switches fine structure off and leaves the bare Bohr
/// scaling `Z²/n²`, which makes scaling laws exact in floating point; that is
/// its role in tests and diagnostics.
pub fn level_corrected_with_bracket(
    state: &QuantumState,
    constants: &Constants,
    bracket: f64,
) -> LevelResult {
    let zf = state.z as f64;
    let nf = state.n() as f64;
    let alpha2 = constants.alpha * constants.alpha;
    let half_alpha2_mc2 = (0.5 * alpha2) * constants.electron_rest_energy_ev;
    // t = (Z²/n²) bracket carries all the state dependence. Grouped so that
    // integer-valued Z²/n² stays exact, which the scaling tests rely on.
    let t = ((zf * zf) / (nf * nf)) * bracket;
    let k = alpha2 * t;
    let e_uncorrected_ev = half_alpha2_mc2 * t;
    let e_corrected_ev = e_uncorrected_ev / (1.0 + k);
    let delta_scale = half_alpha2_mc2 * alpha2;
    let delta_first_order_ev = -(delta_scale * (t * t));
    let delta_exact_ev = -((e_uncorrected_ev * k) / (1.0 + k));
    LevelResult {
        bracket,
        k,
        e_uncorrected_ev,
        e_corrected_ev,
        delta_first_order_ev,
        delta_exact_ev,
        m_eff_over_m: 1.0 - (2.0 * e_corrected_ev) / constants.electron_rest_energy_ev,
    }
}

/// Solve `E = B - k E` by iteration instead of the closed form.
///
/// Plain substitution `E <- B - k E` contracts for `k < 1`; above `k = 0.75`
/// the update is averaged with the current iterate (damping 1/2), which keeps
/// the map contracting for every subcritical state (`k < 1.25`). Convergence
/// means `|E (1 + k) - B| <= tol B`. Returns the iterate, or a
/// non-convergence error carrying `k` and the iteration budget.
pub fn fixed_point_solve(
    state: &QuantumState,
    constants: &Constants,
    tol: f64,
    max_iter: usize,
) -> Result<f64> {
    let closed = level_corrected(state, constants);
    let b = closed.e_uncorrected_ev;
    let k = closed.k;
    if b == 0.0 {
        return Ok(0.0);
    }
    let damped = k > 0.75;
    let mut e = b;
    for iteration in 1..=max_iter {
        let next = b - k * e;
        e = if damped { 0.5 * (e + next) } else { next };
        if (e * (1.0 + k) - b).abs() <= tol * b {
            let _ = iteration;
            return Ok(e);
        }
    }
    Err(Error::NonConvergence { k, iterations: max_iter })
}
