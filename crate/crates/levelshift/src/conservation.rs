//! Two-point energy balance in the Coulomb field.
//!
//! For an electron seen at `(r1, v1)` and `(r2, v2)` around the same nucleus,
//! the balance can be written two ways:
//!
//! * the explicit form carries the bare mass and the potential term,
//!   `mc² + m v²/2 + eφ` at each point;
//! * the strict local-conservation form absorbs the potential into the
//!   effective mass, `m'c² + m' v'²/2` at each point.
//!
//! Both residuals below are "point 1 minus point 2" and vanish together, up
//! to floating-point noise, because `m'c²` differs from `mc²` by exactly
//! `eφ`. Swapping the points negates either residual bit for bit.

use serde::Serialize;

use crate::constants::Constants;
use crate::error::{Error, Result};
use crate::field::{coulomb_potential_energy, field_shift, FieldPoint};

/// Two validated sample points around one nucleus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BalancePair {
    z: u32,
    r1_nm: f64,
    v1: f64,
    r2_nm: f64,
    v2: f64,
}

impl BalancePair {
    /// Requires `z >= 0`, both radii positive and finite, both speeds in
    /// `[0, 1)`.
    pub fn new(z: i64, r1_nm: f64, v1: f64, r2_nm: f64, v2: f64) -> Result<Self> {
        let p1 = FieldPoint::new(z, r1_nm, v1)?;
        let _p2 = FieldPoint::new(z, r2_nm, v2)?;
        Ok(BalancePair { z: p1.z(), r1_nm, v1, r2_nm, v2 })
    }

    /// The same pair with the two points exchanged.
    pub fn swapped(&self) -> BalancePair {
        BalancePair {
            z: self.z,
            r1_nm: self.r2_nm,
            v1: self.v2,
            r2_nm: self.r1_nm,
            v2: self.v1,
        }
    }

    pub fn z(&self) -> u32 {
        self.z
    }
}

/// Residual of the explicit balance:
/// `m (v1² - v2²)/2 + (eφ1 - eφ2)`, in eV.
///
/// The identical rest energies cancel algebraically, so they never enter
/// the arithmetic here.
pub fn classical_residual(pair: &BalancePair, constants: &Constants) -> Result<f64> {
    let pot1 = coulomb_potential_energy(pair.z as i64, pair.r1_nm, constants)?;
    let pot2 = coulomb_potential_energy(pair.z as i64, pair.r2_nm, constants)?;
    let mc2 = constants.electron_rest_energy_ev;
    let kinetic_diff = 0.5 * mc2 * (pair.v1 * pair.v1 - pair.v2 * pair.v2);
    Ok(kinetic_diff + (pot1 - pot2))
}

/// Residual of the strict local-conservation balance:
/// `(m1' v1'² - m2' v2'²)/2 + (m1' - m2')c²`, in eV.
///
/// The rest-energy difference `(m1' - m2')c²` equals `eφ1 - eφ2` identically,
/// and is formed that way so the half-MeV rest energies never meet in a
/// subtraction. Fails like [`field_shift`] when a point sits inside the
/// critical radius.
pub fn strict_residual(pair: &BalancePair, constants: &Constants) -> Result<f64> {
    let s1 = field_shift(&FieldPoint::new(pair.z as i64, pair.r1_nm, pair.v1)?, constants)?;
    let s2 = field_shift(&FieldPoint::new(pair.z as i64, pair.r2_nm, pair.v2)?, constants)?;
    let mc2 = constants.electron_rest_energy_ev;
    let kinetic_diff = 0.5
        * mc2
        * (s1.m_prime_over_m * (s1.v_prime * s1.v_prime)
            - s2.m_prime_over_m * (s2.v_prime * s2.v_prime));
    Ok(kinetic_diff + (s1.potential_energy_ev - s2.potential_energy_ev))
}

/// Speed at `r2` implied by the explicit balance, given `(r1, v1)`:
/// `v2² = v1² + 2 (eφ1 - eφ2) / mc²`.
///
/// Falling inward (`r2 < r1`) speeds the electron up. Climbing outward past
/// the classical turning point makes `v2²` negative, which is reported as a
/// domain error carrying the offending value.
pub fn solve_v2(z: i64, r1_nm: f64, v1: f64, r2_nm: f64, constants: &Constants) -> Result<f64> {
    let p1 = FieldPoint::new(z, r1_nm, v1)?;
    let pot1 = coulomb_potential_energy(p1.z() as i64, r1_nm, constants)?;
    let pot2 = coulomb_potential_energy(p1.z() as i64, r2_nm, constants)?;
    let v2_squared = v1 * v1 + 2.0 * (pot1 - pot2) / constants.electron_rest_energy_ev;
    if v2_squared < 0.0 {
        return Err(Error::ClassicallyForbidden { v2_squared });
    }
    let v2 = v2_squared.sqrt();
    if v2 >= 1.0 {
        return Err(Error::InvalidSpeed(v2));
    }
    Ok(v2)
}
