//! Point diagnostics of an electron in a nuclear Coulomb field.
//!
//! The coupling at radius `r` is `x = eφ/mc²` with `eφ = -Z α ħc / r`, always
//! nonpositive for attraction. Local energy conservation then fixes the
//! effective mass and speed at that point:
//!
//! ```text
//! m'/m = 1 + x        v' = v / sqrt(1 + x)
//! ```
//!
//! so in an attractive field the mass drops and the speed grows. To first
//! order in `x` the speed shift is `Δv = v x / 2` (negative: `v' = v - Δv`
//! with `Δv < 0` means `v'` exceeds `v`).

use serde::Serialize;

use crate::constants::Constants;
use crate::error::{Error, Result};

/// Speeds above this fraction of c get flagged: the kinetic terms here are
/// the nonrelativistic `m v²/2`, so trust degrades as v approaches c.
pub const HIGH_SPEED_THRESHOLD: f64 = 0.1;

/// A validated (Z, r, v) sample point. Radius in nm, speed as a fraction of c.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldPoint {
    z: u32,
    r_nm: f64,
    v: f64,
}

impl FieldPoint {
    /// Requires `z >= 0`, `r_nm > 0`, `0 <= v < 1`, all finite.
    pub fn new(z: i64, r_nm: f64, v: f64) -> Result<Self> {
        if z < 0 {
            return Err(Error::NegativeCharge(z));
        }
        let z = u32::try_from(z).map_err(|_| Error::ChargeOutOfRange(z))?;
        if !r_nm.is_finite() || r_nm <= 0.0 {
            return Err(Error::NonpositiveRadius(r_nm));
        }
        if !v.is_finite() || !(0.0..1.0).contains(&v) {
            return Err(Error::InvalidSpeed(v));
        }
        Ok(FieldPoint { z, r_nm, v })
    }

    pub fn z(&self) -> u32 {
        self.z
    }

    pub fn r_nm(&self) -> f64 {
        self.r_nm
    }

    pub fn v(&self) -> f64 {
        self.v
    }
}

/// Everything the local-conservation rule says about one field point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldShift {
    /// eφ, eV. Zero or negative.
    pub potential_energy_ev: f64,
    /// Dimensionless coupling x = eφ/mc².
    pub x: f64,
    /// Effective-mass ratio m'/m = 1 + x, in (0, 1].
    pub m_prime_over_m: f64,
    /// Local speed v' = v / sqrt(1 + x), fraction of c.
    pub v_prime: f64,
    /// Rest-energy change (m' - m)c² = eφ, reported as the mass defect
    /// -eφ >= 0 carried off to the field, eV.
    pub mass_defect_ev: f64,
    /// First-order speed shift Δv = v x / 2 (so v' ≈ v - Δv).
    pub delta_v: f64,
    /// Exact difference v - v'.
    pub delta_v_exact: f64,
    /// True when v exceeds [`HIGH_SPEED_THRESHOLD`]; a warning, not an error.
    pub high_speed: bool,
}

/// Coulomb potential energy `eφ = -Z α ħc / r` of an electron at radius
/// `r_nm`, in eV. `z = 0` gives exactly zero.
pub fn coulomb_potential_energy(z: i64, r_nm: f64, constants: &Constants) -> Result<f64> {
    if z < 0 {
        return Err(Error::NegativeCharge(z));
    }
    if !r_nm.is_finite() || r_nm <= 0.0 {
        return Err(Error::NonpositiveRadius(r_nm));
    }
    // Grouped as -(Z k)/r: scaling Z by 2 or r by 1/2 then maps to an exact
    // doubling of the result, which the scaling tests pin down.
    Ok(-((z as f64) * constants.coulomb_ev_nm()) / r_nm)
}

/// Radius below which `1 + x` is nonpositive for charge `z`, in nm.
pub fn critical_radius_nm(z: u32, constants: &Constants) -> f64 {
    (z as f64) * constants.critical_radius_nm()
}

/// Speed transform at coupling `x`: returns `(v_prime, delta_v, delta_v_exact)`.
fn speed_at_coupling(v: f64, x: f64) -> (f64, f64, f64) {
    let v_prime = v / (1.0 + x).sqrt();
    let delta_v = v * x * 0.5;
    (v_prime, delta_v, v - v_prime)
}

/// Effective mass and speed shift at one field point.
///
/// Fails with a domain error when the point lies inside the critical radius,
/// where `1 + x <= 0` and no positive effective mass exists.
pub fn field_shift(point: &FieldPoint, constants: &Constants) -> Result<FieldShift> {
    let potential_energy_ev =
        coulomb_potential_energy(point.z as i64, point.r_nm, constants)?;
    let x = potential_energy_ev / constants.electron_rest_energy_ev;
    let m_prime_over_m = 1.0 + x;
    if m_prime_over_m <= 0.0 {
        return Err(Error::NonpositiveEffectiveMass {
            r_nm: point.r_nm,
            limit_nm: critical_radius_nm(point.z, constants),
        });
    }
    let (v_prime, delta_v, delta_v_exact) = speed_at_coupling(point.v, x);
    Ok(FieldShift {
        potential_energy_ev,
        x,
        m_prime_over_m,
        v_prime,
        mass_defect_ev: -potential_energy_ev,
        delta_v,
        delta_v_exact,
        high_speed: point.v > HIGH_SPEED_THRESHOLD,
    })
}

/// One energy budget, two bookkeepings.
///
/// The explicit split carries the bare mass plus the potential term; the
/// effective-mass split absorbs the potential into `m'`. Both totals describe
/// the same electron and agree to rounding error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergySplit {
    /// Bare rest energy m c², eV.
    pub rest_ev: f64,
    /// Bare kinetic energy m v²/2, eV.
    pub kinetic_ev: f64,
    /// Potential energy eφ, eV.
    pub potential_ev: f64,
    /// rest + kinetic + potential, eV.
    pub total_ev: f64,
    /// Effective rest energy m' c², eV.
    pub rest_prime_ev: f64,
    /// Effective kinetic energy m' v'²/2, eV.
    pub kinetic_prime_ev: f64,
    /// rest' + kinetic', eV.
    pub total_prime_ev: f64,
}

/// Both energy bookkeepings at one field point.
pub fn energy_split(point: &FieldPoint, constants: &Constants) -> Result<EnergySplit> {
    let shift = field_shift(point, constants)?;
    let mc2 = constants.electron_rest_energy_ev;
    let kinetic_ev = 0.5 * mc2 * (point.v * point.v);
    let rest_prime_ev = mc2 * shift.m_prime_over_m;
    let kinetic_prime_ev = 0.5 * rest_prime_ev * (shift.v_prime * shift.v_prime);
    Ok(EnergySplit {
        rest_ev: mc2,
        kinetic_ev,
        potential_ev: shift.potential_energy_ev,
        total_ev: mc2 + kinetic_ev + shift.potential_energy_ev,
        rest_prime_ev,
        kinetic_prime_ev,
        total_prime_ev: rest_prime_ev + kinetic_prime_ev,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c() -> Constants {
        Constants::default()
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(FieldPoint::new(-1, 1.0, 0.0), Err(Error::NegativeCharge(-1))));
        assert!(matches!(FieldPoint::new(1, 0.0, 0.0), Err(Error::NonpositiveRadius(_))));
        assert!(matches!(FieldPoint::new(1, -2.0, 0.0), Err(Error::NonpositiveRadius(_))));
        assert!(matches!(FieldPoint::new(1, f64::NAN, 0.0), Err(Error::NonpositiveRadius(_))));
        assert!(matches!(FieldPoint::new(1, 1.0, 1.0), Err(Error::InvalidSpeed(_))));
        assert!(matches!(FieldPoint::new(1, 1.0, -0.1), Err(Error::InvalidSpeed(_))));
        assert!(matches!(FieldPoint::new(1, 1.0, f64::NAN), Err(Error::InvalidSpeed(_))));
        assert!(matches!(
            coulomb_potential_energy(-3, 1.0, &c()),
            Err(Error::NegativeCharge(-3))
        ));
        assert!(matches!(
            coulomb_potential_energy(1, -1.0, &c()),
            Err(Error::NonpositiveRadius(_))
        ));
    }

    #[test]
    fn uncharged_nucleus_decouples() {
        let p = FieldPoint::new(0, 3.7, 0.25).unwrap();
        let s = field_shift(&p, &c()).unwrap();
        assert_eq!(s.potential_energy_ev, 0.0);
        assert_eq!(s.x, 0.0);
        assert_eq!(s.m_prime_over_m, 1.0);
        assert_eq!(s.v_prime, 0.25);
        assert_eq!(s.delta_v, 0.0);
        assert_eq!(s.delta_v_exact, 0.0);
        let e = energy_split(&p, &c()).unwrap();
        assert_eq!(e.total_ev, e.total_prime_ev);
    }

    #[test]
    fn bohr_radius_potential_is_two_rydbergs() {
        // Z = 1 at r = 0.0529 nm: eφ = -27.2205 eV, twice the Rydberg energy
        // up to the rounding of the input radius.
        let pot = coulomb_potential_energy(1, 0.0529, &c()).unwrap();
        assert_relative_eq!(pot, -27.220501842368822, max_relative = 1e-15);
    }

    #[test]
    fn energy_split_at_bohr_point() {
        let p = FieldPoint::new(1, 0.0529, 1e-3).unwrap();
        let e = energy_split(&p, &c()).unwrap();
        assert_eq!(e.rest_ev, 510998.95);
        assert_relative_eq!(e.kinetic_ev, 0.255499475, max_relative = 1e-15);
        assert_relative_eq!(e.potential_ev, -27.220501842368822, max_relative = 1e-15);
        assert_relative_eq!(e.total_ev, 510971.98499763263, max_relative = 1e-15);
        assert_relative_eq!(e.total_prime_ev, e.total_ev, max_relative = 1e-13);
    }

    #[test]
    fn speed_shift_small_coupling() {
        // v = 0.01 at x = -1e-6: v' = 0.01000000500000375 and the first-order
        // shift -5e-9 matches v - v' within the Taylor remainder v x².
        let (v_prime, delta_v, delta_v_exact) = speed_at_coupling(0.01, -1e-6);
        assert_relative_eq!(v_prime, 0.010000005000003750, max_relative = 1e-15);
        assert_relative_eq!(delta_v, -5e-9, max_relative = 1e-13);
        assert_relative_eq!(delta_v_exact, -5.000003750003125e-9, max_relative = 1e-12);
        assert!((delta_v_exact - delta_v).abs() <= 0.01 * 1e-6 * 1e-6);
    }

    #[test]
    fn attraction_lowers_mass_and_raises_speed() {
        let p = FieldPoint::new(26, 0.001, 0.01).unwrap();
        let s = field_shift(&p, &c()).unwrap();
        assert!(s.potential_energy_ev < 0.0);
        assert!(s.x < 0.0);
        assert!(s.m_prime_over_m < 1.0 && s.m_prime_over_m > 0.0);
        assert!(s.v_prime > p.v());
        assert!(s.delta_v < 0.0);
        assert!(s.mass_defect_ev > 0.0);
        assert!(!s.high_speed);
    }

    #[test]
    fn high_speed_flagged_strictly_above_threshold() {
        let at = FieldPoint::new(1, 1.0, HIGH_SPEED_THRESHOLD).unwrap();
        assert!(!field_shift(&at, &c()).unwrap().high_speed);
        let above = FieldPoint::new(1, 1.0, 0.2).unwrap();
        assert!(field_shift(&above, &c()).unwrap().high_speed);
    }

    #[test]
    fn inside_critical_radius_is_a_domain_error() {
        // Unit charge critical radius is 2.818e-6 nm; probe inside it.
        let r0 = critical_radius_nm(1, &c());
        let p = FieldPoint::new(1, 0.5 * r0, 0.0).unwrap();
        match field_shift(&p, &c()) {
            Err(Error::NonpositiveEffectiveMass { r_nm, limit_nm }) => {
                assert_eq!(r_nm, 0.5 * r0);
                assert_eq!(limit_nm, r0);
            }
            other => panic!("expected NonpositiveEffectiveMass, got {other:?}"),
        }
        // Just outside, the shift exists and the mass ratio is tiny but positive.
        let q = FieldPoint::new(1, 1.0625 * r0, 0.0).unwrap();
        let s = field_shift(&q, &c()).unwrap();
        assert!(s.m_prime_over_m > 0.0 && s.m_prime_over_m < 0.1);
    }

    #[test]
    fn potential_scales_exactly_with_charge_and_inverse_radius() {
        let k = c();
        for z in [1i64, 7, 46] {
            let base = coulomb_potential_energy(z, 0.37, &k).unwrap();
            let doubled_z = coulomb_potential_energy(2 * z, 0.37, &k).unwrap();
            assert_eq!(doubled_z, 2.0 * base);
            let halved_r = coulomb_potential_energy(z, 0.185, &k).unwrap();
            assert_eq!(halved_r, 2.0 * base);
        }
    }

    #[test]
    fn potential_magnitude_decreases_with_radius() {
        let k = c();
        let mut last = f64::INFINITY;
        for r in [1e-4, 1e-3, 0.05, 0.0529, 1.0, 42.0] {
            let mag = coulomb_potential_energy(1, r, &k).unwrap().abs();
            assert!(mag < last, "|eφ|({r}) = {mag} not below {last}");
            last = mag;
        }
    }
}
