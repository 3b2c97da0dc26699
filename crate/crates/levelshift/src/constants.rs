//! Physical constants bundle.
//!
//! Everything downstream takes an explicit [`Constants`] value, so alternate
//! universes (rescaled α for convergence studies, α = 0 to switch the coupling
//! off) are ordinary inputs rather than global switches.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fine-structure constant, CODATA 2018. Dimensionless.
pub const DEFAULT_ALPHA: f64 = 7.297_352_569_3e-3;
/// Electron rest energy m c² in eV, CODATA 2018.
pub const DEFAULT_ELECTRON_REST_ENERGY_EV: f64 = 510_998.95;
/// Planck constant times c in eV nm, for wavelength conversion.
pub const DEFAULT_HC_EV_NM: f64 = 1_239.841_984;

/// The three numbers every formula in this crate is built from.
///
/// Invariants, enforced by [`Constants::validate`]: all fields finite,
/// `0 <= alpha < 1`, the two energies strictly positive. `alpha = 0` is
/// allowed as a diagnostic override that turns the coupling off.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Constants {
    /// Fine-structure constant α.
    pub alpha: f64,
    /// Electron rest energy m c², eV.
    pub electron_rest_energy_ev: f64,
    /// h c in eV nm.
    pub hc_ev_nm: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Constants {
            alpha: DEFAULT_ALPHA,
            electron_rest_energy_ev: DEFAULT_ELECTRON_REST_ENERGY_EV,
            hc_ev_nm: DEFAULT_HC_EV_NM,
        }
    }
}

impl Constants {
    /// Validated constructor; see [`Constants::validate`] for the rules.
    pub fn new(alpha: f64, electron_rest_energy_ev: f64, hc_ev_nm: f64) -> Result<Self> {
        let c = Constants { alpha, electron_rest_energy_ev, hc_ev_nm };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.alpha.is_finite() || self.alpha < 0.0 || self.alpha >= 1.0 {
            return Err(Error::InvalidConstants(format!(
                "alpha must be finite and in [0, 1) (got {})",
                self.alpha
            )));
        }
        if !self.electron_rest_energy_ev.is_finite() || self.electron_rest_energy_ev <= 0.0 {
            return Err(Error::InvalidConstants(format!(
                "electron_rest_energy_ev must be finite and positive (got {})",
                self.electron_rest_energy_ev
            )));
        }
        if !self.hc_ev_nm.is_finite() || self.hc_ev_nm <= 0.0 {
            return Err(Error::InvalidConstants(format!(
                "hc_ev_nm must be finite and positive (got {})",
                self.hc_ev_nm
            )));
        }
        Ok(())
    }

    /// Coulomb coupling `Z e² = Z α ħc` per unit charge, in eV nm.
    ///
    /// `ħc = hc / 2π`, so the potential energy of an electron at radius `r`
    /// around charge `Z` is `-Z * coulomb_ev_nm() / r`.
    pub fn coulomb_ev_nm(&self) -> f64 {
        self.alpha * self.hc_ev_nm / std::f64::consts::TAU
    }

    /// Radius where `1 + eφ/mc²` reaches zero for unit charge, in nm.
    /// Multiply by Z for a charge-Z nucleus. Inside it the effective mass
    /// would be nonpositive and the model breaks off.
    pub fn critical_radius_nm(&self) -> f64 {
        self.coulomb_ev_nm() / self.electron_rest_energy_ev
    }

    /// Parse a config file body: either a JSON object or `key = value` lines
    /// (`#` comments allowed). Recognized keys are `alpha`,
    /// `electron_rest_energy_ev`, and `hc_ev_nm`; omitted keys keep their
    /// defaults, unknown keys are an error. The result is validated.
    pub fn from_config_str(text: &str) -> Result<Self> {
        let partial = if text.trim_start().starts_with('{') {
            serde_json::from_str::<PartialConstants>(text)
                .map_err(|e| Error::Config(format!("bad JSON config: {e}")))?
        } else {
            PartialConstants::from_key_value(text)?
        };
        let mut c = Constants::default();
        if let Some(a) = partial.alpha {
            c.alpha = a;
        }
        if let Some(m) = partial.electron_rest_energy_ev {
            c.electron_rest_energy_ev = m;
        }
        if let Some(h) = partial.hc_ev_nm {
            c.hc_ev_nm = h;
        }
        c.validate()?;
        Ok(c)
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct PartialConstants {
    alpha: Option<f64>,
    electron_rest_energy_ev: Option<f64>,
    hc_ev_nm: Option<f64>,
}

impl PartialConstants {
    fn from_key_value(text: &str) -> Result<Self> {
        let mut p = PartialConstants::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected key = value, got {raw:?}", lineno + 1))
            })?;
            let value: f64 = value.trim().parse().map_err(|_| {
                Error::Config(format!("line {}: {:?} is not a number", lineno + 1, value.trim()))
            })?;
            match key.trim() {
                "alpha" => p.alpha = Some(value),
                "electron_rest_energy_ev" => p.electron_rest_energy_ev = Some(value),
                "hc_ev_nm" => p.hc_ev_nm = Some(value),
                other => {
                    return Err(Error::Config(format!(
                        "line {}: unknown key {other:?} (expected alpha, electron_rest_energy_ev, hc_ev_nm)",
                        lineno + 1
                    )))
                }
            }
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_codata_2018() {
        let c = Constants::default();
        assert_eq!(c.alpha, 7.2973525693e-3);
        assert_eq!(c.electron_rest_energy_ev, 510998.95);
        assert_eq!(c.hc_ev_nm, 1239.841984);
        c.validate().unwrap();
    }

    #[test]
    fn coulomb_coupling_near_known_value() {
        // α ħc = 1.43996 eV nm to the figures usually quoted.
        let k = Constants::default().coulomb_ev_nm();
        assert!((k - 1.4399645474613107).abs() < 1e-12, "k = {k}");
    }

    #[test]
    fn critical_radius_is_classical_electron_scale() {
        let r0 = Constants::default().critical_radius_nm();
        assert!((r0 - 2.8179403254376758e-6).abs() < 1e-18, "r0 = {r0}");
    }

    #[test]
    fn rejects_out_of_range_fields() {
        assert!(Constants::new(-1e-3, 5e5, 1200.0).is_err());
        assert!(Constants::new(1.0, 5e5, 1200.0).is_err());
        assert!(Constants::new(f64::NAN, 5e5, 1200.0).is_err());
        assert!(Constants::new(7e-3, 0.0, 1200.0).is_err());
        assert!(Constants::new(7e-3, -5e5, 1200.0).is_err());
        assert!(Constants::new(7e-3, 5e5, f64::INFINITY).is_err());
        assert!(Constants::new(7e-3, 5e5, 0.0).is_err());
    }

    #[test]
    fn alpha_zero_is_a_valid_override() {
        let c = Constants::new(0.0, 5e5, 1200.0).unwrap();
        assert_eq!(c.coulomb_ev_nm(), 0.0);
    }

    #[test]
    fn json_round_trip_is_bit_identical() {
        let c = Constants::default();
        let text = serde_json::to_string(&c).unwrap();
        let back: Constants = serde_json::from_str(&text).unwrap();
        assert_eq!(c, back);
        // And for an awkward value that needs all 17 digits.
        let odd = Constants::new(0.1 + 0.2 - 0.25, 510998.95000000004, 1239.0).unwrap();
        let back: Constants = serde_json::from_str(&serde_json::to_string(&odd).unwrap()).unwrap();
        assert_eq!(odd, back);
    }

    #[test]
    fn key_value_config_partial_override() {
        let c = Constants::from_config_str("alpha = 7.0e-3\n# comment\nhc_ev_nm = 1200 # inline\n").unwrap();
        assert_eq!(c.alpha, 7.0e-3);
        assert_eq!(c.hc_ev_nm, 1200.0);
        assert_eq!(c.electron_rest_energy_ev, DEFAULT_ELECTRON_REST_ENERGY_EV);
    }

    #[test]
    fn json_config_partial_override() {
        let c = Constants::from_config_str("{\"alpha\": 0.0}").unwrap();
        assert_eq!(c.alpha, 0.0);
        assert_eq!(c.hc_ev_nm, DEFAULT_HC_EV_NM);
    }

    #[test]
    fn config_rejects_unknown_keys_and_garbage() {
        assert!(Constants::from_config_str("planck = 6.6e-34\n").is_err());
        assert!(Constants::from_config_str("{\"planck\": 1.0}").is_err());
        assert!(Constants::from_config_str("alpha climbs\n").is_err());
        assert!(Constants::from_config_str("alpha = pi\n").is_err());
        // Valid syntax, invalid physics: still rejected.
        assert!(Constants::from_config_str("alpha = 2.0\n").is_err());
    }
}
