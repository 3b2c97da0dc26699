//! Grid sweeps and deterministic table emission.
//!
//! A sweep walks a (Z, n, j) grid (or the transition pairs inside it) and
//! materializes one row per state or line. Emission is byte-deterministic:
//! rows come out in key order and floats are printed in shortest round-trip
//! decimal, so a table parsed back from its own CSV or JSON is bit-identical
//! to the original. That makes the emitted files usable as golden snapshots.
//!
//! Supercritical charges in the range are skipped, never dropped silently:
//! each skip lands in a notice list that travels next to the rows but is not
//! part of the emitted byte stream.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::constants::Constants;
use crate::error::{Error, Result};
use crate::levels::{level_corrected, QuantumState, HIGH_Z_WARNING_THRESHOLD};
use crate::transitions::transition;

/// What the grid enumerates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    /// One row per bound state.
    Levels,
    /// One row per downward line (j = 1/2 on both ends).
    Transitions,
}

/// Which j values to include at each n in a levels sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JSelection {
    /// j = 1/2 only: one row per (Z, n).
    HalfOnly,
    /// Every valid j: twice_j = 1, 3, ..., 2n - 1.
    All,
}

/// Emission format for [`emit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

/// A validated sweep request.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepSpec {
    pub z_min: u32,
    pub z_max: u32,
    pub n_max: u32,
    pub include_j: JSelection,
    pub mode: SweepMode,
    pub output_format: TableFormat,
}

impl SweepSpec {
    /// Build a spec from raw integers, with every range rule checked here so
    /// the CLI can forward user input unfiltered.
    pub fn new(
        z_min: i64,
        z_max: i64,
        n_max: i64,
        include_j: JSelection,
        mode: SweepMode,
        output_format: TableFormat,
    ) -> Result<Self> {
        let spec = SweepSpec {
            z_min: z_min.clamp(0, u32::MAX as i64) as u32,
            z_max: z_max.clamp(0, u32::MAX as i64) as u32,
            n_max: n_max.clamp(0, u32::MAX as i64) as u32,
            include_j,
            mode,
            output_format,
        };
        // Report range errors against the raw values, not the clamped ones.
        if z_min < 1 {
            return Err(Error::InvalidSweep(format!("z_min must be at least 1 (got {z_min})")));
        }
        if z_max < z_min {
            return Err(Error::InvalidSweep(format!("empty charge range {z_min}..{z_max}")));
        }
        if z_max > 137 {
            return Err(Error::InvalidSweep(format!("z_max must not exceed 137 (got {z_max})")));
        }
        if n_max < 1 {
            return Err(Error::InvalidSweep(format!("n_max must be at least 1 (got {n_max})")));
        }
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.z_min < 1 || self.z_max < self.z_min || self.z_max > 137 {
            return Err(Error::InvalidSweep(format!(
                "charge range must satisfy 1 <= z_min <= z_max <= 137 (got {}..{})",
                self.z_min, self.z_max
            )));
        }
        if self.n_max < 1 {
            return Err(Error::InvalidSweep(format!(
                "n_max must be at least 1 (got {})",
                self.n_max
            )));
        }
        Ok(())
    }
}

/// CSV header of a levels table; also the JSON key set of its rows.
pub const LEVEL_CSV_HEADER: &str =
    "Z,n,twice_j,E_uncorr_eV,E_corr_eV,dE_first_eV,dE_exact_eV,k,m_eff_ratio";

/// CSV header of a transitions table.
pub const TRANSITION_CSV_HEADER: &str = "Z,lower_n,upper_n,twice_j,E_line_uncorr_eV,\
     E_line_corr_eV,shift_level_diff_eV,shift_subst_eV,lambda_uncorr_nm,lambda_corr_nm";

/// One state of a levels sweep. Energies in eV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelRow {
    #[serde(rename = "Z")]
    pub z: u32,
    pub n: u32,
    pub twice_j: u32,
    #[serde(rename = "E_uncorr_eV")]
    pub e_uncorr_ev: f64,
    #[serde(rename = "E_corr_eV")]
    pub e_corr_ev: f64,
    #[serde(rename = "dE_first_eV")]
    pub de_first_ev: f64,
    #[serde(rename = "dE_exact_eV")]
    pub de_exact_ev: f64,
    pub k: f64,
    #[serde(rename = "m_eff_ratio")]
    pub m_eff_ratio: f64,
}

/// One line of a transitions sweep. Wavelengths are `None` when the line
/// energy is zero (α = 0): the CSV cell stays empty, the JSON value is null.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionRow {
    #[serde(rename = "Z")]
    pub z: u32,
    pub lower_n: u32,
    pub upper_n: u32,
    pub twice_j: u32,
    #[serde(rename = "E_line_uncorr_eV")]
    pub e_line_uncorr_ev: f64,
    #[serde(rename = "E_line_corr_eV")]
    pub e_line_corr_ev: f64,
    #[serde(rename = "shift_level_diff_eV")]
    pub shift_level_diff_ev: f64,
    #[serde(rename = "shift_subst_eV")]
    pub shift_subst_ev: f64,
    pub lambda_uncorr_nm: Option<f64>,
    pub lambda_corr_nm: Option<f64>,
}

/// Levels table: rows sorted by (Z, n, twice_j), plus sidecar notices.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ShiftTable {
    pub rows: Vec<LevelRow>,
    /// Skips and warnings collected during the sweep; not emitted with the
    /// table and not reconstructed by parsing.
    pub notices: Vec<String>,
}

/// Transitions table: rows sorted by (Z, lower_n, upper_n).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TransitionTable {
    pub rows: Vec<TransitionRow>,
    pub notices: Vec<String>,
}

/// Output of [`sweep`], one variant per mode.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepTable {
    Levels(ShiftTable),
    Transitions(TransitionTable),
}

impl SweepTable {
    pub fn notices(&self) -> &[String] {
        match self {
            SweepTable::Levels(t) => &t.notices,
            SweepTable::Transitions(t) => &t.notices,
        }
    }

    pub fn row_count(&self) -> usize {
        match self {
            SweepTable::Levels(t) => t.rows.len(),
            SweepTable::Transitions(t) => t.rows.len(),
        }
    }
}

fn level_row(state: &QuantumState, constants: &Constants) -> LevelRow {
    let r = level_corrected(state, constants);
    LevelRow {
        z: state.z(),
        n: state.n(),
        twice_j: state.twice_j(),
        e_uncorr_ev: r.e_uncorrected_ev,
        e_corr_ev: r.e_corrected_ev,
        de_first_ev: r.delta_first_order_ev,
        de_exact_ev: r.delta_exact_ev,
        k: r.k,
        m_eff_ratio: r.m_eff_over_m,
    }
}

/// Charges in the range with αZ >= 1 are skipped into the notice list;
/// charges above the tabulated range get a warning notice but still compute.
fn charge_notices(z: u32, constants: &Constants, notices: &mut Vec<String>) -> bool {
    if constants.alpha * z as f64 >= 1.0 {
        notices.push(format!("skipped Z={z}: supercritical charge (alpha*Z >= 1)"));
        return false;
    }
    if z > HIGH_Z_WARNING_THRESHOLD {
        notices.push(format!(
            "Z={z} is beyond the tabulated range (Z <= {HIGH_Z_WARNING_THRESHOLD}); \
             fine-structure bracket extrapolated"
        ));
    }
    true
}

/// Walk the grid and build the table. Row order is the iteration order:
/// (Z, n, twice_j) ascending for levels, (Z, lower_n, upper_n) ascending for
/// transitions.
pub fn sweep(spec: &SweepSpec, constants: &Constants) -> Result<SweepTable> {
    spec.validate()?;
    constants.validate()?;
    match spec.mode {
        SweepMode::Levels => {
            let mut table = ShiftTable::default();
            for z in spec.z_min..=spec.z_max {
                if !charge_notices(z, constants, &mut table.notices) {
                    continue;
                }
                for n in 1..=spec.n_max {
                    let j_values: Vec<u32> = match spec.include_j {
                        JSelection::HalfOnly => vec![1],
                        JSelection::All => (0..n).map(|i| 2 * i + 1).collect(),
                    };
                    for twice_j in j_values {
                        let n_radial = n - (twice_j + 1) / 2;
                        let state = QuantumState::new(
                            z as i64,
                            n_radial as i64,
                            twice_j as i64,
                            constants,
                        )
                        .expect("grid states are structurally valid");
                        table.rows.push(level_row(&state, constants));
                    }
                }
            }
            Ok(SweepTable::Levels(table))
        }
        SweepMode::Transitions => {
            let mut table = TransitionTable::default();
            for z in spec.z_min..=spec.z_max {
                if !charge_notices(z, constants, &mut table.notices) {
                    continue;
                }
                for lower_n in 1..spec.n_max {
                    let lower =
                        QuantumState::new(z as i64, lower_n as i64 - 1, 1, constants)
                            .expect("grid states are structurally valid");
                    for upper_n in (lower_n + 1)..=spec.n_max {
                        let upper =
                            QuantumState::new(z as i64, upper_n as i64 - 1, 1, constants)
                                .expect("grid states are structurally valid");
                        let t = transition(&upper, &lower, constants)
                            .expect("grid pairs are ordered and share Z");
                        let wavelength = |lambda: f64| lambda.is_finite().then_some(lambda);
                        table.rows.push(TransitionRow {
                            z,
                            lower_n,
                            upper_n,
                            twice_j: 1,
                            e_line_uncorr_ev: t.e_line_uncorrected_ev,
                            e_line_corr_ev: t.e_line_corrected_ev,
                            shift_level_diff_ev: t.shift_level_difference_ev,
                            shift_subst_ev: t.shift_substitution_ev,
                            lambda_uncorr_nm: wavelength(t.lambda_uncorrected_nm),
                            lambda_corr_nm: wavelength(t.lambda_corrected_nm),
                        });
                    }
                }
            }
            Ok(SweepTable::Transitions(table))
        }
    }
}

fn opt_cell(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Render the table body. Floats use shortest round-trip decimal (`{}`), so
/// the text is platform-stable and parses back to identical bits.
pub fn emit_string(table: &SweepTable, format: TableFormat) -> String {
    match (table, format) {
        (SweepTable::Levels(t), TableFormat::Csv) => {
            let mut out = String::from(LEVEL_CSV_HEADER);
            out.push('\n');
            for r in &t.rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    r.z,
                    r.n,
                    r.twice_j,
                    r.e_uncorr_ev,
                    r.e_corr_ev,
                    r.de_first_ev,
                    r.de_exact_ev,
                    r.k,
                    r.m_eff_ratio
                ));
            }
            out
        }
        (SweepTable::Transitions(t), TableFormat::Csv) => {
            let mut out = String::from(TRANSITION_CSV_HEADER);
            out.push('\n');
            for r in &t.rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{}\n",
                    r.z,
                    r.lower_n,
                    r.upper_n,
                    r.twice_j,
                    r.e_line_uncorr_ev,
                    r.e_line_corr_ev,
                    r.shift_level_diff_ev,
                    r.shift_subst_ev,
                    opt_cell(r.lambda_uncorr_nm),
                    opt_cell(r.lambda_corr_nm)
                ));
            }
            out
        }
        (SweepTable::Levels(t), TableFormat::Json) => {
            let mut out = serde_json::to_string_pretty(&t.rows)
                .expect("plain rows always serialize");
            out.push('\n');
            out
        }
        (SweepTable::Transitions(t), TableFormat::Json) => {
            let mut out = serde_json::to_string_pretty(&t.rows)
                .expect("plain rows always serialize");
            out.push('\n');
            out
        }
    }
}

/// Write the rendered table to `destination`.
pub fn emit<W: Write>(table: &SweepTable, format: TableFormat, destination: &mut W) -> Result<()> {
    destination.write_all(emit_string(table, format).as_bytes())?;
    Ok(())
}

fn parse_field<T: std::str::FromStr>(cell: &str, line: usize, column: &str) -> Result<T> {
    cell.trim().parse().map_err(|_| {
        Error::Parse(format!("line {line}: cannot parse {column} from {cell:?}"))
    })
}

fn parse_opt_field(cell: &str, line: usize, column: &str) -> Result<Option<f64>> {
    if cell.trim().is_empty() {
        return Ok(None);
    }
    parse_field(cell, line, column).map(Some)
}

fn split_row<'a>(line: &'a str, lineno: usize, want: usize) -> Result<Vec<&'a str>> {
    let cells: Vec<&str> = line.split(',').collect();
    if cells.len() != want {
        return Err(Error::Parse(format!(
            "line {lineno}: expected {want} columns, found {}",
            cells.len()
        )));
    }
    Ok(cells)
}

impl ShiftTable {
    /// Parse a CSV body produced by [`emit`]. Strict: the header must match
    /// [`LEVEL_CSV_HEADER`] exactly. Notices are not part of the stream, so
    /// the parsed table carries an empty notice list.
    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
        if header != LEVEL_CSV_HEADER {
            return Err(Error::Parse(format!("unexpected header {header:?}")));
        }
        let mut rows = Vec::new();
        for (i, line) in lines.enumerate() {
            if line.is_empty() {
                continue;
            }
            let lineno = i + 2;
            let c = split_row(line, lineno, 9)?;
            rows.push(LevelRow {
                z: parse_field(c[0], lineno, "Z")?,
                n: parse_field(c[1], lineno, "n")?,
                twice_j: parse_field(c[2], lineno, "twice_j")?,
                e_uncorr_ev: parse_field(c[3], lineno, "E_uncorr_eV")?,
                e_corr_ev: parse_field(c[4], lineno, "E_corr_eV")?,
                de_first_ev: parse_field(c[5], lineno, "dE_first_eV")?,
                de_exact_ev: parse_field(c[6], lineno, "dE_exact_eV")?,
                k: parse_field(c[7], lineno, "k")?,
                m_eff_ratio: parse_field(c[8], lineno, "m_eff_ratio")?,
            });
        }
        Ok(ShiftTable { rows, notices: Vec::new() })
    }

    /// Parse a JSON array of row objects, strict about keys.
    pub fn parse_json(text: &str) -> Result<Self> {
        let rows: Vec<LevelRow> = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("bad JSON table: {e}")))?;
        Ok(ShiftTable { rows, notices: Vec::new() })
    }
}

impl TransitionTable {
    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
        if header != TRANSITION_CSV_HEADER {
            return Err(Error::Parse(format!("unexpected header {header:?}")));
        }
        let mut rows = Vec::new();
        for (i, line) in lines.enumerate() {
            if line.is_empty() {
                continue;
            }
            let lineno = i + 2;
            let c = split_row(line, lineno, 10)?;
            rows.push(TransitionRow {
                z: parse_field(c[0], lineno, "Z")?,
                lower_n: parse_field(c[1], lineno, "lower_n")?,
                upper_n: parse_field(c[2], lineno, "upper_n")?,
                twice_j: parse_field(c[3], lineno, "twice_j")?,
                e_line_uncorr_ev: parse_field(c[4], lineno, "E_line_uncorr_eV")?,
                e_line_corr_ev: parse_field(c[5], lineno, "E_line_corr_eV")?,
                shift_level_diff_ev: parse_field(c[6], lineno, "shift_level_diff_eV")?,
                shift_subst_ev: parse_field(c[7], lineno, "shift_subst_eV")?,
                lambda_uncorr_nm: parse_opt_field(c[8], lineno, "lambda_uncorr_nm")?,
                lambda_corr_nm: parse_opt_field(c[9], lineno, "lambda_corr_nm")?,
            });
        }
        Ok(TransitionTable { rows, notices: Vec::new() })
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let rows: Vec<TransitionRow> = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("bad JSON table: {e}")))?;
        Ok(TransitionTable { rows, notices: Vec::new() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levels::sommerfeld_bracket;
    use approx::assert_relative_eq;

    fn c() -> Constants {
        Constants::default()
    }

    fn spec(z_min: i64, z_max: i64, n_max: i64, j: JSelection, mode: SweepMode) -> SweepSpec {
        SweepSpec::new(z_min, z_max, n_max, j, mode, TableFormat::Csv).unwrap()
    }

    fn levels_table(s: &SweepSpec) -> ShiftTable {
        match sweep(s, &c()).unwrap() {
            SweepTable::Levels(t) => t,
            other => panic!("expected levels table, got {other:?}"),
        }
    }

    #[test]
    fn single_cell_grid() {
        let t = levels_table(&spec(1, 1, 1, JSelection::HalfOnly, SweepMode::Levels));
        assert_eq!(t.rows.len(), 1);
        assert!(t.notices.is_empty());
        let row = t.rows[0];
        assert_eq!((row.z, row.n, row.twice_j), (1, 1, 1));
        let direct = level_corrected(&QuantumState::new(1, 0, 1, &c()).unwrap(), &c());
        assert_eq!(row.e_corr_ev, direct.e_corrected_ev);
        assert_eq!(row.de_first_ev, direct.delta_first_order_ev);
        assert_eq!(row.k, direct.k);
    }

    #[test]
    fn two_by_two_grid_sorted() {
        let t = levels_table(&spec(1, 2, 2, JSelection::HalfOnly, SweepMode::Levels));
        let keys: Vec<(u32, u32, u32)> =
            t.rows.iter().map(|r| (r.z, r.n, r.twice_j)).collect();
        assert_eq!(keys, vec![(1, 1, 1), (1, 2, 1), (2, 1, 1), (2, 2, 1)]);
    }

    #[test]
    fn all_j_enumerates_odd_twice_j_up_to_2n_minus_1() {
        let t = levels_table(&spec(1, 1, 3, JSelection::All, SweepMode::Levels));
        let keys: Vec<(u32, u32)> = t.rows.iter().map(|r| (r.n, r.twice_j)).collect();
        assert_eq!(keys, vec![(1, 1), (2, 1), (2, 3), (3, 1), (3, 3), (3, 5)]);
    }

    #[test]
    fn transitions_grid_enumerates_ordered_pairs() {
        let s = spec(1, 1, 3, JSelection::HalfOnly, SweepMode::Transitions);
        let t = match sweep(&s, &c()).unwrap() {
            SweepTable::Transitions(t) => t,
            other => panic!("expected transitions table, got {other:?}"),
        };
        let keys: Vec<(u32, u32)> = t.rows.iter().map(|r| (r.lower_n, r.upper_n)).collect();
        assert_eq!(keys, vec![(1, 2), (1, 3), (2, 3)]);
        for r in &t.rows {
            assert!(r.e_line_uncorr_ev > 0.0);
            assert!(r.lambda_uncorr_nm.unwrap() > 0.0);
        }
    }

    #[test]
    fn empty_transition_grid_is_header_only() {
        let s = spec(1, 1, 1, JSelection::HalfOnly, SweepMode::Transitions);
        let table = sweep(&s, &c()).unwrap();
        assert_eq!(table.row_count(), 0);
        let csv = emit_string(&table, TableFormat::Csv);
        assert_eq!(csv, format!("{TRANSITION_CSV_HEADER}\n"));
        let parsed = TransitionTable::parse_csv(&csv).unwrap();
        assert!(parsed.rows.is_empty());
        let json = emit_string(&table, TableFormat::Json);
        assert_eq!(json, "[]\n");
    }

    #[test]
    fn spec_validation_rejects_bad_ranges() {
        let bad = [
            SweepSpec::new(0, 5, 3, JSelection::HalfOnly, SweepMode::Levels, TableFormat::Csv),
            SweepSpec::new(5, 4, 3, JSelection::HalfOnly, SweepMode::Levels, TableFormat::Csv),
            SweepSpec::new(1, 138, 3, JSelection::HalfOnly, SweepMode::Levels, TableFormat::Csv),
            SweepSpec::new(1, 5, 0, JSelection::HalfOnly, SweepMode::Levels, TableFormat::Csv),
            SweepSpec::new(1, 5, -2, JSelection::HalfOnly, SweepMode::Levels, TableFormat::Csv),
        ];
        for result in bad {
            match result {
                Err(e @ Error::InvalidSweep(_)) => assert_eq!(e.exit_code(), 2),
                other => panic!("expected InvalidSweep, got {other:?}"),
            }
        }
    }

    #[test]
    fn supercritical_charges_are_skipped_with_notice() {
        // With α = 0.02 the wall sits at Z = 50.
        let constants = Constants::new(0.02, 510998.95, 1239.841984).unwrap();
        let s = spec(49, 51, 1, JSelection::HalfOnly, SweepMode::Levels);
        let table = match sweep(&s, &constants).unwrap() {
            SweepTable::Levels(t) => t,
            other => panic!("{other:?}"),
        };
        assert_eq!(table.rows.len(), 1);
        assert_eq!(table.rows[0].z, 49);
        assert_eq!(table.notices.len(), 2);
        assert!(table.notices[0].contains("skipped Z=50"));
        assert!(table.notices[1].contains("skipped Z=51"));
        // Notices never leak into the byte stream.
        let csv = emit_string(&SweepTable::Levels(table), TableFormat::Csv);
        assert!(!csv.contains("skipped"));
    }

    #[test]
    fn high_z_rows_are_computed_but_flagged() {
        let t = levels_table(&spec(93, 93, 1, JSelection::HalfOnly, SweepMode::Levels));
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.notices.len(), 1);
        assert!(t.notices[0].contains("Z=93"));
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let s = spec(1, 10, 3, JSelection::HalfOnly, SweepMode::Levels);
        let table = sweep(&s, &c()).unwrap();
        let csv = emit_string(&table, TableFormat::Csv);
        let parsed = ShiftTable::parse_csv(&csv).unwrap();
        match table {
            SweepTable::Levels(t) => assert_eq!(t.rows, parsed.rows),
            _ => unreachable!(),
        }
    }

    #[test]
    fn json_round_trip_is_exact() {
        let s = spec(1, 4, 2, JSelection::All, SweepMode::Levels);
        let table = sweep(&s, &c()).unwrap();
        let json = emit_string(&table, TableFormat::Json);
        let parsed = ShiftTable::parse_json(&json).unwrap();
        match table {
            SweepTable::Levels(t) => assert_eq!(t.rows, parsed.rows),
            _ => unreachable!(),
        }
    }

    #[test]
    fn transition_round_trips_including_empty_wavelengths() {
        let s = SweepSpec::new(1, 3, 3, JSelection::HalfOnly, SweepMode::Transitions, TableFormat::Csv)
            .unwrap();
        // α = 0 gives zero line energies and therefore empty wavelength cells.
        let alpha_off = Constants::new(0.0, 510998.95, 1239.841984).unwrap();
        for constants in [c(), alpha_off] {
            let table = sweep(&s, &constants).unwrap();
            let csv = emit_string(&table, TableFormat::Csv);
            let json = emit_string(&table, TableFormat::Json);
            let from_csv = TransitionTable::parse_csv(&csv).unwrap();
            let from_json = TransitionTable::parse_json(&json).unwrap();
            match table {
                SweepTable::Transitions(t) => {
                    assert_eq!(t.rows, from_csv.rows);
                    assert_eq!(t.rows, from_json.rows);
                    if constants.alpha == 0.0 {
                        assert!(t.rows.iter().all(|r| r.lambda_corr_nm.is_none()));
                    }
                }
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn emission_is_deterministic() {
        let s = spec(1, 10, 3, JSelection::HalfOnly, SweepMode::Levels);
        let a = emit_string(&sweep(&s, &c()).unwrap(), TableFormat::Csv);
        let b = emit_string(&sweep(&s, &c()).unwrap(), TableFormat::Csv);
        assert_eq!(a, b);
        assert!(a.starts_with(LEVEL_CSV_HEADER));
        assert!(a.ends_with('\n'));
    }

    #[test]
    fn parse_rejects_malformed_tables() {
        assert!(matches!(ShiftTable::parse_csv(""), Err(Error::Parse(_))));
        assert!(matches!(ShiftTable::parse_csv("a,b,c\n"), Err(Error::Parse(_))));
        let short = format!("{LEVEL_CSV_HEADER}\n1,1,1\n");
        assert!(matches!(ShiftTable::parse_csv(&short), Err(Error::Parse(_))));
        let garbled = format!("{LEVEL_CSV_HEADER}\n1,1,1,x,2,3,4,5,6\n");
        assert!(matches!(ShiftTable::parse_csv(&garbled), Err(Error::Parse(_))));
        assert!(matches!(
            ShiftTable::parse_json("[{\"Z\": 1, \"unknown\": 2}]"),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn first_order_displacement_tracks_z4_times_bracket_ratio() {
        let t = levels_table(&spec(1, 92, 1, JSelection::HalfOnly, SweepMode::Levels));
        assert_eq!(t.rows.len(), 92);
        let base = t.rows[0];
        let br1 = sommerfeld_bracket(&QuantumState::new(1, 0, 1, &c()).unwrap(), &c());
        for row in &t.rows[1..] {
            let z = row.z as f64;
            let brz = sommerfeld_bracket(
                &QuantumState::new(row.z as i64, 0, 1, &c()).unwrap(),
                &c(),
            );
            let predicted = (z * z * z * z) * (brz / br1) * (brz / br1);
            assert_relative_eq!(
                row.de_first_ev / base.de_first_ev,
                predicted,
                max_relative = 1e-12
            );
        }
    }
}
