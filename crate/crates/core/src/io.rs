//! Raw-count ingestion, table reproduction and report serialization.
//!
//! Two CSV schemas are read:
//!
//! * basis counts: `phi_s_deg, n_hh, n_hv, n_vh, n_vv, n_pp, n_pm, n_mp, n_mm`
//! * context counts: `phi_s_deg, n_00, n_01, n_10, n_11, n_0a, n_0b, n_1a, n_1b,
//!   n_a0, n_a1, n_b0, n_b1, n_aa, n_ab, n_ba, n_bb`
//!
//! Reports are written as JSON (`{"meta": .., "rows": [..]}`) or CSV, with
//! floats rounded to six significant digits.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::angle::Angle;
use crate::control::{estimates_from_counts, ProtocolReport};
use crate::error::{Error, Result};
use crate::metrics::{
    contrast_k, error_floor, inequality_margin, BasisCounts, ContextCounts, Estimate,
    ProbabilityEstimate, VisibilityRecord,
};
use crate::optics::Sides;

/// Source characterization counts, 10 s per basis.
pub const FIXTURE_BASIS_COUNTS: &str = include_str!("../fixtures/table_a1.csv");
/// Four-context counts at the balanced rotations, 10 s per context.
pub const FIXTURE_CONTEXT_COUNTS: &str = include_str!("../fixtures/table_a2.csv");

pub const BASIS_COLUMNS: [&str; 9] = [
    "phi_s_deg", "n_hh", "n_hv", "n_vh", "n_vv", "n_pp", "n_pm", "n_mp", "n_mm",
];

pub const CONTEXT_COLUMNS: [&str; 17] = [
    "phi_s_deg", "n_00", "n_01", "n_10", "n_11", "n_0a", "n_0b", "n_1a", "n_1b", "n_a0", "n_a1",
    "n_b0", "n_b1", "n_aa", "n_ab", "n_ba", "n_bb",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Schema {
    /// Eight HV/PM basis counts per setting.
    A1,
    /// Sixteen context counts per setting.
    A2,
}

impl Schema {
    pub fn columns(self) -> &'static [&'static str] {
        match self {
            Schema::A1 => &BASIS_COLUMNS,
            Schema::A2 => &CONTEXT_COLUMNS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BasisRow {
    #[serde(rename = "phi_s_deg")]
    pub phi_s: Angle,
    pub counts: BasisCounts,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContextRow {
    #[serde(rename = "phi_s_deg")]
    pub phi_s: Angle,
    /// `(F,F), (F,W), (W,F), (W,W)`.
    pub contexts: [ContextCounts; 4],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum RawCountsFile {
    Basis(Vec<BasisRow>),
    Context(Vec<ContextRow>),
}

impl RawCountsFile {
    pub fn len(&self) -> usize {
        match self {
            RawCountsFile::Basis(r) => r.len(),
            RawCountsFile::Context(r) => r.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Both tables of one data set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub basis: Vec<BasisRow>,
    pub contexts: Vec<ContextRow>,
}

impl Dataset {
    pub fn fixtures() -> Self {
        Dataset {
            basis: parse_basis_counts(FIXTURE_BASIS_COUNTS).expect("fixture parses"),
            contexts: parse_context_counts(FIXTURE_CONTEXT_COUNTS).expect("fixture parses"),
        }
    }

    /// Context rows from a counted sweep, for the same analysis path as fixtures.
    pub fn contexts_from_protocol(report: &ProtocolReport) -> Vec<ContextRow> {
        report
            .rows
            .iter()
            .filter_map(|r| {
                r.counts.map(|contexts| ContextRow {
                    phi_s: r.phi_s,
                    contexts,
                })
            })
            .collect()
    }
}

fn parse_error(line: u64, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parse either schema into rows of typed integer counts.
pub fn parse_raw_counts(text: &str, schema: Schema) -> Result<RawCountsFile> {
    let expected = schema.columns();
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(true)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| parse_error(1, 1, e.to_string()))?
        .clone();
    if headers.is_empty() || (headers.len() == 1 && headers[0].is_empty()) {
        return Ok(empty_file(schema));
    }
    // column index in the file for each expected column
    let mut index = Vec::with_capacity(expected.len());
    for name in expected {
        match headers.iter().position(|h| h == *name) {
            Some(i) => index.push(i),
            None => return Err(parse_error(1, headers.len() + 1, format!("missing column `{name}`"))),
        }
    }

    let mut seen = HashSet::new();
    let mut rows: Vec<(Angle, Vec<u64>)> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_error(line, 1, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(|c| c.is_empty()) {
            continue;
        }
        let cell = |i: usize| -> Result<&str> {
            record
                .get(i)
                .ok_or_else(|| parse_error(line, i + 1, "missing cell"))
        };
        let phi_text = cell(index[0])?;
        let phi: f64 = phi_text
            .parse()
            .ok()
            .filter(|x: &f64| x.is_finite())
            .ok_or_else(|| parse_error(line, index[0] + 1, format!("invalid angle `{phi_text}`")))?;
        if !seen.insert(phi.to_bits()) {
            return Err(parse_error(line, index[0] + 1, format!("duplicate phi_s_deg {phi}")));
        }
        let mut counts = Vec::with_capacity(expected.len() - 1);
        for &i in &index[1..] {
            let text = cell(i)?;
            let n: u64 = text.parse().map_err(|_| {
                parse_error(line, i + 1, format!("`{text}` is not a non-negative integer"))
            })?;
            counts.push(n);
        }
        rows.push((Angle::from_degrees(phi), counts));
    }

    Ok(match schema {
        Schema::A1 => RawCountsFile::Basis(
            rows.into_iter()
                .map(|(phi_s, n)| BasisRow {
                    phi_s,
                    counts: BasisCounts {
                        hh: n[0],
                        hv: n[1],
                        vh: n[2],
                        vv: n[3],
                        pp: n[4],
                        pm: n[5],
                        mp: n[6],
                        mm: n[7],
                    },
                })
                .collect(),
        ),
        Schema::A2 => RawCountsFile::Context(
            rows.into_iter()
                .map(|(phi_s, n)| {
                    let contexts = std::array::from_fn(|k| {
                        let block = [n[4 * k], n[4 * k + 1], n[4 * k + 2], n[4 * k + 3]];
                        ContextCounts::new(Sides::ALL[k], block)
                    });
                    ContextRow { phi_s, contexts }
                })
                .collect(),
        ),
    })
}

fn empty_file(schema: Schema) -> RawCountsFile {
    match schema {
        Schema::A1 => RawCountsFile::Basis(vec![]),
        Schema::A2 => RawCountsFile::Context(vec![]),
    }
}

pub fn parse_basis_counts(text: &str) -> Result<Vec<BasisRow>> {
    match parse_raw_counts(text, Schema::A1)? {
        RawCountsFile::Basis(rows) => Ok(rows),
        RawCountsFile::Context(_) => unreachable!(),
    }
}

pub fn parse_context_counts(text: &str) -> Result<Vec<ContextRow>> {
    match parse_raw_counts(text, Schema::A2)? {
        RawCountsFile::Context(rows) => Ok(rows),
        RawCountsFile::Basis(_) => unreachable!(),
    }
}

pub fn basis_counts_csv(rows: &[BasisRow]) -> String {
    let mut out = BASIS_COLUMNS.join(",");
    out.push('\n');
    for r in rows {
        let c = &r.counts;
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.phi_s.degrees(),
            c.hh,
            c.hv,
            c.vh,
            c.vv,
            c.pp,
            c.pm,
            c.mp,
            c.mm
        ));
    }
    out
}

pub fn context_counts_csv(rows: &[ContextRow]) -> String {
    let mut out = CONTEXT_COLUMNS.join(",");
    out.push('\n');
    for r in rows {
        let cells: Vec<String> = std::iter::once(r.phi_s.degrees().to_string())
            .chain(r.contexts.iter().flat_map(|c| c.n.map(|x| x.to_string())))
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Source figures of merit at one setting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VisibilityRow {
    #[serde(rename = "phi_s_deg")]
    pub phi_s: Angle,
    #[serde(flatten)]
    pub record: VisibilityRecord,
}

/// Contextuality figures at one setting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContextualityRow {
    #[serde(rename = "phi_s_deg")]
    pub phi_s: Angle,
    pub p_00: ProbabilityEstimate,
    pub p_0a: ProbabilityEstimate,
    pub p_a0: ProbabilityEstimate,
    pub p_11: ProbabilityEstimate,
    pub p_aa: ProbabilityEstimate,
    pub k: Estimate,
    pub margin: Estimate,
    /// `(1 - C_HV)/4` when basis counts exist for this setting.
    pub error_floor: Option<Estimate>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub visibilities: Vec<VisibilityRow>,
    pub contextuality: Vec<ContextualityRow>,
}

/// Reduce raw counts to visibilities, suppressed probabilities and contrasts.
///
/// Probabilities are normalized within their own context.
pub fn analyze(data: &Dataset) -> Result<AnalysisReport> {
    let visibilities = data
        .basis
        .iter()
        .map(|r| {
            Ok(VisibilityRow {
                phi_s: r.phi_s,
                record: VisibilityRecord::from_counts(&r.counts)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let contextuality = data
        .contexts
        .iter()
        .map(|r| {
            let [p_00, p_0a, p_a0, p_11, p_aa] = estimates_from_counts(&r.contexts)?;
            let floor = visibilities
                .iter()
                .find(|v| v.phi_s == r.phi_s)
                .map(|v| Estimate {
                    value: error_floor(v.record.c_hv.value.abs()),
                    stderr: v.record.c_hv.stderr / 4.0,
                });
            Ok(ContextualityRow {
                phi_s: r.phi_s,
                p_00,
                p_0a,
                p_a0,
                p_11,
                p_aa,
                k: contrast_k(p_aa, p_0a, p_a0, p_11)?,
                margin: inequality_margin(p_aa, p_0a, p_a0, p_11),
                error_floor: floor,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AnalysisReport {
        visibilities,
        contextuality,
    })
}

/// Round to six significant digits.
pub fn round_sig6(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.5e}").parse().unwrap_or(x)
}

fn round_json(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n.as_f64().and_then(|x| serde_json::Number::from_f64(round_sig6(x))) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_json),
        Value::Object(map) => map.values_mut().for_each(round_json),
        _ => {}
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Column subsets for CSV output of an [`AnalysisReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnalysisView {
    /// Every field, values and errors.
    Full,
    /// `phi_s_deg, c_hv, c_pm, v_hv, w_e, purity_length`.
    Visibilities,
    /// `phi_s_deg, p_0a, p_a0, error_floor`.
    Suppression,
    /// `phi_s_deg, k, k_err`.
    Contrast,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Report<'a> {
    Analysis(&'a AnalysisReport),
    Protocol(&'a ProtocolReport),
}

/// Provenance block written with every JSON report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMeta {
    pub seed: Option<u64>,
    pub config: Value,
    pub version: String,
}

impl ReportMeta {
    pub fn new(seed: Option<u64>, config: Value) -> Self {
        ReportMeta {
            seed,
            config,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        String::new()
    } else {
        round_sig6(x).to_string()
    }
}

/// A parsed numeric CSV table.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl CsvTable {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.iter().map(|&x| fmt_num(x)).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }
}

/// Read back a report CSV; empty cells become NaN.
pub fn parse_csv_table(text: &str) -> Result<CsvTable> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| parse_error(1, 1, e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            parse_error(e.position().map_or(0, |p| p.line()), 1, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let row = record
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if c.is_empty() {
                    Ok(f64::NAN)
                } else {
                    c.parse()
                        .map_err(|_| parse_error(line, i + 1, format!("`{c}` is not a number")))
                }
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok(CsvTable { header, rows })
}

impl AnalysisReport {
    pub fn table(&self, view: AnalysisView) -> CsvTable {
        let nan = f64::NAN;
        match view {
            AnalysisView::Visibilities => CsvTable {
                header: ["phi_s_deg", "c_hv", "c_pm", "v_hv", "w_e", "purity_length"]
                    .map(String::from)
                    .to_vec(),
                rows: self
                    .visibilities
                    .iter()
                    .map(|v| {
                        let r = &v.record;
                        vec![
                            v.phi_s.degrees(),
                            r.c_hv.value.abs(),
                            r.c_pm.value.abs(),
                            r.v_hv.value,
                            r.w_e.value,
                            r.purity_length.value,
                        ]
                    })
                    .collect(),
            },
            AnalysisView::Suppression => CsvTable {
                header: ["phi_s_deg", "p_0a", "p_a0", "error_floor"].map(String::from).to_vec(),
                rows: self
                    .contextuality
                    .iter()
                    .map(|c| {
                        vec![
                            c.phi_s.degrees(),
                            c.p_0a.value,
                            c.p_a0.value,
                            c.error_floor.map_or(nan, |e| e.value),
                        ]
                    })
                    .collect(),
            },
            AnalysisView::Contrast => CsvTable {
                header: ["phi_s_deg", "k", "k_err"].map(String::from).to_vec(),
                rows: self
                    .contextuality
                    .iter()
                    .map(|c| vec![c.phi_s.degrees(), c.k.value, c.k.stderr])
                    .collect(),
            },
            AnalysisView::Full => {
                let header = [
                    "phi_s_deg", "c_hv", "c_hv_err", "c_pm", "c_pm_err", "v_hv", "v_hv_err", "w_e",
                    "w_e_err", "purity_length", "purity_length_err", "p_00", "p_00_err", "p_0a",
                    "p_0a_err", "p_a0", "p_a0_err", "p_11", "p_11_err", "p_aa", "p_aa_err",
                    "error_floor", "error_floor_err", "margin", "margin_err", "k", "k_err",
                ]
                .map(String::from)
                .to_vec();
                let mut settings: Vec<Angle> = self.visibilities.iter().map(|v| v.phi_s).collect();
                for c in &self.contextuality {
                    if !settings.contains(&c.phi_s) {
                        settings.push(c.phi_s);
                    }
                }
                let rows = settings
                    .iter()
                    .map(|&phi| {
                        let mut row = vec![phi.degrees()];
                        match self.visibilities.iter().find(|v| v.phi_s == phi) {
                            Some(v) => {
                                let r = &v.record;
                                for e in [r.c_hv.abs(), r.c_pm.abs(), r.v_hv, r.w_e, r.purity_length] {
                                    row.extend([e.value, e.stderr]);
                                }
                            }
                            None => row.extend([nan; 10]),
                        }
                        match self.contextuality.iter().find(|c| c.phi_s == phi) {
                            Some(c) => {
                                for p in [c.p_00, c.p_0a, c.p_a0, c.p_11, c.p_aa] {
                                    row.extend([p.value, p.stderr]);
                                }
                                let floor = c.error_floor.unwrap_or(Estimate { value: nan, stderr: nan });
                                for e in [floor, c.margin, c.k] {
                                    row.extend([e.value, e.stderr]);
                                }
                            }
                            None => row.extend([nan; 16]),
                        }
                        row
                    })
                    .collect();
                CsvTable { header, rows }
            }
        }
    }
}

impl ProtocolReport {
    pub fn table(&self) -> CsvTable {
        let header = [
            "phi_s_deg", "phi_m_opt_deg", "p_00", "p_00_err", "p_0a", "p_0a_err", "p_a0",
            "p_a0_err", "p_11", "p_11_err", "p_aa", "p_aa_err", "margin", "margin_err", "k",
            "k_err",
        ]
        .map(String::from)
        .to_vec();
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut row = vec![r.phi_s.degrees(), r.phi_m_opt.degrees()];
                for p in [r.p_00, r.p_0a, r.p_a0, r.p_11, r.p_aa] {
                    row.extend([p.value, p.stderr]);
                }
                row.extend([r.margin.value, r.margin.stderr, r.k.value, r.k.stderr]);
                row
            })
            .collect();
        CsvTable { header, rows }
    }
}

/// Serialize a report; JSON reports carry `meta` and a `rows` array.
pub fn emit_report(report: &Report<'_>, format: Format, meta: &ReportMeta) -> Vec<u8> {
    match format {
        Format::Csv => match report {
            Report::Analysis(a) => a.table(AnalysisView::Full).to_csv().into_bytes(),
            Report::Protocol(p) => p.table().to_csv().into_bytes(),
        },
        Format::Json => {
            let mut doc = serde_json::Map::new();
            doc.insert("meta".into(), serde_json::to_value(meta).expect("meta serializes"));
            match report {
                Report::Analysis(a) => {
                    let rows = analysis_rows(a);
                    doc.insert("rows".into(), Value::Array(rows));
                }
                Report::Protocol(p) => {
                    let v = serde_json::to_value(p).expect("report serializes");
                    if let Value::Object(map) = v {
                        for (k, v) in map {
                            doc.insert(k, v);
                        }
                    }
                }
            }
            let mut value = Value::Object(doc);
            round_json(&mut value);
            let mut bytes = serde_json::to_vec_pretty(&value).expect("json serializes");
            bytes.push(b'\n');
            bytes
        }
    }
}

/// One JSON object per setting, merging both tables.
fn analysis_rows(a: &AnalysisReport) -> Vec<Value> {
    let table = a.table(AnalysisView::Full);
    table
        .rows
        .iter()
        .map(|row| {
            let mut obj = serde_json::Map::new();
            for (name, &x) in table.header.iter().zip(row) {
                let v = serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number);
                obj.insert(name.clone(), v);
            }
            Value::Object(obj)
        })
        .collect()
}

/// Parse a JSON protocol report written by [`emit_report`].
pub fn parse_protocol_json(bytes: &[u8]) -> std::result::Result<(ReportMeta, ProtocolReport), serde_json::Error> {
    #[derive(Deserialize)]
    struct Doc {
        meta: ReportMeta,
        #[serde(flatten)]
        report: ProtocolReport,
    }
    let doc: Doc = serde_json::from_slice(bytes)?;
    Ok((doc.meta, doc.report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fixture_row() {
        let rows = parse_basis_counts(
            "phi_s_deg, n_hh, n_hv, n_vh, n_vv, n_pp, n_pm, n_mp, n_mm\n45, 5902, 109, 81, 5611, 207, 5629, 5795, 175\n",
        )
        .unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].phi_s.degrees(), 45.0);
        assert_eq!(rows[0].counts.hh, 5902);
        assert_eq!(rows[0].counts.mm, 175);
    }

    #[test]
    fn empty_body_is_empty_file() {
        let f = parse_raw_counts(&(BASIS_COLUMNS.join(",") + "\n"), Schema::A1).unwrap();
        assert!(f.is_empty());
        assert!(parse_raw_counts("", Schema::A2).unwrap().is_empty());
    }

    #[test]
    fn fractional_cell_is_reported_with_position() {
        let text = "phi_s_deg,n_hh,n_hv,n_vh,n_vv,n_pp,n_pm,n_mp,n_mm\n0,1,2,3,4,5,6,7,8\n45,5902.5,109,81,5611,207,5629,5795,175\n";
        match parse_raw_counts(text, Schema::A1) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 2)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn negative_and_missing_cells_rejected() {
        let text = "phi_s_deg,n_hh,n_hv,n_vh,n_vv,n_pp,n_pm,n_mp,n_mm\n0,-1,2,3,4,5,6,7,8\n";
        assert!(matches!(parse_raw_counts(text, Schema::A1), Err(Error::Parse { column: 2, .. })));
        let text = "phi_s_deg,n_hh,n_hv,n_vh,n_vv,n_pp,n_pm,n_mp,n_mm\n0,1,2,3\n";
        assert!(matches!(parse_raw_counts(text, Schema::A1), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn missing_column_rejected() {
        let text = "phi_s_deg,n_hh,n_hv,n_vh,n_vv,n_pp,n_pm,n_mp\n0,1,2,3,4,5,6,7\n";
        match parse_raw_counts(text, Schema::A1) {
            Err(Error::Parse { line: 1, message, .. }) => assert!(message.contains("n_mm")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn duplicate_setting_rejected() {
        let text = "phi_s_deg,n_hh,n_hv,n_vh,n_vv,n_pp,n_pm,n_mp,n_mm\n10,1,2,3,4,5,6,7,8\n10,1,2,3,4,5,6,7,8\n";
        assert!(matches!(parse_raw_counts(text, Schema::A1), Err(Error::Parse { line: 3, column: 1, .. })));
    }

    #[test]
    fn column_order_is_by_name() {
        let text = "n_mm,n_mp,n_pm,n_pp,n_vv,n_vh,n_hv,n_hh,phi_s_deg\n8,7,6,5,4,3,2,1,12.5\n";
        let rows = parse_basis_counts(text).unwrap();
        assert_eq!(rows[0].counts.hh, 1);
        assert_eq!(rows[0].counts.mm, 8);
        assert_eq!(rows[0].phi_s.degrees(), 12.5);
    }

    #[test]
    fn context_rows_split_into_contexts() {
        let rows = parse_context_counts(FIXTURE_CONTEXT_COUNTS).unwrap();
        let r = &rows[4];
        assert_eq!(r.phi_s.degrees(), 22.5);
        assert_eq!(r.contexts[1].sides, Sides::FW);
        assert_eq!(r.contexts[1].n, [118, 7240, 2159, 1862]);
        assert_eq!(r.contexts[3].n, [1148, 959, 1098, 8196]);
    }

    #[test]
    fn counts_csv_round_trip() {
        let data = Dataset::fixtures();
        assert_eq!(basis_counts_csv(&data.basis), FIXTURE_BASIS_COUNTS);
        assert_eq!(context_counts_csv(&data.contexts), FIXTURE_CONTEXT_COUNTS);
    }

    #[test]
    fn sig6_rounding() {
        assert_eq!(round_sig6(0.517_584_99), 0.517585);
        assert_eq!(round_sig6(-1234.56789), -1234.57);
        assert_eq!(round_sig6(0.0), 0.0);
        assert_eq!(round_sig6(1.0), 1.0);
    }

    #[test]
    fn empty_report_csv_is_header_only() {
        let empty = AnalysisReport {
            visibilities: vec![],
            contextuality: vec![],
        };
        let meta = ReportMeta::new(None, Value::Null);
        let csv = String::from_utf8(emit_report(&Report::Analysis(&empty), Format::Csv, &meta)).unwrap();
        assert_eq!(csv.lines().count(), 1);
        assert!(csv.starts_with("phi_s_deg,"));
    }
}
