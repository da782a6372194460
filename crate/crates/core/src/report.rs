//! Census reports, the m-symmetric table and b-file sequences.
//!
//! JSON reports follow this schema (optional members are omitted when absent):
//!
//! ```text
//! {
//!   "n": 8, "m": 4,
//!   "formula":   { "equivalence": "332", "similarity": "202", "m_symmetric": 1 },
//!   "oracle":    { "labelled_cycles": 2520, "equivalence": 332, "similarity": 202,
//!                  "m_symmetric": 1, "alternating_representatives": true,
//!                  "family_keys_match": true },
//!   "histogram": { "equivalent": { "0": 260, … }, "similar": { "0": 130, … } },
//!   "checks":    [ { "name": "equivalence classes", "status": "pass", "detail": "…" } ]
//! }
//! ```
//!
//! Big integers are decimal strings. b-files hold one `index value` pair per line.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::census::{count_equivalence_classes, count_similarity_classes, BigCount};
use crate::error::{Error, Result};
use crate::families::count_m_symmetric;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaCounts {
    pub equivalence: BigCount,
    pub similarity: BigCount,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_symmetric: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCounts {
    pub labelled_cycles: u64,
    pub equivalence: u64,
    pub similarity: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_symmetric: Option<u64>,
    /// Every class with exactly `n/2` axes has an alternating representative.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alternating_representatives: Option<bool>,
    /// The `n/2`-axis classes are exactly the classes of the generated family.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family_keys_match: Option<bool>,
}

/// Axis count → number of classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Histograms {
    pub equivalent: BTreeMap<u32, u64>,
    pub similar: BTreeMap<u32, u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Warn,
    Fail,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Warn => "WARN",
            CheckStatus::Fail => "FAIL",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl Check {
    fn new(name: &str, status: CheckStatus, detail: String) -> Self {
        Check {
            name: name.to_owned(),
            status,
            detail,
        }
    }

    fn compare<T: PartialEq + fmt::Display>(name: &str, formula: T, oracle: T) -> Self {
        let status = if formula == oracle { CheckStatus::Pass } else { CheckStatus::Fail };
        Check::new(name, status, format!("formula {formula}, oracle {oracle}"))
    }

    fn flag(name: &str, ok: bool, detail: &str) -> Self {
        let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };
        Check::new(name, status, detail.to_owned())
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", self.status, self.name, self.detail)
    }
}

/// Per-`n` record of formula counts, optional oracle counts and the checks
/// derived from them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    pub formula: FormulaCounts,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCounts>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub histogram: Option<Histograms>,
    pub checks: Vec<Check>,
}

impl CensusReport {
    /// Formula counts only.
    pub fn from_formulas(n: u32) -> Result<Self> {
        let even = n % 2 == 0 && n >= 4;
        let formula = FormulaCounts {
            equivalence: count_equivalence_classes(n)?,
            similarity: count_similarity_classes(n)?,
            m_symmetric: if even { Some(count_m_symmetric(n)?) } else { None },
        };
        let mut report = CensusReport {
            n,
            m: even.then_some(n / 2),
            formula,
            oracle: None,
            histogram: None,
            checks: Vec::new(),
        };
        report.checks = report.derive_checks();
        Ok(report)
    }

    pub fn with_oracle(mut self, oracle: OracleCounts, histogram: Option<Histograms>) -> Self {
        self.oracle = Some(oracle);
        self.histogram = histogram;
        self.checks = self.derive_checks();
        self
    }

    /// Recomputes the check list from the counts alone.
    pub fn derive_checks(&self) -> Vec<Check> {
        let Some(oracle) = &self.oracle else {
            return Vec::new();
        };
        let mut checks = vec![
            Check::compare("equivalence classes", self.formula.equivalence.clone(), BigCount::from(oracle.equivalence)),
            Check::compare("similarity classes", self.formula.similarity.clone(), BigCount::from(oracle.similarity)),
        ];
        if let (Some(formula), Some(counted)) = (self.formula.m_symmetric, oracle.m_symmetric) {
            let mut check = Check::compare("m-symmetric classes", formula, counted);
            if check.status == CheckStatus::Fail && is_known_anomaly(self.n, formula, counted) {
                check.status = CheckStatus::Warn;
                check.detail.push_str(
                    " (known: the crossed square (1 2 3 2) has 2 axes but is not alternating)",
                );
            }
            checks.push(check);
        }
        if let Some(ok) = oracle.alternating_representatives {
            checks.push(Check::flag(
                "alternating representatives",
                ok,
                "every class with n/2 axes contains an alternating word",
            ));
        }
        if let Some(ok) = oracle.family_keys_match {
            checks.push(Check::flag(
                "family keys",
                ok,
                "n/2-axis classes coincide with the generated family",
            ));
        }
        if let Some(h) = &self.histogram {
            let e: u64 = h.equivalent.values().sum();
            let s: u64 = h.similar.values().sum();
            checks.push(Check::flag(
                "histogram totals",
                e == oracle.equivalence && s == oracle.similarity,
                &format!("equivalent {e}, similar {s}"),
            ));
        }
        checks
    }

    pub fn worst_status(&self) -> CheckStatus {
        self.checks.iter().map(|c| c.status).max().unwrap_or(CheckStatus::Pass)
    }

    /// Value for the m-symmetric table: the oracle's count where one was run,
    /// the formula otherwise.
    pub fn table_value(&self) -> Option<u64> {
        self.oracle
            .as_ref()
            .and_then(|o| o.m_symmetric)
            .or(self.formula.m_symmetric)
    }
}

/// The formula gives 0 for `n = 4` while the crossed square forms one 2-axis class.
pub fn is_known_anomaly(n: u32, formula: u64, oracle: u64) -> bool {
    n == 4 && formula == 0 && oracle == 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            _ => Err(Error::UnknownFormat(s.to_owned())),
        }
    }
}

/// Renders reports ordered by `n`. CSV carries only the m-symmetric table
/// (`n,m,P_m_n`, even `n`); JSON carries every field.
pub fn emit_table(reports: &[CensusReport], format: TableFormat) -> Result<String> {
    if reports.is_empty() {
        return Err(Error::Empty("report table"));
    }
    let mut sorted: Vec<&CensusReport> = reports.iter().collect();
    sorted.sort_by_key(|r| r.n);
    match format {
        TableFormat::Csv => {
            let mut out = String::from("n,m,P_m_n\n");
            for r in sorted {
                if let (Some(m), Some(v)) = (r.m, r.table_value()) {
                    out.push_str(&format!("{},{},{}\n", r.n, m, v));
                }
            }
            Ok(out)
        }
        TableFormat::Json => {
            let mut out = serde_json::to_string_pretty(&sorted)?;
            out.push('\n');
            Ok(out)
        }
    }
}

/// A sequence in b-file form: consecutive indices starting at `offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceFile {
    pub offset: i64,
    pub values: Vec<BigUint>,
}

impl SequenceFile {
    pub fn new(offset: i64, values: impl IntoIterator<Item = impl Into<BigUint>>) -> Self {
        SequenceFile {
            offset,
            values: values.into_iter().map(Into::into).collect(),
        }
    }

    pub fn indices(&self) -> std::ops::Range<i64> {
        self.offset..self.offset + self.values.len() as i64
    }

    pub fn get(&self, index: i64) -> Option<&BigUint> {
        usize::try_from(index - self.offset).ok().and_then(|i| self.values.get(i))
    }

    pub fn to_bfile(&self) -> Result<String> {
        emit_bfile(&self.values, self.offset)
    }

    /// Parses `index value` lines. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut offset = None;
        let mut values = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::BFile { line: lineno + 1, msg };
            let mut parts = line.split_whitespace();
            let (Some(index), Some(value), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(err(format!("expected `index value`, got `{line}`")));
            };
            let index: i64 = index.parse().map_err(|_| err(format!("bad index `{index}`")))?;
            let value: BigUint = value.parse().map_err(|_| err(format!("bad value `{value}`")))?;
            let expected = *offset.get_or_insert(index) + values.len() as i64;
            if index != expected {
                return Err(err(format!("index {index} breaks the run (expected {expected})")));
            }
            values.push(value);
        }
        match offset {
            Some(offset) => Ok(SequenceFile { offset, values }),
            None => Err(Error::Empty("b-file")),
        }
    }

    pub fn read(path: &Path) -> io::Result<Self> {
        let text = fs::read_to_string(path)?;
        SequenceFile::parse(&text).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))
    }
}

pub fn emit_bfile(values: &[BigUint], offset: i64) -> Result<String> {
    if values.is_empty() {
        return Err(Error::Empty("b-file"));
    }
    Ok(values
        .iter()
        .enumerate()
        .map(|(i, v)| format!("{} {}\n", offset + i as i64, v))
        .collect())
}

/// `<dir>/<name>.bfile`
pub fn fixture_path(dir: &Path, name: &str) -> PathBuf {
    dir.join(format!("{name}.bfile"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub index: i64,
    pub computed: BigUint,
    pub reference: BigUint,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "index {}: computed {}, reference {}", self.index, self.computed, self.reference)
    }
}

/// Mismatches over the overlapping index range; empty means agreement.
pub fn compare_sequence(computed: &SequenceFile, reference: &SequenceFile) -> Result<Vec<Mismatch>> {
    let start = computed.offset.max(reference.offset);
    let end = computed.indices().end.min(reference.indices().end);
    if start >= end {
        return Err(Error::EmptyOverlap);
    }
    Ok((start..end)
        .filter_map(|index| {
            let (c, r) = (computed.get(index)?, reference.get(index)?);
            (c != r).then(|| Mismatch {
                index,
                computed: c.clone(),
                reference: r.clone(),
            })
        })
        .collect())
}

/// b-file index of `n` in the m-symmetric sequence (`n = 4` is index 1).
pub fn m_symmetric_index(n: u32) -> i64 {
    i64::from(n / 2) - 1
}

/// Formula values of the m-symmetric sequence for even `n` in `[from, to]`.
pub fn m_symmetric_sequence(from: u32, to: u32) -> Result<SequenceFile> {
    let first = from.max(4) + from.max(4) % 2;
    let values = (first..=to)
        .step_by(2)
        .map(|n| count_m_symmetric(n).map(BigUint::from))
        .collect::<Result<Vec<_>>>()?;
    if values.is_empty() {
        return Err(Error::Empty("sequence"));
    }
    Ok(SequenceFile {
        offset: m_symmetric_index(first),
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixtures() -> PathBuf {
        Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
    }

    #[test]
    fn csv_table() {
        let reports: Vec<_> = (4..=10).map(|n| CensusReport::from_formulas(n).unwrap()).collect();
        let csv = emit_table(&reports, TableFormat::Csv).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "n,m,P_m_n");
        // formula only, so n = 4 shows the formula value 0
        assert_eq!(&lines[1..], ["4,2,0", "6,3,1", "8,4,1", "10,5,4"]);
        let row = emit_table(&[CensusReport::from_formulas(30).unwrap()], TableFormat::Csv).unwrap();
        assert_eq!(row.lines().nth(1), Some("30,15,28"));
    }

    #[test]
    fn oracle_value_overrides_formula_in_table() {
        let report = CensusReport::from_formulas(4).unwrap().with_oracle(
            OracleCounts {
                labelled_cycles: 3,
                equivalence: 2,
                similarity: 2,
                m_symmetric: Some(1),
                alternating_representatives: None,
                family_keys_match: None,
            },
            None,
        );
        assert_eq!(report.table_value(), Some(1));
        assert_eq!(report.worst_status(), CheckStatus::Warn);
        let csv = emit_table(&[report], TableFormat::Csv).unwrap();
        assert_eq!(csv, "n,m,P_m_n\n4,2,1\n");
    }

    #[test]
    fn json_omits_absent_fields() {
        let report = CensusReport::from_formulas(7).unwrap();
        let json = emit_table(std::slice::from_ref(&report), TableFormat::Json).unwrap();
        assert!(!json.contains("oracle"));
        assert!(!json.contains("histogram"));
        assert!(!json.contains("m_symmetric"));
        assert!(!json.contains("\"m\""));
        assert!(json.contains("\"equivalence\": \"54\""));
        let back: Vec<CensusReport> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, vec![report]);
    }

    #[test]
    fn unknown_format() {
        assert!(matches!("xml".parse::<TableFormat>(), Err(Error::UnknownFormat(_))));
        assert_eq!("CSV".parse::<TableFormat>().unwrap(), TableFormat::Csv);
    }

    #[test]
    fn bfile_emit_and_parse() {
        let text = emit_bfile(&[BigUint::from(1u32), BigUint::from(2u32)], 3).unwrap();
        assert_eq!(text, "3 1\n4 2\n");
        let seq = SequenceFile::parse(&text).unwrap();
        assert_eq!(seq, SequenceFile::new(3, [1u32, 2]));
        assert!(emit_bfile(&[], 0).is_err());
    }

    #[test]
    fn bfile_parse_errors() {
        assert!(matches!(SequenceFile::parse("1 1\n3 2\n"), Err(Error::BFile { line: 2, .. })));
        assert!(matches!(SequenceFile::parse("1 x\n"), Err(Error::BFile { line: 1, .. })));
        assert!(matches!(SequenceFile::parse("1 2 3\n"), Err(Error::BFile { .. })));
        assert!(matches!(SequenceFile::parse("# only a comment\n"), Err(Error::Empty(_))));
        let seq = SequenceFile::parse("# header\n\n0 5\n1 6\n").unwrap();
        assert_eq!(seq.offset, 0);
    }

    #[test]
    fn m_symmetric_sequence_prefix() {
        let seq = m_symmetric_sequence(4, 10).unwrap();
        assert_eq!(seq.to_bfile().unwrap(), "1 0\n2 1\n3 1\n4 4\n");
        assert_eq!(m_symmetric_sequence(5, 10).unwrap().offset, 2);
        assert_eq!(m_symmetric_sequence(3, 10).unwrap().offset, 1);
    }

    #[test]
    fn compare_against_fixture() {
        let reference = SequenceFile::read(&fixture_path(&fixtures(), "table1_m_symmetric")).unwrap();
        assert_eq!(reference.values.len(), 44);
        // n = 4 is the one documented disagreement
        let computed = m_symmetric_sequence(6, 90).unwrap();
        assert!(compare_sequence(&computed, &reference).unwrap().is_empty());
        assert!(compare_sequence(&reference, &reference).unwrap().is_empty());

        let mut altered = reference.clone();
        altered.values[13] += 1u32;
        let diff = compare_sequence(&altered, &reference).unwrap();
        assert_eq!(diff.len(), 1);
        assert_eq!(diff[0].index, 14);

        let far = SequenceFile::new(500, [1u32]);
        assert!(matches!(compare_sequence(&far, &reference), Err(Error::EmptyOverlap)));
    }
}
