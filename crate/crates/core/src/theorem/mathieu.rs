use serde::{Deserialize, Serialize};

use super::corollary_excluded;
use crate::error::{Error, Result};
use crate::perm::Permutation;

const BUILTIN: &str = include_str!("../../data/mathieu.tsv");

/// One fixture row: generators with the trace and exclusion columns as printed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MathieuRow {
    pub name: String,
    pub degree: usize,
    pub printed_traces: Vec<usize>,
    pub printed_excluded: Vec<usize>,
    pub generators: Vec<Permutation>,
}

/// Parses the tab-separated fixture format; `#` starts a comment line.
pub fn load_mathieu_fixtures(text: &str) -> Result<Vec<MathieuRow>> {
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fail = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let fields: Vec<&str> = line.split('\t').collect();
        let [name, degree, traces, excluded, gens] = fields[..] else {
            return Err(fail(format!(
                "expected 5 tab-separated fields, found {}",
                fields.len()
            )));
        };
        let numbers = |field: &str, what: &str| -> Result<Vec<usize>> {
            field
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|_| fail(format!("{name}: bad {what} entry {t:?}")))
                })
                .collect()
        };
        let degree: usize = degree
            .parse()
            .map_err(|_| fail(format!("{name}: bad degree {degree:?}")))?;
        let generators = gens
            .split(';')
            .map(|g| Permutation::parse_cycles(g, degree).map_err(|e| fail(format!("{name}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        let printed_traces = numbers(traces, "trace")?;
        if printed_traces.len() != generators.len() {
            return Err(fail(format!(
                "{name}: {} traces for {} generators",
                printed_traces.len(),
                generators.len()
            )));
        }
        rows.push(MathieuRow {
            name: name.to_string(),
            degree,
            printed_traces,
            printed_excluded: numbers(excluded, "excluded")?,
            generators,
        });
    }
    Ok(rows)
}

/// The bundled Mathieu group fixtures (M9 to M24).
pub fn mathieu_fixtures() -> Vec<MathieuRow> {
    load_mathieu_fixtures(BUILTIN).expect("bundled fixtures parse")
}

/// Computed and printed values for one fixture row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MathieuCheck {
    pub name: String,
    pub degree: usize,
    pub signs: Vec<i8>,
    pub traces: Vec<usize>,
    pub printed_traces: Vec<usize>,
    pub excluded: Vec<usize>,
    pub printed_excluded: Vec<usize>,
}

impl MathieuCheck {
    pub fn signs_positive(&self) -> bool {
        self.signs.iter().all(|&s| s > 0)
    }

    pub fn traces_match(&self) -> bool {
        self.traces == self.printed_traces
    }

    pub fn excluded_match(&self) -> bool {
        self.excluded == self.printed_excluded
    }

    /// No generator's fixed-point count lies in `{n−1, n−2, n−4}`.
    pub fn avoids_excluded(&self) -> bool {
        self.traces.iter().all(|t| !self.excluded.contains(t))
    }

    pub fn passed(&self) -> bool {
        self.signs_positive()
            && self.traces_match()
            && self.excluded_match()
            && self.avoids_excluded()
    }

    /// Human-readable list of failed checks.
    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.signs_positive() {
            out.push(format!("signs {:?} are not all +1", self.signs));
        }
        if !self.traces_match() {
            out.push(format!(
                "computed traces {:?} differ from printed {:?}",
                self.traces, self.printed_traces
            ));
        }
        if !self.excluded_match() {
            out.push(format!(
                "excluded set {:?} differs from printed {:?}",
                self.excluded, self.printed_excluded
            ));
        }
        if !self.avoids_excluded() {
            out.push(format!(
                "a trace in {:?} lies in {:?}",
                self.traces, self.excluded
            ));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MathieuReport {
    pub rows: Vec<MathieuCheck>,
}

impl MathieuReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(MathieuCheck::passed)
    }

    pub fn failures(&self) -> Vec<&MathieuCheck> {
        self.rows.iter().filter(|r| !r.passed()).collect()
    }
}

/// Computes sign and fixed points of every bundled generator and compares
/// them with the printed columns.
pub fn verify_mathieu_fixtures() -> Result<MathieuReport> {
    check_rows(&load_mathieu_fixtures(BUILTIN)?)
}

pub(crate) fn check_rows(rows: &[MathieuRow]) -> Result<MathieuReport> {
    Ok(MathieuReport {
        rows: rows
            .iter()
            .map(|row| MathieuCheck {
                name: row.name.clone(),
                degree: row.degree,
                signs: row.generators.iter().map(Permutation::sign).collect(),
                traces: row
                    .generators
                    .iter()
                    .map(Permutation::fixed_points)
                    .collect(),
                printed_traces: row.printed_traces.clone(),
                excluded: corollary_excluded(row.degree),
                printed_excluded: row.printed_excluded.clone(),
            })
            .collect(),
    })
}
