//! Line-oriented dataset files.
//!
//! ```text
//! #simplegrp-v1 n=4 filter=distinct
//! 4\t6\t19\t0\t6\tS3
//! ```
//!
//! Fields are tab-separated: degree, r1, r2, simple (0/1), group order, and
//! catalog name (empty when unknown).

use std::fs;
use std::io::Write;
use std::path::Path;

use super::{DatasetEntry, PairFilter};
use crate::error::{Error, Result};
use crate::perm::factorial;

const MAGIC: &str = "#simplegrp-v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DatasetHeader {
    pub degree: usize,
    pub filter: PairFilter,
}

impl DatasetHeader {
    fn render(&self) -> String {
        format!("{MAGIC} n={} filter={}", self.degree, self.filter.as_str())
    }

    fn parse(line: &str) -> Result<Self> {
        let bad = |message: String| Error::Parse { line: 1, message };
        let mut parts = line.split_whitespace();
        if parts.next() != Some(MAGIC) {
            return Err(bad(format!("expected header starting with {MAGIC}")));
        }
        let (mut degree, mut filter) = (None, None);
        for part in parts {
            match part.split_once('=') {
                Some(("n", v)) => {
                    degree = Some(v.parse().map_err(|_| bad(format!("bad degree {v:?}")))?)
                }
                Some(("filter", v)) => {
                    filter = Some(v.parse().map_err(|_| bad(format!("bad filter {v:?}")))?)
                }
                _ => return Err(bad(format!("unexpected header field {part:?}"))),
            }
        }
        Ok(Self {
            degree: degree.ok_or_else(|| bad("header lacks n=".into()))?,
            filter: filter.ok_or_else(|| bad("header lacks filter=".into()))?,
        })
    }
}

pub fn render_entry(e: &DatasetEntry) -> String {
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}",
        e.degree,
        e.r1,
        e.r2,
        u8::from(e.simple),
        e.order,
        e.name.as_deref().unwrap_or("")
    )
}

/// Writes `entries` to `path` atomically (temporary file, then rename).
pub fn persist(path: &Path, header: &DatasetHeader, entries: &[DatasetEntry]) -> Result<()> {
    let mut body = String::with_capacity(32 * (entries.len() + 1));
    body.push_str(&header.render());
    body.push('\n');
    for e in entries {
        if e.degree != header.degree {
            return Err(Error::DegreeMismatch(header.degree, e.degree));
        }
        body.push_str(&render_entry(e));
        body.push('\n');
    }
    write_atomic(path, body.as_bytes())
}

/// Writes through a temporary file in the same directory, then renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let file_name = path
        .file_name()
        .ok_or_else(|| Error::domain(format!("{} is not a file path", path.display())))?;
    let tmp = dir.join(format!(
        ".{}.tmp{}",
        file_name.to_string_lossy(),
        std::process::id()
    ));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })?;
    Ok(())
}

pub fn load(path: &Path) -> Result<(DatasetHeader, Vec<DatasetEntry>)> {
    parse(&fs::read_to_string(path)?)
}

pub(crate) fn parse(text: &str) -> Result<(DatasetHeader, Vec<DatasetEntry>)> {
    let mut lines = text.lines();
    let header = DatasetHeader::parse(lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing header".into(),
    })?)?;
    let limit = factorial(header.degree.min(20));
    let mut entries = Vec::new();
    for (idx, raw) in lines.enumerate() {
        let line = idx + 2;
        let bad = |message: String| Error::Parse { line, message };
        let fields: Vec<&str> = raw.split('\t').collect();
        let [n, r1, r2, simple, order, name] = fields[..] else {
            return Err(bad(format!("expected 6 fields, found {}", fields.len())));
        };
        let num = |s: &str, what: &str| -> Result<u64> {
            s.parse().map_err(|_| bad(format!("bad {what} {s:?}")))
        };
        let degree = num(n, "degree")? as usize;
        if degree != header.degree {
            return Err(bad(format!(
                "degree {degree} differs from header {}",
                header.degree
            )));
        }
        let (r1, r2) = (num(r1, "r1")?, num(r2, "r2")?);
        if r1 >= limit || r2 >= limit {
            return Err(bad(format!("rank out of range for degree {degree}")));
        }
        if !header.filter.admits(r1, r2) {
            return Err(bad(format!(
                "pair ({r1}, {r2}) violates filter {}",
                header.filter.as_str()
            )));
        }
        let simple = match simple {
            "0" => false,
            "1" => true,
            other => return Err(bad(format!("simple flag must be 0 or 1, got {other:?}"))),
        };
        entries.push(DatasetEntry {
            degree,
            r1,
            r2,
            simple,
            order: num(order, "order")?,
            name: (!name.is_empty()).then(|| name.to_string()),
        });
    }
    Ok((header, entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{enumerate_labeled, label_pair};
    use proptest::prelude::*;

    fn header(n: usize) -> DatasetHeader {
        DatasetHeader {
            degree: n,
            filter: PairFilter::Distinct,
        }
    }

    #[test]
    fn empty_dataset_is_just_a_header() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("empty.tsv");
        persist(&path, &header(5), &[]).unwrap();
        assert_eq!(
            fs::read_to_string(&path).unwrap(),
            "#simplegrp-v1 n=5 filter=distinct\n"
        );
        let (h, e) = load(&path).unwrap();
        assert_eq!(h, header(5));
        assert!(e.is_empty());
    }

    #[test]
    fn full_n4_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s4.tsv");
        let all = enumerate_labeled(4, PairFilter::Distinct).unwrap();
        persist(&path, &header(4), &all).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 553);
        assert!(text.lines().any(|l| l == "4\t6\t19\t0\t6\tS3"));
        assert_eq!(load(&path).unwrap().1, all);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let ok = "#simplegrp-v1 n=4 filter=distinct\n4\t1\t2\t0\t6\tS3\n";
        assert!(parse(ok).is_ok());
        for (text, line) in [
            (
                "#simplegrp-v1 n=4 filter=distinct\n4\t1\t2\t0\t6\tS3\n4\t1\t2\n",
                3,
            ),
            ("#simplegrp-v1 n=4 filter=distinct\n4\t1\t1\t0\t1\t\n", 2),
            ("#simplegrp-v1 n=4 filter=distinct\n4\t1\t24\t0\t6\t\n", 2),
            ("#simplegrp-v1 n=4 filter=distinct\n5\t1\t2\t0\t6\t\n", 2),
            ("#simplegrp-v1 n=4 filter=distinct\n4\t1\t2\tyes\t6\t\n", 2),
            (
                "#simplegrp-v1 n=4 filter=distinct-nonid\n4\t0\t2\t0\t6\t\n",
                2,
            ),
            ("#other n=4\n", 1),
            ("#simplegrp-v1 filter=distinct\n", 1),
        ] {
            match parse(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    proptest! {
        #[test]
        fn labeled_entries_round_trip(pairs in proptest::collection::vec((0u64..720, 0u64..720), 0..20)) {
            let entries: Vec<_> = pairs
                .into_iter()
                .filter(|(a, b)| a != b)
                .map(|(a, b)| label_pair(6, a, b).unwrap())
                .collect();
            let mut text = header(6).render();
            text.push('\n');
            for e in &entries {
                text.push_str(&render_entry(e));
                text.push('\n');
            }
            prop_assert_eq!(parse(&text).unwrap().1, entries);
        }
    }
}
