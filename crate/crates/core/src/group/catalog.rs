use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};

use super::GroupFingerprint;

const BUILTIN: &str = include_str!("../../data/catalog.tsv");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub fingerprint: GroupFingerprint,
}

/// Isomorphism types identified by their [`GroupFingerprint`].
///
/// Matching is exact on the fingerprint, so it only names groups correctly
/// for the types listed; it is not an isomorphism test.
#[derive(Debug)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
    by_fingerprint: HashMap<GroupFingerprint, usize>,
}

impl Catalog {
    /// The catalog bundled with the crate.
    pub fn builtin() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| Catalog::parse(BUILTIN).expect("bundled catalog is well-formed"))
    }

    /// Parses `name<TAB>order<TAB>abelian<TAB>order:count,...` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Catalog> {
        let mut entries = Vec::new();
        let mut by_fingerprint = HashMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            if raw.trim().is_empty() || raw.starts_with('#') {
                continue;
            }
            let bad = |message: &str| Error::Parse {
                line,
                message: message.to_string(),
            };
            let fields: Vec<&str> = raw.split('\t').collect();
            let [name, order, abelian, profile] = fields[..] else {
                return Err(bad("expected 4 tab-separated fields"));
            };
            let order: u64 = order.parse().map_err(|_| bad("bad order"))?;
            let abelian = match abelian {
                "0" => false,
                "1" => true,
                _ => return Err(bad("abelian flag must be 0 or 1")),
            };
            let order_profile = profile
                .split(',')
                .map(|pair| {
                    let (o, c) = pair
                        .split_once(':')
                        .ok_or_else(|| bad("bad profile pair"))?;
                    Ok((
                        o.parse().map_err(|_| bad("bad element order"))?,
                        c.parse().map_err(|_| bad("bad count"))?,
                    ))
                })
                .collect::<Result<Vec<(u64, u64)>>>()?;
            if order_profile.iter().map(|&(_, c)| c).sum::<u64>() != order {
                return Err(bad("profile counts do not sum to the order"));
            }
            if !order_profile.windows(2).all(|w| w[0].0 < w[1].0) {
                return Err(bad("profile must be sorted by element order"));
            }
            let fingerprint = GroupFingerprint {
                order,
                order_profile,
                abelian,
            };
            if by_fingerprint
                .insert(fingerprint.clone(), entries.len())
                .is_some()
            {
                return Err(bad("duplicate fingerprint"));
            }
            entries.push(CatalogEntry {
                name: name.to_string(),
                fingerprint,
            });
        }
        Ok(Catalog {
            entries,
            by_fingerprint,
        })
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn lookup(&self, fingerprint: &GroupFingerprint) -> Option<&str> {
        self.by_fingerprint
            .get(fingerprint)
            .map(|&i| self.entries[i].name.as_str())
    }

    pub fn has_order(&self, order: u64) -> bool {
        self.entries.iter().any(|e| e.fingerprint.order == order)
    }

    pub fn by_name(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}
