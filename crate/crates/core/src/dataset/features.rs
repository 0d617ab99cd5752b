use serde::{Deserialize, Serialize};

use super::DatasetEntry;
use crate::error::{Error, Result};
use crate::group::{generators_commute, GeneratedGroup};
use crate::perm::{factorial, flatten_pair};

/// Element orders 1..=15 plus the normalised group order.
pub const ORDER_PROFILE_LEN: usize = 16;
/// Largest element order in `S_8`; element orders are scaled by it.
const MAX_ELEMENT_ORDER: u64 = 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FeatureMode {
    /// Both permutation matrices, row-major, concatenated: `2n²` values.
    Matrices,
    /// `(tr σ₁/n, tr σ₂/n, det σ₁, det σ₂, abelian)`.
    Invariants,
    /// `(tr σ₁/n, tr σ₂/n, ord σ₁/15, ord σ₂/15, abelian)`.
    InvariantsOrders,
    /// Fraction of elements of each order 1..=15, then `|G|/n!`.
    OrderProfile,
}

impl FeatureMode {
    pub fn dimension(self, n: usize) -> usize {
        match self {
            FeatureMode::Matrices => 2 * n * n,
            FeatureMode::Invariants | FeatureMode::InvariantsOrders => 5,
            FeatureMode::OrderProfile => ORDER_PROFILE_LEN,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FeatureMode::Matrices => "matrices",
            FeatureMode::Invariants => "invariants",
            FeatureMode::InvariantsOrders => "invariants-orders",
            FeatureMode::OrderProfile => "order-profile",
        }
    }
}

impl std::str::FromStr for FeatureMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "matrices" => Ok(FeatureMode::Matrices),
            "invariants" => Ok(FeatureMode::Invariants),
            "invariants-orders" => Ok(FeatureMode::InvariantsOrders),
            "order-profile" | "order_profile" => Ok(FeatureMode::OrderProfile),
            _ => Err(Error::domain(format!("unknown feature mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub mode: FeatureMode,
    pub values: Vec<f64>,
}

pub fn featurize(entry: &DatasetEntry, mode: FeatureMode) -> Result<FeatureVector> {
    let n = entry.degree;
    let [p, q] = entry.generators()?;
    let abelian = || {
        if generators_commute(&[p, q]) {
            1.0
        } else {
            0.0
        }
    };
    let values = match mode {
        FeatureMode::Matrices => flatten_pair(&p, &q)?.into_iter().map(f64::from).collect(),
        FeatureMode::Invariants => vec![
            p.fixed_point_ratio(),
            q.fixed_point_ratio(),
            f64::from(p.sign()),
            f64::from(q.sign()),
            abelian(),
        ],
        FeatureMode::InvariantsOrders => vec![
            p.fixed_point_ratio(),
            q.fixed_point_ratio(),
            p.order() as f64 / MAX_ELEMENT_ORDER as f64,
            q.order() as f64 / MAX_ELEMENT_ORDER as f64,
            abelian(),
        ],
        FeatureMode::OrderProfile => {
            if n > 8 {
                return Err(Error::UnsupportedDegree {
                    degree: n,
                    reason: "order-profile features cover element orders up to 15 (n <= 8)".into(),
                });
            }
            let fp = GeneratedGroup::generate(&[p, q])?.fingerprint();
            let total = fp.order as f64;
            let mut v = vec![0.0; ORDER_PROFILE_LEN];
            for &(o, c) in &fp.order_profile {
                v[o as usize - 1] = c as f64 / total;
            }
            v[ORDER_PROFILE_LEN - 1] = total / factorial(n) as f64;
            v
        }
    };
    Ok(FeatureVector { mode, values })
}
