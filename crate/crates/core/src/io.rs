//! Flat-file formats: comparison arrays and run records as JSON.
//!
//! An array file looks like
//!
//! ```json
//! {
//!   "n": 4, "m": 2, "r_min": -1, "r_max": 1,
//!   "comparisons": [
//!     {"p": 1, "i": 2, "j": 4, "rij": 1, "rji": -1},
//!     {"p": 2, "i": 1, "j": 3, "rij": "1/2", "rji": "-1/2"}
//!   ]
//! }
//! ```
//!
//! Rationals are plain integers or `"p/q"` strings and survive the round
//! trip exactly; indexes are 1-based. `save_array` emits a canonical form
//! (comparisons sorted by individual and pair, fractions reduced), so
//! saving what was loaded reproduces the file byte for byte.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::comparisons::{ComparisonArray, RawArray, RawCell};
use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum NumRepr {
    Int(i64),
    Str(String),
}

impl NumRepr {
    fn to_rational(&self) -> Result<Rational> {
        match self {
            NumRepr::Int(v) => Ok(crate::rational::rat_int(*v)),
            NumRepr::Str(s) => parse_rational(s),
        }
    }

    fn from_rational(r: &Rational) -> NumRepr {
        if r.is_integer() {
            if let Ok(v) = i64::try_from(r.numer().clone()) {
                return NumRepr::Int(v);
            }
        }
        NumRepr::Str(format_rational(r))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ComparisonDto {
    p: usize,
    i: usize,
    j: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    rij: Option<NumRepr>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rji: Option<NumRepr>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ArrayDto {
    n: usize,
    m: usize,
    r_min: NumRepr,
    r_max: NumRepr,
    comparisons: Vec<ComparisonDto>,
}

/// Parses an array from its JSON form.
pub fn parse_array_json(text: &str) -> Result<ComparisonArray> {
    let dto: ArrayDto =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("array file: {e}")))?;
    let mut cells = Vec::with_capacity(dto.comparisons.len() * 2);
    for c in &dto.comparisons {
        let (rij, rji) = match (&c.rij, &c.rji) {
            (Some(a), Some(b)) => (a.to_rational()?, b.to_rational()?),
            _ => {
                return Err(Error::UnpairedEntry {
                    p: c.p,
                    i: c.i,
                    j: c.j,
                })
            }
        };
        cells.push(RawCell {
            individual: c.p,
            row: c.i,
            col: c.j,
            value: rij,
        });
        cells.push(RawCell {
            individual: c.p,
            row: c.j,
            col: c.i,
            value: rji,
        });
    }
    RawArray {
        alternatives: dto.n,
        individuals: dto.m,
        r_min: dto.r_min.to_rational()?,
        r_max: dto.r_max.to_rational()?,
        cells,
    }
    .validate()
}

/// Serializes an array to canonical JSON.
pub fn array_to_json(array: &ComparisonArray) -> String {
    let comparisons = array
        .outcomes()
        .iter()
        .map(|o| ComparisonDto {
            p: o.individual + 1,
            i: o.first + 1,
            j: o.second + 1,
            rij: Some(NumRepr::from_rational(&o.forward)),
            rji: Some(NumRepr::from_rational(&o.backward)),
        })
        .collect();
    let dto = ArrayDto {
        n: array.n(),
        m: array.m(),
        r_min: NumRepr::from_rational(array.r_min()),
        r_max: NumRepr::from_rational(array.r_max()),
        comparisons,
    };
    serde_json::to_string_pretty(&dto).expect("array serialization cannot fail")
}

/// Loads an array file.
pub fn load_array(path: &Path) -> Result<ComparisonArray> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_array_json(&text)
}

/// Saves an array in canonical form.
pub fn save_array(path: &Path, array: &ComparisonArray) -> Result<()> {
    std::fs::write(path, array_to_json(array) + "\n")
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Content digest of an array (sha256 of the canonical JSON).
pub fn digest(array: &ComparisonArray) -> String {
    let mut hasher = Sha256::new();
    hasher.update(array_to_json(array).as_bytes());
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

/// Result payload of a recorded run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RunOutput {
    /// Exact optimal objective value and the optimal orders as block lists
    /// of 1-based alternative ids.
    Optima {
        value: String,
        orders: Vec<Vec<Vec<usize>>>,
    },
    /// Direct scoring output.
    Scores {
        epsilon: String,
        x: Vec<String>,
        order: Vec<Vec<usize>>,
    },
}

/// Per-order audit summary embedded in a run record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditSummary {
    pub axiom: String,
    pub order: Vec<Vec<usize>>,
    pub violations: usize,
    pub violating_pairs: Vec<(usize, usize)>,
}

/// A reloadable record of one ranking or audit run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunRecord {
    /// Canonical method string, e.g. `beta_ls[beta=1/2]`.
    pub method: String,
    pub domain: String,
    pub input_digest: String,
    pub output: RunOutput,
    #[serde(default)]
    pub audits: Vec<AuditSummary>,
    pub wall_ms: u64,
}

pub fn save_run(path: &Path, record: &RunRecord) -> Result<()> {
    let text = serde_json::to_string_pretty(record)
        .map_err(|e| Error::Parse(format!("run record: {e}")))?;
    std::fs::write(path, text + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn load_run(path: &Path) -> Result<RunRecord> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("run record: {e}")))
}

/// Block list (1-based) of an order, the form stored in run records.
pub fn order_blocks(order: &crate::orders::WeakOrder) -> Vec<Vec<usize>> {
    order
        .blocks()
        .iter()
        .map(|b| b.iter().map(|&i| i + 1).collect())
        .collect()
}
