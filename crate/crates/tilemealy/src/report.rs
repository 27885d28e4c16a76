//! JSON report objects. These are the machine interface of the CLI: field
//! order is fixed by struct order and all collection fields are vectors, so
//! serialization is byte-deterministic for a given input and configuration.

use serde::{Deserialize, Serialize};

use crate::reduction::{Lemma1Report, SemidecideOutcome, SemidecideSpent};
use crate::semigroup::{Budget, FinitenessVerdict};
use crate::wang::{RectTiling, TileSet, TorusTiling, WangError};

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct NwCheckReport {
    pub nw_deterministic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conflict: Option<(String, String)>,
}

/// A rectangle as rows of tile names; row 0 is the southmost row, names run
/// west to east.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RectGrid {
    pub width: usize,
    pub height: usize,
    pub rows_south_to_north: Vec<Vec<String>>,
}

impl RectGrid {
    pub fn from_tiling(ts: &TileSet, t: &RectTiling) -> RectGrid {
        RectGrid {
            width: t.width,
            height: t.height,
            rows_south_to_north: (0..t.height)
                .map(|y| {
                    (0..t.width)
                        .map(|x| ts.tile_name(t.get(x, y)).to_owned())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_tiling(&self, ts: &TileSet) -> Result<RectTiling, WangError> {
        let mut grid = Vec::with_capacity(self.width * self.height);
        for row in &self.rows_south_to_north {
            for name in row {
                grid.push(
                    ts.find_tile(name)
                        .ok_or_else(|| WangError::UnknownTile(name.clone()))?,
                );
            }
        }
        RectTiling::new(self.width, self.height, grid)
    }
}

/// A torus fundamental domain as rows of tile names, south row first.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TorusGrid {
    pub px: usize,
    pub py: usize,
    pub rows_south_to_north: Vec<Vec<String>>,
}

impl TorusGrid {
    pub fn from_tiling(ts: &TileSet, t: &TorusTiling) -> TorusGrid {
        TorusGrid {
            px: t.px,
            py: t.py,
            rows_south_to_north: (0..t.py)
                .map(|y| {
                    (0..t.px)
                        .map(|x| ts.tile_name(t.get(x as i64, y as i64)).to_owned())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_tiling(&self, ts: &TileSet) -> Result<TorusTiling, WangError> {
        let mut grid = Vec::with_capacity(self.px * self.py);
        for row in &self.rows_south_to_north {
            for name in row {
                grid.push(
                    ts.find_tile(name)
                        .ok_or_else(|| WangError::UnknownTile(name.clone()))?,
                );
            }
        }
        TorusTiling::new(self.px, self.py, grid)
    }
}

/// Either kind of tiling grid, as found in a solver report's `grid` field.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum TilingGrid {
    Torus(TorusGrid),
    Rect(RectGrid),
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TileReport {
    pub command: &'static str,
    pub outcome: &'static str,
    pub nodes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<RectGrid>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TorusReport {
    pub command: &'static str,
    pub outcome: &'static str,
    pub nodes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<TorusGrid>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LeastNReport {
    pub command: &'static str,
    pub outcome: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub max_n: usize,
    pub nodes: u64,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BudgetReport {
    pub max_elements: usize,
    pub max_power_states: usize,
    pub max_word_length: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exhausted: Option<&'static str>,
}

/// The enumeration report:
/// `{"verdict": …, "size": …, "elements": […], "budget": {…}}` with digests
/// as hex strings of the canonical encodings.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct EnumerateReport {
    pub verdict: &'static str,
    pub size: usize,
    pub elements: Vec<String>,
    pub budget: BudgetReport,
}

impl EnumerateReport {
    pub fn new(verdict: &FinitenessVerdict, budget: &Budget) -> EnumerateReport {
        let base = BudgetReport {
            max_elements: budget.max_elements,
            max_power_states: budget.max_power_states,
            max_word_length: budget.max_word_length,
            exhausted: None,
        };
        match verdict {
            FinitenessVerdict::Finite { size, elements } => EnumerateReport {
                verdict: "finite",
                size: *size,
                elements: elements.iter().map(|d| d.to_hex()).collect(),
                budget: base,
            },
            FinitenessVerdict::BudgetExceeded {
                elements_found,
                elements,
                exhausted,
            } => EnumerateReport {
                verdict: "budget_exceeded",
                size: *elements_found,
                elements: elements.iter().map(|d| d.to_hex()).collect(),
                budget: BudgetReport {
                    exhausted: Some(exhausted.as_str()),
                    ..base
                },
            },
            FinitenessVerdict::InfiniteCertified { .. } => EnumerateReport {
                verdict: "infinite_certified",
                size: 0,
                elements: Vec::new(),
                budget: base,
            },
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct OrderReport {
    pub command: &'static str,
    pub found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stop: Option<&'static str>,
    pub max_n: u64,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertificateReport {
    Torus {
        grid: TorusGrid,
        lemma1: Lemma1Report,
    },
    UntileableSquare {
        n: usize,
        /// Decimal rendering of the exact bound.
        bound: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        exact_size: Option<usize>,
    },
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SemidecideReport {
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partials: Option<serde_json::Value>,
    pub budgets_spent: SemidecideSpent,
}

impl SemidecideReport {
    pub fn new(
        ts: &TileSet,
        outcome: &SemidecideOutcome,
        spent: SemidecideSpent,
    ) -> SemidecideReport {
        match outcome {
            SemidecideOutcome::InfiniteCertified { torus, lemma1 } => SemidecideReport {
                status: "infinite_certified",
                certificate: Some(CertificateReport::Torus {
                    grid: TorusGrid::from_tiling(ts, torus),
                    lemma1: lemma1.clone(),
                }),
                partials: None,
                budgets_spent: spent,
            },
            SemidecideOutcome::FiniteCertified {
                n,
                bound,
                exact_size,
            } => SemidecideReport {
                status: "finite_certified",
                certificate: Some(CertificateReport::UntileableSquare {
                    n: *n,
                    bound: bound.to_string(),
                    exact_size: *exact_size,
                }),
                partials: None,
                budgets_spent: spent,
            },
            SemidecideOutcome::Unknown { partials } => SemidecideReport {
                status: "unknown",
                certificate: None,
                partials: Some(serde_json::to_value(partials).expect("partials serialize")),
                budgets_spent: spent,
            },
        }
    }
}
