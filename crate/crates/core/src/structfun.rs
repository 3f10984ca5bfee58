//! Structure functions for the assignment-form objectives.
//!
//! Six base functions are supported together with their weak-order-safe
//! revisions; all of them depend only on the difference of the two Copeland
//! indexes:
//!
//! | k | `C_k(x, y)`        | revised `C'_k(x, y)` |
//! |---|--------------------|----------------------|
//! | 1 | `sign(x-y)`        | unchanged            |
//! | 2 | `sign(x-y)^+`      | `sign(x-y) + 1`      |
//! | 3 | `sign(x-y)^-`      | `sign(x-y) - 1`      |
//! | 4 | `x-y`              | unchanged            |
//! | 5 | `(x-y)^+`          | `(x-y+1)^+`          |
//! | 6 | `(x-y)^-`          | `(x-y-1)^-`          |
//!
//! `admissible` checks the ordering `g(-1) < g(0) < g(1)` of the
//! contribution `g(d) = r_max C(d,0) + r_min C(0,d)` of a maximal win, the
//! condition under which an all-tied block is neither forced nor forbidden
//! for trivial reasons.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{rat, Rational};

/// Selects the original or the revised family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Original,
    Revised,
}

/// One of the twelve structure functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureFunction {
    family: Family,
    index: u8,
}

fn sign(z: i64) -> i64 {
    z.signum()
}

impl StructureFunction {
    pub fn new(family: Family, index: u8) -> Result<Self> {
        if !(1..=6).contains(&index) {
            return Err(Error::BadIndex {
                what: "structure function index",
                got: index as usize,
                min: 1,
                max: 6,
            });
        }
        Ok(StructureFunction { family, index })
    }

    /// `C_k`.
    pub fn original(index: u8) -> Result<Self> {
        Self::new(Family::Original, index)
    }

    /// `C'_k`.
    pub fn revised(index: u8) -> Result<Self> {
        Self::new(Family::Revised, index)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn index(&self) -> u8 {
        self.index
    }

    /// Evaluates the function on a pair of Copeland indexes.
    pub fn eval(&self, x: i64, y: i64) -> i64 {
        let d = x - y;
        match (self.family, self.index) {
            (_, 1) => sign(d),
            (Family::Original, 2) => sign(d).max(0),
            (Family::Original, 3) => sign(d).min(0),
            (_, 4) => d,
            (Family::Original, 5) => d.max(0),
            (Family::Original, 6) => d.min(0),
            (Family::Revised, 2) => sign(d) + 1,
            (Family::Revised, 3) => sign(d) - 1,
            (Family::Revised, 5) => (d + 1).max(0),
            (Family::Revised, 6) => (d - 1).min(0),
            _ => unreachable!("index checked at construction"),
        }
    }

    /// The contribution of a maximal win at rank difference `d`:
    /// `g(d) = r_max C(d, 0) + r_min C(0, d)`.
    pub fn win_contribution(&self, d: i64, r_min: &Rational, r_max: &Rational) -> Rational {
        r_max * Rational::from_integer(self.eval(d, 0).into())
            + r_min * Rational::from_integer(self.eval(0, d).into())
    }

    /// Checks `g(-1) < g(0) < g(1)`; returns the verdict with the three
    /// sampled values.
    pub fn admissible(&self, r_min: &Rational, r_max: &Rational) -> ConditionTen {
        let g = [
            self.win_contribution(-1, r_min, r_max),
            self.win_contribution(0, r_min, r_max),
            self.win_contribution(1, r_min, r_max),
        ];
        let holds = g[0] < g[1] && g[1] < g[2];
        ConditionTen { holds, g }
    }
}

/// Result of the admissibility check: the verdict and `g(-1), g(0), g(1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionTen {
    pub holds: bool,
    pub g: [Rational; 3],
}

/// How net score differences `r_ij - r_ji` are clipped in the "net"
/// objectives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PsiVariant {
    /// Plain positive part `z^+`.
    Plus,
    /// `z` for `z > 0`, `(r_max - r_min)/2` at a draw, `0` otherwise; gives
    /// a net draw between compared alternatives a weight distinct from the
    /// absence of comparisons.
    Crow { r_min: Rational, r_max: Rational },
    /// Shifted positive part `(z + r_max - r_min)^+`.
    Shifted { r_min: Rational, r_max: Rational },
}

impl PsiVariant {
    pub fn eval(&self, z: &Rational) -> Rational {
        let zero = Rational::from_integer(0.into());
        match self {
            PsiVariant::Plus => {
                if *z > zero {
                    z.clone()
                } else {
                    zero
                }
            }
            PsiVariant::Crow { r_min, r_max } => {
                if *z > zero {
                    z.clone()
                } else if z.eq(&zero) {
                    (r_max - r_min) / rat(2, 1)
                } else {
                    zero
                }
            }
            PsiVariant::Shifted { r_min, r_max } => {
                let shifted = z + (r_max - r_min);
                if shifted > zero {
                    shifted
                } else {
                    zero
                }
            }
        }
    }
}
