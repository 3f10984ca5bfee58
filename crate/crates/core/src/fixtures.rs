//! Generators for the small named comparison arrays used throughout the
//! test and theorem suites.
//!
//! Every fixture is a pattern of maximal wins: an arc `i -> j` records the
//! outcome `(r_max, r_min)` of comparing `X_i` to `X_j`. Bounds default to
//! `[-1, 1]`, so the generated arrays are skew-symmetric and feed both the
//! discrete objectives and the row-sum solver. Alternatives beyond a
//! figure's core and individuals beyond its voters stay empty.

use serde::{Deserialize, Serialize};

use crate::comparisons::{ArrayBuilder, ComparisonArray};
use crate::error::{Error, Result};
use crate::rational::{rat_int, Rational};

/// The named fixtures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FixtureName {
    /// Two voters on four candidates: arcs 2->4, 3->4 and 1->3.
    Fig1,
    /// A three-cycle 1->2->3->1 reported by one voter.
    FigA1,
    /// Two voters reversing each other on one pair.
    FigA2,
    /// Arcs 1->3, 3->4, 2->4; X1 and X2 are never compared.
    FigA3,
    /// X1 beats X2 and X3; X2 and X3 are never compared.
    FigA4,
    /// Every pair (k < l) compared except (1,2), (1,4) and (2,3), each a
    /// win for the smaller index.
    FigA5,
}

impl FixtureName {
    pub fn parse(s: &str) -> Result<FixtureName> {
        match s.to_ascii_lowercase().as_str() {
            "fig1" => Ok(FixtureName::Fig1),
            "figa1" => Ok(FixtureName::FigA1),
            "figa2" => Ok(FixtureName::FigA2),
            "figa3" => Ok(FixtureName::FigA3),
            "figa4" => Ok(FixtureName::FigA4),
            "figa5" => Ok(FixtureName::FigA5),
            other => Err(Error::BadParameter(format!("unknown fixture {other:?}"))),
        }
    }

    /// Smallest (n, m) the fixture is defined for.
    pub fn minimum(&self) -> (usize, usize) {
        match self {
            FixtureName::Fig1 => (4, 2),
            FixtureName::FigA1 => (3, 1),
            FixtureName::FigA2 => (2, 2),
            FixtureName::FigA3 => (4, 1),
            FixtureName::FigA4 => (3, 1),
            FixtureName::FigA5 => (5, 1),
        }
    }

    fn arcs(&self, n: usize) -> Vec<(usize, usize, usize)> {
        // (individual, winner, loser), all 1-based
        match self {
            FixtureName::Fig1 => vec![(1, 2, 4), (1, 3, 4), (2, 1, 3)],
            FixtureName::FigA1 => vec![(1, 1, 2), (1, 2, 3), (1, 3, 1)],
            FixtureName::FigA2 => vec![(1, 1, 2), (2, 2, 1)],
            FixtureName::FigA3 => vec![(1, 1, 3), (1, 3, 4), (1, 2, 4)],
            FixtureName::FigA4 => vec![(1, 1, 2), (1, 1, 3)],
            FixtureName::FigA5 => {
                let mut arcs = Vec::new();
                for k in 1..=n {
                    for l in (k + 1)..=n {
                        if matches!((k, l), (1, 2) | (1, 4) | (2, 3)) {
                            continue;
                        }
                        arcs.push((1, k, l));
                    }
                }
                arcs
            }
        }
    }
}

impl std::fmt::Display for FixtureName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            FixtureName::Fig1 => "fig1",
            FixtureName::FigA1 => "figA1",
            FixtureName::FigA2 => "figA2",
            FixtureName::FigA3 => "figA3",
            FixtureName::FigA4 => "figA4",
            FixtureName::FigA5 => "figA5",
        };
        write!(f, "{s}")
    }
}

/// A fixture selection: the name, the sizes and the upper bound (the lower
/// bound is its negation).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub name: FixtureName,
    pub n: usize,
    pub m: usize,
    pub r_max: Rational,
}

impl Fixture {
    /// The fixture at its minimal size with bounds `[-1, 1]`.
    pub fn new(name: FixtureName) -> Self {
        let (n, m) = name.minimum();
        Fixture {
            name,
            n,
            m,
            r_max: rat_int(1),
        }
    }

    pub fn with_size(mut self, n: usize, m: usize) -> Self {
        self.n = n;
        self.m = m;
        self
    }

    pub fn with_r_max(mut self, r_max: Rational) -> Self {
        self.r_max = r_max;
        self
    }

    /// Generates the comparison array.
    pub fn build(&self) -> Result<ComparisonArray> {
        let (min_n, min_m) = self.name.minimum();
        if self.n < min_n {
            return Err(Error::BadParameter(format!(
                "{} requires n >= {min_n} (got {})",
                self.name, self.n
            )));
        }
        if self.m < min_m {
            return Err(Error::BadParameter(format!(
                "{} requires m >= {min_m} (got {})",
                self.name, self.m
            )));
        }
        if !num_traits::Signed::is_positive(&self.r_max) {
            return Err(Error::BadParameter("r_max must be positive".into()));
        }
        let mut builder = ArrayBuilder::dichotomous(self.n, self.m, self.r_max.clone());
        for (p, winner, loser) in self.name.arcs(self.n) {
            builder = builder.max_win(p, winner, loser);
        }
        builder.build()
    }
}

/// Convenience shorthand: `make_fixture(FixtureName::FigA3, 4, 1)`.
pub fn make_fixture(name: FixtureName, n: usize, m: usize) -> Result<ComparisonArray> {
    Fixture::new(name).with_size(n, m).build()
}
