//! Incomplete paired-comparison arrays and their aggregates.
//!
//! An array holds, for `m` individuals and `n` alternatives, the recorded
//! comparison outcomes `(r_ij^p, r_ji^p)`. Entries are always stored in
//! pairs: an individual who compared `X_i` to `X_j` reported both a value
//! for `i` against `j` and one for `j` against `i`. Pairs that were never
//! compared simply have no record; the aggregate treats them as zero.
//!
//! Alternatives and individuals are 1-based at the API boundary and 0-based
//! internally.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// One directed cell of a raw array description: individual `p` gave value
/// `value` for alternative `row` against alternative `col`. All indexes are
/// 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawCell {
    pub individual: usize,
    pub row: usize,
    pub col: usize,
    pub value: Rational,
}

/// An unvalidated array description, as read from a file or assembled by a
/// caller. `validate` turns this into a [`ComparisonArray`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawArray {
    pub alternatives: usize,
    pub individuals: usize,
    pub r_min: Rational,
    pub r_max: Rational,
    pub cells: Vec<RawCell>,
}

/// A validated comparison outcome. `first < second` (0-based); `forward` is
/// the value of `first` against `second` and `backward` the reverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub individual: usize,
    pub first: usize,
    pub second: usize,
    pub forward: Rational,
    pub backward: Rational,
}

/// One comparison outcome seen from the perspective of a fixed alternative:
/// it `scored` against `opponent` and `conceded` the reverse value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutcomeRecord {
    pub individual: usize,
    pub opponent: usize,
    pub scored: Rational,
    pub conceded: Rational,
}

/// A validated array of incomplete paired comparisons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonArray {
    n: usize,
    m: usize,
    r_min: Rational,
    r_max: Rational,
    outcomes: Vec<Outcome>,
    skew_symmetric: bool,
}

/// Entrywise sums `r_ij` over individuals together with the comparison
/// counts `m_ij`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AggregateMatrix {
    n: usize,
    r: Vec<Rational>,
    counts: Vec<u32>,
}

/// The vector of array Copeland indexes `t_i = sum_j (r_ij - r_ji)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CopelandVector {
    pub t: Vec<Rational>,
}

impl RawArray {
    /// Validates the description and produces a canonical array.
    pub fn validate(&self) -> Result<ComparisonArray> {
        let n = self.alternatives;
        let m = self.individuals;
        if n < 2 {
            return Err(Error::BadIndex {
                what: "n",
                got: n,
                min: 2,
                max: usize::MAX,
            });
        }
        if m < 1 {
            return Err(Error::BadIndex {
                what: "m",
                got: m,
                min: 1,
                max: usize::MAX,
            });
        }
        if self.r_max <= self.r_min {
            return Err(Error::BadParameter(format!(
                "r_max must exceed r_min (got {} <= {})",
                crate::rational::format_rational(&self.r_max),
                crate::rational::format_rational(&self.r_min),
            )));
        }

        let mut cells: BTreeMap<(usize, usize, usize), Rational> = BTreeMap::new();
        for cell in &self.cells {
            if cell.individual == 0 || cell.individual > m {
                return Err(Error::BadIndex {
                    what: "individual",
                    got: cell.individual,
                    min: 1,
                    max: m,
                });
            }
            for idx in [cell.row, cell.col] {
                if idx == 0 || idx > n {
                    return Err(Error::BadIndex {
                        what: "alternative",
                        got: idx,
                        min: 1,
                        max: n,
                    });
                }
            }
            if cell.row == cell.col {
                return Err(Error::SelfComparison {
                    p: cell.individual,
                    i: cell.row,
                });
            }
            if cell.value < self.r_min || cell.value > self.r_max {
                return Err(Error::bounds(
                    cell.individual,
                    cell.row,
                    cell.col,
                    &cell.value,
                    &self.r_min,
                    &self.r_max,
                ));
            }
            let key = (cell.individual, cell.row, cell.col);
            if cells.insert(key, cell.value.clone()).is_some() {
                return Err(Error::DuplicateEntry {
                    p: cell.individual,
                    i: cell.row,
                    j: cell.col,
                });
            }
        }

        let mut outcomes = Vec::new();
        let mut skew = true;
        for (&(p, i, j), forward) in &cells {
            if i > j {
                // handled when visiting the (p, j, i) key
                if !cells.contains_key(&(p, j, i)) {
                    return Err(Error::UnpairedEntry { p, i, j });
                }
                continue;
            }
            let backward = cells
                .get(&(p, j, i))
                .ok_or(Error::UnpairedEntry { p, i, j })?;
            if *backward != -forward.clone() {
                skew = false;
            }
            outcomes.push(Outcome {
                individual: p - 1,
                first: i - 1,
                second: j - 1,
                forward: forward.clone(),
                backward: backward.clone(),
            });
        }

        Ok(ComparisonArray {
            n,
            m,
            r_min: self.r_min.clone(),
            r_max: self.r_max.clone(),
            outcomes,
            skew_symmetric: skew,
        })
    }
}

/// Incremental builder for arrays; indexes are 1-based like the file format.
#[derive(Debug, Clone)]
pub struct ArrayBuilder {
    raw: RawArray,
}

impl ArrayBuilder {
    pub fn new(n: usize, m: usize, r_min: Rational, r_max: Rational) -> Self {
        ArrayBuilder {
            raw: RawArray {
                alternatives: n,
                individuals: m,
                r_min,
                r_max,
                cells: Vec::new(),
            },
        }
    }

    /// Convenience constructor for dichotomous data in `[-bound, bound]`.
    pub fn dichotomous(n: usize, m: usize, bound: Rational) -> Self {
        let neg = -bound.clone();
        Self::new(n, m, neg, bound)
    }

    /// Records the full outcome of comparing `i` to `j` by individual `p`.
    pub fn outcome(mut self, p: usize, i: usize, j: usize, rij: Rational, rji: Rational) -> Self {
        self.raw.cells.push(RawCell {
            individual: p,
            row: i,
            col: j,
            value: rij,
        });
        self.raw.cells.push(RawCell {
            individual: p,
            row: j,
            col: i,
            value: rji,
        });
        self
    }

    /// Records a maximal win of `i` over `j` by individual `p`.
    pub fn max_win(self, p: usize, i: usize, j: usize) -> Self {
        let (max, min) = (self.raw.r_max.clone(), self.raw.r_min.clone());
        self.outcome(p, i, j, max, min)
    }

    pub fn build(self) -> Result<ComparisonArray> {
        self.raw.validate()
    }

    pub fn raw(self) -> RawArray {
        self.raw
    }
}

impl ComparisonArray {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn r_min(&self) -> &Rational {
        &self.r_min
    }

    pub fn r_max(&self) -> &Rational {
        &self.r_max
    }

    /// All stored outcomes, sorted by (individual, first, second).
    pub fn outcomes(&self) -> &[Outcome] {
        &self.outcomes
    }

    /// True when every stored pair satisfies `r_ji = -r_ij`.
    pub fn skew_symmetric(&self) -> bool {
        self.skew_symmetric
    }

    /// Looks up `r_ik^p` (0-based indexes).
    pub fn value(&self, p: usize, i: usize, k: usize) -> Option<&Rational> {
        self.outcomes.iter().find_map(|o| {
            if o.individual != p {
                None
            } else if o.first == i && o.second == k {
                Some(&o.forward)
            } else if o.first == k && o.second == i {
                Some(&o.backward)
            } else {
                None
            }
        })
    }

    /// Entrywise sums and counts.
    pub fn aggregate(&self) -> AggregateMatrix {
        let n = self.n;
        let mut r = vec![Rational::zero(); n * n];
        let mut counts = vec![0u32; n * n];
        for o in &self.outcomes {
            r[o.first * n + o.second] += o.forward.clone();
            r[o.second * n + o.first] += o.backward.clone();
            counts[o.first * n + o.second] += 1;
            counts[o.second * n + o.first] += 1;
        }
        AggregateMatrix { n, r, counts }
    }

    /// The Copeland index vector of the array, `t_i = sum_j (r_ij - r_ji)`.
    pub fn copeland(&self) -> CopelandVector {
        let mut t = vec![Rational::zero(); self.n];
        for o in &self.outcomes {
            let diff = o.forward.clone() - o.backward.clone();
            t[o.first] += diff.clone();
            t[o.second] -= diff;
        }
        CopelandVector { t }
    }

    /// All comparison outcomes of alternative `i` (0-based), each seen from
    /// `i`'s perspective. An outcome between `i` and `j` appears in the
    /// record sets of both.
    pub fn outcomes_of(&self, i: usize) -> Result<Vec<OutcomeRecord>> {
        if i >= self.n {
            return Err(Error::BadIndex {
                what: "alternative",
                got: i + 1,
                min: 1,
                max: self.n,
            });
        }
        let mut records = Vec::new();
        for o in &self.outcomes {
            if o.first == i {
                records.push(OutcomeRecord {
                    individual: o.individual,
                    opponent: o.second,
                    scored: o.forward.clone(),
                    conceded: o.backward.clone(),
                });
            } else if o.second == i {
                records.push(OutcomeRecord {
                    individual: o.individual,
                    opponent: o.first,
                    scored: o.backward.clone(),
                    conceded: o.forward.clone(),
                });
            }
        }
        Ok(records)
    }

    /// Whether a record is a maximal win `(r_max, r_min)` under this array's
    /// bounds.
    pub fn is_maximal_win(&self, rec: &OutcomeRecord) -> bool {
        rec.scored == self.r_max && rec.conceded == self.r_min
    }

    /// Whether a record is a maximal loss `(r_min, r_max)`.
    pub fn is_maximal_loss(&self, rec: &OutcomeRecord) -> bool {
        rec.scored == self.r_min && rec.conceded == self.r_max
    }

    /// Concatenates the individuals of two arrays over the same alternatives
    /// and bounds.
    pub fn concat(&self, other: &ComparisonArray) -> Result<ComparisonArray> {
        if self.n != other.n || self.r_min != other.r_min || self.r_max != other.r_max {
            return Err(Error::BadParameter(
                "cannot concatenate arrays with different n or bounds".into(),
            ));
        }
        let mut outcomes = self.outcomes.clone();
        for o in &other.outcomes {
            let mut o = o.clone();
            o.individual += self.m;
            outcomes.push(o);
        }
        outcomes.sort_by_key(|o| (o.individual, o.first, o.second));
        let skew = self.skew_symmetric && other.skew_symmetric;
        Ok(ComparisonArray {
            n: self.n,
            m: self.m + other.m,
            r_min: self.r_min.clone(),
            r_max: self.r_max.clone(),
            outcomes,
            skew_symmetric: skew,
        })
    }

    /// Back-door for modules that construct derived arrays (the skew
    /// transform); invariants are the caller's responsibility.
    pub(crate) fn from_parts(
        n: usize,
        m: usize,
        r_min: Rational,
        r_max: Rational,
        outcomes: Vec<Outcome>,
        skew_symmetric: bool,
    ) -> Self {
        ComparisonArray {
            n,
            m,
            r_min,
            r_max,
            outcomes,
            skew_symmetric,
        }
    }
}

impl AggregateMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `r_ij` (0-based).
    pub fn r(&self, i: usize, j: usize) -> &Rational {
        &self.r[i * self.n + j]
    }

    /// `m_ij` (0-based).
    pub fn count(&self, i: usize, j: usize) -> u32 {
        self.counts[i * self.n + j]
    }
}

impl CopelandVector {
    pub fn t(&self, i: usize) -> &Rational {
        &self.t[i]
    }
}
