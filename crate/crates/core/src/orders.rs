//! Weak and linear orders over the alternatives, and their exhaustive
//! enumeration.
//!
//! A weak order is an ordered partition of the alternatives into tied
//! blocks, best block first. Each order carries the Copeland index
//! `rho_i = |{j : i above j}| - |{j : j above i}|` of every alternative,
//! which is the quantity the objective functions consume.
//!
//! Enumeration is canonical and documented: weak orders are produced by
//! increasing block count `k`, and within a block count in lexicographic
//! order of the assignment vector `(a_1, ..., a_n)`, where `a_i` is the
//! 0-based block of alternative `i` counted from the top. Linear orders
//! are the `k = n` slice of the same sequence. Results that list optimal
//! orders inherit this sequence, so output is reproducible byte for byte.

use crate::error::{Error, Result};

/// Hard default cap for exhaustive weak-order enumeration
/// (`ordered_bell(9)` is about 7.1 million).
pub const DEFAULT_WEAK_CAP: usize = 9;
/// Hard default cap for linear-order enumeration (`10!` is 3.6 million).
pub const DEFAULT_LINEAR_CAP: usize = 10;

/// An ordered partition of `{0, .., n-1}`; `blocks[0]` is the best block.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeakOrder {
    blocks: Vec<Vec<usize>>,
    rho: Vec<i64>,
}

impl WeakOrder {
    /// Builds an order from blocks (0-based alternative ids). The blocks
    /// must form a partition of `{0, .., n-1}`.
    pub fn from_blocks(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::BadParameter("empty block in weak order".into()));
            }
            for &i in b {
                if i >= n {
                    return Err(Error::BadIndex {
                        what: "alternative",
                        got: i + 1,
                        min: 1,
                        max: n,
                    });
                }
                if seen[i] {
                    return Err(Error::BadParameter(format!(
                        "alternative X{} occurs twice in the order",
                        i + 1
                    )));
                }
                seen[i] = true;
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::BadParameter(
                "order does not cover all alternatives".into(),
            ));
        }
        let mut blocks = blocks;
        for b in &mut blocks {
            b.sort_unstable();
        }
        let rho = rho_from_blocks(n, &blocks);
        Ok(WeakOrder { blocks, rho })
    }

    /// Builds an order from an assignment vector: `levels[i]` is the block
    /// of alternative `i`, `0` being the top block. Levels need not be
    /// contiguous; they are compacted.
    pub fn from_assignment(levels: &[usize]) -> Result<Self> {
        let n = levels.len();
        let mut distinct: Vec<usize> = levels.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let mut blocks = vec![Vec::new(); distinct.len()];
        for (i, &l) in levels.iter().enumerate() {
            let b = distinct.binary_search(&l).unwrap();
            blocks[b].push(i);
        }
        WeakOrder::from_blocks(n, blocks)
    }

    /// The linear order that ranks alternatives in the given sequence,
    /// best first (0-based ids).
    pub fn linear(sequence: &[usize]) -> Result<Self> {
        WeakOrder::from_blocks(
            sequence.len(),
            sequence.iter().map(|&i| vec![i]).collect(),
        )
    }

    /// The single-block order with every alternative tied.
    pub fn all_tied(n: usize) -> Self {
        let blocks = vec![(0..n).collect::<Vec<_>>()];
        let rho = vec![0; n];
        WeakOrder { blocks, rho }
    }

    pub fn n(&self) -> usize {
        self.rho.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn rho(&self) -> &[i64] {
        &self.rho
    }

    /// The Copeland index of alternative `i` in this order.
    pub fn copeland(&self, i: usize) -> Result<i64> {
        self.rho.get(i).copied().ok_or(Error::BadIndex {
            what: "alternative",
            got: i + 1,
            min: 1,
            max: self.n(),
        })
    }

    /// `X_i` strictly above `X_j`.
    pub fn prefers(&self, i: usize, j: usize) -> bool {
        self.rho[i] > self.rho[j]
    }

    /// `X_i` and `X_j` tied.
    pub fn tied(&self, i: usize, j: usize) -> bool {
        self.rho[i] == self.rho[j]
    }

    /// `X_i` at least as high as `X_j`.
    pub fn at_least(&self, i: usize, j: usize) -> bool {
        self.rho[i] >= self.rho[j]
    }

    /// True when every block is a singleton.
    pub fn is_linear(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    /// The order obtained by swapping the positions of alternatives `i`
    /// and `j`.
    pub fn interchange(&self, i: usize, j: usize) -> WeakOrder {
        let mut blocks = self.blocks.clone();
        for b in &mut blocks {
            for v in b.iter_mut() {
                if *v == i {
                    *v = j;
                } else if *v == j {
                    *v = i;
                }
            }
            b.sort_unstable();
        }
        let rho = rho_from_blocks(self.n(), &blocks);
        WeakOrder { blocks, rho }
    }

    /// Assignment vector: block index (from the top) per alternative.
    pub fn assignment(&self) -> Vec<usize> {
        let mut a = vec![0; self.n()];
        for (level, b) in self.blocks.iter().enumerate() {
            for &i in b {
                a[i] = level;
            }
        }
        a
    }

    /// Sum of squared Copeland indexes; equals `d_n_squared(n)` exactly
    /// when the order is linear.
    pub fn sum_rho_squares(&self) -> i64 {
        self.rho.iter().map(|&r| r * r).sum()
    }
}

impl std::fmt::Display for WeakOrder {
    /// Renders as `[X1] > [X2 X3] > [X4]` with 1-based labels.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for b in &self.blocks {
            if !first {
                write!(f, " > ")?;
            }
            first = false;
            write!(f, "[")?;
            for (idx, &i) in b.iter().enumerate() {
                if idx > 0 {
                    write!(f, " ")?;
                }
                write!(f, "X{}", i + 1)?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

fn rho_from_blocks(n: usize, blocks: &[Vec<usize>]) -> Vec<i64> {
    let mut rho = vec![0i64; n];
    let sizes: Vec<i64> = blocks.iter().map(|b| b.len() as i64).collect();
    let total: i64 = sizes.iter().sum();
    let mut above = 0i64;
    for (level, b) in blocks.iter().enumerate() {
        let below = total - above - sizes[level];
        for &i in b {
            rho[i] = below - above;
        }
        above += sizes[level];
    }
    rho
}

/// `D_n^2 = (n-1)n(n+1)/3`, the sum of squared Copeland indexes of any
/// linear order on `n` alternatives.
pub fn d_n_squared(n: usize) -> i64 {
    let n = n as i64;
    (n - 1) * n * (n + 1) / 3
}

/// Number of weak orders on `n` alternatives by the recurrence
/// `a(n) = sum_k C(n,k) a(n-k)`, `a(0) = 1`.
pub fn ordered_bell(n: usize) -> u64 {
    let mut a = vec![0u64; n + 1];
    a[0] = 1;
    for i in 1..=n {
        let mut binom = 1u64; // C(i, k) built incrementally
        for k in 1..=i {
            binom = binom * (i as u64 - k as u64 + 1) / k as u64;
            a[i] += binom * a[i - k];
        }
    }
    a[n]
}

/// Iterator over all weak orders on `n` alternatives in canonical sequence.
#[derive(Debug, Clone)]
pub struct WeakOrders {
    n: usize,
    k: usize,
    assignment: Vec<usize>,
    started: bool,
    done: bool,
    linear_only: bool,
}

/// All weak orders on `n` alternatives under the default cap.
pub fn weak_orders(n: usize) -> Result<WeakOrders> {
    weak_orders_with_cap(n, DEFAULT_WEAK_CAP)
}

/// All weak orders on `n` alternatives under an explicit cap.
pub fn weak_orders_with_cap(n: usize, cap: usize) -> Result<WeakOrders> {
    check_enum_domain(n, cap)?;
    Ok(WeakOrders {
        n,
        k: 1,
        assignment: vec![0; n],
        started: false,
        done: false,
        linear_only: false,
    })
}

/// All linear orders on `n` alternatives under the default cap.
pub fn linear_orders(n: usize) -> Result<WeakOrders> {
    linear_orders_with_cap(n, DEFAULT_LINEAR_CAP)
}

/// All linear orders on `n` alternatives under an explicit cap.
pub fn linear_orders_with_cap(n: usize, cap: usize) -> Result<WeakOrders> {
    check_enum_domain(n, cap)?;
    Ok(WeakOrders {
        n,
        k: n,
        assignment: vec![0; n],
        started: false,
        done: false,
        linear_only: true,
    })
}

fn check_enum_domain(n: usize, cap: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::BadIndex {
            what: "n",
            got: n,
            min: 2,
            max: cap,
        });
    }
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    Ok(())
}

impl WeakOrders {
    /// Lexicographically smallest surjective assignment onto `0..k`:
    /// zeros, then the forced tail `1, 2, .., k-1`.
    fn first_assignment(&mut self) {
        let (n, k) = (self.n, self.k);
        for i in 0..n {
            self.assignment[i] = (i + k).saturating_sub(n).min(k - 1);
        }
    }

    /// Advances `assignment` to the next surjective vector in lex order;
    /// returns false when the `k`-slice is exhausted.
    fn advance(&mut self) -> bool {
        let (n, k) = (self.n, self.k);
        let mut pos = n;
        while pos > 0 {
            pos -= 1;
            let current = self.assignment[pos];
            // values already used strictly before `pos`
            let mut used = vec![false; k];
            for &a in &self.assignment[..pos] {
                used[a] = true;
            }
            for v in current + 1..k {
                let mut missing = 0;
                for (val, &u) in used.iter().enumerate() {
                    if !u && val != v {
                        missing += 1;
                    }
                }
                let suffix = n - pos - 1;
                if missing <= suffix {
                    self.assignment[pos] = v;
                    // minimal completion: zeros, then the missing values
                    // in increasing order at the very end
                    let mut missing_vals: Vec<usize> = (0..k)
                        .filter(|&val| !used[val] && val != v)
                        .collect();
                    missing_vals.sort_unstable();
                    let free = suffix - missing_vals.len();
                    for (offset, slot) in (pos + 1..n).enumerate() {
                        self.assignment[slot] = if offset < free {
                            0
                        } else {
                            missing_vals[offset - free]
                        };
                    }
                    return true;
                }
            }
        }
        false
    }
}

impl Iterator for WeakOrders {
    type Item = WeakOrder;

    fn next(&mut self) -> Option<WeakOrder> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.first_assignment();
        } else if !self.advance() {
            if self.linear_only || self.k == self.n {
                self.done = true;
                return None;
            }
            self.k += 1;
            self.first_assignment();
        }
        Some(
            WeakOrder::from_assignment(&self.assignment)
                .expect("enumerated assignment is always valid"),
        )
    }
}
