//! The generalized row sum method and its continuous least-squares
//! counterpart.
//!
//! For a skew-symmetric array the generalized row sums `x_1..x_n` solve
//!
//! ```text
//! x_i = sum_{(k,p)|i} ( r_ik^p + eps * (x_k - x_i + r_ik^p * m * n) )
//! ```
//!
//! which rearranges to the strictly diagonally dominant linear system
//! `(I + eps L) x = (1 + eps m n) s`, where `L` is the Laplacian of the
//! comparison multigraph and `s` the plain row sums. The solve is exact
//! rational Gaussian elimination, so equal scores are exact ties and the
//! induced ranking feeds the axiom audits without tolerance questions.
//!
//! `relaxed_beta_ls` minimizes the same least-squares objective as the
//! discrete method but over the real sphere-and-hyperplane relaxation; it
//! reduces the problem to the zero-sum subspace and solves the boundary
//! trust-region (secular) equation through an eigendecomposition of the
//! multigraph Laplacian. This part is floating point by nature.

use nalgebra::{DMatrix, DVector};
use num_traits::{Signed, Zero};

use crate::comparisons::{ComparisonArray, Outcome};
use crate::error::{Error, Result};
use crate::orders::{d_n_squared, WeakOrder};
use crate::rational::{rat_int, to_f64, Rational};

/// Exact generalized row sums for one array and one epsilon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrsSolution {
    pub x: Vec<Rational>,
    pub epsilon: Rational,
    n: usize,
    m: usize,
}

/// Solution of the relaxed least-squares problem on the sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct RelaxedSolution {
    pub y: Vec<f64>,
    /// Multiplier of the sphere constraint at the solution.
    pub lambda: f64,
    pub objective: f64,
    /// Set when the array has no outcomes at all; every feasible point is
    /// then optimal and a canonical one is returned.
    pub degenerate: bool,
}

/// Largest reasonable epsilon, `1/(m(n-2))`. Reasonable means every
/// per-outcome contribution keeps the correct sign at maximal wins and
/// losses. Undefined for `n <= 2`.
pub fn reasonable_epsilon_max(n: usize, m: usize) -> Result<Rational> {
    if n <= 2 {
        return Err(Error::DegenerateN { n });
    }
    if m == 0 {
        return Err(Error::BadIndex {
            what: "m",
            got: 0,
            min: 1,
            max: usize::MAX,
        });
    }
    Ok(Rational::new(1.into(), (m as i64 * (n as i64 - 2)).into()))
}

/// Resolves an optional epsilon parameter: checks sign when given, falls
/// back to the reasonable maximum otherwise.
pub fn resolve_epsilon(array: &ComparisonArray, epsilon: Option<&Rational>) -> Result<Rational> {
    match epsilon {
        Some(e) => {
            if e.is_negative() {
                Err(Error::NegativeEpsilon)
            } else {
                Ok(e.clone())
            }
        }
        None => reasonable_epsilon_max(array.n(), array.m()),
    }
}

/// Solves the generalized row sum system exactly. The array must be
/// skew-symmetric; convert with [`build_skew_array`] first if it is not.
pub fn solve(array: &ComparisonArray, epsilon: &Rational) -> Result<GrsSolution> {
    if !array.skew_symmetric() {
        let bad = array
            .outcomes()
            .iter()
            .find(|o| o.backward != -o.forward.clone())
            .expect("non-skew array has a witness outcome");
        return Err(Error::NotSkewSymmetric {
            p: bad.individual + 1,
            i: bad.first + 1,
            j: bad.second + 1,
        });
    }
    if epsilon.is_negative() {
        return Err(Error::NegativeEpsilon);
    }

    let n = array.n();
    let m = array.m();
    // row sums s_i and comparison counts
    let mut s = vec![Rational::zero(); n];
    let mut counts = vec![0i64; n * n];
    for o in array.outcomes() {
        s[o.first] += o.forward.clone();
        s[o.second] += o.backward.clone();
        counts[o.first * n + o.second] += 1;
        counts[o.second * n + o.first] += 1;
    }

    // (I + eps L) x = (1 + eps m n) s
    let mut aug = vec![vec![Rational::zero(); n + 1]; n];
    for i in 0..n {
        let degree: i64 = (0..n).map(|k| counts[i * n + k]).sum();
        aug[i][i] = rat_int(1) + epsilon * rat_int(degree);
        for k in 0..n {
            if k != i && counts[i * n + k] != 0 {
                aug[i][k] = -(epsilon * rat_int(counts[i * n + k]));
            }
        }
        aug[i][n] = (rat_int(1) + epsilon * rat_int((m * n) as i64)) * s[i].clone();
    }

    let x = gaussian_elimination(&mut aug)?;
    Ok(GrsSolution {
        x,
        epsilon: epsilon.clone(),
        n,
        m,
    })
}

/// Exact Gaussian elimination with partial (first non-zero) pivoting on an
/// augmented `n x (n+1)` rational matrix.
fn gaussian_elimination(aug: &mut [Vec<Rational>]) -> Result<Vec<Rational>> {
    let n = aug.len();
    for col in 0..n {
        let pivot_row = (col..n)
            .find(|&r| !aug[r][col].is_zero())
            .ok_or_else(|| Error::BadParameter("singular system".into()))?;
        aug.swap(col, pivot_row);
        let pivot = aug[col][col].clone();
        for r in 0..n {
            if r == col || aug[r][col].is_zero() {
                continue;
            }
            let factor = aug[r][col].clone() / pivot.clone();
            for c in col..=n {
                let sub = factor.clone() * aug[col][c].clone();
                aug[r][c] -= sub;
            }
        }
    }
    Ok((0..n)
        .map(|i| aug[i][n].clone() / aug[i][i].clone())
        .collect())
}

impl GrsSolution {
    /// The contribution `f_ik^p = r_ik^p + eps (x_k - x_i + r_ik^p m n)` of
    /// one recorded outcome to the estimate of `X_i` (0-based indexes).
    pub fn contribution(
        &self,
        array: &ComparisonArray,
        i: usize,
        k: usize,
        p: usize,
    ) -> Result<Rational> {
        let r = array
            .value(p, i, k)
            .ok_or(Error::UndefinedOutcome {
                p: p + 1,
                i: i + 1,
                k: k + 1,
            })?
            .clone();
        let mn = rat_int((self.m * self.n) as i64);
        Ok(r.clone() + &self.epsilon * (self.x[k].clone() - self.x[i].clone() + r * mn))
    }
}

/// The weak order induced by the scores: blocks are the classes of equal
/// score, best score first.
pub fn ranking(solution: &GrsSolution) -> WeakOrder {
    ranking_from_scores(&solution.x)
}

/// Ranks indexes by exact score, grouping exact ties into blocks.
pub fn ranking_from_scores(x: &[Rational]) -> WeakOrder {
    let n = x.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| x[b].cmp(&x[a]).then(a.cmp(&b)));
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for i in idx {
        match blocks.last_mut() {
            Some(block) if x[block[0]] == x[i] => block.push(i),
            _ => blocks.push(vec![i]),
        }
    }
    WeakOrder::from_blocks(n, blocks).expect("score classes partition the alternatives")
}

/// The skew transform: replaces every outcome by `(r_ij^p - r_ji^p,
/// r_ji^p - r_ij^p)`. Bounds double in width and become symmetric; counts
/// and pairedness are untouched.
pub fn build_skew_array(array: &ComparisonArray) -> ComparisonArray {
    let width = array.r_max() - array.r_min();
    let mut outcomes = Vec::with_capacity(array.outcomes().len());
    for o in array.outcomes() {
        let diff = o.forward.clone() - o.backward.clone();
        outcomes.push(Outcome {
            individual: o.individual,
            first: o.first,
            second: o.second,
            forward: diff.clone(),
            backward: -diff,
        });
    }
    ComparisonArray::from_parts(
        array.n(),
        array.m(),
        -width.clone(),
        width,
        outcomes,
        true,
    )
}

// ---------------------------------------------------------------------------
// Relaxed least squares on the sphere
// ---------------------------------------------------------------------------

/// Minimizes `sum_(i,j,p) (r_ij^p - beta (y_i - y_j))^2` over real vectors
/// with `sum y_i = 0` and `sum y_i^2 = D_n^2`.
pub fn relaxed_beta_ls(array: &ComparisonArray, beta: &Rational) -> Result<RelaxedSolution> {
    if !beta.is_positive() {
        return Err(Error::MissingParameter {
            method: "relaxed_beta_ls",
            param: "beta > 0",
        });
    }
    let n = array.n();
    let beta = to_f64(beta);
    let d2 = d_n_squared(n) as f64;

    if array.outcomes().is_empty() {
        // every feasible point is optimal; return the canonical vertex
        let y: Vec<f64> = (0..n).map(|i| (n as f64 - 1.0) - 2.0 * i as f64).collect();
        return Ok(RelaxedSolution {
            y,
            lambda: 0.0,
            objective: 0.0,
            degenerate: true,
        });
    }

    // Laplacian of the comparison multigraph and the Copeland vector.
    let mut lap = DMatrix::<f64>::zeros(n, n);
    let mut t = DVector::<f64>::zeros(n);
    for o in array.outcomes() {
        let (i, j) = (o.first, o.second);
        lap[(i, j)] -= 1.0;
        lap[(j, i)] -= 1.0;
        lap[(i, i)] += 1.0;
        lap[(j, j)] += 1.0;
        let diff = to_f64(&o.forward) - to_f64(&o.backward);
        t[i] += diff;
        t[j] -= diff;
    }

    // Orthonormal basis of the zero-sum subspace (Helmert columns).
    let mut basis = DMatrix::<f64>::zeros(n, n - 1);
    for k in 1..n {
        let scale = 1.0 / ((k * (k + 1)) as f64).sqrt();
        for i in 0..k {
            basis[(i, k - 1)] = scale;
        }
        basis[(k, k - 1)] = -(k as f64) * scale;
    }

    let lap_sub = basis.transpose() * &lap * &basis;
    let t_sub = basis.transpose() * &t;

    let eigen = nalgebra::SymmetricEigen::new(lap_sub);
    let q = eigen.eigenvectors;
    let evals: Vec<f64> = eigen.eigenvalues.iter().map(|&v| v.max(0.0)).collect();
    let c = q.transpose() * &t_sub;

    // Stationarity: (2 beta^2 L - lambda I) y = beta t, i.e. in the
    // eigenbasis w_i = beta c_i / (d_i - lambda) with d_i = 2 beta^2 l_i.
    let d: Vec<f64> = evals.iter().map(|&l| 2.0 * beta * beta * l).collect();
    let a: Vec<f64> = c.iter().map(|&ci| (beta * ci) * (beta * ci)).collect();
    let d_min = d.iter().cloned().fold(f64::INFINITY, f64::min);
    let scale = d.iter().cloned().fold(1.0f64, f64::max);

    let norm2 = |lam: f64| -> f64 {
        d.iter()
            .zip(&a)
            .map(|(&di, &ai)| ai / ((di - lam) * (di - lam)))
            .sum()
    };
    let dnorm2 = |lam: f64| -> f64 {
        d.iter()
            .zip(&a)
            .map(|(&di, &ai)| 2.0 * ai / ((di - lam) * (di - lam) * (di - lam)))
            .sum()
    };

    // Energy of t along the minimal eigenspace decides between the regular
    // secular root and the hard case.
    let gap_tol = 1e-10 * scale.max(1.0);
    let a_min: f64 = d
        .iter()
        .zip(&a)
        .filter(|(&di, _)| di - d_min <= gap_tol)
        .map(|(_, &ai)| ai)
        .sum();
    let a_total: f64 = a.iter().sum();

    let mut lambda;
    let mut w = vec![0.0; n - 1];
    let hard_norm2: f64 = d
        .iter()
        .zip(&a)
        .filter(|(&di, _)| di - d_min > gap_tol)
        .map(|(&di, &ai)| ai / ((di - d_min) * (di - d_min)))
        .sum();

    if a_min <= 1e-24 * a_total.max(1e-300) && hard_norm2 <= d2 {
        // hard case: move along a minimal eigenvector to reach the sphere
        lambda = d_min;
        for (idx, (&di, &ai)) in d.iter().zip(&a).enumerate() {
            if di - d_min > gap_tol {
                w[idx] = ai.sqrt() * beta_sign(c[idx]) / (di - d_min);
            }
        }
        let missing = (d2 - hard_norm2).max(0.0).sqrt();
        let slot = d
            .iter()
            .position(|&di| di - d_min <= gap_tol)
            .expect("minimal eigenvalue exists");
        w[slot] += missing;
    } else {
        // regular case: the secular equation |w(lambda)|^2 = D^2 has a
        // unique root below d_min, where the norm is increasing in lambda
        let mut hi = d_min - 1e-14 * scale.max(1.0);
        let mut shrink = 0;
        while norm2(hi) < d2 && shrink < 200 {
            hi = d_min - (d_min - hi) / 4.0;
            shrink += 1;
        }
        let mut lo = d_min - (a_total.sqrt() / d2.sqrt() + scale + 1.0);
        let mut grow = 0;
        while norm2(lo) > d2 && grow < 200 {
            lo = d_min - 2.0 * (d_min - lo);
            grow += 1;
        }
        // safeguarded Newton on 1/D - 1/|w(lambda)|
        lambda = 0.5 * (lo + hi);
        for _ in 0..200 {
            let n2 = norm2(lambda);
            if n2 > d2 {
                hi = lambda;
            } else {
                lo = lambda;
            }
            if ((n2 - d2) / d2).abs() < 1e-14 {
                break;
            }
            let norm = n2.sqrt();
            let h = 1.0 / d2.sqrt() - 1.0 / norm;
            let hp = 0.5 * dnorm2(lambda) / (norm * norm * norm);
            let step = lambda - h / hp;
            lambda = if step > lo && step < hi {
                step
            } else {
                0.5 * (lo + hi)
            };
        }
        for (idx, (&di, &ai)) in d.iter().zip(&a).enumerate() {
            w[idx] = ai.sqrt() * beta_sign(c[idx]) / (di - lambda);
        }
    }

    let w_vec = DVector::from_vec(w);
    let y_sub = &q * w_vec;
    let y_full = &basis * y_sub;
    let y: Vec<f64> = y_full.iter().cloned().collect();

    // objective evaluated directly on the original data
    let mut objective = 0.0;
    for o in array.outcomes() {
        let diff = y[o.first] - y[o.second];
        let f = to_f64(&o.forward) - beta * diff;
        let b = to_f64(&o.backward) + beta * diff;
        objective += f * f + b * b;
    }

    Ok(RelaxedSolution {
        y,
        lambda,
        objective,
        degenerate: false,
    })
}

fn beta_sign(c: f64) -> f64 {
    if c >= 0.0 {
        1.0
    } else {
        -1.0
    }
}
