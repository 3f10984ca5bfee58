//! Objective functions of the discrete aggregation methods and the
//! exhaustive optimizer.
//!
//! Every method is evaluated with the revised structure functions, so the
//! same objective serves both the linear and the weak domain. All values
//! are exact rationals; the optimal set is the exact argmin/argmax over the
//! enumerated domain, listed in the canonical enumeration sequence.

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::comparisons::{AggregateMatrix, ComparisonArray};
use crate::error::{Error, Result};
use crate::grs;
use crate::orders::{
    linear_orders_with_cap, weak_orders_with_cap, WeakOrder, WeakOrders, DEFAULT_LINEAR_CAP,
    DEFAULT_WEAK_CAP,
};
use crate::rational::{format_rational, parse_rational, rat_int, Rational};
use crate::structfun::{PsiVariant, StructureFunction};

/// Search domain: all weak orders or all linear orders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Weak,
    Linear,
}

impl std::fmt::Display for Domain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Domain::Weak => write!(f, "weak"),
            Domain::Linear => write!(f, "linear"),
        }
    }
}

/// Optimization sense, fixed per method.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

/// Net-score clipping selector; turned into a concrete [`PsiVariant`] with
/// the bounds of the array being ranked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsiKind {
    Plus,
    Crow,
    Shifted,
}

impl PsiKind {
    pub fn instantiate(&self, array: &ComparisonArray) -> PsiVariant {
        match self {
            PsiKind::Plus => PsiVariant::Plus,
            PsiKind::Crow => PsiVariant::Crow {
                r_min: array.r_min().clone(),
                r_max: array.r_max().clone(),
            },
            PsiKind::Shifted => PsiVariant::Shifted {
                r_min: array.r_min().clone(),
                r_max: array.r_max().clone(),
            },
        }
    }
}

impl std::fmt::Display for PsiKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PsiKind::Plus => write!(f, "plus"),
            PsiKind::Crow => write!(f, "crow"),
            PsiKind::Shifted => write!(f, "shifted"),
        }
    }
}

/// The five wins-above/losses-below balance objectives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalbVariant {
    /// Raw scores, unweighted.
    Plain,
    /// Raw scores, each opponent weighted by `1/m_ij`.
    Refined,
    /// Net score differences.
    Net,
    /// Net score differences weighted by `1/m_ij`.
    NetRefined,
    /// Net score differences through the sixth structure function.
    NetDiff,
}

/// A method identifier with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Method {
    /// Assignment-form objective with the k-th revised structure function.
    Wqa { k: u8 },
    /// Sum of absolute deviations of individual values from the k-th
    /// revised structure function.
    Kemeny { k: u8 },
    /// Net sum of back scores.
    NetBack { psi: PsiKind },
    /// Wins-above/losses-below balances.
    Walb { variant: WalbVariant, psi: PsiKind },
    /// Least-squares fit of individual values to `beta`-scaled Copeland
    /// index differences.
    BetaLs { beta: Rational },
    /// Assignment objective built from generalized row sums; `None`
    /// parameters select the documented defaults.
    GrsQap {
        alpha: Option<Rational>,
        epsilon: Option<Rational>,
    },
    /// Direct generalized row sum scoring (not an optimization method).
    Grs { epsilon: Option<Rational> },
}

impl Method {
    pub fn sense(&self) -> Sense {
        match self {
            Method::Wqa { .. } | Method::NetBack { .. } | Method::GrsQap { .. } => Sense::Maximize,
            Method::Kemeny { .. } | Method::Walb { .. } | Method::BetaLs { .. } => Sense::Minimize,
            Method::Grs { .. } => Sense::Maximize,
        }
    }

    /// True for methods defined through an objective function over orders.
    pub fn is_objective(&self) -> bool {
        !matches!(self, Method::Grs { .. })
    }

    fn validate(&self) -> Result<()> {
        match self {
            Method::Wqa { k } if !(1..=6).contains(k) => Err(Error::BadIndex {
                what: "wqa index",
                got: *k as usize,
                min: 1,
                max: 6,
            }),
            Method::Kemeny { k } if !(1..=3).contains(k) => Err(Error::BadIndex {
                what: "kemeny index",
                got: *k as usize,
                min: 1,
                max: 3,
            }),
            Method::BetaLs { beta } if !beta.is_positive() => Err(Error::MissingParameter {
                method: "beta_ls",
                param: "beta > 0",
            }),
            Method::GrsQap {
                alpha: Some(alpha), ..
            } if !alpha.is_positive() => Err(Error::MissingParameter {
                method: "grs_qap",
                param: "alpha > 0",
            }),
            _ => Ok(()),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Method::Wqa { k } => write!(f, "wqa_{k}"),
            Method::Kemeny { k } => write!(f, "kemeny_{k}"),
            Method::NetBack { psi } => write!(f, "net_back[psi={psi}]"),
            Method::Walb { variant, psi } => match variant {
                WalbVariant::Plain => write!(f, "walb"),
                WalbVariant::Refined => write!(f, "walb_refined"),
                WalbVariant::Net => write!(f, "walb_net[psi={psi}]"),
                WalbVariant::NetRefined => write!(f, "walb_net_refined[psi={psi}]"),
                WalbVariant::NetDiff => write!(f, "walb_net_diff[psi={psi}]"),
            },
            Method::BetaLs { beta } => write!(f, "beta_ls[beta={}]", format_rational(beta)),
            Method::GrsQap { alpha, epsilon } => {
                write!(f, "grs_qap[")?;
                let mut sep = "";
                if let Some(a) = alpha {
                    write!(f, "alpha={}", format_rational(a))?;
                    sep = ",";
                }
                if let Some(e) = epsilon {
                    write!(f, "{sep}epsilon={}", format_rational(e))?;
                }
                write!(f, "]")
            }
            Method::Grs { epsilon } => match epsilon {
                Some(e) => write!(f, "grs[epsilon={}]", format_rational(e)),
                None => write!(f, "grs"),
            },
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    /// Parses the canonical form produced by `Display`, e.g.
    /// `wqa_4`, `net_back[psi=crow]`, `beta_ls[beta=1/2]`.
    fn from_str(s: &str) -> Result<Method> {
        let (name, args) = match s.split_once('[') {
            Some((n, rest)) => {
                let rest = rest
                    .strip_suffix(']')
                    .ok_or_else(|| Error::Parse(format!("unterminated arguments in {s:?}")))?;
                (n, Some(rest))
            }
            None => (s, None),
        };
        let mut psi = PsiKind::Plus;
        let mut beta = None;
        let mut alpha = None;
        let mut epsilon = None;
        if let Some(args) = args {
            for kv in args.split(',').filter(|a| !a.is_empty()) {
                let (key, value) = kv
                    .split_once('=')
                    .ok_or_else(|| Error::Parse(format!("bad argument {kv:?}")))?;
                match key.trim() {
                    "psi" => {
                        psi = match value.trim() {
                            "plus" => PsiKind::Plus,
                            "crow" => PsiKind::Crow,
                            "shifted" => PsiKind::Shifted,
                            other => {
                                return Err(Error::Parse(format!("unknown psi variant {other:?}")))
                            }
                        }
                    }
                    "beta" => beta = Some(parse_rational(value)?),
                    "alpha" => alpha = Some(parse_rational(value)?),
                    "epsilon" => epsilon = Some(parse_rational(value)?),
                    other => return Err(Error::Parse(format!("unknown argument {other:?}"))),
                }
            }
        }
        let method = match name.trim() {
            "wqa_1" => Method::Wqa { k: 1 },
            "wqa_2" => Method::Wqa { k: 2 },
            "wqa_3" => Method::Wqa { k: 3 },
            "wqa_4" => Method::Wqa { k: 4 },
            "wqa_5" => Method::Wqa { k: 5 },
            "wqa_6" => Method::Wqa { k: 6 },
            "kemeny_1" => Method::Kemeny { k: 1 },
            "kemeny_2" => Method::Kemeny { k: 2 },
            "kemeny_3" => Method::Kemeny { k: 3 },
            "net_back" => Method::NetBack { psi },
            "walb" => Method::Walb {
                variant: WalbVariant::Plain,
                psi,
            },
            "walb_refined" => Method::Walb {
                variant: WalbVariant::Refined,
                psi,
            },
            "walb_net" => Method::Walb {
                variant: WalbVariant::Net,
                psi,
            },
            "walb_net_refined" => Method::Walb {
                variant: WalbVariant::NetRefined,
                psi,
            },
            "walb_net_diff" => Method::Walb {
                variant: WalbVariant::NetDiff,
                psi,
            },
            "beta_ls" => Method::BetaLs {
                beta: beta.ok_or(Error::MissingParameter {
                    method: "beta_ls",
                    param: "beta",
                })?,
            },
            "grs_qap" => Method::GrsQap { alpha, epsilon },
            "grs" => Method::Grs { epsilon },
            other => return Err(Error::Parse(format!("unknown method {other:?}"))),
        };
        method.validate()?;
        Ok(method)
    }
}

/// A method together with the search domain.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodSpec {
    pub method: Method,
    pub domain: Domain,
}

impl MethodSpec {
    pub fn new(method: Method, domain: Domain) -> Self {
        MethodSpec { method, domain }
    }

    pub fn weak(method: Method) -> Self {
        Self::new(method, Domain::Weak)
    }

    pub fn linear(method: Method) -> Self {
        Self::new(method, Domain::Linear)
    }
}

/// Enumeration caps and the worker count for the optimizer.
#[derive(Debug, Clone)]
pub struct OptimizeOptions {
    pub weak_cap: usize,
    pub linear_cap: usize,
    /// Number of parallel evaluation workers; results are identical for
    /// every value.
    pub jobs: usize,
}

impl Default for OptimizeOptions {
    fn default() -> Self {
        OptimizeOptions {
            weak_cap: DEFAULT_WEAK_CAP,
            linear_cap: DEFAULT_LINEAR_CAP,
            jobs: 1,
        }
    }
}

/// The exact optimal objective value and every order attaining it, in
/// canonical enumeration sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimalSet {
    pub value: Rational,
    pub orders: Vec<WeakOrder>,
}

/// Result of ranking by any method: an optimal set for objective methods,
/// the scored ranking for direct scoring.
#[derive(Debug, Clone, PartialEq)]
pub enum RankResult {
    Optima(OptimalSet),
    Scores {
        x: Vec<Rational>,
        epsilon: Rational,
        order: WeakOrder,
    },
}

impl RankResult {
    /// The orders an axiom audit has to inspect.
    pub fn orders(&self) -> Vec<WeakOrder> {
        match self {
            RankResult::Optima(set) => set.orders.clone(),
            RankResult::Scores { order, .. } => vec![order.clone()],
        }
    }
}

// ---------------------------------------------------------------------------
// Objective functions
// ---------------------------------------------------------------------------

fn int(v: i64) -> Rational {
    rat_int(v)
}

/// Assignment-form objective `sum_ij r_ij C'_k(rho_i, rho_j)` (maximized).
pub fn wqa_objective(agg: &AggregateMatrix, k: u8, order: &WeakOrder) -> Rational {
    let c = StructureFunction::revised(k).expect("k in 1..=6");
    let n = agg.n();
    let rho = order.rho();
    let mut sum = Rational::zero();
    for i in 0..n {
        for j in 0..n {
            if i == j || agg.count(i, j) == 0 {
                continue;
            }
            let w = c.eval(rho[i], rho[j]);
            if w != 0 && !agg.r(i, j).is_zero() {
                sum += agg.r(i, j) * int(w);
            }
        }
    }
    sum
}

/// Deviation objective `sum_(i,j,p) |r_ij^p - C'_k(rho_i, rho_j)|`
/// (minimized). Both directions of every recorded outcome contribute, since
/// both entries are defined in the array.
pub fn kemeny_objective(array: &ComparisonArray, k: u8, order: &WeakOrder) -> Rational {
    let c = StructureFunction::revised(k).expect("k in 1..=3");
    let rho = order.rho();
    let mut sum = Rational::zero();
    for o in array.outcomes() {
        let forward = int(c.eval(rho[o.first], rho[o.second]));
        let backward = int(c.eval(rho[o.second], rho[o.first]));
        sum += (o.forward.clone() - forward).abs();
        sum += (o.backward.clone() - backward).abs();
    }
    sum
}

/// Net sum of back scores `sum_i sum_{j: m_ij>0} psi(r_ij - r_ji)
/// C'_3(rho_i, rho_j)` (maximized).
pub fn net_back_objective(agg: &AggregateMatrix, psi: &PsiVariant, order: &WeakOrder) -> Rational {
    let c3 = StructureFunction::revised(3).expect("valid index");
    let n = agg.n();
    let rho = order.rho();
    let mut sum = Rational::zero();
    for i in 0..n {
        for j in 0..n {
            if i == j || agg.count(i, j) == 0 {
                continue;
            }
            let net = agg.r(i, j) - agg.r(j, i);
            sum += psi.eval(&net) * int(c3.eval(rho[i], rho[j]));
        }
    }
    sum
}

/// Per-alternative absolute balance of wins above and losses below
/// (minimized). The refined variants weight each opponent by `1/m_ij`; the
/// net variants clip score differences through `psi`; the net-difference
/// variant replaces the third structure function by the sixth.
pub fn walb_objective(
    variant: WalbVariant,
    agg: &AggregateMatrix,
    psi: &PsiVariant,
    order: &WeakOrder,
) -> Rational {
    let c = match variant {
        WalbVariant::NetDiff => StructureFunction::revised(6),
        _ => StructureFunction::revised(3),
    }
    .expect("valid index");
    let refined = matches!(variant, WalbVariant::Refined | WalbVariant::NetRefined);
    let net = matches!(
        variant,
        WalbVariant::Net | WalbVariant::NetRefined | WalbVariant::NetDiff
    );
    let n = agg.n();
    let rho = order.rho();
    let mut sum = Rational::zero();
    for i in 0..n {
        let mut balance = Rational::zero();
        for j in 0..n {
            if i == j || agg.count(i, j) == 0 {
                continue;
            }
            let own = int(c.eval(rho[i], rho[j]));
            let other = int(c.eval(rho[j], rho[i]));
            let mut term = if net {
                let forward = agg.r(i, j) - agg.r(j, i);
                let backward = agg.r(j, i) - agg.r(i, j);
                psi.eval(&forward) * own - psi.eval(&backward) * other
            } else {
                agg.r(i, j) * own - agg.r(j, i) * other
            };
            if refined {
                term /= int(agg.count(i, j) as i64);
            }
            balance += term;
        }
        sum += balance.abs();
    }
    sum
}

/// Least-squares objective `sum_(i,j,p) (r_ij^p - beta (rho_i - rho_j))^2`
/// (minimized).
pub fn beta_ls_objective(array: &ComparisonArray, beta: &Rational, order: &WeakOrder) -> Rational {
    let rho = order.rho();
    let mut sum = Rational::zero();
    for o in array.outcomes() {
        let d = int(rho[o.first] - rho[o.second]);
        let f = o.forward.clone() - beta * d.clone();
        let b = o.backward.clone() + beta * d;
        sum += f.clone() * f + b.clone() * b;
    }
    sum
}

/// Score-based assignment objective `sum_i (x_i rho_i - alpha rho_i^2)`
/// (maximized); the quadratic term makes equal scores prefer ties.
pub fn grs_qap_objective(x: &[Rational], alpha: &Rational, order: &WeakOrder) -> Rational {
    let rho = order.rho();
    let mut sum = Rational::zero();
    for (xi, &r) in x.iter().zip(rho) {
        sum += xi * int(r) - alpha * int(r * r);
    }
    sum
}

/// The documented default `alpha = 1/(4 n^2 (1 + max_i |x_i|))`, small
/// enough that tie formation can only dominate among equal scores.
pub fn default_alpha(x: &[Rational]) -> Rational {
    let n = x.len() as i64;
    let max_abs = x
        .iter()
        .map(|v| v.abs())
        .max()
        .unwrap_or_else(Rational::zero);
    let one = int(1);
    one.clone() / (int(4 * n * n) * (one + max_abs))
}

// ---------------------------------------------------------------------------
// Exhaustive optimization
// ---------------------------------------------------------------------------

enum Evaluator<'a> {
    Wqa {
        agg: AggregateMatrix,
        k: u8,
    },
    Kemeny {
        array: &'a ComparisonArray,
        k: u8,
    },
    NetBack {
        agg: AggregateMatrix,
        psi: PsiVariant,
    },
    Walb {
        variant: WalbVariant,
        agg: AggregateMatrix,
        psi: PsiVariant,
    },
    BetaLs {
        // expanded form: sum r^2 - 2 beta rho.t + beta^2 sum m_ij (rho_i - rho_j)^2
        constant: Rational,
        t: Vec<Rational>,
        counts: Vec<i64>,
        n: usize,
        beta: Rational,
        beta_sq: Rational,
    },
    GrsQap {
        x: Vec<Rational>,
        alpha: Rational,
    },
}

impl Evaluator<'_> {
    fn eval(&self, order: &WeakOrder) -> Rational {
        match self {
            Evaluator::Wqa { agg, k } => wqa_objective(agg, *k, order),
            Evaluator::Kemeny { array, k } => kemeny_objective(array, *k, order),
            Evaluator::NetBack { agg, psi } => net_back_objective(agg, psi, order),
            Evaluator::Walb { variant, agg, psi } => walb_objective(*variant, agg, psi, order),
            Evaluator::BetaLs {
                constant,
                t,
                counts,
                n,
                beta,
                beta_sq,
            } => {
                let rho = order.rho();
                let mut quad = 0i64;
                for i in 0..*n {
                    for j in (i + 1)..*n {
                        let d = rho[i] - rho[j];
                        quad += 2 * counts[i * n + j] * d * d;
                    }
                }
                let dot: Rational = t
                    .iter()
                    .zip(rho)
                    .filter(|(ti, _)| !ti.is_zero())
                    .map(|(ti, &r)| ti * int(r))
                    .sum();
                constant.clone() - int(2) * beta * dot + beta_sq * int(quad)
            }
            Evaluator::GrsQap { x, alpha } => grs_qap_objective(x, alpha, order),
        }
    }
}

fn build_evaluator<'a>(method: &Method, array: &'a ComparisonArray) -> Result<Evaluator<'a>> {
    method.validate()?;
    Ok(match method {
        Method::Wqa { k } => Evaluator::Wqa {
            agg: array.aggregate(),
            k: *k,
        },
        Method::Kemeny { k } => Evaluator::Kemeny { array, k: *k },
        Method::NetBack { psi } => Evaluator::NetBack {
            agg: array.aggregate(),
            psi: psi.instantiate(array),
        },
        Method::Walb { variant, psi } => Evaluator::Walb {
            variant: *variant,
            agg: array.aggregate(),
            psi: psi.instantiate(array),
        },
        Method::BetaLs { beta } => {
            // the objective expands into a constant, a Copeland dot product
            // and a pure rank-distance term; the direct per-outcome form is
            // beta_ls_objective, tested to agree
            let n = array.n();
            let mut constant = Rational::zero();
            let mut counts = vec![0i64; n * n];
            for o in array.outcomes() {
                constant += o.forward.clone() * o.forward.clone()
                    + o.backward.clone() * o.backward.clone();
                counts[o.first * n + o.second] += 1;
                counts[o.second * n + o.first] += 1;
            }
            Evaluator::BetaLs {
                constant,
                t: array.copeland().t,
                counts,
                n,
                beta: beta.clone(),
                beta_sq: beta * beta,
            }
        }
        Method::GrsQap { alpha, epsilon } => {
            let eps = grs::resolve_epsilon(array, epsilon.as_ref())?;
            let solution = grs::solve(array, &eps)?;
            let alpha = match alpha {
                Some(a) => a.clone(),
                None => default_alpha(&solution.x),
            };
            Evaluator::GrsQap {
                x: solution.x,
                alpha,
            }
        }
        Method::Grs { .. } => {
            return Err(Error::BadParameter(
                "grs is a direct scoring method; use rank() or grs::solve".into(),
            ))
        }
    })
}

fn domain_iter(domain: Domain, n: usize, opts: &OptimizeOptions) -> Result<WeakOrders> {
    match domain {
        Domain::Weak => weak_orders_with_cap(n, opts.weak_cap),
        Domain::Linear => linear_orders_with_cap(n, opts.linear_cap),
    }
}

/// Finds the exact optimal set of `spec` by exhaustive enumeration with
/// default options.
pub fn optimize(spec: &MethodSpec, array: &ComparisonArray) -> Result<OptimalSet> {
    optimize_with(spec, array, &OptimizeOptions::default())
}

/// Finds the exact optimal set of `spec` by exhaustive enumeration.
pub fn optimize_with(
    spec: &MethodSpec,
    array: &ComparisonArray,
    opts: &OptimizeOptions,
) -> Result<OptimalSet> {
    let evaluator = build_evaluator(&spec.method, array)?;
    let sense = spec.method.sense();
    let iter = domain_iter(spec.domain, array.n(), opts)?;

    let better = |candidate: &Rational, incumbent: &Rational| match sense {
        Sense::Maximize => candidate > incumbent,
        Sense::Minimize => candidate < incumbent,
    };

    let mut best: Option<Rational> = None;
    let mut orders: Vec<WeakOrder> = Vec::new();
    let mut absorb = |order: WeakOrder, value: Rational| match &best {
        Some(v) if better(&value, v) => {
            best = Some(value);
            orders.clear();
            orders.push(order);
        }
        Some(v) if value == *v => orders.push(order),
        Some(_) => {}
        None => {
            best = Some(value);
            orders.push(order);
        }
    };

    if opts.jobs <= 1 {
        for order in iter {
            let value = evaluator.eval(&order);
            absorb(order, value);
        }
    } else {
        // Chunked evaluation: workers only compute values, the fold below
        // consumes chunks in stream order, so the result is independent of
        // the worker count.
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::BadParameter(format!("thread pool: {e}")))?;
        const CHUNK: usize = 4096;
        let mut iter = iter.peekable();
        let mut buf: Vec<WeakOrder> = Vec::with_capacity(CHUNK);
        while iter.peek().is_some() {
            buf.clear();
            while buf.len() < CHUNK {
                match iter.next() {
                    Some(o) => buf.push(o),
                    None => break,
                }
            }
            let values: Vec<Rational> =
                pool.install(|| buf.par_iter().map(|o| evaluator.eval(o)).collect());
            for (order, value) in buf.drain(..).zip(values) {
                absorb(order, value);
            }
        }
    }

    Ok(OptimalSet {
        value: best.expect("domains contain at least one order"),
        orders,
    })
}

/// Ranks by any method: exhaustive optimization for objective methods, a
/// generalized-row-sum solve for direct scoring.
pub fn rank(
    spec: &MethodSpec,
    array: &ComparisonArray,
    opts: &OptimizeOptions,
) -> Result<RankResult> {
    match &spec.method {
        Method::Grs { epsilon } => {
            let eps = grs::resolve_epsilon(array, epsilon.as_ref())?;
            let solution = grs::solve(array, &eps)?;
            let order = grs::ranking(&solution);
            Ok(RankResult::Scores {
                x: solution.x,
                epsilon: eps,
                order,
            })
        }
        _ => Ok(RankResult::Optima(optimize_with(spec, array, opts)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comparisons::ArrayBuilder;
    use crate::rational::{rat, rat_int};

    fn fig1() -> ComparisonArray {
        ArrayBuilder::dichotomous(4, 2, rat_int(1))
            .max_win(1, 2, 4)
            .max_win(1, 3, 4)
            .max_win(2, 1, 3)
            .build()
            .unwrap()
    }

    fn fig_a3() -> ComparisonArray {
        ArrayBuilder::dichotomous(4, 1, rat_int(1))
            .max_win(1, 1, 3)
            .max_win(1, 3, 4)
            .max_win(1, 2, 4)
            .build()
            .unwrap()
    }

    fn fig_a4() -> ComparisonArray {
        ArrayBuilder::dichotomous(3, 1, rat_int(1))
            .max_win(1, 1, 2)
            .max_win(1, 1, 3)
            .build()
            .unwrap()
    }

    #[test]
    fn wqa4_equals_rho_dot_t() {
        let a = fig1();
        let agg = a.aggregate();
        let t = a.copeland();
        for order in crate::orders::weak_orders(4).unwrap() {
            let direct = wqa_objective(&agg, 4, &order);
            let via_t: Rational = (0..4)
                .map(|i| t.t(i) * rat_int(order.rho()[i]))
                .sum();
            assert_eq!(direct, via_t);
        }
        let best = WeakOrder::linear(&[0, 1, 2, 3]).unwrap();
        assert_eq!(wqa_objective(&agg, 4, &best), rat_int(20));
    }

    #[test]
    fn wqa1_vanishes_on_ties() {
        let a = fig1();
        let agg = a.aggregate();
        assert_eq!(
            wqa_objective(&agg, 1, &WeakOrder::all_tied(4)),
            rat_int(0)
        );
    }

    #[test]
    fn kemeny_perfect_and_reversed() {
        let a = ArrayBuilder::dichotomous(2, 1, rat_int(1))
            .outcome(1, 1, 2, rat_int(1), rat_int(-1))
            .build()
            .unwrap();
        let forward = WeakOrder::linear(&[0, 1]).unwrap();
        let reversed = WeakOrder::linear(&[1, 0]).unwrap();
        assert_eq!(kemeny_objective(&a, 1, &forward), rat_int(0));
        assert_eq!(kemeny_objective(&a, 1, &reversed), rat_int(4));
    }

    #[test]
    fn kemeny_cycle_over_linear_orders() {
        // every discordant +-1 arc costs 4; linear orders on the 3-cycle
        // leave one or two arcs discordant, so the values are 4 and 8 and
        // the three rotations aligned with the cycle are optimal
        let a = ArrayBuilder::dichotomous(3, 1, rat_int(1))
            .max_win(1, 1, 2)
            .max_win(1, 2, 3)
            .max_win(1, 3, 1)
            .build()
            .unwrap();
        let values: Vec<Rational> = crate::orders::linear_orders(3)
            .unwrap()
            .map(|o| kemeny_objective(&a, 1, &o))
            .collect();
        assert!(values.iter().all(|v| *v == rat_int(4) || *v == rat_int(8)));

        let spec = MethodSpec::linear(Method::Kemeny { k: 1 });
        let set = optimize(&spec, &a).unwrap();
        assert_eq!(set.value, rat_int(4));
        let got: Vec<String> = set.orders.iter().map(|o| o.to_string()).collect();
        assert_eq!(
            got,
            vec![
                "[X1] > [X2] > [X3]",
                "[X3] > [X1] > [X2]",
                "[X2] > [X3] > [X1]",
            ]
        );
    }

    #[test]
    fn net_back_all_tied_and_concordant() {
        let a = fig1();
        let agg = a.aggregate();
        let psi = PsiVariant::Plus;
        // all-tied: every compared ordered pair contributes -psi(net)
        let tied = net_back_objective(&agg, &psi, &WeakOrder::all_tied(4));
        assert_eq!(tied, rat_int(-6)); // three arcs, net 2 each, one direction positive
        let best = WeakOrder::linear(&[0, 1, 2, 3]).unwrap();
        assert_eq!(net_back_objective(&agg, &psi, &best), rat_int(0));
    }

    #[test]
    fn walb_net_diff_equalizes_interchange_on_fig_a3() {
        let a = fig_a3();
        let agg = a.aggregate();
        let psi = PsiVariant::Plus;
        let rho = WeakOrder::linear(&[0, 1, 2, 3]).unwrap();
        let swapped = rho.interchange(0, 1);
        let v1 = walb_objective(WalbVariant::NetDiff, &agg, &psi, &rho);
        let v2 = walb_objective(WalbVariant::NetDiff, &agg, &psi, &swapped);
        assert_eq!(v1, rat_int(0));
        assert_eq!(v2, rat_int(0));
    }

    #[test]
    fn psi_variant_distinguishes_net_draw_from_no_comparison() {
        // X1 and X2 fight to a draw; X1 and X3 are never compared
        let a = ArrayBuilder::dichotomous(3, 1, rat_int(1))
            .outcome(1, 1, 2, rat_int(0), rat_int(0))
            .build()
            .unwrap();
        let agg = a.aggregate();
        let order = WeakOrder::linear(&[1, 0, 2]).unwrap(); // X2 > X1 > X3

        // the plain positive part sees nothing
        let plus = net_back_objective(&agg, &PsiVariant::Plus, &order);
        assert_eq!(plus, rat_int(0));

        // the draw-aware variant charges psi(0) = 1 against the direction
        // ranked below: C'3(rho_1, rho_2) = -2, C'3(rho_2, rho_1) = 0
        let crow = PsiKind::Crow.instantiate(&a);
        let val = net_back_objective(&agg, &crow, &order);
        assert_eq!(val, rat_int(-2));

        // an uncompared pair contributes nothing under either variant
        let b = ArrayBuilder::dichotomous(3, 1, rat_int(1)).build().unwrap();
        assert_eq!(
            net_back_objective(&b.aggregate(), &crow, &order),
            rat_int(0)
        );
    }

    #[test]
    fn grs_qap_tie_threshold_found_by_brute_force() {
        // for x = (2, 0, -2) the strict order stays uniquely optimal for
        // every alpha below 1 and loses uniqueness exactly at 1
        let x = vec![rat_int(2), rat_int(0), rat_int(-2)];
        let strict = WeakOrder::linear(&[0, 1, 2]).unwrap();
        let optimum = |alpha: &Rational| -> Vec<WeakOrder> {
            let mut best: Option<Rational> = None;
            let mut arg = Vec::new();
            for o in crate::orders::weak_orders(3).unwrap() {
                let v = grs_qap_objective(&x, alpha, &o);
                match &best {
                    Some(b) if v > *b => {
                        best = Some(v);
                        arg = vec![o];
                    }
                    Some(b) if v == *b => arg.push(o),
                    Some(_) => {}
                    None => {
                        best = Some(v);
                        arg = vec![o];
                    }
                }
            }
            arg
        };
        for alpha in [rat(1, 100), rat(1, 2), rat(99, 100)] {
            assert_eq!(optimum(&alpha), vec![strict.clone()]);
        }
        assert!(optimum(&rat_int(1)).len() > 1, "threshold is exactly 1");
        assert!(default_alpha(&x) < rat_int(1));
    }

    #[test]
    fn walb_balanced_symmetric_array_is_zero() {
        // two voters with opposite preferences cancel exactly
        let a = ArrayBuilder::dichotomous(3, 2, rat_int(1))
            .max_win(1, 1, 2)
            .max_win(2, 2, 1)
            .build()
            .unwrap();
        let agg = a.aggregate();
        let psi = PsiVariant::Plus;
        for order in crate::orders::weak_orders(3).unwrap() {
            assert_eq!(
                walb_objective(WalbVariant::Net, &agg, &psi, &order),
                rat_int(0)
            );
        }
    }

    #[test]
    fn beta_ls_exact_fit_and_empty() {
        let beta = rat(1, 2);
        let a = ArrayBuilder::new(2, 1, rat_int(-2), rat_int(2))
            .outcome(1, 1, 2, rat_int(1), rat_int(-1))
            .build()
            .unwrap();
        // rho difference is 2, beta * 2 = 1 = r_12: exact fit
        let order = WeakOrder::linear(&[0, 1]).unwrap();
        assert_eq!(beta_ls_objective(&a, &beta, &order), rat_int(0));

        let empty = ArrayBuilder::dichotomous(3, 1, rat_int(1)).build().unwrap();
        for o in crate::orders::weak_orders(3).unwrap() {
            assert_eq!(beta_ls_objective(&empty, &rat_int(1), &o), rat_int(0));
        }
    }

    #[test]
    fn beta_ls_expansion_agrees_with_direct_sum() {
        // the optimizer evaluates the expanded form; it must agree with the
        // definitional per-outcome sum everywhere, including non-skew data
        let skew = fig_a3();
        let nonskew = ArrayBuilder::new(4, 2, rat_int(0), rat_int(2))
            .outcome(1, 1, 2, rat_int(2), rat_int(0))
            .outcome(1, 3, 4, rat_int(1), rat_int(1))
            .outcome(2, 1, 4, rat_int(0), rat_int(2))
            .build()
            .unwrap();
        for array in [&skew, &nonskew] {
            for beta in [rat(1, 2), rat_int(1), rat(3, 2)] {
                let method = Method::BetaLs { beta: beta.clone() };
                let eval = build_evaluator(&method, array).unwrap();
                for order in crate::orders::weak_orders(4).unwrap() {
                    assert_eq!(eval.eval(&order), beta_ls_objective(array, &beta, &order));
                }
            }
        }
    }

    #[test]
    fn grs_qap_prefers_ties_among_equal_scores() {
        let x = vec![rat_int(2), rat_int(-1), rat_int(-1)];
        let alpha = default_alpha(&x);
        let spec = MethodSpec::weak(Method::GrsQap {
            alpha: Some(alpha.clone()),
            epsilon: Some(rat_int(1)),
        });
        let set = optimize(&spec, &fig_a4()).unwrap();
        assert_eq!(set.orders.len(), 1);
        assert_eq!(set.orders[0].to_string(), "[X1] > [X2 X3]");

        // brute-force cross-check of the objective itself
        let mut best: Option<(Rational, WeakOrder)> = None;
        for o in crate::orders::weak_orders(3).unwrap() {
            let v = grs_qap_objective(&x, &alpha, &o);
            if best.as_ref().map(|(b, _)| v > *b).unwrap_or(true) {
                best = Some((v, o));
            }
        }
        assert_eq!(best.unwrap().1.to_string(), "[X1] > [X2 X3]");
    }

    #[test]
    fn grs_qap_all_equal_scores_tie_everything() {
        let x = vec![rat_int(3); 4];
        let alpha = default_alpha(&x);
        let mut best: Option<(Rational, WeakOrder)> = None;
        for o in crate::orders::weak_orders(4).unwrap() {
            let v = grs_qap_objective(&x, &alpha, &o);
            if best.as_ref().map(|(b, _)| v > *b).unwrap_or(true) {
                best = Some((v, o));
            }
        }
        assert_eq!(best.unwrap().1, WeakOrder::all_tied(4));
    }

    #[test]
    fn slater_like_optimum_on_fig1() {
        let spec = MethodSpec::linear(Method::Wqa { k: 2 });
        let set = optimize(&spec, &fig1()).unwrap();
        let got: Vec<String> = set.orders.iter().map(|o| o.to_string()).collect();
        assert_eq!(
            got,
            vec![
                "[X1] > [X2] > [X3] > [X4]",
                "[X1] > [X3] > [X2] > [X4]",
                "[X2] > [X1] > [X3] > [X4]",
            ]
        );
    }

    #[test]
    fn copeland_optimum_over_weak_orders_on_fig1() {
        let spec = MethodSpec::weak(Method::Wqa { k: 4 });
        let set = optimize(&spec, &fig1()).unwrap();
        assert_eq!(set.orders.len(), 3);
        for o in &set.orders {
            // {X1, X2} in any relation, above X3, above X4
            assert!(o.prefers(0, 2) && o.prefers(1, 2) && o.prefers(2, 3));
        }
    }

    #[test]
    fn empty_array_makes_every_order_optimal() {
        let empty = ArrayBuilder::dichotomous(3, 1, rat_int(1)).build().unwrap();
        let spec = MethodSpec::weak(Method::Kemeny { k: 1 });
        let set = optimize(&spec, &empty).unwrap();
        assert_eq!(set.orders.len() as u64, crate::orders::ordered_bell(3));
    }

    #[test]
    fn linear_domain_never_returns_ties() {
        let spec = MethodSpec::linear(Method::Wqa { k: 4 });
        let set = optimize(&spec, &fig1()).unwrap();
        assert!(set.orders.iter().all(|o| o.is_linear()));
    }

    #[test]
    fn parallel_result_matches_sequential() {
        let spec = MethodSpec::weak(Method::Kemeny { k: 2 });
        let seq = optimize(&spec, &fig_a3()).unwrap();
        for jobs in [2, 3, 7] {
            let par = optimize_with(
                &spec,
                &fig_a3(),
                &OptimizeOptions {
                    jobs,
                    ..OptimizeOptions::default()
                },
            )
            .unwrap();
            assert_eq!(seq, par);
        }
    }

    #[test]
    fn method_string_round_trip() {
        let methods = [
            "wqa_4",
            "kemeny_2",
            "net_back[psi=crow]",
            "walb",
            "walb_refined",
            "walb_net[psi=plus]",
            "walb_net_refined[psi=shifted]",
            "walb_net_diff[psi=plus]",
            "beta_ls[beta=1/2]",
            "grs_qap[alpha=1/108,epsilon=1/4]",
            "grs[epsilon=1]",
            "grs",
        ];
        for s in methods {
            let m: Method = s.parse().unwrap();
            assert_eq!(m.to_string(), s);
        }
        assert!("wqa_7".parse::<Method>().is_err());
        assert!("beta_ls".parse::<Method>().is_err());
        assert!("beta_ls[beta=0]".parse::<Method>().is_err());
    }

    #[test]
    fn cap_exceeded_propagates() {
        let a = ArrayBuilder::dichotomous(5, 1, rat_int(1)).build().unwrap();
        let spec = MethodSpec::weak(Method::Wqa { k: 1 });
        let err = optimize_with(
            &spec,
            &a,
            &OptimizeOptions {
                weak_cap: 4,
                ..OptimizeOptions::default()
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }
}
