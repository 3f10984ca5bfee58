//! Theorem verification suites and the seeded random-array generators
//! behind them.
//!
//! Every suite re-derives a claim about the methods from scratch, by
//! exhaustive optimization and independent oracles, and reports one line
//! per checked instance. Seeds are fixed constants so runs are
//! reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::axioms::{
    audit_operator, audit_order, indifference_check, operator_passes, AuditOptions, Axiom,
};
use crate::comparisons::{ArrayBuilder, ComparisonArray};
use crate::error::{Error, Result};
use crate::fixtures::{make_fixture, Fixture, FixtureName};
use crate::grs;
use crate::objectives::{
    beta_ls_objective, optimize, Method, MethodSpec, OptimizeOptions, PsiKind, WalbVariant,
};
use crate::orders::{d_n_squared, weak_orders, WeakOrder};
use crate::rational::{format_rational, rat, rat_int, to_f64, Rational};

/// Seeded generators for the random test corpora.
pub mod random {
    use super::*;

    /// A random skew-symmetric array with values in `{-1, 0, 1}` and
    /// bounds `[-1, 1]`. Each (individual, pair) slot is filled with
    /// probability `density_pct / 100`.
    pub fn skew_array(seed: u64, n: usize, m: usize, density_pct: u32) -> ComparisonArray {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut builder = ArrayBuilder::dichotomous(n, m, rat_int(1));
        for p in 1..=m {
            for i in 1..=n {
                for j in (i + 1)..=n {
                    if rng.gen_range(0..100) >= density_pct {
                        continue;
                    }
                    let v = rng.gen_range(-1..=1);
                    builder = builder.outcome(p, i, j, rat_int(v), rat_int(-v));
                }
            }
        }
        builder.build().expect("generated array is valid")
    }

    /// Like `skew_array` but draws are excluded, every value is `+-scale`
    /// in bounds `[-scale, scale]`, and the comparison graph is forced to
    /// be connected by a random spanning tree.
    pub fn connected_skew_array(
        seed: u64,
        n: usize,
        m: usize,
        density_pct: u32,
        scale: i64,
    ) -> ComparisonArray {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut present = vec![false; n * n];
        for v in 1..n {
            let u = rng.gen_range(0..v);
            present[u * n + v] = true;
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.gen_range(0..100) < density_pct {
                    present[i * n + j] = true;
                }
            }
        }
        let mut builder = ArrayBuilder::dichotomous(n, m, rat_int(scale));
        for i in 0..n {
            for j in (i + 1)..n {
                if !present[i * n + j] {
                    continue;
                }
                let p = rng.gen_range(1..=m);
                let v = if rng.gen_bool(0.5) { scale } else { -scale };
                builder = builder.outcome(p, i + 1, j + 1, rat_int(v), rat_int(-v));
            }
        }
        builder.build().expect("generated array is valid")
    }

    /// A random array over `[-1, 1]` that need not be skew-symmetric.
    pub fn general_array(seed: u64, n: usize, m: usize, density_pct: u32) -> ComparisonArray {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut builder = ArrayBuilder::dichotomous(n, m, rat_int(1));
        for p in 1..=m {
            for i in 1..=n {
                for j in (i + 1)..=n {
                    if rng.gen_range(0..100) >= density_pct {
                        continue;
                    }
                    let a = rng.gen_range(-1..=1);
                    let b = rng.gen_range(-1..=1);
                    builder = builder.outcome(p, i, j, rat_int(a), rat_int(b));
                }
            }
        }
        builder.build().expect("generated array is valid")
    }
}

/// The weak orders satisfying `t_i > t_j implies X_i above X_j` — the
/// independent characterization the optimizer is checked against.
pub fn copeland_consistent_orders(array: &ComparisonArray) -> Result<Vec<WeakOrder>> {
    let t = array.copeland();
    let n = array.n();
    let mut out = Vec::new();
    'orders: for order in weak_orders(n)? {
        for i in 0..n {
            for j in 0..n {
                if i != j && t.t(i) > t.t(j) && !order.prefers(i, j) {
                    continue 'orders;
                }
            }
        }
        out.push(order);
    }
    Ok(out)
}

/// Whether an order respects the strict part of the Copeland ordering.
pub fn respects_copeland(array: &ComparisonArray, order: &WeakOrder) -> bool {
    let t = array.copeland();
    let n = array.n();
    for i in 0..n {
        for j in 0..n {
            if i != j && t.t(i) > t.t(j) && !order.prefers(i, j) {
                return false;
            }
        }
    }
    true
}

/// Identifier of a theorem suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
}

impl TheoremId {
    pub fn parse(s: &str) -> Result<TheoremId> {
        match s.to_ascii_uppercase().as_str() {
            "T1" => Ok(TheoremId::T1),
            "T2" => Ok(TheoremId::T2),
            "T3" => Ok(TheoremId::T3),
            "T4" => Ok(TheoremId::T4),
            "T5" => Ok(TheoremId::T5),
            "T6" => Ok(TheoremId::T6),
            "T7" => Ok(TheoremId::T7),
            "T8" => Ok(TheoremId::T8),
            other => Err(Error::BadParameter(format!("unknown suite {other:?}"))),
        }
    }

    pub const ALL: [TheoremId; 8] = [
        TheoremId::T1,
        TheoremId::T2,
        TheoremId::T3,
        TheoremId::T4,
        TheoremId::T5,
        TheoremId::T6,
        TheoremId::T7,
        TheoremId::T8,
    ];
}

impl std::fmt::Display for TheoremId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "T{}", *self as usize + 1)
    }
}

/// Outcome of one suite: overall verdict plus one line per checked
/// instance.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub id: TheoremId,
    pub pass: bool,
    pub lines: Vec<String>,
}

impl SuiteReport {
    fn new(id: TheoremId) -> Self {
        SuiteReport {
            id,
            pass: true,
            lines: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, line: String) {
        self.pass &= ok;
        self.lines
            .push(format!("{} {}", if ok { "ok  " } else { "FAIL" }, line));
    }
}

/// Runs one theorem suite.
pub fn run_theorem_suite(id: TheoremId) -> SuiteReport {
    match id {
        TheoremId::T1 => suite_t1(),
        TheoremId::T2 => suite_t2(),
        TheoremId::T3 => suite_t3(),
        TheoremId::T4 => suite_t4(),
        TheoremId::T5 => suite_t5(),
        TheoremId::T6 => suite_t6(),
        TheoremId::T7 => suite_t7(),
        TheoremId::T8 => suite_t8(),
    }
}

const T1_SEED_BASE: u64 = 1000;
const T2_SEED_BASE: u64 = 2000;
const T8_SEED_BASE: u64 = 4000;
/// Twenty arrays with connected comparison graphs and a sphere-active
/// relaxed solution (negative multiplier), so the row-sum linkage applies.
const T3_SEEDS: [u64; 20] = [
    3001, 3002, 3003, 3004, 3006, 3007, 3008, 3009, 3010, 3012, 3013, 3014, 3015, 3017, 3019,
    3020, 3021, 3022, 3023, 3024,
];

/// Copeland reduction: the optimal set of the fourth assignment objective
/// over weak orders is exactly the set of Copeland-consistent orders.
fn suite_t1() -> SuiteReport {
    let mut report = SuiteReport::new(TheoremId::T1);
    let spec = MethodSpec::weak(Method::Wqa { k: 4 });
    let mut mismatches = 0usize;
    for k in 0..100u64 {
        let n = 2 + (k % 4) as usize;
        let m = 1 + (k % 2) as usize;
        let array = random::skew_array(T1_SEED_BASE + k, n, m, 50);
        let got = optimize(&spec, &array).expect("optimize succeeds");
        let expect = copeland_consistent_orders(&array).expect("enumeration succeeds");
        if got.orders != expect {
            mismatches += 1;
        }
    }
    report.check(
        mismatches == 0,
        format!("100 random arrays (n<=5): optimal sets match the Copeland characterization ({mismatches} mismatches)"),
    );
    report
}

/// Small-beta reduction: below some beta the least-squares optima respect
/// the strict Copeland ordering; found by halving from 1 and re-verified
/// at half and quarter of that value.
fn suite_t2() -> SuiteReport {
    let mut report = SuiteReport::new(TheoremId::T2);
    for k in 0..20u64 {
        let n = 2 + (k % 3) as usize;
        let m = 1 + (k % 2) as usize;
        let array = random::skew_array(T2_SEED_BASE + k, n, m, 60);
        let respects_all = |beta: &Rational| -> bool {
            let spec = MethodSpec::weak(Method::BetaLs { beta: beta.clone() });
            let set = optimize(&spec, &array).expect("optimize succeeds");
            set.orders.iter().all(|o| respects_copeland(&array, o))
        };
        let mut beta = rat_int(1);
        let mut found = None;
        for _ in 0..40 {
            if respects_all(&beta) {
                found = Some(beta.clone());
                break;
            }
            beta /= rat_int(2);
        }
        let ok = match &found {
            Some(b) => {
                respects_all(&(b.clone() / rat_int(2))) && respects_all(&(b.clone() / rat_int(4)))
            }
            None => false,
        };
        report.check(
            ok,
            format!(
                "seed {}: beta_hat = {} keeps optima Copeland-consistent (also at /2, /4)",
                T2_SEED_BASE + k,
                found.map(|b| format_rational(&b)).unwrap_or_else(|| "none".into()),
            ),
        );
    }
    report
}

/// Relaxed least squares reduces to generalized row sums: the solution is
/// feasible, stationary, and parallel to the row sums of the skew
/// transform at `epsilon = 2 beta^2 / (-lambda)`.
fn suite_t3() -> SuiteReport {
    let mut report = SuiteReport::new(TheoremId::T3);
    for (k, &seed) in T3_SEEDS.iter().enumerate() {
        let n = 3 + (k % 3);
        let array = random::connected_skew_array(seed, n, 1, 40, 8);
        for beta in [rat(1, 2), rat_int(1)] {
            match check_t3_instance(&array, &beta) {
                Ok(line) => report.check(true, format!("seed {seed} beta={}: {line}", format_rational(&beta))),
                Err(line) => report.check(false, format!("seed {seed} beta={}: {line}", format_rational(&beta))),
            }
        }
    }
    report
}

fn check_t3_instance(array: &ComparisonArray, beta: &Rational) -> std::result::Result<String, String> {
    let n = array.n();
    let sol = grs::relaxed_beta_ls(array, beta).map_err(|e| e.to_string())?;
    let sum: f64 = sol.y.iter().sum();
    if sum.abs() > 1e-10 {
        return Err(format!("sum(y) = {sum:e} exceeds 1e-10"));
    }
    let d2 = d_n_squared(n) as f64;
    let sum2: f64 = sol.y.iter().map(|v| v * v).sum();
    if ((sum2 - d2) / d2).abs() > 1e-9 {
        return Err(format!("sum(y^2) = {sum2} is off the sphere"));
    }

    // first-order stationarity of the original objective
    let b = to_f64(beta);
    let t = array.copeland();
    let agg = array.aggregate();
    let mut grad = vec![0.0f64; n];
    for i in 0..n {
        let mut lap_y = 0.0;
        for j in 0..n {
            if i != j && agg.count(i, j) > 0 {
                lap_y += agg.count(i, j) as f64 * (sol.y[i] - sol.y[j]);
            }
        }
        grad[i] = -2.0 * b * to_f64(t.t(i)) + 4.0 * b * b * lap_y;
    }
    let grad_norm: f64 = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
    let resid: f64 = grad
        .iter()
        .zip(&sol.y)
        .map(|(g, y)| (g - 2.0 * sol.lambda * y).powi(2))
        .sum::<f64>()
        .sqrt();
    if resid > 1e-8 * grad_norm {
        return Err(format!("stationarity residual {resid:e} vs gradient {grad_norm:e}"));
    }
    if sol.lambda >= 0.0 {
        return Err(format!("lambda = {} is not negative", sol.lambda));
    }

    // parallel to the generalized row sums of the skew transform
    let epsilon_f = 2.0 * b * b / (-sol.lambda);
    let epsilon = Rational::from_float(epsilon_f).ok_or("epsilon not finite")?;
    let skew = grs::build_skew_array(array);
    let x = grs::solve(&skew, &epsilon).map_err(|e| e.to_string())?.x;
    let xf: Vec<f64> = x.iter().map(to_f64).collect();
    let dot: f64 = sol.y.iter().zip(&xf).map(|(a, b)| a * b).sum();
    let nx: f64 = xf.iter().map(|v| v * v).sum::<f64>().sqrt();
    let ny: f64 = sol.y.iter().map(|v| v * v).sum::<f64>().sqrt();
    if nx == 0.0 {
        return Err("row sums vanish".into());
    }
    let cosine = dot / (nx * ny);
    if cosine < 1.0 - 1e-9 {
        return Err(format!("cosine {cosine} below 1 - 1e-9"));
    }
    Ok(format!("feasible, stationary, cosine = {cosine:.12}"))
}

/// Strict operators break Self-Consistency: on the cycle and on the
/// reversal pair no linear order is violation-free.
fn suite_t4() -> SuiteReport {
    let mut report = SuiteReport::new(TheoremId::T4);
    let opts = AuditOptions::default();
    for (name, array) in [
        ("figA1(n=3)", make_fixture(FixtureName::FigA1, 3, 1).unwrap()),
        ("figA2(n=4,m=2)", make_fixture(FixtureName::FigA2, 4, 2).unwrap()),
    ] {
        let mut clean = 0usize;
        let mut total = 0usize;
        for order in crate::orders::linear_orders(array.n()).unwrap() {
            total += 1;
            let rep = audit_order(&array, &order, Axiom::SelfConsistency, &opts).unwrap();
            if rep.passes() {
                clean += 1;
            }
        }
        report.check(
            clean == 0,
            format!("{name}: {clean} of {total} linear orders satisfy SC (expected 0)"),
        );
    }
    report
}

fn t5_methods() -> Vec<(&'static str, Method)> {
    let psi = PsiKind::Plus;
    vec![
        ("wqa_1", Method::Wqa { k: 1 }),
        ("wqa_2", Method::Wqa { k: 2 }),
        ("wqa_3", Method::Wqa { k: 3 }),
        ("kemeny_1", Method::Kemeny { k: 1 }),
        ("kemeny_2", Method::Kemeny { k: 2 }),
        ("kemeny_3", Method::Kemeny { k: 3 }),
        ("net_back", Method::NetBack { psi }),
        (
            "walb",
            Method::Walb {
                variant: WalbVariant::Plain,
                psi,
            },
        ),
        (
            "walb_refined",
            Method::Walb {
                variant: WalbVariant::Refined,
                psi,
            },
        ),
        (
            "walb_net",
            Method::Walb {
                variant: WalbVariant::Net,
                psi,
            },
        ),
        (
            "walb_net_refined",
            Method::Walb {
                variant: WalbVariant::NetRefined,
                psi,
            },
        ),
    ]
}

fn t6_methods() -> Vec<(&'static str, Method)> {
    vec![
        ("wqa_4", Method::Wqa { k: 4 }),
        ("wqa_5", Method::Wqa { k: 5 }),
        ("wqa_6", Method::Wqa { k: 6 }),
        (
            "walb_net_diff",
            Method::Walb {
                variant: WalbVariant::NetDiff,
                psi: PsiKind::Plus,
            },
        ),
    ]
}

fn scm_counterexample_checks(
    report: &mut SuiteReport,
    methods: &[(&'static str, Method)],
    check_indifference: bool,
) {
    let opts = AuditOptions::default();
    let oo = OptimizeOptions::default();
    let a3 = make_fixture(FixtureName::FigA3, 4, 1).unwrap();
    let a4 = make_fixture(FixtureName::FigA4, 3, 1).unwrap();
    let closure = WeakOrder::linear(&[0, 1, 2, 3]).unwrap();
    let swapped = closure.interchange(0, 1);
    let refinements = [
        WeakOrder::linear(&[0, 1, 2]).unwrap(),
        WeakOrder::linear(&[0, 2, 1]).unwrap(),
    ];

    for (name, method) in methods {
        let spec = MethodSpec::weak(method.clone());

        let set = optimize(&spec, &a3).expect("optimize succeeds");
        let contains_swap = set.orders.contains(&swapped);
        let swap_report = audit_order(&a3, &swapped, Axiom::SelfConsistentMonotonicity, &opts)
            .expect("audit succeeds");
        report.check(
            contains_swap && !swap_report.passes(),
            format!(
                "figA3: {name} optima include the X1<->X2 interchange and it violates SCM \
                 ({} violations)",
                swap_report.violations()
            ),
        );

        let set = optimize(&spec, &a4).expect("optimize succeeds");
        let both = refinements.iter().all(|o| set.orders.contains(o));
        let violations = refinements.iter().all(|o| {
            !audit_order(&a4, o, Axiom::SelfConsistentMonotonicity, &opts)
                .expect("audit succeeds")
                .passes()
        });
        report.check(
            both && violations,
            format!("figA4: {name} makes both strict refinements optimal and SCM rejects them"),
        );

        if check_indifference {
            let verdict = indifference_check(&spec, &a3, &oo).expect("check succeeds");
            report.check(
                verdict.indifferent,
                format!("figA3: {name} is indifferent to the degree of resulting preferences"),
            );
        }
    }
}

/// Indifferent operators break SCM: the eleven sign-based methods equalize
/// the SCM-mandated order with a forbidden one on both counterexamples.
fn suite_t5() -> SuiteReport {
    let mut report = SuiteReport::new(TheoremId::T5);
    scm_counterexample_checks(&mut report, &t5_methods(), true);
    report
}

/// The distance-sensitive assignment objectives and the net-difference
/// balance break SCM on the same two arrays.
fn suite_t6() -> SuiteReport {
    let mut report = SuiteReport::new(TheoremId::T6);
    scm_counterexample_checks(&mut report, &t6_methods(), false);
    report
}

/// Least squares ties a slightly superior alternative: the objective gap
/// between the strict order and the tie at the top is exactly
/// `4 beta^2 (n-5)`, so for n > 5 the strict order loses and
/// Self-Consistency is violated by the optima.
fn suite_t7() -> SuiteReport {
    let mut report = SuiteReport::new(TheoremId::T7);
    let opts = AuditOptions::default();
    let oo = OptimizeOptions::default();
    for n in [5usize, 6, 7] {
        let array = make_fixture(FixtureName::FigA5, n, 1).unwrap();
        let strict = WeakOrder::linear(&(0..n).collect::<Vec<_>>()).unwrap();
        let mut tied_blocks = vec![vec![0usize, 1]];
        tied_blocks.extend((2..n).map(|i| vec![i]));
        let tied = WeakOrder::from_blocks(n, tied_blocks).unwrap();
        for beta in [rat_int(1), rat(1, 2), rat(3, 2)] {
            let gap = beta_ls_objective(&array, &beta, &strict)
                - beta_ls_objective(&array, &beta, &tied);
            let expect = rat_int(4) * beta.clone() * beta.clone() * rat_int(n as i64 - 5);
            report.check(
                gap == expect,
                format!(
                    "figA5(n={n}) beta={}: gap = {} (expected {})",
                    format_rational(&beta),
                    format_rational(&gap),
                    format_rational(&expect)
                ),
            );
        }
        if n > 5 {
            let spec = MethodSpec::weak(Method::BetaLs { beta: rat_int(1) });
            let set = optimize(&spec, &array).expect("optimize succeeds");
            let strict_not_optimal = !set.orders.contains(&strict);
            let reports =
                audit_operator(&spec, &array, Axiom::SelfConsistency, &opts, &oo).unwrap();
            report.check(
                strict_not_optimal && !operator_passes(&reports),
                format!(
                    "figA5(n={n}): the SC-mandated strict order is not optimal and the optima \
                     violate SC"
                ),
            );
        }
    }
    report
}

/// The generalized row sum ranking with positive reasonable epsilon
/// satisfies SCM on every fixture and on 200 random skew arrays.
fn suite_t8() -> SuiteReport {
    let mut report = SuiteReport::new(TheoremId::T8);
    let opts = AuditOptions::default();

    // figA2 at n = 4, where the reasonable-epsilon bound exists
    let fixtures = [
        Fixture::new(FixtureName::Fig1),
        Fixture::new(FixtureName::FigA1),
        Fixture::new(FixtureName::FigA2).with_size(4, 2),
        Fixture::new(FixtureName::FigA3),
        Fixture::new(FixtureName::FigA4),
        Fixture::new(FixtureName::FigA5),
    ];
    let mut fixture_violations = 0usize;
    for fixture in &fixtures {
        let array = fixture.build().unwrap();
        fixture_violations += grs_scm_violations(&array, &opts);
    }
    report.check(
        fixture_violations == 0,
        format!("all fixtures: {fixture_violations} SCM violations for the row-sum ranking"),
    );

    let mut random_violations = 0usize;
    for k in 0..200u64 {
        let n = 3 + (k % 4) as usize;
        let m = 1 + (k % 3) as usize;
        let array = random::skew_array(T8_SEED_BASE + k, n, m, 50);
        random_violations += grs_scm_violations(&array, &opts);
    }
    report.check(
        random_violations == 0,
        format!(
            "200 random skew arrays (n in 3..6, m in 1..3), epsilon in {{max, max/2}}: \
             {random_violations} SCM violations"
        ),
    );
    report
}

fn grs_scm_violations(array: &ComparisonArray, opts: &AuditOptions) -> usize {
    let max = grs::reasonable_epsilon_max(array.n(), array.m()).expect("n > 2");
    let mut total = 0;
    for eps in [max.clone(), max / rat_int(2)] {
        let sol = grs::solve(array, &eps).expect("solve succeeds");
        let order = grs::ranking(&sol);
        let rep = audit_order(array, &order, Axiom::SelfConsistentMonotonicity, opts)
            .expect("audit succeeds");
        total += rep.violations();
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_arrays_are_deterministic() {
        let a = random::skew_array(42, 4, 2, 50);
        let b = random::skew_array(42, 4, 2, 50);
        assert_eq!(a, b);
        assert!(a.skew_symmetric());
        let c = random::connected_skew_array(7, 5, 1, 60, 3);
        assert!(c.skew_symmetric());
        // spanning tree guarantees at least n-1 comparisons
        assert!(c.outcomes().len() >= 4);
    }

    #[test]
    fn copeland_consistency_helpers_agree() {
        let array = random::skew_array(5, 4, 1, 60);
        let consistent = copeland_consistent_orders(&array).unwrap();
        for order in weak_orders(4).unwrap() {
            assert_eq!(
                consistent.contains(&order),
                respects_copeland(&array, &order)
            );
        }
    }

    #[test]
    fn theorem_ids_parse_and_display() {
        for id in TheoremId::ALL {
            assert_eq!(TheoremId::parse(&id.to_string()).unwrap(), id);
        }
        assert!(TheoremId::parse("T9").is_err());
    }

    #[test]
    fn t4_suite_passes() {
        let r = run_theorem_suite(TheoremId::T4);
        assert!(r.pass, "{:?}", r.lines);
    }

    #[test]
    fn t7_gap_suite_passes() {
        let r = run_theorem_suite(TheoremId::T7);
        assert!(r.pass, "{:?}", r.lines);
    }
}
