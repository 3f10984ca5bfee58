//! Decision procedures for the Self-Consistency (SC) and Self-Consistent
//! Monotonicity (SCM) axioms, plus order- and operator-level audits.
//!
//! Confronting `X_i` with `X_j` under a candidate order means looking for a
//! correspondence between their comparison outcome sets in which every
//! outcome of `X_i` is at least as good as its partner. SC requires a full
//! bijection; SCM additionally allows `X_i` to keep unmatched maximal wins
//! and `X_j` unmatched maximal losses. A premise obliges the order to rank
//! `X_i` at least as high as `X_j`, strictly when some matched pair is
//! strictly better or any extras exist.
//!
//! The matching questions are decided exactly as a bipartite flow
//! feasibility problem with mandatory saturation: every non-maximal-win
//! outcome of `X_i` and every non-maximal-loss outcome of `X_j` carries a
//! unit lower bound. Strictness is decided by re-solving with a candidate
//! stronger edge forced into the matching, or with a candidate extra
//! removed from its side.

use std::collections::{HashMap, HashSet};

use crate::comparisons::{ComparisonArray, OutcomeRecord};
use crate::error::Result;
use crate::objectives::{rank, MethodSpec, OptimizeOptions};
use crate::orders::{weak_orders_with_cap, WeakOrder};

/// Relation between two outcomes under a fixed order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutcomeRelation {
    Incomparable,
    /// At least as good in score, concession and opponent rank.
    NotWeaker,
    /// Not weaker with at least one strict component.
    Stronger,
}

/// The two audited axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    SelfConsistency,
    SelfConsistentMonotonicity,
}

/// Options shared by all audits.
#[derive(Debug, Clone, Copy)]
pub struct AuditOptions {
    /// Whether outcomes of the confronted pair against each other take part
    /// in the correspondence. The definitions do not settle this; included
    /// by default.
    pub include_direct: bool,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions {
            include_direct: true,
        }
    }
}

/// Evidence for a premise: the matched outcome pairs (indexes into the two
/// record lists), the unmatched extras, and whether the premise is strict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfrontationWitness {
    pub matching: Vec<(usize, usize)>,
    pub extras_first: Vec<usize>,
    pub extras_second: Vec<usize>,
    pub strict: bool,
}

/// Premise classification for one ordered pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Premise {
    None,
    ScWeak,
    ScStrict,
    ScmWeak,
    ScmStrict,
}

impl Premise {
    pub fn is_strict(&self) -> bool {
        matches!(self, Premise::ScStrict | Premise::ScmStrict)
    }

    pub fn exists(&self) -> bool {
        !matches!(self, Premise::None)
    }
}

/// Audit result for one ordered pair `(first, second)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairAudit {
    pub first: usize,
    pub second: usize,
    pub premise: Premise,
    pub witness: Option<ConfrontationWitness>,
    pub violation: bool,
}

/// Audit of a whole order against one axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub axiom: Axiom,
    pub pairs: Vec<PairAudit>,
}

impl AuditReport {
    pub fn violations(&self) -> usize {
        self.pairs.iter().filter(|p| p.violation).count()
    }

    pub fn passes(&self) -> bool {
        self.violations() == 0
    }
}

/// Compares an outcome of `X_i` with an outcome of `X_j` with respect to an
/// order: not weaker means scored at least as much, conceded at most as
/// much, against an opponent ranked at least as high.
pub fn compare_outcomes(
    first: &OutcomeRecord,
    second: &OutcomeRecord,
    order: &WeakOrder,
) -> OutcomeRelation {
    let weak = first.scored >= second.scored
        && first.conceded <= second.conceded
        && order.at_least(first.opponent, second.opponent);
    if !weak {
        return OutcomeRelation::Incomparable;
    }
    let strict = first.scored > second.scored
        || first.conceded < second.conceded
        || order.prefers(first.opponent, second.opponent);
    if strict {
        OutcomeRelation::Stronger
    } else {
        OutcomeRelation::NotWeaker
    }
}

// ---------------------------------------------------------------------------
// Matching with mandatory saturation
// ---------------------------------------------------------------------------

/// Dinic max-flow on a tiny unit-capacity-style network.
struct Flow {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
}

impl Flow {
    fn new(nodes: usize) -> Self {
        Flow {
            adj: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn edge(&mut self, a: usize, b: usize, cap: i64) -> usize {
        let id = self.to.len();
        self.adj[a].push(id);
        self.to.push(b);
        self.cap.push(cap);
        self.adj[b].push(id + 1);
        self.to.push(a);
        self.cap.push(0);
        id
    }

    fn bfs(&self, s: usize, t: usize) -> Option<Vec<i32>> {
        let mut level = vec![-1; self.adj.len()];
        level[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && level[v] < 0 {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        (level[t] >= 0).then_some(level)
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: i64, level: &[i32], it: &mut [usize]) -> i64 {
        if u == t {
            return pushed;
        }
        while it[u] < self.adj[u].len() {
            let e = self.adj[u][it[u]];
            let v = self.to[e];
            if self.cap[e] > 0 && level[v] == level[u] + 1 {
                let got = self.dfs(v, t, pushed.min(self.cap[e]), level, it);
                if got > 0 {
                    self.cap[e] -= got;
                    self.cap[e ^ 1] += got;
                    return got;
                }
            }
            it[u] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        while let Some(level) = self.bfs(s, t) {
            let mut it = vec![0; self.adj.len()];
            loop {
                let pushed = self.dfs(s, t, i64::MAX, &level, &mut it);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
        total
    }
}

/// A bipartite matching instance where some vertices must be saturated.
#[derive(Debug, Clone)]
struct Matcher {
    left: usize,
    right: usize,
    edges: Vec<(usize, usize)>,
    mandatory_left: Vec<bool>,
    mandatory_right: Vec<bool>,
}

impl Matcher {
    /// Finds any matching saturating all mandatory vertices, through a
    /// circulation with lower bounds on the source and sink arcs.
    fn feasible(&self) -> Option<Vec<(usize, usize)>> {
        // nodes: 0 source, 1 sink, 2 super-source, 3 super-sink,
        // then left vertices, then right vertices
        let ln = |u: usize| 4 + u;
        let rn = |v: usize| 4 + self.left + v;
        let mut flow = Flow::new(4 + self.left + self.right);
        let mut demand = 0i64;

        let mut pair_edges = Vec::with_capacity(self.edges.len());
        for &(u, v) in &self.edges {
            pair_edges.push((u, v, flow.edge(ln(u), rn(v), 1)));
        }
        for u in 0..self.left {
            if self.mandatory_left[u] {
                // lower bound 1: reroute through the super pair
                flow.edge(2, ln(u), 1);
                flow.edge(0, 3, 1);
                demand += 1;
            } else {
                flow.edge(0, ln(u), 1);
            }
        }
        for v in 0..self.right {
            if self.mandatory_right[v] {
                flow.edge(rn(v), 3, 1);
                flow.edge(2, 1, 1);
                demand += 1;
            } else {
                flow.edge(rn(v), 1, 1);
            }
        }
        // close the circulation
        flow.edge(1, 0, i64::MAX / 2);

        if flow.max_flow(2, 3) < demand {
            return None;
        }
        let mut matching = Vec::new();
        for (u, v, id) in pair_edges {
            if flow.cap[id] == 0 {
                matching.push((u, v));
            }
        }
        Some(matching)
    }

    /// Feasibility with a vertex removed or an edge forced into the
    /// matching (its endpoints are removed and re-added afterwards).
    fn feasible_without(
        &self,
        drop_left: Option<usize>,
        drop_right: Option<usize>,
    ) -> Option<Vec<(usize, usize)>> {
        let mut sub = self.clone();
        if let Some(u) = drop_left {
            sub.mandatory_left[u] = false;
            sub.edges.retain(|&(a, _)| a != u);
        }
        if let Some(v) = drop_right {
            sub.mandatory_right[v] = false;
            sub.edges.retain(|&(_, b)| b != v);
        }
        sub.feasible()
    }
}

// ---------------------------------------------------------------------------
// Premises
// ---------------------------------------------------------------------------

struct Confrontation {
    first_records: Vec<OutcomeRecord>,
    second_records: Vec<OutcomeRecord>,
    matcher: Matcher,
    stronger: Vec<(usize, usize)>,
}

fn build_confrontation(
    array: &ComparisonArray,
    order: &WeakOrder,
    i: usize,
    j: usize,
    axiom: Axiom,
    opts: &AuditOptions,
) -> Result<Confrontation> {
    let mut first_records = array.outcomes_of(i)?;
    let mut second_records = array.outcomes_of(j)?;
    if !opts.include_direct {
        first_records.retain(|r| r.opponent != j);
        second_records.retain(|r| r.opponent != i);
    }

    let mut edges = Vec::new();
    let mut stronger = Vec::new();
    for (u, a) in first_records.iter().enumerate() {
        for (v, b) in second_records.iter().enumerate() {
            match compare_outcomes(a, b, order) {
                OutcomeRelation::Incomparable => {}
                OutcomeRelation::NotWeaker => edges.push((u, v)),
                OutcomeRelation::Stronger => {
                    edges.push((u, v));
                    stronger.push((u, v));
                }
            }
        }
    }

    let (mandatory_left, mandatory_right) = match axiom {
        Axiom::SelfConsistency => (
            vec![true; first_records.len()],
            vec![true; second_records.len()],
        ),
        Axiom::SelfConsistentMonotonicity => (
            first_records
                .iter()
                .map(|r| !array.is_maximal_win(r))
                .collect(),
            second_records
                .iter()
                .map(|r| !array.is_maximal_loss(r))
                .collect(),
        ),
    };

    let matcher = Matcher {
        left: first_records.len(),
        right: second_records.len(),
        edges,
        mandatory_left,
        mandatory_right,
    };
    Ok(Confrontation {
        first_records,
        second_records,
        matcher,
        stronger,
    })
}

fn witness_from(matching: Vec<(usize, usize)>, conf: &Confrontation) -> ConfrontationWitness {
    let matched_l: HashSet<usize> = matching.iter().map(|&(u, _)| u).collect();
    let matched_r: HashSet<usize> = matching.iter().map(|&(_, v)| v).collect();
    let extras_first: Vec<usize> = (0..conf.first_records.len())
        .filter(|u| !matched_l.contains(u))
        .collect();
    let extras_second: Vec<usize> = (0..conf.second_records.len())
        .filter(|v| !matched_r.contains(v))
        .collect();
    let stronger: HashSet<(usize, usize)> = conf.stronger.iter().copied().collect();
    let strict = !extras_first.is_empty()
        || !extras_second.is_empty()
        || matching.iter().any(|e| stronger.contains(e));
    ConfrontationWitness {
        matching,
        extras_first,
        extras_second,
        strict,
    }
}

fn premise(
    array: &ComparisonArray,
    order: &WeakOrder,
    i: usize,
    j: usize,
    axiom: Axiom,
    opts: &AuditOptions,
) -> Result<Option<ConfrontationWitness>> {
    let conf = build_confrontation(array, order, i, j, axiom, opts)?;
    if axiom == Axiom::SelfConsistency
        && conf.first_records.len() != conf.second_records.len()
    {
        return Ok(None);
    }
    let base = match conf.matcher.feasible() {
        Some(m) => m,
        None => return Ok(None),
    };
    let base = witness_from(base, &conf);
    if base.strict {
        return Ok(Some(base));
    }

    // The plain witness is non-strict; look for a strict one. Forcing a
    // stronger edge keeps a perfect correspondence, dropping an optional
    // vertex creates extras.
    for &(u, v) in &conf.stronger {
        let mut sub = conf.matcher.clone();
        sub.edges.retain(|&(a, b)| a != u && b != v);
        sub.mandatory_left[u] = false;
        sub.mandatory_right[v] = false;
        if let Some(mut rest) = sub.feasible() {
            rest.push((u, v));
            rest.sort_unstable();
            return Ok(Some(witness_from(rest, &conf)));
        }
    }
    if axiom == Axiom::SelfConsistentMonotonicity {
        for u in 0..conf.matcher.left {
            if !conf.matcher.mandatory_left[u] {
                if let Some(m) = conf.matcher.feasible_without(Some(u), None) {
                    return Ok(Some(witness_from(m, &conf)));
                }
            }
        }
        for v in 0..conf.matcher.right {
            if !conf.matcher.mandatory_right[v] {
                if let Some(m) = conf.matcher.feasible_without(None, Some(v)) {
                    return Ok(Some(witness_from(m, &conf)));
                }
            }
        }
    }
    Ok(Some(base))
}

/// SC premise for the ordered pair `(i, j)`: a full not-weaker
/// correspondence between the two outcome sets, when one exists.
pub fn sc_premise(
    array: &ComparisonArray,
    order: &WeakOrder,
    i: usize,
    j: usize,
    opts: &AuditOptions,
) -> Result<Option<ConfrontationWitness>> {
    premise(array, order, i, j, Axiom::SelfConsistency, opts)
}

/// SCM premise for the ordered pair `(i, j)`: a not-weaker correspondence
/// whose unmatched outcomes are maximal wins of `X_i` and maximal losses of
/// `X_j`.
pub fn scm_premise(
    array: &ComparisonArray,
    order: &WeakOrder,
    i: usize,
    j: usize,
    opts: &AuditOptions,
) -> Result<Option<ConfrontationWitness>> {
    premise(array, order, i, j, Axiom::SelfConsistentMonotonicity, opts)
}

/// Audits one order: evaluates the premise for every ordered pair and flags
/// conclusions the order fails to draw.
pub fn audit_order(
    array: &ComparisonArray,
    order: &WeakOrder,
    axiom: Axiom,
    opts: &AuditOptions,
) -> Result<AuditReport> {
    let n = array.n();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let witness = premise(array, order, i, j, axiom, opts)?;
            let premise_kind = match (&witness, axiom) {
                (None, _) => Premise::None,
                (Some(w), Axiom::SelfConsistency) if w.strict => Premise::ScStrict,
                (Some(_), Axiom::SelfConsistency) => Premise::ScWeak,
                (Some(w), Axiom::SelfConsistentMonotonicity) if w.strict => Premise::ScmStrict,
                (Some(_), Axiom::SelfConsistentMonotonicity) => Premise::ScmWeak,
            };
            let violation = match premise_kind {
                Premise::None => false,
                p if p.is_strict() => !order.prefers(i, j),
                _ => order.prefers(j, i),
            };
            pairs.push(PairAudit {
                first: i,
                second: j,
                premise: premise_kind,
                witness,
                violation,
            });
        }
    }
    Ok(AuditReport { axiom, pairs })
}

/// Audits every order an operator returns for the array. The operator
/// passes on this array iff every report is violation-free; fixtures can
/// only falsify an axiom, never prove it in general.
pub fn audit_operator(
    spec: &MethodSpec,
    array: &ComparisonArray,
    axiom: Axiom,
    opts: &AuditOptions,
    optimize_opts: &OptimizeOptions,
) -> Result<Vec<(WeakOrder, AuditReport)>> {
    let result = rank(spec, array, optimize_opts)?;
    let mut out = Vec::new();
    for order in result.orders() {
        let report = audit_order(array, &order, axiom, opts)?;
        out.push((order, report));
    }
    Ok(out)
}

/// True when every audited optimal order is violation-free.
pub fn operator_passes(reports: &[(WeakOrder, AuditReport)]) -> bool {
    reports.iter().all(|(_, r)| r.passes())
}

/// Pairs `(i, j)` whose violation verdict flips when direct outcomes
/// between the confronted alternatives are excluded from the
/// correspondence.
pub fn direct_outcome_sensitivity(
    array: &ComparisonArray,
    order: &WeakOrder,
    axiom: Axiom,
) -> Result<Vec<(usize, usize)>> {
    let with = audit_order(
        array,
        order,
        axiom,
        &AuditOptions {
            include_direct: true,
        },
    )?;
    let without = audit_order(
        array,
        order,
        axiom,
        &AuditOptions {
            include_direct: false,
        },
    )?;
    Ok(with
        .pairs
        .iter()
        .zip(&without.pairs)
        .filter(|(a, b)| a.violation != b.violation)
        .map(|(a, _)| (a.first, a.second))
        .collect())
}

/// Whether two orders place every compared pair on the same side.
pub fn same_sign_pattern(array: &ComparisonArray, a: &WeakOrder, b: &WeakOrder) -> bool {
    let agg = array.aggregate();
    let n = array.n();
    for i in 0..n {
        for j in (i + 1)..n {
            if agg.count(i, j) == 0 {
                continue;
            }
            let sa = (a.rho()[i] - a.rho()[j]).signum();
            let sb = (b.rho()[i] - b.rho()[j]).signum();
            if sa != sb {
                return false;
            }
        }
    }
    true
}

/// Verdict of the indifference check, with a counterexample when it fails.
#[derive(Debug, Clone)]
pub struct IndifferenceVerdict {
    pub indifferent: bool,
    /// An optimal order and a non-optimal order with the same sign pattern.
    pub counterexample: Option<(WeakOrder, WeakOrder)>,
}

/// Checks whether the operator equalizes every pair of weak orders with the
/// same sign pattern on compared pairs, exhaustively over the weak domain.
pub fn indifference_check(
    spec: &MethodSpec,
    array: &ComparisonArray,
    optimize_opts: &OptimizeOptions,
) -> Result<IndifferenceVerdict> {
    let optimal: HashSet<Vec<usize>> = rank(spec, array, optimize_opts)?
        .orders()
        .iter()
        .map(|o| o.assignment())
        .collect();
    let agg = array.aggregate();
    let n = array.n();
    let compared: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .filter(|&(i, j)| agg.count(i, j) > 0)
        .collect();

    // bucket the domain by sign pattern; indifference means every bucket is
    // entirely optimal or entirely non-optimal
    let mut buckets: HashMap<Vec<i8>, (Option<WeakOrder>, Option<WeakOrder>)> = HashMap::new();
    for order in weak_orders_with_cap(n, optimize_opts.weak_cap)? {
        let signature: Vec<i8> = compared
            .iter()
            .map(|&(i, j)| (order.rho()[i] - order.rho()[j]).signum() as i8)
            .collect();
        let is_opt = optimal.contains(&order.assignment());
        let entry = buckets.entry(signature).or_default();
        if is_opt {
            entry.0.get_or_insert(order);
        } else {
            entry.1.get_or_insert(order);
        }
    }
    for (opt, non) in buckets.into_values() {
        if let (Some(o), Some(x)) = (opt, non) {
            return Ok(IndifferenceVerdict {
                indifferent: false,
                counterexample: Some((o, x)),
            });
        }
    }
    Ok(IndifferenceVerdict {
        indifferent: true,
        counterexample: None,
    })
}

/// True when every optimal order is linear.
pub fn strictness_check(
    spec: &MethodSpec,
    array: &ComparisonArray,
    optimize_opts: &OptimizeOptions,
) -> Result<bool> {
    Ok(rank(spec, array, optimize_opts)?
        .orders()
        .iter()
        .all(|o| o.is_linear()))
}
