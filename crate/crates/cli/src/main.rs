//! Command-line interface: rank incomplete paired-comparison data, audit
//! orders and operators against the consistency axioms, emit fixtures, run
//! the theorem suites.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 suite failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rankagg::axioms::{audit_order, AuditOptions, AuditReport, Axiom};
use rankagg::comparisons::ComparisonArray;
use rankagg::fixtures::{Fixture, FixtureName};
use rankagg::io::{
    self, array_to_json, digest, load_array, order_blocks, save_run, AuditSummary, RunOutput,
    RunRecord,
};
use rankagg::objectives::{
    rank, Domain, Method, MethodSpec, OptimizeOptions, PsiKind, RankResult, WalbVariant,
};
use rankagg::orders::{weak_orders_with_cap, WeakOrder, DEFAULT_LINEAR_CAP, DEFAULT_WEAK_CAP};
use rankagg::rational::{format_rational, parse_rational, Rational};
use rankagg::suites::{run_theorem_suite, TheoremId};

#[derive(Parser)]
#[command(
    name = "rankagg",
    version,
    about = "Rank alternatives from incomplete paired comparisons and audit the result"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank an array with one of the aggregation methods.
    Rank(RankArgs),
    /// Audit an order or a method's optimal set against an axiom.
    Audit(AuditArgs),
    /// Generate a named fixture array as JSON.
    Fixture(FixtureArgs),
    /// Run a theorem verification suite.
    Theorem(TheoremArgs),
    /// Count the weak orders on n alternatives by enumeration.
    Enumerate(EnumerateArgs),
}

#[derive(Args)]
struct InputArgs {
    /// JSON array file to rank.
    #[arg(long, conflicts_with = "fixture")]
    input: Option<PathBuf>,
    /// Built-in fixture name (fig1, figA1..figA5).
    #[arg(long)]
    fixture: Option<String>,
    /// Number of alternatives for the fixture.
    #[arg(long)]
    n: Option<usize>,
    /// Number of individuals for the fixture.
    #[arg(long)]
    m: Option<usize>,
    /// Upper comparison bound for the fixture (lower bound is its negation).
    #[arg(long, value_name = "Q", allow_hyphen_values = true)]
    r_max: Option<String>,
}

impl InputArgs {
    fn load(&self) -> rankagg::Result<ComparisonArray> {
        match (&self.input, &self.fixture) {
            (Some(path), None) => load_array(path),
            (None, Some(name)) => {
                let mut fixture = Fixture::new(FixtureName::parse(name)?);
                let (dn, dm) = (fixture.n, fixture.m);
                fixture = fixture.with_size(self.n.unwrap_or(dn), self.m.unwrap_or(dm));
                if let Some(r) = &self.r_max {
                    fixture = fixture.with_r_max(parse_rational(r)?);
                }
                fixture.build()
            }
            _ => Err(rankagg::Error::BadParameter(
                "provide exactly one of --input or --fixture".into(),
            )),
        }
    }
}

#[derive(Args)]
struct MethodArgs {
    /// Method id: wqa_1..wqa_6, kemeny_1..kemeny_3, net_back, walb,
    /// walb_refined, walb_net, walb_net_refined, walb_net_diff, beta_ls,
    /// grs_qap, grs.
    #[arg(long)]
    method: String,
    /// Search domain.
    #[arg(long, value_enum, default_value_t = DomainArg::Weak)]
    domain: DomainArg,
    /// Scale parameter of beta_ls.
    #[arg(long, value_name = "Q", allow_hyphen_values = true)]
    beta: Option<String>,
    /// Damping parameter of grs / grs_qap; a rational or `reasonable-max`.
    #[arg(long, value_name = "Q", allow_hyphen_values = true)]
    epsilon: Option<String>,
    /// Tie-formation weight of grs_qap.
    #[arg(long, value_name = "Q", allow_hyphen_values = true)]
    alpha: Option<String>,
    /// Net-score clipping for the net methods.
    #[arg(long, value_enum, default_value_t = PsiArg::Plus)]
    psi: PsiArg,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum DomainArg {
    Weak,
    Linear,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum PsiArg {
    Plus,
    Crow,
    Shifted,
}

impl MethodArgs {
    fn spec(&self, array: &ComparisonArray) -> rankagg::Result<MethodSpec> {
        let psi = match self.psi {
            PsiArg::Plus => PsiKind::Plus,
            PsiArg::Crow => PsiKind::Crow,
            PsiArg::Shifted => PsiKind::Shifted,
        };
        let beta = self
            .beta
            .as_deref()
            .map(parse_rational)
            .transpose()?;
        let alpha = self
            .alpha
            .as_deref()
            .map(parse_rational)
            .transpose()?;
        let epsilon: Option<Rational> = match self.epsilon.as_deref() {
            None => None,
            Some("reasonable-max") => Some(rankagg::grs::reasonable_epsilon_max(
                array.n(),
                array.m(),
            )?),
            Some(q) => Some(parse_rational(q)?),
        };
        let method = match self.method.as_str() {
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
                beta: beta.ok_or(rankagg::Error::MissingParameter {
                    method: "beta_ls",
                    param: "--beta",
                })?,
            },
            "grs_qap" => Method::GrsQap { alpha, epsilon },
            "grs" => Method::Grs { epsilon },
            other => {
                return Err(rankagg::Error::Parse(format!("unknown method {other:?}")))
            }
        };
        let domain = match self.domain {
            DomainArg::Weak => Domain::Weak,
            DomainArg::Linear => Domain::Linear,
        };
        Ok(MethodSpec::new(method, domain))
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputArg {
    Text,
    Json,
}

#[derive(Args)]
struct RankArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    method: MethodArgs,
    /// Print every optimal order, not only the first.
    #[arg(long)]
    all_optima: bool,
    #[arg(long, value_enum, default_value_t = OutputArg::Text)]
    output: OutputArg,
    /// Parallel evaluation workers (output is identical for any value).
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Enumeration cap on n.
    #[arg(long)]
    cap: Option<usize>,
    /// Write a reloadable run record to this path.
    #[arg(long)]
    record: Option<PathBuf>,
}

#[derive(Args)]
struct AuditArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Axiom to audit: sc or scm.
    #[arg(long)]
    axiom: String,
    /// Audit one explicit order, e.g. "[X1] > [X2 X3] > [X4]".
    #[arg(long, conflicts_with = "method")]
    order: Option<String>,
    /// Audit every optimal order of this method.
    #[arg(long)]
    method: Option<String>,
    #[arg(long, value_enum, default_value_t = DomainArg::Weak)]
    domain: DomainArg,
    #[arg(long, value_name = "Q", allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long, value_name = "Q", allow_hyphen_values = true)]
    epsilon: Option<String>,
    #[arg(long, value_name = "Q", allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, value_enum, default_value_t = PsiArg::Plus)]
    psi: PsiArg,
    /// Exclude the confronted pair's direct outcomes from correspondences.
    #[arg(long)]
    exclude_direct: bool,
    /// Also report pairs whose verdict flips without direct outcomes.
    #[arg(long)]
    direct_sensitivity: bool,
    #[arg(long, value_enum, default_value_t = OutputArg::Text)]
    output: OutputArg,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Args)]
struct FixtureArgs {
    /// Fixture name (fig1, figA1..figA5).
    #[arg(long)]
    name: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, value_name = "Q", allow_hyphen_values = true)]
    r_max: Option<String>,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TheoremArgs {
    /// Suite id T1..T8, or `all`.
    #[arg(long)]
    id: String,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Number of alternatives.
    #[arg(long)]
    n: usize,
    /// Enumeration cap override.
    #[arg(long)]
    cap: Option<usize>,
}

fn optimize_options(jobs: usize, cap: Option<usize>) -> OptimizeOptions {
    OptimizeOptions {
        weak_cap: cap.unwrap_or(DEFAULT_WEAK_CAP),
        linear_cap: cap.unwrap_or(DEFAULT_LINEAR_CAP),
        jobs,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap prints help/version through the error path as well
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> rankagg::Result<ExitCode> {
    match cli.command {
        Command::Rank(args) => run_rank(args),
        Command::Audit(args) => run_audit(args),
        Command::Fixture(args) => run_fixture(args),
        Command::Theorem(args) => run_theorem(args),
        Command::Enumerate(args) => run_enumerate(args),
    }
}

fn run_rank(args: RankArgs) -> rankagg::Result<ExitCode> {
    let array = args.input.load()?;
    let spec = args.method.spec(&array)?;
    let opts = optimize_options(args.jobs, args.cap);

    let start = std::time::Instant::now();
    let result = rank(&spec, &array, &opts)?;
    let wall_ms = start.elapsed().as_millis() as u64;

    let output = match &result {
        RankResult::Optima(set) => RunOutput::Optima {
            value: format_rational(&set.value),
            orders: set.orders.iter().map(order_blocks).collect(),
        },
        RankResult::Scores { x, epsilon, order } => RunOutput::Scores {
            epsilon: format_rational(epsilon),
            x: x.iter().map(format_rational).collect(),
            order: order_blocks(order),
        },
    };
    let record = RunRecord {
        method: spec.method.to_string(),
        domain: spec.domain.to_string(),
        input_digest: digest(&array),
        output,
        audits: Vec::new(),
        wall_ms,
    };
    if let Some(path) = &args.record {
        save_run(path, &record)?;
    }

    match args.output {
        OutputArg::Json => println!(
            "{}",
            serde_json::to_string_pretty(&record).expect("record serializes")
        ),
        OutputArg::Text => match &result {
            RankResult::Optima(set) => {
                println!("objective: {}", format_rational(&set.value));
                if args.all_optima {
                    for order in &set.orders {
                        println!("{order}");
                    }
                } else {
                    println!("{}", set.orders[0]);
                    if set.orders.len() > 1 {
                        println!(
                            "({} optimal orders total; pass --all-optima to list them)",
                            set.orders.len()
                        );
                    }
                }
            }
            RankResult::Scores { x, epsilon, order } => {
                println!("{order}");
                let scores: Vec<String> = x.iter().map(format_rational).collect();
                println!("x: {}", scores.join(" "));
                println!("epsilon: {}", format_rational(epsilon));
            }
        },
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_axiom(s: &str) -> rankagg::Result<Axiom> {
    match s.to_ascii_lowercase().as_str() {
        "sc" => Ok(Axiom::SelfConsistency),
        "scm" => Ok(Axiom::SelfConsistentMonotonicity),
        other => Err(rankagg::Error::Parse(format!("unknown axiom {other:?}"))),
    }
}

/// Parses "[X1] > [X2 X3] > [X4]" (bare indexes are accepted too).
fn parse_order(spec: &str, n: usize) -> rankagg::Result<WeakOrder> {
    let mut blocks = Vec::new();
    for chunk in spec.split('>') {
        let cleaned = chunk.replace(['[', ']'], " ");
        let mut block = Vec::new();
        for token in cleaned.split_whitespace() {
            let token = token.strip_prefix('X').or(token.strip_prefix('x')).unwrap_or(token);
            let idx: usize = token
                .parse()
                .map_err(|_| rankagg::Error::Parse(format!("bad alternative {token:?}")))?;
            if idx == 0 {
                return Err(rankagg::Error::Parse("alternatives are 1-based".into()));
            }
            block.push(idx - 1);
        }
        if !block.is_empty() {
            blocks.push(block);
        }
    }
    WeakOrder::from_blocks(n, blocks)
}

fn print_report(order: &WeakOrder, report: &AuditReport) {
    println!("order: {order}");
    for pair in &report.pairs {
        if pair.violation {
            println!(
                "  violation at (X{}, X{}): {:?} premise, order concludes otherwise",
                pair.first + 1,
                pair.second + 1,
                pair.premise
            );
        }
    }
    println!("violations: {}", report.violations());
}

fn run_audit(args: AuditArgs) -> rankagg::Result<ExitCode> {
    let array = args.input.load()?;
    let axiom = parse_axiom(&args.axiom)?;
    let audit_opts = AuditOptions {
        include_direct: !args.exclude_direct,
    };
    let opts = optimize_options(args.jobs, args.cap);

    let audited: Vec<(WeakOrder, AuditReport)> = if let Some(order_spec) = &args.order {
        let order = parse_order(order_spec, array.n())?;
        let report = audit_order(&array, &order, axiom, &audit_opts)?;
        vec![(order, report)]
    } else if args.method.is_some() {
        let margs = MethodArgs {
            method: args.method.clone().unwrap(),
            domain: args.domain,
            beta: args.beta.clone(),
            epsilon: args.epsilon.clone(),
            alpha: args.alpha.clone(),
            psi: args.psi,
        };
        let spec = margs.spec(&array)?;
        rankagg::axioms::audit_operator(&spec, &array, axiom, &audit_opts, &opts)?
    } else {
        return Err(rankagg::Error::BadParameter(
            "provide --order or --method".into(),
        ));
    };

    match args.output {
        OutputArg::Json => {
            let summaries: Vec<AuditSummary> = audited
                .iter()
                .map(|(order, report)| AuditSummary {
                    axiom: args.axiom.to_ascii_lowercase(),
                    order: order_blocks(order),
                    violations: report.violations(),
                    violating_pairs: report
                        .pairs
                        .iter()
                        .filter(|p| p.violation)
                        .map(|p| (p.first + 1, p.second + 1))
                        .collect(),
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&summaries).expect("summaries serialize")
            );
        }
        OutputArg::Text => {
            for (order, report) in &audited {
                print_report(order, report);
            }
            let total: usize = audited.iter().map(|(_, r)| r.violations()).sum();
            println!(
                "result: {}",
                if total == 0 { "no violations" } else { "violations found" }
            );
        }
    }

    if args.direct_sensitivity {
        for (order, _) in &audited {
            let flips = rankagg::axioms::direct_outcome_sensitivity(&array, order, axiom)?;
            if flips.is_empty() {
                println!("direct-outcome sensitivity: none");
            } else {
                let list: Vec<String> = flips
                    .iter()
                    .map(|(i, j)| format!("(X{}, X{})", i + 1, j + 1))
                    .collect();
                println!("direct-outcome sensitivity: {}", list.join(" "));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_fixture(args: FixtureArgs) -> rankagg::Result<ExitCode> {
    let mut fixture = Fixture::new(FixtureName::parse(&args.name)?);
    let (dn, dm) = (fixture.n, fixture.m);
    fixture = fixture.with_size(args.n.unwrap_or(dn), args.m.unwrap_or(dm));
    if let Some(r) = &args.r_max {
        fixture = fixture.with_r_max(parse_rational(r)?);
    }
    let array = fixture.build()?;
    match &args.out {
        Some(path) => io::save_array(path, &array)?,
        None => println!("{}", array_to_json(&array)),
    }
    Ok(ExitCode::SUCCESS)
}

fn run_theorem(args: TheoremArgs) -> rankagg::Result<ExitCode> {
    let ids: Vec<TheoremId> = if args.id.eq_ignore_ascii_case("all") {
        TheoremId::ALL.to_vec()
    } else {
        vec![TheoremId::parse(&args.id)?]
    };
    let mut all_pass = true;
    for id in ids {
        let report = run_theorem_suite(id);
        println!("{}: {}", report.id, if report.pass { "PASS" } else { "FAIL" });
        for line in &report.lines {
            println!("  {line}");
        }
        all_pass &= report.pass;
    }
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    })
}

fn run_enumerate(args: EnumerateArgs) -> rankagg::Result<ExitCode> {
    let cap = args.cap.unwrap_or(DEFAULT_WEAK_CAP);
    let count = weak_orders_with_cap(args.n, cap)?.count();
    println!("{count}");
    Ok(ExitCode::SUCCESS)
}
