use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use cobisim::io::{
    load_relation_file, load_system, parse_json, to_canonical_json, BackendTag, CheckReport, Codec, ErrorCode, IoError, IoResult, Loaded,
    RelationFile, System,
};
use cobisim::laws::{self, Caps, LawConfig, Suite, SuiteReport};
use cobisim::simulation::{order_by_name, OrderHandle, Simulation};
use cobisim::verify::{verify_bisim_witness, verify_witness, Verdict};
use cobisim::{Bisim, BisimKind, Coalgebra, ElementCategory, GSet, Relation, Topos};

#[derive(Parser)]
#[command(name = "cobisim", version, about = "Bisimulations, simulations and relation algebra for coalgebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a relation is a bisimulation or simulation of the given kind.
    Check(CheckArgs),
    /// Print the largest regular AM bisimulation between two systems.
    Bisimilarity(PairArgs),
    /// Print the largest simulation between two systems.
    Similarity(SimilarityArgs),
    /// Run the seeded law suites.
    Laws(LawsArgs),
    /// Re-verify the witness embedded in a check report.
    VerifyWitness(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Am,
    Regular,
    Hj,
    Behavioural,
    Toposal,
    Simulation,
    ToposalSimulation,
}

#[derive(Args)]
struct PairArgs {
    /// System file of the left coalgebra.
    left: PathBuf,
    /// System file of the right coalgebra.
    right: PathBuf,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    systems: PairArgs,
    #[arg(long, value_enum)]
    kind: Kind,
    /// Relation file between the two carriers.
    #[arg(long)]
    relation: PathBuf,
    /// Order on F-elements for simulation kinds.
    #[arg(long, default_value = "subset")]
    order: String,
    /// Emit the full JSON report.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SimilarityArgs {
    #[command(flatten)]
    systems: PairArgs,
    #[arg(long, default_value = "subset")]
    order: String,
}

#[derive(Args)]
struct LawsArgs {
    /// Suite name, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Restrict to one backend; defaults to every backend the suite supports.
    #[arg(long, value_enum)]
    backend: Option<BackendArg>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random instances per suite and backend.
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Default cap overrides as `key=value,...` (keys: states, labels, dim, group, pow_carrier).
    #[arg(long, env = "COBISIM_CAPS", default_value = "")]
    caps: String,
    #[arg(long)]
    max_states: Option<usize>,
    #[arg(long)]
    max_labels: Option<usize>,
    #[arg(long)]
    max_dim: Option<usize>,
    #[arg(long)]
    max_group: Option<usize>,
    #[arg(long)]
    max_pow_carrier: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BackendArg {
    Finset,
    Gset,
    Vect,
}

impl From<BackendArg> for BackendTag {
    fn from(b: BackendArg) -> BackendTag {
        match b {
            BackendArg::Finset => BackendTag::Finset,
            BackendArg::Gset => BackendTag::Gset,
            BackendArg::Vect => BackendTag::Vect,
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    systems: PairArgs,
    #[arg(long)]
    relation: PathBuf,
    /// A JSON report produced by `check --json`.
    #[arg(long)]
    report: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Check(args) => check(&args),
        Command::Bisimilarity(args) => bisimilarity(&args).map(|()| true),
        Command::Similarity(args) => similarity(&args).map(|()| true),
        Command::Laws(args) => run_laws(&args),
        Command::VerifyWitness(args) => verify(&args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}

/// Two systems on the same backend.
enum Pair {
    FinSet(Box<Loaded<cobisim::FinSet>>, Box<Loaded<cobisim::FinSet>>),
    GSet(Box<Loaded<GSet>>, Box<Loaded<GSet>>),
    Vect(Box<Loaded<cobisim::Vect>>, Box<Loaded<cobisim::Vect>>),
}

fn load_pair(args: &PairArgs) -> IoResult<Pair> {
    let a = load_system(&args.left)?;
    let b = load_system(&args.right)?;
    match (a, b) {
        (System::FinSet(a), System::FinSet(b)) => Ok(Pair::FinSet(Box::new(a), Box::new(b))),
        (System::GSet(a), System::GSet(b)) => {
            if a.cat.group() != b.cat.group() {
                return Err(IoError::new(ErrorCode::Incompatible, "group", "the systems act by different groups"));
            }
            Ok(Pair::GSet(Box::new(a), Box::new(b)))
        }
        (System::Vect(a), System::Vect(b)) => {
            if a.cat.prime() != b.cat.prime() {
                return Err(IoError::new(ErrorCode::Incompatible, "prime", "the systems live over different fields"));
            }
            Ok(Pair::Vect(Box::new(a), Box::new(b)))
        }
        (a, b) => Err(IoError::new(
            ErrorCode::Incompatible,
            "backend",
            format!("the systems live on different backends ({} and {})", a.backend().as_str(), b.backend().as_str()),
        )),
    }
}

fn functors_match<C: cobisim::RegularCategory>(a: &Coalgebra<C>, b: &Coalgebra<C>) -> IoResult<()> {
    cobisim::functor::same_functor(a.functor(), b.functor()).map_err(IoError::from)
}

fn load_relation<C: Codec>(bisim: &Bisim<C>, path: &Path, a: &Coalgebra<C>, b: &Coalgebra<C>) -> IoResult<Relation<C>> {
    let file = load_relation_file(path)?;
    bisim
        .cat()
        .relation_from_file(bisim.rel(), &file, a.carrier(), b.carrier())
        .map_err(|e| e.in_file(&path.display().to_string()))
}

fn get_order(name: &str) -> IoResult<OrderHandle> {
    order_by_name(name).ok_or_else(|| IoError::new(ErrorCode::Invalid, "--order", format!("unknown order '{name}'")))
}

fn bisim_kind(kind: Kind) -> Option<BisimKind> {
    match kind {
        Kind::Am => Some(BisimKind::Am),
        Kind::Regular => Some(BisimKind::Regular),
        Kind::Hj => Some(BisimKind::Hj),
        Kind::Behavioural => Some(BisimKind::Behavioural),
        Kind::Toposal => Some(BisimKind::Toposal),
        Kind::Simulation | Kind::ToposalSimulation => None,
    }
}

fn bisim_report<C: Codec>(bisim: &Bisim<C>, kind: BisimKind, r: &Relation<C>, a: &Coalgebra<C>, b: &Coalgebra<C>) -> IoResult<CheckReport> {
    let report = match kind {
        BisimKind::Am => bisim.is_am(r, a, b)?,
        BisimKind::Regular => bisim.is_regular_am(r, a, b)?,
        BisimKind::Hj => bisim.is_hj(r, a, b)?,
        BisimKind::Behavioural => bisim.is_behavioural_equivalence(r, a, b)?,
        BisimKind::Toposal => {
            return Err(IoError::new(ErrorCode::Capability, "--kind", format!("{} has no power objects", bisim.cat().tag().as_str())));
        }
    };
    CheckReport::from_bisim(bisim.cat(), bisim.rel(), a.functor().name(), &report)
}

fn element_report<C: Codec + ElementCategory>(cat: &C, args: &CheckArgs, a: &Coalgebra<C>, b: &Coalgebra<C>) -> IoResult<CheckReport> {
    functors_match(a, b)?;
    let sim = Simulation::new(cat.clone());
    let bisim = sim.topos().bisim();
    let r = load_relation(bisim, &args.relation, a, b)?;
    match args.kind {
        Kind::Toposal => {
            let report = Topos::new(cat.clone()).is_toposal(&r, a, b)?;
            CheckReport::from_bisim(cat, bisim.rel(), a.functor().name(), &report)
        }
        Kind::Simulation | Kind::ToposalSimulation => {
            let ord = get_order(&args.order)?;
            let report = if args.kind == Kind::Simulation {
                sim.is_am_simulation(&r, a, b, ord.as_ref())?
            } else {
                sim.is_toposal_am_simulation(&r, a, b, ord.as_ref())?
            };
            CheckReport::from_sim(cat, a.functor().name(), ord.name(), &report)
        }
        other => bisim_report(bisim, bisim_kind(other).expect("bisimulation kind"), &r, a, b),
    }
}

fn check(args: &CheckArgs) -> IoResult<bool> {
    let report = match load_pair(&args.systems)? {
        Pair::FinSet(a, b) => element_report(&a.cat, args, &a.coalgebra, &b.coalgebra)?,
        Pair::GSet(a, b) => element_report(&a.cat, args, &a.coalgebra, &b.coalgebra)?,
        Pair::Vect(a, b) => {
            functors_match(&a.coalgebra, &b.coalgebra)?;
            let Some(kind) = bisim_kind(args.kind).filter(|k| *k != BisimKind::Toposal) else {
                return Err(IoError::new(ErrorCode::Capability, "--kind", "vect has no power objects; toposal and simulation checks are unavailable"));
            };
            let bisim = Bisim::new(a.cat);
            let r = load_relation(&bisim, &args.relation, &a.coalgebra, &b.coalgebra)?;
            bisim_report(&bisim, kind, &r, &a.coalgebra, &b.coalgebra)?
        }
    };
    if args.json {
        print!("{}", to_canonical_json(&report)?);
    } else {
        println!("{}: {}", report.kind, report.verdict);
        for p in &report.failing_pairs {
            println!("  failing: {p}");
        }
        for n in &report.notes {
            println!("  note: {n}");
        }
    }
    Ok(report.verdict)
}

fn emit_relation<C: Codec>(bisim: &Bisim<C>, r: &Relation<C>, args: &PairArgs) -> IoResult<()> {
    let mut file: RelationFile = bisim.cat().relation_file(bisim.rel(), r)?;
    file.dom = Some(args.left.display().to_string());
    file.cod = Some(args.right.display().to_string());
    print!("{}", to_canonical_json(&file)?);
    Ok(())
}

fn bisimilarity(args: &PairArgs) -> IoResult<()> {
    fn go<C: Codec>(cat: &C, a: &Coalgebra<C>, b: &Coalgebra<C>, args: &PairArgs) -> IoResult<()> {
        functors_match(a, b)?;
        let bisim = Bisim::new(cat.clone());
        let r = bisim.bisimilarity(a, b)?;
        emit_relation(&bisim, &r, args)
    }
    match load_pair(args)? {
        Pair::FinSet(a, b) => go(&a.cat, &a.coalgebra, &b.coalgebra, args),
        Pair::GSet(a, b) => go(&a.cat, &a.coalgebra, &b.coalgebra, args),
        Pair::Vect(a, b) => go(&a.cat, &a.coalgebra, &b.coalgebra, args),
    }
}

fn similarity(args: &SimilarityArgs) -> IoResult<()> {
    fn go<C: Codec + ElementCategory>(cat: &C, a: &Coalgebra<C>, b: &Coalgebra<C>, args: &SimilarityArgs) -> IoResult<()> {
        functors_match(a, b)?;
        let ord = get_order(&args.order)?;
        let sim = Simulation::new(cat.clone());
        let r = sim.similarity(a, b, ord.as_ref())?;
        emit_relation(sim.topos().bisim(), &r, &args.systems)
    }
    match load_pair(&args.systems)? {
        Pair::FinSet(a, b) => go(&a.cat, &a.coalgebra, &b.coalgebra, args),
        Pair::GSet(a, b) => go(&a.cat, &a.coalgebra, &b.coalgebra, args),
        Pair::Vect(..) => Err(IoError::new(ErrorCode::Capability, "similarity", "vect has no power objects; simulations are unavailable")),
    }
}

fn caps_of(args: &LawsArgs) -> IoResult<Caps> {
    let mut caps = Caps::default()
        .with_overrides(&args.caps)
        .map_err(|e| IoError::new(ErrorCode::Invalid, "--caps", e))?;
    let overrides = [
        (args.max_states, &mut caps.states),
        (args.max_labels, &mut caps.labels),
        (args.max_dim, &mut caps.dim),
        (args.max_group, &mut caps.group),
        (args.max_pow_carrier, &mut caps.pow_carrier),
    ];
    for (value, slot) in overrides {
        if let Some(v) = value {
            *slot = v;
        }
    }
    Ok(caps)
}

fn run_laws(args: &LawsArgs) -> IoResult<bool> {
    let cfg = LawConfig { seed: args.seed, trials: args.trials, caps: caps_of(args)? };
    let suites: Vec<Suite> = if args.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![args.suite.parse().map_err(|e: String| IoError::new(ErrorCode::Invalid, "--suite", e))?]
    };
    let mut reports: Vec<SuiteReport> = Vec::new();
    for suite in &suites {
        let backends: Vec<BackendTag> = match args.backend {
            Some(b) => {
                let tag = BackendTag::from(b);
                if !suite.backends().contains(&tag) {
                    if args.suite == "all" {
                        continue;
                    }
                    return Err(IoError::new(ErrorCode::Capability, "--backend", format!("suite {suite} does not run on {}", tag.as_str())));
                }
                vec![tag]
            }
            None => suite.backends().to_vec(),
        };
        for backend in backends {
            reports.push(laws::run(*suite, backend, &cfg)?);
        }
    }
    let passed = reports.iter().all(SuiteReport::passed);
    if args.json {
        print!("{}", to_canonical_json(&json!({ "passed": passed, "caps": cfg.caps, "reports": reports }))?);
    } else {
        for report in &reports {
            let status = if report.passed() { "pass" } else { "FAIL" };
            println!(
                "{status} {} on {} (seed {}, {} checked, {} skipped)",
                report.suite,
                report.backend,
                report.seed,
                report.checked(),
                report.skipped()
            );
            for c in &report.checks {
                if !c.as_expected() {
                    match &c.counterexample {
                        Some(why) => println!("  violated: {}: {why}", c.axiom),
                        None => println!("  no counterexample found for expected failure: {}", c.axiom),
                    }
                } else if !c.expected {
                    println!("  exhibit for {}: {}", c.axiom, c.counterexample.as_deref().unwrap_or(""));
                }
            }
        }
    }
    Ok(passed)
}

fn verify(args: &VerifyArgs) -> IoResult<bool> {
    let path = args.report.display().to_string();
    let text = std::fs::read_to_string(&args.report).map_err(|e| IoError::new(ErrorCode::Io, &path, e.to_string()))?;
    let report: CheckReport = parse_json(&text).map_err(|e| e.in_file(&path))?;
    fn element<C: Codec + ElementCategory>(cat: &C, args: &VerifyArgs, report: &CheckReport, a: &Coalgebra<C>, b: &Coalgebra<C>) -> IoResult<Verdict> {
        functors_match(a, b)?;
        let sim = Simulation::new(cat.clone());
        let bisim = Bisim::new(cat.clone());
        let r = load_relation(&bisim, &args.relation, a, b)?;
        verify_witness(&sim, &bisim, report, &r, a, b)
    }
    let verdict = match load_pair(&args.systems)? {
        Pair::FinSet(a, b) => element(&a.cat, args, &report, &a.coalgebra, &b.coalgebra)?,
        Pair::GSet(a, b) => element(&a.cat, args, &report, &a.coalgebra, &b.coalgebra)?,
        Pair::Vect(a, b) => {
            functors_match(&a.coalgebra, &b.coalgebra)?;
            let bisim = Bisim::new(a.cat);
            let r = load_relation(&bisim, &args.relation, &a.coalgebra, &b.coalgebra)?;
            verify_bisim_witness(&bisim, &report, &r, &a.coalgebra, &b.coalgebra)?
        }
    };
    println!("{}: {}", if verdict.holds { "verified" } else { "rejected" }, verdict.detail);
    Ok(verdict.holds)
}
