mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use zslab::invariants::{self, DenseKind};
use zslab::verify::{self, CheckReport};
use zslab::{Config, Error, GroupSpec, WeightFunction};

use output::{Echo, Format};

/// Exact solvers and checks for zero-sum invariants of finite abelian groups.
#[derive(Parser)]
#[command(name = "zslab", version)]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    output: Format,
    /// Largest group order the solvers accept.
    #[arg(long, env = "ZSLAB_GROUP_CAP", global = true, value_parser = clap::value_parser!(u64).range(1..))]
    group_cap: Option<u64>,
    /// Longest sequence passed to labeled factorization counting.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    oracle_len_cap: Option<u64>,
    /// Solver threads (default: available parallelism).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
    /// Seed for sampled conjecture checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve k, K, K1, D or N1 for a group.
    Invariant {
        /// Cyclic orders, e.g. `4,3` for C4 ⊕ C3; `1` is the trivial group.
        #[arg(long)]
        group: GroupSpec,
        #[arg(long, value_enum)]
        which: Which,
        /// Weight for k and K1 (K is always cross; D and N1 are lengths).
        #[arg(long, value_enum)]
        weight: Option<Weight>,
    },
    /// Evaluate a closed-form conjectured value.
    Formula {
        #[arg(long)]
        group: GroupSpec,
        #[arg(long, value_enum)]
        which: FormulaKind,
    },
    /// Wideness of p over n, or of the integer n when --p is omitted.
    Wide {
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        n: u64,
        /// Use the 2-wide variant.
        #[arg(long)]
        two: bool,
    },
    /// The dense witness, or with --all every dense sequence.
    Dense {
        #[arg(long)]
        group: GroupSpec,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        all: bool,
    },
    /// Run one check.
    Verify(VerifyArgs),
    /// Run the full battery of checks.
    Suite,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    #[value(name = "k")]
    LittleK,
    #[value(name = "K")]
    BigK,
    #[value(name = "K1")]
    K1,
    #[value(name = "D")]
    D,
    #[value(name = "N1")]
    N1,
}

#[derive(Clone, Copy, ValueEnum)]
enum Weight {
    Cross,
    Length,
    Dyadic,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormulaKind {
    #[value(name = "kstar")]
    LittleK,
    #[value(name = "Kstar")]
    BigK,
    #[value(name = "K1star")]
    K1,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Zsf,
    Ufis,
}

impl From<Kind> for DenseKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Zsf => DenseKind::Zsf,
            Kind::Ufis => DenseKind::Ufis,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckId {
    #[value(name = "k_bounds")]
    KBounds,
    #[value(name = "k_star")]
    KStar,
    #[value(name = "K1_star")]
    K1Star,
    #[value(name = "amalgamation")]
    Amalgamation,
    #[value(name = "lemma4")]
    Lemma4,
    #[value(name = "additivity_k")]
    AdditivityK,
    #[value(name = "additivity_K1")]
    AdditivityK1,
    #[value(name = "toplift")]
    Toplift,
    #[value(name = "eq6_oddcount")]
    Eq6Oddcount,
    #[value(name = "conj5")]
    Conj5,
    #[value(name = "conj6")]
    Conj6,
    #[value(name = "gao_n1")]
    GaoN1,
    #[value(name = "weighted_additivity")]
    WeightedAdditivity,
    #[value(name = "twoprime")]
    Twoprime,
    #[value(name = "lemma3")]
    Lemma3,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    check: CheckId,
    #[arg(long)]
    group: Option<GroupSpec>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    alpha: Option<u32>,
    /// Exponents for toplift, largest first, e.g. `2,1`.
    #[arg(long, value_delimiter = ',')]
    alphas: Vec<u32>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    beta: Option<u32>,
    /// Rank of the elementary group for conjecture checks.
    #[arg(long)]
    k: Option<u32>,
    #[arg(long, default_value_t = 6)]
    len_cap: u64,
    #[arg(long, default_value_t = 0)]
    samples: u64,
    /// Element order for the amalgamation bound.
    #[arg(long)]
    ell: Option<u64>,
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    /// Longest multiset for the lemma3 comparison.
    #[arg(long, default_value_t = 6)]
    max_len: u64,
}

/// Why a command did not produce its payload.
enum Failure {
    Usage(String),
    Toolkit(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Toolkit(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("this check needs --{flag}")))
}

fn config(opts: &GlobalOpts) -> Config {
    let mut cfg = Config::default();
    if let Some(c) = opts.group_cap {
        cfg.group_cap = c;
    }
    if let Some(c) = opts.oracle_len_cap {
        cfg.oracle_len_cap = c;
    }
    if let Some(t) = opts.threads {
        cfg.threads = t as usize;
    }
    if let Some(s) = opts.seed {
        cfg.seed = s;
    }
    cfg
}

fn run_check(a: &VerifyArgs, cfg: &Config) -> Result<CheckReport, Failure> {
    let group = || need(a.group.clone(), "group");
    let kind = || need(a.kind, "kind").map(DenseKind::from);
    Ok(match a.check {
        CheckId::KBounds => verify::check_k_bounds(&group()?, cfg)?,
        CheckId::KStar => verify::check_k_star(&group()?, cfg)?,
        CheckId::K1Star => verify::check_K1_star(&group()?, cfg)?,
        CheckId::Amalgamation => {
            verify::check_amalgamation_lemma(&group()?, need(a.ell, "ell")?, kind()?, cfg)?
        }
        CheckId::Lemma4 => verify::check_lemma4(&group()?, kind()?, cfg)?,
        CheckId::AdditivityK => {
            verify::check_additivity_k(need(a.p, "p")?, need(a.alpha, "alpha")?, &group()?, cfg)?
        }
        CheckId::AdditivityK1 => {
            verify::check_additivity_K1(need(a.p, "p")?, need(a.alpha, "alpha")?, &group()?, cfg)?
        }
        CheckId::Toplift => {
            if a.alphas.is_empty() {
                return Err(Failure::Usage("this check needs --alphas".into()));
            }
            verify::check_toplift(need(a.p, "p")?, &a.alphas, cfg)?
        }
        CheckId::Eq6Oddcount => verify::check_eq6_and_oddcount(need(a.p, "p")?, need(a.n, "n")?, cfg)?,
        CheckId::Conj5 => {
            verify::check_conjecture5(need(a.p, "p")?, need(a.k, "k")?, a.len_cap, a.samples, cfg)?
        }
        CheckId::Conj6 => {
            verify::check_conjecture6(need(a.p, "p")?, need(a.k, "k")?, a.len_cap, a.samples, cfg)?
        }
        CheckId::GaoN1 => verify::check_gao_n1(need(a.p, "p")?, need(a.n, "n")?, cfg)?,
        CheckId::WeightedAdditivity => {
            verify::check_weighted_additivity(need(a.p, "p")?, need(a.alpha, "alpha")?, &group()?, cfg)?
        }
        CheckId::Twoprime => verify::check_twoprime(
            need(a.p, "p")?,
            need(a.alpha, "alpha")?,
            need(a.q, "q")?,
            need(a.beta, "beta")?,
            cfg,
        )?,
        CheckId::Lemma3 => verify::check_lemma3(&group()?, a.max_len, cfg)?,
    })
}

fn solve(
    group: &GroupSpec,
    which: Which,
    weight: Option<Weight>,
    cfg: &Config,
) -> Result<invariants::SolveResult, Failure> {
    let w = match weight {
        None | Some(Weight::Cross) => WeightFunction::Cross,
        Some(Weight::Length) => WeightFunction::Length,
        Some(Weight::Dyadic) => WeightFunction::Dyadic,
    };
    if weight.is_some() && !matches!(which, Which::LittleK | Which::K1) {
        return Err(Failure::Usage("--weight applies only to k and K1".into()));
    }
    Ok(match which {
        Which::LittleK => invariants::solve_little_k(group, &w, cfg)?,
        Which::BigK => invariants::solve_big_K(group, cfg)?,
        Which::K1 => invariants::solve_K1(group, &w, cfg)?,
        Which::D => invariants::solve_davenport(group, cfg)?,
        Which::N1 => invariants::solve_narkiewicz(group, cfg)?,
    })
}

/// Runs the command; `Ok(false)` means it ran but the verdict is negative.
fn execute(cli: Cli) -> Result<bool, Failure> {
    let cfg = config(&cli.opts);
    let echo = Echo::new(&cfg, cli.opts.output);
    match cli.command {
        Command::Invariant { group, which, weight } => {
            let r = solve(&group, which, weight, &cfg)?;
            output::emit(&echo, "result", &[output::solve_item(&r)])?;
        }
        Command::Formula { group, which } => {
            let (name, v) = match which {
                FormulaKind::LittleK => ("kstar", invariants::k_star(&group)),
                FormulaKind::BigK => ("Kstar", invariants::K_star(&group)),
                FormulaKind::K1 => ("K1star", invariants::K1_star(&group)),
            };
            output::emit(&echo, "result", &[output::formula_item(&group, name, &v)])?;
        }
        Command::Wide { p, n, two } => {
            let item = match p {
                Some(p) if two => output::wide_item(&invariants::is_2wide(p, n)?),
                Some(p) => output::wide_item(&invariants::is_wide(p, n)?),
                None if two => output::wide_integer_item(n, true, invariants::is_2wide_integer(n)?),
                None => output::wide_integer_item(n, false, invariants::is_wide_integer(n)?),
            };
            output::emit(&echo, "result", &[item])?;
        }
        Command::Dense { group, kind, all } => {
            if all {
                let d = invariants::all_dense_witnesses(&group, kind.into(), &cfg)?;
                let (json, rows) = output::dense_items(&d);
                match echo.output {
                    Format::Json => output::emit_json(&echo, "result", &[json])?,
                    _ => output::emit_rows(&echo, &rows)?,
                }
            } else {
                let r = invariants::dense_witness(&group, kind.into(), &cfg)?;
                output::emit(&echo, "result", &[output::solve_item(&r)])?;
            }
        }
        Command::Verify(args) => {
            let r = run_check(&args, &cfg)?;
            output::emit(&echo, "report", &[output::report_item(&r)])?;
            return Ok(!r.failed());
        }
        Command::Suite => {
            let reports = verify::run_suite(&cfg)?;
            let items: Vec<_> = reports.iter().map(output::report_item).collect();
            output::emit(&echo, "report", &items)?;
            let count = |f: fn(&CheckReport) -> bool| reports.iter().filter(|r| f(r)).count();
            let blockers = count(CheckReport::is_release_blocker);
            let conjectures = count(|r| r.failed() && !r.is_release_blocker());
            eprintln!(
                "{} checks: {} pass, {} fail ({} release-blocking), {} skipped",
                reports.len(),
                count(CheckReport::passed),
                count(CheckReport::failed),
                blockers,
                reports.len() - count(CheckReport::passed) - count(CheckReport::failed),
            );
            if conjectures > 0 {
                eprintln!("note: {conjectures} conjecture checks found counterexamples; see their witnesses");
            }
            return Ok(blockers == 0);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Toolkit(e @ Error::CapExceeded { .. })) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Toolkit(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
