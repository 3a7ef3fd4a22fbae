//! `dtour`: generate, count, bound, verify and search d-tournaments.

mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use dtour::binom::binomial_big;
use dtour::constructions::{
    geometric_induce, minority_induce_3, product_tournament, random_tournament, rotational_tournament,
    PointConfig, ProductSpec,
};
use dtour::counting::{
    closed_form_constants, count_directed_with, product_finite_fraction, sample_directed_fraction, DEFAULT_BUDGET,
};
use dtour::report::{rational_string, Report};
use dtour::search::{Search, SearchSpec, Strategy};
use dtour::tournament::parse_hot1_header;
use dtour::{Exec, Seed, Sign, Tournament};

/// Seed used whenever `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser, Debug)]
#[command(name = "dtour", version, about = "Directed simplices in d-tournaments")]
struct Cli {
    /// Print the report as one JSON object.
    #[arg(long, global = true)]
    json: bool,
    /// Append the report as a CSV row to this file.
    #[arg(long, global = true, value_name = "PATH")]
    csv: Option<PathBuf>,
    /// Worker threads (results do not depend on this).
    #[arg(long, global = true, value_name = "K")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a tournament and write it as HOT1.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Count directed simplices exactly, or estimate by sampling.
    Count {
        file: PathBuf,
        /// Estimate from this many uniform samples instead of enumerating.
        #[arg(long)]
        sample: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Maximum simplex evaluations for an exact census.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Closed-form bounds for given d and n.
    Bounds {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        /// Also report the product-construction series at this depth.
        #[arg(long)]
        m: Option<usize>,
    },
    /// Check identities exactly on a file or a generated suite.
    Verify(verify::VerifyArgs),
    /// Exact maximum of the directed count over all tournaments.
    Search(SearchArgs),
    /// Tournament induced by an integer point configuration.
    Geom {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump a HOT1 header.
    Info { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum GenKind {
    /// Independent uniform signs.
    Random {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// 3-tournament induced from a random 2-tournament by the minority rule.
    Minority {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Product construction on (d+1)^m vertices.
    Product {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: usize,
        /// Sign of the base simplex's sorted orientation.
        #[arg(long, default_value = "+", value_parser = parse_sign)]
        base_sign: Sign,
        /// Sign used for faces whose first digits repeat.
        #[arg(long, default_value = "+", value_parser = parse_sign)]
        tie_sign: Sign,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rotational 2-tournament on an odd number of vertices.
    Rotational {
        #[arg(value_name = "N", required_unless_present = "n")]
        order: Option<usize>,
        #[arg(long, conflicts_with = "order")]
        n: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long, required_unless_present = "resume")]
    d: Option<usize>,
    #[arg(long, required_unless_present = "resume")]
    n: Option<usize>,
    /// exhaustive or branch-and-bound.
    #[arg(long, default_value = "branch-and-bound", value_parser = parse_strategy)]
    strategy: Strategy,
    /// Write progress to this HOTS file.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Continue a search from a HOTS file.
    #[arg(long, conflicts_with_all = ["d", "n", "checkpoint"])]
    resume: Option<PathBuf>,
    /// Assignments between checkpoint writes.
    #[arg(long)]
    checkpoint_interval: Option<u64>,
    /// Stop after this many shards in total (leaves an incomplete result).
    #[arg(long)]
    stop_after_shards: Option<u64>,
    /// Do not fix the first sign (global negation symmetry).
    #[arg(long)]
    no_symmetry: bool,
    /// Write the witness tournament as HOT1.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    match s {
        "+" | "+1" | "1" | "plus" => Ok(Sign::Plus),
        "-" | "-1" | "minus" => Ok(Sign::Minus),
        _ => Err(format!("expected + or -, got {s:?}")),
    }
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse().map_err(|e: dtour::Error| e.to_string())
}

/// Outcome of a command: its report and whether a verification failed.
pub struct Outcome {
    pub report: Report,
    pub failed: bool,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Outcome { report, failed: false }
    }
}

fn write(t: &Tournament, path: &Path) -> anyhow::Result<String> {
    t.write_hot1(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(path.display().to_string())
}

fn read(path: &Path) -> anyhow::Result<Tournament> {
    Tournament::read_hot1(path).with_context(|| format!("reading {}", path.display()))
}

fn gen(kind: GenKind) -> anyhow::Result<Report> {
    let mut r = Report::new("gen");
    let (t, name, out) = match kind {
        GenKind::Random { d, n, seed, out } => {
            let seed = seed.unwrap_or(DEFAULT_SEED);
            r.seed = Some(seed);
            (random_tournament(d, n, Seed(seed))?, "random", out)
        }
        GenKind::Minority { n, seed, out } => {
            let seed = seed.unwrap_or(DEFAULT_SEED);
            r.seed = Some(seed);
            let t2 = random_tournament(2, n, Seed(seed))?;
            (minority_induce_3(&t2)?, "minority", out)
        }
        GenKind::Product { d, m, base_sign, tie_sign, out } => {
            let spec = ProductSpec { d, m, base_sign, tie_sign };
            r.series_fraction = Some(rational_string(&product_finite_fraction(d, m)));
            (product_tournament(&spec)?, "product", out)
        }
        GenKind::Rotational { order, n, out } => {
            let n = order.or(n).expect("clap requires one of them");
            (rotational_tournament(n)?, "rotational", out)
        }
    };
    r.kind = Some(name.into());
    r = r.shape(t.d(), t.n());
    r.sign_bits = Some(t.num_signs().to_string());
    r.output = Some(write(&t, &out)?);
    Ok(r)
}

fn count(file: &Path, sample: Option<u64>, seed: Option<u64>, budget: u128) -> anyhow::Result<Report> {
    let t = read(file)?;
    let mut r = Report::new("count");
    r.detail = Some(file.display().to_string());
    r.kind = Some(if sample.is_some() { "sampled" } else { "exact" }.into());
    match sample {
        Some(samples) => {
            let est = sample_directed_fraction(&t, samples, Seed(seed.unwrap_or(DEFAULT_SEED)))?;
            r = r.shape(t.d(), t.n()).sample(&est);
            r.total_simplices = Some(t.num_simplices().to_string());
        }
        None => {
            if seed.is_some() {
                bail!(dtour::Error::Argument("--seed only applies with --sample".into()));
            }
            r = r.census(&count_directed_with(&t, Exec::Parallel, budget)?);
        }
    }
    Ok(r)
}

fn bounds(d: usize, n: usize, m: Option<usize>) -> anyhow::Result<Report> {
    let mut r = Report::new("bounds").bounds(&closed_form_constants(d, n)?);
    if let Some(m) = m {
        r.series_fraction = Some(rational_string(&product_finite_fraction(d, m)));
    }
    Ok(r)
}

fn search(a: SearchArgs) -> anyhow::Result<Report> {
    let mut s = match &a.resume {
        Some(path) => Search::resume(path)?,
        None => {
            let mut spec = SearchSpec::new(a.d.unwrap(), a.n.unwrap(), a.strategy);
            spec.fix_first_sign = !a.no_symmetry;
            if let Some(i) = a.checkpoint_interval {
                spec.checkpoint_interval = i;
            }
            let s = Search::new(spec)?;
            match &a.checkpoint {
                Some(path) => s.checkpoint(path),
                None => s,
            }
        }
    };
    if let Some(k) = a.stop_after_shards {
        s = s.stop_after_shards(k);
    }
    let o = s.run()?;
    let mut r = Report::new("search").shape(o.d, o.n);
    r.kind = Some(o.strategy.name().into());
    r.max_count = Some(o.max_count);
    r.total_simplices = Some(binomial_big(o.n as u64, o.d as u64 + 1).to_string());
    r.assignments_explored = Some(o.assignments_explored);
    r.complete = Some(o.complete);
    r.detail = Some(format!("shards {}/{}", o.shards_done, o.total_shards));
    if let (Some(path), Some(w)) = (&a.out, &o.witness) {
        r.output = Some(write(w, path)?);
    }
    Ok(r)
}

fn geom(points: &Path, out: Option<&Path>) -> anyhow::Result<Report> {
    let cfg = PointConfig::read(points).with_context(|| format!("reading {}", points.display()))?;
    let t = geometric_induce(&cfg)?;
    let mut r = Report::new("geom").census(&count_directed_with(&t, Exec::Parallel, DEFAULT_BUDGET)?);
    r.kind = Some("geometric".into());
    if let Some(path) = out {
        r.output = Some(write(&t, path)?);
    }
    Ok(r)
}

fn info(file: &Path) -> anyhow::Result<Report> {
    let bytes = std::fs::read(file).with_context(|| format!("reading {}", file.display()))?;
    let (d, n) = parse_hot1_header(&bytes)?;
    let signs = binomial_big(n as u64, d as u64);
    let mut r = Report::new("info").shape(d, n);
    r.kind = Some("HOT1".into());
    r.sign_bits = Some(signs.to_string());
    r.total_simplices = Some(binomial_big(n as u64, d as u64 + 1).to_string());
    r.detail = Some(format!("C({n},{d})={signs} sign bits, {} bytes on disk", bytes.len()));
    Ok(r)
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    Ok(match cli.command {
        Command::Gen { kind } => gen(kind)?.into(),
        Command::Count { file, sample, seed, budget } => count(&file, sample, seed, budget)?.into(),
        Command::Bounds { d, n, m } => bounds(d, n, m)?.into(),
        Command::Verify(a) => verify::run(a)?,
        Command::Search(a) => search(a)?.into(),
        Command::Geom { points, out } => geom(&points, out.as_deref())?.into(),
        Command::Info { file } => info(&file)?.into(),
    })
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.chain().find_map(|c| c.downcast_ref::<dtour::Error>()) {
        Some(dtour::Error::Argument(_)) => 2,
        Some(dtour::Error::Budget { .. }) => 4,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (json, csv) = (cli.json, cli.csv.clone());
    let start = Instant::now();
    let result = match cli.threads {
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(|| run(cli)),
            Err(e) => Err(e.into()),
        },
        None => run(cli),
    };
    let mut outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(exit_code(&e));
        }
    };
    outcome.report.wall_time_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    if json {
        println!("{}", outcome.report.to_json());
    } else {
        print!("{}", outcome.report.to_table());
    }
    if let Some(path) = csv {
        if let Err(e) = outcome.report.append_csv(&path) {
            eprintln!("error: appending {}: {e}", path.display());
            return ExitCode::from(3);
        }
    }
    if outcome.failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
