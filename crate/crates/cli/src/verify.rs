//! Exact identity suites behind `dtour verify`.

use std::path::PathBuf;

use anyhow::bail;
use clap::{Args, ValueEnum};
use dtour::binom::{binomial, binomial_big, colex_next};
use dtour::constructions::{
    classify_4set, determinant, geometric_induce, minority_induce_3, product_directed_predicate,
    product_tournament, random_tournament, FourSetType, PointConfig, ProductSpec,
};
use dtour::counting::{
    count_directed_with, exact_upper_bound, lemma_min_pairs_exhaustive, pair_census, pair_count_upper,
    product_distinct_fraction, s_of_d, DEFAULT_BUDGET,
};
use dtour::report::{rational_string, Report};
use dtour::{Exec, KSubset, Seed, Tournament};
use num_bigint::{BigUint, Sign as BigSign};
use rand::Rng;

use crate::{Outcome, DEFAULT_SEED};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Exhaustive minimum of compatible face pairs.
    LemmaMin,
    /// Minority rule: directed tetrahedra are exactly the type I/II 4-sets.
    Thm2,
    /// Geometric census against barycentric containment.
    Geometry,
    /// Product predicate against the generated tournament.
    Product,
    /// Two routes to the compatible-pair total, plus the count bounds.
    DoubleCounting,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// HOT1 file to check with the double-counting identities.
    file: Option<PathBuf>,
    #[arg(long, value_enum)]
    suite: Option<Suite>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<u64>,
}

/// The k-subsets of `[0, n)` in colex order.
fn subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<u32>> {
    let count = binomial(n as u64, k as u64).expect("subset count fits in u64");
    let mut cur: Vec<u32> = (0..k as u32).collect();
    (0..count).map(move |i| {
        if i > 0 {
            colex_next(&mut cur);
        }
        cur.clone()
    })
}

fn report(suite: &str, failure: Option<String>, detail: String) -> Outcome {
    let mut r = Report::new("verify");
    r.kind = Some(suite.into());
    r.status = Some(if failure.is_none() { "pass" } else { "fail" }.into());
    r.detail = Some(match &failure {
        Some(f) => format!("counterexample: {f}"),
        None => detail,
    });
    Outcome { report: r, failed: failure.is_some() }
}

pub fn run(a: VerifyArgs) -> anyhow::Result<Outcome> {
    let seed = a.seed.unwrap_or(DEFAULT_SEED);
    let suite = match (a.suite, &a.file) {
        (Some(s), _) => s,
        (None, Some(_)) => Suite::DoubleCounting,
        (None, None) => bail!(dtour::Error::Argument("give a file or --suite".into())),
    };
    let mut out = match suite {
        Suite::LemmaMin => pair_minimum(a.d.unwrap_or(3))?,
        Suite::Thm2 => minority_suite(a.n.unwrap_or(8), seed)?,
        Suite::Geometry => geometry(a.d.unwrap_or(2), a.n, a.trials.unwrap_or(100), seed)?,
        Suite::Product => product(a.d.unwrap_or(2), a.m.unwrap_or(3))?,
        Suite::DoubleCounting => match &a.file {
            Some(path) => {
                let t = Tournament::read_hot1(path)?;
                let (failure, detail) = double_count_one(&t)?;
                let mut o = report("double-counting", failure, detail);
                o.report = o.report.shape(t.d(), t.n());
                o
            }
            None => double_counting(a.d.unwrap_or(3), a.n.unwrap_or(10), a.trials.unwrap_or(20), seed)?,
        },
    };
    let uses_seed = matches!(suite, Suite::Thm2 | Suite::Geometry) || (suite == Suite::DoubleCounting && a.file.is_none());
    if uses_seed {
        out.report.seed = Some(seed);
    }
    Ok(out)
}

fn pair_minimum(d: usize) -> anyhow::Result<Outcome> {
    let min = lemma_min_pairs_exhaustive(d)?;
    let failure = (min != s_of_d(d)).then(|| format!("d={d}: minimum {min}, expected {}", s_of_d(d)));
    let mut o = report("lemma-min", failure, format!("minimum {min} compatible pairs over all sign patterns"));
    o.report.d = Some(d as u32);
    o.report.s_d = Some(min);
    Ok(o)
}

fn minority_suite(n: usize, seed: u64) -> anyhow::Result<Outcome> {
    let t2 = random_tournament(2, n, Seed(seed))?;
    let t3 = minority_induce_3(&t2)?;
    let mut typed = 0u64;
    let mut failure = None;
    for four in subsets(n, 4) {
        let ks = KSubset::new(four.clone())?;
        let ty = classify_4set(&t2, &ks)?;
        let directed = t3.simplex_face_signs(&ks)?.is_directed();
        typed += (ty != FourSetType::Other) as u64;
        if directed != (ty != FourSetType::Other) && failure.is_none() {
            failure = Some(format!("4-set {four:?}: {ty:?}, directed={directed}"));
        }
    }
    let census = count_directed_with(&t3, Exec::Parallel, DEFAULT_BUDGET)?;
    if failure.is_none() && census.directed != BigUint::from(typed) {
        failure = Some(format!("census {} but {typed} type I/II 4-sets", census.directed));
    }
    let mut o = report("thm2", failure, format!("directed tetrahedra = type I + type II = {typed}"));
    let s = o.report.status.take();
    let d = o.report.detail.take();
    o.report = o.report.census(&census);
    o.report.status = s;
    o.report.detail = d;
    Ok(o)
}

/// Containment by Cramer's rule on the homogeneous system: the query is
/// strictly inside iff every barycentric numerator has the sign of the
/// denominator.
fn contains(cfg: &PointConfig, simplex: &[u32]) -> bool {
    let col = |p: &[i64]| p.iter().map(|&v| v as i128).chain([1]).collect::<Vec<i128>>();
    let cols: Vec<Vec<i128>> = simplex.iter().map(|&i| col(&cfg.points()[i as usize])).collect();
    let rows = |cols: &[Vec<i128>]| (0..cols.len()).map(|r| cols.iter().map(|c| c[r]).collect()).collect::<Vec<_>>();
    let denom = determinant(&rows(&cols)).sign();
    (0..cols.len()).all(|i| {
        let mut c = cols.clone();
        c[i] = col(cfg.query());
        let s = determinant(&rows(&c)).sign();
        s != BigSign::NoSign && s == denom
    })
}

fn geometry(d: usize, n: Option<usize>, trials: u64, seed: u64) -> anyhow::Result<Outcome> {
    let max_n = n.unwrap_or(if d == 2 { 40 } else { 20 });
    if max_n < d + 1 {
        bail!(dtour::Error::Argument(format!("--n must be at least {}", d + 1)));
    }
    let mut failure = None;
    let mut inside = 0u64;
    for trial in 0..trials {
        let mut rng = Seed(seed).derived(trial);
        let n = rng.gen_range(d + 1..=max_n);
        let cfg = loop {
            let points = (0..n).map(|_| (0..d).map(|_| rng.gen_range(-1000..=1000)).collect()).collect();
            let query = (0..d).map(|_| rng.gen_range(-200..=200)).collect();
            if let Ok(cfg) = PointConfig::new(points, query) {
                if cfg.validate().is_ok() {
                    break cfg;
                }
            }
        };
        let census = count_directed_with(&geometric_induce(&cfg)?, Exec::Parallel, DEFAULT_BUDGET)?;
        let expected = subsets(n, d + 1).filter(|s| contains(&cfg, s)).count() as u64;
        inside += expected;
        if census.directed != BigUint::from(expected) {
            failure = Some(format!(
                "trial {trial}: census {} vs {expected} containing simplices; configuration:\n{}",
                census.directed,
                cfg.to_text()
            ));
            break;
        }
    }
    let mut o = report("geometry", failure, format!("{trials} configurations, {inside} containing simplices"));
    o.report.d = Some(d as u32);
    Ok(o)
}

fn product(d: usize, m: usize) -> anyhow::Result<Outcome> {
    let spec = ProductSpec::new(d, m);
    let t = product_tournament(&spec)?;
    let mut failure = None;
    for simplex in subsets(t.n(), d + 1) {
        let directed = t.simplex_face_signs(&KSubset::new(simplex.clone())?)?.is_directed();
        if directed != product_directed_predicate(&spec, &simplex) {
            failure = Some(format!("simplex {simplex:?}: tournament says directed={directed}"));
            break;
        }
    }
    let census = count_directed_with(&t, Exec::Parallel, DEFAULT_BUDGET)?;
    let exact = product_distinct_fraction(d, m);
    if failure.is_none() && census.fraction() != exact {
        failure = Some(format!("census fraction {} vs exact {}", rational_string(&census.fraction()), rational_string(&exact)));
    }
    let mut o = report("product", failure, format!("predicate agrees on all {} simplices", census.total));
    let (s, det) = (o.report.status.take(), o.report.detail.take());
    o.report = o.report.census(&census);
    o.report.status = s;
    o.report.detail = det;
    Ok(o)
}

fn double_count_one(t: &Tournament) -> anyhow::Result<(Option<String>, String)> {
    let (d, n) = (t.d(), t.n());
    let pc = pair_census(t, Exec::Parallel, DEFAULT_BUDGET)?;
    let x = pc.directed as u128;
    let total = t.num_simplices() as u128;
    let lower = (d * (d + 1) / 2) as u128 * x + s_of_d(d) as u128 * (total - x);
    let checks = [
        (pc.pairs_over_simplices == pc.pairs_through_common, "pairs over simplices = pairs through common faces"),
        (lower <= pc.pairs_through_common, "lower pair bound"),
        (BigUint::from(pc.pairs_through_common) <= pair_count_upper(d, n), "upper pair bound"),
        (BigUint::from(pc.directed) <= exact_upper_bound(d, n)?, "directed count bound"),
    ];
    let failure = checks.iter().find(|c| !c.0).map(|c| {
        format!(
            "d={d} n={n}: {} fails (directed {}, pairs {} / {})",
            c.1, pc.directed, pc.pairs_over_simplices, pc.pairs_through_common
        )
    });
    let detail = format!(
        "d={d} n={n}: {} compatible pairs, {} directed, {} extreme simplices, {} saturated common faces",
        pc.pairs_through_common, pc.directed, pc.extreme_simplices, pc.saturated_common_sets
    );
    Ok((failure, detail))
}

fn double_counting(d: usize, n: usize, trials: u64, seed: u64) -> anyhow::Result<Outcome> {
    let mut failure = None;
    for trial in 0..trials {
        let t = random_tournament(d, n, Seed(seed.wrapping_add(trial)))?;
        if let (Some(f), _) = double_count_one(&t)? {
            failure = Some(format!("seed {}: {f}", seed.wrapping_add(trial)));
            break;
        }
    }
    let mut o = report("double-counting", failure, format!("{trials} random tournaments, d={d} n={n}"));
    o.report = o.report.shape(d, n);
    o.report.total_simplices = Some(binomial_big(n as u64, d as u64 + 1).to_string());
    Ok(o)
}
