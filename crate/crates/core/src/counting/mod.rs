//! Censuses of directed simplices and compatible face pairs.

mod bounds;

pub use bounds::{
    asymptotic_upper_fraction, closed_form_constants, exact_formula_d2, exact_upper_bound,
    lemma_min_pairs_exhaustive, pair_count_upper, product_distinct_fraction,
    product_finite_fraction, product_series_terms, s_of_d, BoundReport,
};

use num_bigint::BigUint;
use num_rational::BigRational;
use rand::Rng;

use crate::binom::colex_next;
use crate::error::{arg, Error, Result};
use crate::exec::{map_reduce, Exec};
use crate::orientation::{full_mask, odd_mask, KSubset};
use crate::rng::Seed;
use crate::tournament::Tournament;

/// Default cap on simplex evaluations for exact enumeration.
pub const DEFAULT_BUDGET: u128 = 2_000_000_000;

/// Exact number of directed (d+1)-sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub d: usize,
    pub n: usize,
    pub directed: BigUint,
    pub total: BigUint,
}

impl Census {
    pub fn fraction(&self) -> BigRational {
        if self.total == BigUint::from(0u32) {
            return BigRational::from_integer(0.into());
        }
        BigRational::new(self.directed.clone().into(), self.total.clone().into())
    }

    pub fn fraction_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.fraction().to_f64().unwrap_or(f64::NAN)
    }
}

/// Simplex-side and common-set-side totals from one tournament.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PairCensus {
    pub directed: u64,
    /// Simplices that are directed or have exactly `s(d)` compatible pairs.
    pub extreme_simplices: u64,
    /// Sum over (d+1)-sets of their compatible face pairs.
    pub pairs_over_simplices: u128,
    /// Sum over (d-1)-sets A of the compatible pairs with common set A.
    pub pairs_through_common: u128,
    /// (d-1)-sets whose pair count reaches `floor(h/2) * ceil(h/2)`.
    pub saturated_common_sets: u64,
}

#[derive(Clone, Copy, Debug, Default)]
struct SimplexAcc {
    directed: u64,
    extreme: u64,
    pairs: u128,
}

impl SimplexAcc {
    fn merge(self, o: Self) -> Self {
        Self {
            directed: self.directed + o.directed,
            extreme: self.extreme + o.extreme,
            pairs: self.pairs + o.pairs,
        }
    }
}

fn check_budget(required: u128, budget: u128) -> Result<()> {
    if required > budget {
        return Err(Error::Budget { required, budget });
    }
    Ok(())
}

/// Visits every (d+1)-subset grouped by largest vertex.
fn simplex_pass(t: &Tournament, exec: Exec, with_pairs: bool) -> SimplexAcc {
    let d = t.d();
    let n = t.n();
    let len = d + 1;
    let alt = odd_mask(len);
    let full = full_mask(len);
    let s_d = s_of_d(d);
    let total_pairs = (len * d / 2) as u64;
    let table = t.shape().table();
    map_reduce(
        exec,
        d..n,
        SimplexAcc::default,
        |top| {
            let mut acc = SimplexAcc::default();
            let mut simplex: Vec<u32> = (0..d as u32).collect();
            simplex.push(top as u32);
            let count = table.get(top, d);
            for _ in 0..count {
                let g = t.face_bits(&simplex) ^ alt;
                let directed = g == 0 || g == full;
                acc.directed += directed as u64;
                if with_pairs {
                    let p = g.count_ones() as u64;
                    let q = len as u64 - p;
                    let cp = p * p.saturating_sub(1) / 2 + q * q.saturating_sub(1) / 2;
                    acc.pairs += cp as u128;
                    if cp == s_d || cp == total_pairs {
                        acc.extreme += 1;
                    }
                }
                colex_next(&mut simplex[..d]);
            }
            acc
        },
        SimplexAcc::merge,
    )
}

/// Exact census with the default budget.
pub fn count_directed(t: &Tournament) -> Result<Census> {
    count_directed_with(t, Exec::Parallel, DEFAULT_BUDGET)
}

pub fn count_directed_with(t: &Tournament, exec: Exec, budget: u128) -> Result<Census> {
    check_budget(t.num_simplices() as u128, budget)?;
    let acc = simplex_pass(t, exec, false);
    Ok(Census {
        d: t.d(),
        n: t.n(),
        directed: acc.directed.into(),
        total: t.num_simplices().into(),
    })
}

/// Result of uniform sampling of (d+1)-sets.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleEstimate {
    pub samples: u64,
    pub hits: u64,
    pub seed: Seed,
}

impl SampleEstimate {
    pub fn estimate(&self) -> BigRational {
        BigRational::new(self.hits.into(), self.samples.into())
    }

    pub fn estimate_f64(&self) -> f64 {
        self.hits as f64 / self.samples as f64
    }

    /// Binomial standard error of the estimate.
    pub fn standard_error(&self) -> f64 {
        let p = self.estimate_f64();
        (p * (1.0 - p) / self.samples as f64).sqrt()
    }
}

const SAMPLE_BLOCK: u64 = 4096;

/// Fraction of directed simplices among `samples` uniform (d+1)-subsets.
/// Sample block `b` draws from its own keystream, so the estimate does not
/// depend on the thread count.
pub fn sample_directed_fraction(t: &Tournament, samples: u64, seed: Seed) -> Result<SampleEstimate> {
    sample_directed_fraction_with(t, samples, seed, Exec::Parallel)
}

pub fn sample_directed_fraction_with(
    t: &Tournament,
    samples: u64,
    seed: Seed,
    exec: Exec,
) -> Result<SampleEstimate> {
    if samples == 0 {
        return arg("need at least one sample");
    }
    if t.num_simplices() == 0 {
        return arg("tournament has no (d+1)-sets to sample");
    }
    let d = t.d();
    let total = t.num_simplices();
    let blocks = samples.div_ceil(SAMPLE_BLOCK) as usize;
    let alt = odd_mask(d + 1);
    let full = full_mask(d + 1);
    let table = t.shape().table();
    let hits = map_reduce(
        exec,
        0..blocks,
        || 0u64,
        |b| {
            let mut rng = seed.sample_block(b as u64);
            let start = b as u64 * SAMPLE_BLOCK;
            let count = SAMPLE_BLOCK.min(samples - start);
            let mut simplex = vec![0u32; d + 1];
            let mut hits = 0;
            for _ in 0..count {
                table.unrank_into(rng.gen_range(0..total), &mut simplex);
                let g = t.face_bits(&simplex) ^ alt;
                hits += (g == 0 || g == full) as u64;
            }
            hits
        },
        |a, b| a + b,
    );
    Ok(SampleEstimate { samples, hits, seed })
}

/// Raw sign split over the extensions of a (d-1)-set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfDegrees {
    pub subset: KSubset,
    /// Extensions `x` with `sign(A ∪ {x}) = +1`.
    pub h_plus: u64,
    pub h_minus: u64,
}

fn check_common(t: &Tournament, a: &KSubset) -> Result<()> {
    if a.len() != t.d() - 1 {
        return arg(format!("expected a {}-subset, got {} vertices", t.d() - 1, a.len()));
    }
    if a.vertices().last().is_some_and(|&v| v as usize >= t.n()) {
        return arg("vertex out of range");
    }
    Ok(())
}

pub fn half_degrees(t: &Tournament, a: &KSubset) -> Result<HalfDegrees> {
    check_common(t, a)?;
    let (mut plus, mut minus) = (0, 0);
    for_each_extension(t, a.vertices(), |_, _, bit| {
        if bit {
            plus += 1;
        } else {
            minus += 1;
        }
    });
    Ok(HalfDegrees { subset: a.clone(), h_plus: plus, h_minus: minus })
}

/// Split of the extensions of `A` by the orientation they induce on `A`;
/// two extensions are compatible exactly when they land on opposite sides.
pub fn induced_split(t: &Tournament, a: &KSubset) -> Result<(u64, u64)> {
    check_common(t, a)?;
    Ok(split_common(t, a.vertices()))
}

fn split_common(t: &Tournament, a: &[u32]) -> (u64, u64) {
    let (mut plus, mut minus) = (0, 0);
    for_each_extension(t, a, |_, pos, bit| {
        if bit ^ (pos % 2 == 1) {
            plus += 1;
        } else {
            minus += 1;
        }
    });
    (plus, minus)
}

/// Calls `f(x, pos, sign_bit)` for each `x` outside the sorted set `a`,
/// where `pos` is the index of `x` in `a ∪ {x}`.
#[inline]
fn for_each_extension<F: FnMut(u32, usize, bool)>(t: &Tournament, a: &[u32], mut f: F) {
    let table = t.shape().table();
    let k = a.len();
    // rank(a ∪ {x}) = sum_{j<p} C(a_j, j+1) + C(x, p+1) + sum_{j>=p} C(a_j, j+2)
    let mut suffix = vec![0u64; k + 1];
    for j in (0..k).rev() {
        suffix[j] = suffix[j + 1] + table.get(a[j] as usize, j + 2);
    }
    let mut prefix = 0u64;
    let mut pos = 0usize;
    for x in 0..t.n() as u32 {
        if pos < k && a[pos] == x {
            prefix += table.get(x as usize, pos + 1);
            pos += 1;
            continue;
        }
        let rank = prefix + table.get(x as usize, pos + 1) + suffix[pos];
        f(x, pos, t.bit(rank));
    }
}

/// Compatible pairs of d-sets sharing the (d-1)-set `A`.
pub fn compatible_pairs_through(t: &Tournament, a: &KSubset) -> Result<u64> {
    let (p, m) = induced_split(t, a)?;
    Ok(p * m)
}

fn common_pass(t: &Tournament, exec: Exec) -> (u128, u64) {
    // d >= 2, so the common sets are non-empty
    let k = t.d() - 1;
    let h = (t.n() - k) as u64;
    let max_pairs = (h / 2) * h.div_ceil(2);
    let table = t.shape().table();
    map_reduce(
        exec,
        k - 1..t.n(),
        || (0u128, 0u64),
        |top| {
            let mut a: Vec<u32> = (0..k as u32).collect();
            a[k - 1] = top as u32;
            let (mut pairs, mut saturated) = (0u128, 0u64);
            for _ in 0..table.get(top, k - 1) {
                let (p, m) = split_common(t, &a);
                pairs += (p * m) as u128;
                saturated += (p * m == max_pairs) as u64;
                colex_next(&mut a[..k - 1]);
            }
            (pairs, saturated)
        },
        |x, y| (x.0 + y.0, x.1 + y.1),
    )
}

/// Both sides of the double count plus the tightness diagnostics.
pub fn pair_census(t: &Tournament, exec: Exec, budget: u128) -> Result<PairCensus> {
    let n = t.n() as u128;
    let common_cost = crate::binom::binomial_u128(t.n() as u64, t.d() as u64 - 1).unwrap_or(u128::MAX);
    check_budget((t.num_simplices() as u128).max(common_cost.saturating_mul(n)), budget)?;
    let simplices = simplex_pass(t, exec, true);
    let (through, saturated) = common_pass(t, exec);
    Ok(PairCensus {
        directed: simplices.directed,
        extreme_simplices: simplices.extreme,
        pairs_over_simplices: simplices.pairs,
        pairs_through_common: through,
        saturated_common_sets: saturated,
    })
}

/// Total number of compatible pairs of d-sets, counted once through the
/// common (d-1)-sets and once through the (d+1)-sets; fails if the two
/// counts disagree.
pub fn total_compatible_pairs(t: &Tournament) -> Result<BigUint> {
    let pc = pair_census(t, Exec::Parallel, DEFAULT_BUDGET)?;
    if pc.pairs_over_simplices != pc.pairs_through_common {
        return Err(Error::Consistency(format!(
            "compatible pairs: {} through common sets but {} over simplices",
            pc.pairs_through_common, pc.pairs_over_simplices
        )));
    }
    Ok(pc.pairs_through_common.into())
}
