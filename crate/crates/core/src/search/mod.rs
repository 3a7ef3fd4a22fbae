//! Exact maximum number of directed simplices over all d-tournaments on n
//! vertices, for `C(n, d) <= 40`.
//!
//! Sign bits are assigned in colex rank order, bit value 0 before 1, so a
//! depth-first walk visits assignments in lexicographic order of their bit
//! strings (rank 0 first). The space is cut into shards by a fixed prefix;
//! each shard keeps its first (lexicographically smallest) maximizer and the
//! shards are reduced in order, so the witness never depends on scheduling.

mod checkpoint;

pub use checkpoint::{load_checkpoint, save_checkpoint, Checkpoint, HOTS_MAGIC, HOTS_VERSION};

use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::binom::{colex_next, BinomialTable};
use crate::error::{arg, Error, Result};
use crate::exec::{map_collect, Exec};
use crate::orientation::{full_mask, odd_mask};
use crate::tournament::{Tournament, TournamentBuilder};

/// Largest number of sign bits a search accepts.
pub const MAX_SEARCH_BITS: u64 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Exhaustive,
    BranchAndBound,
}

impl Strategy {
    pub fn code(self) -> u8 {
        match self {
            Strategy::Exhaustive => 0,
            Strategy::BranchAndBound => 1,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(Strategy::Exhaustive),
            1 => Some(Strategy::BranchAndBound),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Exhaustive => "exhaustive",
            Strategy::BranchAndBound => "branch_and_bound",
        }
    }
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Strategy::Exhaustive),
            "branch_and_bound" | "branch-and-bound" | "bnb" => Ok(Strategy::BranchAndBound),
            _ => arg(format!("unknown strategy {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    pub d: usize,
    pub n: usize,
    pub strategy: Strategy,
    /// Fix the rank-0 sign to `+1`; global negation preserves the census.
    pub fix_first_sign: bool,
    /// Assignments between checkpoints.
    pub checkpoint_interval: u64,
    /// Length of the shard prefix.
    pub prefix_bits: u32,
}

impl SearchSpec {
    pub fn new(d: usize, n: usize, strategy: Strategy) -> Self {
        Self {
            d,
            n,
            strategy,
            fix_first_sign: true,
            checkpoint_interval: 1 << 24,
            prefix_bits: 8,
        }
    }
}

/// The simplices of the search, with face ranks as bit positions.
#[derive(Clone, Debug)]
pub struct SearchProblem {
    pub d: usize,
    pub n: usize,
    pub bits: usize,
    faces: Vec<Vec<u8>>,
    /// Simplices whose last face rank is `r`.
    completed_at: Vec<Vec<u32>>,
    /// Simplices with some face rank above `r`.
    open_after: Vec<u64>,
    alt: u64,
    full: u64,
}

impl SearchProblem {
    pub fn new(d: usize, n: usize) -> Result<Self> {
        if d < 2 || n < d {
            return arg(format!("search needs 2 <= d <= n (d={d}, n={n})"));
        }
        let table = BinomialTable::new(n, d + 1)?;
        let bits = table.get(n, d);
        if bits > MAX_SEARCH_BITS {
            return Err(Error::Size(format!(
                "search space 2^{bits} (C({n}, {d}) = {bits} signs) exceeds 2^{MAX_SEARCH_BITS}"
            )));
        }
        let bits = bits as usize;
        let mut faces = Vec::new();
        let mut completed_at = vec![Vec::new(); bits];
        let mut simplex: Vec<u32> = (0..=d as u32).collect();
        for idx in 0..table.get(n, d + 1) {
            let ranks: Vec<u8> = (0..=d)
                .map(|i| {
                    let mut face = simplex.clone();
                    face.remove(i);
                    table.rank(&face) as u8
                })
                .collect();
            let last = *ranks.iter().max().unwrap() as usize;
            completed_at[last].push(idx as u32);
            faces.push(ranks);
            colex_next(&mut simplex);
        }
        let total = faces.len() as u64;
        let mut open_after = vec![0u64; bits];
        let mut done = 0u64;
        for r in 0..bits {
            done += completed_at[r].len() as u64;
            open_after[r] = total - done;
        }
        Ok(Self {
            d,
            n,
            bits,
            faces,
            completed_at,
            open_after,
            alt: odd_mask(d + 1),
            full: full_mask(d + 1),
        })
    }

    pub fn num_simplices(&self) -> u64 {
        self.faces.len() as u64
    }

    #[inline]
    fn directed(&self, simplex: u32, assignment: u64) -> bool {
        let g = self.faces[simplex as usize]
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &r)| acc | (assignment >> r & 1) << i)
            ^ self.alt;
        g == 0 || g == self.full
    }

    fn completed_count(&self, r: usize, assignment: u64) -> u64 {
        self.completed_at[r].iter().filter(|&&s| self.directed(s, assignment)).count() as u64
    }

    /// Directed count of a full assignment (bit r = sign of rank r).
    pub fn census(&self, assignment: u64) -> u64 {
        (0..self.faces.len() as u32).filter(|&s| self.directed(s, assignment)).count() as u64
    }

    /// Optimistic value of a partial assignment fixing ranks `0..len`:
    /// exact count of the simplices it completes plus every open simplex.
    pub fn admissible_bound(&self, assignment: u64, len: usize) -> u64 {
        if len == 0 {
            return self.num_simplices();
        }
        let fixed: u64 = (0..len).map(|r| self.completed_count(r, assignment)).sum();
        fixed + self.open_after[len - 1]
    }

    pub fn witness(&self, assignment: u64) -> Tournament {
        let mut b = TournamentBuilder::new(self.d, self.n).expect("validated shape");
        for r in 0..self.bits {
            b.set_bit(r as u64, assignment >> r & 1 == 1);
        }
        b.seal()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub d: usize,
    pub n: usize,
    pub strategy: Strategy,
    pub max_count: u64,
    /// Lexicographically smallest maximizing assignment (bit r = rank r).
    pub best_assignment: Option<u64>,
    pub witness: Option<Tournament>,
    pub assignments_explored: u64,
    pub complete: bool,
    pub shards_done: u64,
    pub total_shards: u64,
}

#[derive(Clone, Copy, Debug, Default)]
struct ShardResult {
    best: Option<(u64, u64)>,
    explored: u64,
}

struct Walker<'a> {
    problem: &'a SearchProblem,
    prune: bool,
    global: &'a AtomicU64,
    best: Option<(u64, u64)>,
    explored: u64,
}

impl Walker<'_> {
    fn should_prune(&self, bound: u64) -> bool {
        if !self.prune {
            return false;
        }
        if self.best.is_some_and(|(b, _)| bound <= b) {
            return true;
        }
        // other shards only prune strictly, so equal values still reach
        // the ordered reduction
        let g = self.global.load(Ordering::Relaxed);
        g > 0 && bound < g - 1
    }

    fn walk(&mut self, depth: usize, assignment: u64, fixed: u64) {
        let p = self.problem;
        if depth == p.bits {
            self.explored += 1;
            if self.best.is_none_or(|(b, _)| fixed > b) {
                self.best = Some((fixed, assignment));
                self.global.fetch_max(fixed + 1, Ordering::Relaxed);
            }
            return;
        }
        for bit in 0..2u64 {
            let a = assignment | bit << depth;
            let count = fixed + p.completed_count(depth, a);
            if self.should_prune(count + p.open_after[depth]) {
                continue;
            }
            self.walk(depth + 1, a, count);
        }
    }
}

/// Runs a search with optional checkpointing and interruption.
#[derive(Clone, Debug)]
pub struct Search {
    spec: SearchSpec,
    problem: SearchProblem,
    exec: Exec,
    checkpoint: Option<PathBuf>,
    stop_after_shards: Option<u64>,
    state: Progress,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct Progress {
    pub shards_done: u64,
    pub explored: u64,
    pub best: Option<(u64, u64)>,
}

impl Search {
    pub fn new(spec: SearchSpec) -> Result<Self> {
        let problem = SearchProblem::new(spec.d, spec.n)?;
        if spec.prefix_bits > 20 {
            return arg("shard prefix longer than 20 bits");
        }
        Ok(Self {
            spec,
            problem,
            exec: Exec::Parallel,
            checkpoint: None,
            stop_after_shards: None,
            state: Progress::default(),
        })
    }

    /// Continues from a checkpoint file; later checkpoints go to the same path.
    pub fn resume(path: impl Into<PathBuf>) -> Result<Self> {
        let path = path.into();
        let cp = load_checkpoint(&path)?;
        let mut search = Self::new(cp.spec.clone())?;
        if cp.total_shards != search.total_shards() {
            return Err(Error::Format("checkpoint shard layout does not match its spec".into()));
        }
        if let Some((count, a)) = cp.progress.best {
            if search.problem.census(a) != count {
                return Err(Error::Format("checkpoint witness does not match its recorded count".into()));
            }
        }
        search.state = cp.progress;
        search.checkpoint = Some(path);
        Ok(search)
    }

    pub fn exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn checkpoint(mut self, path: impl Into<PathBuf>) -> Self {
        self.checkpoint = Some(path.into());
        self
    }

    /// Stops (incomplete) once this many shards are done in total.
    pub fn stop_after_shards(mut self, shards: u64) -> Self {
        self.stop_after_shards = Some(shards);
        self
    }

    pub fn spec(&self) -> &SearchSpec {
        &self.spec
    }

    pub fn problem(&self) -> &SearchProblem {
        &self.problem
    }

    fn first_free(&self) -> usize {
        (self.spec.fix_first_sign && self.problem.bits > 0) as usize
    }

    fn prefix_len(&self) -> usize {
        (self.spec.prefix_bits as usize).min(self.problem.bits - self.first_free())
    }

    pub fn total_shards(&self) -> u64 {
        1 << self.prefix_len()
    }

    fn shard_size(&self) -> u64 {
        1 << (self.problem.bits - self.first_free() - self.prefix_len())
    }

    fn run_shard(&self, shard: u64, global: &AtomicU64) -> ShardResult {
        let p = &self.problem;
        let start = self.first_free();
        let len = self.prefix_len();
        let mut a = start as u64; // rank 0 fixed to +1 when start == 1
        for j in 0..len {
            let bit = shard >> (len - 1 - j) & 1;
            a |= bit << (start + j);
        }
        let depth = start + len;
        let fixed: u64 = (0..depth).map(|r| p.completed_count(r, a)).sum();
        let mut w = Walker {
            problem: p,
            prune: self.spec.strategy == Strategy::BranchAndBound,
            global,
            best: None,
            explored: 0,
        };
        let open = if depth == 0 { p.num_simplices() } else { p.open_after[depth - 1] };
        if !w.should_prune(fixed + open) {
            w.walk(depth, a, fixed);
        }
        ShardResult { best: w.best, explored: w.explored }
    }

    fn outcome(&self) -> SearchOutcome {
        let best = self.state.best;
        let total = self.total_shards();
        SearchOutcome {
            d: self.spec.d,
            n: self.spec.n,
            strategy: self.spec.strategy,
            max_count: best.map_or(0, |b| b.0),
            best_assignment: best.map(|b| b.1),
            witness: best.map(|b| self.problem.witness(b.1)),
            assignments_explored: self.state.explored,
            complete: self.state.shards_done == total,
            shards_done: self.state.shards_done,
            total_shards: total,
        }
    }

    fn save(&self) -> Result<()> {
        if let Some(path) = &self.checkpoint {
            let cp = Checkpoint {
                spec: self.spec.clone(),
                total_shards: self.total_shards(),
                progress: self.state,
                witness: self.state.best.map(|b| self.problem.witness(b.1)),
            };
            save_checkpoint(path, &cp)?;
        }
        Ok(())
    }

    pub fn run(mut self) -> Result<SearchOutcome> {
        let total = self.total_shards();
        let limit = self.stop_after_shards.unwrap_or(total).min(total);
        let batch = if self.checkpoint.is_some() {
            (self.spec.checkpoint_interval / self.shard_size()).max(1)
        } else {
            total
        };
        let global = AtomicU64::new(self.state.best.map_or(0, |b| b.0 + 1));
        while self.state.shards_done < limit {
            let lo = self.state.shards_done;
            let hi = (lo + batch).min(limit);
            let results = map_collect(self.exec, lo as usize..hi as usize, |s| {
                self.run_shard(s as u64, &global)
            });
            for r in results {
                self.state.explored += r.explored;
                if let Some((count, a)) = r.best {
                    // earlier shards win ties
                    if self.state.best.is_none_or(|(b, _)| count > b) {
                        self.state.best = Some((count, a));
                    }
                }
            }
            self.state.shards_done = hi;
            self.save()?;
        }
        if self.state.shards_done == total {
            self.save()?;
        }
        Ok(self.outcome())
    }
}

/// Exact maximum for `spec`, without checkpoints.
pub fn search_max_directed(spec: &SearchSpec) -> Result<SearchOutcome> {
    Search::new(spec.clone())?.run()
}
