//! Tournaments induced by integer point configurations around a query
//! point, with exact determinant signs.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::binom::colex_next;
use crate::error::{arg, Error, Result};
use crate::exec::{map_reduce, Exec};
use crate::orientation::Sign;
use crate::tournament::{Shape, Tournament};

/// `n` integer points in `Z^d` and a query point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfig {
    d: usize,
    points: Vec<Vec<i64>>,
    query: Vec<i64>,
}

impl PointConfig {
    /// Validates shape, distinctness and the coordinate bound. General
    /// position is checked separately by [`PointConfig::validate`].
    pub fn new(points: Vec<Vec<i64>>, query: Vec<i64>) -> Result<Self> {
        let d = query.len();
        if d < 2 {
            return arg("point configurations need dimension at least 2");
        }
        if points.len() < d {
            return arg(format!("need at least {d} points in dimension {d}"));
        }
        if let Some(p) = points.iter().find(|p| p.len() != d) {
            return arg(format!("point {p:?} does not have {d} coordinates"));
        }
        let mut sorted = points.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return arg("points must be distinct");
        }
        let cfg = Self { d, points, query };
        cfg.check_bound()?;
        Ok(cfg)
    }

    /// Hadamard's bound on every minor must stay below 2^62 so that the
    /// fraction-free elimination never leaves i128.
    fn check_bound(&self) -> Result<()> {
        let mut max_diff: u128 = 0;
        for p in &self.points {
            for (a, b) in p.iter().zip(&self.query) {
                let diff = (*a as i128 - *b as i128).unsigned_abs();
                max_diff = max_diff.max(diff);
            }
        }
        // (d * B^2)^d bounds the squared determinant of any d x d minor
        let row = max_diff
            .checked_mul(max_diff)
            .and_then(|sq| sq.checked_mul(self.d as u128));
        let bound = row.and_then(|r| (0..self.d).try_fold(1u128, |acc, _| acc.checked_mul(r)));
        match bound {
            Some(b) if b < 1u128 << 124 => Ok(()),
            _ => Err(Error::Size(format!(
                "coordinates too large for exact 128-bit determinants in dimension {} (max offset {max_diff})",
                self.d
            ))),
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn query(&self) -> &[i64] {
        &self.query
    }

    /// Parses the text format: `d n`, then n lines of d integers, then the
    /// query point.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let ints = |line: &str| -> Result<Vec<i64>> {
            line.split_whitespace()
                .map(|t| t.parse::<i64>().map_err(|e| Error::Format(format!("bad integer {t:?}: {e}"))))
                .collect()
        };
        let header = ints(lines.next().ok_or_else(|| Error::Format("empty point file".into()))?)?;
        let [d, n] = header[..] else {
            return Err(Error::Format("first line must be `d n`".into()));
        };
        if d < 0 || n < 0 {
            return Err(Error::Format("negative header values".into()));
        }
        let (d, n) = (d as usize, n as usize);
        let mut points = Vec::with_capacity(n);
        for i in 0..n {
            let line = lines.next().ok_or_else(|| Error::Format(format!("missing point {i}")))?;
            let p = ints(line)?;
            if p.len() != d {
                return Err(Error::Format(format!("point {i} has {} coordinates, expected {d}", p.len())));
            }
            points.push(p);
        }
        let query = ints(lines.next().ok_or_else(|| Error::Format("missing query point".into()))?)?;
        if query.len() != d {
            return Err(Error::Format("query point has the wrong dimension".into()));
        }
        if lines.next().is_some() {
            return Err(Error::Format("trailing lines after the query point".into()));
        }
        Self::new(points, query)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.d, self.n());
        let join = |p: &[i64]| p.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
        for p in &self.points {
            let _ = writeln!(s, "{}", join(p));
        }
        let _ = writeln!(s, "{}", join(&self.query));
        s
    }

    /// Rows `p_i - x` for the given vertex ids.
    fn rows(&self, ids: &[u32]) -> Vec<Vec<i128>> {
        ids.iter()
            .map(|&i| {
                self.points[i as usize]
                    .iter()
                    .zip(&self.query)
                    .map(|(a, b)| *a as i128 - *b as i128)
                    .collect()
            })
            .collect()
    }

    /// Sign of `det[p_i - x]` over a sorted d-subset; `None` if zero.
    pub fn orientation(&self, face: &[u32]) -> Option<Sign> {
        let det = determinant(&self.rows(face));
        (!det.is_zero()).then(|| Sign::from_bit(det.is_positive()))
    }

    /// Checks general position relative to the query point: returns the
    /// colex-first d-subset with a vanishing determinant, if any.
    pub fn validate(&self) -> Result<()> {
        let shape = Shape::new(self.d, self.n())?;
        let bad = first_degenerate(self, &shape);
        match bad {
            Some(subset) => Err(Error::Degenerate { subset }),
            None => Ok(()),
        }
    }
}

fn first_degenerate(cfg: &PointConfig, shape: &Shape) -> Option<Vec<u32>> {
    const BLOCK: u64 = 1 << 14;
    let total = shape.num_signs;
    let blocks = total.div_ceil(BLOCK) as usize;
    let found = AtomicU64::new(u64::MAX);
    let d = cfg.d;
    map_reduce(
        Exec::Parallel,
        0..blocks,
        || (),
        |b| {
            let first = b as u64 * BLOCK;
            if first > found.load(Ordering::Relaxed) {
                return;
            }
            let mut face = vec![0u32; d];
            shape.table().unrank_into(first, &mut face);
            for r in first..(first + BLOCK).min(total) {
                if cfg.orientation(&face).is_none() {
                    found.fetch_min(r, Ordering::Relaxed);
                    return;
                }
                colex_next(&mut face);
            }
        },
        |_, _| (),
    );
    let r = found.into_inner();
    (r != u64::MAX).then(|| {
        let mut face = vec![0u32; d];
        shape.table().unrank_into(r, &mut face);
        face
    })
}

/// The d-tournament orienting each d-subset by the sign of
/// `det[p_i - x]` (rows in vertex-id order).
pub fn geometric_induce(cfg: &PointConfig) -> Result<Tournament> {
    cfg.validate()?;
    Tournament::from_fn(cfg.d, cfg.n(), Exec::Parallel, |face| {
        cfg.orientation(face).expect("validated configuration").bit()
    })
}

/// Whether the query point lies strictly inside the simplex spanned by the
/// given d+1 points: the signed determinants `(-1)^i det[p_j - x]_{j != i}`
/// all agree.
pub fn point_in_simplex(cfg: &PointConfig, simplex: &[u32]) -> Result<bool> {
    if simplex.len() != cfg.d + 1 {
        return arg(format!("a simplex needs {} vertices", cfg.d + 1));
    }
    let mut sorted = simplex.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) || sorted[cfg.d] as usize >= cfg.n() {
        return arg("simplex vertices must be distinct and in range");
    }
    let mut common: Option<Sign> = None;
    for i in 0..=cfg.d {
        let mut face = sorted.clone();
        face.remove(i);
        let s = cfg
            .orientation(&face)
            .ok_or(Error::Degenerate { subset: face })?
            * Sign::parity(i);
        match common {
            None => common = Some(s),
            Some(c) if c != s => return Ok(false),
            _ => {}
        }
    }
    Ok(true)
}

/// Exact determinant by fraction-free (Bareiss) elimination, in i128 with a
/// big-integer retry on overflow.
pub fn determinant(rows: &[Vec<i128>]) -> BigInt {
    match bareiss_i128(rows) {
        Some(v) => BigInt::from(v),
        None => bareiss_big(rows),
    }
}

fn bareiss_i128(rows: &[Vec<i128>]) -> Option<i128> {
    let n = rows.len();
    let mut a: Vec<Vec<i128>> = rows.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let swap = (k + 1..n).find(|&i| a[i][k] != 0);
            match swap {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Some(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].checked_mul(a[k][k])?.checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = num / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        return Some(1);
    }
    a[n - 1][n - 1].checked_mul(sign)
}

fn bareiss_big(rows: &[Vec<i128>]) -> BigInt {
    let n = rows.len();
    let mut a: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let mut negate = false;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = if n == 0 { BigInt::from(1) } else { a[n - 1][n - 1].clone() };
    if negate {
        -det
    } else {
        det
    }
}
