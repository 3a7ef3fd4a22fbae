//! Oracles shared by the integration tests. None of them call the census,
//! face-rank or determinant code they are used to check.

#![allow(dead_code)]

use dtour::constructions::PointConfig;
use dtour::{KSubset, OrientedSet, Sign, Tournament};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// All k-subsets of `[0, n)` in lexicographic order.
pub fn subsets(n: u32, k: usize) -> Vec<Vec<u32>> {
    fn rec(start: u32, n: u32, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Directed test from the definition: every pair of faces is compatible.
pub fn directed_by_definition(t: &Tournament, simplex: &[u32]) -> bool {
    let faces: Vec<OrientedSet> = (0..simplex.len())
        .map(|i| {
            let mut f = simplex.to_vec();
            f.remove(i);
            let ks = KSubset::new(f).unwrap();
            let s = t.get_sign(&ks).unwrap();
            OrientedSet::new(ks, s)
        })
        .collect();
    (0..faces.len()).all(|i| {
        (i + 1..faces.len()).all(|j| dtour::orientation::compatible(&faces[i], &faces[j]).unwrap())
    })
}

/// Census by the pairwise definition over every (d+1)-subset.
pub fn brute_census(t: &Tournament) -> u64 {
    subsets(t.n() as u32, t.d() + 1).iter().filter(|s| directed_by_definition(t, s)).count() as u64
}

/// Whether `a -> b` in a 2-tournament given as a closure over ordered pairs.
pub fn beats(t: &Tournament, a: u32, b: u32) -> bool {
    if a < b {
        t.get_sign(&KSubset::new(vec![a, b]).unwrap()).unwrap() == Sign::Plus
    } else {
        t.get_sign(&KSubset::new(vec![b, a]).unwrap()).unwrap() == Sign::Minus
    }
}

fn cofactor_det(m: &[Vec<i128>]) -> i128 {
    if m.len() == 1 {
        return m[0][0];
    }
    (0..m.len())
        .map(|c| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &v)| v).collect())
                .collect();
            let term = m[0][c] * cofactor_det(&minor);
            if c % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// Strict containment by barycentric coordinates: with columns `(p_j, 1)`,
/// every Cramer numerator must share the strict sign of the denominator.
pub fn contains_by_barycentric(cfg: &PointConfig, simplex: &[u32]) -> bool {
    let d = cfg.d();
    let column = |p: &[i64]| -> Vec<i128> {
        p.iter().map(|&v| v as i128).chain(std::iter::once(1)).collect()
    };
    let cols: Vec<Vec<i128>> = simplex.iter().map(|&i| column(&cfg.points()[i as usize])).collect();
    let as_matrix = |cols: &[Vec<i128>]| -> Vec<Vec<i128>> {
        (0..=d).map(|r| cols.iter().map(|c| c[r]).collect()).collect()
    };
    let den = cofactor_det(&as_matrix(&cols));
    if den == 0 {
        return false;
    }
    let x = column(cfg.query());
    (0..=d).all(|j| {
        let mut c = cols.clone();
        c[j] = x.clone();
        let num = cofactor_det(&as_matrix(&c));
        num != 0 && (num > 0) == (den > 0)
    })
}

/// A random configuration in general position relative to its query point.
pub fn random_config(d: usize, n: usize, coord: i64, rng: &mut ChaCha8Rng) -> PointConfig {
    loop {
        let points: Vec<Vec<i64>> =
            (0..n).map(|_| (0..d).map(|_| rng.gen_range(-coord..=coord)).collect()).collect();
        let query: Vec<i64> = (0..d).map(|_| rng.gen_range(-coord / 5..=coord / 5)).collect();
        let Ok(cfg) = PointConfig::new(points, query) else { continue };
        if cfg.validate().is_ok() {
            return cfg;
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
