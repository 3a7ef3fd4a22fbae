//! Tournament generators.

mod geometry;
mod minority;
mod product;

pub use geometry::{determinant, geometric_induce, point_in_simplex, PointConfig};
pub use minority::{classify_4set, minority_induce_3, minority_sign, FourSetType};
pub use product::{product_directed_predicate, product_tournament, ProductSpec};

use crate::error::{arg, Result};
use crate::exec::{for_each_chunk_mut, Exec};
use crate::rng::Seed;
use crate::tournament::{Shape, Tournament};

/// Uniformly random d-tournament: sign bit `r` is bit `r` of the seed's
/// keystream, so the result does not depend on `exec`.
pub fn random_tournament(d: usize, n: usize, seed: Seed) -> Result<Tournament> {
    random_tournament_with(d, n, seed, Exec::Parallel)
}

pub fn random_tournament_with(d: usize, n: usize, seed: Seed, exec: Exec) -> Result<Tournament> {
    let shape = Shape::new(d, n)?;
    let mut words = vec![0u64; shape.num_signs.div_ceil(64) as usize];
    const BLOCK: usize = 4096;
    for_each_chunk_mut(exec, &mut words, BLOCK, |i, chunk| {
        seed.fill_sign_words((i * BLOCK) as u64, chunk);
    });
    Ok(Tournament::from_words(shape, words))
}

/// Rotational 2-tournament on odd `n`: `i -> j` iff `(j - i) mod n` lies in
/// `[1, (n-1)/2]`.
pub fn rotational_tournament(n: usize) -> Result<Tournament> {
    if n < 3 || n.is_multiple_of(2) {
        return arg(format!("rotational tournament needs odd n >= 3, got {n}"));
    }
    let half = (n - 1) / 2;
    Tournament::from_fn(2, n, Exec::Parallel, |e| {
        let (a, b) = (e[0] as usize, e[1] as usize);
        // sign +1 on {a < b} means a -> b
        (b - a) % n <= half
    })
}

/// Whether `a -> b` in a 2-tournament.
#[inline]
pub fn beats(t2: &Tournament, a: u32, b: u32) -> bool {
    debug_assert_eq!(t2.d(), 2);
    if a < b {
        t2.sign_of(&[a, b]).bit()
    } else {
        !t2.sign_of(&[b, a]).bit()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_is_deterministic_and_exec_independent() {
        let a = random_tournament(2, 4, Seed(5)).unwrap();
        let b = random_tournament(2, 4, Seed(5)).unwrap();
        assert_eq!(a.to_hot1(), b.to_hot1());
        let big_p = random_tournament_with(3, 120, Seed(9), Exec::Parallel).unwrap();
        let big_s = random_tournament_with(3, 120, Seed(9), Exec::Sequential).unwrap();
        assert_eq!(big_p, big_s);
        assert_ne!(big_p, random_tournament(3, 120, Seed(10)).unwrap());
        // roughly balanced
        let ones: u64 = big_p.words().iter().map(|w| w.count_ones() as u64).sum();
        let frac = ones as f64 / big_p.num_signs() as f64;
        assert!((frac - 0.5).abs() < 0.01, "{frac}");
    }

    #[test]
    fn rotational_is_regular() {
        for n in [3usize, 5, 7, 11, 21] {
            let t = rotational_tournament(n).unwrap();
            for v in 0..n as u32 {
                let out = (0..n as u32).filter(|&w| w != v && beats(&t, v, w)).count();
                assert_eq!(out, (n - 1) / 2);
            }
        }
        assert!(rotational_tournament(6).is_err());
        assert!(rotational_tournament(1).is_err());
    }
}
