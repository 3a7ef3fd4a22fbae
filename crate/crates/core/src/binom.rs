//! Binomial coefficients and colexicographic ranking of k-subsets.
//!
//! The colex rank of a sorted subset `v_0 < v_1 < ... < v_{k-1}` is
//! `sum_i C(v_i, i + 1)`. It does not depend on the size of the ground set,
//! so a subset keeps its rank when vertices are appended.

use crate::error::{Error, Result};

/// `C(n, k)` as u128, `None` on overflow.
pub fn binomial_u128(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// `C(n, k)` as u64, `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    binomial_u128(n, k).and_then(|v| u64::try_from(v).ok())
}

/// Arbitrary-precision `C(n, k)`.
pub fn binomial_big(n: u64, k: u64) -> num_bigint::BigUint {
    use num_bigint::BigUint;
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Pascal table `C(v, j)` for `v <= n`, `j <= max_k`.
///
/// Every entry must fit in a u64; construction fails otherwise.
#[derive(Clone, Debug)]
pub struct BinomialTable {
    n: usize,
    max_k: usize,
    // row-major by j: table[j * (n + 1) + v] = C(v, j)
    table: Vec<u64>,
}

impl BinomialTable {
    pub fn new(n: usize, max_k: usize) -> Result<Self> {
        let width = n + 1;
        let mut table = vec![0u64; width * (max_k + 1)];
        table[..width].fill(1);
        for j in 1..=max_k {
            for v in 1..=n {
                let a = table[(j - 1) * width + v - 1];
                let b = table[j * width + v - 1];
                table[j * width + v] = a.checked_add(b).ok_or_else(|| {
                    Error::Size(format!("C({v}, {j}) does not fit in 64 bits"))
                })?;
            }
        }
        Ok(Self { n, max_k, table })
    }

    #[inline]
    pub fn get(&self, v: usize, j: usize) -> u64 {
        debug_assert!(v <= self.n && j <= self.max_k);
        self.table[j * (self.n + 1) + v]
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_k(&self) -> usize {
        self.max_k
    }

    /// Colex rank of a sorted subset of `[0, n)`.
    #[inline]
    pub fn rank(&self, subset: &[u32]) -> u64 {
        subset
            .iter()
            .enumerate()
            .map(|(i, &v)| self.get(v as usize, i + 1))
            .sum()
    }

    /// Writes the k-subset of colex rank `rank` into `out` (length k).
    pub fn unrank_into(&self, mut rank: u64, out: &mut [u32]) {
        let k = out.len();
        let mut hi = self.n;
        for pos in (0..k).rev() {
            // largest v < hi with C(v, pos + 1) <= rank
            let j = pos + 1;
            let (mut lo, mut top) = (pos, hi);
            while top - lo > 1 {
                let mid = (lo + top) / 2;
                if self.get(mid, j) <= rank {
                    lo = mid;
                } else {
                    top = mid;
                }
            }
            out[pos] = lo as u32;
            rank -= self.get(lo, j);
            hi = lo;
        }
    }
}

/// Colex rank of a sorted subset (`sum C(v_i, i + 1)`), independent of n.
pub fn colex_rank(subset: &[u32]) -> u64 {
    subset
        .iter()
        .enumerate()
        .map(|(i, &v)| binomial(v as u64, i as u64 + 1).expect("rank overflow"))
        .sum()
}

/// Inverse of [`colex_rank`] over the k-subsets of `[0, n)`.
pub fn colex_unrank(rank: u64, k: usize, n: usize) -> Result<Vec<u32>> {
    let count = binomial(n as u64, k as u64)
        .ok_or_else(|| Error::Size(format!("C({n}, {k}) does not fit in 64 bits")))?;
    if rank >= count {
        return Err(Error::Range { rank, k, n, count });
    }
    let table = BinomialTable::new(n, k)?;
    let mut out = vec![0u32; k];
    table.unrank_into(rank, &mut out);
    Ok(out)
}

/// Advances a sorted subset to its colex successor. The largest element is
/// unbounded, so callers stop by counting ranks.
#[inline]
pub fn colex_next(subset: &mut [u32]) {
    let k = subset.len();
    for i in 0..k {
        if i + 1 == k || subset[i] + 1 < subset[i + 1] {
            subset[i] += 1;
            for (j, v) in subset[..i].iter_mut().enumerate() {
                *v = j as u32;
            }
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// All k-subsets of [0, n) in colex order, by sorting on the reversed
    /// vertex sequence. Independent of the rank formula.
    fn colex_enumeration(n: u32, k: usize) -> Vec<Vec<u32>> {
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
        out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
        out
    }

    #[test]
    fn rank_examples() {
        assert_eq!(colex_rank(&[0, 1, 2]), 0);
        assert_eq!(colex_rank(&[0, 1, 3]), 1);
        assert_eq!(colex_rank(&[2, 4]), 8);
        let order = colex_enumeration(5, 3);
        assert_eq!(order[1], vec![0, 1, 3]);
        let order = colex_enumeration(6, 2);
        assert_eq!(order[8], vec![2, 4]);
    }

    #[test]
    fn unrank_examples() {
        assert_eq!(colex_unrank(0, 3, 5).unwrap(), vec![0, 1, 2]);
        assert_eq!(colex_unrank(1, 3, 5).unwrap(), vec![0, 1, 3]);
        assert_eq!(colex_unrank(8, 2, 6).unwrap(), vec![2, 4]);
        assert!(matches!(colex_unrank(10, 3, 5), Err(Error::Range { .. })));
    }

    #[test]
    fn rank_matches_enumeration_exhaustively() {
        for n in 0..=12u32 {
            for k in 1..=n as usize {
                let table = BinomialTable::new(n as usize, k).unwrap();
                let order = colex_enumeration(n, k);
                assert_eq!(order.len() as u64, table.get(n as usize, k));
                let mut walker: Vec<u32> = (0..k as u32).collect();
                let mut buf = vec![0u32; k];
                for (r, s) in order.iter().enumerate() {
                    assert_eq!(table.rank(s), r as u64);
                    assert_eq!(colex_rank(s), r as u64);
                    table.unrank_into(r as u64, &mut buf);
                    assert_eq!(&buf, s);
                    assert_eq!(&walker, s);
                    colex_next(&mut walker);
                }
            }
        }
    }

    #[test]
    fn roundtrip_up_to_twenty() {
        for n in [13usize, 17, 20] {
            for k in 1..=n {
                let table = BinomialTable::new(n, k).unwrap();
                let count = table.get(n, k);
                let step = (count / 5000).max(1);
                let mut buf = vec![0u32; k];
                let mut r = 0;
                while r < count {
                    table.unrank_into(r, &mut buf);
                    assert!(buf.windows(2).all(|w| w[0] < w[1]));
                    assert!((buf[k - 1] as usize) < n);
                    assert_eq!(table.rank(&buf), r);
                    r += step;
                }
            }
        }
    }

    #[test]
    fn binomials_agree() {
        for n in 0..60u64 {
            for k in 0..=n {
                let a = binomial_u128(n, k).unwrap();
                assert_eq!(binomial_big(n, k), num_bigint::BigUint::from(a));
            }
        }
        assert_eq!(binomial(5, 2), Some(10));
        assert_eq!(binomial(3, 5), Some(0));
    }
}
