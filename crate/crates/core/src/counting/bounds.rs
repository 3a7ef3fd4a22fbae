//! Closed-form constants and bounds.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::binom::binomial_big;
use crate::error::{arg, Result};
use crate::orientation::SimplexFaceSigns;

fn ratio(p: impl Into<BigInt>, q: impl Into<BigInt>) -> BigRational {
    BigRational::new(p.into(), q.into())
}

fn choose2(k: u64) -> u64 {
    k * k.saturating_sub(1) / 2
}

/// Minimum number of compatible face pairs of a d-simplex:
/// `C(floor((d+1)/2), 2) + C(ceil((d+1)/2), 2)`.
pub fn s_of_d(d: usize) -> u64 {
    let len = d as u64 + 1;
    choose2(len / 2) + choose2(len.div_ceil(2))
}

/// Minimum of `compatible_pairs` over every face pattern of a d-simplex.
pub fn lemma_min_pairs_exhaustive(d: usize) -> Result<u64> {
    if !(2..=16).contains(&d) {
        return arg(format!("exhaustive minimum supports 2 <= d <= 16, got {d}"));
    }
    let len = d + 1;
    let min = (0..1u64 << len)
        .map(|bits| SimplexFaceSigns::from_bits(bits, len).map(|f| f.compatible_pairs()))
        .try_fold(u64::MAX, |m, cp| cp.map(|c| m.min(c)))?;
    Ok(min)
}

/// `C(n, d-1) * floor((n-d+1)/2) * ceil((n-d+1)/2)`, the most compatible
/// pairs any d-tournament on n vertices can have.
pub fn pair_count_upper(d: usize, n: usize) -> BigUint {
    let h = (n + 1).saturating_sub(d) as u64;
    binomial_big(n as u64, d as u64 - 1) * BigUint::from(h / 2) * BigUint::from(h.div_ceil(2))
}

/// Largest directed count `X` compatible with
/// `C(d+1,2) X + s(d) (C(n,d+1) - X) <= pair_count_upper(d, n)`.
pub fn exact_upper_bound(d: usize, n: usize) -> Result<BigUint> {
    if d < 2 || n < d + 1 {
        return arg(format!("exact upper bound needs d >= 2 and n >= d+1 (d={d}, n={n})"));
    }
    let s = BigInt::from(s_of_d(d));
    let all_pairs = BigInt::from(choose2(d as u64 + 1));
    let simplices = BigInt::from(binomial_big(n as u64, d as u64 + 1));
    let rhs = BigInt::from(pair_count_upper(d, n));
    let num = rhs - &s * simplices;
    let bound = num.div_floor(&(all_pairs - s));
    // the pair count of any tournament lies between the two sides, so the
    // numerator is never negative
    Ok(bound.to_biguint().unwrap_or_default())
}

/// Leading coefficient `(d(d+1)/4 - s(d)) / (d(d+1)/2 - s(d))` of the
/// upper bound.
pub fn asymptotic_upper_fraction(d: usize) -> BigRational {
    let dd = (d * (d + 1)) as i64;
    let s = s_of_d(d) as i64;
    ratio(dd - 4 * s, 2 * dd - 4 * s)
}

/// `x` (a coordinate of d+1 random digit vectors is rainbow) and `y` (it
/// shows at most d-1 distinct digits) for the product construction.
pub fn product_series_terms(d: usize) -> (BigRational, BigRational) {
    let base = BigInt::from(d as u64 + 1);
    let pow: BigInt = Pow::pow(&base, d as u32 + 1);
    let fact: BigInt = (1..=d as u64 + 1).map(BigInt::from).product();
    let x = BigRational::new(fact, pow);
    let all = 1 + choose2(d as u64 + 1);
    let y = BigRational::one() - &x * BigRational::from_integer(all.into());
    (x, y)
}

/// `x + x y + ... + x y^(m-1)`: probability that d+1 independent uniform
/// vertices of the m-coordinate product form a directed simplex.
pub fn product_finite_fraction(d: usize, m: usize) -> BigRational {
    let (x, y) = product_series_terms(d);
    let mut term = x;
    let mut sum = BigRational::zero();
    for _ in 0..m {
        sum += &term;
        term *= &y;
    }
    sum
}

/// Directed fraction over (d+1)-sets of distinct vertices: the independent
/// model probability divided by the chance that d+1 draws are distinct.
pub fn product_distinct_fraction(d: usize, m: usize) -> BigRational {
    let n = BigInt::from(d as u64 + 1).pow(m as u32);
    let mut distinct = BigRational::one();
    for i in 0..=d as u64 {
        distinct *= BigRational::new(&n - BigInt::from(i), n.clone());
    }
    product_finite_fraction(d, m) / distinct
}

/// Maximum number of cyclic triangles in a tournament on `n` vertices:
/// `(n^3 - n)/24` for odd n, `(n^3 - 4n)/24` for even n.
pub fn exact_formula_d2(n: usize) -> BigUint {
    let n = BigUint::from(n);
    let cube = &n * &n * &n;
    let lin = if n.is_odd() { n } else { n * 4u32 };
    (cube - lin) / 24u32
}

/// Bounding constants for a given order and vertex count.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub d: usize,
    pub n: usize,
    pub s_d: u64,
    pub exact_upper: BigUint,
    pub total_simplices: BigUint,
    /// `2^-d`, the expected fraction in a uniformly random tournament.
    pub random_lower_fraction: BigRational,
    /// `1 / (1 + C(d+1, 2))`, the product construction's limit.
    pub product_limit_fraction: BigRational,
    pub asymptotic_upper_fraction: BigRational,
}

pub fn closed_form_constants(d: usize, n: usize) -> Result<BoundReport> {
    let exact_upper = exact_upper_bound(d, n)?;
    let (x, y) = product_series_terms(d);
    Ok(BoundReport {
        d,
        n,
        s_d: s_of_d(d),
        exact_upper,
        total_simplices: binomial_big(n as u64, d as u64 + 1),
        random_lower_fraction: ratio(1, BigInt::from(2).pow(d as u32)),
        product_limit_fraction: x / (BigRational::one() - y),
        asymptotic_upper_fraction: asymptotic_upper_fraction(d),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_values() {
        assert_eq!(s_of_d(2), 1);
        assert_eq!(s_of_d(3), 2);
        assert_eq!(s_of_d(5), 6);
        assert_eq!(s_of_d(8), 16);
        for d in 2..=12 {
            assert_eq!(lemma_min_pairs_exhaustive(d).unwrap(), s_of_d(d), "d={d}");
        }
        assert!(lemma_min_pairs_exhaustive(1).is_err());
        assert!(lemma_min_pairs_exhaustive(17).is_err());
    }

    #[test]
    fn asymptotic_fractions_by_parity() {
        for d in 2..=30usize {
            let expected = if d % 2 == 1 { ratio(1, d as i64 + 1) } else { ratio(1, d as i64 + 2) };
            assert_eq!(asymptotic_upper_fraction(d), expected, "d={d}");
        }
    }

    #[test]
    fn d2_exact_bound_matches_formula() {
        // the bound is attained for d = 2
        for n in 3..=60 {
            assert_eq!(exact_upper_bound(2, n).unwrap(), exact_formula_d2(n), "n={n}");
        }
        assert_eq!(exact_formula_d2(5), 5u32.into());
        assert_eq!(exact_formula_d2(6), 8u32.into());
        assert_eq!(exact_formula_d2(7), 14u32.into());
    }

    #[test]
    fn d2_bound_fraction_near_quarter() {
        use num_traits::ToPrimitive;
        let b = exact_upper_bound(2, 100).unwrap();
        let f = BigRational::new(b.into(), binomial_big(100, 3).into()).to_f64().unwrap();
        assert!((f - 0.25).abs() < 0.03, "{f}");
    }

    #[test]
    fn product_constants() {
        let (x, y) = product_series_terms(2);
        assert_eq!(x, ratio(2, 9));
        assert_eq!(y, ratio(1, 9));
        let (x, y) = product_series_terms(3);
        assert_eq!(x, ratio(3, 32));
        assert_eq!(y, ratio(11, 32));
        assert_eq!(product_finite_fraction(3, 3), ratio(31437, 229376));
        assert_eq!(closed_form_constants(2, 10).unwrap().product_limit_fraction, ratio(1, 4));
        assert_eq!(closed_form_constants(3, 10).unwrap().product_limit_fraction, ratio(1, 7));
        for d in 2..=10usize {
            let c = closed_form_constants(d, d + 5).unwrap();
            assert_eq!(c.product_limit_fraction, ratio(1, 1 + (d * (d + 1) / 2) as i64));
        }
    }

    #[test]
    fn bound_report_values() {
        let r = closed_form_constants(3, 100).unwrap();
        assert_eq!(r.s_d, 2);
        assert_eq!(r.asymptotic_upper_fraction, ratio(1, 4));
        assert_eq!(r.random_lower_fraction, ratio(1, 8));
        assert_eq!(closed_form_constants(4, 20).unwrap().asymptotic_upper_fraction, ratio(1, 6));
        assert!(closed_form_constants(3, 3).is_err());
    }
}
