//! The product construction on `(d+1)^m` vertices.
//!
//! Vertex `v` is read as a base-`(d+1)` digit vector `(a_1, ..., a_m)` with
//! `a_1` most significant. A d-set is oriented by its first coordinate whose
//! digits are pairwise distinct, copying the orientation of the matching
//! face of a fixed directed simplex `D` on `{0..d}`.

use crate::error::{arg, Error, Result};
use crate::exec::Exec;
use crate::orientation::{permutation_parity, Sign};
use crate::tournament::Tournament;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ProductSpec {
    pub d: usize,
    pub m: usize,
    /// Orientation of `D` itself (on sorted `{0..d}`).
    pub base_sign: Sign,
    /// Orientation of d-sets that have no all-distinct coordinate.
    pub tie_sign: Sign,
}

impl ProductSpec {
    pub fn new(d: usize, m: usize) -> Self {
        Self { d, m, base_sign: Sign::Plus, tie_sign: Sign::Plus }
    }

    /// `(d+1)^m`.
    pub fn num_vertices(&self) -> Result<usize> {
        if self.d < 2 || self.m < 1 {
            return arg(format!("product construction needs d >= 2, m >= 1 (d={}, m={})", self.d, self.m));
        }
        (self.d + 1)
            .checked_pow(self.m as u32)
            .filter(|&n| n <= u32::MAX as usize)
            .ok_or_else(|| Error::Size(format!("({})^{} vertices overflows", self.d + 1, self.m)))
    }

    /// Digit `coord` (0-based, most significant first) of vertex `v`.
    #[inline]
    pub fn digit(&self, v: u32, coord: usize) -> u32 {
        let base = self.d as u32 + 1;
        let shift = self.m - 1 - coord;
        (v / base.pow(shift as u32)) % base
    }

    pub fn digits(&self, v: u32) -> Vec<u32> {
        (0..self.m).map(|c| self.digit(v, c)).collect()
    }

    /// Number of distinct digit values among `vertices` at `coord`, as a
    /// bitmask over `{0..d}`.
    #[inline]
    fn value_mask(&self, vertices: &[u32], coord: usize) -> u64 {
        vertices.iter().fold(0u64, |m, &v| m | 1 << self.digit(v, coord))
    }

    /// Orientation of a sorted d-set.
    pub fn face_sign(&self, face: &[u32]) -> Sign {
        debug_assert_eq!(face.len(), self.d);
        for coord in 0..self.m {
            let mask = self.value_mask(face, coord);
            if mask.count_ones() as usize == self.d {
                // the one value of {0..d} missing from this coordinate
                let missing = (!mask & ((1u64 << (self.d + 1)) - 1)).trailing_zeros() as usize;
                let in_d = self.base_sign * Sign::parity(missing);
                let values: Vec<u32> = face.iter().map(|&v| self.digit(v, coord)).collect();
                return in_d * permutation_parity(&values);
            }
        }
        self.tie_sign
    }
}

pub fn product_tournament(spec: &ProductSpec) -> Result<Tournament> {
    product_tournament_with(spec, Exec::Parallel)
}

pub fn product_tournament_with(spec: &ProductSpec, exec: Exec) -> Result<Tournament> {
    let n = spec.num_vertices()?;
    Tournament::from_fn(spec.d, n, exec, |face| spec.face_sign(face).bit())
}

/// Directedness read off the digit vectors: some coordinate is rainbow
/// (all d+1 digits distinct), and every earlier coordinate shows at most
/// d-1 distinct digits.
pub fn product_directed_predicate(spec: &ProductSpec, simplex: &[u32]) -> bool {
    debug_assert_eq!(simplex.len(), spec.d + 1);
    for coord in 0..spec.m {
        let distinct = spec.value_mask(simplex, coord).count_ones() as usize;
        if distinct == spec.d + 1 {
            return true;
        }
        if distinct > spec.d - 1 {
            return false;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vertex(spec: &ProductSpec, digits: &[u32]) -> u32 {
        digits.iter().fold(0, |acc, &a| acc * (spec.d as u32 + 1) + a)
    }

    #[test]
    fn digits_roundtrip() {
        let spec = ProductSpec::new(3, 3);
        for v in 0..64u32 {
            assert_eq!(vertex(&spec, &spec.digits(v)), v);
        }
        assert_eq!(spec.digits(vertex(&spec, &[3, 0, 2])), vec![3, 0, 2]);
    }

    #[test]
    fn base_case_single_triangle() {
        for s in [Sign::Plus, Sign::Minus] {
            let spec = ProductSpec { base_sign: s, ..ProductSpec::new(2, 1) };
            let t = product_tournament(&spec).unwrap();
            assert_eq!(t.n(), 3);
            // the face omitting t carries s * (-1)^t
            assert_eq!(t.sign_of(&[1, 2]), s);
            assert_eq!(t.sign_of(&[0, 2]), -s);
            assert_eq!(t.sign_of(&[0, 1]), s);
            assert!(t.simplex_face_signs(&crate::KSubset::new(vec![0, 1, 2]).unwrap()).unwrap().is_directed());
        }
    }

    #[test]
    fn predicate_hand_cases() {
        let spec = ProductSpec::new(2, 2);
        let s = |vs: [[u32; 2]; 3]| {
            let mut v: Vec<u32> = vs.iter().map(|d| vertex(&spec, d)).collect();
            v.sort_unstable();
            product_directed_predicate(&spec, &v)
        };
        assert!(s([[0, 0], [1, 1], [2, 2]]));
        assert!(s([[0, 0], [1, 1], [2, 1]]));
        assert!(!s([[0, 0], [0, 1], [1, 2]]));
        // one distinct digit before the rainbow coordinate is allowed
        assert!(s([[0, 0], [0, 1], [0, 2]]));
    }

    #[test]
    fn size_errors() {
        assert!(matches!(ProductSpec::new(9, 40).num_vertices(), Err(Error::Size(_))));
        assert!(ProductSpec::new(1, 3).num_vertices().is_err());
    }
}
