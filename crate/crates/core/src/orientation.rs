//! Orientation algebra for oriented k-sets.
//!
//! An orientation of a sorted k-set is a single [`Sign`]: `+1` is the class
//! of the sorted (identity) ordering, `-1` the other class. The face that
//! omits the `i`-th smallest vertex inherits `sign * (-1)^i`. On an edge
//! `{a < b}` the sign `+1` means `a -> b`; on a triple `{a < b < c}` it means
//! the cyclic orientation `a -> b -> c -> a`.

use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Deserialize, Serialize};

use crate::error::{arg, Result};

/// One of the two orientation classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    #[inline]
    pub fn from_bit(bit: bool) -> Self {
        if bit {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    #[inline]
    pub fn bit(self) -> bool {
        self == Sign::Plus
    }

    #[inline]
    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// `(-1)^k`.
    #[inline]
    pub fn parity(k: usize) -> Self {
        Sign::from_bit(k.is_multiple_of(2))
    }

    pub fn from_value(v: i64) -> Result<Self> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => arg(format!("sign must be +1 or -1, got {v}")),
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    #[inline]
    fn neg(self) -> Sign {
        Sign::from_bit(!self.bit())
    }
}

impl Mul for Sign {
    type Output = Sign;
    #[inline]
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_bit(self.bit() == rhs.bit())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A strictly increasing, non-empty sequence of vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KSubset(Vec<u32>);

impl KSubset {
    pub fn new(vertices: Vec<u32>) -> Result<Self> {
        if vertices.is_empty() {
            return arg("subset must contain at least one vertex");
        }
        if !vertices.windows(2).all(|w| w[0] < w[1]) {
            return arg(format!("subset {vertices:?} is not strictly increasing"));
        }
        Ok(Self(vertices))
    }

    /// Sorts and validates an unordered vertex list.
    pub fn from_unsorted(mut vertices: Vec<u32>) -> Result<Self> {
        vertices.sort_unstable();
        Self::new(vertices)
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn rank(&self) -> u64 {
        crate::binom::colex_rank(&self.0)
    }

    /// The subset with its `index`-th smallest vertex removed.
    pub fn without(&self, index: usize) -> Vec<u32> {
        let mut v = self.0.clone();
        v.remove(index);
        v
    }
}

impl AsRef<[u32]> for KSubset {
    fn as_ref(&self) -> &[u32] {
        &self.0
    }
}

/// A sorted subset together with its orientation class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrientedSet {
    pub subset: KSubset,
    pub sign: Sign,
}

impl OrientedSet {
    pub fn new(subset: KSubset, sign: Sign) -> Self {
        Self { subset, sign }
    }

    /// Builds an oriented set from an arbitrary vertex ordering; the sign is
    /// the parity of the permutation that sorts it.
    pub fn from_ordering(order: &[u32]) -> Result<Self> {
        let sign = permutation_parity(order);
        Ok(Self::new(KSubset::from_unsorted(order.to_vec())?, sign))
    }
}

/// Orientation induced on the face omitting the `omit_index`-th smallest
/// vertex.
pub fn induced_face_sign(set: &OrientedSet, omit_index: usize) -> Result<OrientedSet> {
    let k = set.subset.len();
    if k < 2 {
        return arg("face induction needs a set of at least two vertices");
    }
    if omit_index >= k {
        return arg(format!("omit index {omit_index} out of range for a {k}-set"));
    }
    let sub = KSubset(set.subset.without(omit_index));
    Ok(OrientedSet::new(sub, set.sign * Sign::parity(omit_index)))
}

/// Whether two oriented d-sets sharing exactly d-1 vertices induce opposite
/// orientations on their common (d-1)-set.
pub fn compatible(a: &OrientedSet, b: &OrientedSet) -> Result<bool> {
    let (va, vb) = (a.subset.vertices(), b.subset.vertices());
    if va.len() != vb.len() {
        return arg("compatibility needs two sets of equal size");
    }
    if va.len() < 2 {
        return arg("compatibility needs sets of at least two vertices");
    }
    let only_a: Vec<usize> = (0..va.len()).filter(|&i| !b.subset.contains(va[i])).collect();
    let only_b: Vec<usize> = (0..vb.len()).filter(|&i| !a.subset.contains(vb[i])).collect();
    if only_a.len() != 1 || only_b.len() != 1 {
        return arg(format!(
            "sets {va:?} and {vb:?} must share exactly {} vertices",
            va.len() - 1
        ));
    }
    let fa = induced_face_sign(a, only_a[0])?;
    let fb = induced_face_sign(b, only_b[0])?;
    debug_assert_eq!(fa.subset, fb.subset);
    Ok(fa.sign != fb.sign)
}

/// Whether `A ∪ {x}` with sign `sx` and `A ∪ {y}` with sign `sy` are
/// compatible, for a sorted set `A` not containing `x` or `y`.
///
/// Removing `x` from `A ∪ {x}` happens at position `#{a in A : a < x}`, so
/// the induced sign on `A` is `sx * (-1)^pos(x)`; the pair is compatible iff
/// the two induced signs differ.
#[inline]
pub fn extensions_compatible(common: &[u32], x: u32, sx: Sign, y: u32, sy: Sign) -> bool {
    let px = common.partition_point(|&a| a < x);
    let py = common.partition_point(|&a| a < y);
    sx * Sign::parity(px) != sy * Sign::parity(py)
}

/// Parity of the permutation sorting `seq` (distinct values), as a sign.
pub fn permutation_parity<T: Ord>(seq: &[T]) -> Sign {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    Sign::parity(inversions)
}

/// Orientation signs of the d+1 faces of a (d+1)-set; entry `i` belongs to
/// the face omitting the `i`-th smallest vertex. Stored as a bitmask
/// (bit i set ↔ `+1`), so at most 64 faces.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SimplexFaceSigns {
    bits: u64,
    len: u8,
}

/// Bits at odd positions below `len`.
#[inline]
pub(crate) fn odd_mask(len: usize) -> u64 {
    0xAAAA_AAAA_AAAA_AAAA & full_mask(len)
}

#[inline]
pub(crate) fn full_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl SimplexFaceSigns {
    pub fn from_signs(signs: &[Sign]) -> Result<Self> {
        if signs.len() < 2 || signs.len() > 64 {
            return arg(format!("a simplex needs 2..=64 faces, got {}", signs.len()));
        }
        let bits = signs
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, s)| acc | ((s.bit() as u64) << i));
        Ok(Self { bits, len: signs.len() as u8 })
    }

    /// Bit `i` of `bits` is face `i`; bits at or above `len` are ignored.
    pub fn from_bits(bits: u64, len: usize) -> Result<Self> {
        if !(2..=64).contains(&len) {
            return arg(format!("a simplex needs 2..=64 faces, got {len}"));
        }
        Ok(Self { bits: bits & full_mask(len), len: len as u8 })
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, i: usize) -> Sign {
        Sign::from_bit(self.bits >> i & 1 == 1)
    }

    pub fn signs(&self) -> Vec<Sign> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }

    /// The g-vector `g_i = f_i * (-1)^i` as a bitmask.
    #[inline]
    pub fn g_bits(&self) -> u64 {
        // (-1)^i is -1 at odd i, which flips the bit
        self.bits ^ odd_mask(self.len())
    }

    /// Directed iff the faces follow `s * (-1)^i` for one sign `s`.
    #[inline]
    pub fn is_directed(&self) -> bool {
        let g = self.g_bits();
        g == 0 || g == full_mask(self.len())
    }

    /// Number of compatible face pairs, `C(p, 2) + C(q, 2)` where `p` counts
    /// faces with `g_i = +1`.
    #[inline]
    pub fn compatible_pairs(&self) -> u64 {
        let p = self.g_bits().count_ones() as u64;
        let q = self.len() as u64 - p;
        p * p.saturating_sub(1) / 2 + q * q.saturating_sub(1) / 2
    }
}

impl fmt::Debug for SimplexFaceSigns {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for i in 0..self.len() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", self.get(i))?;
        }
        f.write_str(")")
    }
}

/// Directed-simplex test on a face pattern.
pub fn is_directed(faces: &SimplexFaceSigns) -> bool {
    faces.is_directed()
}

/// Compatible face pairs of one simplex.
pub fn compatible_pairs(faces: &SimplexFaceSigns) -> u64 {
    faces.compatible_pairs()
}

/// Compatible face pairs computed from the definition: builds every face of
/// a (d+1)-set on `{0..d}` as an oriented set and calls [`compatible`] on
/// each pair.
pub fn compatible_pairs_pairwise(faces: &SimplexFaceSigns) -> u64 {
    let len = faces.len();
    let verts: Vec<u32> = (0..len as u32).collect();
    let full = KSubset(verts);
    let oriented: Vec<OrientedSet> = (0..len)
        .map(|i| OrientedSet::new(KSubset(full.without(i)), faces.get(i)))
        .collect();
    let mut count = 0;
    for i in 0..len {
        for j in i + 1..len {
            if compatible(&oriented[i], &oriented[j]).expect("faces of one simplex") {
                count += 1;
            }
        }
    }
    count
}
