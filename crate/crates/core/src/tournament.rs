//! Dense storage of a d-tournament: one sign bit per d-subset, indexed by
//! colex rank, plus the HOT1 binary format.
//!
//! HOT1 layout: magic `HOT1`, one byte `d`, `n` as u32 little-endian, then
//! `ceil(C(n, d) / 8)` bytes of sign bits in rank order, least significant
//! bit first, bit 1 meaning `+1`. Pad bits are zero.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use crate::binom::{colex_next, BinomialTable};
use crate::error::{arg, Error, Result};
use crate::exec::{for_each_chunk_mut, Exec};
use crate::orientation::{permutation_parity, KSubset, Sign, SimplexFaceSigns};

pub const HOT1_MAGIC: &[u8; 4] = b"HOT1";
const HOT1_HEADER: usize = 9;

/// Largest supported number of sign bits (2 GiB of storage).
pub const MAX_SIGN_BITS: u64 = 1 << 34;
/// Largest supported order; face patterns are 64-bit masks.
pub const MAX_ORDER: usize = 63;

/// Words per parallel fill block.
const FILL_BLOCK_WORDS: usize = 1024;

/// Validated shape of a d-tournament plus its binomial table.
#[derive(Clone, Debug)]
pub struct Shape {
    pub d: usize,
    pub n: usize,
    pub num_signs: u64,
    pub num_simplices: u64,
    table: Arc<BinomialTable>,
}

impl Shape {
    pub fn new(d: usize, n: usize) -> Result<Self> {
        if d < 2 {
            return arg(format!("tournament order must be at least 2, got {d}"));
        }
        if d > MAX_ORDER {
            return arg(format!("tournament order at most {MAX_ORDER} is supported, got {d}"));
        }
        if n < d {
            return arg(format!("need n >= d, got d={d}, n={n}"));
        }
        if n > u32::MAX as usize {
            return Err(Error::Size(format!("n={n} exceeds the vertex id range")));
        }
        let table = BinomialTable::new(n, d + 1)?;
        let num_signs = table.get(n, d);
        if num_signs > MAX_SIGN_BITS {
            return Err(Error::Size(format!(
                "C({n}, {d}) = {num_signs} sign bits exceeds the limit of {MAX_SIGN_BITS}"
            )));
        }
        let num_simplices = table.get(n, d + 1);
        Ok(Self { d, n, num_signs, num_simplices, table: Arc::new(table) })
    }

    pub fn table(&self) -> &BinomialTable {
        &self.table
    }

    fn num_words(&self) -> usize {
        self.num_signs.div_ceil(64) as usize
    }
}

/// An immutable d-tournament on `n` vertices.
#[derive(Clone, Debug)]
pub struct Tournament {
    shape: Shape,
    words: Vec<u64>,
}

impl PartialEq for Tournament {
    fn eq(&self, other: &Self) -> bool {
        self.shape.d == other.shape.d && self.shape.n == other.shape.n && self.words == other.words
    }
}

impl Eq for Tournament {}

impl Tournament {
    /// Every d-subset oriented `+1`.
    pub fn all_plus(d: usize, n: usize) -> Result<Self> {
        Ok(TournamentBuilder::new(d, n)?.seal())
    }

    /// Builds a tournament from a per-subset predicate (`true` ↔ `+1`). The
    /// predicate sees each sorted d-subset exactly once.
    pub fn from_fn<F>(d: usize, n: usize, exec: Exec, f: F) -> Result<Self>
    where
        F: Fn(&[u32]) -> bool + Sync + Send,
    {
        let shape = Shape::new(d, n)?;
        let mut words = vec![0u64; shape.num_words()];
        let total = shape.num_signs;
        let table = shape.table();
        for_each_chunk_mut(exec, &mut words, FILL_BLOCK_WORDS, |block, chunk| {
            let first = (block * FILL_BLOCK_WORDS) as u64 * 64;
            let mut subset = vec![0u32; d];
            table.unrank_into(first, &mut subset);
            let mut rank = first;
            for w in chunk.iter_mut() {
                let mut word = 0u64;
                for bit in 0..64 {
                    if rank >= total {
                        break;
                    }
                    if f(&subset) {
                        word |= 1 << bit;
                    }
                    rank += 1;
                    colex_next(&mut subset);
                }
                *w = word;
            }
        });
        Ok(Self { shape, words })
    }

    /// Takes ownership of raw sign words; pad bits are cleared.
    pub(crate) fn from_words(shape: Shape, mut words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), shape.num_words());
        let tail = shape.num_signs % 64;
        if tail != 0 {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        Self { shape, words }
    }

    pub fn d(&self) -> usize {
        self.shape.d
    }

    pub fn n(&self) -> usize {
        self.shape.n
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// `C(n, d)`.
    pub fn num_signs(&self) -> u64 {
        self.shape.num_signs
    }

    /// `C(n, d + 1)`.
    pub fn num_simplices(&self) -> u64 {
        self.shape.num_simplices
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Sign bit of the d-subset with colex rank `rank`.
    #[inline]
    pub fn bit(&self, rank: u64) -> bool {
        self.words[(rank / 64) as usize] >> (rank % 64) & 1 == 1
    }

    pub fn sign_at(&self, rank: u64) -> Result<Sign> {
        if rank >= self.num_signs() {
            return Err(Error::Range {
                rank,
                k: self.d(),
                n: self.n(),
                count: self.num_signs(),
            });
        }
        Ok(Sign::from_bit(self.bit(rank)))
    }

    fn check_subset(&self, subset: &KSubset, k: usize) -> Result<()> {
        if subset.len() != k {
            return arg(format!("expected a {k}-subset, got {} vertices", subset.len()));
        }
        if let Some(&v) = subset.vertices().last() {
            if v as usize >= self.n() {
                return arg(format!("vertex {v} out of range for n={}", self.n()));
            }
        }
        Ok(())
    }

    pub fn get_sign(&self, subset: &KSubset) -> Result<Sign> {
        self.check_subset(subset, self.d())?;
        Ok(Sign::from_bit(self.bit(self.shape.table.rank(subset.vertices()))))
    }

    /// Sign of a sorted, in-range d-subset without validation.
    #[inline]
    pub fn sign_of(&self, subset: &[u32]) -> Sign {
        Sign::from_bit(self.bit(self.shape.table.rank(subset)))
    }

    /// Face-sign bitmask of a sorted (d+1)-subset (bit i ↔ face omitting the
    /// i-th smallest vertex).
    #[inline]
    pub fn face_bits(&self, simplex: &[u32]) -> u64 {
        let t = &self.shape.table;
        let k = simplex.len();
        // rank of the face omitting index 0
        let mut rank: u64 = (1..k).map(|j| t.get(simplex[j] as usize, j)).sum();
        let mut bits = 0u64;
        for i in 0..k {
            bits |= (self.bit(rank) as u64) << i;
            if i + 1 < k {
                rank = rank + t.get(simplex[i] as usize, i + 1)
                    - t.get(simplex[i + 1] as usize, i + 1);
            }
        }
        bits
    }

    pub fn simplex_face_signs(&self, simplex: &KSubset) -> Result<SimplexFaceSigns> {
        self.check_subset(simplex, self.d() + 1)?;
        SimplexFaceSigns::from_bits(self.face_bits(simplex.vertices()), self.d() + 1)
    }

    /// Every sign negated.
    pub fn flipped(&self) -> Self {
        let words = self.words.iter().map(|w| !w).collect();
        Self::from_words(self.shape.clone(), words)
    }

    /// The tournament in which vertex `v` is renamed `perm[v]`: the image
    /// of an oriented set keeps its orientation class.
    pub fn relabeled(&self, perm: &[u32]) -> Result<Self> {
        let n = self.n();
        if perm.len() != n {
            return arg("permutation length must equal n");
        }
        let mut inverse = vec![u32::MAX; n];
        for (v, &p) in perm.iter().enumerate() {
            if p as usize >= n || inverse[p as usize] != u32::MAX {
                return arg("not a permutation of the vertex set");
            }
            inverse[p as usize] = v as u32;
        }
        Tournament::from_fn(self.d(), n, Exec::Parallel, |face| {
            // preimage in the order of the new labels
            let pre: Vec<u32> = face.iter().map(|&v| inverse[v as usize]).collect();
            let mut sorted = pre.clone();
            sorted.sort_unstable();
            (self.sign_of(&sorted) * permutation_parity(&pre)).bit()
        })
    }

    /// Serializes to HOT1 bytes.
    pub fn to_hot1(&self) -> Vec<u8> {
        let payload = self.num_signs().div_ceil(8) as usize;
        let mut out = Vec::with_capacity(HOT1_HEADER + payload);
        out.extend_from_slice(HOT1_MAGIC);
        out.push(self.d() as u8);
        out.extend_from_slice(&(self.n() as u32).to_le_bytes());
        for w in &self.words {
            out.extend_from_slice(&w.to_le_bytes());
        }
        out.truncate(HOT1_HEADER + payload);
        out
    }

    /// Parses HOT1 bytes.
    pub fn from_hot1(bytes: &[u8]) -> Result<Self> {
        let (d, n) = parse_hot1_header(bytes)?;
        let shape = Shape::new(d, n).map_err(|e| Error::Format(format!("HOT1 header: {e}")))?;
        let payload = shape.num_signs.div_ceil(8) as usize;
        let body = &bytes[HOT1_HEADER..];
        if body.len() != payload {
            return Err(Error::Format(format!(
                "HOT1 payload length mismatch: expected {payload} bytes, found {}",
                body.len()
            )));
        }
        let mut words = vec![0u64; shape.num_words()];
        for (w, chunk) in words.iter_mut().zip(body.chunks(8)) {
            let mut buf = [0u8; 8];
            buf[..chunk.len()].copy_from_slice(chunk);
            *w = u64::from_le_bytes(buf);
        }
        let tail = shape.num_signs % 64;
        if tail != 0 && words.last().is_some_and(|w| w >> tail != 0) {
            return Err(Error::Format("HOT1 pad bits must be zero".into()));
        }
        Ok(Self { shape, words })
    }

    pub fn write_hot1(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut f = fs::File::create(path)?;
        f.write_all(&self.to_hot1())?;
        f.sync_all()?;
        Ok(())
    }

    pub fn read_hot1(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_hot1(&fs::read(path)?)
    }
}

/// Reads `(d, n)` from a HOT1 header.
pub fn parse_hot1_header(bytes: &[u8]) -> Result<(usize, usize)> {
    if bytes.len() < HOT1_HEADER {
        return Err(Error::Format("HOT1 header truncated".into()));
    }
    if &bytes[..4] != HOT1_MAGIC {
        return Err(Error::Format("bad magic, expected HOT1".into()));
    }
    let d = bytes[4] as usize;
    let n = u32::from_le_bytes(bytes[5..9].try_into().unwrap()) as usize;
    Ok((d, n))
}

/// Mutable tournament under construction; every sign starts at `+1`.
#[derive(Clone, Debug)]
pub struct TournamentBuilder {
    shape: Shape,
    words: Vec<u64>,
}

impl TournamentBuilder {
    pub fn new(d: usize, n: usize) -> Result<Self> {
        let shape = Shape::new(d, n)?;
        let words = vec![u64::MAX; shape.num_words()];
        Ok(Self { shape, words })
    }

    pub fn set_sign(&mut self, subset: &KSubset, sign: Sign) -> Result<()> {
        if subset.len() != self.shape.d {
            return arg(format!("expected a {}-subset, got {} vertices", self.shape.d, subset.len()));
        }
        if subset.vertices().last().is_some_and(|&v| v as usize >= self.shape.n) {
            return arg("vertex out of range");
        }
        let rank = self.shape.table.rank(subset.vertices());
        self.set_bit(rank, sign.bit());
        Ok(())
    }

    pub fn get_sign(&self, subset: &KSubset) -> Result<Sign> {
        if subset.len() != self.shape.d {
            return arg(format!("expected a {}-subset, got {} vertices", self.shape.d, subset.len()));
        }
        let rank = self.shape.table.rank(subset.vertices());
        Ok(Sign::from_bit(self.words[(rank / 64) as usize] >> (rank % 64) & 1 == 1))
    }

    #[inline]
    pub fn set_bit(&mut self, rank: u64, bit: bool) {
        assert!(rank < self.shape.num_signs, "rank out of range");
        let (w, b) = ((rank / 64) as usize, rank % 64);
        if bit {
            self.words[w] |= 1 << b;
        } else {
            self.words[w] &= !(1 << b);
        }
    }

    pub fn seal(self) -> Tournament {
        Tournament::from_words(self.shape, self.words)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orientation::Sign::{Minus as M, Plus as P};

    fn ks(v: &[u32]) -> KSubset {
        KSubset::new(v.to_vec()).unwrap()
    }

    #[test]
    fn builder_defaults_and_writes() {
        let mut b = TournamentBuilder::new(2, 4).unwrap();
        assert_eq!(b.get_sign(&ks(&[0, 1])).unwrap(), P);
        b.set_sign(&ks(&[0, 1]), M).unwrap();
        let t = b.seal();
        assert_eq!(t.get_sign(&ks(&[0, 1])).unwrap(), M);
        assert_eq!(t.get_sign(&ks(&[2, 3])).unwrap(), P);
        assert!(KSubset::new(vec![0, 0]).is_err());
        assert!(t.get_sign(&ks(&[0, 1, 2])).is_err());
        assert!(t.get_sign(&ks(&[0, 4])).is_err());
    }

    #[test]
    fn face_signs() {
        let t = Tournament::all_plus(2, 3).unwrap();
        assert_eq!(t.simplex_face_signs(&ks(&[0, 1, 2])).unwrap().signs(), vec![P, P, P]);
        let mut b = TournamentBuilder::new(3, 5).unwrap();
        b.set_sign(&ks(&[0, 1, 2]), M).unwrap();
        let t = b.seal();
        assert_eq!(t.simplex_face_signs(&ks(&[0, 1, 2, 3])).unwrap().signs(), vec![P, P, P, M]);
        assert!(t.simplex_face_signs(&ks(&[0, 1, 2])).is_err());
    }

    #[test]
    fn hot1_layout() {
        let mut b = TournamentBuilder::new(2, 4).unwrap();
        b.set_sign(&ks(&[0, 1]), M).unwrap();
        let bytes = b.seal().to_hot1();
        // 6 bits, rank 0 cleared, pad zero
        assert_eq!(bytes, vec![b'H', b'O', b'T', b'1', 2, 4, 0, 0, 0, 0b0011_1110]);
        let back = Tournament::from_hot1(&bytes).unwrap();
        assert_eq!(back.to_hot1(), bytes);
    }

    #[test]
    fn hot1_rejects_malformed() {
        let bytes = Tournament::all_plus(3, 9).unwrap().to_hot1();
        let err = Tournament::from_hot1(&bytes[..bytes.len() - 1]).unwrap_err();
        assert!(err.to_string().contains("HOT1 payload length mismatch"));
        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert!(Tournament::from_hot1(&bad).is_err());
        let mut pad = Tournament::all_plus(2, 4).unwrap().to_hot1();
        *pad.last_mut().unwrap() |= 0x80;
        assert!(Tournament::from_hot1(&pad).is_err());
        let mut zero_d = bytes;
        zero_d[4] = 1;
        assert!(Tournament::from_hot1(&zero_d).is_err());
    }

    #[test]
    fn from_fn_parallel_matches_sequential() {
        let f = |s: &[u32]| (s.iter().map(|&v| v as u64 * 2654435761).sum::<u64>() >> 7) & 1 == 1;
        let a = Tournament::from_fn(3, 60, Exec::Parallel, f).unwrap();
        let b = Tournament::from_fn(3, 60, Exec::Sequential, f).unwrap();
        assert_eq!(a, b);
        let mut check = vec![0u32; 3];
        for r in (0..a.num_signs()).step_by(97) {
            a.shape().table().unrank_into(r, &mut check);
            assert_eq!(a.bit(r), f(&check));
        }
    }

    #[test]
    fn shape_limits() {
        assert!(Shape::new(1, 5).is_err());
        assert!(Shape::new(4, 3).is_err());
        assert!(matches!(Shape::new(5, 100_000), Err(Error::Size(_))));
    }
}
