//! Counter-based randomness. Every consumer addresses the ChaCha8 keystream
//! of a seed by position, so output never depends on how work is split.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Keystream used for sign bits of random tournaments.
const SIGN_STREAM: u64 = 0;
/// First keystream used for sampling blocks.
const SAMPLE_STREAM_BASE: u64 = 1 << 32;

/// A 64-bit seed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Seed(pub u64);

impl Seed {
    fn stream(self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.0);
        rng.set_stream(stream);
        rng
    }

    /// Fills `out` with the 64-bit sign words starting at word index `first`.
    pub fn fill_sign_words(self, first: u64, out: &mut [u64]) {
        let mut rng = self.stream(SIGN_STREAM);
        rng.set_word_pos(2 * first as u128);
        for w in out {
            *w = rng.next_u64();
        }
    }

    /// Independent generator for sampling block `block`.
    pub fn sample_block(self, block: u64) -> ChaCha8Rng {
        self.stream(SAMPLE_STREAM_BASE + block)
    }

    /// Generator for a derived purpose (`index` distinguishes uses).
    pub fn derived(self, index: u64) -> ChaCha8Rng {
        self.stream(SAMPLE_STREAM_BASE / 2 + index)
    }
}

impl From<u64> for Seed {
    fn from(v: u64) -> Self {
        Seed(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_are_position_addressed() {
        let seed = Seed(42);
        let mut all = vec![0u64; 100];
        seed.fill_sign_words(0, &mut all);
        let mut tail = vec![0u64; 37];
        seed.fill_sign_words(63, &mut tail);
        assert_eq!(&all[63..], &tail[..]);
        let mut other = vec![0u64; 100];
        Seed(43).fill_sign_words(0, &mut other);
        assert_ne!(all, other);
    }
}
