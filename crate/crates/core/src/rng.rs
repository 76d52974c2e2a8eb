//! Deterministic counter-based random streams.
//!
//! Monte-Carlo loops draw through an independent stream per sample index,
//! keyed by `(seed, index)`. Merging per-index results by summation then
//! gives the same report no matter how the indices are scheduled across
//! threads.

use rand::RngCore;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// SplitMix-style generator whose initial state is a hash of `(seed, index)`.
#[derive(Clone, Debug)]
pub struct StreamRng {
    state: u64,
}

impl StreamRng {
    /// The stream for draw `index` of the run keyed by `seed`.
    pub fn stream(seed: u64, index: u64) -> Self {
        let state = mix(mix(seed ^ GOLDEN) ^ index.wrapping_mul(GOLDEN));
        StreamRng { state }
    }

    /// Single-stream generator for callers that manage indices themselves.
    pub fn seeded(seed: u64) -> Self {
        Self::stream(seed, 0)
    }
}

impl RngCore for StreamRng {
    fn next_u32(&mut self) -> u32 {
        (self.next_u64() >> 32) as u32
    }

    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix(self.state)
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        for chunk in dest.chunks_mut(8) {
            let bytes = self.next_u64().to_le_bytes();
            chunk.copy_from_slice(&bytes[..chunk.len()]);
        }
    }
}
