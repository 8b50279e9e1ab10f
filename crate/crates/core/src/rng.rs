//! Counter-based random substreams.
//!
//! Every random quantity in a run is drawn from a ChaCha8 stream whose key is
//! a hash of `(seed, purpose, a, b)`. Results therefore depend only on the
//! coordinates of the draw (drop, slot, ...) and never on the order in which
//! workers evaluate them.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

/// Tag separating independent streams that share the same coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Purpose {
    Positions = 1,
    Links = 2,
    Jammer = 3,
    UeFading = 4,
    JammerFading = 5,
    Estimation = 6,
    ObservationH1 = 7,
    ObservationH0 = 8,
    Blanking = 9,
    Scheduling = 10,
    JammerSet = 11,
}

#[inline]
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Stream keyed on `(seed, purpose, a, b)`.
pub fn substream(seed: u64, purpose: Purpose, a: u64, b: u64) -> SimRng {
    let mut state = seed;
    // absorb coordinates one at a time so (a, b) and (b, a) differ
    for word in [purpose as u64, a, b] {
        state = splitmix64(&mut state) ^ word;
    }
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}
