//! Seeded random streams.
//!
//! Every random decision is drawn from ChaCha8 seeded with the user's 64-bit
//! master seed through `seed_from_u64`, with the ChaCha stream id selecting
//! the purpose. Streams for different purposes never overlap, so adding a
//! draw in one stage cannot perturb another. Per-epoch shuffling further
//! mixes the fold and epoch numbers into the seed with SplitMix64.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u64)]
pub enum Purpose {
    Sampling = 1,
    Balancing = 2,
    Subset = 3,
    Folding = 4,
    WeightInit = 5,
    Shuffle = 6,
    TrainTestSplit = 7,
}

pub fn stream(seed: u64, purpose: Purpose) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(purpose as u64);
    rng
}

/// Stream for one (fold, epoch) shuffle.
pub fn epoch_stream(seed: u64, fold: usize, epoch: usize) -> ChaCha8Rng {
    let mixed = splitmix64(splitmix64(seed ^ (fold as u64).rotate_left(32)) ^ epoch as u64);
    stream(mixed, Purpose::Shuffle)
}

/// Stream for weight initialisation of one fold's model.
pub fn init_stream(seed: u64, fold: usize) -> ChaCha8Rng {
    stream(
        splitmix64(seed ^ (fold as u64).wrapping_mul(0xa076_1d64_78bd_642f)),
        Purpose::WeightInit,
    )
}

pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
