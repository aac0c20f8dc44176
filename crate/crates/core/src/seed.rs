//! Seed derivation so that independent pieces of a randomized construction
//! (spheres, edges, replicates) draw from unrelated streams.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Mixes `tag` into `seed` with the splitmix64 finalizer.
pub fn sub_seed(seed: u64, tag: u64) -> u64 {
    let mut z = seed
        ^ tag
            .wrapping_add(0x9e37_79b9_7f4a_7c15)
            .wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_separate_streams() {
        let a = sub_seed(7, 1);
        assert_eq!(a, sub_seed(7, 1));
        assert_ne!(a, sub_seed(7, 2));
        assert_ne!(a, sub_seed(8, 1));
    }
}
