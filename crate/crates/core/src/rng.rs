//! Seeding.
//!
//! Every random object in the crate is driven by a [`ChaCha8Rng`] seeded from
//! a single `u64`. Independent streams for parallel trials are derived with
//! the SplitMix64 finaliser:
//!
//! ```text
//! splitmix64(x) = z ^ (z >> 31) where
//!     z0 = x + 0x9E3779B97F4A7C15
//!     z1 = (z0 ^ (z0 >> 30)) * 0xBF58476D1CE4E5B9
//!     z  = (z1 ^ (z1 >> 27)) * 0x94D049BB133111EB
//! mix(a, b)             = splitmix64(a ^ splitmix64(b))
//! derive_seed(s, [k..]) = fold(splitmix64(s), mix)
//! ```
//!
//! All arithmetic is wrapping. A trial seed is therefore recomputable from
//! the master seed and the trial's coordinates alone.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type GraphRng = ChaCha8Rng;

pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn mix(a: u64, b: u64) -> u64 {
    splitmix64(a ^ splitmix64(b))
}

/// Derives an independent stream seed from a master seed and a coordinate
/// path such as `[cell_key, trial_index]`.
pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    path.iter().fold(splitmix64(master), |acc, &k| mix(acc, k))
}

pub fn rng_from_seed(seed: u64) -> GraphRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_values() {
        // First outputs of the reference SplitMix64 generator seeded with 0:
        // state advances by the golden gamma before finalising.
        assert_eq!(splitmix64(0), 0xE220_A839_7B1D_CDAF);
        assert_eq!(
            splitmix64(0x9E37_79B9_7F4A_7C15),
            0x6E78_9E6A_A1B9_65F4
        );
    }

    #[test]
    fn derived_streams_differ() {
        let a = derive_seed(7, &[1, 0]);
        let b = derive_seed(7, &[1, 1]);
        let c = derive_seed(7, &[2, 0]);
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_eq!(a, derive_seed(7, &[1, 0]));
    }
}
