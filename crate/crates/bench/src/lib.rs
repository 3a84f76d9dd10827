//! Fixed benchmark inputs shared by the criterion targets.

use degseq::instance::Instance;
use degseq::random::{random_bounded_td, random_instance, seeded, BoundedTdParams};

pub const SEED: u64 = 1;

/// Random graph with two criteria and separable tables.
pub fn multi_instance(n: usize, edges: usize) -> Instance {
    random_instance(&mut seeded(SEED), n, edges, 2)
}

/// Random two-colored instance on a forest of the given height.
pub fn colored_instance(n: usize, height: usize) -> Instance {
    let mut params = BoundedTdParams::new(n, height);
    params.colors = 2;
    random_bounded_td(&mut seeded(SEED), &params).expect("valid parameters")
}
