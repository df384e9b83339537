//! Brute-force oracles and randomized invariants.

#[path = "../common/mod.rs"]
mod common;

mod oracles;
