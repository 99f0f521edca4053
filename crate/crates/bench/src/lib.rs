//! Fixtures shared by the benchmarks.

use evalg_core::{random_algebra, EvolutionAlgebra, Field, RandomMode};

pub fn f7() -> Field {
    Field::prime(7).expect("7 is an allowed prime")
}

/// `count` seeded random algebras of dimension `dim`.
pub fn sample(field: Field, dim: usize, mode: RandomMode, count: u64) -> Vec<EvolutionAlgebra> {
    (0..count).map(|seed| random_algebra(field, dim, mode, seed).expect("dimension is in range").algebra).collect()
}
