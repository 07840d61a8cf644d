//! Fixtures shared by the benchmarks.

use cherednik_core::{orbitcomb, Family, LatticeVector, RatQT, RootSystem};

pub fn system(family: Family, rank: usize) -> RootSystem {
    RootSystem::new(family, rank).expect("admissible root system")
}

/// `θ_s + θ_{s,j}` for the first pair component.
pub fn first_pair_sum(rs: &RootSystem) -> LatticeVector {
    orbitcomb::pair_components(rs)
        .first()
        .expect("system has a pair component")
        .dominant(rs)
}

/// A handful of coefficients of the kind the solver produces.
pub fn sample_values() -> Vec<RatQT> {
    [
        "(-1 + t)/(1 - q*t^3)",
        "(t^2 - q*t^4)/(1 - q*t^5)",
        "(1 - t^-3)/(1 - q*t^3)",
        "(-q + q*t)/(1 - q*t^2)",
    ]
    .iter()
    .map(|s| s.parse().expect("valid coefficient"))
    .collect()
}
