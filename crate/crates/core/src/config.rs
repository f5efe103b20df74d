//! Resource caps shared across the crate. Every cap can be raised by the
//! caller; the defaults keep the brute-force oracles and exact eigenproblems
//! at desk scale.

#[derive(Clone, Debug)]
pub struct Caps {
    /// Longest chain the walk enumerator will materialize (𝒮³₁/𝒮²₁).
    pub oracle_n_uncolored: usize,
    /// Longest chain the walk enumerator will materialize (𝒮³₂).
    pub oracle_n_colored: usize,
    /// Largest Hilbert-space dimension for exact rational kernel ranks.
    pub exact_kernel_dim: u128,
    /// Largest Hilbert-space dimension assembled as an explicit operator.
    pub operator_dim: u128,
    /// Largest basis enumerated for move-closure classes.
    pub class_states: u128,
    /// Largest block handed to the dense eigensolver.
    pub dense_block: usize,
    /// Default truncation order for formal power series.
    pub series_order: usize,
    /// Decimal digits carried by high-precision evaluation.
    pub precision: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            oracle_n_uncolored: 12,
            oracle_n_colored: 9,
            exact_kernel_dim: 30_000,
            operator_dim: 600_000,
            class_states: 8_000_000,
            dense_block: 2_000,
            series_order: 200,
            precision: 50,
        }
    }
}
