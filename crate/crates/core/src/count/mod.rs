//! Exact walk counting, three independent ways.
//!
//! - [`enumerate`] walks a depth-first search over the literal colored
//!   alphabet — the brute-force oracle everything else is tested against;
//! - [`dp`] runs a weighted transfer dynamic program over
//!   (position, height, semigroup index), plus a small stack automaton for
//!   the reflection-matched λ > 0 regime;
//! - [`recursion`] implements the first-step recursions with their
//!   convolution structure, memoized.
//!
//! The closed-form generating functions in [`crate::series`] are the third
//! independent route. All counts are exact big integers.

pub mod ballot;
pub mod dp;
pub mod enumerate;
pub mod recursion;
pub mod table;

use num_bigint::BigUint;
use num_traits::Zero;

pub use ballot::{ballot, verify_dyck_identity, DyckIdentityReport};
pub use enumerate::{enumerate_walks, max_height, oracle_count, oracle_count_tilde};
pub use table::CountTable;

use crate::error::Result;
use crate::model::ModelSpec;

/// Exact number of connected SMWs of length `n` from index `a` at height 0
/// to index `b` at height `h`, within `model`'s regime. `tilde` counts
/// color-erased walks (balanced 𝒮³₂ only).
pub fn count(model: &ModelSpec, n: usize, h: usize, a: u8, b: u8, tilde: bool) -> Result<BigUint> {
    dp::count(model, n, h, a, b, tilde)
}

/// Checks the composition law exactly:
/// `Σ_h Σ_b w(h) · N^{(h)}_{n,a→b} N^{(h)}_{n,c→b} = N_{2n,a→c}`,
/// with `w(h) = 1` except for the balanced 𝒮³₂ case, where the tilde counts
/// enter with weight `2^h`.
pub fn composition_check(model: &ModelSpec, n: usize, a: u8, c: u8) -> Result<bool> {
    let mut table = CountTable::new(model.clone());
    composition_check_with(&mut table, n, a, c)
}

pub fn composition_check_with(table: &mut CountTable, n: usize, a: u8, c: u8) -> Result<bool> {
    let model = table.model().clone();
    let tilde = matches!(model.family, crate::model::Family::S32Case2);
    let hmax = model.structural_max_height(n);
    let mut lhs = BigUint::zero();
    for h in 0..=hmax {
        let weight = if tilde {
            BigUint::from(1u8) << h
        } else {
            BigUint::from(1u8)
        };
        for b in 1..=model.k() {
            let left = table.count(n, h, a, b, tilde)?;
            let right = table.count(n, h, c, b, tilde)?;
            lhs += weight.clone() * left * right;
        }
    }
    let rhs = table.count(2 * n, 0, a, c, false)?;
    Ok(lhs == rhs)
}
