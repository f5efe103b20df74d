//! Motzkin walks over symmetric inverse semigroups (SMWs): exact path
//! counting, the frustration-free spin chains built from them, and the
//! entanglement entropies of their ground states.
//!
//! The crate is organized around five subsystems:
//!
//! - [`sis`] — the semigroup algebras 𝒮²₁, 𝒮³₁ and 𝒮³₂ (elements,
//!   composition, step classification, walk connectivity);
//! - [`count`] — walk enumeration (the brute-force oracle) and exact
//!   big-integer counting via dynamic programming and via first-step
//!   recursions, with a persistent count cache;
//! - [`series`] — truncated formal power series with exact rational
//!   coefficients for every closed-form generating function, plus
//!   high-precision evaluation of the large-order asymptotics;
//! - [`ham`] — the spin-chain Hamiltonians (link and reduced-site
//!   representations, all boundary conditions and topologies), exact ground
//!   spaces, and move-closure equivalence classes;
//! - [`entangle`] — half-chain Schmidt spectra and entanglement entropies,
//!   computed both from counts and from reduced density matrices.
//!
//! Everything that feeds a ground-state count or an entropy is exact
//! arbitrary-precision arithmetic; floating point appears only at the last
//! conversion step and in the optional iterative eigensolver.

pub mod config;
pub mod count;
pub mod entangle;
pub mod error;
pub mod ham;
pub mod hiprec;
pub mod model;
pub mod series;
pub mod sis;
pub mod verify;

pub use config::Caps;
pub use error::Error;
pub use model::{Boundary, Family, ModelSpec, Topology};
pub use sis::{Connectivity, SisElement, StepKind, Walk};
