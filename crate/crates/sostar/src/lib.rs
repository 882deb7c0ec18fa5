//! Exact verification engine for quaternionic square-tiled covers.
//!
//! The library builds a family of square-tiled surfaces (staircases, their
//! degree-eight quaternionic covers and the associated one-cylinder row
//! models), traces straight-line trajectories in rational directions with
//! exact arithmetic, and certifies a set of linear-algebraic conditions on
//! the resulting intersection data. The certified outcome for an admissible
//! parameter `d` (congruent to 3 mod 8) is recorded as a [`verifier::Verdict`].
//!
//! All computations are exact: permutations, small rationals with power-of-two
//! denominators, integer matrices, and modular/fraction-free determinants.

pub mod cli;
pub mod cover;
pub mod geodesics;
pub mod matrixint;
pub mod origami;
mod par;
pub mod poly;
pub mod quaternion;
pub mod rat;
pub mod verifier;

/// Version string embedded in verdicts and cache keys.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Fingerprint of the combinatorial conventions baked into this build.
///
/// Letter actions, intersection sign, and row-model label layout are all
/// validated rather than canonical; results cached under one fingerprint are
/// invalid for another.
pub const CONVENTION_FINGERPRINT: &str =
    "T=(h,v.hinv) S=(h.vinv,v) sign=det(a,b) zeta=-g mid=-1 v1";
