//! Biextensions of degree-zero cycle classes, computed in four models:
//! the abstract quotient construction, pairings of complexes, divisors on
//! curves over finite fields, and the Poincaré biextension of a complex torus.

pub mod abelian;
pub mod group;
pub mod biext;
pub mod curve;
pub mod hodge;

/// Seeded generator used for every randomized choice (audits, disjointness
/// repair, path search), so runs are reproducible from a single `u64`.
pub type SeededRng = rand_chacha::ChaCha8Rng;
