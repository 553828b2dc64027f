//! Decision procedures for unambiguous polynomial closure, its Boolean and
//! two-variable first-order counterparts, over regular languages given by
//! automata or regular expressions.

pub mod bitset;
pub mod corpus;
pub mod covering;
pub mod deciders;
pub mod lang;
pub mod logic;
pub mod monoid;
pub mod prevariety;

/// Default cap on fixpoint and enumeration sizes.
pub const DEFAULT_SIZE_GUARD: usize = 1 << 16;

/// Size cap, overridable through the `HIERARCH_SIZE_GUARD` environment variable.
pub fn size_guard() -> usize {
    std::env::var("HIERARCH_SIZE_GUARD").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_SIZE_GUARD)
}
