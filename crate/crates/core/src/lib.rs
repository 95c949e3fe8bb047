//! Realizability of almost-regular ramification data in genus 0 and 1.
//!
//! Composition of permutations is right-to-left throughout: `σ∘τ` applies
//! `τ` first, and a tuple `σ_1, …, σ_r` is a constellation when
//! `σ_1∘σ_2∘…∘σ_r` is the identity and the group it generates is transitive.

pub mod dessin;
pub mod permsearch;
pub mod ramcore;
pub mod stability;
pub mod tiling;
pub mod transform;
