//! Finite bi-Heyting algebras and their dual posets.
//!
//! Everything here is exact and finite: algebras are stored as operation
//! tables (or, for free algebras, as coordinate tuples in a power), and every
//! search runs against an explicit [`Limits`] budget.

#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod algebra;
pub mod budget;
pub mod duality;
pub mod error;
pub mod free;
pub mod morphism;
pub mod order;
pub mod rules;

pub use algebra::{power, product, BiHeyting, BiHeytingAlgebra, Op};
pub use budget::Limits;
pub use duality::{dual_poset, join_irreducibles, representation_iso, upset_algebra};
pub use error::{Error, Resource, Result};
pub use free::{free_algebra, FreeAlgebra, Subpower};
pub use morphism::{
    congruence_generated, congruences, embeddings, embeds_in_power, generated_subalgebra, homomorphisms,
    is_isomorphic, is_subdirectly_irreducible, quotient, subalgebras, Congruence, Morphism,
};
pub use order::{disjoint_union, enumerate_posets, poset_isomorphic, validate_poset, Mask, Poset};
pub use rules::{Equation, Rule, Term, Verdict};

pub use fixedbitset::FixedBitSet;
