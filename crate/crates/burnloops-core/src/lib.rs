//! Exact computations with small permutation groups, finite loops and the
//! 3-net collineation machinery of the Burn loop families B4n and C4n.
//!
//! Everything is enumerated in full: groups keep their complete, lexicographically
//! sorted element lists, and all property checks are exhaustive. Orders stay in
//! the low thousands, where this is both the fastest and the least error-prone
//! approach. The crate is `no_std` (alloc only); IO, reports and the CLI live in
//! the companion `burnloops` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod group;
pub mod iso;
pub mod loops;
pub mod models;
pub mod net;
pub mod perm;

pub use group::FiniteGroup;
pub use loops::Loop;
pub use iso::GroupIso;
pub use models::{Family, GroupModel, NormalForm, Section};
pub use net::{BurnNet, CollGroup, Collineation};
pub use perm::Perm;
