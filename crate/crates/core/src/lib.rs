//! Finite partial semigroups, their largeness notions, and partial
//! dynamical systems over them.
//!
//! Every object is finite and discrete: ultrafilters are elements, closures
//! are identities, and limits are evaluations.

pub mod central;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod families;
pub mod format;
pub mod largeness;
pub mod semigroup;
pub mod structure;
pub mod subset;
pub mod verify;

pub use dynamics::{EnvelopingSemigroup, PartialDynSystem, PartialMap, TotalMapInf};
pub use error::{Error, Limits, Result};
pub use semigroup::PartialSemigroup;
pub use subset::SubsetMask;
