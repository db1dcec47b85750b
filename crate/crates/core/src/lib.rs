//! Exact algebra for lifting finite groups of surface automorphisms to the
//! deck groups of k-homology covers.
//!
//! The homology module `M_k = H_1(S; Z_k) ≅ Z_k^{2g}` carries an action of the
//! finite group `L`; this crate decides whether the extension
//! `1 → M_k → L̃_k → L → 1` (or one of its quotients by an invariant subgroup)
//! splits, constructs the quotient groups explicitly, and computes the
//! invariant closures and cores that describe Galois closures of composite
//! covers.
//!
//! Modules, bottom up:
//! - [`zkmod`]: canonical subgroup forms over `Z_k` and `Z`, linear solving.
//! - [`action`]: the homological action, invariant closures, cores, enumeration.
//! - [`lift`]: the twisted norm equation for cyclic `L`.
//! - [`extension`]: realizing `L`, factor-set reconstruction, the quotient
//!   extension groups, complement search and identification.
//! - [`surfaces`]: Riemann–Hurwitz bookkeeping, standard actions, scenarios.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod action;
mod error;
pub mod extension;
pub mod lift;
pub mod surfaces;
pub mod word;
pub mod zkmod;

pub use error::{Error, Result};

pub(crate) mod prelude {
    pub(crate) use alloc::collections::{BTreeMap, BTreeSet};
    pub(crate) use alloc::format;
    pub(crate) use alloc::string::{String, ToString};
    pub(crate) use alloc::vec;
    pub(crate) use alloc::vec::Vec;
}
