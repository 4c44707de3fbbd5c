//! Rees algebras of almost linearly presented height two ideals in `k[x, y]`.
#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod algebra;
pub mod analysis;
pub mod error;
pub mod invariants;
pub mod oracle;
pub mod presentation;
pub mod rees;
pub mod scroll;

pub use error::{Error, Result};
