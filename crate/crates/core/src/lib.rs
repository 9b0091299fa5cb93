//! Exact computer algebra for the hyper loop algebra of sl₂.
//!
//! Everything here is `no_std` (with `alloc`): arithmetic kernels, Cartan
//! bookkeeping, the divided-power PBW engine, concrete modules over finite
//! fields and Z_(p), MeatAxe, lattices and Drinfeld polynomial arithmetic.
#![no_std]
extern crate alloc;

pub mod cartan;
pub mod drinfeld;
pub mod error;
pub mod lattice;
pub mod exactnum;
pub mod linalg;
pub mod meataxe;
pub mod looppbw;
pub mod modrep;

pub use error::{Error, Result};
