//! Positroid braids, braid varieties and braid DG-algebras.
//!
//! Without the default `std` feature the crate is `no_std` (it needs `alloc`);
//! `std` only adds threaded point counting. The command line front end lives
//! in `braidvar-cli`.
#![cfg_attr(not(feature = "std"), no_std)]
extern crate alloc;

pub mod poly;
pub mod braid;
pub mod matrix;
pub mod positroid;
pub mod pbraids;
pub mod rewrite;
pub mod dga;
pub mod variety;
