// index loops read better for the ring convolutions and label maps
#![allow(clippy::needless_range_loop)]

pub mod census;
pub mod clifford;
pub mod entropy;
pub mod error;
pub mod graphs;
pub mod group;
pub mod ring;
pub mod states;
pub mod union_find;

pub use error::{Error, Result};
