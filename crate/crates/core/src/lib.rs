#![allow(clippy::needless_range_loop)]

pub mod ar;
pub mod bases;
pub mod cartan;
pub mod coeff;
pub mod error;
pub mod exec;
pub mod freealg;
pub mod hall;
pub mod maps;
pub mod qpoly;
pub mod repfq;
pub mod sparse;
pub mod verify;

pub use error::{Error, Result};
