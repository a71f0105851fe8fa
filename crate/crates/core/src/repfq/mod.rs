//! Representations of a valued quiver over a finite field.

pub mod catalog;
pub mod field;
pub mod matrix;
pub mod rep;
pub mod species;
pub mod subrep;

pub use catalog::{Census, Guards, IsoClass, RepCategory};
pub use rep::ConcreteRep;
