//! Exact real-algebraic arithmetic for ruler-and-fold constructions.
//!
//! The crate models fields reachable from the rationals by repeatedly
//! adjoining square roots and cosine trisections, keeps every number exact,
//! tracks all real embeddings of each tower, and builds the classical
//! constructions (regular polygons, angle trisection, cubic solving,
//! Alhazen's circular billiard) on top of that arithmetic.

pub mod alhazen;
pub mod axioms;
pub mod classify;
pub mod constructions;
pub mod cubic;
pub mod error;
pub mod geometry;
pub mod interval;
pub mod poly;
pub mod rational;
pub mod tower;

mod adjoin;
mod embed;
mod zfactor;

pub use error::{Error, Result};
pub use tower::{Algebraic, NumberDescriptor, StepDescriptor, StepKind, Tower};
