//! Exact invariants of framed string links up to Y₂-equivalence and
//! clasp-pass equivalence.
//!
//! Diagrams are Morse event words ([`tangle`]). From them the crate computes
//! Milnor triple linking numbers through truncated Magnus expansions of
//! longitudes ([`freegroup`], [`milnor`]), low Conway coefficients by skein
//! recursion ([`conway`]), and assembles the classifying data ([`classify`]).
//! The Y-diagram group A₁(Pₙ) and its normal form live in [`algebra`].

pub mod algebra;
pub mod classify;
pub mod conway;
pub mod error;
pub mod freegroup;
pub mod milnor;
pub mod tangle;

pub use error::{Error, Result};
