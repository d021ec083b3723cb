//! Reeb orbits and chords of contact ±1 surgeries on Legendrian links.
//!
//! A front diagram is realized as an exact rational polyline in the
//! Lagrangian projection. Everything downstream (orbit words, return maps,
//! indices, homology classes, intersection gradings) is computed from that
//! realization without floating point.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod rat;
pub mod poly;
pub mod diagram_core;
pub mod reeb_words;
pub mod dynamics;
pub mod indices;
pub mod homology;
pub mod quiver_grading;
pub mod chain_report;

mod error;

pub use error::{Error, Result};
pub use rat::Q;
