//! Tournaments of order d.
//!
//! A d-tournament orients every d-subset of an n-set. A (d+1)-subset is
//! *directed* when its d-faces are pairwise compatible. This crate builds the
//! standard constructions, counts directed simplices exactly or by sampling,
//! evaluates the extremal bounds, searches small cases exhaustively and
//! checks the correspondence with simplices containing a point.

pub mod binom;
pub mod constructions;
pub mod counting;
mod error;
pub mod exec;
pub mod orientation;
pub mod report;
pub mod rng;
pub mod search;
pub mod tournament;

pub use error::{Error, Result};
pub use exec::Exec;
pub use orientation::{KSubset, OrientedSet, Sign, SimplexFaceSigns};
pub use rng::Seed;
pub use tournament::{Tournament, TournamentBuilder};
