//! Symbolic computation with countable ordinals and their homeomorphisms.
//!
//! * [`ordinal`]: Cantor-normal-form arithmetic below epsilon-zero and the
//!   point topology (rank, derived sets) of the ordinal space.
//! * [`homeo`]: finitely-piecewise homeomorphisms of initial segments of the
//!   ordinals, their group operations and exact fixed-point sets.
//! * [`dynamics`]: transitivity on rank levels, Roelcke decompositions,
//!   density and Baire witnesses.
//! * [`sieve`]: basic open sets of symmetric groups as constraint systems,
//!   Hall's condition and permutation completion.

pub mod dynamics;
pub mod error;
pub mod homeo;
pub mod ordinal;
pub mod sieve;
pub mod testkit;

pub use error::{Error, Result};
pub use homeo::{parse_homeo, ClopenInterval, OrdinalSet, Piece, PwHomeo};
pub use ordinal::{parse_ordinal, Notation, Ordinal, PointClass};
