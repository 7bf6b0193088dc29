//! Euler characteristics of non-crossing chord families of simple polygons.
//!
//! Everything is exact: coordinates live in `Q(sqrt 3)`, counts are big
//! integers, and no floating point enters a predicate. The crate covers
//! chord classification, the independence-complex Euler characteristic of a
//! crossing graph, convex-partition lattices, polygon class detection,
//! generalized Catalan numbers and a set of deterministic polygon
//! generators.
//!
//! ```
//! use chord_euler::generators::convex_ngon;
//! use chord_euler::chords::diagonals;
//! use chord_euler::nc_euler::chord_f_vector;
//!
//! let hex = convex_ngon(6).unwrap();
//! let f = chord_f_vector(&hex, &diagonals(&hex)).unwrap();
//! assert_eq!(f.to_string(), "[1, 9, 21, 14]");
//! ```

mod error;
pub(crate) mod mask;

pub mod catalan;
pub mod chords;
pub mod classes;
pub mod exact_scalar;
pub mod generators;
pub mod geometry;
pub mod nc_euler;
pub mod partition;

pub use error::Error;

/// The guide chapters, compiled as doctests.
#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    pub mod intro {}
    #[doc = include_str!("../../../book/src/geometry.md")]
    pub mod geometry {}
    #[doc = include_str!("../../../book/src/chords.md")]
    pub mod chords {}
    #[doc = include_str!("../../../book/src/euler.md")]
    pub mod euler {}
    #[doc = include_str!("../../../book/src/partitions.md")]
    pub mod partitions {}
    #[doc = include_str!("../../../book/src/classes.md")]
    pub mod classes {}
    #[doc = include_str!("../../../book/src/catalan.md")]
    pub mod catalan {}
    #[doc = include_str!("../../../book/src/zigzag.md")]
    pub mod zigzag {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
