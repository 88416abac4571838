//! Exact distance statistics between points and hyperplanes over finite fields.
//!
//! For `E ⊂ F_q^d` and a set `F` of non-degenerate hyperplanes, this crate
//! computes the point-plane distance histogram, the number of distinct
//! distances, and every quantity in the counting argument that bounds that
//! number from below: Fourier energies, the second moment, and the final
//! rational bound. Everything is exact; character sums live in Z[ζ_p].
//!
//! ```
//! use fqdist::constructions::full_configuration;
//! use fqdist::distance::verify_theorem;
//! use fqdist::field::FieldCtx;
//! use fqdist::geometry::Space;
//!
//! let f5 = FieldCtx::prime(5)?;
//! let space = Space::new(&f5, 2)?;
//! let (points, planes) = full_configuration(&space);
//! let report = verify_theorem(&space, &points, &planes)?;
//! assert!(report.pass);
//! assert_eq!(report.distinct_nonzero, 4);
//! # Ok::<(), fqdist::Error>(())
//! ```
//!
//! The guide in `book/` walks through each module with runnable examples.

pub mod constructions;
pub mod distance;
mod error;
pub mod field;
pub mod geometry;
pub mod io;
pub mod spectral;
pub mod verdict;

pub use error::{Error, Result};

// The book's code listings run as doctests.
#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/directions.md")]
    mod directions {}
    #[doc = include_str!("../../../book/src/distance.md")]
    mod distance {}
    #[doc = include_str!("../../../book/src/motions.md")]
    mod motions {}
    #[doc = include_str!("../../../book/src/fourier.md")]
    mod fourier {}
    #[doc = include_str!("../../../book/src/counting.md")]
    mod counting {}
    #[doc = include_str!("../../../book/src/sharpness.md")]
    mod sharpness {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
