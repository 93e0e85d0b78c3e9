//! Symmetric and antisymmetric generalizations of the exponential and cosine
//! functions in two variables, with their discrete transforms on shifted
//! triangular grids.
//!
//! The crate is organized bottom-up:
//!
//! * [`basis`] evaluates the four function families `E⁻`, `E⁺`, `cos⁻`, `cos⁺`.
//! * [`grids`] builds the sampling lattices `L`, `L⁻`, `L⁺` inside a square of side `T`.
//! * [`transforms`] holds the antisymmetric and symmetric discrete Fourier transforms.
//! * [`interpolation`] computes the unique (anti)symmetric trigonometric interpolants,
//!   including the even-`N` boundary conditions and the real trigonometric form.
//! * [`cosine`] implements the eight discrete cosine transforms AMDCT/SMDCT I–IV.
//! * [`analysis`] provides quadrature on the fundamental triangle, `L²` error tables,
//!   eigenvalue checks and boundary (Gibbs) profiles.
//!
//! Everything is a pure function of its inputs. Coefficient loops run on the
//! global rayon pool, but every floating-point reduction is performed in a fixed
//! order, so results do not depend on the number of threads.

#![forbid(unsafe_code)]

pub mod analysis;
pub mod basis;
pub mod cosine;
mod error;
pub mod grids;
pub mod interpolation;
pub mod transforms;

pub use basis::{BasisFamily, Freq, FrequencyPair, Point2, Symmetry};
pub use error::{Error, Result};
pub use grids::{GridKind, GridPoint, GridSpec};
pub use num_complex::Complex64;
