//! Exact computational toolkit for finite abelian groups: group-ring
//! arithmetic over `Z[G]`, character sums valued in `Z[zeta_n]`, and verifiers
//! for difference sets, relative difference sets, partial difference sets,
//! spreads, hyperplane systems, LP-packings, and bent Boolean functions.
//!
//! Everything is integer-exact: verdicts never depend on floating point.
//! The hot kernels (character profiles, subset search, dense convolution)
//! are data-parallel via rayon under the default `parallel` feature and run
//! sequentially without it, with bit-identical results either way.
//!
//! ```
//! use charsum::designs::verify_difference_set;
//! use charsum::text::{parse_element_set, parse_group};
//!
//! let g = parse_group("Z15")?;
//! let d = parse_element_set(&g, "{g^1,g^2,g^3,g^5,g^6,g^9,g^11}")?;
//! let report = verify_difference_set(&g, &d, None)?;
//! assert!(report.verdict && report.ring_check);
//! # Ok::<(), charsum::Error>(())
//! ```

// modular arithmetic reads better as `x % n == 0` throughout
#![allow(clippy::manual_is_multiple_of)]
#![allow(clippy::manual_range_contains)]

pub mod bent;
pub mod characters;
pub mod cyclotomic;
pub mod designs;
pub mod error;
mod exec;
pub mod group;
pub mod report;
pub mod ring;
pub mod text;

pub use error::{Error, Result};
pub use group::{Element, Group, QuotientGroup, Subgroup};
