//! Exact Bannai–Ito, modified Bannai–Ito and non-symmetric Wilson polynomial
//! families, their difference-reflection operators, and checks of the identities
//! relating them.
//!
//! ```
//! use biwkit::polyfam::{bi_polynomials, ParameterSet};
//! use biwkit::operators::verify_bi_algebra;
//!
//! let p = ParameterSet::from_ratios([(1, 2), (1, 3), (0, 1), (2, 1)]);
//! let family = bi_polynomials(10, &p)?;
//! assert_eq!(family[10].degree(), Some(10));
//! assert!(verify_bi_algebra(&p, 20)?.pass);
//! # Ok::<(), biwkit::Error>(())
//! ```

pub mod cli;
pub mod error;
pub mod exact;
pub mod measure;
pub mod operators;
pub mod polyfam;
pub mod precision;
pub mod reptheory;

pub use error::{Error, Result};
