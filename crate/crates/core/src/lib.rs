//! Linear codes over prime fields with extremal weight spectra.
//!
//! The crate covers component-wise weight functions (Hamming, Lee,
//! Manhattan, or any custom symbol table), the weight spectra of codes
//! under them, explicit constructions of full weight spectrum (FWS) and
//! maximum weight spectrum (MWS) codes, closed-form bounds on the
//! relevant lengths, and an exhaustive search for the largest spectrum an
//! `[n,k]_q` code can have.
//!
//! ```
//! use wspec_core::{constructions, spectra, PrimeField, WeightFunction};
//!
//! let f5 = PrimeField::new(5)?;
//! let lee = WeightFunction::lee(f5);
//! let code = constructions::lee_mws(2, f5)?.expand()?;
//! let s = spectra::spectrum(&code, &lee)?;
//! assert_eq!(s.size(), 12);
//! assert!(s.is_mws(&lee)?);
//! # Ok::<(), wspec_core::Error>(())
//! ```

pub mod bounds;
pub mod constructions;
pub mod error;
pub mod field;
pub mod search;
pub mod spectra;
pub mod tables;
pub mod weights;

pub use bounds::{BoundReport, BoundValue, Quantity};
pub use constructions::{ColumnBlock, ColumnMultiset};
pub use error::{Error, Result};
pub use field::{FieldVector, GeneratorMatrix, PrimeField};
pub use search::{EnumerationOrder, SearchResult, SearchSpec};
pub use spectra::WeightSpectrum;
pub use weights::{WeightConstants, WeightFunction, WeightKind};
