//! Exact-arithmetic analysis of entanglement-assisted quantum error-correcting
//! codes `[[n,k,d;c]]_q`.
//!
//! * [`code`] and [`notation`]: parameters, invariants, rates, the bracket syntax.
//! * [`bounds`]: Singleton, Hamming, Griesmer and Plotkin style bounds with
//!   exact slacks.
//! * [`concat`]: concatenation with exact ebit accounting.
//! * [`error_model`]: logical-error polynomials and pseudothresholds.
//! * [`families`]: named families, EAHB scans and saturation audits.
//!
//! ```
//! use eaqecc::{concat, EaCode};
//!
//! let outer: EaCode = "[[3,1,3;2]]".parse().unwrap();
//! let inner: EaCode = "[[4,1,3;1]]".parse().unwrap();
//! let result = concat::concat(&outer, &inner, None).unwrap();
//! assert_eq!(result.code.to_string(), "[[12,1,≥9;5]]");
//! ```

pub mod bounds;
pub mod code;
pub mod concat;
pub mod error;
pub mod error_model;
pub mod exact;
pub mod families;
pub mod notation;

pub use code::{ClassicalCode, Degeneracy, Distance, DistanceKind, EaCode};
pub use error::{Error, Result};
pub use notation::{parse_code, ParsedCode};
