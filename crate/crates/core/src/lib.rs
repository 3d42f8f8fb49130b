//! Decision procedures for normality of finite approach spaces.
//!
//! Every finite approach space is a finite extended quasi-pseudometric
//! space, so the library works with a matrix `q` and computes everything
//! exactly over the rationals: separation degrees, Urysohn contractions and
//! contractive scales, Katětov–Tong interpolation, Tietze extension, and a
//! normality decision procedure that returns a checkable witness.
//!
//! ```
//! use approach::{catalog, separation};
//!
//! let e3 = catalog::get("exInorm", &[]).unwrap().space;
//! let verdict = separation::is_normal(&e3).unwrap();
//! assert!(!verdict.normal);
//! ```

pub mod catalog;
pub mod cli;
pub mod error;
pub mod extension;
pub mod functions;
pub mod interpolation;
pub mod io;
pub mod maps;
pub mod oracle;
pub mod pointset;
pub mod separation;
pub mod space;
pub mod value;

pub use error::{Error, Result};
pub use functions::{CodomainTag, Development, FnOverSpace};
pub use pointset::PointSet;
pub use space::{ClosureRelation, FiniteSpace, Matrix};
pub use value::{ExtValue, Rational, INF};
