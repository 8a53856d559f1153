//! Exact arithmetic dynamics on projective space over ℚ.
//!
//! Points of ℙᴺ(ℚ) are kept as coprime integer vectors, maps as integer
//! homogeneous forms, and every height is split into an archimedean real part
//! and an exact integer finite part. The modules build on each other:
//!
//! - [`exactnum`]: valuations, coprime parts, factorization, logarithms of huge integers
//! - [`projective`]: points, forms, self-maps, subschemes, orbit iteration
//! - [`heights`]: local and global heights of subschemes, truncated counting functions
//! - [`orbits`]: orbit tables, arithmetic-degree estimates, height ratios, JSON-lines cache
//! - [`mult1`]: ramification and backward multiplicities on ℙ¹
//! - [`ppd`]: primitive prime divisors along orbits

pub mod error;
pub mod exactnum;
pub mod heights;
pub mod mult1;
pub mod orbits;
pub mod ppd;
pub mod projective;

pub use error::{Error, ErrorKind, Result};
pub use exactnum::{Budget, Factorization, LogReal};
pub use heights::{GlobalHeight, Place, TargetHeight};
pub use projective::{Form, ProjPoint, SelfMap, Subscheme};
