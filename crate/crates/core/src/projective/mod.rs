//! Points, forms and self-maps of ℙᴺ over ℚ.

mod form;
mod map;
mod parse;
mod point;
mod resultant;

pub use form::Form;
pub use map::{SelfMap, Subscheme};
pub use point::ProjPoint;
pub use resultant::{bareiss_determinant, sylvester_matrix, sylvester_resultant};
