pub mod cli;
pub mod error;
pub mod exposed;
pub mod geometry;
pub mod homothety;
pub mod io;
pub mod lp;
pub mod paraboloid;
pub mod polytope;
pub mod random;
pub mod verify;

pub use error::{Error, Result};
