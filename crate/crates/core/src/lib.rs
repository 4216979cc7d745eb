pub mod cg;
pub mod cli;
pub mod corrections;
pub mod error;
pub mod gt;
pub mod matrix;
pub mod oracle;
pub mod perm;
pub mod rep;
pub mod splitbasis;
pub mod surd;
pub mod tableaux;

pub use error::{Error, Result};
pub use matrix::CoeffMatrix;
pub use surd::{surd_sqrt, Rational, SurdSum};
