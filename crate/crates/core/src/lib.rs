pub mod binomial;
pub mod driver;
pub mod error;
pub mod fan;
pub mod hypersurface;
pub mod json;
pub mod lattice;
pub mod lattice_ideal;
pub mod marked;
pub mod oracle;
pub mod parse;
pub mod par;
pub mod samuel;
pub mod simplex;

pub use error::{Error, Result};
