pub mod cocycle;
pub mod cones;
pub mod error;
pub mod exactnum;
pub mod exec;
pub mod lvalues;
pub mod ordered_field;
pub mod pairing;

pub use error::{Error, Result};
pub use exec::Exec;
