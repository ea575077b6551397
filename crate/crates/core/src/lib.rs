pub mod bounds;
pub mod error;
pub mod harness;
pub mod io;
pub mod linalg;
pub mod radius;
pub mod search;

pub use error::{Error, Result};
