pub mod bounds;
pub mod error;
pub mod exact_linalg;
pub mod hvector;
pub mod inverse_system;
pub mod lefschetz;
pub mod perazzo;
pub mod poly;

pub use error::{Error, Result};
