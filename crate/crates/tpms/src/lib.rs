pub mod builder;
pub mod cli;
pub mod error;
pub mod families;
pub mod numerics;
pub mod period;
pub mod verify;

pub use error::{Error, Result};
