pub mod correlation;
pub mod error;
pub mod export;
pub mod opa;
pub mod oracle;
pub mod verify;
pub mod wigner;

pub use error::{QiopaError, Result};
pub use opa::*;
