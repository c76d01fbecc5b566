pub mod applications;
pub mod error;
pub mod explorer;
pub mod linalg;
pub mod metrics;
pub mod optimize;
pub mod response;
pub mod states;
pub mod tolerance;

pub use error::{Error, Result};
