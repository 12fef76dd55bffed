//! CLI and HTTP service over an argnet network stored in a data directory.

pub mod cli;
pub mod error;
pub mod http;
pub mod ops;
pub mod server;
pub mod store;

pub use error::{Family, ServiceError};
pub use server::{serve, ServiceConfig};
pub use store::Store;
