//! Command implementations and the local HTTP session service behind the `pushpush` binary.

pub mod commands;
pub mod gadget_source;
pub mod server;
pub mod session;

pub use commands::{CliError, FORMAT_HEADER};
