//! Command-line tools, JSON formats and run manifests built on `terracini-core`.

pub mod cli;
pub mod io;
pub mod manifest;
