//! File format and instance generators behind the `pbq` binary.

pub mod format;
pub mod star;
