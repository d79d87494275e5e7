//! Config schema and result-document types behind the `stackrec` binary.

pub mod config;
pub mod doc;
