//! Mutation oracle, corpora, fixtures, file formats and the CLI.

pub mod cli;
pub mod corpus;
pub mod fixtures;
pub mod io;
pub mod oracle;
