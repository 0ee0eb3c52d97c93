//! Command-line front end for `fpforge-core`: file ingestion, the bundled
//! corpus, every computation as a subcommand, and the verification suite.

pub mod commands;
pub mod corpus_files;
pub mod inputs;
pub mod verify;
