//! Library surface of the `homcal` command-line tool: the structure-file
//! format and the catalog of built-in examples. The binary in `main.rs`
//! wires these to the `verify`, `derive`, and `catalog` subcommands; the
//! modules are exposed so integration tests can build and inspect
//! structure files programmatically.

pub mod catalog;
pub mod format;
