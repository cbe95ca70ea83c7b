//! Catalog files, builtin group/subgroup data, JSON output and the `whistle`
//! command-line tool on top of [`whistle_core`].

pub mod catalog;
pub mod cli;
pub mod spot;

pub use catalog::{builtin_pairs, load_catalog, parse_catalog, CatalogError};
pub use cli::{run_cli, RunConfig};
