//! Command-line front end for `gctlab-core`, with on-disk caches of
//! character tables and plethysm expansions.
//!
//! * [`cache`]: checksummed cache files under `GCTLAB_CACHE_DIR`,
//! * [`output`]: the `gctlab/1` JSON record and its text rendering,
//! * [`suites`]: the checks behind `gctlab verify`,
//! * [`cli`]: argument parsing and dispatch.

pub mod cache;
pub mod cli;
pub mod output;
pub mod suites;
