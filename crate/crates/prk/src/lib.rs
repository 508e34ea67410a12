//! File formats, SVG export and the `prk` command line over `prk-core`.

pub mod cli;
pub mod format;
pub mod svg;
