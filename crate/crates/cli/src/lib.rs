//! File formats and rendering behind the `mixlabel` binary.

pub mod format;
pub mod svg;
