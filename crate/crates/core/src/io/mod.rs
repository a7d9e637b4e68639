//! File format, barcodes and DOT export.

mod barcode;
mod dot;
mod format;

pub use barcode::{barcode, covering_count, BarcodeEntry};
pub use dot::emit_dot;
pub use format::{
    emit, emit_string, load, parse_file, parse_str, DiagramFile, EdgeEntry, FormatIssue, IoError, LoadOptions, Loaded,
    NodeEntry, ShapeTag,
};
