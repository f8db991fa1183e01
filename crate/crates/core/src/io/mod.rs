//! Serialization and statistics.

mod binary;
mod stats;
mod text;

use std::fs;
use std::path::Path;

pub use binary::{read_binary, write_binary, MAGIC};
pub use stats::{peak_rss_kib, Stats};
pub use text::{canonical_text, escape, read_text, read_text_nondet, write_text};

use crate::error::Result;
use crate::nondet::NondetTransducer;
use crate::transducer::Transducer;

/// Extension that selects the binary format on write.
pub const BINARY_EXTENSION: &str = "fstb";

fn is_binary(bytes: &[u8]) -> bool {
    bytes.starts_with(b"LEXFST")
}

/// Reads either format, telling them apart by the magic bytes.
pub fn read_file(path: impl AsRef<Path>) -> Result<Transducer> {
    let bytes = fs::read(path)?;
    if is_binary(&bytes) {
        read_binary(&bytes)
    } else {
        read_text(&String::from_utf8_lossy(&bytes))
    }
}

/// Reads a possibly nondeterministic machine. Binary files are always
/// sequential.
pub fn read_file_nondet(path: impl AsRef<Path>) -> Result<NondetTransducer> {
    let bytes = fs::read(path)?;
    if is_binary(&bytes) {
        Ok(NondetTransducer::from(&read_binary(&bytes)?))
    } else {
        read_text_nondet(&String::from_utf8_lossy(&bytes))
    }
}

/// Writes binary for `.fstb` paths and text otherwise.
pub fn write_file(path: impl AsRef<Path>, t: &Transducer) -> Result<()> {
    let path = path.as_ref();
    if path.extension().is_some_and(|e| e == BINARY_EXTENSION) {
        fs::write(path, write_binary(t))?;
    } else {
        fs::write(path, write_text(t))?;
    }
    Ok(())
}
