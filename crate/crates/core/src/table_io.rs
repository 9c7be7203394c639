//! On-disk format for stratification tables.
//!
//! Layout (all integers little-endian):
//!
//! ```text
//! offset  size      field
//! 0       4         magic "SRNK"
//! 4       1         format version (1)
//! 5       1         p
//! 6       1         n
//! 7       1         k
//! 8       2         free entry count D (u16)
//! 10      1         max rank reached
//! 11      1         truncated flag (0 or 1)
//! 12      p^D       rank byte per code, code-ascending; 255 = sentinel
//! 12+p^D  8         checksum (u64): wrapping sum of all rank bytes
//! ```
//!
//! The checksum is verified on load, so a flipped rank byte is rejected
//! rather than silently reclassified.

use crate::error::{Error, Result};
use crate::stratify::RankTable;
use crate::tensor::Shape;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

const MAGIC: [u8; 4] = *b"SRNK";
const VERSION: u8 = 1;

pub fn write_table(table: &RankTable, path: &Path) -> Result<()> {
    let shape = table.shape();
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(&MAGIC)?;
    w.write_all(&[VERSION, shape.p(), shape.n(), shape.k()])?;
    w.write_all(&shape.free_count().to_le_bytes())?;
    w.write_all(&[table.max_rank(), u8::from(table.truncated())])?;
    w.write_all(table.ranks())?;
    let checksum: u64 = table
        .ranks()
        .iter()
        .fold(0u64, |acc, &b| acc.wrapping_add(u64::from(b)));
    w.write_all(&checksum.to_le_bytes())?;
    w.flush()?;
    Ok(())
}

pub fn load_table(path: &Path) -> Result<RankTable> {
    let mut r = BufReader::new(File::open(path)?);
    let mut header = [0u8; 12];
    r.read_exact(&mut header)
        .map_err(|_| Error::FileFormat("file shorter than header".into()))?;
    if header[..4] != MAGIC {
        return Err(Error::FileFormat("bad magic, not a rank table".into()));
    }
    if header[4] != VERSION {
        return Err(Error::FileFormat(format!(
            "unsupported format version {}",
            header[4]
        )));
    }
    let (p, n, k) = (header[5], header[6], header[7]);
    let d = u16::from_le_bytes([header[8], header[9]]);
    let max_rank = header[10];
    let truncated = match header[11] {
        0 => false,
        1 => true,
        other => {
            return Err(Error::FileFormat(format!(
                "truncated flag must be 0 or 1, got {other}"
            )))
        }
    };
    let shape = Shape::new(u64::from(n), u64::from(k), u64::from(p))?;
    if shape.free_count() != d {
        return Err(Error::FileFormat(format!(
            "free entry count {} does not match shape ({} expected)",
            d,
            shape.free_count()
        )));
    }
    let mut ranks = vec![0u8; shape.code_space() as usize];
    r.read_exact(&mut ranks)
        .map_err(|_| Error::FileFormat("rank section shorter than code space".into()))?;
    let mut tail = [0u8; 8];
    r.read_exact(&mut tail)
        .map_err(|_| Error::FileFormat("missing checksum".into()))?;
    let mut extra = [0u8; 1];
    if r.read(&mut extra)? != 0 {
        return Err(Error::FileFormat("trailing bytes after checksum".into()));
    }
    let stored = u64::from_le_bytes(tail);
    let computed: u64 = ranks
        .iter()
        .fold(0u64, |acc, &b| acc.wrapping_add(u64::from(b)));
    if stored != computed {
        return Err(Error::FileFormat(format!(
            "checksum mismatch: stored {stored}, computed {computed}"
        )));
    }
    RankTable::from_parts(shape, ranks, max_rank, truncated)
}
