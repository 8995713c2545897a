//! Binary transform files.
//!
//! ```text
//! offset  size  field
//! 0       4     magic "ADRT"
//! 4       1     version (1)
//! 5       1     n
//! 6       1     m
//! 7       1     quadrant (0..=3, or 255 for no symmetry)
//! 8       4     reserved, zero
//! 12      ...   little-endian f64, section-major, then slope, then offset p
//! ```
//!
//! Each section carries `2^m * (2^n + 2^m - 1)` values including padding, and
//! negative intercepts are stored at offset `p = h + s`.

use std::fs;
use std::path::Path;

use crate::error::{AdrtError, Result};
use crate::quadrant::Quadrant;
use crate::transform::SectionedTransform;

pub const TRANSFORM_MAGIC: &[u8; 4] = b"ADRT";
pub const TRANSFORM_VERSION: u8 = 1;
pub const TRANSFORM_HEADER_LEN: usize = 12;
/// Quadrant byte for a transform computed without any symmetry tag.
pub const RAW_QUADRANT: u8 = 255;

/// Decoded contents of a transform file.
#[derive(Clone, Debug, PartialEq)]
pub struct TransformFile {
    pub transform: SectionedTransform,
    /// `None` when the file was tagged "raw/no symmetry".
    pub quadrant: Option<Quadrant>,
    /// Nonzero padding entries found while decoding in lenient mode.
    pub padding_violations: usize,
}

pub fn encode_transform(t: &SectionedTransform, quadrant: Option<Quadrant>) -> Vec<u8> {
    let mut out = Vec::with_capacity(TRANSFORM_HEADER_LEN + t.as_raw().len() * 8);
    out.extend_from_slice(TRANSFORM_MAGIC);
    out.extend_from_slice(&[
        TRANSFORM_VERSION,
        t.image_level() as u8,
        t.level() as u8,
        quadrant.map_or(RAW_QUADRANT, Quadrant::id),
        0,
        0,
        0,
        0,
    ]);
    for v in t.as_raw() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

/// Decodes a transform file image. With `strict`, nonzero padding is an
/// error; otherwise it is reported through
/// [`TransformFile::padding_violations`].
pub fn decode_transform(path: &Path, bytes: &[u8], strict: bool) -> Result<TransformFile> {
    if bytes.len() < TRANSFORM_HEADER_LEN {
        return Err(AdrtError::format(path, Some(bytes.len() as u64), "truncated header"));
    }
    if &bytes[..4] != TRANSFORM_MAGIC {
        return Err(AdrtError::format(path, Some(0), "bad magic, expected \"ADRT\""));
    }
    if bytes[4] != TRANSFORM_VERSION {
        return Err(AdrtError::UnsupportedVersion {
            what: "transform",
            version: bytes[4],
        });
    }
    let (n, m, q) = (bytes[5] as u32, bytes[6] as u32, bytes[7]);
    if n > crate::image::MAX_LEVEL || m > n {
        return Err(AdrtError::format(
            path,
            Some(5),
            format!("invalid levels n={n}, m={m}"),
        ));
    }
    let quadrant = match q {
        RAW_QUADRANT => None,
        id => Some(Quadrant::from_id(id).map_err(|_| {
            AdrtError::format(path, Some(7), format!("invalid quadrant byte {id}"))
        })?),
    };
    if bytes[8..12] != [0; 4] {
        return Err(AdrtError::format(path, Some(8), "reserved bytes must be zero"));
    }
    let sections = 1usize << (n - m);
    let per_section = (1usize << m) * ((1usize << n) + (1usize << m) - 1);
    let expected = sections * per_section * 8;
    let payload = &bytes[TRANSFORM_HEADER_LEN..];
    if payload.len() != expected {
        return Err(AdrtError::format(
            path,
            Some(bytes.len() as u64),
            format!(
                "payload length {} does not match {expected} bytes for n={n}, m={m}",
                payload.len()
            ),
        ));
    }
    let data: Vec<f64> = payload
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("8-byte chunk")))
        .collect();
    if let Some(k) = data.iter().position(|v| !v.is_finite()) {
        return Err(AdrtError::format(
            path,
            Some((TRANSFORM_HEADER_LEN + 8 * k) as u64),
            "non-finite value in payload",
        ));
    }
    let transform = SectionedTransform::from_raw(n, m, data)?;
    let violations = transform.padding_violations();
    if strict {
        if let Some(&(l, s, p)) = violations.first() {
            let k = l * per_section + s * transform.width() + p;
            return Err(AdrtError::format(
                path,
                Some((TRANSFORM_HEADER_LEN + 8 * k) as u64),
                format!("nonzero padding at section {l}, slope {s}, offset {p}"),
            ));
        }
    }
    Ok(TransformFile {
        transform,
        quadrant,
        padding_violations: violations.len(),
    })
}

pub fn write_transform(path: &Path, t: &SectionedTransform, quadrant: Option<Quadrant>) -> Result<()> {
    fs::write(path, encode_transform(t, quadrant)).map_err(|e| AdrtError::io(path, e))
}

pub fn read_transform(path: &Path, strict: bool) -> Result<TransformFile> {
    let bytes = fs::read(path).map_err(|e| AdrtError::io(path, e))?;
    decode_transform(path, &bytes, strict)
}
