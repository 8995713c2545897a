//! Image files: PGM (P2/P5), CSV and raw little-endian `f64`.
//!
//! PGM and CSV store rows top to bottom, so file row 0 is image row
//! `j = 2^n - 1`. Raw files keep the in-memory order, row `j = 0` first.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{AdrtError, Result};
use crate::image::{level_for_side, Image};

pub const RAW_IMAGE_MAGIC: &[u8; 4] = b"ADRI";
pub const RAW_IMAGE_VERSION: u8 = 1;
const RAW_HEADER_LEN: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImageFormat {
    /// Binary PGM (P5) on write; P2 and P5 are both accepted on read.
    Pgm,
    /// ASCII PGM (P2) on write.
    PgmAscii,
    Csv,
    Raw,
}

impl ImageFormat {
    /// Guesses the format from the file extension.
    pub fn from_path(path: &Path) -> Option<Self> {
        let ext = path.extension()?.to_str()?.to_ascii_lowercase();
        match ext.as_str() {
            "pgm" => Some(ImageFormat::Pgm),
            "csv" => Some(ImageFormat::Csv),
            "adri" | "raw" | "f64" | "bin" => Some(ImageFormat::Raw),
            _ => None,
        }
    }
}

impl FromStr for ImageFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "pgm" | "p5" => Ok(ImageFormat::Pgm),
            "pgm-ascii" | "p2" => Ok(ImageFormat::PgmAscii),
            "csv" => Ok(ImageFormat::Csv),
            "raw" | "adri" => Ok(ImageFormat::Raw),
            other => Err(format!("unknown image format {other:?}")),
        }
    }
}

impl fmt::Display for ImageFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ImageFormat::Pgm => "pgm",
            ImageFormat::PgmAscii => "pgm-ascii",
            ImageFormat::Csv => "csv",
            ImageFormat::Raw => "raw",
        })
    }
}

fn resolve(path: &Path, hint: Option<ImageFormat>) -> Result<ImageFormat> {
    hint.or_else(|| ImageFormat::from_path(path)).ok_or_else(|| {
        AdrtError::format(path, None, "cannot infer image format from extension")
    })
}

pub fn read_image(path: &Path, hint: Option<ImageFormat>) -> Result<Image> {
    let format = resolve(path, hint)?;
    let bytes = fs::read(path).map_err(|e| AdrtError::io(path, e))?;
    match format {
        ImageFormat::Pgm | ImageFormat::PgmAscii => parse_pgm(path, &bytes),
        ImageFormat::Csv => parse_csv(path, &bytes),
        ImageFormat::Raw => parse_raw(path, &bytes),
    }
}

pub fn write_image(img: &Image, path: &Path, format: Option<ImageFormat>) -> Result<()> {
    let format = resolve(path, format)?;
    let bytes = match format {
        ImageFormat::Pgm => encode_pgm(path, img, true)?,
        ImageFormat::PgmAscii => encode_pgm(path, img, false)?,
        ImageFormat::Csv => encode_csv(path, img)?,
        ImageFormat::Raw => encode_raw(img),
    };
    fs::write(path, bytes).map_err(|e| AdrtError::io(path, e))
}

/// Converts top-down file rows into an image.
fn from_top_down(path: &Path, side: usize, rows: Vec<f64>) -> Result<Image> {
    let n = level_for_side(side).ok_or_else(|| {
        AdrtError::Dimension(format!(
            "{}: side {side} is not a power of two",
            path.display()
        ))
    })?;
    let mut values = Vec::with_capacity(side * side);
    for file_row in rows.chunks(side).rev() {
        values.extend_from_slice(file_row);
    }
    Image::from_values(n, values)
}

fn top_down(img: &Image) -> impl Iterator<Item = &[f64]> {
    (0..img.side()).rev().map(move |j| img.row(j))
}

struct PgmCursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl PgmCursor<'_> {
    fn skip_space_and_comments(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                b if b.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn token(&mut self) -> Option<(usize, &str)> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.pos < self.bytes.len() && !self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        (self.pos > start).then(|| (start, std::str::from_utf8(&self.bytes[start..self.pos]).unwrap_or("")))
    }

    fn number(&mut self, path: &Path, what: &str) -> Result<u32> {
        let eof = self.bytes.len() as u64;
        let (at, tok) = self
            .token()
            .ok_or_else(|| AdrtError::format(path, Some(eof), format!("missing {what}")))?;
        tok.parse()
            .map_err(|_| AdrtError::format(path, Some(at as u64), format!("invalid {what} {tok:?}")))
    }
}

fn parse_pgm(path: &Path, bytes: &[u8]) -> Result<Image> {
    let mut cur = PgmCursor { bytes, pos: 0 };
    let binary = match cur.token() {
        Some((_, "P5")) => true,
        Some((_, "P2")) => false,
        _ => return Err(AdrtError::format(path, Some(0), "not a P2/P5 PGM file")),
    };
    let width = cur.number(path, "width")? as usize;
    let height = cur.number(path, "height")? as usize;
    let maxval = cur.number(path, "maxval")?;
    if maxval == 0 || maxval > 65535 {
        return Err(AdrtError::format(path, None, format!("maxval {maxval} outside 1..=65535")));
    }
    if width != height {
        return Err(AdrtError::Dimension(format!(
            "{}: image is {width}x{height}, expected a square",
            path.display()
        )));
    }
    level_for_side(width).ok_or_else(|| {
        AdrtError::Dimension(format!(
            "{}: side {width} is not a power of two",
            path.display()
        ))
    })?;
    let count = width * height;
    let mut rows = Vec::with_capacity(count);
    if binary {
        // exactly one whitespace byte separates the header from the raster
        let start = cur.pos + 1;
        let sample = if maxval < 256 { 1 } else { 2 };
        let needed = count * sample;
        let raster = bytes.get(start..).unwrap_or(&[]);
        if raster.len() < needed {
            return Err(AdrtError::format(
                path,
                Some(bytes.len() as u64),
                format!("raster has {} bytes, expected {needed}", raster.len()),
            ));
        }
        for (k, chunk) in raster[..needed].chunks(sample).enumerate() {
            let v = if sample == 1 {
                chunk[0] as u32
            } else {
                u16::from_be_bytes([chunk[0], chunk[1]]) as u32
            };
            if v > maxval {
                return Err(AdrtError::format(
                    path,
                    Some((start + k * sample) as u64),
                    format!("sample {v} exceeds maxval {maxval}"),
                ));
            }
            rows.push(v as f64);
        }
    } else {
        for _ in 0..count {
            let at = cur.pos;
            let v = cur.number(path, "sample")?;
            if v > maxval {
                return Err(AdrtError::format(
                    path,
                    Some(at as u64),
                    format!("sample {v} exceeds maxval {maxval}"),
                ));
            }
            rows.push(v as f64);
        }
    }
    from_top_down(path, width, rows)
}

fn encode_pgm(path: &Path, img: &Image, binary: bool) -> Result<Vec<u8>> {
    if let Some(&bad) = img
        .values()
        .iter()
        .find(|v| v.fract() != 0.0 || **v < 0.0 || **v > 65535.0)
    {
        return Err(AdrtError::format(
            path,
            None,
            format!("value {bad} cannot be stored in PGM (integers in 0..=65535 only)"),
        ));
    }
    let max = img.values().iter().fold(0.0f64, |a, &b| a.max(b));
    let maxval: u32 = if max <= 255.0 { 255 } else { 65535 };
    let side = img.side();
    let mut out = format!("{}\n{side} {side}\n{maxval}\n", if binary { "P5" } else { "P2" }).into_bytes();
    for row in top_down(img) {
        if binary {
            for &v in row {
                if maxval == 255 {
                    out.push(v as u8);
                } else {
                    out.extend_from_slice(&(v as u16).to_be_bytes());
                }
            }
        } else {
            let line: Vec<String> = row.iter().map(|&v| (v as u32).to_string()).collect();
            out.extend_from_slice(line.join(" ").as_bytes());
            out.push(b'\n');
        }
    }
    Ok(out)
}

fn parse_csv(path: &Path, bytes: &[u8]) -> Result<Image> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(bytes);
    let mut rows = Vec::new();
    let mut side = None;
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| AdrtError::format(path, None, e.to_string()))?;
        let offset = record.position().map(|p| p.byte());
        if record.iter().all(str::is_empty) {
            continue;
        }
        let width = *side.get_or_insert(record.len());
        if record.len() != width {
            return Err(AdrtError::Dimension(format!(
                "{}: row {} has {} values, expected {width}",
                path.display(),
                line + 1,
                record.len()
            )));
        }
        for field in record.iter() {
            let v: f64 = field.parse().map_err(|_| {
                AdrtError::format(path, offset, format!("row {}: invalid number {field:?}", line + 1))
            })?;
            rows.push(v);
        }
    }
    let side = side.unwrap_or(0);
    if side == 0 || rows.len() != side * side {
        return Err(AdrtError::Dimension(format!(
            "{}: {} rows of {side} values do not form a square",
            path.display(),
            rows.len().checked_div(side).unwrap_or(0)
        )));
    }
    from_top_down(path, side, rows)
}

fn encode_csv(path: &Path, img: &Image) -> Result<Vec<u8>> {
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    for row in top_down(img) {
        writer
            .write_record(row.iter().map(|v| v.to_string()))
            .map_err(|e| AdrtError::format(path, None, e.to_string()))?;
    }
    writer
        .into_inner()
        .map_err(|e| AdrtError::format(path, None, e.to_string()))
}

fn parse_raw(path: &Path, bytes: &[u8]) -> Result<Image> {
    if bytes.len() < RAW_HEADER_LEN {
        return Err(AdrtError::format(path, Some(bytes.len() as u64), "truncated header"));
    }
    if &bytes[..4] != RAW_IMAGE_MAGIC {
        return Err(AdrtError::format(path, Some(0), "bad magic, expected \"ADRI\""));
    }
    if bytes[4] != RAW_IMAGE_VERSION {
        return Err(AdrtError::UnsupportedVersion {
            what: "raw image",
            version: bytes[4],
        });
    }
    let n = bytes[5] as u32;
    if n > crate::image::MAX_LEVEL {
        return Err(AdrtError::Dimension(format!("{}: level {n} too large", path.display())));
    }
    let expected = (1usize << (2 * n)) * 8;
    let payload = &bytes[RAW_HEADER_LEN..];
    if payload.len() != expected {
        return Err(AdrtError::format(
            path,
            Some(bytes.len() as u64),
            format!("payload length {} does not match {expected} bytes for n={n}", payload.len()),
        ));
    }
    let values = payload
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("8-byte chunk")))
        .collect();
    Image::from_values(n, values)
}

fn encode_raw(img: &Image) -> Vec<u8> {
    let mut out = Vec::with_capacity(RAW_HEADER_LEN + img.values().len() * 8);
    out.extend_from_slice(RAW_IMAGE_MAGIC);
    out.extend_from_slice(&[RAW_IMAGE_VERSION, img.level() as u8, 0, 0]);
    for v in img.values() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}
