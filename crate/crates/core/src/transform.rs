//! Dense storage for a stack of section transforms at one level.
//!
//! At level `m` an `2^n x 2^n` image has `2^(n-m)` sections. Each section
//! stores one row per slope `s in 0..2^m` and one column per physical offset
//! `p = h + s in 0..2^n + 2^m - 1`. Intercepts `h` outside `-s..2^n` are not
//! part of the support and are kept at zero.

use crate::error::{AdrtError, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct SectionedTransform {
    n: u32,
    m: u32,
    data: Vec<f64>,
}

/// Row width of a section buffer at level `m` of an order-`n` image.
#[inline]
pub(crate) fn row_width(n: u32, m: u32) -> usize {
    (1usize << n) + (1usize << m) - 1
}

/// Number of stored values in one section buffer.
#[inline]
pub(crate) fn section_len(n: u32, m: u32) -> usize {
    (1usize << m) * row_width(n, m)
}

/// Number of support entries in one section, `sum_s (2^n + s)`.
pub fn support_len(n: u32, m: u32) -> u64 {
    let slopes = 1u64 << m;
    slopes * (1u64 << n) + slopes * (slopes - 1) / 2
}

impl SectionedTransform {
    pub fn zeros(n: u32, m: u32) -> Result<Self> {
        check_levels(n, m)?;
        Ok(SectionedTransform {
            n,
            m,
            data: vec![0.0; (1usize << (n - m)) * section_len(n, m)],
        })
    }

    /// Wraps a raw buffer laid out section-major, then slope, then offset.
    /// Padding is not inspected; see [`SectionedTransform::padding_violations`].
    pub fn from_raw(n: u32, m: u32, data: Vec<f64>) -> Result<Self> {
        check_levels(n, m)?;
        let expected = (1usize << (n - m)) * section_len(n, m);
        if data.len() != expected {
            return Err(AdrtError::Structural(format!(
                "transform buffer for n={n}, m={m} needs {expected} values, got {}",
                data.len()
            )));
        }
        Ok(SectionedTransform { n, m, data })
    }

    #[inline]
    pub fn image_level(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn level(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn section_count(&self) -> usize {
        1 << (self.n - self.m)
    }

    #[inline]
    pub fn slope_count(&self) -> usize {
        1 << self.m
    }

    #[inline]
    pub fn width(&self) -> usize {
        row_width(self.n, self.m)
    }

    pub fn as_raw(&self) -> &[f64] {
        &self.data
    }

    pub fn into_raw(self) -> Vec<f64> {
        self.data
    }

    pub(crate) fn raw_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    /// Buffer of section `l`, rows indexed by slope.
    pub fn section(&self, l: usize) -> &[f64] {
        let len = section_len(self.n, self.m);
        &self.data[l * len..(l + 1) * len]
    }

    /// Support row of slope `s` in section `l`: entries for `h = -s..2^n`.
    pub fn support_row(&self, l: usize, s: usize) -> &[f64] {
        let w = self.width();
        let start = l * section_len(self.n, self.m) + s * w;
        &self.data[start..start + (1 << self.n) + s]
    }

    /// Logical value `R(l, h, s)`; zero outside `h in -s..2^n` or for slopes
    /// and sections out of range.
    #[inline]
    pub fn get(&self, l: usize, h: i64, s: usize) -> f64 {
        if l >= self.section_count() || s >= self.slope_count() {
            return 0.0;
        }
        read_support(self.section(l), self.n, self.width(), h, s)
    }

    /// Writes `R(l, h, s)`; `h` must lie in the support.
    pub fn set(&mut self, l: usize, h: i64, s: usize, value: f64) -> Result<()> {
        let p = h + s as i64;
        if l >= self.section_count() || s >= self.slope_count() || p < 0 || p >= (1i64 << self.n) + s as i64 {
            return Err(AdrtError::Index(format!(
                "(l={l}, h={h}, s={s}) outside the support of level {} of n={}",
                self.m, self.n
            )));
        }
        let idx = l * section_len(self.n, self.m) + s * self.width() + p as usize;
        self.data[idx] = value;
        Ok(())
    }

    /// Positions `(l, s, p)` of padding entries that are not zero.
    pub fn padding_violations(&self) -> Vec<(usize, usize, usize)> {
        let w = self.width();
        let base = 1usize << self.n;
        let mut out = Vec::new();
        for l in 0..self.section_count() {
            let sec = self.section(l);
            for s in 0..self.slope_count() {
                for p in base + s..w {
                    if sec[s * w + p] != 0.0 {
                        out.push((l, s, p));
                    }
                }
            }
        }
        out
    }

    /// Fails with a structural error if any padding entry is nonzero.
    pub fn validate_padding(&self) -> Result<()> {
        match self.padding_violations().first() {
            None => Ok(()),
            Some(&(l, s, p)) => Err(AdrtError::Structural(format!(
                "nonzero padding at section {l}, slope {s}, offset {p} (value {})",
                self.section(l)[s * self.width() + p]
            ))),
        }
    }

    /// Zeroes every padding entry.
    pub fn clear_padding(&mut self) {
        let w = self.width();
        let base = 1usize << self.n;
        let slopes = self.slope_count();
        for (k, row) in self.data.chunks_mut(w).enumerate() {
            row[base + k % slopes..].fill(0.0);
        }
    }

    /// Sum over intercepts for one slope.
    pub fn slope_total(&self, l: usize, s: usize) -> f64 {
        self.support_row(l, s).iter().sum()
    }
}

/// Reads `R(h, s)` from one section buffer with zero outside the support.
#[inline]
pub(crate) fn read_support(section: &[f64], n: u32, width: usize, h: i64, s: usize) -> f64 {
    let p = h + s as i64;
    if p < 0 || p >= (1i64 << n) + s as i64 {
        0.0
    } else {
        section[s * width + p as usize]
    }
}

fn check_levels(n: u32, m: u32) -> Result<()> {
    if n > crate::image::MAX_LEVEL {
        return Err(AdrtError::Dimension(format!(
            "level exponent {n} exceeds maximum {}",
            crate::image::MAX_LEVEL
        )));
    }
    if m > n {
        return Err(AdrtError::Structural(format!(
            "transform level {m} exceeds image level {n}"
        )));
    }
    Ok(())
}
