//! Square dyadic images and their horizontal sections.
//!
//! Column index `i` runs left to right and row index `j` runs bottom to top,
//! both in `0..2^n`. Storage is row-major, so pixel `(i, j)` lives at
//! `j * 2^n + i`. Reads outside the grid return zero.

use crate::error::{AdrtError, Result};

/// Largest supported level exponent. `4^16` pixels already exceeds any
/// realistic memory budget; the cap keeps shift arithmetic in range.
pub const MAX_LEVEL: u32 = 16;

/// A real-valued `2^n x 2^n` image with finite entries.
#[derive(Clone, Debug, PartialEq)]
pub struct Image {
    n: u32,
    values: Vec<f64>,
}

impl Image {
    /// Builds an image from row-major values (`j * 2^n + i`).
    pub fn from_values(n: u32, values: Vec<f64>) -> Result<Self> {
        if n > MAX_LEVEL {
            return Err(AdrtError::Dimension(format!(
                "level exponent {n} exceeds maximum {MAX_LEVEL}"
            )));
        }
        let expected = 1usize << (2 * n);
        if values.len() != expected {
            return Err(AdrtError::Dimension(format!(
                "expected {expected} values for a {side}x{side} image, got {}",
                values.len(),
                side = 1usize << n
            )));
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(AdrtError::NonFinite { index, value });
        }
        Ok(Image { n, values })
    }

    /// Infers `n` from the value count, which must be `4^n`.
    pub fn from_square(values: Vec<f64>) -> Result<Self> {
        let n = level_for_pixel_count(values.len()).ok_or_else(|| {
            AdrtError::Dimension(format!(
                "{} values do not form a 2^n x 2^n image",
                values.len()
            ))
        })?;
        Image::from_values(n, values)
    }

    pub fn zeros(n: u32) -> Result<Self> {
        Image::from_fn(n, |_, _| 0.0)
    }

    /// Builds an image by evaluating `f(i, j)` at every pixel.
    pub fn from_fn(n: u32, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        if n > MAX_LEVEL {
            return Err(AdrtError::Dimension(format!(
                "level exponent {n} exceeds maximum {MAX_LEVEL}"
            )));
        }
        let side = 1usize << n;
        let mut values = Vec::with_capacity(side * side);
        for j in 0..side {
            for i in 0..side {
                values.push(f(i, j));
            }
        }
        Image::from_values(n, values)
    }

    #[inline]
    pub fn level(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn side(&self) -> usize {
        1 << self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Pixel value with implicit zero extension outside the grid.
    #[inline]
    pub fn get(&self, i: i64, j: i64) -> f64 {
        let side = self.side() as i64;
        if (0..side).contains(&i) && (0..side).contains(&j) {
            self.values[(j * side + i) as usize]
        } else {
            0.0
        }
    }

    /// Row `j` as a contiguous slice (columns `0..2^n`).
    pub fn row(&self, j: usize) -> &[f64] {
        let side = self.side();
        &self.values[j * side..(j + 1) * side]
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Largest absolute entrywise difference; `None` when the levels differ.
    pub fn max_abs_diff(&self, other: &Image) -> Option<f64> {
        if self.n != other.n {
            return None;
        }
        Some(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max),
        )
    }

    /// Read-only view of the `l`-th strip of `2^m` consecutive rows.
    pub fn section(&self, m: u32, l: usize) -> Result<SectionView<'_>> {
        if m > self.n {
            return Err(AdrtError::Index(format!(
                "section level {m} exceeds image level {}",
                self.n
            )));
        }
        let count = 1usize << (self.n - m);
        if l >= count {
            return Err(AdrtError::Index(format!(
                "section index {l} out of range 0..{count} at level {m}"
            )));
        }
        Ok(SectionView { image: self, m, l })
    }
}

/// Returns `n` when `len == 4^n`.
pub fn level_for_pixel_count(len: usize) -> Option<u32> {
    if len == 0 || !len.is_power_of_two() {
        return None;
    }
    let bits = len.trailing_zeros();
    bits.is_multiple_of(2).then_some(bits / 2)
}

/// Returns `n` when `side == 2^n`.
pub fn level_for_side(side: usize) -> Option<u32> {
    side.is_power_of_two().then(|| side.trailing_zeros())
}

/// The `2^n x 2^m` strip of an image starting at row `l * 2^m`.
#[derive(Clone, Copy, Debug)]
pub struct SectionView<'a> {
    image: &'a Image,
    m: u32,
    l: usize,
}

impl SectionView<'_> {
    pub fn level(&self) -> u32 {
        self.m
    }

    pub fn index(&self) -> usize {
        self.l
    }

    pub fn width(&self) -> usize {
        self.image.side()
    }

    pub fn height(&self) -> usize {
        1 << self.m
    }

    /// Value at local coordinates; zero outside `0..2^n` x `0..2^m`.
    #[inline]
    pub fn get(&self, i: i64, j: i64) -> f64 {
        if j < 0 || j >= self.height() as i64 {
            return 0.0;
        }
        self.image.get(i, j + (self.l as i64) * (self.height() as i64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_by_two() -> Image {
        Image::from_values(1, vec![1.0, 2.0, 3.0, 4.0]).unwrap()
    }

    #[test]
    fn single_pixel() {
        let img = Image::from_values(0, vec![7.0]).unwrap();
        assert_eq!(img.get(0, 0), 7.0);
        assert_eq!(img.side(), 1);
    }

    #[test]
    fn row_major_layout() {
        let img = two_by_two();
        assert_eq!(img.get(0, 0), 1.0);
        assert_eq!(img.get(1, 0), 2.0);
        assert_eq!(img.get(0, 1), 3.0);
        assert_eq!(img.get(1, 1), 4.0);
    }

    #[test]
    fn wrong_length_is_dimension_error() {
        let err = Image::from_values(1, vec![1.0, 2.0, 3.0]).unwrap_err();
        assert!(matches!(err, AdrtError::Dimension(_)));
        assert!(matches!(
            Image::from_square(vec![0.0; 8]),
            Err(AdrtError::Dimension(_))
        ));
    }

    #[test]
    fn non_finite_rejected() {
        let err = Image::from_values(1, vec![1.0, f64::NAN, 0.0, 0.0]).unwrap_err();
        assert!(matches!(err, AdrtError::NonFinite { index: 1, .. }));
        let err = Image::from_values(1, vec![1.0, 0.0, f64::INFINITY, 0.0]).unwrap_err();
        assert!(matches!(err, AdrtError::NonFinite { index: 2, .. }));
    }

    #[test]
    fn zero_extension() {
        let img = two_by_two();
        assert_eq!(img.get(-1, 0), 0.0);
        assert_eq!(img.get(2, 1), 0.0);
        assert_eq!(img.get(0, -3), 0.0);
        assert_eq!(img.get(1, 2), 0.0);
    }

    #[test]
    fn section_row_view() {
        let img = two_by_two();
        let view = img.section(0, 1).unwrap();
        assert_eq!(view.get(0, 0), 3.0);
        assert_eq!(view.get(1, 0), 4.0);
        assert_eq!(view.get(0, 1), 0.0);
        assert_eq!(view.get(0, -1), 0.0);
    }

    #[test]
    fn section_at_full_level_is_whole_image() {
        let img = Image::from_fn(2, |i, j| (i * 10 + j) as f64).unwrap();
        let view = img.section(2, 0).unwrap();
        for j in 0..4 {
            for i in 0..4 {
                assert_eq!(view.get(i, j), img.get(i, j));
            }
        }
    }

    #[test]
    fn section_rows_two_and_three() {
        let img = Image::from_fn(2, |i, j| (i * 10 + j) as f64).unwrap();
        let view = img.section(1, 1).unwrap();
        for i in 0..4 {
            assert_eq!(view.get(i, 0), img.get(i, 2));
            assert_eq!(view.get(i, 1), img.get(i, 3));
        }
    }

    #[test]
    fn section_index_checked() {
        let img = two_by_two();
        assert!(matches!(img.section(0, 2), Err(AdrtError::Index(_))));
        assert!(matches!(img.section(2, 0), Err(AdrtError::Index(_))));
    }

    #[test]
    fn pixel_count_levels() {
        assert_eq!(level_for_pixel_count(1), Some(0));
        assert_eq!(level_for_pixel_count(4), Some(1));
        assert_eq!(level_for_pixel_count(64), Some(3));
        assert_eq!(level_for_pixel_count(8), None);
        assert_eq!(level_for_pixel_count(0), None);
        assert_eq!(level_for_side(5), None);
    }
}
