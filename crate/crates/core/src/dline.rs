//! Digital lines as explicit pixel sets, and the brute-force transform that
//! sums an image along them.
//!
//! This path is the ground truth for the fast transform. It costs `O(2^m)`
//! per line and is only meant for small images.

use crate::error::{AdrtError, Result};
use crate::image::Image;
use crate::transform::SectionedTransform;

/// The digital line `D_m(h, s)`: one pixel per row `j in 0..2^m`, starting at
/// column `h` in row 0 and rising by `s` columns in total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitalLine {
    m: u32,
    h: i64,
    s: usize,
    /// Column of the pixel in row `j`, indexed by `j`.
    columns: Vec<i64>,
}

impl DigitalLine {
    pub fn level(&self) -> u32 {
        self.m
    }

    pub fn intercept(&self) -> i64 {
        self.h
    }

    pub fn slope(&self) -> usize {
        self.s
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Column index per row.
    pub fn columns(&self) -> &[i64] {
        &self.columns
    }

    /// Pixels `(i, j)` ordered by row.
    pub fn pixels(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.columns.iter().enumerate().map(|(j, &i)| (i, j as i64))
    }
}

/// Builds `D_m(h, s)` for `s in 0..2^m`.
///
/// With `s = 2t + r` (`r` in {0, 1}) the line is the level `m-1` line
/// `D_{m-1}(h, t)` on the lower half, followed by `D_{m-1}(h + t + r, t)`
/// shifted up by `2^(m-1)` rows.
pub fn digital_line(m: u32, h: i64, s: usize) -> Result<DigitalLine> {
    if m > 62 || s >= 1usize << m {
        return Err(AdrtError::Index(format!(
            "slope {s} outside 0..2^{m} for a level-{m} digital line"
        )));
    }
    let mut columns = Vec::with_capacity(1 << m);
    build(m, h, s, &mut columns);
    Ok(DigitalLine { m, h, s, columns })
}

fn build(m: u32, h: i64, s: usize, out: &mut Vec<i64>) {
    if m == 0 {
        out.push(h);
        return;
    }
    let t = s / 2;
    let r = (s % 2) as i64;
    build(m - 1, h, t, out);
    build(m - 1, h + t as i64 + r, t, out);
}

/// Sums section `l` at level `m` along `D_m(h, s)`.
pub fn adrt_direct(img: &Image, m: u32, l: usize, h: i64, s: usize) -> Result<f64> {
    let view = img.section(m, l)?;
    let line = digital_line(m, h, s)?;
    Ok(line.pixels().map(|(i, j)| view.get(i, j)).sum())
}

/// Level-`m` transform of every section, computed by direct summation.
pub fn adrt_direct_full(img: &Image, m: u32) -> Result<SectionedTransform> {
    let n = img.level();
    let mut out = SectionedTransform::zeros(n, m)?;
    let side = 1i64 << n;
    for l in 0..out.section_count() {
        let view = img.section(m, l)?;
        for s in 0..out.slope_count() {
            for h in -(s as i64)..side {
                let line = digital_line(m, h, s)?;
                let v = line.pixels().map(|(i, j)| view.get(i, j)).sum();
                out.set(l, h, s, v)?;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pixels(line: &DigitalLine) -> Vec<(i64, i64)> {
        line.pixels().collect()
    }

    #[test]
    fn base_case() {
        assert_eq!(pixels(&digital_line(0, 5, 0).unwrap()), vec![(5, 0)]);
    }

    #[test]
    fn diagonal_of_four() {
        assert_eq!(
            pixels(&digital_line(2, 0, 3).unwrap()),
            vec![(0, 0), (1, 1), (2, 2), (3, 3)]
        );
    }

    #[test]
    fn eight_row_line_from_one_rising_three() {
        let line = digital_line(3, 1, 3).unwrap();
        assert_eq!(line.len(), 8);
        for (j, (i, row)) in line.pixels().enumerate() {
            assert_eq!(row, j as i64);
            assert!((1..=4).contains(&i), "pixel {i} outside 1..=4");
        }
        assert_eq!(line.columns()[0], 1);
        assert_eq!(line.columns()[7], 4);
    }

    #[test]
    fn slope_out_of_range() {
        assert!(matches!(digital_line(2, 0, 4), Err(AdrtError::Index(_))));
        assert!(matches!(digital_line(0, 0, 1), Err(AdrtError::Index(_))));
    }

    #[test]
    fn direct_sums_on_two_by_two() {
        let img = Image::from_values(1, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(adrt_direct(&img, 1, 0, 0, 1).unwrap(), 5.0);
        assert_eq!(adrt_direct(&img, 1, 0, -1, 1).unwrap(), 3.0);
        let full = adrt_direct_full(&img, 1).unwrap();
        assert_eq!(full.support_row(0, 0), &[4.0, 6.0]);
        assert_eq!(full.support_row(0, 1), &[3.0, 5.0, 2.0]);
    }

    #[test]
    fn zero_image_sums_to_zero() {
        let img = Image::zeros(2).unwrap();
        assert_eq!(adrt_direct(&img, 2, 0, -1, 3).unwrap(), 0.0);
        assert!(adrt_direct_full(&img, 1).unwrap().as_raw().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn level_zero_reproduces_rows() {
        let img = Image::from_fn(2, |i, j| (1 + i + 4 * j) as f64).unwrap();
        let t = adrt_direct_full(&img, 0).unwrap();
        for l in 0..4 {
            for h in 0..4 {
                assert_eq!(t.get(l, h, 0), img.get(h, l as i64));
            }
        }
    }

    #[test]
    fn all_ones_conserves_mass() {
        let img = Image::from_fn(2, |_, _| 1.0).unwrap();
        let t = adrt_direct_full(&img, 2).unwrap();
        for s in 0..4 {
            assert_eq!(t.slope_total(0, s), 16.0);
        }
    }
}
