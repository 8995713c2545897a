//! The four image symmetries whose single-quadrant transforms together cover
//! every line orientation.

use std::fmt;
use std::str::FromStr;

use crate::error::{AdrtError, Result};
use crate::image::Image;

/// Symmetry applied to an image before the single-quadrant transform.
///
/// | id | map applied to `A`                       | `A'(i, j)`             |
/// |----|------------------------------------------|------------------------|
/// | 0  | identity                                 | `A(i, j)`              |
/// | 1  | transpose                                | `A(j, i)`              |
/// | 2  | reverse columns                          | `A(N-1-i, j)`          |
/// | 3  | transpose, then reverse columns          | `A(j, N-1-i)`          |
///
/// Quadrants 0 to 2 are involutions. The inverse of quadrant 3 reverses
/// columns first and then transposes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quadrant {
    Identity = 0,
    Transpose = 1,
    FlipColumns = 2,
    TransposeFlipColumns = 3,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [
        Quadrant::Identity,
        Quadrant::Transpose,
        Quadrant::FlipColumns,
        Quadrant::TransposeFlipColumns,
    ];

    pub fn id(self) -> u8 {
        self as u8
    }

    pub fn from_id(id: u8) -> Result<Self> {
        Quadrant::ALL
            .get(id as usize)
            .copied()
            .ok_or_else(|| AdrtError::Index(format!("quadrant id {id} not in 0..=3")))
    }

    /// Source coordinates `(i, j)` in `A` for destination pixel `(x, y)` of
    /// the symmetric image.
    fn source(self, x: usize, y: usize, last: usize) -> (usize, usize) {
        match self {
            Quadrant::Identity => (x, y),
            Quadrant::Transpose => (y, x),
            Quadrant::FlipColumns => (last - x, y),
            Quadrant::TransposeFlipColumns => (y, last - x),
        }
    }

    /// Source coordinates under the inverse map.
    fn inverse_source(self, x: usize, y: usize, last: usize) -> (usize, usize) {
        match self {
            Quadrant::TransposeFlipColumns => (last - y, x),
            q => q.source(x, y, last),
        }
    }

    pub fn apply(self, img: &Image) -> Image {
        remap(img, |x, y, last| self.source(x, y, last))
    }

    pub fn invert(self, img: &Image) -> Image {
        remap(img, |x, y, last| self.inverse_source(x, y, last))
    }
}

fn remap(img: &Image, source: impl Fn(usize, usize, usize) -> (usize, usize)) -> Image {
    let side = img.side();
    let last = side - 1;
    let src = img.values();
    let mut values = Vec::with_capacity(side * side);
    for y in 0..side {
        for x in 0..side {
            let (i, j) = source(x, y, last);
            values.push(src[j * side + i]);
        }
    }
    Image::from_values(img.level(), values).expect("permutation of a valid image is valid")
}

/// Applies the symmetry for quadrant `q`.
pub fn apply_quadrant_symmetry(img: &Image, q: Quadrant) -> Image {
    q.apply(img)
}

impl fmt::Display for Quadrant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id())
    }
}

impl FromStr for Quadrant {
    type Err = AdrtError;

    fn from_str(s: &str) -> Result<Self> {
        let id: u8 = s
            .trim()
            .parse()
            .map_err(|_| AdrtError::Index(format!("quadrant {s:?} is not an integer in 0..=3")))?;
        Quadrant::from_id(id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Image {
        Image::from_values(1, vec![1.0, 2.0, 3.0, 4.0]).unwrap()
    }

    #[test]
    fn identity_is_unchanged() {
        assert_eq!(Quadrant::Identity.apply(&a()), a());
    }

    #[test]
    fn transpose_two_by_two() {
        let t = Quadrant::Transpose.apply(&a());
        assert_eq!(t.get(0, 1), 2.0);
        assert_eq!(t.get(1, 0), 3.0);
        assert_eq!(t.get(0, 0), 1.0);
        assert_eq!(t.get(1, 1), 4.0);
    }

    #[test]
    fn flip_reverses_columns() {
        let f = Quadrant::FlipColumns.apply(&a());
        assert_eq!(f.values(), &[2.0, 1.0, 4.0, 3.0]);
    }

    #[test]
    fn transpose_then_flip_composes() {
        let img = Image::from_fn(2, |i, j| (i * 4 + j) as f64).unwrap();
        let composed = Quadrant::FlipColumns.apply(&Quadrant::Transpose.apply(&img));
        assert_eq!(Quadrant::TransposeFlipColumns.apply(&img), composed);
    }

    #[test]
    fn each_inverse_restores() {
        let img = Image::from_fn(3, |i, j| (i * 31 + j * 7) as f64).unwrap();
        for q in Quadrant::ALL {
            assert_eq!(q.invert(&q.apply(&img)), img, "quadrant {q}");
            assert_eq!(q.apply(&q.invert(&img)), img, "quadrant {q}");
        }
    }

    #[test]
    fn parse_ids() {
        assert_eq!("3".parse::<Quadrant>().unwrap(), Quadrant::TransposeFlipColumns);
        assert!("4".parse::<Quadrant>().is_err());
        assert!(Quadrant::from_id(7).is_err());
    }
}
