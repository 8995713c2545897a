//! Fast single-quadrant transform by merging pairs of sections level by level.

use rayon::prelude::*;

use crate::error::{AdrtError, Result};
use crate::image::Image;
use crate::ledger::CostLedger;
use crate::quadrant::Quadrant;
use crate::transform::{read_support, section_len, support_len, SectionedTransform};

/// Level-0 transform: section `l` holds row `l` of the image at slope 0.
pub fn adrt_init(img: &Image) -> SectionedTransform {
    let n = img.level();
    // at level 0 each section is a single row of width 2^n with no padding
    SectionedTransform::from_raw(n, 0, img.values().to_vec()).expect("level-0 layout matches image")
}

/// Merges sections `2l` and `2l + 1` of a level `m-1` stack into section `l`
/// at level `m`:
///
/// ```text
/// R_m(l, h, 2s)     = R_{m-1}(2l, h, s) + R_{m-1}(2l+1, h+s,   s)
/// R_m(l, h, 2s + 1) = R_{m-1}(2l, h, s) + R_{m-1}(2l+1, h+s+1, s)
/// ```
///
/// Every support entry costs one addition, recorded under level `m`.
pub fn merge_level(lower: &SectionedTransform, ledger: &mut CostLedger) -> Result<SectionedTransform> {
    let n = lower.image_level();
    let m = lower.level() + 1;
    if m > n {
        return Err(AdrtError::Structural(format!(
            "cannot merge level {} of an order-{n} image: already at the top",
            lower.level()
        )));
    }
    let mut upper = SectionedTransform::zeros(n, m)?;
    let width = upper.width();
    let lower_width = lower.width();
    let lower_len = section_len(n, m - 1);
    let base = 1usize << n;

    upper
        .raw_mut()
        .par_chunks_mut(section_len(n, m))
        .enumerate()
        .for_each(|(l, out)| {
            let bottom = &lower.as_raw()[2 * l * lower_len..(2 * l + 1) * lower_len];
            let top = &lower.as_raw()[(2 * l + 1) * lower_len..(2 * l + 2) * lower_len];
            out.par_chunks_mut(width).enumerate().for_each(|(s, row)| {
                let t = s / 2;
                let shift = (t + s % 2) as i64;
                for (p, slot) in row[..base + s].iter_mut().enumerate() {
                    let h = p as i64 - s as i64;
                    *slot = read_support(bottom, n, lower_width, h, t)
                        + read_support(top, n, lower_width, h + shift, t);
                }
            });
        });

    ledger.add(m, upper.section_count() as u64 * support_len(n, m), 0);
    Ok(upper)
}

/// Single-quadrant transform at level `n` together with its addition count.
pub fn adrt_single_quadrant_with_ledger(img: &Image) -> (SectionedTransform, CostLedger) {
    let mut ledger = CostLedger::new();
    let mut current = adrt_init(img);
    for _ in 0..img.level() {
        current = merge_level(&current, &mut ledger).expect("levels below n always merge");
    }
    (current, ledger)
}

/// Single-quadrant transform: one section with slopes `0..2^n` and
/// intercepts `-s..2^n` per slope.
pub fn adrt_single_quadrant(img: &Image) -> SectionedTransform {
    adrt_single_quadrant_with_ledger(img).0
}

/// Single-quadrant transforms tagged by [`Quadrant`]. Produced complete by
/// [`adrt_full`]; may be assembled partially, e.g. from files.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FullTransform {
    quadrants: [Option<SectionedTransform>; 4],
}

impl FullTransform {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, q: Quadrant, t: SectionedTransform) -> Option<SectionedTransform> {
        self.quadrants[q.id() as usize].replace(t)
    }

    pub fn quadrant(&self, q: Quadrant) -> Option<&SectionedTransform> {
        self.quadrants[q.id() as usize].as_ref()
    }

    /// Present quadrants in id order.
    pub fn iter(&self) -> impl Iterator<Item = (Quadrant, &SectionedTransform)> {
        Quadrant::ALL
            .into_iter()
            .zip(self.quadrants.iter())
            .filter_map(|(q, t)| t.as_ref().map(|t| (q, t)))
    }
}

/// Transform of each symmetric copy of the image.
pub fn adrt_full(img: &Image) -> FullTransform {
    let quadrants = Quadrant::ALL.map(|q| Some(adrt_single_quadrant(&q.apply(img))));
    FullTransform { quadrants }
}
