//! Exact inversion of the single-quadrant transform.
//!
//! Splitting one level-`m` section back into its two level-`m-1` halves only
//! needs first differences in the intercept. With `L` and `U` the lower and
//! upper halves and `R` the merged section:
//!
//! ```text
//! L(h+1, s) - L(h, s) = R(h+1, 2s)     - R(h, 2s+1)
//! U(h+1, s) - U(h, s) = R(h-s, 2s+1)   - R(h-s, 2s)
//! ```
//!
//! Both halves vanish for `h < -s`, so a running sum of the differences from
//! `h = -s-1` upward restores them exactly. Repeating down to level 0 yields
//! the image rows.

use rayon::prelude::*;

use crate::error::{AdrtError, Result};
use crate::forward::FullTransform;
use crate::image::Image;
use crate::ledger::CostLedger;
use crate::quadrant::Quadrant;
use crate::transform::{read_support, row_width, section_len, support_len, SectionedTransform};

/// First differences of one target-level section.
///
/// Row `s` holds `D(h, s)` for `h in -s-1..2^n-1` at index `h + s + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeltaBuffer {
    n: u32,
    m: u32,
    values: Vec<f64>,
}

impl DeltaBuffer {
    fn zeros(n: u32, m: u32) -> Self {
        DeltaBuffer {
            n,
            m,
            values: vec![0.0; (1usize << m) * delta_width(n, m)],
        }
    }

    /// Level of the section these differences restore.
    pub fn target_level(&self) -> u32 {
        self.m
    }

    pub fn image_level(&self) -> u32 {
        self.n
    }

    /// `D(h, s)`; `None` outside `h in -s-1..2^n-1`.
    pub fn get(&self, h: i64, s: usize) -> Option<f64> {
        let k = h + s as i64 + 1;
        if s >= 1 << self.m || k < 0 || k >= (1i64 << self.n) + s as i64 {
            return None;
        }
        Some(self.values[s * delta_width(self.n, self.m) + k as usize])
    }

    /// The defined differences for slope `s`, lowest intercept first.
    pub fn row(&self, s: usize) -> &[f64] {
        let w = delta_width(self.n, self.m);
        &self.values[s * w..s * w + (1 << self.n) + s]
    }

    /// Number of defined entries, which is also the subtraction count.
    pub fn entry_count(&self) -> u64 {
        support_len(self.n, self.m)
    }
}

#[inline]
fn delta_width(n: u32, m: u32) -> usize {
    (1usize << n) + (1usize << m)
}

/// Differences for the lower (`2l`) and upper (`2l + 1`) halves of section
/// `l` of a level-`m` stack. Records one subtraction per entry under level
/// `m - 1`.
pub fn compute_deltas(
    upper: &SectionedTransform,
    l: usize,
    ledger: &mut CostLedger,
) -> Result<(DeltaBuffer, DeltaBuffer)> {
    let m = upper.level();
    if m == 0 {
        return Err(AdrtError::Precondition(
            "level-0 sections cannot be split further".into(),
        ));
    }
    if l >= upper.section_count() {
        return Err(AdrtError::Index(format!(
            "section {l} out of range 0..{}",
            upper.section_count()
        )));
    }
    let n = upper.image_level();
    let mut even = DeltaBuffer::zeros(n, m - 1);
    let mut odd = DeltaBuffer::zeros(n, m - 1);
    fill_deltas(upper.section(l), n, m, &mut even.values, &mut odd.values);
    ledger.add(m - 1, 0, even.entry_count() + odd.entry_count());
    Ok((even, odd))
}

fn fill_deltas(section: &[f64], n: u32, m: u32, even: &mut [f64], odd: &mut [f64]) {
    let w = row_width(n, m);
    let dw = delta_width(n, m - 1);
    let base = 1usize << n;
    even.par_chunks_mut(dw)
        .zip(odd.par_chunks_mut(dw))
        .enumerate()
        .for_each(|(s, (even_row, odd_row))| {
            let si = s as i64;
            let r = |h: i64, slope: usize| read_support(section, n, w, h, slope);
            for k in 0..base + s {
                let h = k as i64 - si - 1;
                even_row[k] = r(h + 1, 2 * s) - r(h, 2 * s + 1);
                odd_row[k] = r(h - si, 2 * s + 1) - r(h - si, 2 * s);
            }
        });
}

/// Restores one target-level section buffer from its differences by an
/// ascending running sum per slope. Records one addition per entry.
pub fn prefix_restore(delta: &DeltaBuffer, ledger: &mut CostLedger) -> Vec<f64> {
    let mut out = vec![0.0; section_len(delta.n, delta.m)];
    restore_into(&delta.values, delta.n, delta.m, &mut out);
    ledger.add(delta.m, delta.entry_count(), 0);
    out
}

fn restore_into(delta: &[f64], n: u32, m: u32, out: &mut [f64]) {
    let dw = delta_width(n, m);
    let w = row_width(n, m);
    let base = 1usize << n;
    out.par_chunks_mut(w).enumerate().for_each(|(s, row)| {
        let d = &delta[s * dw..s * dw + base + s];
        let mut acc = 0.0;
        for (slot, &step) in row.iter_mut().zip(d) {
            acc += step;
            *slot = acc;
        }
    });
}

/// Splits every section of a level-`m` stack into its two level-`m-1` halves.
pub fn split_level(upper: &SectionedTransform, ledger: &mut CostLedger) -> Result<SectionedTransform> {
    let m = upper.level();
    if m == 0 {
        return Err(AdrtError::Precondition(
            "level-0 sections cannot be split further".into(),
        ));
    }
    let n = upper.image_level();
    let mut lower = SectionedTransform::zeros(n, m - 1)?;
    let target_len = section_len(n, m - 1);
    let delta_len = (1usize << (m - 1)) * delta_width(n, m - 1);

    lower
        .raw_mut()
        .par_chunks_mut(2 * target_len)
        .enumerate()
        .for_each(|(l, out)| {
            let mut even = vec![0.0; delta_len];
            let mut odd = vec![0.0; delta_len];
            fill_deltas(upper.section(l), n, m, &mut even, &mut odd);
            let (bottom, top) = out.split_at_mut(target_len);
            restore_into(&even, n, m - 1, bottom);
            restore_into(&odd, n, m - 1, top);
        });

    let per_target = support_len(n, m - 1);
    let targets = 2 * upper.section_count() as u64;
    ledger.add(m - 1, targets * per_target, targets * per_target);
    Ok(lower)
}

/// Reconstructs the image from its level-`n` single-quadrant transform.
pub fn iadrt(top: &SectionedTransform) -> Result<Image> {
    iadrt_with_ledger(top).map(|(img, _)| img)
}

/// [`iadrt`] together with the operation counts it performed.
pub fn iadrt_with_ledger(top: &SectionedTransform) -> Result<(Image, CostLedger)> {
    let n = top.image_level();
    if top.level() != n {
        return Err(AdrtError::Structural(format!(
            "inverse needs the level-{n} transform, got level {}",
            top.level()
        )));
    }
    top.validate_padding()?;
    let mut ledger = CostLedger::new();
    let mut current = top.clone();
    while current.level() > 0 {
        current = split_level(&current, &mut ledger)?;
    }
    // level-0 section l is image row l, already in row-major order
    let img = Image::from_values(n, current.into_raw())?;
    Ok((img, ledger))
}

/// Reconstructs the image from quadrant `q` of `full`, undoing its symmetry.
pub fn iadrt_from_full(full: &FullTransform, q: Quadrant) -> Result<Image> {
    let t = full
        .quadrant(q)
        .ok_or_else(|| AdrtError::Missing(format!("quadrant {q} is not present")))?;
    Ok(q.invert(&iadrt(t)?))
}
