//! Approximate discrete Radon transform (ADRT) of `2^n x 2^n` images.
//!
//! The forward transform sums pixels along dyadic digital lines in
//! `O(N log N)` by merging half-height sections. [`iadrt`] inverts it exactly
//! from a single quadrant in `O(N log N)` using first differences and prefix
//! sums. [`dline`] holds the brute-force digital-line summation used to check
//! the fast path.

pub mod bench;
pub mod cli;
pub mod dline;
pub mod error;
pub mod forward;
pub mod image;
pub mod inverse;
pub mod io;
pub mod ledger;
pub mod quadrant;
pub mod random;
pub mod transform;

pub use dline::{adrt_direct, adrt_direct_full, digital_line, DigitalLine};
pub use error::{AdrtError, Result};
pub use forward::{
    adrt_full, adrt_init, adrt_single_quadrant, adrt_single_quadrant_with_ledger, merge_level,
    FullTransform,
};
pub use image::{Image, SectionView};
pub use inverse::{
    compute_deltas, iadrt, iadrt_from_full, iadrt_with_ledger, prefix_restore, split_level,
    DeltaBuffer,
};
pub use ledger::{forward_additions, inverse_level_bound, inverse_total, CostLedger, LevelCost};
pub use quadrant::{apply_quadrant_symmetry, Quadrant};
pub use transform::SectionedTransform;
