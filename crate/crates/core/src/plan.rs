//! Deterministic mapping of payload bits to coefficient slots.
//!
//! The payload is cut into three contiguous chunks for `LH`, `HL` and `HH`
//! (sizes differ by at most one, earlier bands take the remainder). Each
//! chunk is halved again: the first half (rounded up) goes into the band's
//! coefficients in row-major order during the first pass, the second half
//! revisits the same coefficients in the same order during the second pass.
//! Extraction walks the slot list backwards.

use crate::coeff::Iteration;
use crate::iwt::SubbandId;
use crate::{Error, Result};

/// A payload bit's home: band-relative coefficient position plus pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub subband: SubbandId,
    pub row: usize,
    pub col: usize,
    pub iteration: Iteration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllocationPlan {
    pub width: usize,
    pub height: usize,
    slots: Vec<Slot>,
}

impl AllocationPlan {
    /// Slots in embedding order; `slots()[i]` carries payload bit `i`.
    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }
}

/// Largest payload a `width x height` cover accepts: two bits per detail
/// coefficient, i.e. 1.5 bits per pixel.
pub fn max_capacity(width: usize, height: usize) -> usize {
    6 * (width / 2) * (height / 2)
}

/// Chunk sizes for the three embedding bands.
pub(crate) fn band_chunks(len: usize) -> [usize; 3] {
    let (q, r) = (len / 3, len % 3);
    [0, 1, 2].map(|i| q + usize::from(i < r))
}

pub fn build_plan(width: usize, height: usize, len: usize) -> Result<AllocationPlan> {
    if !width.is_multiple_of(2) || !height.is_multiple_of(2) {
        return Err(Error::OddDimensions { width, height });
    }
    let max = max_capacity(width, height);
    if len > max {
        return Err(Error::CapacityExceeded { requested: len, max });
    }
    let band_width = width / 2;
    let mut slots = Vec::with_capacity(len);
    for (subband, chunk) in SubbandId::EMBEDDING.into_iter().zip(band_chunks(len)) {
        let first = chunk.div_ceil(2);
        for (iteration, count) in [(Iteration::First, first), (Iteration::Second, chunk - first)] {
            slots.extend((0..count).map(|k| Slot {
                subband,
                row: k / band_width,
                col: k % band_width,
                iteration,
            }));
        }
    }
    Ok(AllocationPlan { width, height, slots })
}
