//! End-to-end embedding and extraction.

use crate::coeff::{embed_bit, extract_bit};
use crate::iwt::{forward_iwt, inverse_iwt, IntPlane};
use crate::plan::build_plan;
use crate::{BitImage, Error, GrayImage, Result};

/// One tracker bit per payload bit, in embedding-plan order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TrackerKey(pub Vec<bool>);

impl TrackerKey {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A pixel that reconstructed outside `[0, 255]`, with its unclamped value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LedgerRecord {
    pub row: u32,
    pub col: u32,
    pub value: i16,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OverflowLedger {
    pub records: Vec<LedgerRecord>,
}

impl OverflowLedger {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Writes the unclamped values back into a signed copy of `img`.
    pub fn restore(&self, img: &GrayImage) -> Result<IntPlane> {
        let mut plane = IntPlane::from(img);
        for rec in &self.records {
            let (row, col) = (rec.row as usize, rec.col as usize);
            if row >= plane.height || col >= plane.width {
                return Err(Error::LedgerOutOfBounds { row: rec.row, col: rec.col });
            }
            plane.set(row, col, i32::from(rec.value));
        }
        Ok(plane)
    }
}

/// Everything the extractor needs besides the watermarked image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideInfo {
    pub tracker: TrackerKey,
    pub ledger: OverflowLedger,
    pub logo_width: u32,
    pub logo_height: u32,
    pub image_width: u32,
    pub image_height: u32,
}

impl SideInfo {
    pub fn payload_len(&self) -> usize {
        self.tracker.len()
    }
}

/// Clamps a signed plane into an 8-bit image, recording every clamped pixel
/// in row-major order.
///
/// # Panics
///
/// If an out-of-range value does not fit in `i16`. One-level embedding on
/// an 8-bit cover stays within a few units of `[0, 255]`.
pub fn clamp_and_ledger(plane: &IntPlane) -> (GrayImage, OverflowLedger) {
    let mut ledger = OverflowLedger::default();
    let mut pixels = Vec::with_capacity(plane.data.len());
    for (i, &v) in plane.data.iter().enumerate() {
        if (0..=255).contains(&v) {
            pixels.push(v as u8);
            continue;
        }
        pixels.push(if v < 0 { 0 } else { 255 });
        ledger.records.push(LedgerRecord {
            row: (i / plane.width) as u32,
            col: (i % plane.width) as u32,
            value: i16::try_from(v).expect("ledger value exceeds i16"),
        });
    }
    let img = GrayImage::new(plane.width, plane.height, pixels).expect("plane shape is valid");
    (img, ledger)
}

fn dim_u32(v: usize) -> Result<u32> {
    u32::try_from(v).map_err(|_| Error::InvalidImage("dimension does not fit in 32 bits"))
}

/// Embeds `logo` (flattened row-major) into `cover`.
pub fn embed_image(cover: &GrayImage, logo: &BitImage) -> Result<(GrayImage, SideInfo)> {
    let payload = logo.bits();
    let plan = build_plan(cover.width(), cover.height(), payload.len())?;
    let mut coeffs = forward_iwt(&IntPlane::from(cover))?;

    let mut tracker = Vec::with_capacity(payload.len());
    for (slot, &bit) in plan.slots().iter().zip(payload) {
        let c = coeffs.get(slot.subband, slot.row, slot.col);
        let (c_w, tkey) = embed_bit(c, bit, slot.iteration);
        coeffs.set(slot.subband, slot.row, slot.col, c_w);
        tracker.push(tkey);
    }

    let (marked, ledger) = clamp_and_ledger(&inverse_iwt(&coeffs));
    let side = SideInfo {
        tracker: TrackerKey(tracker),
        ledger,
        logo_width: dim_u32(logo.width())?,
        logo_height: dim_u32(logo.height())?,
        image_width: dim_u32(cover.width())?,
        image_height: dim_u32(cover.height())?,
    };
    Ok((marked, side))
}

/// Recovers the cover and the logo from a watermarked image.
pub fn extract_image(marked: &GrayImage, side: &SideInfo) -> Result<(GrayImage, BitImage)> {
    if (side.image_width as usize, side.image_height as usize) != (marked.width(), marked.height())
    {
        return Err(Error::SideInfoMismatch("image dimensions"));
    }
    let (logo_w, logo_h) = (side.logo_width as usize, side.logo_height as usize);
    if logo_w.checked_mul(logo_h) != Some(side.payload_len()) {
        return Err(Error::SideInfoMismatch("logo size differs from tracker length"));
    }
    let plan = build_plan(marked.width(), marked.height(), side.payload_len())?;
    let mut coeffs = forward_iwt(&side.ledger.restore(marked)?)?;

    let mut payload = vec![false; plan.len()];
    for (i, slot) in plan.slots().iter().enumerate().rev() {
        let c_w = coeffs.get(slot.subband, slot.row, slot.col);
        let (bit, c_r) = extract_bit(c_w, side.tracker.0[i], slot.iteration);
        coeffs.set(slot.subband, slot.row, slot.col, c_r);
        payload[i] = bit;
    }

    let restored = inverse_iwt(&coeffs);
    let mut pixels = Vec::with_capacity(restored.data.len());
    for (i, &v) in restored.data.iter().enumerate() {
        let px = u8::try_from(v).map_err(|_| Error::RecoveredOutOfRange {
            row: i / restored.width,
            col: i % restored.width,
            value: v,
        })?;
        pixels.push(px);
    }
    let cover = GrayImage::new(restored.width, restored.height, pixels)?;
    Ok((cover, BitImage::new(logo_w, logo_h, payload)?))
}
