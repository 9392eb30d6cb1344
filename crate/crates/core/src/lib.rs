//! Reversible watermarking of 8-bit grayscale images in the integer wavelet
//! domain.
//!
//! Each payload bit is written into the second-least-significant bit of a
//! detail coefficient (`LH`, `HL`, `HH`) of a one-level integer Haar
//! transform. Every detail coefficient carries up to two bits: the second
//! pass moves the coefficient in the opposite direction of the first, so
//! half of the time the two modifications cancel out. A per-bit tracker key
//! and an overflow ledger travel alongside the watermarked image and make
//! both the cover and the watermark recoverable bit-for-bit.
//!
//! ```
//! use rwm_core::{embed_image, extract_image, BitImage, GrayImage};
//!
//! let cover = GrayImage::new(4, 4, (0..16).map(|v| v * 10).collect()).unwrap();
//! let logo = BitImage::new(3, 2, vec![true, false, true, true, false, false]).unwrap();
//!
//! let (marked, side) = embed_image(&cover, &logo).unwrap();
//! let (recovered, extracted) = extract_image(&marked, &side).unwrap();
//! assert_eq!(recovered, cover);
//! assert_eq!(extracted, logo);
//! ```

pub mod coeff;
mod error;
pub mod image;
pub mod iwt;
pub mod metrics;
pub mod netpbm;
pub mod pipeline;
pub mod plan;
pub mod sideinfo;
pub mod sweep;

pub use coeff::{embed_bit, embed_pair, extract_bit, qmap, Iteration};
pub use error::{Error, KeyError, NetpbmError, Result};
pub use image::{BitImage, GrayImage};
pub use iwt::{forward_iwt, inverse_iwt, CoeffPlane, IntPlane, SubbandId};
pub use netpbm::{read_pbm, read_pgm, write_pbm, write_pgm};
pub use metrics::{bits_for_bpp, capacity_bpp, parse_bpp, psnr, Bpp};
pub use pipeline::{
    clamp_and_ledger, embed_image, extract_image, LedgerRecord, OverflowLedger, SideInfo,
    TrackerKey,
};
pub use plan::{build_plan, max_capacity, AllocationPlan, Slot};
pub use sideinfo::{decode_key, encode_key};
pub use sweep::{average_rows, emit_csv, emit_labeled_csv, random_payload, sweep, SweepRow};
