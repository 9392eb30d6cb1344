//! Capacity-distortion sweeps.

use std::fmt::Write as _;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::metrics::{bits_for_bpp, bpp_to_f64, capacity_bpp, psnr, Bpp};
use crate::sideinfo::{decode_key, encode_key};
use crate::{embed_image, extract_image, BitImage, Error, GrayImage, Result};

pub const CSV_HEADER: &str = "bpp,psnr_db,payload_bits,ledger_count,key_bytes";

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    /// Achieved rate, `payload_bits / area`.
    pub bpp: Bpp,
    /// `f64::INFINITY` when the watermarked image equals the cover.
    pub psnr_db: f64,
    pub payload_bits: usize,
    pub payload_ones: usize,
    pub ledger_count: usize,
    pub key_bytes: usize,
}

/// Uniform pseudorandom bits. For a fixed seed, shorter payloads are
/// prefixes of longer ones.
pub fn random_payload(bits: usize, seed: u64) -> Vec<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..bits).map(|_| rng.random()).collect()
}

/// Embeds a seeded payload at every rate in `bpp_list` and reports the
/// distortion. Each point is fully round-tripped, through the encoded key
/// file, before it is reported.
pub fn sweep(cover: &GrayImage, bpp_list: &[Bpp], seed: u64) -> Result<Vec<SweepRow>> {
    let (w, h) = (cover.width(), cover.height());
    let sizes: Vec<usize> = bpp_list.iter().map(|&b| bits_for_bpp(b, w, h)).collect();
    let master = random_payload(sizes.iter().copied().max().unwrap_or(0), seed);

    sizes
        .into_iter()
        .map(|bits| {
            let logo = BitImage::from_bits(master[..bits].to_vec());
            let (marked, side) = embed_image(cover, &logo)?;
            if side.tracker.len() != bits {
                return Err(Error::RoundTrip("tracker length"));
            }
            let key = encode_key(&side);
            let (recovered, extracted) = extract_image(&marked, &decode_key(&key)?)?;
            if recovered != *cover {
                return Err(Error::RoundTrip("recovered cover"));
            }
            if extracted != logo {
                return Err(Error::RoundTrip("extracted watermark"));
            }
            Ok(SweepRow {
                bpp: capacity_bpp(bits, w, h)?,
                psnr_db: psnr(cover, &marked)?,
                payload_bits: bits,
                payload_ones: logo.bits().iter().filter(|&&b| b).count(),
                ledger_count: side.ledger.len(),
                key_bytes: key.len(),
            })
        })
        .collect()
}

/// Point-wise mean over several sweeps run with the same rate list. PSNR is
/// averaged in dB; counts are rounded to the nearest integer.
pub fn average_rows(sweeps: &[Vec<SweepRow>]) -> Result<Vec<SweepRow>> {
    let Some(first) = sweeps.first() else {
        return Ok(Vec::new());
    };
    if sweeps.iter().any(|s| s.len() != first.len()) {
        return Err(Error::InvalidInput("sweeps differ in length"));
    }
    let n = sweeps.len();
    let mean = |f: &dyn Fn(&SweepRow) -> usize, i: usize| {
        let total: usize = sweeps.iter().map(|s| f(&s[i])).sum();
        (total as f64 / n as f64).round() as usize
    };
    Ok((0..first.len())
        .map(|i| SweepRow {
            bpp: sweeps.iter().map(|s| s[i].bpp).sum::<Bpp>() / Ratio::from_integer(n as u64),
            psnr_db: sweeps.iter().map(|s| s[i].psnr_db).sum::<f64>() / n as f64,
            payload_bits: mean(&|r| r.payload_bits, i),
            payload_ones: mean(&|r| r.payload_ones, i),
            ledger_count: mean(&|r| r.ledger_count, i),
            key_bytes: mean(&|r| r.key_bytes, i),
        })
        .collect())
}

pub(crate) fn csv_fields(row: &SweepRow) -> String {
    let psnr = if row.psnr_db.is_infinite() {
        "inf".to_string()
    } else {
        format!("{:.2}", row.psnr_db)
    };
    format!(
        "{:.2},{},{},{},{}",
        bpp_to_f64(row.bpp),
        psnr,
        row.payload_bits,
        row.ledger_count,
        row.key_bytes
    )
}

pub fn emit_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        writeln!(out, "{}", csv_fields(row)).expect("writing to a String");
    }
    out
}

/// Like [`emit_csv`] with a leading label column, for multi-image reports.
pub fn emit_labeled_csv<'a>(rows: impl IntoIterator<Item = (&'a str, &'a SweepRow)>) -> String {
    let mut out = format!("image,{CSV_HEADER}\n");
    for (label, row) in rows {
        writeln!(out, "{label},{}", csv_fields(row)).expect("writing to a String");
    }
    out
}
