//! Distortion and capacity measures.

use num_rational::Ratio;

use crate::{Error, GrayImage, Result};

/// Bits per pixel as an exact fraction.
pub type Bpp = Ratio<u64>;

/// Peak signal-to-noise ratio in dB for 8-bit images. Identical images give
/// `f64::INFINITY`.
pub fn psnr(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    if (a.width(), a.height()) != (b.width(), b.height()) {
        return Err(Error::DimensionMismatch(a.width(), a.height(), b.width(), b.height()));
    }
    let sse: u64 = a
        .pixels()
        .iter()
        .zip(b.pixels())
        .map(|(&x, &y)| {
            let d = u64::from(x.abs_diff(y));
            d * d
        })
        .sum();
    if sse == 0 {
        return Ok(f64::INFINITY);
    }
    let mse = sse as f64 / a.area() as f64;
    Ok(10.0 * (255.0 * 255.0 / mse).log10())
}

pub fn capacity_bpp(payload_bits: usize, width: usize, height: usize) -> Result<Bpp> {
    let area = width * height;
    if area == 0 {
        return Err(Error::ZeroArea);
    }
    Ok(Ratio::new(payload_bits as u64, area as u64))
}

/// Payload size for a target rate; fractional bits are dropped.
pub fn bits_for_bpp(bpp: Bpp, width: usize, height: usize) -> usize {
    let area = (width * height) as u128;
    (u128::from(*bpp.numer()) * area / u128::from(*bpp.denom())) as usize
}

/// Parses a non-negative decimal such as `0.1`, `1.5` or `2` exactly.
pub fn parse_bpp(s: &str) -> Result<Bpp> {
    let bad = || Error::InvalidBpp(s.to_string());
    let s_trim = s.trim();
    let (int, frac) = s_trim.split_once('.').unwrap_or((s_trim, ""));
    if int.is_empty() && frac.is_empty()
        || !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit())
        || frac.len() > 12
    {
        return Err(bad());
    }
    let denom = 10u64.pow(frac.len() as u32);
    let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
    let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
    let numer = int.checked_mul(denom).and_then(|v| v.checked_add(frac)).ok_or_else(bad)?;
    Ok(Ratio::new(numer, denom))
}

pub fn bpp_to_f64(bpp: Bpp) -> f64 {
    *bpp.numer() as f64 / *bpp.denom() as f64
}
