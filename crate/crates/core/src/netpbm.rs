//! Binary PGM (`P5`) and PBM (`P4`) codecs.
//!
//! Readers accept comments and arbitrary whitespace in the header. Writers
//! emit the canonical form: no comments, a single `\n` after every field.
//! ASCII variants and 16-bit PGM are rejected.

use crate::error::NetpbmError;
use crate::{BitImage, GrayImage};

struct Header {
    width: usize,
    height: usize,
    maxval: Option<u32>,
}

fn skip_ws_and_comments(mut bytes: &[u8]) -> &[u8] {
    loop {
        match bytes {
            [u, tail @ ..] if u.is_ascii_whitespace() => bytes = tail,
            [b'#', tail @ ..] => {
                bytes = match tail.iter().position(|&b| b == b'\n') {
                    Some(eol) => &tail[eol + 1..],
                    None => &[],
                }
            }
            _ => return bytes,
        }
    }
}

fn pull_u32(bytes: &[u8]) -> Result<(u32, &[u8]), NetpbmError> {
    let bytes = skip_ws_and_comments(bytes);
    let digits = bytes.iter().take_while(|b| b.is_ascii_digit()).count();
    if digits == 0 {
        return Err(NetpbmError::Header("expected a decimal number"));
    }
    let mut value: u32 = 0;
    for &d in &bytes[..digits] {
        value = value
            .checked_mul(10)
            .and_then(|v| v.checked_add(u32::from(d - b'0')))
            .ok_or(NetpbmError::Header("number too large"))?;
    }
    Ok((value, &bytes[digits..]))
}

fn parse_header<'a>(
    bytes: &'a [u8],
    magic: &'static str,
    with_maxval: bool,
) -> Result<(Header, &'a [u8]), NetpbmError> {
    let rest = bytes
        .strip_prefix(magic.as_bytes())
        .ok_or(NetpbmError::BadMagic { expected: magic })?;
    let (width, rest) = pull_u32(rest)?;
    let (height, rest) = pull_u32(rest)?;
    let (maxval, rest) = if with_maxval {
        let (m, r) = pull_u32(rest)?;
        (Some(m), r)
    } else {
        (None, rest)
    };
    if let Some(m) = maxval {
        if m != 255 {
            return Err(NetpbmError::UnsupportedMaxval(m));
        }
    }
    // Exactly one whitespace byte separates the header from the raster.
    let rest = match rest {
        [u, tail @ ..] if u.is_ascii_whitespace() => tail,
        _ => return Err(NetpbmError::Header("missing whitespace before raster")),
    };
    let header = Header { width: width as usize, height: height as usize, maxval };
    Ok((header, rest))
}

pub fn read_pgm(bytes: &[u8]) -> Result<GrayImage, NetpbmError> {
    let (header, raster) = parse_header(bytes, "P5", true)?;
    debug_assert_eq!(header.maxval, Some(255));
    if header.width == 0 || header.height == 0 {
        return Err(NetpbmError::Header("zero dimension"));
    }
    let expected = header
        .width
        .checked_mul(header.height)
        .ok_or(NetpbmError::Header("image too large"))?;
    if raster.len() < expected {
        return Err(NetpbmError::Truncated { expected, found: raster.len() });
    }
    Ok(GrayImage::new(header.width, header.height, raster[..expected].to_vec())
        .expect("dimensions validated by header parser"))
}

pub fn write_pgm(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend_from_slice(img.pixels());
    out
}

pub fn read_pbm(bytes: &[u8]) -> Result<BitImage, NetpbmError> {
    let (header, raster) = parse_header(bytes, "P4", false)?;
    let stride = header.width.div_ceil(8);
    let expected = stride
        .checked_mul(header.height)
        .ok_or(NetpbmError::Header("image too large"))?;
    if raster.len() < expected {
        return Err(NetpbmError::Truncated { expected, found: raster.len() });
    }
    let mut bits = Vec::with_capacity(header.width * header.height);
    for row in raster[..expected].chunks_exact(stride.max(1)).take(header.height) {
        bits.extend((0..header.width).map(|c| row[c / 8] & (0x80 >> (c % 8)) != 0));
    }
    Ok(BitImage::new(header.width, header.height, bits).expect("dimensions validated by header parser"))
}

pub fn write_pbm(img: &BitImage) -> Vec<u8> {
    let mut out = format!("P4\n{} {}\n", img.width(), img.height()).into_bytes();
    if img.width() == 0 {
        return out;
    }
    for row in img.bits().chunks_exact(img.width()) {
        for byte_bits in row.chunks(8) {
            let byte = byte_bits
                .iter()
                .enumerate()
                .fold(0u8, |acc, (i, &b)| if b { acc | (0x80 >> i) } else { acc });
            out.push(byte);
        }
    }
    out
}
