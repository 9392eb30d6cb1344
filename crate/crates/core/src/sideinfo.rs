//! Key file codec.
//!
//! Layout, all integers big-endian:
//!
//! | field          | size                   |
//! |----------------|------------------------|
//! | magic `RWM1`   | 4                      |
//! | version (= 1)  | 1                      |
//! | image w, h     | 4 + 4                  |
//! | logo w, h      | 4 + 4                  |
//! | payload_len    | 8                      |
//! | ledger_count   | 4                      |
//! | ledger records | 10 each (u32, u32, i16)|
//! | tracker bits   | ceil(payload_len / 8), MSB first, zero padded |
//! | CRC-32         | 4, over everything before it |

use std::collections::HashSet;

use crate::error::KeyError;
use crate::pipeline::{LedgerRecord, OverflowLedger, SideInfo, TrackerKey};

pub const MAGIC: &[u8; 4] = b"RWM1";
pub const VERSION: u8 = 1;

const HEADER_LEN: usize = 4 + 1 + 8 + 8 + 8 + 4;
const RECORD_LEN: usize = 10;
const CRC_LEN: usize = 4;

/// Size in bytes of the key file for the given side information.
pub fn key_len(payload_len: usize, ledger_count: usize) -> usize {
    HEADER_LEN + RECORD_LEN * ledger_count + payload_len.div_ceil(8) + CRC_LEN
}

pub fn encode_key(side: &SideInfo) -> Vec<u8> {
    let mut out = Vec::with_capacity(key_len(side.payload_len(), side.ledger.len()));
    out.extend_from_slice(MAGIC);
    out.push(VERSION);
    for v in [side.image_width, side.image_height, side.logo_width, side.logo_height] {
        out.extend_from_slice(&v.to_be_bytes());
    }
    out.extend_from_slice(&(side.payload_len() as u64).to_be_bytes());
    let ledger_count = u32::try_from(side.ledger.len()).expect("ledger larger than 2^32 records");
    out.extend_from_slice(&ledger_count.to_be_bytes());
    for rec in &side.ledger.records {
        out.extend_from_slice(&rec.row.to_be_bytes());
        out.extend_from_slice(&rec.col.to_be_bytes());
        out.extend_from_slice(&rec.value.to_be_bytes());
    }
    for chunk in side.tracker.0.chunks(8) {
        let byte = chunk
            .iter()
            .enumerate()
            .fold(0u8, |acc, (i, &b)| if b { acc | (0x80 >> i) } else { acc });
        out.push(byte);
    }
    let crc = crc32fast::hash(&out);
    out.extend_from_slice(&crc.to_be_bytes());
    out
}

struct Reader<'a>(&'a [u8]);

impl<'a> Reader<'a> {
    fn take<const N: usize>(&mut self) -> Result<[u8; N], KeyError> {
        let (head, tail) = self.0.split_first_chunk::<N>().ok_or(KeyError::Truncated)?;
        self.0 = tail;
        Ok(*head)
    }

    fn u32(&mut self) -> Result<u32, KeyError> {
        self.take().map(u32::from_be_bytes)
    }
}

pub fn decode_key(bytes: &[u8]) -> Result<SideInfo, KeyError> {
    match bytes.get(..4) {
        None => return Err(KeyError::Truncated),
        Some(m) if m != MAGIC => return Err(KeyError::BadMagic),
        Some(_) => {}
    }
    match bytes.get(4) {
        None => return Err(KeyError::Truncated),
        Some(&v) if v != VERSION => return Err(KeyError::UnsupportedVersion(v)),
        Some(_) => {}
    }
    if bytes.len() < HEADER_LEN + CRC_LEN {
        return Err(KeyError::Truncated);
    }
    let (body, crc) = bytes.split_at(bytes.len() - CRC_LEN);
    let stored = u32::from_be_bytes(crc.try_into().expect("4-byte slice"));
    let computed = crc32fast::hash(body);
    if stored != computed {
        return Err(KeyError::ChecksumMismatch { stored, computed });
    }

    let mut r = Reader(&body[5..]);
    let image_width = r.u32()?;
    let image_height = r.u32()?;
    let logo_width = r.u32()?;
    let logo_height = r.u32()?;
    let payload_len = u64::from_be_bytes(r.take()?);
    let ledger_count = r.u32()?;

    if u64::from(logo_width) * u64::from(logo_height) != payload_len {
        return Err(KeyError::Invalid("payload length differs from logo size"));
    }
    let payload_len = usize::try_from(payload_len).map_err(|_| KeyError::Truncated)?;
    let needed = (ledger_count as usize)
        .checked_mul(RECORD_LEN)
        .and_then(|n| n.checked_add(payload_len.div_ceil(8)))
        .ok_or(KeyError::Truncated)?;
    if needed > r.0.len() {
        return Err(KeyError::Truncated);
    }
    if needed < r.0.len() {
        return Err(KeyError::TrailingBytes(r.0.len() - needed));
    }

    let mut records = Vec::with_capacity(ledger_count as usize);
    let mut seen = HashSet::with_capacity(ledger_count as usize);
    for _ in 0..ledger_count {
        let row = r.u32()?;
        let col = r.u32()?;
        let value = i16::from_be_bytes(r.take()?);
        if (0..=255).contains(&value) {
            return Err(KeyError::Invalid("ledger value inside pixel range"));
        }
        if !seen.insert((row, col)) {
            return Err(KeyError::Invalid("duplicate ledger position"));
        }
        records.push(LedgerRecord { row, col, value });
    }

    let packed = r.0;
    let tracker: Vec<bool> = (0..payload_len).map(|i| packed[i / 8] & (0x80 >> (i % 8)) != 0).collect();
    if payload_len % 8 != 0 && packed[packed.len() - 1] & (0xFF >> (payload_len % 8)) != 0 {
        return Err(KeyError::Invalid("nonzero tracker padding"));
    }

    Ok(SideInfo {
        tracker: TrackerKey(tracker),
        ledger: OverflowLedger { records },
        logo_width,
        logo_height,
        image_width,
        image_height,
    })
}
