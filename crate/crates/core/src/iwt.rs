//! One-level 2-D integer Haar transform (S-transform) computed by lifting.
//!
//! Every row is split into low/high halves first, then every column. The
//! resulting quadrants are
//!
//! ```text
//! +----+----+
//! | LL | HL |
//! +----+----+
//! | LH | HH |
//! +----+----+
//! ```
//!
//! `HL` holds the row-pass detail of the column-pass average, `LH` the
//! column-pass detail of the row-pass average. Both directions are exact
//! bijections on `i32` planes whose values stay far from the type limits.

use crate::{Error, GrayImage, Result};

/// Signed spatial-domain plane, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPlane {
    pub width: usize,
    pub height: usize,
    pub data: Vec<i32>,
}

impl IntPlane {
    pub fn new(width: usize, height: usize, data: Vec<i32>) -> Result<Self> {
        if width.checked_mul(height) != Some(data.len()) {
            return Err(Error::InvalidImage("value count does not match dimensions"));
        }
        Ok(Self { width, height, data })
    }

    pub fn get(&self, row: usize, col: usize) -> i32 {
        self.data[row * self.width + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: i32) {
        self.data[row * self.width + col] = value;
    }
}

impl From<&GrayImage> for IntPlane {
    fn from(img: &GrayImage) -> Self {
        Self {
            width: img.width(),
            height: img.height(),
            data: img.pixels().iter().map(|&p| i32::from(p)).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubbandId {
    LL,
    LH,
    HL,
    HH,
}

impl SubbandId {
    /// Detail bands that carry payload, in allocation order.
    pub const EMBEDDING: [SubbandId; 3] = [SubbandId::LH, SubbandId::HL, SubbandId::HH];

    /// Top-left corner `(row, col)` of the band inside a `width x height` plane.
    pub fn origin(self, width: usize, height: usize) -> (usize, usize) {
        match self {
            SubbandId::LL => (0, 0),
            SubbandId::HL => (0, width / 2),
            SubbandId::LH => (height / 2, 0),
            SubbandId::HH => (height / 2, width / 2),
        }
    }
}

/// Wavelet coefficients of a one-level transform, quadrant layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffPlane(IntPlane);

impl CoeffPlane {
    pub fn new(plane: IntPlane) -> Result<Self> {
        check_even(plane.width, plane.height)?;
        Ok(Self(plane))
    }

    pub fn width(&self) -> usize {
        self.0.width
    }

    pub fn height(&self) -> usize {
        self.0.height
    }

    /// Side lengths `(width, height)` of each sub-band.
    pub fn band_dims(&self) -> (usize, usize) {
        (self.0.width / 2, self.0.height / 2)
    }

    pub fn get(&self, band: SubbandId, row: usize, col: usize) -> i32 {
        let (r0, c0) = band.origin(self.0.width, self.0.height);
        self.0.get(r0 + row, c0 + col)
    }

    pub fn set(&mut self, band: SubbandId, row: usize, col: usize, value: i32) {
        let (r0, c0) = band.origin(self.0.width, self.0.height);
        self.0.set(r0 + row, c0 + col, value);
    }

    pub fn band(&self, band: SubbandId) -> Vec<i32> {
        let (bw, bh) = self.band_dims();
        (0..bh)
            .flat_map(|r| (0..bw).map(move |c| (r, c)))
            .map(|(r, c)| self.get(band, r, c))
            .collect()
    }

    pub fn as_plane(&self) -> &IntPlane {
        &self.0
    }

    pub fn into_plane(self) -> IntPlane {
        self.0
    }
}

fn check_even(width: usize, height: usize) -> Result<()> {
    if !width.is_multiple_of(2) || !height.is_multiple_of(2) {
        return Err(Error::OddDimensions { width, height });
    }
    Ok(())
}

/// Forward lifting step on one pair: `d = x1 - x0`, `s = x0 + floor(d / 2)`.
#[inline]
pub fn lift(x0: i32, x1: i32) -> (i32, i32) {
    let d = x1 - x0;
    // arithmetic shift floors toward -inf
    (x0 + (d >> 1), d)
}

/// Inverse of [`lift`].
#[inline]
pub fn unlift(s: i32, d: i32) -> (i32, i32) {
    let x0 = s - (d >> 1);
    (x0, d + x0)
}

/// Splits `n` samples read through `src(i)` into averages then details.
fn analyze(src: impl Fn(usize) -> i32, n: usize, out: &mut [i32]) {
    let half = n / 2;
    for k in 0..half {
        let (s, d) = lift(src(2 * k), src(2 * k + 1));
        out[k] = s;
        out[half + k] = d;
    }
}

fn synthesize(src: impl Fn(usize) -> i32, n: usize, out: &mut [i32]) {
    let half = n / 2;
    for k in 0..half {
        let (x0, x1) = unlift(src(k), src(half + k));
        out[2 * k] = x0;
        out[2 * k + 1] = x1;
    }
}

pub fn forward_iwt(plane: &IntPlane) -> Result<CoeffPlane> {
    let (w, h) = (plane.width, plane.height);
    check_even(w, h)?;
    let mut rows = vec![0; w * h];
    for (r, out) in rows.chunks_exact_mut(w.max(1)).enumerate().take(h) {
        analyze(|i| plane.data[r * w + i], w, out);
    }
    let mut data = vec![0; w * h];
    let mut column = vec![0; h];
    for c in 0..w {
        analyze(|i| rows[i * w + c], h, &mut column);
        for (r, &v) in column.iter().enumerate() {
            data[r * w + c] = v;
        }
    }
    Ok(CoeffPlane(IntPlane { width: w, height: h, data }))
}

/// Exact inverse of [`forward_iwt`]. The output is signed: modified
/// coefficients may reconstruct to values outside `[0, 255]`.
pub fn inverse_iwt(coeffs: &CoeffPlane) -> IntPlane {
    let IntPlane { width: w, height: h, data: ref src } = coeffs.0;
    let mut cols = vec![0; w * h];
    let mut column = vec![0; h];
    for c in 0..w {
        synthesize(|i| src[i * w + c], h, &mut column);
        for (r, &v) in column.iter().enumerate() {
            cols[r * w + c] = v;
        }
    }
    let mut data = vec![0; w * h];
    for (r, out) in data.chunks_exact_mut(w.max(1)).enumerate().take(h) {
        synthesize(|i| cols[r * w + i], w, out);
    }
    IntPlane { width: w, height: h, data }
}
