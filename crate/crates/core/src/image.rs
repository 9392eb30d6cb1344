//! In-memory image types.

use crate::{Error, Result};

/// 8-bit grayscale image, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    data: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, data: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidImage("width and height must be positive"));
        }
        if width.checked_mul(height) != Some(data.len()) {
            return Err(Error::InvalidImage("pixel count does not match dimensions"));
        }
        Ok(Self { width, height, data })
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> u8) -> Result<Self> {
        let mut data = Vec::with_capacity(width * height);
        for r in 0..height {
            for c in 0..width {
                data.push(f(r, c));
            }
        }
        Self::new(width, height, data)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn area(&self) -> usize {
        self.width * self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.data[row * self.width + col]
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.data
    }

    /// Returns the first `(row, col)` at which the two images differ.
    pub fn first_difference(&self, other: &GrayImage) -> Option<(usize, usize)> {
        if self.width != other.width || self.height != other.height {
            return Some((0, 0));
        }
        self.data
            .iter()
            .zip(&other.data)
            .position(|(a, b)| a != b)
            .map(|i| (i / self.width, i % self.width))
    }
}

/// Binary image, row-major, `true` = black. Zero-area logos are allowed and
/// stand for an empty watermark.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitImage {
    width: usize,
    height: usize,
    data: Vec<bool>,
}

impl BitImage {
    pub fn new(width: usize, height: usize, data: Vec<bool>) -> Result<Self> {
        if width.checked_mul(height) != Some(data.len()) {
            return Err(Error::InvalidImage("bit count does not match dimensions"));
        }
        Ok(Self { width, height, data })
    }

    pub fn empty() -> Self {
        Self { width: 0, height: 0, data: Vec::new() }
    }

    /// Single-row logo holding `bits`.
    pub fn from_bits(bits: Vec<bool>) -> Self {
        if bits.is_empty() {
            return Self::empty();
        }
        Self { width: bits.len(), height: 1, data: bits }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Flattened row-major bitstream; this is the payload order.
    pub fn bits(&self) -> &[bool] {
        &self.data
    }

    pub fn first_difference(&self, other: &BitImage) -> Option<(usize, usize)> {
        if self.width != other.width || self.height != other.height {
            return Some((0, 0));
        }
        self.data
            .iter()
            .zip(&other.data)
            .position(|(a, b)| a != b)
            .map(|i| (i / self.width, i % self.width))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_shapes() {
        assert!(GrayImage::new(0, 3, vec![]).is_err());
        assert!(GrayImage::new(2, 2, vec![0; 3]).is_err());
        assert!(BitImage::new(2, 2, vec![true; 5]).is_err());
        assert!(BitImage::new(0, 0, vec![]).is_ok());
    }

    #[test]
    fn first_difference_reports_row_col() {
        let a = GrayImage::new(3, 2, vec![0; 6]).unwrap();
        let mut px = vec![0; 6];
        px[4] = 9;
        let b = GrayImage::new(3, 2, px).unwrap();
        assert_eq!(a.first_difference(&a), None);
        assert_eq!(a.first_difference(&b), Some((1, 1)));
    }
}
