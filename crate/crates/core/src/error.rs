use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NetpbmError {
    #[error("bad magic number: expected {expected}")]
    BadMagic { expected: &'static str },
    #[error("malformed header: {0}")]
    Header(&'static str),
    #[error("unsupported maxval {0}, only 255 is accepted")]
    UnsupportedMaxval(u32),
    #[error("truncated raster: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KeyError {
    #[error("key file truncated")]
    Truncated,
    #[error("bad key file magic")]
    BadMagic,
    #[error("unsupported key file version {0}")]
    UnsupportedVersion(u8),
    #[error("key file checksum mismatch: stored {stored:#010x}, computed {computed:#010x}")]
    ChecksumMismatch { stored: u32, computed: u32 },
    #[error("{0} trailing bytes after key file body")]
    TrailingBytes(usize),
    #[error("invalid key file: {0}")]
    Invalid(&'static str),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Netpbm(#[from] NetpbmError),
    #[error(transparent)]
    Key(#[from] KeyError),
    #[error("invalid image: {0}")]
    InvalidImage(&'static str),
    #[error("image dimensions {width}x{height} must both be even")]
    OddDimensions { width: usize, height: usize },
    #[error("payload of {requested} bits exceeds the maximum capacity of {max} bits")]
    CapacityExceeded { requested: usize, max: usize },
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("zero-area image")]
    ZeroArea,
    #[error("side information does not match: {0}")]
    SideInfoMismatch(&'static str),
    #[error("ledger record ({row}, {col}) lies outside the image")]
    LedgerOutOfBounds { row: u32, col: u32 },
    #[error("recovered pixel ({row}, {col}) = {value} is out of range; wrong key for this image?")]
    RecoveredOutOfRange { row: usize, col: usize, value: i32 },
    #[error("round trip failed at {0}")]
    RoundTrip(&'static str),
    #[error("invalid input: {0}")]
    InvalidInput(&'static str),
    #[error("invalid bpp value: {0}")]
    InvalidBpp(String),
}
