//! Per-coefficient embedding state machine.
//!
//! A coefficient's *map bit* is `floor(c / 2) mod 2`. Adding or subtracting
//! 2 always flips it and never changes the parity of `c`, so a payload bit
//! can be forced into the map bit with a `±2` step: `+2` in the first pass,
//! `-2` in the second. The tracker bit remembers the map bit before the step,
//! which is exactly what is needed to tell later whether a step happened.

/// Which of the two passes over a coefficient a bit belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Iteration {
    First,
    Second,
}

impl Iteration {
    /// Coefficient step applied when the map bit has to flip.
    pub const fn delta(self) -> i32 {
        match self {
            Iteration::First => 2,
            Iteration::Second => -2,
        }
    }

    pub const fn number(self) -> u8 {
        match self {
            Iteration::First => 1,
            Iteration::Second => 2,
        }
    }
}

/// `floor(c / 2) mod 2` with a non-negative remainder.
#[inline]
pub fn qmap(c: i32) -> bool {
    c.div_euclid(2).rem_euclid(2) == 1
}

/// Forces `w` into the map bit of `c`. Returns the new coefficient and the
/// tracker bit (the map bit of `c` before modification).
#[inline]
pub fn embed_bit(c: i32, w: bool, iteration: Iteration) -> (i32, bool) {
    let tkey = qmap(c);
    if tkey == w {
        (c, tkey)
    } else {
        (c + iteration.delta(), tkey)
    }
}

/// Reads the embedded bit from `c_w` and undoes the step `embed_bit` took.
#[inline]
pub fn extract_bit(c_w: i32, tkey: bool, iteration: Iteration) -> (bool, i32) {
    let w = qmap(c_w);
    if w == tkey {
        (w, c_w)
    } else {
        (w, c_w - iteration.delta())
    }
}

/// Embeds `a` in the first pass and `b` in the second pass of one
/// coefficient. The second tracker bit is taken from the first-pass result.
pub fn embed_pair(c0: i32, a: bool, b: bool) -> (i32, bool, bool) {
    let (c1, tkey_a) = embed_bit(c0, a, Iteration::First);
    let (c2, tkey_b) = embed_bit(c1, b, Iteration::Second);
    (c2, tkey_a, tkey_b)
}
