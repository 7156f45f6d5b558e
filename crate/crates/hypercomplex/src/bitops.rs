//! Bit-level primitives underlying the basis-index arithmetic.
//!
//! Basis element `e_p` of an algebra with `n` principal units is named by the
//! integer `p < 2^n`: bit `i` (least significant = bit 0) marks the presence of
//! unit `u_{i+1}`. Everything downstream reduces to popcounts and shifts on
//! these indices.

use crate::error::{Error, Result};

/// Maximum number of units supported anywhere in the crate.
pub const MAX_UNITS: usize = 24;

/// Fixed-width binary expansion of `value`, most significant bit first.
pub fn bin(value: usize, width: usize) -> Result<Vec<u8>> {
    if width < usize::BITS as usize && value >= (1usize << width) {
        return Err(Error::IndexOutOfRange { value, width });
    }
    Ok((0..width)
        .rev()
        .map(|i| ((value >> i) & 1) as u8)
        .collect())
}

/// Inverse of [`bin`]: reassembles an integer from a most-significant-first
/// bit tuple.
pub fn val(bits: &[u8]) -> Result<usize> {
    let mut out = 0usize;
    for &b in bits {
        if b > 1 {
            return Err(Error::InvalidBit(b));
        }
        out = (out << 1) | b as usize;
    }
    Ok(out)
}

/// Binary inner product `⟨p,q⟩ = popcount(p AND q)`.
#[inline]
pub fn bit_inner(p: usize, q: usize) -> u32 {
    (p & q).count_ones()
}

/// Number of adjacent transpositions needed to interleave the unit list of
/// `e_p` with the unit list of `e_q` into sorted order.
///
/// Each unit `u_{i+1}` present in `q` must move left past every unit of `p`
/// with a strictly larger index, so the count is
/// `sum over set bits i of q of popcount(p >> (i+1))`.
#[inline]
pub fn swap_count(p: usize, q: usize) -> u32 {
    let mut total = 0u32;
    let mut rest = q;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        total += (p >> (i + 1)).count_ones();
        rest &= rest - 1;
    }
    total
}
