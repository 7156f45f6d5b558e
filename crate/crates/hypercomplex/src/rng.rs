//! Deterministic random generation for the property suites and the CLI.
//!
//! The generator is SplitMix64 (Steele, Lea & Flood): state advances by the
//! odd constant 0x9e3779b97f4a7c15 and each output is finalized with two
//! xor-shift-multiply rounds. It is tiny, seedable from a single `u64` and
//! produces identical streams on every platform, which keeps `verify`
//! failures reproducible.

use crate::algebra::{AlgebraSignature, Field};
use crate::diagonal::{from_diagonal, DiagonalCoords};
use crate::element::{MultiVector, Scalar};

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform integer in `[0, bound)`.
    pub fn below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }
}

/// Random element with coefficients uniform in `[-1, 1]`.
///
/// With `positive_diagonal` set, the element is instead built from diagonal
/// coordinates uniform in `[0.2, 2]` (real part; zero imaginary part), so
/// fractional powers and polar factors are defined. That path requires a
/// diagonalizable signature.
pub fn random_multivector(
    sig: &AlgebraSignature,
    rng: &mut SplitMix64,
    positive_diagonal: bool,
) -> MultiVector {
    if positive_diagonal {
        let coords = (0..sig.dim())
            .map(|_| Scalar::from_re(rng.uniform(0.2, 2.0)))
            .collect();
        let d = DiagonalCoords::new(sig.clone(), coords)
            .expect("positive-coordinate sampling requires a diagonalizable signature");
        return from_diagonal(&d).expect("round trip");
    }
    let coeffs = (0..sig.dim())
        .map(|_| match sig.field() {
            Field::Real => Scalar::from_re(rng.uniform(-1.0, 1.0)),
            Field::Complex => Scalar::new(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)),
        })
        .collect();
    MultiVector::new(sig.clone(), coeffs).expect("coefficients match the field")
}

/// Random signature with `n <= max_units`, any lambda, squares drawn from
/// `{-1, 0, +1}`.
pub fn random_signature(rng: &mut SplitMix64, max_units: usize) -> AlgebraSignature {
    let n = rng.below(max_units + 1);
    let squares = (0..n).map(|_| rng.below(3) as i8 - 1).collect();
    let lambda = if rng.below(2) == 0 { 1 } else { -1 };
    let field = if rng.below(2) == 0 {
        Field::Real
    } else {
        Field::Complex
    };
    AlgebraSignature::new(squares, lambda, field).expect("generated values are in range")
}
