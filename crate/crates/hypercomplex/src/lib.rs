//! Hypercomplex algebras with XOR-indexed multiplication tables,
//! Sylvester-Hadamard diagonalization and conjugation algebras.
//!
//! An algebra is fixed by an [`algebra::AlgebraSignature`]: the squares of its
//! `n` principal units, a commutation constant `lambda` and a scalar field.
//! On the induced `2^n`-dimensional standard basis the product of two basis
//! elements is always another basis element up to sign, with index given by
//! bitwise XOR — see [`algebra`] for the multiplier formula and [`bitops`]
//! for the popcount machinery underneath it.
//!
//! When the signature passes the checks in [`diagonal`], a fast Walsh-Hadamard
//! transform maps elements to a basis of mutually annihilating idempotents
//! where multiplication, inversion and fractional powers are componentwise.
//! [`conjugate`] builds the sign-flip conjugation group on top of that basis,
//! up to the polar decomposition of an element into conjugate-power factors.
//!
//! The `hxc` binary in [`cli`] exposes all of it from the command line.
//!
//! ```
//! use hypercomplex::algebra::preset;
//! use hypercomplex::element::MultiVector;
//! use hypercomplex::diagonal::mul_diagonal;
//!
//! let sig = preset("d(2)").unwrap();
//! let x = MultiVector::parse(sig.clone(), "1,2,3,4").unwrap();
//! let y = MultiVector::parse(sig, "0.5,0,-1,0").unwrap();
//! let slow = x.mul_naive(&y).unwrap();
//! let fast = mul_diagonal(&x, &y).unwrap();
//! assert!(slow.equals_within(&fast, 1e-9).unwrap());
//! ```

pub mod algebra;
pub mod bitops;
pub mod cli;
pub mod conjugate;
pub mod diagonal;
pub mod element;
pub mod error;
pub mod rng;

pub use algebra::{index, preset, AlgebraSignature, Field, MulTables};
pub use element::{MultiVector, Scalar};
pub use error::{Error, Result};

/// The book chapters, compiled as doc-tests so every snippet in the guide
/// keeps working.
pub mod guide {
    #![doc = include_str!("../../../book/src/introduction.md")]
    #![doc = include_str!("../../../book/src/binary-representation.md")]
    #![doc = include_str!("../../../book/src/multiplication.md")]
    #![doc = include_str!("../../../book/src/diagonal-basis.md")]
    #![doc = include_str!("../../../book/src/conjugations.md")]
    #![doc = include_str!("../../../book/src/cli.md")]
}
