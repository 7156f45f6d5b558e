//! Dense multivector arithmetic: addition, scaling, the naive bilinear
//! product, standard-basis conjugation and tolerance-based comparison.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use crate::algebra::{index, AlgebraSignature, Field};
use crate::bitops;
use crate::error::{Error, Result};

/// Default comparison tolerance used by the CLI and the test suites.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A complex scalar stored as a pair of doubles. Elements of real-field
/// algebras keep the imaginary part identically zero.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Scalar {
    pub re: f64,
    pub im: f64,
}

impl Scalar {
    pub const ZERO: Scalar = Scalar { re: 0.0, im: 0.0 };
    pub const ONE: Scalar = Scalar { re: 1.0, im: 0.0 };
    pub const I: Scalar = Scalar { re: 0.0, im: 1.0 };

    pub fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub fn from_re(re: f64) -> Self {
        Self { re, im: 0.0 }
    }

    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn recip(self) -> Self {
        let d = self.re * self.re + self.im * self.im;
        Self::new(self.re / d, -self.im / d)
    }

    /// Integer power by repeated squaring; exact on exact inputs.
    pub fn powi(self, mut exp: i64) -> Self {
        let mut base = if exp < 0 { self.recip() } else { self };
        if exp < 0 {
            exp = -exp;
        }
        let mut acc = Scalar::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    /// Principal power `exp(a log z)` with the principal branch of the
    /// logarithm.
    pub fn powf(self, a: f64) -> Self {
        let r = self.abs();
        let theta = self.im.atan2(self.re);
        let mag = r.powf(a);
        let angle = a * theta;
        Self::new(mag * angle.cos(), mag * angle.sin())
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        Scalar::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        Scalar::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        self * rhs.recip()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re, -self.im)
    }
}

impl Mul<f64> for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: f64) -> Scalar {
        Scalar::new(self.re * rhs, self.im * rhs)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0.0 {
            write!(f, "{}", self.re)
        } else if self.im < 0.0 {
            write!(f, "{}-{}i", self.re, -self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Parses `a`, `a+bi`, `a-bi`, `bi`, `i`, `-i`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let bad = || Error::Parse(format!("invalid scalar `{s}`"));
        if let Some(body) = s.strip_suffix(['i', 'I']) {
            // find the split between real and imaginary part: a sign that is
            // not the leading character and not part of an exponent
            let bytes = body.as_bytes();
            let mut split = None;
            for k in (1..bytes.len()).rev() {
                if (bytes[k] == b'+' || bytes[k] == b'-')
                    && bytes[k - 1] != b'e'
                    && bytes[k - 1] != b'E'
                {
                    split = Some(k);
                    break;
                }
            }
            let (re_part, im_part) = match split {
                Some(k) => (&body[..k], &body[k..]),
                None => ("0", body),
            };
            let im = match im_part {
                "" | "+" => 1.0,
                "-" => -1.0,
                other => other.parse().map_err(|_| bad())?,
            };
            let re = re_part.parse().map_err(|_| bad())?;
            Ok(Scalar::new(re, im))
        } else {
            Ok(Scalar::from_re(s.parse().map_err(|_| bad())?))
        }
    }
}

/// Dense element of a hypercomplex algebra: one coefficient per standard
/// basis element, indexed by the basis integer `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiVector {
    sig: AlgebraSignature,
    coeffs: Vec<Scalar>,
}

impl MultiVector {
    /// Builds an element, checking the length and the field discipline.
    pub fn new(sig: AlgebraSignature, coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.len() != sig.dim() {
            return Err(Error::Parse(format!(
                "expected {} coefficients, got {}",
                sig.dim(),
                coeffs.len()
            )));
        }
        if sig.field() == Field::Real {
            if let Some(k) = coeffs.iter().position(|c| c.im != 0.0) {
                return Err(Error::ComplexCoefficientInRealAlgebra(k));
            }
        }
        Ok(Self { sig, coeffs })
    }

    pub fn zero(sig: AlgebraSignature) -> Self {
        let dim = sig.dim();
        Self {
            sig,
            coeffs: vec![Scalar::ZERO; dim],
        }
    }

    /// The multiplicative neutral element `e_0`.
    pub fn one(sig: AlgebraSignature) -> Self {
        Self::basis(sig, 0).expect("e_0 always exists")
    }

    /// The standard basis element `e_p`.
    pub fn basis(sig: AlgebraSignature, p: usize) -> Result<Self> {
        if p >= sig.dim() {
            return Err(Error::IndexOutOfRange {
                value: p,
                width: sig.units(),
            });
        }
        let mut out = Self::zero(sig);
        out.coeffs[p] = Scalar::ONE;
        Ok(out)
    }

    pub fn sig(&self) -> &AlgebraSignature {
        &self.sig
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, p: usize) -> Scalar {
        self.coeffs[p]
    }

    fn check_same_sig(&self, other: &Self) -> Result<()> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_sig(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| a + b)
            .collect();
        Ok(Self {
            sig: self.sig.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_sig(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| a - b)
            .collect();
        Ok(Self {
            sig: self.sig.clone(),
            coeffs,
        })
    }

    pub fn scale(&self, c: Scalar) -> Self {
        Self {
            sig: self.sig.clone(),
            coeffs: self.coeffs.iter().map(|&a| a * c).collect(),
        }
    }

    /// The bilinear product expanded over all coefficient pairs, O(4^n).
    ///
    /// The coefficient at `p XOR q` accumulates `x_p y_q s(p,q)`.
    pub fn mul_naive(&self, other: &Self) -> Result<Self> {
        self.check_same_sig(other)?;
        let dim = self.sig.dim();
        let mut out = vec![Scalar::ZERO; dim];
        for p in 0..dim {
            let xp = self.coeffs[p];
            if xp == Scalar::ZERO {
                continue;
            }
            for q in 0..dim {
                let s = self.sig.multiplier(p, q).expect("p,q < dim");
                if s == 0 {
                    continue;
                }
                let term = xp * other.coeffs[q] * (s as f64);
                let r = index(p, q);
                out[r] = out[r] + term;
            }
        }
        Ok(Self {
            sig: self.sig.clone(),
            coeffs: out,
        })
    }

    /// Flips the sign of every principal unit named in `mask`: the
    /// coefficient at `q` picks up `(-1)^{<mask,q>}`.
    pub fn conj_standard(&self, mask: usize) -> Result<Self> {
        if mask >= self.sig.dim() {
            return Err(Error::IndexOutOfRange {
                value: mask,
                width: self.sig.units(),
            });
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(q, &c)| {
                if bitops::bit_inner(mask, q) % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect();
        Ok(Self {
            sig: self.sig.clone(),
            coeffs,
        })
    }

    /// Conjugates every coefficient (the scalar-field conjugation).
    pub fn conj_coefficients(&self) -> Self {
        Self {
            sig: self.sig.clone(),
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }

    /// Maximum componentwise absolute difference.
    pub fn max_deviation(&self, other: &Self) -> Result<f64> {
        self.check_same_sig(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    pub fn equals_within(&self, other: &Self, tol: f64) -> Result<bool> {
        Ok(self.max_deviation(other)? <= tol)
    }

    /// Parses the CLI coefficient format: comma-separated scalars in index
    /// order, complex scalars as `a+bi`.
    pub fn parse(sig: AlgebraSignature, text: &str) -> Result<Self> {
        let coeffs = text
            .split(',')
            .map(Scalar::from_str)
            .collect::<Result<Vec<_>>>()?;
        Self::new(sig, coeffs)
    }
}

impl fmt::Display for MultiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for c in &self.coeffs {
            if !first {
                write!(f, ",")?;
            }
            if self.sig.field() == Field::Complex {
                if c.im < 0.0 {
                    write!(f, "{}-{}i", c.re, -c.im)?;
                } else {
                    write!(f, "{}+{}i", c.re, c.im)?;
                }
            } else {
                write!(f, "{}", c.re)?;
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::preset;

    #[test]
    fn scalar_parse_and_display() {
        let cases = [
            ("1", Scalar::new(1.0, 0.0)),
            ("-2.5", Scalar::new(-2.5, 0.0)),
            ("3+4i", Scalar::new(3.0, 4.0)),
            ("3-4i", Scalar::new(3.0, -4.0)),
            ("-3+4i", Scalar::new(-3.0, 4.0)),
            ("4i", Scalar::new(0.0, 4.0)),
            ("i", Scalar::new(0.0, 1.0)),
            ("-i", Scalar::new(0.0, -1.0)),
            ("1e-3+2e2i", Scalar::new(1e-3, 2e2)),
        ];
        for (text, want) in cases {
            assert_eq!(text.parse::<Scalar>().unwrap(), want, "{text}");
        }
        assert!("".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
        assert_eq!("3+4i".parse::<Scalar>().unwrap().to_string(), "3+4i");
    }

    #[test]
    fn add_scale_identities() {
        let sig = preset("bicomplex").unwrap();
        let x = MultiVector::parse(sig.clone(), "1,2,-0.5,3").unwrap();
        let zero = MultiVector::zero(sig.clone());
        assert_eq!(x.add(&zero).unwrap(), x);
        assert_eq!(x.scale(Scalar::ONE), x);
    }

    #[test]
    fn signature_mismatch_is_an_error() {
        let x = MultiVector::one(preset("complex").unwrap());
        let y = MultiVector::one(preset("dual").unwrap());
        assert_eq!(x.add(&y), Err(Error::SignatureMismatch));
        assert_eq!(x.mul_naive(&y), Err(Error::SignatureMismatch));
    }

    #[test]
    fn mul_naive_examples() {
        let bi = preset("bicomplex").unwrap();
        let e1 = MultiVector::basis(bi.clone(), 1).unwrap();
        let e2 = MultiVector::basis(bi.clone(), 2).unwrap();
        let prod = e1.mul_naive(&e2).unwrap();
        assert_eq!(prod, MultiVector::basis(bi, 3).unwrap());

        let c = preset("complex").unwrap();
        let i = MultiVector::basis(c.clone(), 1).unwrap();
        let sq = i.mul_naive(&i).unwrap();
        assert_eq!(sq, MultiVector::one(c).scale(Scalar::from_re(-1.0)));
    }

    #[test]
    fn idempotent_pair_annihilates_in_d1() {
        let d1 = preset("d(1)").unwrap();
        let gp = MultiVector::parse(d1.clone(), "0.5,0.5").unwrap();
        let gm = MultiVector::parse(d1.clone(), "0.5,-0.5").unwrap();
        let prod = gp.mul_naive(&gm).unwrap();
        assert!(prod.equals_within(&MultiVector::zero(d1), 0.0).unwrap());
    }

    #[test]
    fn conj_standard_examples() {
        let d1 = preset("d(1)").unwrap();
        let x = MultiVector::parse(d1.clone(), "2,3").unwrap();
        assert_eq!(x.conj_standard(0).unwrap(), x);
        let e1 = MultiVector::basis(d1, 1).unwrap();
        assert_eq!(
            e1.conj_standard(1).unwrap(),
            e1.scale(Scalar::from_re(-1.0))
        );
        // involution
        assert_eq!(x.conj_standard(1).unwrap().conj_standard(1).unwrap(), x);
    }

    #[test]
    fn equals_within_bounds() {
        let sig = preset("d(2)").unwrap();
        let x = MultiVector::parse(sig.clone(), "1,2,3,4").unwrap();
        assert!(x.equals_within(&x, 0.0).unwrap());
        let tol = 1e-6;
        let shifted = x
            .add(&MultiVector::one(sig).scale(Scalar::from_re(2.0 * tol)))
            .unwrap();
        assert!(!x.equals_within(&shifted, tol).unwrap());
    }

    #[test]
    fn real_field_rejects_complex_coeffs() {
        let d1 = preset("d(1)").unwrap();
        assert!(matches!(
            MultiVector::parse(d1, "1,2i"),
            Err(Error::ComplexCoefficientInRealAlgebra(1))
        ));
    }
}
