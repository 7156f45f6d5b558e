//! The conjugation group and the algebra of conjugate-exponent expressions.
//!
//! Flipping principal unit `u_k` to `-u_k` is an involution; compositions of
//! those flips form a XOR group of order `2^n`, indexed like the standard
//! basis. Complex-field algebras gain one extra generator, coefficientwise
//! conjugation, as the top bit of the group index. A conjugate expression
//! `sum a_g d<g>` evaluates on an element as the product of `(x^{a_g})`
//! conjugated by `g`; diagonalizing this group with the same
//! Sylvester-Hadamard pattern yields the generalized polar decomposition
//! `x = prod x^{~d_alpha}`.

use std::collections::BTreeMap;

use crate::algebra::{AlgebraSignature, Field};
use crate::diagonal::{hadamard_entry, to_diagonal, from_diagonal, INVERT_TOL};
use crate::element::MultiVector;
use crate::error::{Error, Result};

/// Composition of conjugations: XOR on the group bits (including the
/// scalar-conjugation bit when present).
#[inline]
pub fn compose(p: usize, q: usize) -> usize {
    p ^ q
}

/// Number of group-index bits for an algebra: `n`, plus one for the
/// coefficient conjugation on complex-field algebras.
pub fn group_bits(sig: &AlgebraSignature) -> usize {
    sig.units() + usize::from(sig.field() == Field::Complex)
}

/// Applies the conjugation with group index `g`: unit-flip bits act as a
/// standard-basis sign flip, the scalar bit conjugates every coefficient.
pub fn apply_conj(x: &MultiVector, g: usize) -> Result<MultiVector> {
    let sig = x.sig();
    let n = sig.units();
    let unit_mask = g & (sig.dim() - 1);
    let high = g >> n;
    if high > 1 {
        return Err(Error::IndexOutOfRange {
            value: g,
            width: group_bits(sig),
        });
    }
    if high == 1 && sig.field() == Field::Real {
        return Err(Error::ScalarConjOnRealField);
    }
    let out = x.conj_standard(unit_mask)?;
    Ok(if high == 1 {
        out.conj_coefficients()
    } else {
        out
    })
}

/// Principal power through the diagonal basis: `x^a = sum x_hat_k^a eps_k`.
///
/// Integer exponents use exact repeated squaring (negative ones require all
/// diagonal coordinates nonzero). Fractional exponents take the principal
/// branch and require strictly positive coordinates over the real field,
/// nonzero ones over the complex field. `x^0` is the identity for every `x`,
/// including non-invertible ones.
pub fn power(x: &MultiVector, a: f64) -> Result<MultiVector> {
    if a == 0.0 {
        return Ok(MultiVector::one(x.sig().clone()));
    }
    let mut d = to_diagonal(x)?;
    let integer = a.fract() == 0.0 && a.abs() < 2f64.powi(31);
    for (index, c) in d.coords().iter().enumerate() {
        let bad = if integer {
            a < 0.0 && c.abs() <= INVERT_TOL
        } else {
            match x.sig().field() {
                Field::Real => c.re <= 0.0,
                Field::Complex => c.abs() <= INVERT_TOL,
            }
        };
        if bad {
            return Err(Error::PowerDomain {
                index,
                value: c.to_string(),
                exponent: a,
            });
        }
    }
    for c in d.coords_mut() {
        *c = if integer { c.powi(a as i64) } else { c.powf(a) };
    }
    from_diagonal(&d)
}

/// Formal real linear combination of conjugations, the element of the
/// conjugate algebra evaluated by [`eval_expr`].
#[derive(Debug, Clone, PartialEq)]
pub struct ConjugateExpr {
    n: usize,
    include_scalar_conj: bool,
    terms: BTreeMap<usize, f64>,
}

impl ConjugateExpr {
    pub fn new(n: usize, include_scalar_conj: bool) -> Self {
        Self {
            n,
            include_scalar_conj,
            terms: BTreeMap::new(),
        }
    }

    /// The identity expression `1 * d<0>`.
    pub fn identity(n: usize, include_scalar_conj: bool) -> Self {
        Self::new(n, include_scalar_conj).with_term(0, 1.0).unwrap()
    }

    pub fn group_size(&self) -> usize {
        1 << (self.n + usize::from(self.include_scalar_conj))
    }

    pub fn with_term(mut self, g: usize, a: f64) -> Result<Self> {
        self.add_term(g, a)?;
        Ok(self)
    }

    pub fn add_term(&mut self, g: usize, a: f64) -> Result<()> {
        if g >= self.group_size() {
            return Err(Error::IndexOutOfRange {
                value: g,
                width: self.n + usize::from(self.include_scalar_conj),
            });
        }
        if !a.is_finite() {
            return Err(Error::Parse(format!("non-finite coefficient {a}")));
        }
        *self.terms.entry(g).or_insert(0.0) += a;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn include_scalar_conj(&self) -> bool {
        self.include_scalar_conj
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.terms.iter().map(|(&g, &a)| (g, a))
    }

    pub fn coefficient(&self, g: usize) -> f64 {
        self.terms.get(&g).copied().unwrap_or(0.0)
    }

    /// Group-algebra product: XOR convolution of the coefficient vectors.
    /// Used to state formal identities about the diagonalized conjugates.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        if self.n != other.n || self.include_scalar_conj != other.include_scalar_conj {
            return Err(Error::SignatureMismatch);
        }
        let mut out = Self::new(self.n, self.include_scalar_conj);
        for (g, a) in self.terms() {
            for (h, b) in other.terms() {
                out.add_term(compose(g, h), a * b)?;
            }
        }
        Ok(out)
    }

    /// Parses the CLI syntax `a*d<g>[s] [+ a*d<g>[s] ...]`, the optional `s`
    /// suffix marking the scalar-conjugation bit.
    pub fn parse(text: &str, n: usize, include_scalar_conj: bool) -> Result<Self> {
        let mut expr = Self::new(n, include_scalar_conj);
        for raw in text.split('+') {
            let term = raw.trim();
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in `{text}`")));
            }
            let (coeff, group) = match term.split_once('*') {
                Some((c, g)) => (c.trim(), g.trim()),
                None => ("1", term),
            };
            let a: f64 = coeff
                .parse()
                .map_err(|_| Error::Parse(format!("invalid coefficient `{coeff}`")))?;
            let rest = group
                .strip_prefix('d')
                .ok_or_else(|| Error::Parse(format!("expected d<g>, got `{group}`")))?;
            let (digits, scalar_bit) = match rest.strip_suffix('s') {
                Some(d) => (d, true),
                None => (rest, false),
            };
            let mut g: usize = digits
                .parse()
                .map_err(|_| Error::Parse(format!("invalid group index `{digits}`")))?;
            if scalar_bit {
                if !include_scalar_conj {
                    return Err(Error::ScalarConjOnRealField);
                }
                g |= 1 << n;
            }
            expr.add_term(g, a)?;
        }
        Ok(expr)
    }
}

impl std::fmt::Display for ConjugateExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0*d0");
        }
        let mut first = true;
        for (g, a) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            let unit = g & ((1 << self.n) - 1);
            let scalar = self.include_scalar_conj && g >> self.n == 1;
            write!(f, "{a}*d{unit}{}", if scalar { "s" } else { "" })?;
            first = false;
        }
        Ok(())
    }
}

/// Evaluates `x` raised to the expression: the product over terms of
/// `(x^{a_g})` conjugated by `g`. Order is irrelevant by commutativity.
pub fn eval_expr(x: &MultiVector, expr: &ConjugateExpr) -> Result<MultiVector> {
    if expr.n != x.sig().units() {
        return Err(Error::SignatureMismatch);
    }
    if expr.include_scalar_conj && x.sig().field() != Field::Complex {
        return Err(Error::ScalarConjOnRealField);
    }
    let mut acc = MultiVector::one(x.sig().clone());
    for (g, a) in expr.terms() {
        let factor = apply_conj(&power(x, a)?, g)?;
        acc = acc.mul_naive(&factor)?;
    }
    Ok(acc)
}

/// The diagonalized conjugation basis: `2^m` expressions with coefficients
/// `(-1)^{<alpha,g>}/2^m`, where `m = n` plus the optional scalar bit. The
/// `m = 1` case is the familiar pair `(d0+d0s)/2`, `(d0-d0s)/2`.
pub fn diagonal_conjugates(n: usize, include_scalar_conj: bool) -> Result<Vec<ConjugateExpr>> {
    let m = n + usize::from(include_scalar_conj);
    if m > 12 {
        return Err(Error::Capacity(format!(
            "diagonal conjugates need n (plus scalar bit) <= 12, got {m}"
        )));
    }
    let size = 1usize << m;
    let weight = 1.0 / size as f64;
    (0..size)
        .map(|alpha| {
            let mut expr = ConjugateExpr::new(n, include_scalar_conj);
            for g in 0..size {
                expr.add_term(g, hadamard_entry(alpha, g) as f64 * weight)?;
            }
            Ok(expr)
        })
        .collect()
}

/// Generalized polar decomposition: the factors `x^{~d_alpha}` over the
/// diagonalized conjugation basis, whose product reconstructs `x`.
pub fn polar_decompose(x: &MultiVector) -> Result<Vec<MultiVector>> {
    let d = to_diagonal(x)?;
    for (index, c) in d.coords().iter().enumerate() {
        let magnitude = c.abs();
        if magnitude <= INVERT_TOL {
            return Err(Error::NotInvertible { index, magnitude });
        }
    }
    let include_scalar = x.sig().field() == Field::Complex;
    diagonal_conjugates(x.sig().units(), include_scalar)?
        .iter()
        .map(|expr| eval_expr(x, expr))
        .collect()
}
