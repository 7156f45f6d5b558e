//! Algebra signatures, the multiplier/index functions, dense multiplication
//! tables and the named presets.
//!
//! A hypercomplex algebra is described by its number of principal units `n`,
//! the square of each unit (`-1`, `0` or `+1`), a commutation constant
//! `lambda` (`u_i u_j = lambda u_j u_i` for distinct units) and a scalar field
//! tag. On the standard basis `e_p = prod u_{k+1}^{p_k}` the product is
//! `e_p e_q = s(p,q) e_{p XOR q}`: the index function is always the bitwise
//! XOR, and the multiplier `s` is computed from popcounts alone.

use serde::{Deserialize, Serialize};

use crate::bitops::{self, MAX_UNITS};
use crate::error::{Error, Result};

/// Scalar field of an algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

/// A hypercomplex algebra signature: unit squares, commutation constant and
/// scalar field. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraSignature {
    squares: Vec<i8>,
    lambda: i8,
    field: Field,
}

impl AlgebraSignature {
    /// Builds a signature, validating the unit count, every square and the
    /// commutation constant.
    pub fn new(squares: Vec<i8>, lambda: i8, field: Field) -> Result<Self> {
        if squares.len() > MAX_UNITS {
            return Err(Error::TooManyUnits(squares.len()));
        }
        if lambda != 1 && lambda != -1 {
            return Err(Error::InvalidLambda(lambda));
        }
        for (position, &value) in squares.iter().enumerate() {
            if !(-1..=1).contains(&value) {
                return Err(Error::InvalidSquare { position, value });
            }
        }
        Ok(Self {
            squares,
            lambda,
            field,
        })
    }

    /// Number of principal units.
    pub fn units(&self) -> usize {
        self.squares.len()
    }

    /// Dimension of the standard basis, `2^n`.
    pub fn dim(&self) -> usize {
        1 << self.squares.len()
    }

    /// Per-unit squares `u_{k+1}^2`.
    pub fn squares(&self) -> &[i8] {
        &self.squares
    }

    /// Commutation constant, `+1` or `-1`.
    pub fn lambda(&self) -> i8 {
        self.lambda
    }

    pub fn field(&self) -> Field {
        self.field
    }

    fn check_index(&self, p: usize) -> Result<()> {
        if p >= self.dim() {
            return Err(Error::IndexOutOfRange {
                value: p,
                width: self.units(),
            });
        }
        Ok(())
    }

    /// The multiplier `s(p,q) = c(p,q) lambda^alpha(p,q)` where `c` collects
    /// the squares of the units shared by `p` and `q` and `alpha` counts the
    /// commutations needed to interleave the unit lists.
    pub fn multiplier(&self, p: usize, q: usize) -> Result<i8> {
        self.check_index(p)?;
        self.check_index(q)?;
        let mut sign: i8 = 1;
        let mut shared = p & q;
        while shared != 0 {
            let i = shared.trailing_zeros() as usize;
            let beta = self.squares[i];
            if beta == 0 {
                return Ok(0);
            }
            sign *= beta;
            shared &= shared - 1;
        }
        if self.lambda == -1 && bitops::swap_count(p, q) % 2 == 1 {
            sign = -sign;
        }
        Ok(sign)
    }

    /// Independent symbolic re-derivation of the basis product.
    ///
    /// Concatenates the unit lists of `e_p` and `e_q`, bubble-sorts the
    /// result counting adjacent transpositions of distinct units (a factor
    /// `lambda` each), then cancels adjacent equal pairs (a factor `u_i^2`
    /// each). Must agree with [`Self::multiplier`] and XOR on every input;
    /// the equality is tested, never assumed.
    pub fn basis_product_oracle(&self, p: usize, q: usize) -> Result<(i8, usize)> {
        self.check_index(p)?;
        self.check_index(q)?;
        let mut units: Vec<usize> = (0..self.units())
            .filter(|i| p >> i & 1 == 1)
            .chain((0..self.units()).filter(|i| q >> i & 1 == 1))
            .collect();

        let mut swaps = 0usize;
        let len = units.len();
        for _ in 0..len {
            for j in 1..len {
                if units[j - 1] > units[j] {
                    units.swap(j - 1, j);
                    swaps += 1;
                }
            }
        }

        let mut sign: i8 = if self.lambda == -1 && swaps % 2 == 1 {
            -1
        } else {
            1
        };
        let mut survivors = 0usize;
        let mut j = 0;
        while j < units.len() {
            if j + 1 < units.len() && units[j] == units[j + 1] {
                sign *= self.squares[units[j]];
                j += 2;
            } else {
                survivors |= 1 << units[j];
                j += 1;
            }
        }
        if sign == 0 {
            // zero annihilates the surviving units as well
            return Ok((0, p ^ q));
        }
        Ok((sign, survivors))
    }

    /// Materializes the dense `s` and `r` tables.
    pub fn tables(&self) -> Result<MulTables> {
        if self.units() > 12 {
            return Err(Error::Capacity(format!(
                "dense tables need n <= 12, signature has {} units",
                self.units()
            )));
        }
        let dim = self.dim();
        let mut s = vec![vec![0i8; dim]; dim];
        let mut r = vec![vec![0usize; dim]; dim];
        for p in 0..dim {
            for q in 0..dim {
                s[p][q] = self.multiplier(p, q)?;
                r[p][q] = index(p, q);
            }
        }
        Ok(MulTables { dim, s, r })
    }

    /// Counts the basis elements whose square is `+1`, `-1` and `0`.
    pub fn count_squares(&self) -> (usize, usize, usize) {
        let (mut plus, mut minus, mut zero) = (0, 0, 0);
        for p in 0..self.dim() {
            match self.multiplier(p, p).expect("p < dim") {
                1 => plus += 1,
                -1 => minus += 1,
                _ => zero += 1,
            }
        }
        (plus, minus, zero)
    }
}

/// The index function: `r(p,q) = p XOR q` on the standard basis.
#[inline]
pub fn index(p: usize, q: usize) -> usize {
    p ^ q
}

/// Dense multiplier and index tables of a signature.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MulTables {
    pub dim: usize,
    pub s: Vec<Vec<i8>>,
    pub r: Vec<Vec<usize>>,
}

/// Serialized form of a signature, used by the CLI's algebra spec files.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SignatureSpec {
    pub n: usize,
    pub lambda: i8,
    pub squares: Vec<i8>,
    pub field: Field,
}

impl SignatureSpec {
    pub fn into_signature(self) -> Result<AlgebraSignature> {
        if self.squares.len() != self.n {
            return Err(Error::SquaresLength {
                got: self.squares.len(),
                expected: self.n,
            });
        }
        AlgebraSignature::new(self.squares, self.lambda, self.field)
    }

    pub fn from_signature(sig: &AlgebraSignature) -> Self {
        Self {
            n: sig.units(),
            lambda: sig.lambda(),
            squares: sig.squares().to_vec(),
            field: sig.field(),
        }
    }
}

/// Resolves a preset name to a signature.
///
/// Accepted names: `complex`, `split_complex`, `dual`, `bicomplex`,
/// `cl(a,b)`, `m(a,b)` (real field), `m(a,b,real|complex)`, `d(n)`
/// (multiperplex) and `m(n)` (multicomplex).
///
/// `quaternion` is rejected: the quaternion table ships as hard-coded golden
/// reference data ([`quaternion_tables`]) rather than as a signature, so the
/// signature path never special-cases it.
pub fn preset(name: &str) -> Result<AlgebraSignature> {
    let name = name.trim();
    match name {
        "complex" => return AlgebraSignature::new(vec![-1], 1, Field::Real),
        "split_complex" | "split-complex" => {
            return AlgebraSignature::new(vec![1], 1, Field::Real)
        }
        "dual" => return AlgebraSignature::new(vec![0], 1, Field::Real),
        "bicomplex" => return AlgebraSignature::new(vec![-1, -1], 1, Field::Real),
        "quaternion" => return Err(Error::QuaternionNotASignature),
        _ => {}
    }

    let (head, args) = parse_call(name)?;
    match (head, args.as_slice()) {
        ("d", [n]) => {
            let n = parse_count(n)?;
            AlgebraSignature::new(vec![1; n], 1, Field::Real)
        }
        ("m", [n]) => {
            let n = parse_count(n)?;
            AlgebraSignature::new(vec![1; n], 1, Field::Complex)
        }
        ("m", [a, b]) => signature_ab(a, b, Field::Real),
        ("m", [a, b, field]) => {
            let field = match *field {
                "real" => Field::Real,
                "complex" => Field::Complex,
                other => return Err(Error::UnknownAlgebra(other.to_string())),
            };
            signature_ab(a, b, field)
        }
        // imaginary units first, matching the Cl(1,1) basis {1, i, j, ij}
        ("cl", [a, b]) => {
            let a = parse_count(a)?;
            let b = parse_count(b)?;
            let mut squares = vec![-1i8; b];
            squares.extend(std::iter::repeat(1i8).take(a));
            AlgebraSignature::new(squares, -1, Field::Real)
        }
        _ => Err(Error::UnknownAlgebra(name.to_string())),
    }
}

fn signature_ab(a: &str, b: &str, field: Field) -> Result<AlgebraSignature> {
    let a = parse_count(a)?;
    let b = parse_count(b)?;
    let mut squares = vec![1i8; a];
    squares.extend(std::iter::repeat(-1i8).take(b));
    AlgebraSignature::new(squares, 1, field)
}

fn parse_call(name: &str) -> Result<(&str, Vec<&str>)> {
    let open = name
        .find('(')
        .ok_or_else(|| Error::UnknownAlgebra(name.to_string()))?;
    if !name.ends_with(')') {
        return Err(Error::UnknownAlgebra(name.to_string()));
    }
    let head = &name[..open];
    let inner = &name[open + 1..name.len() - 1];
    Ok((head, inner.split(',').map(str::trim).collect()))
}

fn parse_count(text: &str) -> Result<usize> {
    text.parse()
        .map_err(|_| Error::Parse(format!("expected a unit count, got `{text}`")))
}

/// The quaternion `s`/`r` tables, hard-coded golden data.
///
/// The index table is XOR like every hypercomplex algebra. The sign table is
/// transcribed from the classical `i,j,k` relations rather than derived, so
/// it can anchor the derived path in tests.
pub fn quaternion_tables() -> MulTables {
    let s = vec![
        vec![1, 1, 1, 1],
        vec![1, -1, 1, -1],
        vec![1, -1, -1, 1],
        vec![1, 1, -1, -1],
    ];
    let r = (0..4).map(|p| (0..4).map(|q| p ^ q).collect()).collect();
    MulTables { dim: 4, s, r }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signature_validation() {
        assert!(AlgebraSignature::new(vec![2], 1, Field::Real).is_err());
        assert!(AlgebraSignature::new(vec![1], 0, Field::Real).is_err());
        assert!(AlgebraSignature::new(vec![1; 25], 1, Field::Real).is_err());
        assert!(AlgebraSignature::new(vec![-1, 0, 1], -1, Field::Real).is_ok());
    }

    #[test]
    fn multiplier_examples() {
        // quaternion-table signs come out of Cl(0,2)
        let cl02 = preset("cl(0,2)").unwrap();
        assert_eq!(cl02.multiplier(1, 2).unwrap(), 1);
        assert_eq!(cl02.multiplier(2, 1).unwrap(), -1);

        let dual = preset("dual").unwrap();
        assert_eq!(dual.multiplier(1, 1).unwrap(), 0);

        let bicomplex = preset("bicomplex").unwrap();
        assert_eq!(bicomplex.multiplier(3, 3).unwrap(), 1);

        for sig in [&cl02, &bicomplex] {
            for p in 0..sig.dim() {
                assert_eq!(sig.multiplier(p, 0).unwrap(), 1);
                assert_eq!(sig.multiplier(0, p).unwrap(), 1);
            }
        }
        assert!(cl02.multiplier(4, 0).is_err());
    }

    #[test]
    fn index_examples() {
        assert_eq!(index(1, 2), 3);
        for p in 0..16 {
            assert_eq!(index(p, p), 0);
            assert_eq!(index(p, 0), p);
        }
    }

    #[test]
    fn oracle_on_known_cases() {
        let cl11 = preset("cl(1,1)").unwrap();
        assert_eq!(cl11.basis_product_oracle(3, 3).unwrap(), (1, 0));
        let d2 = preset("d(2)").unwrap();
        assert_eq!(d2.basis_product_oracle(0, 0).unwrap(), (1, 0));
    }

    #[test]
    fn oracle_matches_formula_exhaustively() {
        // every lambda and square pattern over {-1,0,1} for n <= 3,
        // both fields are equivalent here
        for n in 0..=3usize {
            let patterns = 3usize.pow(n as u32);
            for lambda in [1i8, -1] {
                for code in 0..patterns {
                    let mut c = code;
                    let squares: Vec<i8> = (0..n)
                        .map(|_| {
                            let v = (c % 3) as i8 - 1;
                            c /= 3;
                            v
                        })
                        .collect();
                    let sig = AlgebraSignature::new(squares, lambda, Field::Real).unwrap();
                    for p in 0..sig.dim() {
                        for q in 0..sig.dim() {
                            let (sign, idx) = sig.basis_product_oracle(p, q).unwrap();
                            assert_eq!(sign, sig.multiplier(p, q).unwrap());
                            if sign != 0 {
                                assert_eq!(idx, index(p, q));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn associativity_of_multiplier() {
        for (name, _) in [("cl(2,1)", ()), ("m(1,2)", ()), ("dual", ())] {
            let sig = preset(name).unwrap();
            for p in 0..sig.dim() {
                for q in 0..sig.dim() {
                    for t in 0..sig.dim() {
                        let lhs = sig.multiplier(p, q).unwrap()
                            * sig.multiplier(p ^ q, t).unwrap();
                        let rhs = sig.multiplier(q, t).unwrap()
                            * sig.multiplier(p, q ^ t).unwrap();
                        assert_eq!(lhs, rhs, "{name} p={p} q={q} t={t}");
                    }
                }
            }
        }
    }

    #[test]
    fn commutative_symmetry_and_all_plus() {
        let d3 = preset("d(3)").unwrap();
        for p in 0..8 {
            for q in 0..8 {
                assert_eq!(d3.multiplier(p, q).unwrap(), 1);
            }
        }
        let m03 = preset("m(0,3)").unwrap();
        for p in 0..8 {
            for q in 0..8 {
                assert_eq!(
                    m03.multiplier(p, q).unwrap(),
                    m03.multiplier(q, p).unwrap()
                );
                assert_ne!(m03.multiplier(p, q).unwrap(), 0);
            }
        }
    }

    #[test]
    fn preset_examples() {
        let bi = preset("bicomplex").unwrap();
        assert_eq!(bi.squares(), &[-1, -1]);
        assert_eq!(bi.lambda(), 1);
        assert_eq!(bi.field(), Field::Real);

        let d3 = preset("d(3)").unwrap();
        assert_eq!(d3.squares(), &[1, 1, 1]);
        assert_eq!(d3.lambda(), 1);

        let cl11 = preset("cl(1,1)").unwrap();
        assert_eq!(cl11.squares(), &[-1, 1]);
        assert_eq!(cl11.lambda(), -1);

        assert!(matches!(
            preset("quaternion"),
            Err(Error::QuaternionNotASignature)
        ));
        assert!(preset("nonsense").is_err());
        assert_eq!(preset("m(2)").unwrap().field(), Field::Complex);
        assert_eq!(preset("m(0,2,complex)").unwrap().field(), Field::Complex);
    }

    #[test]
    fn cl11_reproduces_reference_tables() {
        let t = preset("cl(1,1)").unwrap().tables().unwrap();
        assert_eq!(
            t.s,
            vec![
                vec![1, 1, 1, 1],
                vec![1, -1, 1, -1],
                vec![1, -1, 1, -1],
                vec![1, 1, 1, 1],
            ]
        );
    }

    #[test]
    fn count_squares_examples() {
        assert_eq!(preset("m(0,3)").unwrap().count_squares(), (4, 4, 0));
        assert_eq!(preset("d(4)").unwrap().count_squares(), (16, 0, 0));
        assert_eq!(
            preset("m(2,1)").unwrap().count_squares(),
            preset("m(0,3)").unwrap().count_squares()
        );
    }

    #[test]
    fn tables_capacity() {
        assert!(preset("d(13)").unwrap().tables().is_err());
    }
}
