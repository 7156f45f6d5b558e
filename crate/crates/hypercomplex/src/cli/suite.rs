//! The seeded property suite behind `hxc verify`.
//!
//! Each property samples its own cases from the shared deterministic stream,
//! so a failure reproduces exactly from `(algebra, seed, cases)`. Properties
//! that need a diagonal basis are skipped, with the reason, when the algebra
//! has none.

use crate::algebra::{index, AlgebraSignature};
use crate::conjugate::{apply_conj, compose, group_bits, power};
use crate::diagonal::{
    check_diagonal_conditions, fwht_in_place, idempotents, mul_diagonal, to_diagonal,
};
use crate::element::{MultiVector, Scalar};
use crate::rng::{random_multivector, SplitMix64};

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Pass,
    Fail(String),
    Skip(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyResult {
    pub name: &'static str,
    pub outcome: Outcome,
}

impl PropertyResult {
    fn new(name: &'static str, outcome: Outcome) -> Self {
        Self { name, outcome }
    }
}

/// Runs every property against `sig` and returns one result per property.
pub fn run_suite(
    sig: &AlgebraSignature,
    seed: u64,
    cases: usize,
    tol: f64,
) -> Vec<PropertyResult> {
    let mut rng = SplitMix64::new(seed);
    let report = check_diagonal_conditions(sig);
    let skip_reason = report
        .witness
        .map(|w| format!("no diagonal basis: {w}"))
        .unwrap_or_else(|| "no diagonal basis".to_string());

    let mut results = vec![
        PropertyResult::new("multiplier-oracle-equivalence", oracle_equivalence(sig, &mut rng, cases)),
        PropertyResult::new("xor-index-theorem", xor_index(sig, &mut rng, cases)),
        PropertyResult::new("multiplier-associativity", associativity(sig, &mut rng, cases)),
        PropertyResult::new("hadamard-involution", hadamard_involution(sig, &mut rng)),
    ];

    let diagonal_props: [(&'static str, fn(&AlgebraSignature, &mut SplitMix64, usize, f64) -> Outcome); 3] = [
        ("idempotent-partition", idempotent_partition),
        ("engine-equivalence", engine_equivalence),
        ("conjugate-laws", conjugate_laws),
    ];
    for (name, prop) in diagonal_props {
        let outcome = if report.verdict {
            prop(sig, &mut rng, cases, tol)
        } else {
            Outcome::Skip(skip_reason.clone())
        };
        results.push(PropertyResult::new(name, outcome));
    }
    results
}

fn sample_index(rng: &mut SplitMix64, dim: usize) -> usize {
    rng.below(dim)
}

fn oracle_equivalence(sig: &AlgebraSignature, rng: &mut SplitMix64, cases: usize) -> Outcome {
    for _ in 0..cases {
        let p = sample_index(rng, sig.dim());
        let q = sample_index(rng, sig.dim());
        let (sign, idx) = sig.basis_product_oracle(p, q).unwrap();
        let s = sig.multiplier(p, q).unwrap();
        if sign != s {
            return Outcome::Fail(format!("oracle sign {sign} != multiplier {s} at ({p},{q})"));
        }
        if sign != 0 && idx != index(p, q) {
            return Outcome::Fail(format!("oracle index {idx} != XOR {} at ({p},{q})", index(p, q)));
        }
    }
    Outcome::Pass
}

fn xor_index(sig: &AlgebraSignature, rng: &mut SplitMix64, cases: usize) -> Outcome {
    // basis products through the vector path must land on e_{p XOR q}
    for _ in 0..cases {
        let p = sample_index(rng, sig.dim());
        let q = sample_index(rng, sig.dim());
        let prod = MultiVector::basis(sig.clone(), p)
            .unwrap()
            .mul_naive(&MultiVector::basis(sig.clone(), q).unwrap())
            .unwrap();
        for (k, &c) in prod.coeffs().iter().enumerate() {
            if k != index(p, q) && c.abs() != 0.0 {
                return Outcome::Fail(format!(
                    "e_{p} e_{q} has weight at index {k}, expected only {}",
                    index(p, q)
                ));
            }
        }
    }
    Outcome::Pass
}

fn associativity(sig: &AlgebraSignature, rng: &mut SplitMix64, cases: usize) -> Outcome {
    for _ in 0..cases {
        let p = sample_index(rng, sig.dim());
        let q = sample_index(rng, sig.dim());
        let t = sample_index(rng, sig.dim());
        let lhs = sig.multiplier(p, q).unwrap() * sig.multiplier(p ^ q, t).unwrap();
        let rhs = sig.multiplier(q, t).unwrap() * sig.multiplier(p, q ^ t).unwrap();
        if lhs != rhs {
            return Outcome::Fail(format!("s(p,q)s(p^q,t) != s(q,t)s(p,q^t) at ({p},{q},{t})"));
        }
    }
    Outcome::Pass
}

fn hadamard_involution(sig: &AlgebraSignature, rng: &mut SplitMix64) -> Outcome {
    let dim = sig.dim();
    let v: Vec<Scalar> = (0..dim)
        .map(|_| Scalar::new(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)))
        .collect();
    let mut w = v.clone();
    fwht_in_place(&mut w).unwrap();
    fwht_in_place(&mut w).unwrap();
    for (k, (a, b)) in v.iter().zip(&w).enumerate() {
        if (*a * dim as f64 - *b).abs() > 1e-9 * dim as f64 {
            return Outcome::Fail(format!("H^2 v != 2^n v at component {k}"));
        }
    }
    Outcome::Pass
}

fn idempotent_partition(
    sig: &AlgebraSignature,
    rng: &mut SplitMix64,
    cases: usize,
    tol: f64,
) -> Outcome {
    if sig.units() > 8 {
        return Outcome::Skip(format!(
            "idempotent materialization capped at n <= 8 here, signature has {} units",
            sig.units()
        ));
    }
    let eps = match idempotents(sig) {
        Ok(e) => e,
        Err(err) => return Outcome::Fail(err.to_string()),
    };
    let mut sum = MultiVector::zero(sig.clone());
    for e in &eps {
        sum = sum.add(e).unwrap();
    }
    let one = MultiVector::one(sig.clone());
    if sum.max_deviation(&one).unwrap() > tol {
        return Outcome::Fail("idempotents do not sum to 1".into());
    }
    for _ in 0..cases {
        let p = sample_index(rng, eps.len());
        let q = sample_index(rng, eps.len());
        let prod = eps[p].mul_naive(&eps[q]).unwrap();
        let want = if p == q {
            eps[p].clone()
        } else {
            MultiVector::zero(sig.clone())
        };
        if prod.max_deviation(&want).unwrap() > tol {
            return Outcome::Fail(format!("eps_{p} eps_{q} != delta at ({p},{q})"));
        }
    }
    Outcome::Pass
}

fn engine_equivalence(
    sig: &AlgebraSignature,
    rng: &mut SplitMix64,
    cases: usize,
    tol: f64,
) -> Outcome {
    let pairs = (cases / 10).max(3);
    for _ in 0..pairs {
        let x = random_multivector(sig, rng, false);
        let y = random_multivector(sig, rng, false);
        let naive = x.mul_naive(&y).unwrap();
        let fast = mul_diagonal(&x, &y).unwrap();
        let dev = naive.max_deviation(&fast).unwrap();
        if dev > tol {
            return Outcome::Fail(format!("engines differ by {dev:e} > {tol:e}"));
        }
    }
    Outcome::Pass
}

fn conjugate_laws(
    sig: &AlgebraSignature,
    rng: &mut SplitMix64,
    cases: usize,
    tol: f64,
) -> Outcome {
    let bits = group_bits(sig);
    let group = 1usize << bits;
    let reps = (cases / 10).max(3);
    for _ in 0..reps {
        let x = random_multivector(sig, rng, true);
        let y = random_multivector(sig, rng, true);
        let g = rng.below(group);
        let h = rng.below(group);

        // composition: phi_g(phi_h(x)) = phi_{g XOR h}(x)
        let two_step = apply_conj(&apply_conj(&x, h).unwrap(), g).unwrap();
        let one_step = apply_conj(&x, compose(g, h)).unwrap();
        if two_step.max_deviation(&one_step).unwrap() > tol {
            return Outcome::Fail(format!("phi_{g} . phi_{h} != phi_{}", compose(g, h)));
        }

        // ring morphism: phi_g(xy) = phi_g(x) phi_g(y)
        let lhs = apply_conj(&x.mul_naive(&y).unwrap(), g).unwrap();
        let rhs = apply_conj(&x, g)
            .unwrap()
            .mul_naive(&apply_conj(&y, g).unwrap())
            .unwrap();
        if lhs.max_deviation(&rhs).unwrap() > tol {
            return Outcome::Fail(format!("phi_{g} is not multiplicative"));
        }

        // conjugations permute the diagonal coordinates, so they commute
        // with componentwise powers on positive elements
        let a = rng.uniform(0.3, 1.7);
        let pw = apply_conj(&power(&x, a).unwrap(), g).unwrap();
        let wp = power(&apply_conj(&x, g).unwrap(), a).unwrap();
        if pw.max_deviation(&wp).unwrap() > tol {
            return Outcome::Fail(format!("phi_{g} does not commute with x^{a}"));
        }

        // sanity for the permutation claim itself
        let dx = to_diagonal(&apply_conj(&x, g).unwrap()).unwrap();
        let orig = to_diagonal(&x).unwrap();
        let mut sorted_a: Vec<f64> = dx.coords().iter().map(|c| c.abs()).collect();
        let mut sorted_b: Vec<f64> = orig.coords().iter().map(|c| c.abs()).collect();
        sorted_a.sort_by(f64::total_cmp);
        sorted_b.sort_by(f64::total_cmp);
        let drift = sorted_a
            .iter()
            .zip(&sorted_b)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if drift > tol {
            return Outcome::Fail(format!(
                "phi_{g} changed the diagonal coordinate multiset by {drift:e}"
            ));
        }
    }
    Outcome::Pass
}
