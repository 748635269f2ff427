//! Equality of the real number fields `Q(α)` and `Q(β)`.
//!
//! Discovery is numeric: an integer relation among `β, 1, α, …, α^{d-1}` is
//! sought by lattice reduction at doubling precision. Acceptance is exact and
//! lives in [`verify_membership`], which shares no code with discovery.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::factor::factor_over_q;
use super::lll::integer_relations;
use super::poly::{QPoly, ZPoly};
use super::roots::AlgebraicReal;
use crate::error::{Error, Result};

pub const DEFAULT_HEIGHT_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldStatus {
    Equal,
    NotEqual,
    Unknown,
}

/// Which number was expressed in terms of the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `β = Σ c_k α^k`
    BetaInAlpha,
    /// `α = Σ c_k β^k`
    AlphaInBeta,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldEvidence {
    Membership {
        direction: Direction,
        /// Rational coefficients as `"p/q"` strings, lowest degree first.
        coefficients: Vec<String>,
    },
    DegreeMismatch {
        degree_alpha: usize,
        degree_beta: usize,
    },
    /// Equal fields have discriminants in the same rational square class.
    DiscriminantMismatch {
        discriminant_alpha: String,
        discriminant_beta: String,
    },
    SearchExhausted {
        height_bound: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldEqualityResult {
    pub status: FieldStatus,
    pub alpha_minpoly: String,
    pub beta_minpoly: String,
    pub evidence: FieldEvidence,
    #[serde(skip)]
    pub coefficients: Vec<BigRational>,
}

fn is_irreducible(p: &ZPoly) -> Result<bool> {
    let f = factor_over_q(p)?;
    Ok(f.len() == 1 && f[0].1 == 1)
}

pub fn field_equal(
    alpha: &AlgebraicReal,
    beta: &AlgebraicReal,
    height_bound: u64,
) -> Result<FieldEqualityResult> {
    if !is_irreducible(alpha.minpoly())? || !is_irreducible(beta.minpoly())? {
        return Err(Error::Reducible);
    }
    let base = |status, evidence, coefficients| FieldEqualityResult {
        status,
        alpha_minpoly: alpha.minpoly().to_string(),
        beta_minpoly: beta.minpoly().to_string(),
        evidence,
        coefficients,
    };
    let (da, db) = (alpha.degree(), beta.degree());
    if da != db {
        return Ok(base(
            FieldStatus::NotEqual,
            FieldEvidence::DegreeMismatch {
                degree_alpha: da,
                degree_beta: db,
            },
            vec![],
        ));
    }
    let (disc_a, disc_b) = (
        alpha.minpoly().to_q().discriminant(),
        beta.minpoly().to_q().discriminant(),
    );
    if da > 1 && !is_rational_square(&(&disc_a / &disc_b)) {
        return Ok(base(
            FieldStatus::NotEqual,
            FieldEvidence::DiscriminantMismatch {
                discriminant_alpha: disc_a.to_string(),
                discriminant_beta: disc_b.to_string(),
            },
            vec![],
        ));
    }
    for (direction, x, y) in [
        (Direction::BetaInAlpha, alpha, beta),
        (Direction::AlphaInBeta, beta, alpha),
    ] {
        if let Some(c) = discover_membership(x, y, height_bound) {
            if verify_membership(x, y, &c) {
                let coefficients = c.iter().map(|q| q.to_string()).collect();
                return Ok(base(
                    FieldStatus::Equal,
                    FieldEvidence::Membership {
                        direction,
                        coefficients,
                    },
                    c,
                ));
            }
        }
    }
    Ok(base(
        FieldStatus::Unknown,
        FieldEvidence::SearchExhausted { height_bound },
        vec![],
    ))
}

fn is_rational_square(q: &BigRational) -> bool {
    let square = |n: &BigInt| {
        let r = n.sqrt();
        &r * &r == *n
    };
    !q.is_negative() && square(q.numer()) && square(q.denom())
}

/// Numeric search for `c` with `y = Σ c_k x^k`, `deg x = deg y = d`.
fn discover_membership(
    x: &AlgebraicReal,
    y: &AlgebraicReal,
    height_bound: u64,
) -> Option<Vec<BigRational>> {
    let d = x.degree();
    if d == 1 {
        return y.as_rational().map(|r| vec![r]);
    }
    // A relation of height H among d+1 numbers of size ~2^m shows up once the
    // precision exceeds roughly (d+1)(log H + d m) bits; go one doubling past.
    let height_bits = 64 - height_bound.max(2).leading_zeros();
    let magnitude_bits = magnitude(x).max(magnitude(y));
    let needed = (d as u32 + 1) * (height_bits + d as u32 * magnitude_bits) + 64;
    let bound = BigInt::from(height_bound);
    let mut xr = x.clone();
    let mut yr = y.clone();
    let mut previous: Option<Vec<BigRational>> = None;
    let mut bits = 64u32;
    while bits <= 2 * needed {
        let guard = bits + 16 + d as u32 * magnitude_bits;
        xr = xr.refined_bits(guard);
        yr = yr.refined_bits(guard);
        let candidate = relation_at(&xr, &yr, d, bits, &bound);
        if candidate.is_some() && candidate == previous && verify_membership(x, y, candidate.as_ref().unwrap()) {
            return candidate;
        }
        previous = candidate;
        bits *= 2;
    }
    None
}

fn magnitude(x: &AlgebraicReal) -> u32 {
    x.hi().abs().max(x.lo().abs()).ceil().to_integer().bits() as u32 + 1
}

fn relation_at(
    x: &AlgebraicReal,
    y: &AlgebraicReal,
    d: usize,
    bits: u32,
    bound: &BigInt,
) -> Option<Vec<BigRational>> {
    let xa = x.interval().mid();
    let ya = y.interval().mid();
    let scale = BigRational::from_integer(BigInt::one() << bits);
    let mut values = vec![ya];
    let mut p = BigRational::one();
    for _ in 0..d {
        values.push(p.clone());
        p *= &xa;
    }
    let scaled: Vec<BigInt> = values
        .iter()
        .map(|v| (v * &scale).round().to_integer())
        .collect();
    for rel in integer_relations(&scaled) {
        if rel[0].is_zero() {
            continue;
        }
        let lead = rel[0].clone();
        let c: Vec<BigRational> = rel[1..]
            .iter()
            .map(|a| BigRational::new(-a.clone(), lead.clone()))
            .collect();
        let within = c
            .iter()
            .all(|q| q.numer().abs() <= *bound && q.denom().abs() <= *bound);
        return within.then_some(c);
    }
    None
}

/// Exact check that `y = Σ c_k x^k`: the polynomial `q = Σ c_k t^k` must send
/// the minimal polynomial of `y` to zero modulo that of `x`, and `q(x)` must
/// land in the isolating interval of `y`.
pub fn verify_membership(x: &AlgebraicReal, y: &AlgebraicReal, c: &[BigRational]) -> bool {
    let q = QPoly::new(c.to_vec());
    let mx = x.minpoly().to_q();
    let my = y.minpoly().to_q();
    if !my.compose_mod(&q, &mx).is_zero() {
        return false;
    }
    // q(x) is a root of my; it is y iff it lies in y's isolating interval.
    let target = y.interval();
    let mut xr = x.clone();
    for _ in 0..4096 {
        let enc = xr.interval().eval(&q);
        if enc.inside(target) {
            return true;
        }
        if enc.below(target) || target.below(&enc) {
            return false;
        }
        let w = xr.interval().width();
        if w.is_zero() {
            return false;
        }
        xr = xr.refined(&(w / BigRational::from_integer(2.into())));
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::IntMatrix;
    use crate::algebra::roots::{perron_root, real_roots_irreducible};

    fn golden() -> AlgebraicReal {
        perron_root(&IntMatrix::from_i64(&[&[1, 1], &[1, 0]])).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn reflexive_identity_certificate() {
        let g = golden();
        let r = field_equal(&g, &g, DEFAULT_HEIGHT_BOUND).unwrap();
        assert_eq!(r.status, FieldStatus::Equal);
        assert_eq!(r.coefficients, vec![q(0, 1), q(1, 1)]);
    }

    #[test]
    fn golden_square_is_one_plus_golden() {
        let g = golden();
        let b = perron_root(&IntMatrix::from_i64(&[&[2, 1], &[1, 1]])).unwrap();
        let r = field_equal(&g, &b, DEFAULT_HEIGHT_BOUND).unwrap();
        assert_eq!(r.status, FieldStatus::Equal);
        assert_eq!(r.coefficients, vec![q(1, 1), q(1, 1)]);
        assert!(verify_membership(&g, &b, &r.coefficients));
    }

    #[test]
    fn degree_obstruction() {
        let two = AlgebraicReal::rational(q(2, 1));
        let r = field_equal(&golden(), &two, DEFAULT_HEIGHT_BOUND).unwrap();
        assert_eq!(r.status, FieldStatus::NotEqual);
        assert_eq!(
            r.evidence,
            FieldEvidence::DegreeMismatch {
                degree_alpha: 2,
                degree_beta: 1
            }
        );
    }

    #[test]
    fn wrong_conjugate_is_rejected() {
        // 1 - φ is the other root of x^2 - x - 1; the identity map does not reach it.
        let roots = real_roots_irreducible(&ZPoly::from_i64(&[-1, -1, 1]));
        let (neg, pos) = (&roots[0], &roots[1]);
        assert!(!verify_membership(pos, neg, &[q(0, 1), q(1, 1)]));
        assert!(verify_membership(pos, neg, &[q(1, 1), q(-1, 1)]));
    }

    #[test]
    fn distinct_quadratic_fields_by_discriminant() {
        // Discriminants 8 and 12: the ratio 2/3 is not a square.
        let s2 = real_roots_irreducible(&ZPoly::from_i64(&[-2, 0, 1])).pop().unwrap();
        let s3 = real_roots_irreducible(&ZPoly::from_i64(&[-3, 0, 1])).pop().unwrap();
        let r = field_equal(&s2, &s3, 1000).unwrap();
        assert_eq!(r.status, FieldStatus::NotEqual);
        assert!(matches!(r.evidence, FieldEvidence::DiscriminantMismatch { .. }));
        // √2 and √8 = 2√2: discriminants 8 and 32 agree up to squares.
        let s8 = real_roots_irreducible(&ZPoly::from_i64(&[-8, 0, 1])).pop().unwrap();
        assert_eq!(field_equal(&s2, &s8, 1000).unwrap().status, FieldStatus::Equal);
    }

    #[test]
    fn same_square_class_without_relation_is_unknown() {
        // √2 against 1 + 10^7·√2: equal fields, relation beyond the height bound.
        let s2 = real_roots_irreducible(&ZPoly::from_i64(&[-2, 0, 1])).pop().unwrap();
        // (x - 1)^2 = 2·10^14  ->  x^2 - 2x + 1 - 2·10^14.
        let far = real_roots_irreducible(&ZPoly::from_i64(&[1 - 200_000_000_000_000, -2, 1]))
            .pop()
            .unwrap();
        let r = field_equal(&s2, &far, 1000).unwrap();
        assert_eq!(r.status, FieldStatus::Unknown);
        assert_eq!(r.evidence, FieldEvidence::SearchExhausted { height_bound: 1000 });
    }

    #[test]
    fn cubic_relation_found() {
        // β = α^2 + 1 with α the real root of x^3 - x - 1.
        let alpha = real_roots_irreducible(&ZPoly::from_i64(&[-1, -1, 0, 1])).pop().unwrap();
        // Minimal polynomial of α^2 + 1, from the resultant: y^3 - 5y^2 + 8y - 5.
        let beta = real_roots_irreducible(&ZPoly::from_i64(&[-5, 8, -5, 1])).pop().unwrap();
        let r = field_equal(&alpha, &beta, DEFAULT_HEIGHT_BOUND).unwrap();
        assert_eq!(r.status, FieldStatus::Equal);
        assert_eq!(r.coefficients, vec![q(1, 1), q(0, 1), q(1, 1)]);
    }

    #[test]
    fn reducible_input_rejected() {
        let p = ZPoly::from_i64(&[2, -3, 1]);
        let fake = AlgebraicReal::new(p, q(3, 2), q(5, 2));
        assert!(fake.is_ok());
        let r = field_equal(&fake.unwrap(), &golden(), 10);
        assert_eq!(r, Err(Error::Reducible));
    }
}
