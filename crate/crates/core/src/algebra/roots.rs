//! Real algebraic numbers isolated by Sturm sequences over the rationals.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::factor::factor_over_q;
use super::interval::{dyadic_width, format_decimal, Interval};
use super::matrix::IntMatrix;
use super::poly::{QPoly, ZPoly};
use crate::error::{Error, Result};

/// Default isolation width `2^-64`.
pub const DEFAULT_WIDTH_BITS: u32 = 64;

/// Sturm chain of a squarefree polynomial.
#[derive(Debug, Clone)]
pub struct SturmSequence {
    chain: Vec<QPoly>,
}

impl SturmSequence {
    pub fn new(p: &ZPoly) -> Self {
        let p0 = p.to_q();
        let p1 = p0.derivative();
        let mut chain = vec![p0, p1];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.scale(&-BigRational::from_integer(1.into())));
        }
        SturmSequence { chain }
    }

    fn variations(&self, x: &BigRational) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for p in &self.chain {
            let v = p.eval(x);
            let s = if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            };
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }

    /// Number of distinct real roots in the closed interval `[a, b]`.
    pub fn count_closed(&self, a: &BigRational, b: &BigRational) -> usize {
        let at_a = usize::from(self.chain[0].eval(a).is_zero());
        self.count(a, b) + at_a
    }
}

/// A real root of an irreducible primitive integer polynomial, together with
/// a rational interval containing no other root of that polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraicReal {
    minpoly: ZPoly,
    interval: Interval,
}

impl AlgebraicReal {
    /// Wraps an isolating interval after checking it holds exactly one root.
    pub fn new(minpoly: ZPoly, lo: BigRational, hi: BigRational) -> Result<Self> {
        let minpoly = minpoly.primitive();
        if minpoly.degree() == 0 {
            return Err(Error::Precondition("minimal polynomial must be nonconstant".into()));
        }
        if lo > hi {
            return Err(Error::Precondition("empty isolating interval".into()));
        }
        let sturm = SturmSequence::new(&minpoly);
        if sturm.count_closed(&lo, &hi) != 1 {
            return Err(Error::Precondition(
                "interval does not isolate exactly one root".into(),
            ));
        }
        Ok(AlgebraicReal {
            minpoly,
            interval: Interval::new(lo, hi),
        })
    }

    pub fn rational(r: BigRational) -> Self {
        AlgebraicReal {
            minpoly: ZPoly::linear_root(&r).primitive(),
            interval: Interval::point(r),
        }
    }

    pub fn minpoly(&self) -> &ZPoly {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree()
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    pub fn lo(&self) -> &BigRational {
        &self.interval.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.interval.hi
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        (self.degree() == 1).then(|| BigRational::new(-self.minpoly.coeff(0), self.minpoly.coeff(1)))
    }

    /// Halves the isolating interval once.
    fn bisect(&mut self) {
        if self.interval.lo == self.interval.hi {
            return;
        }
        if let Some(r) = self.as_rational() {
            self.interval = Interval::point(r);
            return;
        }
        let mid = self.interval.mid();
        let f_mid = self.minpoly.eval(&mid);
        if f_mid.is_zero() {
            self.interval = Interval::point(mid);
            return;
        }
        let f_lo = self.minpoly.eval(&self.interval.lo);
        if f_lo.is_zero() {
            self.interval = Interval::point(self.interval.lo.clone());
        } else if f_lo.is_positive() != f_mid.is_positive() {
            self.interval.hi = mid;
        } else {
            self.interval.lo = mid;
        }
    }

    /// A copy whose isolating interval has width at most `width`.
    pub fn refined(&self, width: &BigRational) -> AlgebraicReal {
        let mut out = self.clone();
        while out.interval.width() > *width {
            out.bisect();
        }
        out
    }

    pub fn refined_bits(&self, bits: u32) -> AlgebraicReal {
        self.refined(&dyadic_width(bits))
    }

    pub fn to_f64(&self) -> f64 {
        super::interval::to_f64(&self.refined_bits(60).interval.mid())
    }

    pub fn to_decimal(&self, digits: usize) -> String {
        let w = BigRational::new(1.into(), BigInt::from(10).pow(digits as u32 + 3));
        format_decimal(&self.refined(&w).interval.mid(), digits)
    }

    /// Sign of `q(self)`, exact: zero iff the minimal polynomial divides `q`.
    pub fn sign_of(&self, q: &QPoly) -> Ordering {
        if q.rem(&self.minpoly.to_q()).is_zero() {
            return Ordering::Equal;
        }
        let mut a = self.clone();
        loop {
            let v = a.interval.eval(q);
            if v.lo.is_positive() {
                return Ordering::Greater;
            }
            if v.hi.is_negative() {
                return Ordering::Less;
            }
            a.bisect();
        }
    }

    /// Exact comparison of two real algebraic numbers.
    pub fn cmp_value(&self, other: &AlgebraicReal) -> Ordering {
        let mut a = self.clone();
        let mut b = other.clone();
        loop {
            if a.interval.below(&b.interval) {
                return Ordering::Less;
            }
            if b.interval.below(&a.interval) {
                return Ordering::Greater;
            }
            if a.minpoly == b.minpoly {
                let lo = a.lo().max(b.lo()).clone();
                let hi = a.hi().min(b.hi()).clone();
                if SturmSequence::new(&a.minpoly).count_closed(&lo, &hi) >= 1 {
                    return Ordering::Equal;
                }
            }
            a.bisect();
            b.bisect();
        }
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "root of {} in [{}, {}]",
            self.minpoly, self.interval.lo, self.interval.hi
        )
    }
}

/// All real roots of an irreducible polynomial, in increasing order.
pub fn real_roots_irreducible(p: &ZPoly) -> Vec<AlgebraicReal> {
    let p = p.primitive();
    if p.degree() == 1 {
        return vec![AlgebraicReal::rational(BigRational::new(-p.coeff(0), p.coeff(1)))];
    }
    let sturm = SturmSequence::new(&p);
    let b = p.cauchy_bound();
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        match sturm.count(&lo, &hi) {
            0 => {}
            1 => out.push(AlgebraicReal {
                minpoly: p.clone(),
                interval: Interval::new(lo, hi),
            }),
            _ => {
                let mid = (&lo + &hi) / BigRational::from_integer(2.into());
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort_by(|a, b| a.lo().cmp(b.lo()));
    out
}

/// Largest real root of a nonzero integer polynomial, with its minimal polynomial.
pub fn largest_real_root(p: &ZPoly) -> Result<Option<AlgebraicReal>> {
    let mut best: Option<AlgebraicReal> = None;
    for (f, _) in factor_over_q(p)? {
        if let Some(r) = real_roots_irreducible(&f).pop() {
            best = match best {
                Some(b) if b.cmp_value(&r) != Ordering::Less => Some(b),
                _ => Some(r),
            };
        }
    }
    Ok(best)
}

/// Spectral radius of a nonnegative square matrix, which Perron-Frobenius
/// guarantees is its largest real eigenvalue.
pub fn spectral_radius(a: &IntMatrix) -> Result<AlgebraicReal> {
    if !a.is_square() {
        return Err(Error::SizeMismatch("spectral radius of a non-square matrix".into()));
    }
    if !a.is_nonnegative() {
        return Err(Error::NegativeEntry);
    }
    let cp = a.char_poly()?;
    let root = largest_real_root(&cp)?
        .ok_or_else(|| Error::Internal("nonnegative matrix without a real eigenvalue".into()))?;
    Ok(root.refined_bits(DEFAULT_WIDTH_BITS))
}

/// Perron eigenvalue of an aperiodic nonnegative integer matrix.
pub fn perron_root(a: &IntMatrix) -> Result<AlgebraicReal> {
    if !a.is_aperiodic()? {
        return Err(Error::NotAperiodic);
    }
    spectral_radius(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn golden_perron_root() {
        let a = IntMatrix::from_i64(&[&[1, 1], &[1, 0]]);
        let r = perron_root(&a).unwrap();
        assert_eq!(r.minpoly(), &ZPoly::from_i64(&[-1, -1, 1]));
        // Quadratic formula: (1 + sqrt 5) / 2.
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((r.to_f64() - golden).abs() < 1e-12);
        assert!(r.interval().width() <= dyadic_width(64));
    }

    #[test]
    fn integer_perron_root() {
        let r = perron_root(&IntMatrix::from_i64(&[&[2]])).unwrap();
        assert_eq!(r.minpoly(), &ZPoly::from_i64(&[-2, 1]));
        assert_eq!(r.as_rational(), Some(q(2, 1)));
    }

    #[test]
    fn golden_square_perron_root() {
        let r = perron_root(&IntMatrix::from_i64(&[&[2, 1], &[1, 1]])).unwrap();
        assert_eq!(r.minpoly(), &ZPoly::from_i64(&[1, -3, 1]));
        let want = (3.0 + 5f64.sqrt()) / 2.0;
        assert!((r.to_f64() - want).abs() < 1e-12);
    }

    #[test]
    fn periodic_matrix_refused() {
        let a = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(perron_root(&a), Err(Error::NotAperiodic));
        // The spectral radius is still available.
        assert_eq!(spectral_radius(&a).unwrap().as_rational(), Some(q(1, 1)));
    }

    #[test]
    fn sturm_counts() {
        // (x^2 - 2) has roots +-1.414...
        let p = ZPoly::from_i64(&[-2, 0, 1]);
        let s = SturmSequence::new(&p);
        assert_eq!(s.count(&q(-2, 1), &q(2, 1)), 2);
        assert_eq!(s.count(&q(0, 1), &q(2, 1)), 1);
        assert_eq!(real_roots_irreducible(&p).len(), 2);
    }

    #[test]
    fn comparison_and_signs() {
        let sqrt2 = real_roots_irreducible(&ZPoly::from_i64(&[-2, 0, 1])).pop().unwrap();
        let golden = real_roots_irreducible(&ZPoly::from_i64(&[-1, -1, 1])).pop().unwrap();
        assert_eq!(sqrt2.cmp_value(&golden), Ordering::Less);
        assert_eq!(golden.cmp_value(&golden.refined_bits(80)), Ordering::Equal);
        // golden - 1.5 > 0, x^2 - x - 1 vanishes.
        let shifted = ZPoly::from_i64(&[-3, 2]).to_q();
        assert_eq!(golden.sign_of(&shifted), Ordering::Greater);
        assert_eq!(golden.sign_of(&golden.minpoly().to_q()), Ordering::Equal);
    }

    #[test]
    fn isolating_interval_checked() {
        let p = ZPoly::from_i64(&[-2, 0, 1]);
        assert!(AlgebraicReal::new(p.clone(), q(-2, 1), q(2, 1)).is_err());
        assert!(AlgebraicReal::new(p, q(1, 1), q(2, 1)).is_ok());
    }
}
