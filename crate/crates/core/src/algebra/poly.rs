//! Dense univariate polynomials over the integers and the rationals.
//!
//! Coefficients are stored in ascending degree order with no trailing zeros;
//! the zero polynomial has an empty coefficient vector.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

fn trim<T: Zero>(v: &mut Vec<T>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        trim(&mut coeffs);
        ZPoly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        ZPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `x - r` scaled to integers for rational `r = p/q`: `q x - p`.
    pub fn linear_root(r: &BigRational) -> Self {
        ZPoly::new(vec![-r.numer().clone(), r.denom().clone()])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lead().is_negative() {
            g = -g;
        }
        ZPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn derivative(&self) -> Self {
        ZPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn to_q(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .cloned()
                .map(BigRational::from_integer)
                .collect(),
        )
    }

    /// Exact quotient if `d` divides `self` over the integers.
    pub fn div_exact(&self, d: &ZPoly) -> Option<ZPoly> {
        let (q, r) = self.to_q().div_rem(&d.to_q());
        if !r.is_zero() {
            return None;
        }
        let mut out = Vec::with_capacity(q.coeffs().len());
        for c in q.coeffs() {
            if !c.is_integer() {
                return None;
            }
            out.push(c.to_integer());
        }
        Some(ZPoly::new(out))
    }

    pub fn pow(&self, k: u32) -> ZPoly {
        let mut acc = ZPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean 2-norm bound `ceil(sqrt(sum c_i^2))`.
    pub fn norm2_ceil(&self) -> BigInt {
        let s: BigInt = self.coeffs.iter().map(|c| c * c).sum();
        let r = s.sqrt();
        if &r * &r == s {
            r
        } else {
            r + 1
        }
    }

    /// Cauchy bound: every complex root has modulus strictly below the result.
    pub fn cauchy_bound(&self) -> BigRational {
        let lead = BigRational::from_integer(self.lead().abs());
        let mut m = BigRational::zero();
        for c in &self.coeffs[..self.coeffs.len().saturating_sub(1)] {
            let v = BigRational::from_integer(c.abs()) / &lead;
            if v > m {
                m = v;
            }
        }
        m + BigRational::one()
    }
}

/// Serialized as the ascending coefficient list.
impl Serialize for ZPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let c: Vec<super::JsonInt> = self.coeffs.iter().cloned().map(super::JsonInt).collect();
        c.serialize(s)
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a ZPoly> for &'a ZPoly {
    type Output = ZPoly;
    fn add(self, rhs: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ZPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a ZPoly> for &'a ZPoly {
    type Output = ZPoly;
    fn sub(self, rhs: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ZPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a ZPoly> for &'a ZPoly {
    type Output = ZPoly;
    fn mul(self, rhs: &ZPoly) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::new(out)
    }
}

impl Neg for &ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        ZPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        trim(&mut coeffs);
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn x() -> Self {
        Self::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, k: &BigRational) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().recip();
        self.scale(&inv)
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.coeffs.len() < d.coeffs.len() {
            return (QPoly::zero(), self.clone());
        }
        let mut r = self.coeffs.clone();
        let dl = d.lead();
        let dd = d.degree();
        let mut q = vec![BigRational::zero(); self.coeffs.len() - d.coeffs.len() + 1];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &dl;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (QPoly::new(q), QPoly::new(r))
    }

    pub fn rem(&self, d: &QPoly) -> QPoly {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &QPoly) -> (QPoly, QPoly, QPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (QPoly::one(), QPoly::zero());
        let (mut t0, mut t1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lead().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &QPoly) -> QPoly {
        let mut acc = QPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &QPoly::constant(c.clone());
        }
        acc
    }

    /// `self(inner(x)) mod modulus`, reducing as it goes.
    pub fn compose_mod(&self, inner: &QPoly, modulus: &QPoly) -> QPoly {
        let mut acc = QPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = (&(&acc * inner) + &QPoly::constant(c.clone())).rem(modulus);
        }
        acc
    }

    /// Resultant, by the Euclidean recursion
    /// `Res(f, g) = (-1)^{deg f·deg g} lc(g)^{deg f - deg r} Res(g, r)`, `r = f mod g`.
    pub fn resultant(&self, other: &QPoly) -> BigRational {
        if self.is_zero() || other.is_zero() {
            return BigRational::zero();
        }
        let (df, dg) = (self.degree(), other.degree());
        if dg == 0 {
            return rational_pow(&other.lead(), df);
        }
        if df == 0 {
            return rational_pow(&self.lead(), dg);
        }
        let r = self.rem(other);
        if r.is_zero() {
            return BigRational::zero();
        }
        let v = rational_pow(&other.lead(), df - r.degree()) * other.resultant(&r);
        if df * dg % 2 == 1 {
            -v
        } else {
            v
        }
    }

    /// `(-1)^{d(d-1)/2} Res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> BigRational {
        let d = self.degree();
        let v = self.resultant(&self.derivative()) / self.lead();
        if (d * d.saturating_sub(1) / 2) % 2 == 1 {
            -v
        } else {
            v
        }
    }

    /// Clears denominators and returns the primitive integer polynomial with the same roots.
    pub fn to_primitive_z(&self) -> ZPoly {
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        ZPoly::new(
            self.coeffs
                .iter()
                .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
                .collect(),
        )
        .primitive()
    }
}

impl<'a> Add<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }
}

fn rational_pow(x: &BigRational, k: usize) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, _| acc * x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        assert_eq!(ZPoly::from_i64(&[-1, -1, 1]).to_string(), "x^2 - x - 1");
        assert_eq!(ZPoly::from_i64(&[2, 0, -3]).to_string(), "-3x^2 + 2");
        assert_eq!(ZPoly::from_i64(&[-2, 1]).to_string(), "x - 2");
        assert_eq!(ZPoly::zero().to_string(), "0");
    }

    #[test]
    fn primitive_part() {
        let p = ZPoly::from_i64(&[4, -6, -2]);
        assert_eq!(p.primitive(), ZPoly::from_i64(&[-2, 3, 1]));
    }

    #[test]
    fn division_and_gcd() {
        // (x-1)(x+2) and (x-1)(x-3)
        let a = ZPoly::from_i64(&[-2, 1, 1]).to_q();
        let b = ZPoly::from_i64(&[3, -4, 1]).to_q();
        assert_eq!(a.gcd(&b).to_primitive_z(), ZPoly::from_i64(&[-1, 1]));
        let (q, r) = a.div_rem(&ZPoly::from_i64(&[-1, 1]).to_q());
        assert!(r.is_zero());
        assert_eq!(q.to_primitive_z(), ZPoly::from_i64(&[2, 1]));
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = ZPoly::from_i64(&[-1, -1, 1]).to_q();
        let b = ZPoly::from_i64(&[0, 1]).to_q();
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(g, QPoly::one());
        assert_eq!(&(&s * &a) + &(&t * &b), QPoly::one());
    }

    #[test]
    fn compose_mod_verifies_golden_relation() {
        // (x+1) satisfies y^2 - 3y + 1 modulo x^2 - x - 1.
        let m = ZPoly::from_i64(&[-1, -1, 1]).to_q();
        let p = ZPoly::from_i64(&[1, -3, 1]).to_q();
        let q = ZPoly::from_i64(&[1, 1]).to_q();
        assert!(p.compose_mod(&q, &m).is_zero());
    }

    #[test]
    fn discriminants() {
        // x^2 - x - 1: 5; x^3 - x - 1: -23; 2x^2 - 3: 24.
        let d = |c: &[i64]| ZPoly::from_i64(c).to_q().discriminant();
        assert_eq!(d(&[-1, -1, 1]), BigRational::from_integer(5.into()));
        assert_eq!(d(&[-1, -1, 0, 1]), BigRational::from_integer((-23).into()));
        assert_eq!(d(&[-3, 0, 2]), BigRational::from_integer(24.into()));
    }
}
