//! Factorization of integer polynomials over the rationals.
//!
//! Squarefree decomposition (Yun) is followed by factoring each squarefree
//! part modulo a prime larger than twice the coefficient bound of any factor,
//! so that integer factors can be recovered from products of modular factors
//! without Hensel lifting. Candidate factors are confirmed by exact division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::ZPoly;
use crate::error::{Error, Result};

pub const MAX_FACTOR_DEGREE: usize = 24;

/// Irreducible factorization: primitive factors with multiplicities, sorted by
/// degree then coefficients. The product reproduces `p` up to a rational constant.
pub fn factor_over_q(p: &ZPoly) -> Result<Vec<(ZPoly, u32)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() > MAX_FACTOR_DEGREE {
        return Err(Error::UnsupportedDegree {
            degree: p.degree(),
            max: MAX_FACTOR_DEGREE,
        });
    }
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(p) {
        for f in factor_squarefree(&part) {
            out.push((f, mult));
        }
    }
    out.sort_by(|a, b| {
        (a.0.degree(), a.0.coeffs(), a.1).cmp(&(b.0.degree(), b.0.coeffs(), b.1))
    });
    Ok(out)
}

/// Yun's algorithm: primitive, pairwise coprime squarefree parts with multiplicities.
pub fn squarefree_decomposition(p: &ZPoly) -> Vec<(ZPoly, u32)> {
    let mut out = Vec::new();
    if p.degree() == 0 {
        return out;
    }
    let f = p.to_q();
    let df = f.derivative();
    let b = f.gcd(&df);
    let mut c = f.div_rem(&b).0;
    let mut d = &df.div_rem(&b).0 - &c.derivative();
    let mut i = 1u32;
    while c.degree() > 0 {
        let a = c.gcd(&d);
        c = c.div_rem(&a).0;
        d = &d.div_rem(&a).0 - &c.derivative();
        if a.degree() > 0 {
            out.push((a.to_primitive_z(), i));
        }
        i += 1;
    }
    out
}

pub fn squarefree_part(p: &ZPoly) -> ZPoly {
    let f = p.to_q();
    let g = f.gcd(&f.derivative());
    f.div_rem(&g).0.to_primitive_z()
}

/// Factors a primitive squarefree polynomial of positive degree.
fn factor_squarefree(f: &ZPoly) -> Vec<ZPoly> {
    let f = f.primitive();
    if f.degree() <= 1 {
        return vec![f];
    }
    // Coefficients of lc(f) * (monic factor) are bounded by 2^d * ||f||_2.
    let bound = (BigInt::one() << f.degree()) * f.norm2_ceil();
    let p = choose_prime(&f, &(bound * 2 + 1));
    let field = ModP::new(p.clone());
    let fp = field.monic(&field.reduce(&f));
    let mut modular = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    for (g, d) in field.distinct_degree(&fp) {
        field.equal_degree(&g, d, &mut rng, &mut modular);
    }
    modular.sort();
    recombine(&f, modular, &field)
}

fn recombine(f: &ZPoly, mut modular: Vec<Vec<BigInt>>, field: &ModP) -> Vec<ZPoly> {
    let mut found = Vec::new();
    let mut rest = f.clone();
    let mut size = 1;
    'outer: while 2 * size <= modular.len() {
        let k = modular.len();
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let lc = field.reduce_int(&rest.lead());
            let mut prod = vec![lc];
            for &i in &combo {
                prod = field.mul(&prod, &modular[i]);
            }
            let cand = ZPoly::new(prod.iter().map(|c| field.symmetric(c)).collect()).primitive();
            let const_ok = cand.coeff(0).is_zero()
                || rest.coeff(0).is_zero()
                || rest.coeff(0).is_multiple_of(&cand.coeff(0));
            if cand.degree() > 0 && const_ok {
                if let Some(q) = rest.div_exact(&cand) {
                    found.push(cand);
                    rest = q.primitive();
                    for &i in combo.iter().rev() {
                        modular.remove(i);
                    }
                    continue 'outer;
                }
            }
            if !next_combination(&mut combo, k) {
                break;
            }
        }
        size += 1;
    }
    if rest.degree() > 0 {
        found.push(rest.primitive());
    }
    found
}

fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn choose_prime(f: &ZPoly, above: &BigInt) -> BigInt {
    let mut p = above.clone();
    if p.is_even() {
        p += 1;
    }
    loop {
        if is_probable_prime(&p) {
            let field = ModP::new(p.clone());
            if !field.reduce_int(&f.lead()).is_zero() {
                let fp = field.monic(&field.reduce(f));
                let dfp = field.derivative(&fp);
                if field.gcd(&fp, &dfp).len() == 1 {
                    return p;
                }
            }
        }
        p += 2;
    }
}

/// Miller-Rabin with the first 16 prime bases; deterministic below 3.3e24.
pub fn is_probable_prime(n: &BigInt) -> bool {
    const BASES: [u32; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];
    if *n < BigInt::from(2) {
        return false;
    }
    for &b in &BASES {
        let b = BigInt::from(b);
        if *n == b {
            return true;
        }
        if n.is_multiple_of(&b) {
            return false;
        }
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for &b in &BASES {
        let mut x = BigInt::from(b).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Polynomial arithmetic over `Z/pZ`; polynomials are ascending coefficient
/// vectors with entries in `[0, p)` and no trailing zeros.
struct ModP {
    p: BigInt,
}

impl ModP {
    fn new(p: BigInt) -> Self {
        ModP { p }
    }

    fn reduce_int(&self, c: &BigInt) -> BigInt {
        c.mod_floor(&self.p)
    }

    fn symmetric(&self, c: &BigInt) -> BigInt {
        let half = &self.p >> 1;
        if *c > half {
            c - &self.p
        } else {
            c.clone()
        }
    }

    fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    }

    fn reduce(&self, f: &ZPoly) -> Vec<BigInt> {
        Self::trim(f.coeffs().iter().map(|c| self.reduce_int(c)).collect())
    }

    fn inv(&self, a: &BigInt) -> BigInt {
        a.modpow(&(&self.p - 2), &self.p)
    }

    fn monic(&self, f: &[BigInt]) -> Vec<BigInt> {
        match f.last() {
            None => vec![],
            Some(l) => {
                let li = self.inv(l);
                f.iter().map(|c| (c * &li) % &self.p).collect()
            }
        }
    }

    fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = a.len().max(b.len());
        let z = BigInt::zero();
        Self::trim(
            (0..n)
                .map(|i| (a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).mod_floor(&self.p))
                .collect(),
        )
    }

    fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        Self::trim(out.into_iter().map(|c| c % &self.p).collect())
    }

    fn div_rem(&self, a: &[BigInt], d: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
        if a.len() < d.len() {
            return (vec![], a.to_vec());
        }
        let li = self.inv(d.last().expect("nonzero divisor"));
        let dd = d.len() - 1;
        let mut r = a.to_vec();
        let mut q = vec![BigInt::zero(); a.len() - d.len() + 1];
        for k in (0..q.len()).rev() {
            let c = (&r[k + dd] * &li) % &self.p;
            if !c.is_zero() {
                for (j, dc) in d.iter().enumerate() {
                    r[k + j] = (&r[k + j] - &c * dc).mod_floor(&self.p);
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::trim(q), Self::trim(r))
    }

    fn rem(&self, a: &[BigInt], d: &[BigInt]) -> Vec<BigInt> {
        self.div_rem(a, d).1
    }

    fn gcd(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    fn derivative(&self, f: &[BigInt]) -> Vec<BigInt> {
        Self::trim(
            f.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| (c * BigInt::from(i)) % &self.p)
                .collect(),
        )
    }

    fn pow_mod(&self, base: &[BigInt], e: &BigInt, modulus: &[BigInt]) -> Vec<BigInt> {
        let mut result = vec![BigInt::one()];
        let b = self.rem(base, modulus);
        let bits = e.bits();
        for i in (0..bits).rev() {
            result = self.rem(&self.mul(&result, &result), modulus);
            if e.bit(i) {
                result = self.rem(&self.mul(&result, &b), modulus);
            }
        }
        result
    }

    /// Splits a monic squarefree polynomial into products of irreducibles of equal degree.
    fn distinct_degree(&self, f: &[BigInt]) -> Vec<(Vec<BigInt>, usize)> {
        let x = vec![BigInt::zero(), BigInt::one()];
        let mut out = Vec::new();
        let mut rest = f.to_vec();
        let mut h = x.clone();
        let mut d = 0;
        while rest.len() > 1 {
            d += 1;
            if rest.len() - 1 < 2 * d {
                let deg = rest.len() - 1;
                out.push((rest, deg));
                break;
            }
            h = self.pow_mod(&h, &self.p, &rest);
            let g = self.gcd(&rest, &self.sub(&h, &x));
            if g.len() > 1 {
                rest = self.div_rem(&rest, &g).0;
                h = self.rem(&h, &rest);
                out.push((g, d));
            }
        }
        out
    }

    fn random_poly(&self, below_degree: usize, rng: &mut ChaCha8Rng) -> Vec<BigInt> {
        let words = (self.p.bits() / 64 + 2) as usize;
        let coeffs = (0..below_degree)
            .map(|_| {
                let mut acc = BigInt::zero();
                for _ in 0..words {
                    acc = (acc << 64) + BigInt::from(rng.next_u64());
                }
                acc % &self.p
            })
            .collect();
        Self::trim(coeffs)
    }

    /// Cantor-Zassenhaus splitting of a product of degree-`d` irreducibles.
    fn equal_degree(
        &self,
        g: &[BigInt],
        d: usize,
        rng: &mut ChaCha8Rng,
        out: &mut Vec<Vec<BigInt>>,
    ) {
        let deg = g.len() - 1;
        if deg == d {
            out.push(g.to_vec());
            return;
        }
        let e = (self.p.pow(d as u32) - 1u32) >> 1;
        loop {
            let a = self.random_poly(deg, rng);
            if a.len() < 2 {
                continue;
            }
            let b = self.sub(&self.pow_mod(&a, &e, g), &[BigInt::one()]);
            let h = self.gcd(g, &b);
            let hd = h.len().saturating_sub(1);
            if hd > 0 && hd < deg {
                let other = self.div_rem(g, &h).0;
                self.equal_degree(&h, d, rng, out);
                self.equal_degree(&self.monic(&other), d, rng, out);
                return;
            }
        }
    }
}

/// Rational roots of an integer polynomial, for tests and small-degree shortcuts.
pub fn rational_roots(p: &ZPoly) -> Vec<num_rational::BigRational> {
    factor_over_q(p)
        .map(|fs| {
            let mut roots: Vec<_> = fs
                .into_iter()
                .filter(|(f, _)| f.degree() == 1)
                .map(|(f, _)| num_rational::BigRational::new(-f.coeff(0), f.coeff(1)))
                .collect();
            roots.sort();
            roots
        })
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> ZPoly {
        ZPoly::from_i64(c)
    }

    fn product(fs: &[(ZPoly, u32)]) -> ZPoly {
        fs.iter()
            .fold(ZPoly::one(), |acc, (f, m)| &acc * &f.pow(*m))
    }

    #[test]
    fn golden_polynomial_is_irreducible() {
        let f = factor_over_q(&z(&[-1, -1, 1])).unwrap();
        assert_eq!(f, vec![(z(&[-1, -1, 1]), 1)]);
    }

    #[test]
    fn cubic_with_rational_roots() {
        // x^3 - 2x^2 - x + 2 = (x-1)(x+1)(x-2)
        let f = factor_over_q(&z(&[2, -1, -2, 1])).unwrap();
        let mut got: Vec<ZPoly> = f.iter().map(|(p, _)| p.clone()).collect();
        got.sort();
        let mut want = vec![z(&[-1, 1]), z(&[1, 1]), z(&[-2, 1])];
        want.sort();
        assert_eq!(got, want);
        assert!(f.iter().all(|(_, m)| *m == 1));
    }

    #[test]
    fn square_of_irreducible() {
        let g = z(&[-1, -1, 1]);
        let f = factor_over_q(&g.pow(2)).unwrap();
        assert_eq!(f, vec![(g, 2)]);
    }

    #[test]
    fn swinnerton_dyer_style_quartic() {
        // x^4 - 10x^2 + 1 is irreducible over Q but splits modulo every prime.
        let f = factor_over_q(&z(&[1, 0, -10, 0, 1])).unwrap();
        assert_eq!(f, vec![(z(&[1, 0, -10, 0, 1]), 1)]);
    }

    #[test]
    fn product_of_quadratics_and_cubic() {
        let a = z(&[-1, -1, 1]);
        let b = z(&[1, 0, 1]);
        let c = z(&[-1, -1, -1, 1]);
        let p = &(&a * &b.pow(2)) * &c;
        let f = factor_over_q(&p).unwrap();
        assert_eq!(product(&f).primitive(), p.primitive());
        assert_eq!(f.len(), 3);
    }

    #[test]
    fn non_monic_factors() {
        // (2x - 1)(3x^2 + 1)
        let p = &z(&[-1, 2]) * &z(&[1, 0, 3]);
        let f = factor_over_q(&p).unwrap();
        assert_eq!(f, vec![(z(&[-1, 2]), 1), (z(&[1, 0, 3]), 1)]);
    }

    #[test]
    fn degree_bound_enforced() {
        let mut c = vec![0i64; 26];
        c[25] = 1;
        c[0] = -1;
        assert!(matches!(
            factor_over_q(&z(&c)),
            Err(Error::UnsupportedDegree { .. })
        ));
        assert_eq!(factor_over_q(&ZPoly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn cyclotomic_split_of_x24_minus_1() {
        let mut c = vec![0i64; 25];
        c[24] = 1;
        c[0] = -1;
        let p = z(&c);
        let f = factor_over_q(&p).unwrap();
        // x^24 - 1 splits into the cyclotomic polynomials of the 8 divisors of 24.
        assert_eq!(f.len(), 8);
        assert_eq!(product(&f).primitive(), p);
    }

    #[test]
    fn miller_rabin_small() {
        let primes: Vec<i64> = (2..60).filter(|&n| is_probable_prime(&BigInt::from(n))).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
    }
}
