//! Arithmetic in `Q(α)` for a real algebraic `α`, with elements represented
//! as rational polynomials reduced modulo the minimal polynomial.

use std::cmp::Ordering;

use num_rational::BigRational;

use super::interval::Interval;
use super::poly::QPoly;
use super::roots::AlgebraicReal;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct NumberField {
    generator: AlgebraicReal,
    modulus: QPoly,
}

impl NumberField {
    pub fn new(generator: AlgebraicReal) -> Self {
        let modulus = generator.minpoly().to_q();
        NumberField { generator, modulus }
    }

    pub fn generator(&self) -> &AlgebraicReal {
        &self.generator
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree()
    }

    pub fn reduce(&self, p: &QPoly) -> QPoly {
        p.rem(&self.modulus)
    }

    pub fn rational(&self, c: BigRational) -> QPoly {
        QPoly::constant(c)
    }

    pub fn gen(&self) -> QPoly {
        self.reduce(&QPoly::x())
    }

    pub fn add(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a + b
    }

    pub fn sub(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a - b
    }

    pub fn mul(&self, a: &QPoly, b: &QPoly) -> QPoly {
        self.reduce(&(a * b))
    }

    pub fn inv(&self, a: &QPoly) -> Result<QPoly> {
        let a = self.reduce(a);
        if a.is_zero() {
            return Err(Error::Precondition("inverse of zero in a number field".into()));
        }
        let (g, s, _) = a.ext_gcd(&self.modulus);
        if g.degree() != 0 {
            return Err(Error::Reducible);
        }
        Ok(self.reduce(&s))
    }

    pub fn div(&self, a: &QPoly, b: &QPoly) -> Result<QPoly> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn is_zero(&self, a: &QPoly) -> bool {
        self.reduce(a).is_zero()
    }

    /// Exact sign of the real embedding of `a`.
    pub fn sign(&self, a: &QPoly) -> Ordering {
        self.generator.sign_of(a)
    }

    pub fn cmp(&self, a: &QPoly, b: &QPoly) -> Ordering {
        self.sign(&(a - b))
    }

    /// Enclosure of the real embedding of `a`, at the generator's precision `bits`.
    pub fn enclose(&self, a: &QPoly, bits: u32) -> Interval {
        self.generator.refined_bits(bits).interval().eval(a)
    }

    /// Enclosure of width at most `2^-bits`, refining the generator as needed.
    pub fn enclose_to(&self, a: &QPoly, bits: u32) -> Interval {
        let target = super::interval::dyadic_width(bits);
        let mut g = bits;
        loop {
            let iv = self.enclose(a, g);
            if iv.width() <= target {
                return iv;
            }
            g += 16;
        }
    }

    /// A nonzero kernel vector of a square matrix over the field, if singular.
    pub fn kernel_vector(&self, m: &[Vec<QPoly>]) -> Option<Vec<QPoly>> {
        let n = m.len();
        let cols = m.first().map_or(0, |r| r.len());
        let mut a: Vec<Vec<QPoly>> = m
            .iter()
            .map(|r| r.iter().map(|e| self.reduce(e)).collect())
            .collect();
        let mut pivot_cols = Vec::new();
        let mut row = 0;
        for c in 0..cols {
            let Some(p) = (row..n).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(row, p);
            let inv = self.inv(&a[row][c]).ok()?;
            for j in 0..cols {
                a[row][j] = self.mul(&a[row][j], &inv);
            }
            for i in 0..n {
                if i != row && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..cols {
                        let d = self.mul(&f, &a[row][j]);
                        a[i][j] = self.sub(&a[i][j], &d);
                    }
                }
            }
            pivot_cols.push(c);
            row += 1;
            if row == n {
                break;
            }
        }
        let free = (0..cols).find(|c| !pivot_cols.contains(c))?;
        let mut v = vec![QPoly::zero(); cols];
        v[free] = QPoly::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = self.sub(&QPoly::zero(), &a[r][free]);
        }
        Some(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::ZPoly;
    use crate::algebra::roots::real_roots_irreducible;

    fn golden_field() -> NumberField {
        let g = real_roots_irreducible(&ZPoly::from_i64(&[-1, -1, 1])).pop().unwrap();
        NumberField::new(g)
    }

    #[test]
    fn inverse_of_generator() {
        let k = golden_field();
        // 1/φ = φ - 1
        let inv = k.inv(&k.gen()).unwrap();
        assert_eq!(inv, ZPoly::from_i64(&[-1, 1]).to_q());
    }

    #[test]
    fn sign_of_elements() {
        let k = golden_field();
        let phi_minus_two = ZPoly::from_i64(&[-2, 1]).to_q();
        assert_eq!(k.sign(&phi_minus_two), Ordering::Less);
        let square_minus_phi_minus_one = ZPoly::from_i64(&[-1, -1, 1]).to_q();
        assert_eq!(k.sign(&square_minus_phi_minus_one), Ordering::Equal);
    }

    #[test]
    fn kernel_of_eigen_system() {
        // [[1,1],[1,0]] - φ I has kernel (φ, 1).
        let k = golden_field();
        let one = QPoly::one();
        let m = vec![
            vec![k.sub(&one, &k.gen()), one.clone()],
            vec![one.clone(), k.sub(&QPoly::zero(), &k.gen())],
        ];
        let v = k.kernel_vector(&m).unwrap();
        let ratio = k.div(&v[0], &v[1]).unwrap();
        assert_eq!(ratio, k.gen());
    }
}
