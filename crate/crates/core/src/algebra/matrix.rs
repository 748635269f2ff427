use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::poly::ZPoly;
use crate::error::{Error, Result};

/// Dense integer matrix with arbitrary-precision entries, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if r == 0 || c == 0 {
            return Err(Error::SizeMismatch("matrix must be nonempty".into()));
        }
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::SizeMismatch("ragged matrix rows".into()));
            }
            entries.extend(row.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            entries,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let v: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Self::from_rows(&v).expect("well-formed literal matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &BigInt) {
        self.entries[i * self.cols + j] += v;
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.cols).map(|c| c.to_vec()).collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|e| !e.is_negative())
    }

    pub fn is_positive(&self) -> bool {
        self.entries.iter().all(|e| e.is_positive())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::SizeMismatch("power of a non-square matrix".into()));
        }
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn max_entry(&self) -> BigInt {
        self.entries.iter().cloned().max().unwrap_or_default()
    }

    /// Characteristic polynomial `det(xI - A)` by Berkowitz's division-free recurrence.
    pub fn char_poly(&self) -> Result<ZPoly> {
        if !self.is_square() {
            return Err(Error::SizeMismatch(format!(
                "characteristic polynomial of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        // Coefficients highest degree first while iterating.
        let mut vect: Vec<BigInt> = vec![BigInt::one(), -self.get(0, 0).clone()];
        for r in 1..n {
            // Leading r x r block M, column C = A[0..r][r], row R = A[r][0..r].
            let a_rr = self.get(r, r).clone();
            let mut col: Vec<BigInt> = (0..r).map(|i| self.get(i, r).clone()).collect();
            let row: Vec<BigInt> = (0..r).map(|j| self.get(r, j).clone()).collect();
            let mut toeplitz = Vec::with_capacity(r + 2);
            toeplitz.push(BigInt::one());
            toeplitz.push(-a_rr);
            for _ in 0..r {
                let rc: BigInt = row.iter().zip(&col).map(|(x, y)| x * y).sum();
                toeplitz.push(-rc);
                let next: Vec<BigInt> = (0..r)
                    .map(|i| (0..r).map(|k| self.get(i, k) * &col[k]).sum())
                    .collect();
                col = next;
            }
            let mut next = vec![BigInt::zero(); r + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, v) in vect.iter().enumerate() {
                    if i >= j && i - j < toeplitz.len() {
                        *slot += &toeplitz[i - j] * v;
                    }
                }
            }
            vect = next;
        }
        vect.reverse();
        Ok(ZPoly::new(vect))
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigRational>> = self
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(BigRational::from_integer).collect())
            .collect();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            for i in 0..self.rows {
                if i != rank && !m[i][c].is_zero() {
                    let f = &m[i][c] / &m[rank][c];
                    for j in c..self.cols {
                        let d = &f * &m[rank][j];
                        m[i][j] -= d;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Whether some power `A^k` with `k <= (n-1)^2 + 1` is entrywise positive.
    pub fn is_aperiodic(&self) -> Result<bool> {
        if !self.is_square() {
            return Err(Error::SizeMismatch("aperiodicity of a non-square matrix".into()));
        }
        if !self.is_nonnegative() {
            return Err(Error::NegativeEntry);
        }
        let n = self.rows;
        // Positivity pattern only; boolean powering keeps entries small.
        let pattern: Vec<bool> = self.entries.iter().map(|e| e.is_positive()).collect();
        let bound = (n - 1) * (n - 1) + 1;
        let mut power = pattern.clone();
        for _ in 1..=bound {
            if power.iter().all(|&b| b) {
                return Ok(true);
            }
            let mut next = vec![false; n * n];
            for i in 0..n {
                for k in 0..n {
                    if power[i * n + k] {
                        for j in 0..n {
                            if pattern[k * n + j] {
                                next[i * n + j] = true;
                            }
                        }
                    }
                }
            }
            power = next;
        }
        Ok(power.iter().all(|&b| b))
    }

    pub fn has_zero_row_or_column(&self) -> bool {
        let zero_row = (0..self.rows).any(|i| (0..self.cols).all(|j| self.get(i, j).is_zero()));
        let zero_col = (0..self.cols).any(|j| (0..self.rows).all(|i| self.get(i, j).is_zero()));
        zero_row || zero_col
    }
}

/// Serialized as a list of rows; entries that fit in `i64` are JSON numbers,
/// larger ones are decimal strings.
impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<super::JsonInt>> = self
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(super::JsonInt).collect())
            .collect();
        rows.serialize(s)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.chunks(self.cols).enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let parts: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            write!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}
