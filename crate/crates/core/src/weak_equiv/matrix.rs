//! Search for nonnegative factorizations `S·T = A^n`, `T·S = B^m`.
//!
//! `A^n = Σ_j s_j t_jᵀ` with `s_j` the columns of `S` and `t_j` the rows of
//! `T`. Terms are chosen one at a time, `t_j` before `s_j`, each coordinate
//! bounded by the residual `A^n - Σ s_l t_lᵀ`, which must stay nonnegative;
//! the entries `(T·S)[j][l] = t_j·s_l` are checked as soon as both factors
//! are known.

use std::cmp::Ordering;

use num_bigint::BigInt;
use serde::Serialize;

use super::certificate::{matrix_verify, MatrixCertificate};
use super::{SearchBounds, SpectralFilter};
use crate::algebra::matrix::IntMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixSearchOutcome {
    pub certificate: Option<MatrixCertificate>,
    pub nodes: u64,
    pub budget_exhausted: bool,
    pub searched_pairs: Vec<(u32, u32)>,
}

type Key = (u32, u32, u64, bool, Vec<u64>, Vec<u64>);

struct Factorizer<'a> {
    a: &'a IntMatrix,
    b: &'a IntMatrix,
    n: u32,
    m: u32,
    p: usize,
    q: usize,
    residual: Vec<Vec<u64>>,
    d: Vec<Vec<u64>>,
    s: Vec<Vec<u64>>,
    t: Vec<Vec<u64>>,
    nodes: u64,
    max_nodes: u64,
    exhausted: bool,
    best: Option<(Key, MatrixCertificate)>,
}

fn to_u64(m: &IntMatrix) -> Option<Vec<Vec<u64>>> {
    m.to_rows()
        .into_iter()
        .map(|r| r.iter().map(|x| u64::try_from(x).ok()).collect())
        .collect()
}

fn dot(x: &[u64], y: &[u64]) -> u64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

impl Factorizer<'_> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.exhausted = true;
        }
        !self.exhausted
    }

    fn term(&mut self, j: usize) {
        if !self.tick() {
            return;
        }
        if j == self.q {
            if self.residual.iter().flatten().all(|&x| x == 0) {
                self.offer();
            }
            return;
        }
        self.choose_t(j, 0);
    }

    fn choose_t(&mut self, j: usize, k: usize) {
        if self.exhausted {
            return;
        }
        if k == self.p {
            let t = &self.t[j];
            let row_needed = self.d[j].iter().any(|&x| x > 0);
            if row_needed == t.iter().all(|&x| x == 0) {
                return;
            }
            if (0..j).any(|l| dot(t, &self.s[l]) != self.d[j][l]) {
                return;
            }
            self.choose_s(j, 0);
            return;
        }
        let max = (0..self.p).map(|i| self.residual[i][k]).max().unwrap_or(0);
        for v in 0..=max {
            self.t[j][k] = v;
            let ok = (0..j).all(|l| dot(&self.t[j][..=k], &self.s[l][..=k]) <= self.d[j][l]);
            if !ok {
                break;
            }
            self.choose_t(j, k + 1);
            if !self.tick() {
                break;
            }
        }
        self.t[j][k] = 0;
    }

    fn choose_s(&mut self, j: usize, i: usize) {
        if self.exhausted {
            return;
        }
        if i == self.p {
            let s = &self.s[j];
            let col_needed = (0..self.q).any(|l| self.d[l][j] > 0);
            if col_needed == s.iter().all(|&x| x == 0) {
                return;
            }
            if (0..=j).any(|l| dot(&self.t[l], s) != self.d[l][j]) {
                return;
            }
            for r in 0..self.p {
                for c in 0..self.p {
                    self.residual[r][c] -= self.s[j][r] * self.t[j][c];
                }
            }
            self.term(j + 1);
            for r in 0..self.p {
                for c in 0..self.p {
                    self.residual[r][c] += self.s[j][r] * self.t[j][c];
                }
            }
            return;
        }
        let mut max = (0..self.q).map(|l| self.d[l][j]).max().unwrap_or(0);
        for c in 0..self.p {
            let tc = self.t[j][c];
            if tc > 0 {
                max = max.min(self.residual[i][c] / tc);
            }
        }
        for v in 0..=max {
            self.s[j][i] = v;
            let ok = (0..=j).all(|l| dot(&self.t[l][..=i], &self.s[j][..=i]) <= self.d[l][j]);
            if !ok {
                break;
            }
            self.choose_s(j, i + 1);
            if !self.tick() {
                break;
            }
        }
        self.s[j][i] = 0;
    }

    fn offer(&mut self) {
        let big = |rows: Vec<Vec<u64>>| -> IntMatrix {
            let rows: Vec<Vec<BigInt>> = rows
                .into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect();
            IntMatrix::from_rows(&rows).expect("rectangular")
        };
        // s holds columns of S.
        let s_rows: Vec<Vec<u64>> = (0..self.p)
            .map(|r| (0..self.q).map(|j| self.s[j][r]).collect())
            .collect();
        let t_flat: Vec<u64> = self.t.iter().flatten().copied().collect();
        let s_flat: Vec<u64> = s_rows.iter().flatten().copied().collect();
        let is_identity = self.p == self.q
            && (0..self.q).all(|j| (0..self.p).all(|k| self.t[j][k] == u64::from(j == k)));
        let key: Key = (
            self.n + self.m,
            self.n,
            t_flat.iter().sum(),
            !is_identity,
            t_flat,
            s_flat,
        );
        if self
            .best
            .as_ref()
            .is_some_and(|(k, _)| key.cmp(k) != Ordering::Less)
        {
            return;
        }
        let cert = MatrixCertificate {
            s: big(s_rows),
            t: big(self.t.clone()),
            n: self.n,
            m: self.m,
        };
        if matrix_verify(self.a, self.b, &cert).unwrap_or(false) {
            self.best = Some((key, cert));
        }
    }
}

/// Least matrix certificate within the exponent bounds under the order:
/// `n + m`, `n`, entry sum of `T`, `T` = identity first, then `T` and `S`
/// row-major. Every returned certificate has passed [`matrix_verify`].
pub fn matrix_search(
    a: &IntMatrix,
    b: &IntMatrix,
    bounds: &SearchBounds,
) -> Result<MatrixSearchOutcome> {
    for x in [a, b] {
        if !x.is_square() {
            return Err(Error::SizeMismatch("matrices must be square".into()));
        }
        if !x.is_nonnegative() {
            return Err(Error::NegativeEntry);
        }
    }
    let filter = SpectralFilter::new(a, b, bounds)?;
    let mut outcome = MatrixSearchOutcome {
        certificate: None,
        nodes: 0,
        budget_exhausted: false,
        searched_pairs: Vec::new(),
    };
    let (p, q) = (a.rows(), b.rows());
    for (n, m) in bounds.exponent_pairs() {
        if !filter.admits(n, m) {
            continue;
        }
        outcome.searched_pairs.push((n, m));
        let (Some(residual), Some(d)) = (to_u64(&a.pow(n)?), to_u64(&b.pow(m)?)) else {
            outcome.budget_exhausted = true;
            return Ok(outcome);
        };
        let mut f = Factorizer {
            a,
            b,
            n,
            m,
            p,
            q,
            residual,
            d,
            s: vec![vec![0; p]; q],
            t: vec![vec![0; p]; q],
            nodes: 0,
            max_nodes: bounds.max_nodes.saturating_sub(outcome.nodes),
            exhausted: false,
            best: None,
        };
        f.term(0);
        outcome.nodes += f.nodes;
        if let Some((_, c)) = f.best {
            outcome.certificate = Some(c);
            outcome.budget_exhausted = f.exhausted;
            return Ok(outcome);
        }
        if f.exhausted {
            outcome.budget_exhausted = true;
            return Ok(outcome);
        }
    }
    Ok(outcome)
}
