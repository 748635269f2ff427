//! Weak equivalence certificates between substitutions and between matrices.
//!
//! Certificates are periodic: one pair `(σ, τ)` with `σ∘τ = χ^n` and
//! `τ∘σ = ψ^m`, repeated along the whole infinite diagram.

mod certificate;
mod matrix;
mod search;

pub use certificate::{matrix_verify, verify_certificate, MatrixCertificate, WeakEquivCertificate};
pub use matrix::{matrix_search, MatrixSearchOutcome};
pub use search::{search_certificate, SearchOutcome};

use serde::Serialize;

use crate::algebra::matrix::IntMatrix;
use crate::algebra::poly::ZPoly;
use crate::error::Result;

pub const DEFAULT_MAX_EXP: u32 = 4;
pub const DEFAULT_MAX_LEN: usize = 64;
pub const DEFAULT_MAX_NODES: u64 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    pub max_n: u32,
    pub max_m: u32,
    /// Longest allowed image of `σ` or `τ`.
    pub max_len: usize,
    /// Search nodes allowed per call; exceeding it ends the search early.
    pub max_nodes: u64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_n: DEFAULT_MAX_EXP,
            max_m: DEFAULT_MAX_EXP,
            max_len: DEFAULT_MAX_LEN,
            max_nodes: DEFAULT_MAX_NODES,
        }
    }
}

impl SearchBounds {
    pub fn swapped(self) -> Self {
        SearchBounds {
            max_n: self.max_m,
            max_m: self.max_n,
            ..self
        }
    }

    /// Exponent pairs by increasing `n + m`, then increasing `n`.
    pub fn exponent_pairs(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for total in 2..=self.max_n + self.max_m {
            for n in 1..=self.max_n {
                if total > n && total - n <= self.max_m {
                    out.push((n, total - n));
                }
            }
        }
        out
    }
}

/// Characteristic polynomial with the factor `x^k` removed.
fn nonzero_spectrum(a: &IntMatrix) -> Result<ZPoly> {
    let p = a.char_poly()?;
    let k = p.coeffs().iter().take_while(|c| num_traits::Zero::is_zero(*c)).count();
    Ok(ZPoly::new(p.coeffs()[k..].to_vec()))
}

/// `ST` and `TS` share their nonzero spectrum with multiplicity, so a
/// certificate at `(n, m)` needs `A^n` and `B^m` to agree there.
pub(crate) struct SpectralFilter {
    a: Vec<ZPoly>,
    b: Vec<ZPoly>,
}

impl SpectralFilter {
    pub(crate) fn new(a: &IntMatrix, b: &IntMatrix, bounds: &SearchBounds) -> Result<Self> {
        let powers = |m: &IntMatrix, k: u32| -> Result<Vec<ZPoly>> {
            let mut out = Vec::new();
            let mut acc = m.clone();
            for e in 1..=k {
                if e > 1 {
                    acc = acc.mul(m)?;
                }
                out.push(nonzero_spectrum(&acc)?);
            }
            Ok(out)
        };
        Ok(SpectralFilter {
            a: powers(a, bounds.max_n)?,
            b: powers(b, bounds.max_m)?,
        })
    }

    pub(crate) fn admits(&self, n: u32, m: u32) -> bool {
        self.a[n as usize - 1] == self.b[m as usize - 1]
    }
}
