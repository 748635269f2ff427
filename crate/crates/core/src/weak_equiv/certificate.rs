use serde::{Deserialize, Serialize};

use crate::algebra::matrix::IntMatrix;
use crate::error::{Error, Result};
use crate::substitution::Substitution;

/// `σ: A_m -> W(A_n)` and `τ: A_n -> W(A_m)` with `σ∘τ = χ^n`, `τ∘σ = ψ^m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeakEquivCertificate {
    pub sigma: Substitution,
    pub tau: Substitution,
    pub n: u32,
    pub m: u32,
}

impl WeakEquivCertificate {
    /// The same data read as a certificate for `(ψ, χ)`.
    pub fn transposed(&self) -> Self {
        WeakEquivCertificate {
            sigma: self.tau.clone(),
            tau: self.sigma.clone(),
            n: self.m,
            m: self.n,
        }
    }

    /// `(A_σ, A_τ)` as a matrix certificate for `(A_χ, A_ψ)`.
    pub fn abelianized(&self) -> MatrixCertificate {
        MatrixCertificate {
            s: self.sigma.abelianization(),
            t: self.tau.abelianization(),
            n: self.n,
            m: self.m,
        }
    }
}

/// `S·T = A^n` and `T·S = B^m` with `S, T ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixCertificate {
    pub s: IntMatrix,
    pub t: IntMatrix,
    pub n: u32,
    pub m: u32,
}

/// Exact check of both triangles. The abelianized identities are tested first
/// since they are cheap and necessary.
pub fn verify_certificate(
    chi: &Substitution,
    psi: &Substitution,
    c: &WeakEquivCertificate,
) -> Result<bool> {
    chi.require_square()?;
    psi.require_square()?;
    let (p, q) = (chi.domain_size(), psi.domain_size());
    let shape_ok = c.tau.domain_size() == p
        && c.tau.codomain_size() == q
        && c.sigma.domain_size() == q
        && c.sigma.codomain_size() == p;
    if !shape_ok {
        return Err(Error::SizeMismatch(format!(
            "certificate maps {}->{} and {}->{} do not fit alphabets {p} and {q}",
            c.tau.domain_size(),
            c.tau.codomain_size(),
            c.sigma.domain_size(),
            c.sigma.codomain_size()
        )));
    }
    if c.n == 0 || c.m == 0 {
        return Ok(false);
    }
    if !matrix_verify(&chi.abelianization(), &psi.abelianization(), &c.abelianized())? {
        return Ok(false);
    }
    Ok(c.sigma.compose(&c.tau)? == chi.power(c.n)? && c.tau.compose(&c.sigma)? == psi.power(c.m)?)
}

pub fn matrix_verify(a: &IntMatrix, b: &IntMatrix, c: &MatrixCertificate) -> Result<bool> {
    if !a.is_square() || !b.is_square() {
        return Err(Error::SizeMismatch("matrices must be square".into()));
    }
    let shape_ok = c.s.rows() == a.rows()
        && c.s.cols() == b.rows()
        && c.t.rows() == b.rows()
        && c.t.cols() == a.rows();
    if !shape_ok {
        return Err(Error::SizeMismatch(format!(
            "S is {}x{}, T is {}x{}, for {}x{} and {}x{}",
            c.s.rows(),
            c.s.cols(),
            c.t.rows(),
            c.t.cols(),
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    if c.n == 0 || c.m == 0 || !c.s.is_nonnegative() || !c.t.is_nonnegative() {
        return Ok(false);
    }
    Ok(c.s.mul(&c.t)? == a.pow(c.n)? && c.t.mul(&c.s)? == b.pow(c.m)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fib() -> Substitution {
        Substitution::from_indices(2, &[vec![1, 2], vec![1]]).unwrap()
    }

    fn cert(sigma: Substitution, tau: Substitution, n: u32, m: u32) -> WeakEquivCertificate {
        WeakEquivCertificate { sigma, tau, n, m }
    }

    #[test]
    fn fibonacci_and_square() {
        let c = cert(fib(), fib(), 2, 1);
        assert!(verify_certificate(&fib(), &fib().power(2).unwrap(), &c).unwrap());
        assert!(matrix_verify(&fib().abelianization(), &fib().power(2).unwrap().abelianization(), &c.abelianized()).unwrap());
    }

    #[test]
    fn identity_certificate() {
        let id = Substitution::identity(3);
        assert!(verify_certificate(&id, &id, &cert(id.clone(), id.clone(), 1, 1)).unwrap());
    }

    #[test]
    fn wrong_exponent_rejected() {
        let c = cert(Substitution::identity(2), fib(), 1, 2);
        assert!(!verify_certificate(&fib(), &fib(), &c).unwrap());
    }

    #[test]
    fn shape_mismatch_is_error() {
        let c = cert(Substitution::identity(1), Substitution::identity(1), 1, 1);
        assert!(verify_certificate(&fib(), &fib(), &c).is_err());
    }

    #[test]
    fn json_shape() {
        let c = cert(fib(), fib(), 2, 1);
        let j = serde_json::to_string(&c).unwrap();
        assert_eq!(
            j,
            r#"{"sigma":{"alphabet":2,"images":[[1,2],[1]]},"tau":{"alphabet":2,"images":[[1,2],[1]]},"n":2,"m":1}"#
        );
        let back: WeakEquivCertificate = serde_json::from_str(&j).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn swap_conjugacy() {
        let a = IntMatrix::from_i64(&[&[1, 1], &[1, 0]]);
        let b = IntMatrix::from_i64(&[&[0, 1], &[1, 1]]);
        let p = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        let c = MatrixCertificate {
            s: a.mul(&p).unwrap(),
            t: p,
            n: 1,
            m: 1,
        };
        assert!(matrix_verify(&a, &b, &c).unwrap());
    }
}
