//! Lattice basis reduction with exact rational Gram-Schmidt data.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// LLL-reduces a basis of linearly independent integer row vectors in place
/// with parameter 3/4.
pub fn lll_reduce(basis: &mut [Vec<BigInt>]) {
    let n = basis.len();
    if n < 2 {
        return;
    }
    let delta = BigRational::new(3.into(), 4.into());
    let half = BigRational::new(1.into(), 2.into());

    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut bsq = vec![BigRational::zero(); n];
    let mut bstar: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut v: Vec<BigRational> = basis[i]
            .iter()
            .cloned()
            .map(BigRational::from_integer)
            .collect();
        for j in 0..i {
            let num: BigRational = basis[i]
                .iter()
                .zip(&bstar[j])
                .map(|(x, y)| BigRational::from_integer(x.clone()) * y)
                .sum();
            mu[i][j] = num / &bsq[j];
            for (vk, bk) in v.iter_mut().zip(&bstar[j]) {
                *vk -= &mu[i][j] * bk;
            }
        }
        bsq[i] = v.iter().map(|x| x * x).sum();
        bstar.push(v);
    }
    drop(bstar);

    let reduce = |basis: &mut [Vec<BigInt>], mu: &mut [Vec<BigRational>], k: usize, l: usize| {
        if mu[k][l].abs() > half {
            let q = mu[k][l].round();
            let qi = q.to_integer();
            let (lo, hi) = basis.split_at_mut(k);
            for (x, y) in hi[0].iter_mut().zip(&lo[l]) {
                *x -= &qi * y;
            }
            mu[k][l] -= &q;
            for i in 0..l {
                let d = &q * &mu[l][i];
                mu[k][i] -= d;
            }
        }
    };

    let mut k = 1;
    while k < n {
        reduce(basis, &mut mu, k, k - 1);
        let m = mu[k][k - 1].clone();
        if bsq[k] < (&delta - &m * &m) * &bsq[k - 1] {
            basis.swap(k, k - 1);
            for j in 0..k - 1 {
                let t = mu[k][j].clone();
                mu[k][j] = mu[k - 1][j].clone();
                mu[k - 1][j] = t;
            }
            let b = &bsq[k] + &m * &m * &bsq[k - 1];
            mu[k][k - 1] = &m * &bsq[k - 1] / &b;
            bsq[k] = &bsq[k - 1] * &bsq[k] / &b;
            bsq[k - 1] = b;
            for i in k + 1..n {
                let t = mu[i][k].clone();
                mu[i][k] = &mu[i][k - 1] - &m * &t;
                mu[i][k - 1] = t + &mu[k][k - 1] * &mu[i][k];
            }
            k = (k - 1).max(1);
        } else {
            for l in (0..k - 1).rev() {
                reduce(basis, &mut mu, k, l);
            }
            k += 1;
        }
    }
}

/// Small integer relation `Σ a_i x_i ≈ 0` for values given as integers scaled
/// by a common power of two. Returns the coefficient vectors of the reduced
/// basis, shortest first.
pub fn integer_relations(scaled: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = scaled.len();
    let mut basis: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row = vec![BigInt::zero(); n + 1];
            row[i] = BigInt::one();
            row[n] = scaled[i].clone();
            row
        })
        .collect();
    lll_reduce(&mut basis);
    basis.sort_by_key(|row| dot(row, row));
    basis.into_iter().map(|mut r| {
        r.pop();
        r
    }).collect()
}
