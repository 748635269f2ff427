#![allow(dead_code)]

use invlim::algebra::matrix::IntMatrix;
use invlim::word::word;
use invlim::{Substitution, Word};
use num_bigint::BigInt;
use proptest::prelude::*;

pub fn sub(n: usize, images: &[Vec<i32>]) -> Substitution {
    Substitution::from_indices(n, images).unwrap()
}

pub fn fib() -> Substitution {
    sub(2, &[vec![1, 2], vec![1]])
}

pub fn signed_letter(n: usize) -> impl Strategy<Value = i32> {
    (1..=n as i32, any::<bool>()).prop_map(|(i, b)| if b { -i } else { i })
}

pub fn word_over(n: usize, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(signed_letter(n), 0..=max).prop_map(|v| word(&v).unwrap())
}

pub fn substitution_sized(n: usize, m: usize, barred: bool, max_len: usize) -> impl Strategy<Value = Substitution> {
    let letter = if barred {
        signed_letter(m).boxed()
    } else {
        (1..=m as i32).boxed()
    };
    prop::collection::vec(prop::collection::vec(letter, 1..=max_len), n)
        .prop_map(move |imgs| sub(m, &imgs))
}

pub fn substitution(barred: bool) -> impl Strategy<Value = Substitution> {
    (1..=3usize).prop_flat_map(move |n| substitution_sized(n, n, barred, 4))
}

pub fn matrix(n: usize, max: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(0..=max, n), n).prop_map(|rows| {
        let rows: Vec<Vec<BigInt>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect();
        IntMatrix::from_rows(&rows).unwrap()
    })
}

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(m: &[Vec<Vec<BigInt>>]) -> Vec<BigInt> {
    // Entries are polynomials in x (ascending coefficients).
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = vec![BigInt::from(0)];
    for j in 0..n {
        let minor: Vec<Vec<Vec<BigInt>>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let term = poly_mul(&m[0][j], &cofactor_det(&minor));
        let sign = if j % 2 == 0 { 1 } else { -1 };
        acc = poly_add(&acc, &term, sign);
    }
    acc
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[BigInt], b: &[BigInt], sign: i32) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y * sign;
    }
    while out.len() > 1 && out.last() == Some(&BigInt::from(0)) {
        out.pop();
    }
    out
}

/// `det(xI - A)` by cofactor expansion, ascending coefficients.
pub fn char_poly_oracle(a: &IntMatrix) -> Vec<BigInt> {
    let n = a.rows();
    let m: Vec<Vec<Vec<BigInt>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = -a.get(i, j).clone();
                    if i == j {
                        vec![c, BigInt::from(1)]
                    } else {
                        vec![c]
                    }
                })
                .collect()
        })
        .collect();
    cofactor_det(&m)
}

/// All complex roots of a real polynomial (ascending coefficients), by
/// Durand–Kerner iteration.
pub fn complex_roots(coeffs: &[f64]) -> Vec<(f64, f64)> {
    let d = coeffs.len() - 1;
    let lead = coeffs[d];
    let c: Vec<f64> = coeffs.iter().map(|x| x / lead).collect();
    let mul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let div = |a: (f64, f64), b: (f64, f64)| {
        let n = b.0 * b.0 + b.1 * b.1;
        ((a.0 * b.0 + a.1 * b.1) / n, (a.1 * b.0 - a.0 * b.1) / n)
    };
    let eval = |z: (f64, f64)| {
        let mut acc = (0.0, 0.0);
        for k in (0..=d).rev() {
            acc = mul(acc, z);
            acc.0 += c[k];
        }
        acc
    };
    let mut roots: Vec<(f64, f64)> = (0..d)
        .map(|k| {
            let mut z = (1.0, 0.0);
            for _ in 0..k {
                z = mul(z, (0.4, 0.9));
            }
            z
        })
        .collect();
    for _ in 0..2000 {
        for i in 0..d {
            let mut den = (1.0, 0.0);
            for j in 0..d {
                if i != j {
                    den = mul(den, (roots[i].0 - roots[j].0, roots[i].1 - roots[j].1));
                }
            }
            let step = div(eval(roots[i]), den);
            roots[i] = (roots[i].0 - step.0, roots[i].1 - step.1);
        }
    }
    roots
}
