//! Word-level certificate search.
//!
//! For fixed exponents the unknowns are the words `τ(a_i)` and `σ(c_j)`. Each
//! `χ^n(a_i)` must parse as `σ(t_1)σ(t_2)…` where `t_1 t_2 … = τ(a_i)`: the
//! search reads `χ^n(a_i)` left to right, choosing the next letter of
//! `τ(a_i)` and, the first time a `σ` image is needed, its length. Partial
//! assignments are pruned by comparing the known parts of `τ(σ(c_j))` with
//! `ψ^m(c_j)` from both ends. Letters of `ψ`'s alphabet never used by `τ`
//! get their `σ` image afterwards by factoring `ψ^m(c_j)` over the
//! dictionary of `τ` images.

use std::cmp::Ordering;

use serde::Serialize;

use super::certificate::{verify_certificate, WeakEquivCertificate};
use super::{SearchBounds, SpectralFilter};
use crate::error::Result;
use crate::substitution::Substitution;
use crate::word::{bar, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub certificate: Option<WeakEquivCertificate>,
    pub nodes: u64,
    /// The node budget ran out; absence is then not even bounded-complete.
    pub budget_exhausted: bool,
    /// Exponent pairs that survived the spectral filter, in search order.
    pub searched_pairs: Vec<(u32, u32)>,
}

/// Letters in tie-break order: `a_1, ā_1, a_2, ā_2, …`.
fn letter_key(l: Letter) -> (usize, bool) {
    (l.abs(), l.is_barred())
}

fn letters(n: usize) -> Vec<Letter> {
    (1..=n)
        .flat_map(|i| [Letter::pos(i), Letter::pos(i).bar()])
        .collect()
}

#[derive(Debug, PartialEq, Eq, PartialOrd, Ord)]
struct CertKey {
    exp_sum: u32,
    n: u32,
    total_len: usize,
    tau_len: usize,
    tau_not_identity: bool,
    tau: Vec<(usize, bool)>,
    tau_lengths: Vec<usize>,
    sigma: Vec<(usize, bool)>,
    sigma_lengths: Vec<usize>,
}

impl CertKey {
    fn of(c: &WeakEquivCertificate) -> Self {
        let flat = |s: &Substitution| -> Vec<(usize, bool)> {
            s.images().iter().flatten().map(|&l| letter_key(l)).collect()
        };
        let tau_not_identity =
            !(c.tau.is_square() && c.tau == Substitution::identity(c.tau.domain_size()));
        CertKey {
            exp_sum: c.n + c.m,
            n: c.n,
            total_len: c.sigma.total_length() + c.tau.total_length(),
            tau_len: c.tau.total_length(),
            tau_not_identity,
            tau: flat(&c.tau),
            tau_lengths: c.tau.image_lengths(),
            sigma: flat(&c.sigma),
            sigma_lengths: c.sigma.image_lengths(),
        }
    }
}

struct Parser<'a> {
    chi: &'a Substitution,
    psi: &'a Substitution,
    n: u32,
    m: u32,
    x: Vec<Word>,
    y: Vec<Word>,
    max_len: usize,
    sigma: Vec<Option<Word>>,
    tau: Vec<Word>,
    /// `τ` images with index below this are complete.
    done: usize,
    nodes: u64,
    max_nodes: u64,
    exhausted: bool,
    best: Option<(CertKey, WeakEquivCertificate)>,
}

fn image(w: &[Letter], barred: bool) -> Word {
    if barred {
        bar(w)
    } else {
        w.to_vec()
    }
}

impl Parser<'_> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.exhausted = true;
        }
        !self.exhausted
    }

    fn tau_image(&self, l: Letter) -> Option<Word> {
        let k = l.abs() - 1;
        (k < self.done).then(|| image(&self.tau[k], l.is_barred()))
    }

    /// Known parts of `τ(σ(c_j))` agree with `ψ^m(c_j)` at both ends.
    fn consistent(&self) -> bool {
        for (j, s) in self.sigma.iter().enumerate() {
            let Some(s) = s else { continue };
            let target = &self.y[j];
            let mut lo = 0;
            let mut all_known = true;
            let mut min_len = 0;
            for &l in s {
                match self.tau_image(l) {
                    Some(t) => min_len += t.len(),
                    None => {
                        min_len += 1;
                        all_known = false;
                    }
                }
            }
            if min_len > target.len() || (all_known && min_len != target.len()) {
                return false;
            }
            let mut prefix_end = s.len();
            for (idx, &l) in s.iter().enumerate() {
                let Some(t) = self.tau_image(l) else {
                    prefix_end = idx;
                    break;
                };
                if !target[lo..].starts_with(&t) {
                    return false;
                }
                lo += t.len();
            }
            let mut hi = target.len();
            for &l in s[prefix_end..].iter().rev() {
                let Some(t) = self.tau_image(l) else { break };
                if hi < lo + t.len() || target[hi - t.len()..hi] != t[..] {
                    return false;
                }
                hi -= t.len();
            }
        }
        true
    }

    fn parse(&mut self, i: usize, pos: usize) {
        if !self.tick() {
            return;
        }
        if i == self.x.len() {
            self.complete_sigma();
            return;
        }
        let len_i = self.x[i].len();
        if pos == len_i {
            if !self.tau[i].is_empty() {
                self.done = i + 1;
                if self.consistent() {
                    self.parse(i + 1, 0);
                }
                self.done = i;
            }
            return;
        }
        if self.tau[i].len() >= self.max_len {
            return;
        }
        for c in letters(self.y.len()) {
            let j = c.abs() - 1;
            match &self.sigma[j] {
                Some(s) => {
                    let img = image(s, c.is_barred());
                    if self.x[i][pos..].starts_with(&img) {
                        self.tau[i].push(c);
                        self.parse(i, pos + img.len());
                        self.tau[i].pop();
                    }
                }
                None => {
                    for l in 1..=(len_i - pos).min(self.max_len) {
                        let seg = &self.x[i][pos..pos + l];
                        self.sigma[j] = Some(image(seg, c.is_barred()));
                        self.tau[i].push(c);
                        if self.consistent() {
                            self.parse(i, pos + l);
                        }
                        self.tau[i].pop();
                        self.sigma[j] = None;
                        if self.exhausted {
                            return;
                        }
                    }
                }
            }
            if self.exhausted {
                return;
            }
        }
    }

    /// All `σ(c_j)` for the unused letters, as factorizations of `ψ^m(c_j)`.
    fn complete_sigma(&mut self) {
        let dict: Vec<(Letter, Word)> = letters(self.x.len())
            .into_iter()
            .map(|l| (l, self.tau_image(l).expect("all τ images complete")))
            .collect();
        let mut options: Vec<(usize, Vec<Word>)> = Vec::new();
        for j in 0..self.sigma.len() {
            if self.sigma[j].is_none() {
                let f = self.factorizations(&dict, j);
                if f.is_empty() || self.exhausted {
                    return;
                }
                options.push((j, f));
            }
        }
        let mut choice = vec![0usize; options.len()];
        loop {
            if !self.tick() {
                return;
            }
            let mut sigma: Vec<Word> = Vec::with_capacity(self.sigma.len());
            let mut k = 0;
            for (j, s) in self.sigma.iter().enumerate() {
                match s {
                    Some(w) => sigma.push(w.clone()),
                    None => {
                        debug_assert_eq!(options[k].0, j);
                        sigma.push(options[k].1[choice[k]].clone());
                        k += 1;
                    }
                }
            }
            self.offer(sigma);
            // Odometer over the option lists.
            let mut d = 0;
            while d < choice.len() {
                choice[d] += 1;
                if choice[d] < options[d].1.len() {
                    break;
                }
                choice[d] = 0;
                d += 1;
            }
            if d == choice.len() {
                return;
            }
        }
    }

    fn factorizations(&mut self, dict: &[(Letter, Word)], j: usize) -> Vec<Word> {
        let target = self.y[j].clone();
        let mut dead = vec![false; target.len() + 1];
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.factor_rec(dict, &target, 0, &mut dead, &mut cur, &mut out);
        out
    }

    /// Returns whether some factorization reaches the end from `pos`.
    fn factor_rec(
        &mut self,
        dict: &[(Letter, Word)],
        target: &[Letter],
        pos: usize,
        dead: &mut [bool],
        cur: &mut Word,
        out: &mut Vec<Word>,
    ) -> bool {
        if !self.tick() {
            return false;
        }
        if pos == target.len() {
            if !cur.is_empty() {
                out.push(cur.clone());
            }
            return true;
        }
        if dead[pos] || cur.len() >= self.max_len {
            return false;
        }
        let mut any = false;
        for (l, w) in dict {
            if target[pos..].starts_with(w) {
                cur.push(*l);
                any |= self.factor_rec(dict, target, pos + w.len(), dead, cur, out);
                cur.pop();
            }
        }
        // A failure proves the position dead only if the length cap could not
        // have been reached below it.
        if !any && !self.exhausted && cur.len() + (target.len() - pos) <= self.max_len {
            dead[pos] = true;
        }
        any
    }

    fn offer(&mut self, sigma: Vec<Word>) {
        let p = self.x.len();
        let q = self.y.len();
        let (Ok(sigma), Ok(tau)) = (
            Substitution::new(p, sigma),
            Substitution::new(q, self.tau.clone()),
        ) else {
            return;
        };
        let cert = WeakEquivCertificate {
            sigma,
            tau,
            n: self.n,
            m: self.m,
        };
        let key = CertKey::of(&cert);
        let better = self
            .best
            .as_ref()
            .map_or(true, |(k, _)| key.cmp(k) == Ordering::Less);
        if better && verify_certificate(self.chi, self.psi, &cert).unwrap_or(false) {
            self.best = Some((key, cert));
        }
    }
}

/// Least certificate within `bounds` under the order: `n + m`, `n`, total
/// image length, length of `τ`, `τ` = identity first, then the images of `τ`
/// and `σ` letter by letter (`a_1 < ā_1 < a_2 < …`). Every returned
/// certificate has passed [`verify_certificate`].
pub fn search_certificate(
    chi: &Substitution,
    psi: &Substitution,
    bounds: &SearchBounds,
) -> Result<SearchOutcome> {
    chi.require_square()?;
    psi.require_square()?;
    let filter = SpectralFilter::new(&chi.abelianization(), &psi.abelianization(), bounds)?;
    let mut outcome = SearchOutcome {
        certificate: None,
        nodes: 0,
        budget_exhausted: false,
        searched_pairs: Vec::new(),
    };
    for (n, m) in bounds.exponent_pairs() {
        if !filter.admits(n, m) {
            continue;
        }
        outcome.searched_pairs.push((n, m));
        let mut parser = Parser {
            chi,
            psi,
            n,
            m,
            x: chi.power(n)?.images().to_vec(),
            y: psi.power(m)?.images().to_vec(),
            max_len: bounds.max_len,
            sigma: vec![None; psi.domain_size()],
            tau: vec![Vec::new(); chi.domain_size()],
            done: 0,
            nodes: 0,
            max_nodes: bounds.max_nodes.saturating_sub(outcome.nodes),
            exhausted: false,
            best: None,
        };
        parser.parse(0, 0);
        outcome.nodes += parser.nodes;
        if let Some((_, c)) = parser.best {
            outcome.certificate = Some(c);
            outcome.budget_exhausted = parser.exhausted;
            return Ok(outcome);
        }
        if parser.exhausted {
            outcome.budget_exhausted = true;
            return Ok(outcome);
        }
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(n: usize, images: &[Vec<i32>]) -> Substitution {
        Substitution::from_indices(n, images).unwrap()
    }

    fn fib() -> Substitution {
        sub(2, &[vec![1, 2], vec![1]])
    }

    #[test]
    fn fibonacci_and_its_square() {
        let sq = fib().power(2).unwrap();
        let b = SearchBounds {
            max_n: 4,
            max_m: 4,
            max_len: 8,
            ..SearchBounds::default()
        };
        let c = search_certificate(&fib(), &sq, &b).unwrap().certificate.unwrap();
        assert_eq!((c.n, c.m), (2, 1));
        assert_eq!(c.sigma, fib());
        assert_eq!(c.tau, fib());
    }

    #[test]
    fn self_equivalence_is_identity() {
        for s in [fib(), sub(2, &[vec![2], vec![-2, -1]]), sub(1, &[vec![-1, 1, 1]])] {
            let b = SearchBounds {
                max_n: 2,
                max_m: 2,
                ..SearchBounds::default()
            };
            let c = search_certificate(&s, &s, &b).unwrap().certificate.unwrap();
            assert_eq!((c.n, c.m), (1, 1));
            assert_eq!(c.sigma, s);
            assert_eq!(c.tau, Substitution::identity(s.domain_size()));
        }
    }

    #[test]
    fn different_fields_have_no_certificate() {
        let o = search_certificate(&fib(), &sub(1, &[vec![1, 1]]), &SearchBounds::default()).unwrap();
        assert!(o.certificate.is_none());
        assert!(o.searched_pairs.is_empty());
        assert!(!o.budget_exhausted);
    }

    #[test]
    fn relabelled_alphabet() {
        // Swapping the letters of Fibonacci gives a -> b, b -> b a.
        let other = sub(2, &[vec![2], vec![2, 1]]);
        let o = search_certificate(&fib(), &other, &SearchBounds::default()).unwrap();
        let c = o.certificate.unwrap();
        assert!(verify_certificate(&fib(), &other, &c).unwrap());
        assert_eq!((c.n, c.m), (1, 1));
        assert_eq!(c.tau, sub(2, &[vec![2], vec![1]]));
    }

    #[test]
    fn budget_is_reported() {
        let b = SearchBounds {
            max_nodes: 3,
            ..SearchBounds::default()
        };
        let o = search_certificate(&fib(), &fib(), &b).unwrap();
        assert!(o.budget_exhausted);
    }
}
