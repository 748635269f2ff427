//! Bar-symmetric substitutions `A_n -> W(A_m)`.
//!
//! Only the images of unbarred letters are stored; the image of `ā_i` is
//! always `bar(image of a_i)`, so bar-symmetry holds by construction.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::matrix::IntMatrix;
use crate::error::{Error, Result};
use crate::word::{bar, format_word, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "SubstitutionRepr", into = "SubstitutionRepr")]
pub struct Substitution {
    codomain: usize,
    images: Vec<Word>,
    surjective: bool,
}

/// JSON shape: `{"alphabet": n, "images": [[...], ...]}`, with an optional
/// `"codomain"` when it differs from the domain size.
#[derive(Serialize, Deserialize)]
struct SubstitutionRepr {
    alphabet: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    codomain: Option<usize>,
    images: Vec<Vec<i32>>,
}

impl TryFrom<SubstitutionRepr> for Substitution {
    type Error = Error;

    fn try_from(r: SubstitutionRepr) -> Result<Self> {
        if r.images.len() != r.alphabet {
            return Err(Error::SizeMismatch(format!(
                "alphabet {} but {} images",
                r.alphabet,
                r.images.len()
            )));
        }
        Substitution::from_indices(r.codomain.unwrap_or(r.alphabet), &r.images)
    }
}

impl From<Substitution> for SubstitutionRepr {
    fn from(s: Substitution) -> Self {
        let codomain = (!s.is_square()).then_some(s.codomain);
        SubstitutionRepr {
            alphabet: s.domain_size(),
            codomain,
            images: s
                .images
                .iter()
                .map(|w| w.iter().map(|l| l.index()).collect())
                .collect(),
        }
    }
}

impl Substitution {
    pub fn new(codomain: usize, images: Vec<Word>) -> Result<Self> {
        if images.is_empty() || codomain == 0 {
            return Err(Error::SizeMismatch("alphabets must be nonempty".into()));
        }
        let mut seen = vec![false; codomain];
        for (i, w) in images.iter().enumerate() {
            if w.is_empty() {
                return Err(Error::EmptyImage(i + 1));
            }
            for l in w {
                if l.abs() > codomain {
                    return Err(Error::DomainMismatch {
                        index: l.index() as i64,
                        size: codomain,
                    });
                }
                seen[l.abs() - 1] = true;
            }
        }
        let surjective = seen.iter().all(|&b| b);
        Ok(Substitution {
            codomain,
            images,
            surjective,
        })
    }

    /// Square substitution on `images.len()` letters.
    pub fn square(images: Vec<Word>) -> Result<Self> {
        Substitution::new(images.len(), images)
    }

    pub fn from_indices(codomain: usize, images: &[Vec<i32>]) -> Result<Self> {
        let images = images
            .iter()
            .map(|w| crate::word::word(w))
            .collect::<Result<Vec<_>>>()?;
        Substitution::new(codomain, images)
    }

    pub fn identity(n: usize) -> Self {
        Substitution {
            codomain: n,
            images: (1..=n).map(|i| vec![Letter::pos(i)]).collect(),
            surjective: true,
        }
    }

    pub fn domain_size(&self) -> usize {
        self.images.len()
    }

    pub fn codomain_size(&self) -> usize {
        self.codomain
    }

    pub fn is_square(&self) -> bool {
        self.domain_size() == self.codomain
    }

    pub fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                domain: self.domain_size(),
                codomain: self.codomain,
            })
        }
    }

    /// Every codomain letter occurs, barred or not, in some image.
    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    /// No barred letter occurs in any image.
    pub fn is_unbarred(&self) -> bool {
        self.images.iter().flatten().all(|l| !l.is_barred())
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// Image of the unbarred letter `a_i`, 1-based.
    pub fn image(&self, i: usize) -> &[Letter] {
        &self.images[i - 1]
    }

    pub fn image_of(&self, l: Letter) -> Word {
        let w = &self.images[l.abs() - 1];
        if l.is_barred() {
            bar(w)
        } else {
            w.clone()
        }
    }

    /// Appends the image of `l` to `out`; `l` must be in range.
    pub fn push_image(&self, l: Letter, out: &mut Word) {
        let w = &self.images[l.abs() - 1];
        if l.is_barred() {
            out.extend(w.iter().rev().map(|x| x.bar()));
        } else {
            out.extend_from_slice(w);
        }
    }

    pub fn check_word(&self, w: &[Letter]) -> Result<()> {
        match w.iter().find(|l| l.abs() > self.domain_size()) {
            Some(l) => Err(Error::DomainMismatch {
                index: l.index() as i64,
                size: self.domain_size(),
            }),
            None => Ok(()),
        }
    }

    pub fn apply(&self, w: &[Letter]) -> Result<Word> {
        self.check_word(w)?;
        let mut out = Vec::new();
        for &l in w {
            self.push_image(l, &mut out);
        }
        Ok(out)
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &Substitution) -> Result<Substitution> {
        if inner.codomain != self.domain_size() {
            return Err(Error::SizeMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.domain_size(),
                self.codomain,
                inner.domain_size(),
                inner.codomain
            )));
        }
        let images = inner
            .images
            .iter()
            .map(|w| self.apply(w))
            .collect::<Result<Vec<_>>>()?;
        Substitution::new(self.codomain, images)
    }

    pub fn power(&self, k: u32) -> Result<Substitution> {
        self.require_square()?;
        if k == 0 {
            return Err(Error::ZeroPower);
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// `A[j][i]` counts occurrences of `a_j` and `ā_j` in the image of `a_i`.
    pub fn abelianization(&self) -> IntMatrix {
        let mut counts = vec![vec![0u64; self.domain_size()]; self.codomain];
        for (i, w) in self.images.iter().enumerate() {
            for l in w {
                counts[l.abs() - 1][i] += 1;
            }
        }
        let rows: Vec<Vec<BigInt>> = counts
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect();
        IntMatrix::from_rows(&rows).expect("rectangular by construction")
    }

    /// Sum of image lengths.
    pub fn total_length(&self) -> usize {
        self.images.iter().map(Vec::len).sum()
    }

    /// All image letters in order, as raw indices.
    pub fn flattened(&self) -> Vec<i32> {
        self.images.iter().flatten().map(|l| l.index()).collect()
    }

    pub fn image_lengths(&self) -> Vec<usize> {
        self.images.iter().map(Vec::len).collect()
    }
}

/// The text file format: `alphabet N` then one `i : j1 j2 ...` line per letter.
impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_square() {
            writeln!(f, "alphabet {}", self.domain_size())?;
        } else {
            writeln!(f, "alphabet {} {}", self.domain_size(), self.codomain)?;
        }
        for (i, w) in self.images.iter().enumerate() {
            writeln!(f, "{} : {}", i + 1, format_word(w))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::word;

    fn fib() -> Substitution {
        Substitution::from_indices(2, &[vec![1, 2], vec![1]]).unwrap()
    }

    fn w(v: &[i32]) -> Word {
        word(v).unwrap()
    }

    #[test]
    fn apply_examples() {
        let s = fib();
        assert_eq!(s.apply(&w(&[1])).unwrap(), w(&[1, 2]));
        assert_eq!(s.apply(&w(&[-1])).unwrap(), w(&[-2, -1]));
        assert_eq!(s.apply(&w(&[1, 2, 1])).unwrap(), w(&[1, 2, 1, 1, 2]));
        assert!(matches!(
            s.apply(&w(&[3])),
            Err(Error::DomainMismatch { index: 3, size: 2 })
        ));
    }

    #[test]
    fn compose_and_power() {
        let s = fib();
        assert_eq!(s.compose(&Substitution::identity(2)).unwrap(), s);
        assert_eq!(s.compose(&s).unwrap().image(1), &w(&[1, 2, 1])[..]);
        assert_eq!(s.power(1).unwrap(), s);
        assert_eq!(s.power(3).unwrap().image(1), &w(&[1, 2, 1, 1, 2])[..]);
        assert_eq!(s.power(0), Err(Error::ZeroPower));
        let rect = Substitution::from_indices(3, &[vec![1, 3], vec![2]]).unwrap();
        assert!(matches!(rect.power(2), Err(Error::NotSquare { .. })));
        assert!(s.compose(&rect).is_err());
    }

    #[test]
    fn abelianization_examples() {
        assert_eq!(fib().abelianization(), IntMatrix::from_i64(&[&[1, 1], &[1, 0]]));
        let tent = Substitution::from_indices(2, &[vec![2], vec![-2, -1]]).unwrap();
        assert_eq!(tent.abelianization(), IntMatrix::from_i64(&[&[0, 1], &[1, 1]]));
        assert_eq!(Substitution::identity(3).abelianization(), IntMatrix::identity(3));
        let a4 = fib().abelianization().pow(4).unwrap();
        assert_eq!(fib().power(4).unwrap().abelianization(), a4);
    }

    #[test]
    fn rejects_bad_images() {
        assert_eq!(
            Substitution::from_indices(2, &[vec![1], vec![]]),
            Err(Error::EmptyImage(2))
        );
        assert_eq!(
            Substitution::from_indices(2, &[vec![1, 0]]),
            Err(Error::ZeroLetter)
        );
    }

    #[test]
    fn surjectivity_flag() {
        assert!(fib().is_surjective());
        let s = Substitution::from_indices(2, &[vec![1], vec![-1]]).unwrap();
        assert!(!s.is_surjective());
    }

    #[test]
    fn json_round_trip() {
        let s = Substitution::from_indices(2, &[vec![2], vec![-2, -1]]).unwrap();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"alphabet":2,"images":[[2],[-2,-1]]}"#);
        let back: Substitution = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
        let rect = Substitution::from_indices(3, &[vec![1, 3], vec![2]]).unwrap();
        let j = serde_json::to_string(&rect).unwrap();
        assert_eq!(j, r#"{"alphabet":2,"codomain":3,"images":[[1,3],[2]]}"#);
        assert_eq!(serde_json::from_str::<Substitution>(&j).unwrap(), rect);
    }
}
