//! Finite sets of short factors of all iterates `χ^ℓ(a_i)`, `ℓ ≥ 1`.
//!
//! A window of length `≤ k` in `χ(w)` lies inside `χ(v)` for some factor `v`
//! of `w` with `|v| ≤ k`, because images are nonempty. So the factors of
//! length `≤ k` over all iterates form the least set containing the factors
//! of the images and closed under "take factors of `χ(v)`". The fixpoint is
//! computed breadth first, so each factor records the smallest `ℓ` at which
//! it appears.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::substitution::Substitution;
use crate::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubwordClosure {
    order: usize,
    words: BTreeSet<Word>,
    origin: BTreeMap<Word, Origin>,
}

/// Earliest known occurrence: the factor occurs in `χ^level(start)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Origin {
    pub start: Letter,
    pub level: usize,
}

impl SubwordClosure {
    pub fn order(&self) -> usize {
        self.order
    }

    /// The factors of length exactly `order`, sorted.
    pub fn words(&self) -> &BTreeSet<Word> {
        &self.words
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        self.words.contains(w)
    }

    pub fn origin(&self, w: &[Letter]) -> Option<Origin> {
        self.origin.get(w).copied()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

fn factors_upto(w: &[Letter], k: usize, mut f: impl FnMut(&[Letter])) {
    for i in 0..w.len() {
        for len in 1..=k.min(w.len() - i) {
            f(&w[i..i + len]);
        }
    }
}

/// Factors of length `order` (2 or 3) over all iterates. For order 2 the
/// barred starting letters are seeded as well when any image has a bar.
pub fn subword_closure(s: &Substitution, order: usize) -> Result<SubwordClosure> {
    s.require_square()?;
    if !(order == 2 || order == 3) {
        return Err(Error::Precondition(format!(
            "closure order must be 2 or 3, got {order}"
        )));
    }
    let mut starts: Vec<Letter> = (1..=s.domain_size()).map(Letter::pos).collect();
    if order == 2 && !s.is_unbarred() {
        starts.extend((1..=s.domain_size()).map(|i| Letter::pos(i).bar()));
    }

    let mut seen: BTreeMap<Word, Origin> = BTreeMap::new();
    let mut queue: VecDeque<Word> = VecDeque::new();
    for &a in &starts {
        factors_upto(&s.image_of(a), order, |u| {
            if !seen.contains_key(u) {
                seen.insert(u.to_vec(), Origin { start: a, level: 1 });
                queue.push_back(u.to_vec());
            }
        });
    }
    while let Some(v) = queue.pop_front() {
        let o = seen[&v];
        let img = s.apply(&v)?;
        factors_upto(&img, order, |u| {
            if !seen.contains_key(u) {
                let next = Origin {
                    start: o.start,
                    level: o.level + 1,
                };
                seen.insert(u.to_vec(), next);
                queue.push_back(u.to_vec());
            }
        });
    }
    let words: BTreeSet<Word> = seen.keys().filter(|w| w.len() == order).cloned().collect();
    let origin = seen.into_iter().filter(|(w, _)| w.len() == order).collect();
    Ok(SubwordClosure {
        order,
        words,
        origin,
    })
}

/// Length-`k` factors of `χ^ℓ(a)` for `1 ≤ ℓ ≤ max_level` and the given
/// starting letters, by direct expansion. Used as an independent oracle.
pub fn brute_force_factors(
    s: &Substitution,
    k: usize,
    starts: &[Letter],
    max_level: usize,
    max_len: usize,
) -> Result<BTreeSet<Word>> {
    let mut out = BTreeSet::new();
    for &a in starts {
        let mut w = vec![a];
        for _ in 0..max_level {
            w = s.apply(&w)?;
            if w.len() > max_len {
                break;
            }
            for win in w.windows(k) {
                out.insert(win.to_vec());
            }
        }
    }
    Ok(out)
}
