//! Dynamics on the `2n` edge germs at the branch point.
//!
//! Germ `+i` leaves the branch point along the positive direction of the
//! `i`-th circle and `-i` along the negative one. A substitution sends germ
//! `g` to the first letter of `χ(g)`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::closure::subword_closure;
use crate::error::Result;
use crate::substitution::Substitution;
use crate::word::{word, Letter};

/// Longest iterate expanded when locating a fold position.
const MAX_WITNESS_LEN: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GermMap {
    n: usize,
    /// Targets of germs `+1, -1, +2, -2, …` in that order.
    targets: Vec<Letter>,
}

fn slot(g: Letter) -> usize {
    2 * (g.abs() - 1) + usize::from(g.is_barred())
}

/// All germs in the order `+1, -1, +2, -2, …`.
pub fn all_germs(n: usize) -> Vec<Letter> {
    (1..=n)
        .flat_map(|i| [Letter::pos(i), Letter::pos(i).bar()])
        .collect()
}

impl GermMap {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn apply(&self, g: Letter) -> Letter {
        self.targets[slot(g)]
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GermMap) -> GermMap {
        GermMap {
            n: self.n,
            targets: all_germs(self.n)
                .into_iter()
                .map(|g| self.apply(inner.apply(g)))
                .collect(),
        }
    }

    pub fn power(&self, k: usize) -> GermMap {
        let mut acc = GermMap {
            n: self.n,
            targets: all_germs(self.n),
        };
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    pub fn pairs(&self) -> Vec<(Letter, Letter)> {
        all_germs(self.n)
            .into_iter()
            .map(|g| (g, self.apply(g)))
            .collect()
    }
}

pub fn germ_map(s: &Substitution) -> Result<GermMap> {
    s.require_square()?;
    let targets = all_germs(s.domain_size())
        .into_iter()
        .map(|g| s.image_of(g)[0])
        .collect();
    Ok(GermMap {
        n: s.domain_size(),
        targets,
    })
}

/// `f_*^{2n}(E)`, which equals the eventual range for a map on `n` germ pairs.
pub fn eventual_range(s: &Substitution) -> Result<BTreeSet<Letter>> {
    let f = germ_map(s)?;
    let mut current: BTreeSet<Letter> = all_germs(f.n).into_iter().collect();
    for _ in 0..2 * f.n {
        current = current.iter().map(|&g| f.apply(g)).collect();
    }
    Ok(current)
}

/// `a_j ā_j` or `ā_j a_j` occurring in `χ^power(start)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FoldWitness {
    pub start: i32,
    pub power: usize,
    pub pair: [i32; 2],
    /// 0-based offset of the pair, when the iterate was short enough to expand.
    pub position: Option<usize>,
}

/// Fold witness of smallest power, ties broken by letter then pair order.
pub fn folds_at_b(s: &Substitution) -> Result<Option<FoldWitness>> {
    let closure = subword_closure(s, 2)?;
    let mut best: Option<(usize, [i32; 2], Letter)> = None;
    for j in 1..=s.domain_size() as i32 {
        for pair in [[j, -j], [-j, j]] {
            if let Some(o) = closure.origin(&word(&pair)?) {
                if best.map_or(true, |(lvl, _, _)| o.level < lvl) {
                    best = Some((o.level, pair, o.start));
                }
            }
        }
    }
    let Some((level, pair, start)) = best else {
        return Ok(None);
    };
    let w = word(&pair)?;
    let mut it = vec![start];
    for _ in 0..level {
        it = s.apply(&it)?;
        if it.len() > MAX_WITNESS_LEN {
            break;
        }
    }
    let position = if it.len() <= MAX_WITNESS_LEN {
        it.windows(2).position(|win| win == &w[..])
    } else {
        None
    };
    Ok(Some(FoldWitness {
        start: start.index(),
        power: level,
        pair,
        position,
    }))
}

/// The branch point is topologically distinguished: the map folds there or
/// the eventual germ range does not have exactly two elements.
pub fn is_distinguished(s: &Substitution) -> Result<bool> {
    Ok(folds_at_b(s)?.is_some() || eventual_range(s)?.len() != 2)
}

/// Every image letter is unbarred in the given orientation.
pub fn is_positive(s: &Substitution) -> bool {
    s.is_unbarred()
}

/// Circles that can be re-oriented so that all images become unbarred, as a
/// flip flag per circle (lexicographically least solution), if any.
///
/// Flipping circles in a set `F` replaces `χ` by `φχφ` where `φ` bars the
/// letters of `F`; a letter `ℓ` in the image of `a_i` then has sign
/// `sign(ℓ)·ε_i·ε_|ℓ|`, so we need a 2-colouring with those parities.
pub fn reorientation(s: &Substitution) -> Option<Vec<bool>> {
    let n = s.domain_size();
    let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    for i in 0..n {
        for l in s.image(i + 1) {
            let j = l.abs() - 1;
            adj[i].push((j, l.is_barred()));
            adj[j].push((i, l.is_barred()));
        }
    }
    let mut flip: Vec<Option<bool>> = vec![None; n];
    for root in 0..n {
        if flip[root].is_some() {
            continue;
        }
        flip[root] = Some(false);
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            let fu = flip[u].unwrap();
            for &(v, differ) in &adj[u] {
                let want = fu ^ differ;
                match flip[v] {
                    None => {
                        flip[v] = Some(want);
                        stack.push(v);
                    }
                    Some(f) if f != want => return None,
                    _ => {}
                }
            }
        }
    }
    Some(flip.into_iter().map(|f| f.unwrap()).collect())
}

/// Orientation preserving with respect to some orientation of the circles.
pub fn is_orientation_preserving(s: &Substitution) -> Result<bool> {
    s.require_square()?;
    Ok(reorientation(s).is_some())
}

/// Not distinguished, and the square is orientation preserving.
pub fn in_m_oi(s: &Substitution) -> Result<bool> {
    Ok(!is_distinguished(s)? && is_orientation_preserving(&s.power(2)?)?)
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

    fn l(i: i32) -> Letter {
        Letter::new(i).unwrap()
    }

    #[test]
    fn fibonacci_germs() {
        let f = germ_map(&fib()).unwrap();
        assert_eq!(
            f.pairs(),
            vec![(l(1), l(1)), (l(-1), l(-2)), (l(2), l(1)), (l(-2), l(-1))]
        );
        let r = eventual_range(&fib()).unwrap();
        assert_eq!(r, [l(1), l(-1), l(-2)].into_iter().collect());
        assert!(folds_at_b(&fib()).unwrap().is_none());
        assert!(is_distinguished(&fib()).unwrap());
        assert!(is_orientation_preserving(&fib()).unwrap());
        assert!(!in_m_oi(&fib()).unwrap());
    }

    #[test]
    fn identity_germs() {
        let id = Substitution::identity(3);
        let f = germ_map(&id).unwrap();
        assert!(f.pairs().iter().all(|(a, b)| a == b));
        assert_eq!(eventual_range(&id).unwrap().len(), 6);
        assert!(is_orientation_preserving(&id).unwrap());
    }

    #[test]
    fn doubling_map_not_distinguished() {
        let s = sub(1, &[vec![1, 1]]);
        assert_eq!(eventual_range(&s).unwrap().len(), 2);
        assert!(folds_at_b(&s).unwrap().is_none());
        assert!(!is_distinguished(&s).unwrap());
    }

    #[test]
    fn fold_in_image() {
        let s = sub(1, &[vec![1, -1]]);
        let w = folds_at_b(&s).unwrap().unwrap();
        assert_eq!((w.start, w.power, w.position), (1, 1, Some(0)));
        assert!(is_distinguished(&s).unwrap());
    }

    #[test]
    fn golden_tent_folds() {
        // χ²(a2) = χ(ā2 ā1) = a1 a2 ā2: the critical point lands on b.
        let s = sub(2, &[vec![2], vec![-2, -1]]);
        let w = folds_at_b(&s).unwrap().unwrap();
        assert_eq!((w.start, w.power, w.pair, w.position), (2, 2, [2, -2], Some(1)));
        let expanded = s.power(2).unwrap().image(2).to_vec();
        assert_eq!(expanded, word(&[1, 2, -2]).unwrap());
    }

    #[test]
    fn reversal_squares_to_identity() {
        let s = sub(1, &[vec![-1]]);
        assert!(!is_positive(&s));
        assert!(!is_orientation_preserving(&s).unwrap());
        assert!(is_orientation_preserving(&s.power(2).unwrap()).unwrap());
    }

    #[test]
    fn reorientation_makes_positive() {
        // Flipping circle 2 turns a1 -> a1 ā2, a2 -> ā1 into a positive map.
        let s = sub(2, &[vec![1, -2], vec![-1]]);
        assert!(!is_positive(&s));
        assert_eq!(reorientation(&s), Some(vec![false, true]));
    }

    #[test]
    fn germ_power_matches_substitution_power() {
        let s = sub(3, &[vec![2, -3], vec![-1, 3], vec![3, 1, 2]]);
        for k in 1..=4u32 {
            assert_eq!(
                germ_map(&s.power(k).unwrap()).unwrap(),
                germ_map(&s).unwrap().power(k as usize)
            );
        }
    }
}
