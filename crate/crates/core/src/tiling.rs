//! One-dimensional substitution tilings: collared substitutions, prototile
//! lengths and inflation patches.
//!
//! The collared alphabet `Ã` consists of the triples `a_i a_j a_k` that occur
//! in some `χ^ℓ(a_s)`. A triple is sent to the sliding windows of
//! `b_0 | χ(a_j) | b_{s+1}`, where `b_0` ends `χ(a_i)` and `b_{s+1}` starts
//! `χ(a_k)`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::field::{field_equal, FieldStatus, DEFAULT_HEIGHT_BOUND};
use crate::algebra::interval::{format_decimal, round_dyadic};
use crate::algebra::matrix::IntMatrix;
use crate::algebra::numfield::NumberField;
use crate::algebra::poly::QPoly;
use crate::algebra::roots::perron_root;
use crate::classify::{
    canonical_matrix_search, input_diagnostics, Evidence, Hypothesis, Status, Verdict,
    TAG_TILING_FIELD,
};
use crate::closure::subword_closure;
use crate::error::{Error, Result};
use crate::substitution::Substitution;
use crate::weak_equiv::SearchBounds;
use crate::word::{format_word, Letter, Word};

/// Longest candidate period word in the nondegeneracy scan.
const MAX_PERIOD_WORD: usize = 8;
/// Expansions are cut off beyond this many letters.
const MAX_EXPANSION: usize = 1 << 14;
/// Largest patch emitted.
pub const MAX_PATCH_TILES: usize = 1 << 20;

fn require_tiling_input(s: &Substitution) -> Result<()> {
    s.require_square()?;
    if !s.is_unbarred() {
        return Err(Error::Precondition(
            "tiling substitutions must not contain barred letters".into(),
        ));
    }
    Ok(())
}

/// `χ^k(w) = w^r`, which makes the tiling space contain a periodic tiling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodicWitness {
    pub word: Vec<i32>,
    pub power: usize,
    pub repetitions: usize,
}

/// Searches factors `w` of the language with `|w| ≤ 8` and powers
/// `k ≤ 2n` for `χ^k(w) = w^r`. Finding one proves degeneracy; finding none
/// is evidence only.
pub fn periodic_witness(s: &Substitution) -> Result<Option<PeriodicWitness>> {
    require_tiling_input(s)?;
    let n = s.domain_size();
    let mut candidates: BTreeSet<Word> = BTreeSet::new();
    for i in 1..=n {
        let mut w = vec![Letter::pos(i)];
        for _ in 0..=2 * n {
            for len in 1..=MAX_PERIOD_WORD.min(w.len()) {
                for win in w.windows(len) {
                    candidates.insert(win.to_vec());
                }
            }
            if w.len() > MAX_EXPANSION {
                break;
            }
            w = s.apply(&w)?;
        }
    }
    for w in &candidates {
        let mut img = w.clone();
        for k in 1..=2 * n {
            img = s.apply(&img)?;
            if img.len() > MAX_EXPANSION {
                break;
            }
            if img.len() % w.len() == 0 && img.chunks(w.len()).all(|c| c == &w[..]) {
                return Ok(Some(PeriodicWitness {
                    word: w.iter().map(|l| l.index()).collect(),
                    power: k,
                    repetitions: img.len() / w.len(),
                }));
            }
        }
    }
    Ok(None)
}

/// Bounded nondegeneracy check: `false` comes with a periodic witness, `true`
/// means the scan found none.
pub fn check_nondegenerate(s: &Substitution) -> Result<bool> {
    Ok(periodic_witness(s)?.is_none())
}

#[derive(Debug, Clone)]
pub struct CollaredSystem {
    pub base: Substitution,
    pub tilde_alphabet: Vec<Word>,
    pub tilde_chi: Substitution,
    /// `P[j][t] = 1` iff the middle letter of triple `t` is `a_{j+1}`.
    pub projection: IntMatrix,
    /// Triples seen at some level but not at arbitrarily high levels.
    pub transient_triples: Vec<Word>,
}

impl CollaredSystem {
    /// `P·A_χ̃ = A_χ·P` and `rank P = n`.
    pub fn intertwines(&self) -> Result<bool> {
        let p = &self.projection;
        let lhs = p.mul(&self.tilde_chi.abelianization())?;
        let rhs = self.base.abelianization().mul(p)?;
        Ok(lhs == rhs && p.rank() == self.base.domain_size())
    }

    pub fn triple_name(&self, t: usize) -> String {
        self.tilde_alphabet[t]
            .iter()
            .map(|l| l.index().to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}

impl fmt::Display for CollaredSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "collared alphabet ({} triples)", self.tilde_alphabet.len())?;
        for (t, w) in self.tilde_alphabet.iter().enumerate() {
            let img: Vec<String> = self
                .tilde_chi
                .image(t + 1)
                .iter()
                .map(|l| format!("[{}]", self.triple_name(l.abs() - 1)))
                .collect();
            writeln!(f, "{} = ({}) -> {}", t + 1, format_word(w), img.join(" "))?;
        }
        Ok(())
    }
}

/// Length ≤ 3 factors of the images of `words`.
fn next_factors(s: &Substitution, words: &BTreeSet<Word>) -> Result<BTreeSet<Word>> {
    let mut out = BTreeSet::new();
    for w in words {
        let img = s.apply(w)?;
        for len in 1..=3.min(img.len()) {
            for win in img.windows(len) {
                out.insert(win.to_vec());
            }
        }
    }
    Ok(out)
}

/// Triples occurring in `χ^ℓ(a_s)` for infinitely many `ℓ`.
fn recurrent_triples(s: &Substitution) -> Result<BTreeSet<Word>> {
    let mut level: BTreeSet<Word> = (1..=s.domain_size()).map(|i| vec![Letter::pos(i)]).collect();
    let mut history: Vec<BTreeSet<Word>> = Vec::new();
    loop {
        if let Some(start) = history.iter().position(|h| *h == level) {
            return Ok(history[start..]
                .iter()
                .flatten()
                .filter(|w| w.len() == 3)
                .cloned()
                .collect());
        }
        let next = next_factors(s, &level)?;
        history.push(level);
        level = next;
    }
}

pub fn collar(s: &Substitution) -> Result<CollaredSystem> {
    require_tiling_input(s)?;
    if !s.abelianization().is_aperiodic()? {
        return Err(Error::NotAperiodic);
    }
    let closure = subword_closure(s, 3)?;
    let alphabet: Vec<Word> = closure.words().iter().cloned().collect();
    let index = |w: &[Letter]| alphabet.binary_search_by(|t| t[..].cmp(w));
    let mut images = Vec::with_capacity(alphabet.len());
    for t in &alphabet {
        let mut ext = vec![*s.image_of(t[0]).last().expect("nonempty image")];
        ext.extend_from_slice(&s.image_of(t[1]));
        ext.push(s.image_of(t[2])[0]);
        let img = ext
            .windows(3)
            .map(|win| {
                index(win).map(|k| Letter::pos(k + 1)).map_err(|_| {
                    Error::Internal(format!(
                        "window {} of the collared image of ({}) is missing from the closure",
                        format_word(win),
                        format_word(t)
                    ))
                })
            })
            .collect::<Result<Word>>()?;
        images.push(img);
    }
    let tilde_chi = Substitution::square(images)?;
    let n = s.domain_size();
    let mut projection = IntMatrix::zeros(n, alphabet.len());
    for (t, w) in alphabet.iter().enumerate() {
        projection.set(w[1].abs() - 1, t, BigInt::one());
    }
    let recurrent = recurrent_triples(s)?;
    let transient_triples = alphabet
        .iter()
        .filter(|t| !recurrent.contains(*t))
        .cloned()
        .collect();
    let c = CollaredSystem {
        base: s.clone(),
        tilde_alphabet: alphabet,
        tilde_chi,
        projection,
        transient_triples,
    };
    if !c.intertwines()? {
        return Err(Error::Internal("collared system fails P·Ã = A·P".into()));
    }
    Ok(c)
}

/// The collared and the original matrix have the same Perron root.
pub fn collared_perron_agrees(c: &CollaredSystem) -> Result<bool> {
    let base = perron_root(&c.base.abelianization())?;
    let tilde = perron_root(&c.tilde_chi.abelianization()).map_err(|e| match e {
        Error::NotAperiodic => Error::Precondition("collared matrix is not aperiodic".into()),
        e => e,
    })?;
    Ok(base.minpoly() == tilde.minpoly() && base.cmp_value(&tilde) == std::cmp::Ordering::Equal)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tile {
    /// 1-based prototile index.
    pub prototile: usize,
    pub left: BigRational,
    pub length: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilingPatch {
    pub seed: usize,
    pub steps: u32,
    pub precision_bits: u32,
    /// Prototile lengths, seed tile normalized to 1, rounded to `2^-bits`.
    pub lengths: Vec<BigRational>,
    pub tiles: Vec<Tile>,
}

impl TilingPatch {
    pub fn total_length(&self) -> BigRational {
        self.tiles
            .last()
            .map_or_else(BigRational::zero, |t| &t.left + &t.length)
    }

    fn digits(&self) -> usize {
        (self.precision_bits as usize * 3 / 10).clamp(6, 30)
    }

    /// One line per tile: `index,prototile,left,length`.
    pub fn to_csv(&self) -> String {
        let d = self.digits();
        let mut out = String::from("index,prototile,left,length\n");
        for (i, t) in self.tiles.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                i,
                t.prototile,
                format_decimal(&t.left, d),
                format_decimal(&t.length, d)
            ));
        }
        out
    }
}

impl Serialize for TilingPatch {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct T {
            prototile: usize,
            left: String,
            length: String,
        }
        #[derive(Serialize)]
        struct P {
            seed: usize,
            steps: u32,
            precision_bits: u32,
            prototile_lengths: Vec<String>,
            total_length: String,
            tiles: Vec<T>,
        }
        let d = self.digits();
        P {
            seed: self.seed,
            steps: self.steps,
            precision_bits: self.precision_bits,
            prototile_lengths: self.lengths.iter().map(|x| format_decimal(x, d)).collect(),
            total_length: format_decimal(&self.total_length(), d),
            tiles: self
                .tiles
                .iter()
                .map(|t| T {
                    prototile: t.prototile,
                    left: format_decimal(&t.left, d),
                    length: format_decimal(&t.length, d),
                })
                .collect(),
        }
        .serialize(s)
    }
}

/// Exact left Perron eigenvector in `Q(λ)`, scaled so entry `seed` is 1.
pub fn prototile_lengths(s: &Substitution, seed: usize) -> Result<(NumberField, Vec<QPoly>)> {
    let a = s.abelianization();
    let lambda = perron_root(&a)?;
    let field = NumberField::new(lambda);
    let n = s.domain_size();
    // Rows of (Aᵀ - λI).
    let m: Vec<Vec<QPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = QPoly::constant(BigRational::from_integer(a.get(j, i).clone()));
                    if i == j {
                        field.sub(&c, &field.gen())
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    let v = field
        .kernel_vector(&m)
        .ok_or_else(|| Error::Internal("A - λI is nonsingular".into()))?;
    let scale = field.inv(&v[seed - 1])?;
    let v = v.iter().map(|x| field.mul(x, &scale)).collect();
    Ok((field, v))
}

/// Lays out `χ^k(a_seed)` from 0 with prototile lengths rounded to
/// `2^-precision_bits`; left endpoints are exact sums of those lengths.
pub fn emit_patch(s: &Substitution, seed: usize, steps: u32, precision_bits: u32) -> Result<TilingPatch> {
    require_tiling_input(s)?;
    if seed == 0 || seed > s.domain_size() {
        return Err(Error::DomainMismatch {
            index: seed as i64,
            size: s.domain_size(),
        });
    }
    let (field, v) = prototile_lengths(s, seed)?;
    let lengths: Vec<BigRational> = v
        .iter()
        .map(|x| round_dyadic(&field.enclose_to(x, precision_bits + 2).mid(), precision_bits))
        .collect();
    let mut w = vec![Letter::pos(seed)];
    for _ in 0..steps {
        w = s.apply(&w)?;
        if w.len() > MAX_PATCH_TILES {
            return Err(Error::Precondition(format!(
                "patch exceeds {MAX_PATCH_TILES} tiles"
            )));
        }
    }
    let mut left = BigRational::zero();
    let mut tiles = Vec::with_capacity(w.len());
    for l in &w {
        let length = lengths[l.abs() - 1].clone();
        let next = &left + &length;
        tiles.push(Tile {
            prototile: l.abs(),
            left,
            length,
        });
        left = next;
    }
    Ok(TilingPatch {
        seed,
        steps,
        precision_bits,
        lengths,
        tiles,
    })
}

fn tiling_input(s: &Substitution, name: &str) -> Result<CollaredSystem> {
    require_tiling_input(s).map_err(|e| Error::Precondition(format!("{name}: {e}")))?;
    if !s.abelianization().is_aperiodic()? {
        return Err(Error::Precondition(format!("{name} is not aperiodic")));
    }
    if let Some(w) = periodic_witness(s)? {
        return Err(Error::Precondition(format!(
            "{name} is degenerate: its {}th power sends {:?} to {} copies of itself",
            w.power, w.word, w.repetitions
        )));
    }
    collar(s)
}

/// Compares the tiling spaces of two substitutions. A difference of Perron
/// fields separates them; nothing here can prove them homeomorphic, so a
/// matrix certificate for the collared systems is only reported.
pub fn classify_tilings(chi: &Substitution, psi: &Substitution, bounds: &SearchBounds) -> Result<Verdict> {
    let (cx, cy) = (tiling_input(chi, "chi")?, tiling_input(psi, "psi")?);
    let inputs = vec![input_diagnostics(chi, false)?, input_diagnostics(psi, false)?];
    let mut hypotheses = vec![
        Hypothesis {
            name: "chi aperiodic".into(),
            holds: true,
        },
        Hypothesis {
            name: "psi aperiodic".into(),
            holds: true,
        },
        Hypothesis {
            name: "chi nondegenerate (bounded scan)".into(),
            holds: true,
        },
        Hypothesis {
            name: "psi nondegenerate (bounded scan)".into(),
            holds: true,
        },
    ];
    let lx = collared_perron_agrees(&cx)?;
    let ly = collared_perron_agrees(&cy)?;
    hypotheses.push(Hypothesis {
        name: "chi collared Perron root equal".into(),
        holds: lx,
    });
    hypotheses.push(Hypothesis {
        name: "psi collared Perron root equal".into(),
        holds: ly,
    });
    let alpha = perron_root(&chi.abelianization())?;
    let beta = perron_root(&psi.abelianization())?;
    let field = field_equal(&alpha, &beta, DEFAULT_HEIGHT_BOUND)?;
    let mut notes = Vec::new();
    for (name, c) in [("chi", &cx), ("psi", &cy)] {
        if !c.transient_triples.is_empty() {
            notes.push(format!(
                "{name}: {} collared triples occur only at low levels",
                c.transient_triples.len()
            ));
        }
    }
    if field.status == FieldStatus::NotEqual && lx && ly {
        return Ok(Verdict {
            status: Status::NotHomeomorphic,
            evidence: Evidence::FieldObstruction {
                field: field.clone(),
            },
            provenance: vec![TAG_TILING_FIELD.to_string()],
            hypotheses,
            inputs,
            field: Some(field),
            notes,
        });
    }
    let m = canonical_matrix_search(&cx.tilde_chi, &cy.tilde_chi, bounds)?;
    notes.push(if m.certificate.is_some() {
        "collared matrices are weakly equivalent: consistent, not conclusive".into()
    } else {
        "no collared matrix certificate within the bounds".into()
    });
    Ok(Verdict {
        status: Status::Unknown,
        evidence: Evidence::Search {
            bounds: *bounds,
            word_search: None,
            matrix_search: Some(m),
        },
        provenance: Vec::new(),
        hypotheses,
        inputs,
        field: Some(field),
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::brute_force_factors;
    use crate::word::word;
    use num_traits::Signed;

    fn sub(n: usize, images: &[Vec<i32>]) -> Substitution {
        Substitution::from_indices(n, images).unwrap()
    }

    fn fib() -> Substitution {
        sub(2, &[vec![1, 2], vec![1]])
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn nondegeneracy() {
        assert!(check_nondegenerate(&fib()).unwrap());
        assert!(!check_nondegenerate(&sub(1, &[vec![1]])).unwrap());
        assert!(!check_nondegenerate(&sub(1, &[vec![1, 1]])).unwrap());
        // Thue–Morse and period doubling are aperiodic.
        assert!(check_nondegenerate(&sub(2, &[vec![1, 2], vec![2, 1]])).unwrap());
        assert!(check_nondegenerate(&sub(2, &[vec![1, 2], vec![1, 1]])).unwrap());
        // (ab)(ab)… is a fixed point: ab -> abab.
        let w = periodic_witness(&sub(2, &[vec![1, 2, 1], vec![2]])).unwrap();
        assert!(w.is_some());
        assert!(periodic_witness(&sub(1, &[vec![-1]])).is_err());
    }

    #[test]
    fn fibonacci_collar() {
        let c = collar(&fib()).unwrap();
        let expect: Vec<Word> = [[1, 1, 2], [1, 2, 1], [2, 1, 1], [2, 1, 2]]
            .iter()
            .map(|w| word(w).unwrap())
            .collect();
        assert_eq!(c.tilde_alphabet, expect);
        // (aba): windows of b·a·a = (baa), a single letter since |χ(b)| = 1.
        assert_eq!(c.tilde_chi.image(2), &word(&[3]).unwrap()[..]);
        // (bab): windows of a·ab·a = (aab)(aba).
        assert_eq!(c.tilde_chi.image(4), &word(&[1, 2]).unwrap()[..]);
        assert_eq!(c.projection, IntMatrix::from_i64(&[&[1, 0, 1, 1], &[0, 1, 0, 0]]));
        assert!(c.intertwines().unwrap());
        assert!(collared_perron_agrees(&c).unwrap());
        assert!(c.transient_triples.is_empty());
    }

    #[test]
    fn collar_matches_scan() {
        for s in [fib(), sub(2, &[vec![1, 2, 2], vec![1]]), sub(3, &[vec![1, 2], vec![3], vec![1]])] {
            let c = collar(&s).unwrap();
            let starts: Vec<Letter> = (1..=s.domain_size()).map(Letter::pos).collect();
            let scan = brute_force_factors(&s, 3, &starts, 12, 1 << 16).unwrap();
            assert_eq!(c.tilde_alphabet.iter().cloned().collect::<BTreeSet<_>>(), scan);
            assert!(collared_perron_agrees(&c).unwrap());
        }
    }

    #[test]
    fn doubling_collar_is_trivial() {
        let c = collar(&sub(1, &[vec![1, 1]])).unwrap();
        assert_eq!(c.tilde_alphabet.len(), 1);
        assert_eq!(c.tilde_chi.abelianization(), IntMatrix::from_i64(&[&[2]]));
        assert!(collared_perron_agrees(&c).unwrap());
    }

    #[test]
    fn fibonacci_patch() {
        let p = emit_patch(&fib(), 1, 3, 64).unwrap();
        let kinds: Vec<usize> = p.tiles.iter().map(|t| t.prototile).collect();
        assert_eq!(kinds, vec![1, 2, 1, 1, 2]);
        assert_eq!(p.lengths[0], q(1, 1));
        // 1/φ = φ - 1.
        let err = (&p.lengths[1] - q(6180339887498949, 10_000_000_000_000_000)).abs();
        assert!(err < q(1, 1_000_000_000_000));
        for w in p.tiles.windows(2) {
            assert_eq!(&w[0].left + &w[0].length, w[1].left);
        }
        // φ³ = 2φ + 1.
        let total = p.total_length();
        let err = (total - q(42360679774997897, 10_000_000_000_000_000)).abs();
        assert!(err < q(1, 1_000_000_000_000));
    }

    #[test]
    fn zero_steps() {
        let p = emit_patch(&fib(), 2, 0, 32).unwrap();
        assert_eq!(p.tiles.len(), 1);
        assert_eq!(p.tiles[0].length, q(1, 1));
    }

    #[test]
    fn tiling_verdicts() {
        let b = SearchBounds::default();
        let v = classify_tilings(&fib(), &sub(2, &[vec![1, 2], vec![1, 1]]), &b).unwrap();
        assert_eq!(v.status, Status::NotHomeomorphic);
        let v = classify_tilings(&fib(), &fib(), &b).unwrap();
        assert_eq!(v.status, Status::Unknown);
        let Evidence::Search {
            matrix_search: Some(m),
            ..
        } = &v.evidence
        else {
            panic!("no search evidence");
        };
        let c = m.certificate.as_ref().unwrap();
        assert_eq!(c.t, IntMatrix::identity(4));
        assert!(v.notes.iter().any(|n| n.contains("consistent, not conclusive")));
        assert!(classify_tilings(&fib(), &sub(1, &[vec![1, 1]]), &b).is_err());
    }

    #[test]
    fn fibonacci_and_square_tilings() {
        let v = classify_tilings(&fib(), &fib().power(2).unwrap(), &SearchBounds::default()).unwrap();
        assert_eq!(v.status, Status::Unknown);
        assert!(v.notes.iter().any(|n| n.contains("consistent, not conclusive")));
    }
}
