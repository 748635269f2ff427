//! Tent maps `T_s(x) = sx + 2 - s` on `[0, c]`, `-sx + s` on `[c, 1]`, with
//! `c = (s-1)/s` periodic.
//!
//! The input is the kneading word `k_1…k_n` over `{L, R}`: the sides of `c`
//! on which `T(c), …, T^n(c)` lie, with `T^{n+1}(c) = c` implicit. Since
//! `T(c) = 1` and `T(1) = 0`, every word starts with `RL`.
//!
//! Orbit points are ranked by their itineraries in the unimodal order: `L <
//! C < R` at the first difference, reversed when the common prefix holds an
//! odd number of `R`s (the right branch reverses orientation). The ranked
//! orbit cuts `[0, 1]` into `J_1, …, J_n`, and `χ_s(a_i)` lists the intervals
//! covered by `T(J_i)`: ascending and unbarred left of `c`, descending and
//! barred right of it.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::algebra::interval::Interval;
use crate::algebra::numfield::NumberField;
use crate::algebra::poly::QPoly;
use crate::algebra::roots::{spectral_radius, AlgebraicReal};
use crate::error::{Error, Result};
use crate::substitution::Substitution;
use crate::word::{Letter, Word};

pub const MIN_PERIOD: usize = 3;
pub const MAX_PERIOD: usize = 12;

/// Widening steps allowed when an enclosure cannot separate two points.
const MAX_WIDENINGS: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    L,
    C,
    R,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KneadingWord {
    symbols: Vec<Sym>,
}

impl KneadingWord {
    /// Parses `RL`, `RLL`, … A trailing `C` is accepted. Pre-periodic
    /// notation such as `RL(L)` (the full tent map has `RLLL…`) is refused.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.contains('(') || t.contains(')') {
            return Err(Error::InvalidKneading(format!(
                "`{t}` is pre-periodic; the critical point must be periodic"
            )));
        }
        let t = t.strip_suffix('C').unwrap_or(t);
        let symbols = t
            .chars()
            .map(|ch| match ch {
                'L' => Ok(Sym::L),
                'R' => Ok(Sym::R),
                _ => Err(Error::InvalidKneading(format!("unexpected symbol `{ch}` in `{t}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        KneadingWord::from_symbols(symbols)
    }

    pub fn from_symbols(symbols: Vec<Sym>) -> Result<Self> {
        let w = KneadingWord { symbols };
        w.check_admissible()?;
        Ok(w)
    }

    pub fn symbols(&self) -> &[Sym] {
        &self.symbols
    }

    /// Period of the critical point, `n + 1`.
    pub fn period(&self) -> usize {
        self.symbols.len() + 1
    }

    /// Itinerary of `T^j(c)` over one period, `j = 0..=n`.
    pub fn itinerary(&self, j: usize) -> Vec<Sym> {
        let mut cycle = vec![Sym::C];
        cycle.extend_from_slice(&self.symbols);
        let p = cycle.len();
        (0..p).map(|k| cycle[(j + k) % p]).collect()
    }

    fn check_admissible(&self) -> Result<()> {
        let n = self.symbols.len();
        if n <= 1 {
            return Err(Error::InvalidKneading(format!(
                "period {} is excluded; the period must be at least {MIN_PERIOD}",
                n + 1
            )));
        }
        if self.symbols[..2] != [Sym::R, Sym::L] {
            return Err(Error::InvalidKneading(
                "T(c) = 1 lies right of c and T(1) = 0 left of it, so the word starts with RL"
                    .into(),
            ));
        }
        let top = self.itinerary(1);
        for j in 2..=n + 1 {
            if unimodal_cmp(&self.itinerary(j % (n + 1)), &top) != Ordering::Less {
                return Err(Error::InvalidKneading(format!(
                    "{self} is not shift-maximal (shift by {})",
                    j - 1
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for KneadingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            f.write_str(match s {
                Sym::L => "L",
                Sym::C => "C",
                Sym::R => "R",
            })?;
        }
        Ok(())
    }
}

impl Serialize for KneadingWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Unimodal order on itineraries of equal length.
pub fn unimodal_cmp(a: &[Sym], b: &[Sym]) -> Ordering {
    let mut reversed = false;
    for (x, y) in a.iter().zip(b) {
        if x != y {
            let o = x.cmp(y);
            return if reversed { o.reverse() } else { o };
        }
        if *x == Sym::R {
            reversed = !reversed;
        }
    }
    a.len().cmp(&b.len())
}

#[derive(Debug, Clone)]
pub struct TentModel {
    pub kneading: KneadingWord,
    /// `orbit_rank[j]` is the rank of `T^j(c)` among `0 = x_0 < … < x_n = 1`.
    pub orbit_rank: Vec<usize>,
    pub chi: Substitution,
    pub slope: AlgebraicReal,
}

impl TentModel {
    pub fn period(&self) -> usize {
        self.kneading.period()
    }

    /// Rank of the critical point; `J_i` with `i ≤` this lie left of `c`.
    pub fn critical_rank(&self) -> usize {
        self.orbit_rank[0]
    }
}

/// Orbit ranks, substitution and slope from an admissible kneading word. The
/// model is checked with exact arithmetic in `Q(s)` before it is returned.
pub fn build_tent_model(k: &KneadingWord) -> Result<TentModel> {
    let n = k.symbols().len();
    let mut order: Vec<usize> = (0..=n).collect();
    order.sort_by(|&a, &b| unimodal_cmp(&k.itinerary(a), &k.itinerary(b)));
    let mut rank = vec![0; n + 1];
    for (r, &j) in order.iter().enumerate() {
        rank[j] = r;
    }
    if rank[1] != n || rank[2] != 0 {
        return Err(Error::InvalidKneading(format!(
            "{k}: T(c) and T²(c) must be the extreme orbit points"
        )));
    }
    // point_at[r] = j with rank[j] = r; T(T^j c) = T^{j+1} c.
    let next_rank = |r: usize| rank[(order[r] + 1) % (n + 1)];
    let crit = rank[0];
    let mut images: Vec<Word> = Vec::with_capacity(n);
    for i in 1..=n {
        let (a, b) = (next_rank(i - 1), next_rank(i));
        let w: Word = if i <= crit {
            debug_assert!(a < b);
            (a + 1..=b).map(Letter::pos).collect()
        } else {
            debug_assert!(a > b);
            (b + 1..=a).rev().map(|l| Letter::pos(l).bar()).collect()
        };
        images.push(w);
    }
    let chi = Substitution::square(images)?;
    let slope = spectral_radius(&chi.abelianization())?;
    if slope.cmp_value(&AlgebraicReal::rational(BigRational::from_integer(1.into())))
        != Ordering::Greater
    {
        return Err(Error::InvalidKneading(format!(
            "{k} has zero entropy and is not realized by a tent map with s > 1"
        )));
    }
    let model = TentModel {
        kneading: k.clone(),
        orbit_rank: rank,
        chi,
        slope,
    };
    if !exact_orbit_check(&model)? {
        return Err(Error::InvalidKneading(format!(
            "{k} is not the kneading word of any tent map T_s"
        )));
    }
    Ok(model)
}

/// The orbit of `c` computed exactly in `Q(s)`, `j = 0..=n+1`.
fn exact_orbit(model: &TentModel) -> Result<(NumberField, Vec<QPoly>)> {
    let field = NumberField::new(model.slope.clone());
    let s = field.gen();
    let one = QPoly::one();
    let two = QPoly::constant(BigRational::from_integer(BigInt::from(2)));
    let c = field.sub(&one, &field.inv(&s)?);
    let mut orbit = vec![c.clone()];
    for _ in 0..=model.kneading.symbols().len() {
        let x = orbit.last().unwrap();
        let next = if field.cmp(x, &c) != Ordering::Greater {
            &field.mul(&s, x) + &field.sub(&two, &s)
        } else {
            field.sub(&s, &field.mul(&s, x))
        };
        orbit.push(field.reduce(&next));
    }
    Ok((field, orbit))
}

fn exact_orbit_check(model: &TentModel) -> Result<bool> {
    let (field, orbit) = exact_orbit(model)?;
    let n = model.kneading.symbols().len();
    let c = &orbit[0];
    if field.cmp(&orbit[n + 1], c) != Ordering::Equal {
        return Ok(false);
    }
    for (j, &sym) in model.kneading.symbols().iter().enumerate() {
        let want = if sym == Sym::L { Ordering::Less } else { Ordering::Greater };
        if field.cmp(&orbit[j + 1], c) != want {
            return Ok(false);
        }
    }
    for j in 0..=n {
        for k in 0..=n {
            let by_rank = model.orbit_rank[j].cmp(&model.orbit_rank[k]);
            if field.cmp(&orbit[j], &orbit[k]) != by_rank {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks a model against the tent map. The closing relation `T^{n+1}(c) = c`
/// is checked exactly in `Q(s)`; the sides of `c` and the rank order of the
/// orbit are read off interval enclosures of width `2^-precision_bits`,
/// widened on overlap. An overlap that survives the widening cap is an
/// [`Error::Inconclusive`].
pub fn verify_tent_model(model: &TentModel, precision_bits: u32) -> Result<bool> {
    let n = model.kneading.symbols().len();
    if model.orbit_rank.len() != n + 1 || model.chi.domain_size() != n {
        return Ok(false);
    }
    let (field, orbit) = exact_orbit(model)?;
    if !field.is_zero(&field.sub(&orbit[n + 1], &orbit[0])) {
        return Ok(false);
    }
    let mut bits = precision_bits.max(8);
    for _ in 0..=MAX_WIDENINGS {
        let enc: Vec<Interval> = orbit[..=n].iter().map(|x| field.enclose_to(x, bits)).collect();
        match orbit_consistent(model, &enc) {
            Some(v) => return Ok(v),
            None => bits *= 2,
        }
    }
    Err(Error::Inconclusive(format!(
        "orbit of {} not separated at 2^-{bits}",
        model.kneading
    )))
}

/// `None` when two enclosures overlap and the answer is not yet determined.
fn orbit_consistent(model: &TentModel, enc: &[Interval]) -> Option<bool> {
    let side = |x: &Interval| -> Option<Ordering> {
        if x.below(&enc[0]) {
            Some(Ordering::Less)
        } else if enc[0].below(x) {
            Some(Ordering::Greater)
        } else {
            None
        }
    };
    for (j, &sym) in model.kneading.symbols().iter().enumerate() {
        let want = if sym == Sym::L { Ordering::Less } else { Ordering::Greater };
        if side(&enc[j + 1])? != want {
            return Some(false);
        }
    }
    let mut by_rank: Vec<usize> = (0..enc.len()).collect();
    by_rank.sort_by_key(|&j| model.orbit_rank[j]);
    for w in by_rank.windows(2) {
        if model.orbit_rank[w[0]] == model.orbit_rank[w[1]] {
            return Some(false);
        }
        let (a, b) = (&enc[w[0]], &enc[w[1]]);
        if b.below(a) {
            return Some(false);
        }
        if !a.below(b) {
            return None;
        }
    }
    Some(true)
}

/// Realized kneading words of period `3..=max_period`, by period and then
/// by the unimodal order (increasing slope).
pub fn enumerate_kneading(max_period: usize) -> Result<Vec<KneadingWord>> {
    if !(MIN_PERIOD..=MAX_PERIOD).contains(&max_period) {
        return Err(Error::Precondition(format!(
            "max period must lie in {MIN_PERIOD}..={MAX_PERIOD}, got {max_period}"
        )));
    }
    let mut out = Vec::new();
    for n in MIN_PERIOD - 1..max_period {
        let mut level: Vec<KneadingWord> = Vec::new();
        for bits in 0..1u32 << (n - 2) {
            let mut symbols = vec![Sym::R, Sym::L];
            symbols.extend((0..n - 2).map(|b| if bits >> b & 1 == 1 { Sym::R } else { Sym::L }));
            if let Ok(w) = KneadingWord::from_symbols(symbols) {
                if build_tent_model(&w).is_ok() {
                    level.push(w);
                }
            }
        }
        level.sort_by(|a, b| unimodal_cmp(&a.itinerary(1), &b.itinerary(1)));
        out.extend(level);
    }
    Ok(out)
}
