//! Letters and words over the doubled alphabet `{a_1..a_n, ā_1..ā_n}`.
//!
//! A letter is a nonzero signed index: `+i` is `a_i` and `-i` is its barred
//! twin. The bar involution on words reverses the word and flips every sign.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(i32);

impl Letter {
    pub fn new(index: i32) -> Result<Self> {
        if index == 0 {
            Err(Error::ZeroLetter)
        } else {
            Ok(Letter(index))
        }
    }

    /// Unbarred letter `a_i` for a 1-based `i`.
    pub fn pos(i: usize) -> Self {
        Letter(i as i32)
    }

    pub fn index(self) -> i32 {
        self.0
    }

    /// 1-based alphabet position, ignoring the bar.
    pub fn abs(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_barred(self) -> bool {
        self.0 < 0
    }

    pub fn bar(self) -> Self {
        Letter(-self.0)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Finite word; may be empty during bookkeeping but never as a substitution image.
pub type Word = Vec<Letter>;

/// Builds a word from raw signed indices.
pub fn word(indices: &[i32]) -> Result<Word> {
    indices.iter().map(|&i| Letter::new(i)).collect()
}

pub fn bar(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.bar()).collect()
}

pub fn indices(w: &[Letter]) -> Vec<i32> {
    w.iter().map(|l| l.index()).collect()
}

pub fn format_word(w: &[Letter]) -> String {
    let parts: Vec<String> = w.iter().map(|l| l.to_string()).collect();
    parts.join(" ")
}
