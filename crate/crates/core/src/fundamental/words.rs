//! Words over generators and their formal inverses.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A generator or its inverse; serialized as `±(gen + 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "i64", try_from = "i64")]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

pub type Word = Vec<Letter>;

impl Letter {
    pub fn new(gen: usize) -> Letter {
        Letter { gen, inverse: false }
    }

    pub fn inv(self) -> Letter {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    /// Column index in a coset table: `2 * gen` for the generator, `2 * gen + 1` for its inverse.
    pub fn column(self) -> usize {
        2 * self.gen + self.inverse as usize
    }
}

impl From<Letter> for i64 {
    fn from(l: Letter) -> i64 {
        let v = l.gen as i64 + 1;
        if l.inverse {
            -v
        } else {
            v
        }
    }
}

impl TryFrom<i64> for Letter {
    type Error = String;
    fn try_from(v: i64) -> Result<Letter, String> {
        if v == 0 {
            return Err("letter 0 is not allowed; generators are numbered from 1".into());
        }
        Ok(Letter {
            gen: (v.unsigned_abs() - 1) as usize,
            inverse: v < 0,
        })
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}{}", self.gen, if self.inverse { "'" } else { "" })
    }
}

pub fn inverse(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inv()).collect()
}

pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free reduction, then removal of letters cancelling around the cycle.
pub fn cyclic_reduce(w: &[Letter]) -> Word {
    let w = free_reduce(w);
    let mut i = 0;
    let mut j = w.len();
    while j - i >= 2 && w[i] == w[j - 1].inv() {
        i += 1;
        j -= 1;
    }
    w[i..j].to_vec()
}

pub fn exponent_sums(w: &[Letter], n_gens: usize) -> Vec<i64> {
    let mut out = vec![0; n_gens];
    for l in w {
        out[l.gen] += if l.inverse { -1 } else { 1 };
    }
    out
}

pub fn format_word(w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}
