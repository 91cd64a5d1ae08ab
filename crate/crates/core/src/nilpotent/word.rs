use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Element of a free group as a freely reduced sequence of generator powers.
/// Generators are numbered from 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<(u32, i64)>", into = "Vec<(u32, i64)>")]
pub struct FreeGroupWord {
    syllables: Vec<(u32, i64)>,
}

impl TryFrom<Vec<(u32, i64)>> for FreeGroupWord {
    type Error = Error;

    fn try_from(v: Vec<(u32, i64)>) -> Result<Self> {
        if v.iter().any(|(g, _)| *g == 0) {
            return Err(Error::invalid("generator indices start at 1"));
        }
        Ok(Self::from_syllables(v))
    }
}

impl From<FreeGroupWord> for Vec<(u32, i64)> {
    fn from(w: FreeGroupWord) -> Self {
        w.syllables
    }
}

impl FreeGroupWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn generator(g: u32) -> Self {
        Self::power_of(g, 1)
    }

    pub fn power_of(g: u32, e: i64) -> Self {
        assert!(g >= 1, "generator indices start at 1");
        Self::from_syllables(vec![(g, e)])
    }

    /// Normalises: merges adjacent equal generators and drops zero powers.
    pub fn from_syllables(syllables: impl IntoIterator<Item = (u32, i64)>) -> Self {
        let mut out: Vec<(u32, i64)> = Vec::new();
        for (g, e) in syllables {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.0 == g => {
                    last.1 += e;
                    if last.1 == 0 {
                        out.pop();
                    }
                }
                _ => out.push((g, e)),
            }
        }
        Self { syllables: out }
    }

    pub fn syllables(&self) -> &[(u32, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Total number of letters, counting `x^k` as `|k|` letters.
    pub fn letter_length(&self) -> u64 {
        self.syllables.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    pub fn max_generator(&self) -> u32 {
        self.syllables.iter().map(|(g, _)| *g).max().unwrap_or(0)
    }

    pub fn concat(&self, other: &Self) -> Self {
        Self::from_syllables(self.syllables.iter().chain(&other.syllables).copied())
    }

    pub fn inverse(&self) -> Self {
        Self {
            syllables: self.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Vec::with_capacity(base.syllables.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            out.extend_from_slice(&base.syllables);
        }
        Self::from_syllables(out)
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(a: &Self, b: &Self) -> Self {
        a.inverse().concat(&b.inverse()).concat(a).concat(b)
    }

    /// Left-normed `[w1, w2, …, wk] = [[w1, w2], …, wk]`.
    pub fn left_normed(words: &[Self]) -> Self {
        let mut it = words.iter();
        let first = it.next().cloned().unwrap_or_default();
        it.fold(first, |acc, w| Self::commutator(&acc, w))
    }

    /// Exponent sum of each generator `1..=n`.
    pub fn exponent_sums(&self, n: usize) -> Result<Vec<i64>> {
        let mut out = vec![0i64; n];
        for &(g, e) in &self.syllables {
            let slot = out
                .get_mut(g as usize - 1)
                .ok_or_else(|| Error::invalid(format!("generator x{g} out of range 1..={n}")))?;
            *slot += e;
        }
        Ok(out)
    }

    /// Replaces each generator `g` by `images[g - 1]`.
    pub fn substitute(&self, images: &[FreeGroupWord]) -> Result<Self> {
        let mut out = Vec::new();
        for &(g, e) in &self.syllables {
            let img = images
                .get(g as usize - 1)
                .ok_or_else(|| Error::invalid(format!("no image for generator x{g}")))?;
            out.extend_from_slice(img.pow(e).syllables());
        }
        Ok(Self::from_syllables(out))
    }
}

impl fmt::Display for FreeGroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        for (k, (g, e)) in self.syllables.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if *e == 1 {
                write!(f, "x{g}")?;
            } else {
                write!(f, "x{g}^{e}")?;
            }
        }
        Ok(())
    }
}
