//! Faithful upper-unitriangular representation of the free class-2 group on
//! at most three generators.
//!
//! The image is block diagonal: one `2×2` block per generator recording its
//! exponent sum, and one Heisenberg `3×3` block per pair `a < b` with
//! `x_a ↦ I + E₁₂`, `x_b ↦ I + E₂₃`. The corner entry of the pair block
//! separates `[x_b, x_a]` powers once exponent sums agree.

use crate::error::{Error, Result};

use super::{collect, FreeGroupWord, NilpotentElement};

type Block = [[i128; 3]; 3];

const ID: Block = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

fn mul(a: &Block, b: &Block) -> Result<Block> {
    let mut out = [[0i128; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut acc: i128 = 0;
            for k in 0..3 {
                acc = a[i][k]
                    .checked_mul(b[k][j])
                    .and_then(|t| acc.checked_add(t))
                    .ok_or(Error::Overflow("matrix oracle"))?;
            }
            out[i][j] = acc;
        }
    }
    Ok(out)
}

/// Inverse of a unitriangular block.
fn inv(a: &Block) -> Block {
    let (x, y, z) = (a[0][1], a[1][2], a[0][2]);
    [[1, -x, x * y - z], [0, 1, -y], [0, 0, 1]]
}

fn pow(a: &Block, e: i64) -> Result<Block> {
    let mut base = if e < 0 { inv(a) } else { *a };
    let mut e = e.unsigned_abs();
    let mut acc = ID;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base)?;
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base)?;
        }
    }
    Ok(acc)
}

struct Representation {
    n: u32,
    pairs: Vec<(u32, u32)>,
}

impl Representation {
    fn new(n: u32) -> Self {
        let mut pairs = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                pairs.push((a, b));
            }
        }
        Self { n, pairs }
    }

    fn generator(&self, g: u32) -> Vec<Block> {
        let mut blocks = vec![ID; self.n as usize + self.pairs.len()];
        blocks[g as usize - 1][0][1] = 1;
        for (p, &(a, b)) in self.pairs.iter().enumerate() {
            let block = &mut blocks[self.n as usize + p];
            if g == a {
                block[0][1] = 1;
            } else if g == b {
                block[1][2] = 1;
            }
        }
        blocks
    }

    fn word(&self, w: &FreeGroupWord) -> Result<Vec<Block>> {
        let mut acc = vec![ID; self.n as usize + self.pairs.len()];
        for &(g, e) in w.syllables() {
            let gen = self.generator(g);
            for (a, b) in acc.iter_mut().zip(&gen) {
                *a = mul(a, &pow(b, e)?)?;
            }
        }
        Ok(acc)
    }
}

/// Compares the matrix image of `word` with that of the normal form
/// `element` (class 2, at most three generators). A mismatch means the
/// element is not the collected form of the word.
pub fn matrix_oracle_agrees(word: &FreeGroupWord, element: &NilpotentElement) -> Result<bool> {
    let ctx = element.context();
    let n = ctx.generator_count();
    if ctx.class() != 2 || n > 3 {
        return Err(Error::Unsupported(format!(
            "matrix oracle covers class 2 on at most 3 generators, got (n, c) = ({n}, {})",
            ctx.class()
        )));
    }
    ctx.check_word(word)?;
    let rep = Representation::new(n as u32);
    Ok(rep.word(word)? == rep.word(&element.to_word())?)
}

/// Collects `word` in class 2 and checks the result against the matrix
/// representation.
pub fn matrix_oracle_check(word: &FreeGroupWord, n: usize) -> Result<bool> {
    let element = collect(word, n, 2)?;
    matrix_oracle_agrees(word, &element)
}
