use serde::{Deserialize, Serialize};

use crate::abelian::IntegerMatrix;
use crate::error::{Error, Result};
use crate::nilpotent::FreeGroupWord;

use super::{
    check_identities, SimplicialMaps, TruncatedSimplicialAbelianGroup, TruncatedSimplicialSet, ValidationReport,
};

/// Truncated simplicial group, free in each dimension. Structure maps are
/// given by the images of the free generators, as words over the
/// generators of the target dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeSimplicialGroupTruncation {
    truncation: usize,
    /// For each dimension, the simplices of the underlying set that serve
    /// as free generators.
    generators: Vec<Vec<usize>>,
    faces: Vec<Vec<Vec<FreeGroupWord>>>,
    degeneracies: Vec<Vec<Vec<FreeGroupWord>>>,
}

impl FreeSimplicialGroupTruncation {
    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn generator_count(&self, n: usize) -> usize {
        self.generators[n].len()
    }

    /// Simplices of `K_{n+1}` that generate dimension `n`.
    pub fn generators(&self, n: usize) -> &[usize] {
        &self.generators[n]
    }

    /// `d_i` on the generators of dimension `n`.
    pub fn d(&self, n: usize, i: usize) -> &[FreeGroupWord] {
        &self.faces[n][i]
    }

    /// `s_j` on the generators of dimension `n`.
    pub fn s(&self, n: usize, j: usize) -> &[FreeGroupWord] {
        &self.degeneracies[n][j]
    }

    /// Checks the simplicial identities on every generator, up to free
    /// reduction.
    pub fn validate(&self) -> ValidationReport {
        check_identities(self)
    }
}

impl SimplicialMaps for FreeSimplicialGroupTruncation {
    type Map = Vec<FreeGroupWord>;

    fn truncation(&self) -> usize {
        self.truncation
    }

    fn face(&self, n: usize, i: usize) -> &Vec<FreeGroupWord> {
        &self.faces[n][i]
    }

    fn degeneracy(&self, n: usize, j: usize) -> &Vec<FreeGroupWord> {
        &self.degeneracies[n][j]
    }

    fn then(&self, f: &Vec<FreeGroupWord>, g: &Vec<FreeGroupWord>) -> Vec<FreeGroupWord> {
        f.iter()
            .map(|w| w.substitute(g).expect("images stay within the next dimension"))
            .collect()
    }

    fn identity(&self, n: usize) -> Vec<FreeGroupWord> {
        (1..=self.generators[n].len() as u32)
            .map(FreeGroupWord::generator)
            .collect()
    }
}

/// Kan's loop group `GK` of a reduced simplicial set truncated at `D ≥ 2`,
/// truncated at `D − 1`. Dimension `n` is free on `K_{n+1} ∖ s_0(K_n)`, the
/// simplices in `s_0(K_n)` are identified with the identity, and
/// `d_0 k = (d_1 k)(d_0 k)⁻¹`, `d_i k = d_{i+1} k`, `s_i k = s_{i+1} k`.
#[allow(clippy::needless_range_loop)]
pub fn kan_loop_group(k: &TruncatedSimplicialSet) -> Result<FreeSimplicialGroupTruncation> {
    if !k.is_reduced() {
        return Err(Error::NotReduced(k.size(0)));
    }
    let d = k.truncation();
    if d < 2 {
        return Err(Error::invalid("the loop group needs a truncation of at least 2"));
    }
    let top = d - 1;
    // index[n][x] = generator number of x ∈ K_{n+1}, if x ∉ s_0(K_n)
    let mut index: Vec<Vec<Option<u32>>> = Vec::with_capacity(top + 1);
    let mut generators = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let mut degenerate = vec![false; k.size(n + 1)];
        for x in 0..k.size(n) {
            degenerate[k.s(n, 0, x)] = true;
        }
        let mut idx = vec![None; k.size(n + 1)];
        let mut gens = Vec::new();
        for (x, deg) in degenerate.iter().enumerate() {
            if !deg {
                gens.push(x);
                idx[x] = Some(gens.len() as u32);
            }
        }
        index.push(idx);
        generators.push(gens);
    }
    let word = |n: usize, x: usize| index[n][x].map_or_else(FreeGroupWord::identity, FreeGroupWord::generator);
    let mut faces = vec![Vec::new()];
    for n in 1..=top {
        let mut level = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let images = generators[n]
                .iter()
                .map(|&x| {
                    if i == 0 {
                        word(n - 1, k.d(n + 1, 1, x)).concat(&word(n - 1, k.d(n + 1, 0, x)).inverse())
                    } else {
                        word(n - 1, k.d(n + 1, i + 1, x))
                    }
                })
                .collect();
            level.push(images);
        }
        faces.push(level);
    }
    let mut degeneracies = Vec::with_capacity(top);
    for n in 0..top {
        let level = (0..=n)
            .map(|j| {
                generators[n]
                    .iter()
                    .map(|&x| word(n + 1, k.s(n + 1, j + 1, x)))
                    .collect()
            })
            .collect();
        degeneracies.push(level);
    }
    Ok(FreeSimplicialGroupTruncation {
        truncation: top,
        generators,
        faces,
        degeneracies,
    })
}

/// Abelianisation `F/γ_2F`: every structure map becomes its exponent-sum
/// matrix.
pub fn abelianize(f: &FreeSimplicialGroupTruncation) -> Result<TruncatedSimplicialAbelianGroup> {
    let ranks: Vec<usize> = f.generators.iter().map(Vec::len).collect();
    let matrix = |images: &[FreeGroupWord], target: usize| -> Result<IntegerMatrix> {
        let rows = images
            .iter()
            .map(|w| w.exponent_sums(target))
            .collect::<Result<Vec<_>>>()?;
        IntegerMatrix::from_rows(target, &rows)
    };
    let faces = (0..=f.truncation)
        .map(|n| {
            f.faces[n]
                .iter()
                .map(|m| matrix(m, ranks[n - 1]))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let degeneracies = (0..f.truncation)
        .map(|n| {
            f.degeneracies[n]
                .iter()
                .map(|m| matrix(m, ranks[n + 1]))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    TruncatedSimplicialAbelianGroup::new(f.truncation, ranks, faces, degeneracies)
}
