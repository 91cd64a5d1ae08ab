//! Hopf-type computation of the `c`-nilpotent multiplier of a finitely
//! generated abelian group.
//!
//! For `G = ⊕ Z_{n_i} = F/R` with `F` free on `x_1..x_k`, `R` contains
//! `γ_2(F)`, so `M^(c)(G) = γ_{c+1}(F) / [R, _c F]` and `[R, _c F]`
//! contains `γ_{c+2}(F)`. Modulo `γ_{c+2}` brackets are multilinear, hence
//! `[R, _c F]` is spanned by `n_i · [x_i, x_{j_1}, …, x_{j_c}]` over
//! generator tuples, and the multiplier is the cokernel of those rows in
//! the weight-`(c+1)` Hall coordinates.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::abelian::{cokernel, FgAbelianGroup, IntegerMatrix};
use crate::error::{Error, Result};
use crate::hall::{witt, DEFAULT_BASIS_CAP};

use super::{FreeGroupWord, NilpotentContext, NilpotentElement};

/// Weight-`len` Hall coordinates of the left-normed commutator
/// `[x_{l_0}, x_{l_1}, …]`, collected in class `class ≥ len`.
pub fn bracket_expand(leaves: &[u32], n: usize, class: usize) -> Result<Vec<i64>> {
    if leaves.is_empty() || leaves.len() > class {
        return Err(Error::invalid(format!(
            "bracket of length {} needs 1 ≤ length ≤ class = {class}",
            leaves.len()
        )));
    }
    let ctx = NilpotentContext::shared(n, class)?;
    let words: Vec<FreeGroupWord> = leaves.iter().map(|&g| FreeGroupWord::generator(g)).collect();
    top_weight(&ctx, &FreeGroupWord::left_normed(&words), leaves.len())
}

/// Weight-`w` component of the normal form of `word`.
pub fn top_weight(ctx: &Arc<NilpotentContext>, word: &FreeGroupWord, w: usize) -> Result<Vec<i64>> {
    let e = NilpotentElement::from_word(ctx, word)?;
    Ok(e.weight_component(w).to_vec())
}

type Expansions = Arc<Vec<(usize, Vec<i64>)>>;

/// Distinct nonzero expansions of `[x_i, x_{j_1}, …, x_{j_c}]`, tagged by `i`
/// (0-based).
fn expansions(k: usize, c: usize) -> Result<Expansions> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Expansions>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(e) = cache.lock().expect("expansion cache poisoned").get(&(k, c)) {
        return Ok(e.clone());
    }
    let ctx = NilpotentContext::shared(k, c + 1)?;
    let gens: Vec<FreeGroupWord> = (1..=k as u32).map(FreeGroupWord::generator).collect();
    let mut seen = BTreeSet::new();
    let mut tuple = vec![0usize; c + 1];
    loop {
        let words: Vec<FreeGroupWord> = tuple.iter().map(|&t| gens[t].clone()).collect();
        let row = top_weight(&ctx, &FreeGroupWord::left_normed(&words), c + 1)?;
        if row.iter().any(|x| *x != 0) {
            seen.insert((tuple[0], row));
        }
        // odometer over {0..k}^{c+1}
        let mut pos = c + 1;
        loop {
            if pos == 0 {
                let out: Expansions = Arc::new(seen.into_iter().collect());
                let mut guard = cache.lock().expect("expansion cache poisoned");
                return Ok(guard.entry((k, c)).or_insert(out).clone());
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < k {
                break;
            }
            tuple[pos] = 0;
        }
    }
}

/// `M^(c)(⊕ Z_{n_i})`; an entry `0` stands for a free summand `Z`.
pub fn nilpotent_multiplier_abelian(invariants: &[u64], c: usize) -> Result<FgAbelianGroup> {
    if c == 0 {
        return Err(Error::invalid("class must be at least 1"));
    }
    let k = invariants.len();
    if k <= 1 {
        return Ok(FgAbelianGroup::trivial());
    }
    let cols = witt(k, c + 1);
    if cols > DEFAULT_BASIS_CAP as u128 {
        return Err(Error::ResourceLimit {
            what: "weight-(c+1) Hall basis",
            needed: cols,
            cap: DEFAULT_BASIS_CAP as u128,
        });
    }
    let mut rows: BTreeSet<Vec<i128>> = BTreeSet::new();
    for (i, row) in expansions(k, c)?.iter() {
        let n = invariants[*i];
        if n == 0 {
            continue;
        }
        rows.insert(row.iter().map(|x| i128::from(*x) * i128::from(n)).collect());
    }
    let rows: Vec<Vec<i128>> = rows.into_iter().collect();
    Ok(cokernel(&IntegerMatrix::from_rows(cols as usize, &rows)?))
}
