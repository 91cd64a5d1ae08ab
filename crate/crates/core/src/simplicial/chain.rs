use serde::{Deserialize, Serialize};

use crate::abelian::{cokernel, left_kernel, solve_left_rows, FgAbelianGroup, IntegerMatrix};
use crate::error::{Error, Result};

/// Bounded chain complex of free abelian groups `C_0 ← C_1 ← … ← C_top`.
/// `boundaries[k - 1]` is `∂_k: C_k → C_{k-1}` as a `rank_k × rank_{k-1}` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawComplex")]
pub struct ChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<IntegerMatrix>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComplex {
    ranks: Vec<usize>,
    boundaries: Vec<IntegerMatrix>,
}

impl TryFrom<RawComplex> for ChainComplex {
    type Error = Error;

    fn try_from(r: RawComplex) -> Result<Self> {
        Self::new(r.ranks, r.boundaries)
    }
}

impl ChainComplex {
    pub fn new(ranks: Vec<usize>, boundaries: Vec<IntegerMatrix>) -> Result<Self> {
        if ranks.is_empty() || boundaries.len() + 1 != ranks.len() {
            return Err(Error::invalid("a chain complex with k + 1 groups needs k boundaries"));
        }
        for (k, b) in boundaries.iter().enumerate() {
            if b.rows() != ranks[k + 1] || b.cols() != ranks[k] {
                return Err(Error::invalid(format!(
                    "∂_{} must be {} × {}",
                    k + 1,
                    ranks[k + 1],
                    ranks[k]
                )));
            }
        }
        let c = Self { ranks, boundaries };
        if !c.boundary_squares_vanish() {
            return Err(Error::invalid("∂∘∂ ≠ 0"));
        }
        Ok(c)
    }

    pub fn top(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, k: usize) -> usize {
        self.ranks.get(k).copied().unwrap_or(0)
    }

    /// `∂_k`, for `1 ≤ k ≤ top`.
    pub fn boundary(&self, k: usize) -> &IntegerMatrix {
        &self.boundaries[k - 1]
    }

    pub fn boundary_squares_vanish(&self) -> bool {
        self.boundaries
            .windows(2)
            .all(|w| w[1].mul(&w[0]).map(|p| p.is_zero()).unwrap_or(false))
    }

    /// `H_n = ker ∂_n / im ∂_{n+1}`; degrees above `top` are zero.
    pub fn homology(&self, n: usize) -> Result<FgAbelianGroup> {
        if n > self.top() {
            return Ok(FgAbelianGroup::trivial());
        }
        let cycles = if n == 0 {
            IntegerMatrix::identity(self.ranks[0])
        } else {
            left_kernel(self.boundary(n))
        };
        if n == self.top() {
            return Ok(FgAbelianGroup::free(cycles.rows()));
        }
        let rel = solve_left_rows(&cycles, self.boundary(n + 1))
            .ok_or_else(|| Error::invalid("boundaries are not cycles"))?;
        Ok(cokernel(&rel))
    }
}

/// A chain map `f_k: C_k → D_k` given as `rank C_k × rank D_k` matrices.
pub(crate) fn check_chain_map(c: &ChainComplex, d: &ChainComplex, f: &[IntegerMatrix]) -> Result<()> {
    if f.len() != c.ranks.len() || c.ranks.len() != d.ranks.len() {
        return Err(Error::invalid(
            "chain map needs one matrix per degree of equal-length complexes",
        ));
    }
    for k in 1..=c.top() {
        if c.boundary(k).mul(&f[k - 1])? != f[k].mul(d.boundary(k))? {
            return Err(Error::invalid(format!("chain map does not commute with ∂_{k}")));
        }
    }
    Ok(())
}

/// Surjections `[n] ↠ [k]` encoded as their value sequences.
pub(crate) fn surjections(n: usize, k: usize) -> Vec<Vec<usize>> {
    // choose the k positions in 1..=n where the value steps up
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            let mut seq = Vec::with_capacity(n + 1);
            let mut v = 0;
            for t in 0..=n {
                if t > 0 && cur.contains(&t) {
                    v += 1;
                }
                seq.push(v);
            }
            out.push(seq);
            return;
        }
        for p in start..=n {
            cur.push(p);
            rec(n, k, p + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 1, &mut Vec::new(), &mut out);
    out
}

/// Summands `(σ, k)` of `(ΓC)_n = ⊕_{σ: [n] ↠ [k]} C_k` with their offsets.
pub(crate) struct GammaLevel {
    pub summands: Vec<(Vec<usize>, usize, usize)>,
    pub rank: usize,
}

pub(crate) fn gamma_level(c: &ChainComplex, n: usize) -> GammaLevel {
    let mut summands = Vec::new();
    let mut offset = 0;
    for k in 0..=n.min(c.top()) {
        for s in surjections(n, k) {
            summands.push((s, k, offset));
            offset += c.rank(k);
        }
    }
    GammaLevel { summands, rank: offset }
}

/// Matrix of `θ^*: (ΓC)_n → (ΓC)_m` for a monotone `θ: [m] → [n]`.
///
/// On the summand of `σ`, factor `σθ = μτ` with `τ` surjective and `μ`
/// injective: the component is the identity onto `τ` when `μ = id`, `∂_k`
/// onto `τ` when `μ` misses only the top vertex, and zero otherwise.
pub(crate) fn gamma_operator(c: &ChainComplex, src: &GammaLevel, dst: &GammaLevel, theta: &[usize]) -> IntegerMatrix {
    let mut m = IntegerMatrix::zeros(src.rank, dst.rank);
    for (sigma, k, off) in &src.summands {
        let g: Vec<usize> = theta.iter().map(|&t| sigma[t]).collect();
        let mut image: Vec<usize> = g.clone();
        image.dedup();
        let tau: Vec<usize> = g
            .iter()
            .map(|v| image.iter().position(|x| x == v).expect("value"))
            .collect();
        let (block, target_k) = if image.len() == k + 1 {
            (None, *k)
        } else if image.len() == *k && image.iter().enumerate().all(|(a, b)| a == *b) {
            (Some(c.boundary(*k)), k - 1)
        } else {
            continue;
        };
        let (_, _, toff) = dst
            .summands
            .iter()
            .find(|(s, kk, _)| *kk == target_k && *s == tau)
            .expect("factorisation lands in a summand");
        match block {
            None => {
                for a in 0..c.rank(*k) {
                    m.set(off + a, toff + a, 1.into());
                }
            }
            Some(b) => {
                for a in 0..b.rows() {
                    for z in 0..b.cols() {
                        m.set(off + a, toff + z, b.get(a, z).clone());
                    }
                }
            }
        }
    }
    m
}

/// Coface `δ_i: [n-1] → [n]`.
pub(crate) fn coface(n: usize, i: usize) -> Vec<usize> {
    (0..n).map(|t| if t < i { t } else { t + 1 }).collect()
}

/// Codegeneracy `σ_j: [n+1] → [n]`.
pub(crate) fn codegeneracy(n: usize, j: usize) -> Vec<usize> {
    (0..n + 2).map(|t| if t <= j { t } else { t - 1 }).collect()
}
