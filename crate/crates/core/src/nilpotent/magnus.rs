//! Magnus embedding of `F/γ_{c+1}(F)` into the units of the truncated free
//! associative ring `Z⟨X_1..X_n⟩ / (degree > c)`, `x_i ↦ 1 + X_i`.
//!
//! The embedding is faithful for free groups (dimension subgroups of a free
//! group coincide with its lower central series), so normal forms can be
//! read off a series by peeling basic commutators weight by weight. This is
//! used to build the collector's conjugation tables and as an independent
//! normal-form oracle.

use crate::error::{Error, Result};
use crate::hall::{HallBasis, HallNode};

use super::FreeGroupWord;

const P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn to_mod(x: i128) -> u64 {
    x.rem_euclid(P as i128) as u64
}

fn from_mod(x: u64) -> i128 {
    if x > P / 2 {
        x as i128 - P as i128
    } else {
        x as i128
    }
}

fn overflow() -> Error {
    Error::Overflow("Magnus series coefficients")
}

/// Truncated series indexed by words of length `0..=class`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Series(Vec<i128>);

#[derive(Clone, Debug)]
pub(crate) struct MagnusSpace {
    n: usize,
    class: usize,
    offsets: Vec<usize>,
    powers: Vec<usize>,
    size: usize,
}

impl MagnusSpace {
    pub fn new(n: usize, class: usize) -> Self {
        let mut offsets = Vec::with_capacity(class + 2);
        let mut powers = Vec::with_capacity(class + 1);
        let mut acc = 0;
        let mut p = 1;
        for _ in 0..=class {
            offsets.push(acc);
            powers.push(p);
            acc += p;
            p *= n;
        }
        offsets.push(acc);
        Self {
            n,
            class,
            offsets,
            powers,
            size: acc,
        }
    }

    pub fn one(&self) -> Series {
        let mut v = vec![0; self.size];
        v[0] = 1;
        Series(v)
    }

    /// Coefficients of the words of length `d`, in base-`n` order.
    pub fn block<'a>(&self, s: &'a Series, d: usize) -> &'a [i128] {
        &s.0[self.offsets[d]..self.offsets[d + 1]]
    }

    pub fn mul(&self, a: &Series, b: &Series) -> Result<Series> {
        let mut out = vec![0i128; self.size];
        for da in 0..=self.class {
            let ablock = self.block(a, da);
            for (ia, ca) in ablock.iter().enumerate() {
                if *ca == 0 {
                    continue;
                }
                for db in 0..=self.class - da {
                    let base = self.offsets[da + db] + ia * self.powers[db];
                    for (ib, cb) in self.block(b, db).iter().enumerate() {
                        if *cb == 0 {
                            continue;
                        }
                        let t = ca.checked_mul(*cb).ok_or_else(overflow)?;
                        let slot = &mut out[base + ib];
                        *slot = slot.checked_add(t).ok_or_else(overflow)?;
                    }
                }
            }
        }
        Ok(Series(out))
    }

    /// Powers `N, N², …` of the augmentation part `N = s - 1` until they
    /// vanish in the truncation.
    fn nil_powers(&self, s: &Series) -> Result<Vec<Series>> {
        let mut n = s.clone();
        n.0[0] -= 1;
        let mut out = Vec::new();
        let mut cur = n.clone();
        while cur.0.iter().any(|c| *c != 0) {
            out.push(cur.clone());
            cur = self.mul(&cur, &n)?;
        }
        Ok(out)
    }

    /// `(1 + N)^e = Σ_j C(e, j) N^j`, valid for negative `e` as well.
    fn power_from_nil(&self, nil: &[Series], e: i64) -> Result<Series> {
        let mut out = self.one();
        let mut binom: i128 = 1;
        for (j, nj) in nil.iter().enumerate() {
            let j = j as i128 + 1;
            binom = binom.checked_mul(e as i128 - j + 1).ok_or_else(overflow)? / j;
            if binom == 0 {
                break;
            }
            for (o, c) in out.0.iter_mut().zip(&nj.0) {
                if *c != 0 {
                    *o = o
                        .checked_add(binom.checked_mul(*c).ok_or_else(overflow)?)
                        .ok_or_else(overflow)?;
                }
            }
        }
        Ok(out)
    }

    pub fn power(&self, s: &Series, e: i64) -> Result<Series> {
        self.power_from_nil(&self.nil_powers(s)?, e)
    }

    /// `(1 + X_g)^e`, `g` 1-based.
    pub fn generator_power(&self, g: u32, e: i64) -> Result<Series> {
        let mut x = self.one();
        if self.class >= 1 {
            x.0[self.offsets[1] + g as usize - 1] = 1;
        }
        self.power(&x, e)
    }

    pub fn word(&self, w: &FreeGroupWord) -> Result<Series> {
        let mut acc = self.one();
        for &(g, e) in w.syllables() {
            if g as usize > self.n {
                return Err(Error::invalid(format!("generator x{g} out of range 1..={}", self.n)));
            }
            acc = self.mul(&acc, &self.generator_power(g, e)?)?;
        }
        Ok(acc)
    }
}

/// Solves `P = Σ e_b L(b)` for the Lie elements of one weight.
#[derive(Debug)]
struct WeightSolver {
    lie: Vec<Vec<i128>>,
    pivots: Vec<usize>,
    inverse: Vec<Vec<u64>>,
}

impl WeightSolver {
    #[allow(clippy::needless_range_loop)]
    fn new(lie: Vec<Vec<i128>>) -> Result<Self> {
        let rows = lie.len();
        let cols = lie.first().map_or(0, |r| r.len());
        // pivot columns: row echelon form mod P
        let mut m: Vec<Vec<u64>> = lie.iter().map(|r| r.iter().map(|&x| to_mod(x)).collect()).collect();
        let mut pivots = Vec::with_capacity(rows);
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(k) = (r..rows).find(|&k| m[k][c] != 0) else {
                continue;
            };
            m.swap(r, k);
            let inv = powmod(m[r][c], P - 2);
            for k in r + 1..rows {
                if m[k][c] == 0 {
                    continue;
                }
                let f = mulmod(m[k][c], inv);
                for j in c..cols {
                    let t = mulmod(f, m[r][j]);
                    m[k][j] = (m[k][j] + P - t) % P;
                }
            }
            pivots.push(c);
            r += 1;
        }
        if pivots.len() != rows {
            return Err(Error::invalid("Lie elements of the Hall basis are not independent"));
        }
        // inverse of the square submatrix on the pivot columns, Gauss-Jordan
        let n = rows;
        let mut a: Vec<Vec<u64>> = lie
            .iter()
            .map(|r| pivots.iter().map(|&c| to_mod(r[c])).collect())
            .collect();
        let mut inv: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
        for c in 0..n {
            let k = (c..n).find(|&k| a[k][c] != 0).expect("pivot columns are independent");
            a.swap(c, k);
            inv.swap(c, k);
            let pinv = powmod(a[c][c], P - 2);
            for j in 0..n {
                a[c][j] = mulmod(a[c][j], pinv);
                inv[c][j] = mulmod(inv[c][j], pinv);
            }
            for k in 0..n {
                if k == c || a[k][c] == 0 {
                    continue;
                }
                let f = a[k][c];
                for j in 0..n {
                    let t = mulmod(f, a[c][j]);
                    a[k][j] = (a[k][j] + P - t) % P;
                    let t = mulmod(f, inv[c][j]);
                    inv[k][j] = (inv[k][j] + P - t) % P;
                }
            }
        }
        Ok(Self {
            lie,
            pivots,
            inverse: inv,
        })
    }

    /// Row system `e · L = p`; the solution is checked exactly.
    fn solve(&self, p: &[i128]) -> Result<Vec<i64>> {
        let n = self.lie.len();
        let rhs: Vec<u64> = self.pivots.iter().map(|&c| to_mod(p[c])).collect();
        // e_S · L_S = p_S  =>  e = p_S · L_S^{-1}
        let mut e = vec![0i128; n];
        for (j, slot) in e.iter_mut().enumerate() {
            let mut acc = 0u64;
            for (i, r) in rhs.iter().enumerate() {
                acc = (acc + mulmod(*r, self.inverse[i][j])) % P;
            }
            *slot = from_mod(acc);
        }
        for (c, target) in p.iter().enumerate() {
            let mut acc: i128 = 0;
            for (i, ei) in e.iter().enumerate() {
                let l = self.lie[i][c];
                if l != 0 && *ei != 0 {
                    acc = acc
                        .checked_add(ei.checked_mul(l).ok_or_else(overflow)?)
                        .ok_or_else(overflow)?;
                }
            }
            if acc != *target {
                return Err(Error::Overflow("Hall coordinates of a Lie element"));
            }
        }
        e.into_iter()
            .map(|x| i64::try_from(x).map_err(|_| overflow()))
            .collect()
    }
}

/// Magnus images of a Hall basis together with the per-weight solvers.
#[derive(Debug)]
pub(crate) struct MagnusModel {
    space: MagnusSpace,
    nil_powers: Vec<Vec<Series>>,
    ranges: Vec<std::ops::Range<usize>>,
    solvers: Vec<WeightSolver>,
}

impl MagnusModel {
    pub fn new(basis: &HallBasis) -> Result<Self> {
        let (n, class) = (basis.generator_count(), basis.max_weight());
        let space = MagnusSpace::new(n, class);
        let mut images: Vec<Series> = Vec::with_capacity(basis.len());
        let mut nil_powers: Vec<Vec<Series>> = Vec::with_capacity(basis.len());
        for idx in 0..basis.len() {
            let img = match basis.node(idx) {
                HallNode::Leaf(g) => space.generator_power(g, 1)?,
                HallNode::Pair(l, r) => {
                    let (a, b) = (&images[l], &images[r]);
                    let ai = space.power_from_nil(&nil_powers[l], -1)?;
                    let bi = space.power_from_nil(&nil_powers[r], -1)?;
                    let t = space.mul(&ai, &bi)?;
                    let t = space.mul(&t, a)?;
                    space.mul(&t, b)?
                }
            };
            nil_powers.push(space.nil_powers(&img)?);
            images.push(img);
        }
        let mut solvers = Vec::with_capacity(class);
        let mut ranges = Vec::with_capacity(class);
        for w in 1..=class {
            let range = basis.weight_range(w);
            let lie: Vec<Vec<i128>> = range.clone().map(|i| space.block(&images[i], w).to_vec()).collect();
            solvers.push(WeightSolver::new(lie)?);
            ranges.push(range);
        }
        Ok(Self {
            space,
            nil_powers,
            ranges,
            solvers,
        })
    }

    pub fn space(&self) -> &MagnusSpace {
        &self.space
    }

    /// Series of `b_idx^e`.
    pub fn basis_power(&self, idx: usize, e: i64) -> Result<Series> {
        self.space.power_from_nil(&self.nil_powers[idx], e)
    }

    /// Series of the normal-form product `∏ b_i^{e_i}`.
    #[cfg(test)]
    pub fn element(&self, exps: &[i64]) -> Result<Series> {
        let mut acc = self.space.one();
        for (i, &e) in exps.iter().enumerate() {
            if e != 0 {
                acc = self
                    .space
                    .mul(&acc, &self.space.power_from_nil(&self.nil_powers[i], e)?)?;
            }
        }
        Ok(acc)
    }

    /// Hall-basis exponents of a series in the image of the embedding.
    pub fn normal_form(&self, mut g: Series) -> Result<Vec<i64>> {
        let total = self.ranges.last().map_or(0, |r| r.end);
        let mut exps = vec![0i64; total];
        for (w, range) in self.ranges.iter().enumerate() {
            let w = w + 1;
            let e = self.solvers[w - 1].solve(self.space.block(&g, w))?;
            for (k, idx) in range.clone().enumerate() {
                if e[k] == 0 {
                    continue;
                }
                exps[idx] = e[k];
                let left = self.space.power_from_nil(&self.nil_powers[idx], -e[k])?;
                g = self.space.mul(&left, &g)?;
            }
        }
        if g != self.space.one() {
            return Err(Error::invalid("series is not in the image of the free nilpotent group"));
        }
        Ok(exps)
    }

    pub fn word_normal_form(&self, w: &FreeGroupWord) -> Result<Vec<i64>> {
        self.normal_form(self.space.word(w)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_inverse_series() {
        let s = MagnusSpace::new(2, 3);
        let x = s.generator_power(1, 1).unwrap();
        let xi = s.generator_power(1, -1).unwrap();
        assert_eq!(s.mul(&x, &xi).unwrap(), s.one());
        assert_eq!(s.block(&xi, 3), &[-1, 0, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn peel_recovers_basis_exponents() {
        let basis = HallBasis::generate(3, 4).unwrap();
        let model = MagnusModel::new(&basis).unwrap();
        let exps: Vec<i64> = (0..basis.len() as i64).map(|i| (i % 5) - 2).collect();
        let series = model.element(&exps).unwrap();
        assert_eq!(model.normal_form(series).unwrap(), exps);
    }

    #[test]
    fn swapped_generators_pick_up_a_commutator() {
        let basis = HallBasis::generate(2, 2).unwrap();
        let model = MagnusModel::new(&basis).unwrap();
        let w = FreeGroupWord::from_syllables([(2, 1), (1, 1)]);
        assert_eq!(model.word_normal_form(&w).unwrap(), vec![1, 1, 1]);
    }
}
