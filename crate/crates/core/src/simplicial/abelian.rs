use serde::{Deserialize, Serialize};

use crate::abelian::{left_kernel, solve_left_rows, FgAbelianGroup, IntegerMatrix};
use crate::error::{Error, Result};

use super::chain::{codegeneracy, coface, gamma_level, gamma_operator, ChainComplex};
use super::{check_identities, SimplicialMaps, ValidationReport};

/// Degreewise free simplicial abelian group truncated at `D`: level `n` is
/// `Z^{ranks[n]}`, `faces[n][i]` is `d_i` as a `ranks[n] × ranks[n-1]`
/// matrix and `degeneracies[n][j]` is `s_j` as `ranks[n] × ranks[n+1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSab")]
pub struct TruncatedSimplicialAbelianGroup {
    truncation: usize,
    ranks: Vec<usize>,
    faces: Vec<Vec<IntegerMatrix>>,
    degeneracies: Vec<Vec<IntegerMatrix>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSab {
    truncation: usize,
    ranks: Vec<usize>,
    faces: Vec<Vec<IntegerMatrix>>,
    degeneracies: Vec<Vec<IntegerMatrix>>,
}

impl TryFrom<RawSab> for TruncatedSimplicialAbelianGroup {
    type Error = Error;

    fn try_from(r: RawSab) -> Result<Self> {
        Self::new(r.truncation, r.ranks, r.faces, r.degeneracies)
    }
}

impl TruncatedSimplicialAbelianGroup {
    /// `faces[0]` must be empty; `degeneracies` has one entry per `n < D`.
    pub fn new(
        truncation: usize,
        ranks: Vec<usize>,
        faces: Vec<Vec<IntegerMatrix>>,
        degeneracies: Vec<Vec<IntegerMatrix>>,
    ) -> Result<Self> {
        let d = truncation;
        if ranks.len() != d + 1 || faces.len() != d + 1 || degeneracies.len() != d || !faces[0].is_empty() {
            return Err(Error::invalid(format!(
                "truncation {d} needs {} ranks, face levels 0..={d} (level 0 empty) and {d} degeneracy levels",
                d + 1
            )));
        }
        for n in 1..=d {
            if faces[n].len() != n + 1 {
                return Err(Error::invalid(format!("dimension {n} needs {} face maps", n + 1)));
            }
            for (i, f) in faces[n].iter().enumerate() {
                if f.rows() != ranks[n] || f.cols() != ranks[n - 1] {
                    return Err(Error::invalid(format!("d_{i} on dimension {n} has the wrong shape")));
                }
            }
        }
        for n in 0..d {
            if degeneracies[n].len() != n + 1 {
                return Err(Error::invalid(format!("dimension {n} needs {} degeneracies", n + 1)));
            }
            for (j, s) in degeneracies[n].iter().enumerate() {
                if s.rows() != ranks[n] || s.cols() != ranks[n + 1] {
                    return Err(Error::invalid(format!("s_{j} on dimension {n} has the wrong shape")));
                }
            }
        }
        Ok(Self {
            truncation,
            ranks,
            faces,
            degeneracies,
        })
    }

    /// Constant object on `Z^rank`: every structure map is the identity.
    pub fn constant(rank: usize, truncation: usize) -> Self {
        let id = IntegerMatrix::identity(rank);
        Self {
            truncation,
            ranks: vec![rank; truncation + 1],
            faces: (0..=truncation)
                .map(|n| vec![id.clone(); if n == 0 { 0 } else { n + 1 }])
                .collect(),
            degeneracies: (0..truncation).map(|n| vec![id.clone(); n + 1]).collect(),
        }
    }

    /// Dold–Kan construction `ΓC` truncated at `D`; its Moore complex is
    /// isomorphic to `C` in degrees `≤ D`.
    pub fn from_chain_complex(c: &ChainComplex, truncation: usize) -> Self {
        let levels: Vec<_> = (0..=truncation).map(|n| gamma_level(c, n)).collect();
        let faces = (0..=truncation)
            .map(|n| {
                if n == 0 {
                    Vec::new()
                } else {
                    (0..=n)
                        .map(|i| gamma_operator(c, &levels[n], &levels[n - 1], &coface(n, i)))
                        .collect()
                }
            })
            .collect();
        let degeneracies = (0..truncation)
            .map(|n| {
                (0..=n)
                    .map(|j| gamma_operator(c, &levels[n], &levels[n + 1], &codegeneracy(n, j)))
                    .collect()
            })
            .collect();
        Self {
            truncation,
            ranks: levels.iter().map(|l| l.rank).collect(),
            faces,
            degeneracies,
        }
    }

    /// `Γ` applied to a chain map, one matrix per simplicial level.
    pub(crate) fn gamma_map(
        c: &ChainComplex,
        d: &ChainComplex,
        f: &[IntegerMatrix],
        truncation: usize,
    ) -> Vec<IntegerMatrix> {
        (0..=truncation)
            .map(|n| {
                let (src, dst) = (gamma_level(c, n), gamma_level(d, n));
                let mut m = IntegerMatrix::zeros(src.rank, dst.rank);
                for ((sigma, k, off), (tau, kk, toff)) in src.summands.iter().zip(&dst.summands) {
                    debug_assert!(sigma == tau && k == kk);
                    for a in 0..f[*k].rows() {
                        for b in 0..f[*k].cols() {
                            m.set(off + a, toff + b, f[*k].get(a, b).clone());
                        }
                    }
                }
                m
            })
            .collect()
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn d(&self, n: usize, i: usize) -> &IntegerMatrix {
        &self.faces[n][i]
    }

    pub fn s(&self, n: usize, j: usize) -> &IntegerMatrix {
        &self.degeneracies[n][j]
    }

    pub fn validate(&self) -> ValidationReport {
        check_identities(self)
    }

    /// Replaces one face matrix; used to build negative controls.
    pub fn set_face(&mut self, n: usize, i: usize, m: IntegerMatrix) -> Result<()> {
        let old = self
            .faces
            .get(n)
            .and_then(|f| f.get(i))
            .ok_or_else(|| Error::invalid("no such face"))?;
        if old.rows() != m.rows() || old.cols() != m.cols() {
            return Err(Error::invalid("replacement face has the wrong shape"));
        }
        self.faces[n][i] = m;
        Ok(())
    }

    /// Moore complex `N_n = ∩_{i<n} ker d_i` with boundary `d_n`, written in
    /// a basis of each `N_n`.
    pub fn moore_complex(&self) -> Result<ChainComplex> {
        let mut bases: Vec<IntegerMatrix> = vec![IntegerMatrix::identity(self.ranks[0])];
        let mut boundaries = Vec::with_capacity(self.truncation);
        for n in 1..=self.truncation {
            let mut stack = IntegerMatrix::zeros(self.ranks[n], 0);
            for i in 0..n {
                stack = stack.hstack(&self.faces[n][i])?;
            }
            let basis = left_kernel(&stack);
            let image = basis.mul(&self.faces[n][n])?;
            let boundary = solve_left_rows(&bases[n - 1], &image)
                .ok_or_else(|| Error::invalid(format!("d_{n} does not map N_{n} into N_{}", n - 1)))?;
            boundaries.push(boundary);
            bases.push(basis);
        }
        ChainComplex::new(bases.iter().map(IntegerMatrix::rows).collect(), boundaries)
    }

    /// `π_n` as the homology of the Moore complex; trusted for `n < D`.
    pub fn homotopy(&self, n: usize) -> Result<FgAbelianGroup> {
        self.check_degree(n, 1)?;
        self.moore_complex()?.homology(n)
    }

    /// `π_0..=π_max` from a single Moore complex.
    pub fn homotopy_through(&self, max: usize) -> Result<Vec<FgAbelianGroup>> {
        self.check_degree(max, 1)?;
        let moore = self.moore_complex()?;
        (0..=max).map(|n| moore.homology(n)).collect()
    }

    fn check_degree(&self, n: usize, sacrificed: usize) -> Result<()> {
        if n + sacrificed > self.truncation {
            return Err(Error::OutOfTruncationRange {
                requested: n,
                truncation: self.truncation,
                max: self.truncation as isize - sacrificed as isize,
            });
        }
        Ok(())
    }

    /// Restriction to levels `0..=d`.
    pub fn truncate(&self, d: usize) -> Result<Self> {
        if d > self.truncation {
            return Err(Error::OutOfTruncationRange {
                requested: d,
                truncation: self.truncation,
                max: self.truncation as isize,
            });
        }
        Ok(Self {
            truncation: d,
            ranks: self.ranks[..=d].to_vec(),
            faces: self.faces[..=d].to_vec(),
            degeneracies: self.degeneracies[..d].to_vec(),
        })
    }
}

impl SimplicialMaps for TruncatedSimplicialAbelianGroup {
    type Map = IntegerMatrix;

    fn truncation(&self) -> usize {
        self.truncation
    }

    fn face(&self, n: usize, i: usize) -> &IntegerMatrix {
        &self.faces[n][i]
    }

    fn degeneracy(&self, n: usize, j: usize) -> &IntegerMatrix {
        &self.degeneracies[n][j]
    }

    fn then(&self, f: &IntegerMatrix, g: &IntegerMatrix) -> IntegerMatrix {
        f.mul(g).expect("composable by construction")
    }

    fn identity(&self, n: usize) -> IntegerMatrix {
        IntegerMatrix::identity(self.ranks[n])
    }
}

/// Degreewise tensor product, truncated at the smaller truncation.
pub fn tensor_sab(
    a: &TruncatedSimplicialAbelianGroup,
    b: &TruncatedSimplicialAbelianGroup,
) -> TruncatedSimplicialAbelianGroup {
    let d = a.truncation.min(b.truncation);
    TruncatedSimplicialAbelianGroup {
        truncation: d,
        ranks: (0..=d).map(|n| a.ranks[n] * b.ranks[n]).collect(),
        faces: (0..=d)
            .map(|n| a.faces[n].iter().zip(&b.faces[n]).map(|(x, y)| x.kron(y)).collect())
            .collect(),
        degeneracies: (0..d)
            .map(|n| {
                a.degeneracies[n]
                    .iter()
                    .zip(&b.degeneracies[n])
                    .map(|(x, y)| x.kron(y))
                    .collect()
            })
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KunnethDegree {
    pub degree: usize,
    /// `π_n(A ⊗ B)` from the Moore complex of the tensor product.
    pub observed: FgAbelianGroup,
    /// `⊕_{p+q=n} π_pA ⊗ π_qB ⊕ ⊕_{p+q=n-1} Tor(π_pA, π_qB)`.
    pub predicted: FgAbelianGroup,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KunnethReport {
    pub degrees: Vec<KunnethDegree>,
    pub passes: bool,
}

/// Compares `π_n(A ⊗ B)` with the Künneth prediction for `n ≤ D − 2`.
pub fn kunneth_check(
    a: &TruncatedSimplicialAbelianGroup,
    b: &TruncatedSimplicialAbelianGroup,
) -> Result<KunnethReport> {
    let d = a.truncation.min(b.truncation);
    if d < 2 {
        return Err(Error::OutOfTruncationRange {
            requested: 0,
            truncation: d,
            max: d as isize - 2,
        });
    }
    let top = d - 2;
    // the tensor is only needed one level above the checked degrees
    let t = tensor_sab(&a.truncate(top + 1)?, &b.truncate(top + 1)?);
    let pa = a.homotopy_through(top)?;
    let pb = b.homotopy_through(top)?;
    let pt = t.homotopy_through(top)?;
    let mut degrees = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let mut predicted = FgAbelianGroup::trivial();
        for p in 0..=n {
            predicted = predicted.direct_sum(&pa[p].tensor(&pb[n - p]));
        }
        for p in 0..n {
            predicted = predicted.direct_sum(&pa[p].tor(&pb[n - 1 - p]));
        }
        let agrees = predicted == pt[n];
        degrees.push(KunnethDegree {
            degree: n,
            observed: pt[n].clone(),
            predicted,
            agrees,
        });
    }
    let passes = degrees.iter().all(|x| x.agrees);
    Ok(KunnethReport { degrees, passes })
}
