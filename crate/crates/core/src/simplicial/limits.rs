use serde::{Deserialize, Serialize};

use crate::abelian::{FgAbelianGroup, IntegerMatrix};
use crate::error::{Error, Result};

use super::chain::check_chain_map;
use super::{ChainComplex, TruncatedSimplicialAbelianGroup, ValidationReport, Violation};

/// Finite stretch `A_0 → A_1 → …` of a directed system of simplicial
/// abelian groups. `transitions[t][n]` maps level `n` of `A_t` to level `n`
/// of `A_{t+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSystem")]
pub struct DirectedSystem {
    objects: Vec<TruncatedSimplicialAbelianGroup>,
    transitions: Vec<Vec<IntegerMatrix>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSystem {
    objects: Vec<TruncatedSimplicialAbelianGroup>,
    transitions: Vec<Vec<IntegerMatrix>>,
}

impl TryFrom<RawSystem> for DirectedSystem {
    type Error = Error;

    fn try_from(r: RawSystem) -> Result<Self> {
        Self::new(r.objects, r.transitions)
    }
}

impl DirectedSystem {
    pub fn new(objects: Vec<TruncatedSimplicialAbelianGroup>, transitions: Vec<Vec<IntegerMatrix>>) -> Result<Self> {
        if objects.is_empty() || transitions.len() + 1 != objects.len() {
            return Err(Error::invalid("a system of k + 1 objects needs k transitions"));
        }
        let d = objects[0].truncation();
        if objects.iter().any(|o| o.truncation() != d) {
            return Err(Error::invalid("all objects must share one truncation"));
        }
        for (t, maps) in transitions.iter().enumerate() {
            if maps.len() != d + 1 {
                return Err(Error::invalid(format!("transition {t} needs {} level maps", d + 1)));
            }
            for (n, m) in maps.iter().enumerate() {
                if m.rows() != objects[t].ranks()[n] || m.cols() != objects[t + 1].ranks()[n] {
                    return Err(Error::invalid(format!(
                        "transition {t} has the wrong shape at level {n}"
                    )));
                }
            }
        }
        Ok(Self { objects, transitions })
    }

    /// Applies `Γ` to a sequence of chain complexes and chain maps.
    pub fn from_chain_system(
        complexes: &[ChainComplex],
        maps: &[Vec<IntegerMatrix>],
        truncation: usize,
    ) -> Result<Self> {
        if maps.len() + 1 != complexes.len() {
            return Err(Error::invalid("a system of k + 1 complexes needs k chain maps"));
        }
        for (t, f) in maps.iter().enumerate() {
            check_chain_map(&complexes[t], &complexes[t + 1], f)?;
        }
        let objects = complexes
            .iter()
            .map(|c| TruncatedSimplicialAbelianGroup::from_chain_complex(c, truncation))
            .collect();
        let transitions = maps
            .iter()
            .enumerate()
            .map(|(t, f)| TruncatedSimplicialAbelianGroup::gamma_map(&complexes[t], &complexes[t + 1], f, truncation))
            .collect();
        Self::new(objects, transitions)
    }

    pub fn objects(&self) -> &[TruncatedSimplicialAbelianGroup] {
        &self.objects
    }

    pub fn transitions(&self) -> &[Vec<IntegerMatrix>] {
        &self.transitions
    }

    /// Checks each object and that every transition commutes with faces and
    /// degeneracies.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for o in &self.objects {
            violations.extend(o.validate().violations);
        }
        let d = self.objects[0].truncation();
        for (t, f) in self.transitions.iter().enumerate() {
            let (a, b) = (&self.objects[t], &self.objects[t + 1]);
            for n in 1..=d {
                for i in 0..=n {
                    if a.d(n, i).mul(&f[n - 1]).ok() != f[n].mul(b.d(n, i)).ok() {
                        violations.push(Violation {
                            identity: "f d_i = d_i f".into(),
                            dimension: n,
                            i,
                            j: t,
                        });
                    }
                }
            }
            for n in 0..d {
                for j in 0..=n {
                    if a.s(n, j).mul(&f[n + 1]).ok() != f[n].mul(b.s(n, j)).ok() {
                        violations.push(Violation {
                            identity: "f s_j = s_j f".into(),
                            dimension: n,
                            i: j,
                            j: t,
                        });
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    fn transition_is_iso(&self, t: usize) -> bool {
        self.transitions[t]
            .iter()
            .all(|m| m.rows() == m.cols() && m.is_unimodular())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizedColimit {
    /// Every transition from this index on is an isomorphism.
    pub index: usize,
    pub object: TruncatedSimplicialAbelianGroup,
}

/// Colimit of a system that becomes constant: the first object after which
/// every transition is an isomorphism, provided that index is at most
/// `window` and at least one such transition is observed.
pub fn colimit_stabilized(s: &DirectedSystem, window: usize) -> Result<StabilizedColimit> {
    let k = s.transitions.len();
    let mut start = k;
    while start > 0 && s.transition_is_iso(start - 1) {
        start -= 1;
    }
    if start == k || start > window {
        return Err(Error::Unstabilized { window });
    }
    Ok(StabilizedColimit {
        index: start,
        object: s.objects[start].clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitReport {
    pub degree: usize,
    pub stable_index: usize,
    /// `π_n` of each object along the system.
    pub stages: Vec<FgAbelianGroup>,
    /// `π_n` of the colimit object.
    pub colimit_homotopy: FgAbelianGroup,
    /// Value at which the sequence `π_n(A_t)` settles.
    pub limit_of_homotopy: FgAbelianGroup,
    pub commutes: bool,
}

/// Compares `π_n(colim A_t)` with the eventual value of `π_n(A_t)`.
pub fn limit_commutes(s: &DirectedSystem, n: usize, window: usize) -> Result<LimitReport> {
    let colim = colimit_stabilized(s, window)?;
    let stages = s.objects.iter().map(|o| o.homotopy(n)).collect::<Result<Vec<_>>>()?;
    let limit_of_homotopy = stages.last().expect("nonempty").clone();
    let settled = stages[colim.index..].iter().all(|g| *g == limit_of_homotopy);
    let colimit_homotopy = colim.object.homotopy(n)?;
    let commutes = settled && colimit_homotopy == limit_of_homotopy;
    Ok(LimitReport {
        degree: n,
        stable_index: colim.index,
        stages,
        colimit_homotopy,
        limit_of_homotopy,
        commutes,
    })
}
