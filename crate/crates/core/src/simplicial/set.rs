use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{check_identities, SimplicialMaps, ValidationReport};

/// Finite simplicial set truncated at `D`. Elements of `K_n` are `0..sizes[n]`;
/// `faces[n][i][x] = d_i x` and `degeneracies[n][j][x] = s_j x` for `x ∈ K_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSet")]
pub struct TruncatedSimplicialSet {
    truncation: usize,
    sizes: Vec<usize>,
    faces: Vec<Vec<Vec<usize>>>,
    degeneracies: Vec<Vec<Vec<usize>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSet {
    truncation: usize,
    sizes: Vec<usize>,
    faces: Vec<Vec<Vec<usize>>>,
    degeneracies: Vec<Vec<Vec<usize>>>,
}

impl TryFrom<RawSet> for TruncatedSimplicialSet {
    type Error = Error;

    fn try_from(r: RawSet) -> Result<Self> {
        Self::new(r.truncation, r.sizes, r.faces, r.degeneracies)
    }
}

fn check_map(map: &[usize], from: usize, to: usize, what: &str) -> Result<()> {
    if map.len() != from {
        return Err(Error::invalid(format!(
            "{what}: expected {from} images, got {}",
            map.len()
        )));
    }
    if let Some(x) = map.iter().find(|x| **x >= to) {
        return Err(Error::invalid(format!("{what}: image {x} outside a set of size {to}")));
    }
    Ok(())
}

impl TruncatedSimplicialSet {
    /// `faces[0]` must be empty; `degeneracies` has one entry per `n < D`.
    pub fn new(
        truncation: usize,
        sizes: Vec<usize>,
        faces: Vec<Vec<Vec<usize>>>,
        degeneracies: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let d = truncation;
        if sizes.len() != d + 1 || faces.len() != d + 1 || degeneracies.len() != d {
            return Err(Error::invalid(format!(
                "truncation {d} needs {} sizes, {} face levels and {d} degeneracy levels",
                d + 1,
                d + 1
            )));
        }
        if !faces[0].is_empty() {
            return Err(Error::invalid("dimension 0 has no faces"));
        }
        for n in 1..=d {
            if faces[n].len() != n + 1 {
                return Err(Error::invalid(format!("dimension {n} needs {} face maps", n + 1)));
            }
            for (i, f) in faces[n].iter().enumerate() {
                check_map(f, sizes[n], sizes[n - 1], &format!("d_{i} on dimension {n}"))?;
            }
        }
        for n in 0..d {
            if degeneracies[n].len() != n + 1 {
                return Err(Error::invalid(format!("dimension {n} needs {} degeneracies", n + 1)));
            }
            for (j, s) in degeneracies[n].iter().enumerate() {
                check_map(s, sizes[n], sizes[n + 1], &format!("s_{j} on dimension {n}"))?;
            }
        }
        Ok(Self {
            truncation,
            sizes,
            faces,
            degeneracies,
        })
    }

    /// Builds a set from element lists and closures for the structure maps.
    #[allow(clippy::needless_range_loop)]
    pub(crate) fn from_fns<T: PartialEq>(
        truncation: usize,
        elements: &[Vec<T>],
        face: impl Fn(usize, usize, &T) -> T,
        degeneracy: impl Fn(usize, usize, &T) -> T,
    ) -> Result<Self> {
        let pos = |n: usize, x: &T| {
            elements[n]
                .iter()
                .position(|y| y == x)
                .ok_or_else(|| Error::invalid(format!("structure map leaves dimension {n}")))
        };
        let mut faces = vec![Vec::new()];
        for n in 1..=truncation {
            let mut level = Vec::with_capacity(n + 1);
            for i in 0..=n {
                level.push(
                    elements[n]
                        .iter()
                        .map(|x| pos(n - 1, &face(n, i, x)))
                        .collect::<Result<Vec<_>>>()?,
                );
            }
            faces.push(level);
        }
        let mut degeneracies = Vec::new();
        for n in 0..truncation {
            let mut level = Vec::with_capacity(n + 1);
            for j in 0..=n {
                level.push(
                    elements[n]
                        .iter()
                        .map(|x| pos(n + 1, &degeneracy(n, j, x)))
                        .collect::<Result<Vec<_>>>()?,
                );
            }
            degeneracies.push(level);
        }
        Self::new(truncation, elements.iter().map(Vec::len).collect(), faces, degeneracies)
    }

    /// The circle `Δ[1]/∂Δ[1]`: `K_n` is the basepoint together with the
    /// sequences `0^a 1^b`, `a, b ≥ 1`, `a + b = n + 1`.
    pub fn circle(truncation: usize) -> Result<Self> {
        // an element is the number of zeros; 0 encodes the basepoint
        let elements: Vec<Vec<usize>> = (0..=truncation).map(|n| (0..=n).collect()).collect();
        let collapse = |n: usize, zeros: usize| if zeros == 0 || zeros == n + 1 { 0 } else { zeros };
        Self::from_fns(
            truncation,
            &elements,
            |n, i, &z| {
                if z == 0 {
                    0
                } else {
                    collapse(n - 1, if i < z { z - 1 } else { z })
                }
            },
            |n, j, &z| {
                if z == 0 {
                    0
                } else {
                    collapse(n + 1, if j < z { z + 1 } else { z })
                }
            },
        )
    }

    /// The one-point simplicial set.
    pub fn point(truncation: usize) -> Result<Self> {
        let elements: Vec<Vec<()>> = (0..=truncation).map(|_| vec![()]).collect();
        Self::from_fns(truncation, &elements, |_, _, _| (), |_, _, _| ())
    }

    /// Nerve of a finite group given by its multiplication table: `K_n = G^n`,
    /// `d_0` drops the first entry, `d_n` the last, inner faces multiply
    /// neighbours, `s_j` inserts the identity.
    pub fn nerve(table: &[Vec<usize>], identity: usize, truncation: usize) -> Result<Self> {
        let order = table.len();
        let mut elements: Vec<Vec<Vec<usize>>> = vec![vec![vec![]]];
        for n in 1..=truncation {
            let mut level = Vec::new();
            for prev in &elements[n - 1] {
                for g in 0..order {
                    let mut t = prev.clone();
                    t.push(g);
                    level.push(t);
                }
            }
            elements.push(level);
        }
        Self::from_fns(
            truncation,
            &elements,
            |n, i, t: &Vec<usize>| {
                let mut out = t.clone();
                if i == 0 {
                    out.remove(0);
                } else if i == n {
                    out.pop();
                } else {
                    let merged = table[t[i - 1]][t[i]];
                    out.remove(i);
                    out[i - 1] = merged;
                }
                out
            },
            |_, j, t: &Vec<usize>| {
                let mut out = t.clone();
                out.insert(j, identity);
                out
            },
        )
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn size(&self, n: usize) -> usize {
        self.sizes[n]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn is_reduced(&self) -> bool {
        self.sizes[0] == 1
    }

    /// `d_i x` for `x ∈ K_n`.
    pub fn d(&self, n: usize, i: usize, x: usize) -> usize {
        self.faces[n][i][x]
    }

    /// `s_j x` for `x ∈ K_n`.
    pub fn s(&self, n: usize, j: usize, x: usize) -> usize {
        self.degeneracies[n][j][x]
    }

    pub fn validate(&self) -> ValidationReport {
        check_identities(self)
    }

    /// Overwrites one face image; used to build negative controls.
    pub fn set_face(&mut self, n: usize, i: usize, x: usize, image: usize) -> Result<()> {
        if n == 0 || n > self.truncation || i > n || x >= self.sizes[n] || image >= self.sizes[n - 1] {
            return Err(Error::invalid("face index out of range"));
        }
        self.faces[n][i][x] = image;
        Ok(())
    }
}

impl SimplicialMaps for TruncatedSimplicialSet {
    type Map = Vec<usize>;

    fn truncation(&self) -> usize {
        self.truncation
    }

    fn face(&self, n: usize, i: usize) -> &Vec<usize> {
        &self.faces[n][i]
    }

    fn degeneracy(&self, n: usize, j: usize) -> &Vec<usize> {
        &self.degeneracies[n][j]
    }

    fn then(&self, f: &Vec<usize>, g: &Vec<usize>) -> Vec<usize> {
        f.iter().map(|&x| g[x]).collect()
    }

    fn identity(&self, n: usize) -> Vec<usize> {
        (0..self.sizes[n]).collect()
    }
}
