use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::hall::HallBasis;

use super::magnus::MagnusModel;
use super::FreeGroupWord;

/// Upper bound on elementary collection steps for one product.
pub const COLLECT_STEP_CAP: u64 = 50_000_000;

/// Normal-form word `∏ b_k^{e_k}` over basis indices.
type Syllables = Arc<[(usize, i64)]>;

#[derive(Debug)]
struct Conjugates {
    /// `b_j^{-s} b_k b_j^{s}` and its inverse, for `s = 1` then `s = -1`.
    by: [(Syllables, Syllables); 2],
}

/// Polycyclic presentation of the free nilpotent group `F_n / γ_{c+1}(F_n)`
/// over a Hall basis, with conjugation relations for collection.
#[derive(Debug)]
pub struct NilpotentContext {
    basis: HallBasis,
    model: MagnusModel,
    /// `conj[j]` holds, for each `k > j`, the conjugates of `b_k` by `b_j^{±1}`
    /// when the two do not commute.
    conj: Vec<Vec<Option<Conjugates>>>,
}

fn invert(word: &[(usize, i64)]) -> Syllables {
    word.iter().rev().map(|&(k, e)| (k, -e)).collect()
}

fn as_syllables(exps: &[i64]) -> Syllables {
    exps.iter()
        .enumerate()
        .filter(|(_, e)| **e != 0)
        .map(|(k, e)| (k, *e))
        .collect()
}

impl NilpotentContext {
    pub fn new(n: usize, class: usize) -> Result<Self> {
        Self::from_basis(HallBasis::generate(n, class)?)
    }

    pub fn from_basis(basis: HallBasis) -> Result<Self> {
        let model = MagnusModel::new(&basis)?;
        let class = basis.max_weight();
        let len = basis.len();
        let mut conj = Vec::with_capacity(len);
        for j in 0..len {
            let wj = basis.weight(j);
            let mut row = Vec::with_capacity(len - j - 1);
            for k in j + 1..len {
                if wj + basis.weight(k) > class {
                    row.push(None);
                    continue;
                }
                let bk = model.basis_power(k, 1)?;
                let mut by = Vec::with_capacity(2);
                for s in [1i64, -1] {
                    let left = model.basis_power(j, -s)?;
                    let right = model.basis_power(j, s)?;
                    let g = model.space().mul(&model.space().mul(&left, &bk)?, &right)?;
                    let word = as_syllables(&model.normal_form(g)?);
                    by.push((word.clone(), invert(&word)));
                }
                let trivial = by.iter().all(|(w, _)| w.len() == 1 && w[0] == (k, 1));
                row.push(if trivial {
                    None
                } else {
                    let neg = by.pop().expect("two signs");
                    let pos = by.pop().expect("two signs");
                    Some(Conjugates { by: [pos, neg] })
                });
            }
            conj.push(row);
        }
        Ok(Self { basis, model, conj })
    }

    /// Process-wide shared context, built once per `(n, class)`.
    pub fn shared(n: usize, class: usize) -> Result<Arc<Self>> {
        type Shared = Mutex<HashMap<(usize, usize), Arc<NilpotentContext>>>;
        static CACHE: OnceLock<Shared> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(ctx) = cache.lock().expect("context cache poisoned").get(&(n, class)) {
            return Ok(ctx.clone());
        }
        let ctx = Arc::new(Self::new(n, class)?);
        let mut guard = cache.lock().expect("context cache poisoned");
        Ok(guard.entry((n, class)).or_insert(ctx).clone())
    }

    pub fn generator_count(&self) -> usize {
        self.basis.generator_count()
    }

    pub fn class(&self) -> usize {
        self.basis.max_weight()
    }

    pub fn basis(&self) -> &HallBasis {
        &self.basis
    }

    /// Length of every exponent vector in this context.
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    fn conjugates(&self, j: usize, k: usize) -> Option<&Conjugates> {
        self.conj[j][k - j - 1].as_ref()
    }

    pub(crate) fn check_word(&self, word: &FreeGroupWord) -> Result<()> {
        let n = self.generator_count();
        if word.max_generator() as usize > n {
            return Err(Error::ContextMismatch(format!(
                "word uses x{} but the context has {n} generators",
                word.max_generator()
            )));
        }
        Ok(())
    }

    /// Exponent vector of a free-group word.
    pub(crate) fn collect_exponents(&self, word: &FreeGroupWord) -> Result<Vec<i64>> {
        self.check_word(word)?;
        let syl: Syllables = word
            .syllables()
            .iter()
            .map(|&(g, e)| (self.basis.generator_index(g), e))
            .collect();
        let mut exps = vec![0; self.dimension()];
        self.multiply_into(&mut exps, syl)?;
        Ok(exps)
    }

    /// Right-multiplies the normal form `exps` by a word over basis indices.
    pub(crate) fn multiply_into(&self, exps: &mut [i64], word: Syllables) -> Result<()> {
        struct Frame {
            word: Syllables,
            pos: usize,
            reps: u64,
        }
        let overflow = || Error::Overflow("collection exponents");
        let mut stack = vec![Frame { word, pos: 0, reps: 1 }];
        let mut steps = 0u64;
        while let Some(top) = stack.last_mut() {
            if top.pos == top.word.len() {
                top.reps -= 1;
                top.pos = 0;
                if top.reps == 0 || top.word.is_empty() {
                    stack.pop();
                }
                continue;
            }
            let (j, e) = top.word[top.pos];
            top.pos += 1;
            steps += 1;
            if steps > COLLECT_STEP_CAP {
                return Err(Error::ResourceLimit {
                    what: "collection steps",
                    needed: steps as u128,
                    cap: COLLECT_STEP_CAP as u128,
                });
            }
            let blocker = (j + 1..exps.len()).find(|&k| exps[k] != 0 && self.conjugates(j, k).is_some());
            let Some(first) = blocker else {
                exps[j] = exps[j].checked_add(e).ok_or_else(overflow)?;
                continue;
            };
            let s = e.signum();
            if e != s {
                stack.push(Frame {
                    word: Arc::new([(j, e - s)]),
                    pos: 0,
                    reps: 1,
                });
            }
            let side = usize::from(s < 0);
            for k in (first..exps.len()).rev() {
                let ek = exps[k];
                if ek == 0 {
                    continue;
                }
                exps[k] = 0;
                let frame = match self.conjugates(j, k) {
                    None => Frame {
                        word: Arc::new([(k, ek)]),
                        pos: 0,
                        reps: 1,
                    },
                    Some(c) => {
                        let (w, winv) = &c.by[side];
                        Frame {
                            word: if ek > 0 { w.clone() } else { winv.clone() },
                            pos: 0,
                            reps: ek.unsigned_abs(),
                        }
                    }
                };
                stack.push(frame);
            }
            exps[j] = exps[j].checked_add(s).ok_or_else(overflow)?;
        }
        Ok(())
    }

    pub(crate) fn product(&self, a: &[i64], b: &[i64]) -> Result<Vec<i64>> {
        let mut exps = a.to_vec();
        self.multiply_into(&mut exps, as_syllables(b))?;
        Ok(exps)
    }

    pub(crate) fn inverse_of(&self, a: &[i64]) -> Result<Vec<i64>> {
        let mut exps = vec![0; self.dimension()];
        self.multiply_into(&mut exps, invert(&as_syllables(a)))?;
        Ok(exps)
    }

    /// Normal form computed through the Magnus embedding instead of
    /// collection; used as an independent check.
    pub fn magnus_normal_form(&self, word: &FreeGroupWord) -> Result<Vec<i64>> {
        self.check_word(word)?;
        self.model.word_normal_form(word)
    }
}
