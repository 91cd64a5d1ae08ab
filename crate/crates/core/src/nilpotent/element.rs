use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

use super::{FreeGroupWord, NilpotentContext};

/// Element of `F_n / γ_{c+1}(F_n)` in Hall normal form
/// `b_1^{e_1} b_2^{e_2} ⋯ b_N^{e_N}`.
#[derive(Clone, Debug)]
pub struct NilpotentElement {
    ctx: Arc<NilpotentContext>,
    exponents: Vec<i64>,
}

impl PartialEq for NilpotentElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_context(other) && self.exponents == other.exponents
    }
}

impl Eq for NilpotentElement {}

/// Collects a free-group word into normal form in the shared context `(n, c)`.
pub fn collect(word: &FreeGroupWord, n: usize, c: usize) -> Result<NilpotentElement> {
    NilpotentElement::from_word(&NilpotentContext::shared(n, c)?, word)
}

impl NilpotentElement {
    pub fn identity(ctx: &Arc<NilpotentContext>) -> Self {
        Self {
            ctx: ctx.clone(),
            exponents: vec![0; ctx.dimension()],
        }
    }

    pub fn from_word(ctx: &Arc<NilpotentContext>, word: &FreeGroupWord) -> Result<Self> {
        Ok(Self {
            ctx: ctx.clone(),
            exponents: ctx.collect_exponents(word)?,
        })
    }

    /// Generator `x_g`, `g` 1-based.
    pub fn generator(ctx: &Arc<NilpotentContext>, g: u32) -> Result<Self> {
        Self::from_word(ctx, &FreeGroupWord::generator(g))
    }

    pub fn from_exponents(ctx: &Arc<NilpotentContext>, exponents: Vec<i64>) -> Result<Self> {
        if exponents.len() != ctx.dimension() {
            return Err(Error::ContextMismatch(format!(
                "exponent vector has length {}, basis has {} elements",
                exponents.len(),
                ctx.dimension()
            )));
        }
        Ok(Self {
            ctx: ctx.clone(),
            exponents,
        })
    }

    pub fn context(&self) -> &Arc<NilpotentContext> {
        &self.ctx
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn is_identity(&self) -> bool {
        self.exponents.iter().all(|e| *e == 0)
    }

    /// Exponents of the basic commutators of weight `w`.
    pub fn weight_component(&self, w: usize) -> &[i64] {
        &self.exponents[self.ctx.basis().weight_range(w)]
    }

    fn same_context(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx)
            || (self.ctx.generator_count() == other.ctx.generator_count() && self.ctx.class() == other.ctx.class())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.same_context(other) {
            Ok(())
        } else {
            Err(Error::ContextMismatch(format!(
                "(n, c) = ({}, {}) vs ({}, {})",
                self.ctx.generator_count(),
                self.ctx.class(),
                other.ctx.generator_count(),
                other.ctx.class()
            )))
        }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            ctx: self.ctx.clone(),
            exponents: self.ctx.product(&self.exponents, &other.exponents)?,
        })
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(Self {
            ctx: self.ctx.clone(),
            exponents: self.ctx.inverse_of(&self.exponents)?,
        })
    }

    pub fn power(&self, k: i64) -> Result<Self> {
        let mut base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut k = k.unsigned_abs();
        let mut acc = Self::identity(&self.ctx);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.multiply(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.multiply(&base)?;
            }
        }
        Ok(acc)
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.inverse()?
            .multiply(&other.inverse()?)?
            .multiply(self)?
            .multiply(other)
    }

    /// The normal form written as a word in the generators.
    pub fn to_word(&self) -> FreeGroupWord {
        let basis = self.ctx.basis();
        let mut w = FreeGroupWord::identity();
        for (i, &e) in self.exponents.iter().enumerate() {
            if e != 0 {
                w = w.concat(&basis.tree(i).to_word().pow(e));
            }
        }
        w
    }
}

impl fmt::Display for NilpotentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{}", self.ctx.basis().tree(i))?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl Serialize for NilpotentElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("NilpotentElement", 4)?;
        s.serialize_field("generators", &self.ctx.generator_count())?;
        s.serialize_field("class", &self.ctx.class())?;
        s.serialize_field("exponents", &self.exponents)?;
        s.serialize_field("normal_form", &self.to_string())?;
        s.end()
    }
}
