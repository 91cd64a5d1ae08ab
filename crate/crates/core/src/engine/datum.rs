use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::abelian::{FgAbelianGroup, GroupOrder};
use crate::error::{Error, Result};
use crate::nilpotent::nilpotent_multiplier_abelian;

use super::{FiniteGroupTable, Presentation};

/// Where a recorded value came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Builtin,
    Computed,
    UserSupplied,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Builtin => "builtin",
            Provenance::Computed => "computed",
            Provenance::UserSupplied => "user-supplied",
        })
    }
}

/// How a group is specified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GroupSource {
    /// `Z_n`; `n = 0` is `Z`.
    Cyclic {
        n: u64,
    },
    /// `⊕ Z_{n_i}`; entries `0` are copies of `Z`.
    Abelian {
        invariants: Vec<u64>,
    },
    Table {
        table: FiniteGroupTable,
    },
    Presentation {
        presentation: Presentation,
    },
    /// Values are only those supplied.
    User,
}

/// Order of a group as far as it is known.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum DatumOrder {
    Finite(BigInt),
    Infinite,
    #[default]
    Unknown,
}

impl DatumOrder {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            DatumOrder::Finite(n) => Some(n),
            _ => None,
        }
    }
}

impl fmt::Display for DatumOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DatumOrder::Finite(n) => write!(f, "{n}"),
            DatumOrder::Infinite => f.write_str("infinite"),
            DatumOrder::Unknown => f.write_str("unknown"),
        }
    }
}

impl From<GroupOrder> for DatumOrder {
    fn from(o: GroupOrder) -> Self {
        match o {
            GroupOrder::Finite(n) => DatumOrder::Finite(n),
            GroupOrder::Infinite => DatumOrder::Infinite,
        }
    }
}

impl Serialize for DatumOrder {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            DatumOrder::Finite(n) => crate::abelian::json_int::serialize(n, s),
            DatumOrder::Infinite => s.serialize_str("infinite"),
            DatumOrder::Unknown => s.serialize_str("unknown"),
        }
    }
}

impl<'de> Deserialize<'de> for DatumOrder {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match &v {
            serde_json::Value::Null => Ok(DatumOrder::Unknown),
            serde_json::Value::String(s) if s == "unknown" => Ok(DatumOrder::Unknown),
            serde_json::Value::String(s) if s == "infinite" => Ok(DatumOrder::Infinite),
            _ => {
                let n: BigInt = crate::abelian::json_int::deserialize(v).map_err(serde::de::Error::custom)?;
                if n < BigInt::from(1) {
                    return Err(serde::de::Error::custom("group order must be positive"));
                }
                Ok(DatumOrder::Finite(n))
            }
        }
    }
}

/// A group together with the invariants the free-product results use.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDatum")]
pub struct GroupDatum {
    pub label: String,
    pub source: GroupSource,
    pub abelianization: Option<FgAbelianGroup>,
    /// `M^(c)` keyed by `c`.
    pub multipliers: BTreeMap<usize, FgAbelianGroup>,
    pub order: DatumOrder,
    /// Whether the group is known to be abelian.
    pub abelian: Option<bool>,
    /// Origin of each recorded field: `abelianization`, `order`, `abelian`,
    /// `multiplier.<c>`.
    pub provenance: BTreeMap<String, Provenance>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDatum {
    label: String,
    #[serde(default = "user_source")]
    source: GroupSource,
    #[serde(default)]
    abelianization: Option<FgAbelianGroup>,
    #[serde(default)]
    multipliers: BTreeMap<usize, FgAbelianGroup>,
    #[serde(default)]
    order: DatumOrder,
    #[serde(default)]
    abelian: Option<bool>,
    #[serde(default)]
    provenance: BTreeMap<String, Provenance>,
}

fn user_source() -> GroupSource {
    GroupSource::User
}

impl TryFrom<RawDatum> for GroupDatum {
    type Error = Error;

    fn try_from(r: RawDatum) -> Result<Self> {
        let mut provenance = r.provenance;
        let mut fields: Vec<String> = Vec::new();
        if r.abelianization.is_some() {
            fields.push("abelianization".into());
        }
        if r.order != DatumOrder::Unknown {
            fields.push("order".into());
        }
        if r.abelian.is_some() {
            fields.push("abelian".into());
        }
        fields.extend(r.multipliers.keys().map(|c| format!("multiplier.{c}")));
        if let Some(extra) = provenance.keys().find(|k| !fields.contains(k)) {
            return Err(Error::invalid(format!("provenance given for absent field '{extra}'")));
        }
        for f in fields {
            provenance.entry(f).or_insert(Provenance::UserSupplied);
        }
        let d = GroupDatum {
            label: r.label,
            source: r.source,
            abelianization: r.abelianization,
            multipliers: r.multipliers,
            order: r.order,
            abelian: r.abelian,
            provenance,
        };
        d.check()?;
        Ok(d)
    }
}

impl GroupDatum {
    /// Datum for a source with nothing recorded yet; call [`resolve`](Self::resolve)
    /// to fill in what the source determines.
    pub fn from_source(label: impl Into<String>, source: GroupSource) -> Self {
        Self {
            label: label.into(),
            source,
            abelianization: None,
            multipliers: BTreeMap::new(),
            order: DatumOrder::Unknown,
            abelian: None,
            provenance: BTreeMap::new(),
        }
    }

    /// `Z_n`, resolved.
    pub fn cyclic(n: u64) -> Self {
        let label = if n == 0 { "Z".to_string() } else { format!("Z_{n}") };
        let mut d = Self::from_source(label, GroupSource::Cyclic { n });
        d.resolve(0).expect("cyclic data are consistent");
        d
    }

    /// `⊕ Z_{n_i}`, resolved.
    pub fn abelian_group(invariants: &[u64]) -> Self {
        let g = FgAbelianGroup::from_cyclic_factors(invariants.iter().copied()).expect("non-negative orders");
        let mut d = Self::from_source(
            g.to_string(),
            GroupSource::Abelian {
                invariants: invariants.to_vec(),
            },
        );
        d.resolve(0).expect("abelian data are consistent");
        d
    }

    fn check(&self) -> Result<()> {
        if let (Some(n), Some(ab)) = (self.order.finite(), &self.abelianization) {
            if ab.free_rank() > 0 {
                return Err(Error::invalid(format!(
                    "{}: finite order {n} but the abelianization {ab} is infinite",
                    self.label
                )));
            }
            if let Some(m) = ab.order().finite() {
                if !(n % m).is_zero_big() {
                    return Err(Error::invalid(format!(
                        "{}: |G^ab| = {m} does not divide |G| = {n}",
                        self.label
                    )));
                }
            }
        }
        if self.abelian == Some(true) {
            if let (Some(n), Some(ab)) = (self.order.finite(), &self.abelianization) {
                if ab.order().finite() != Some(n) {
                    return Err(Error::invalid(format!("{}: abelian but |G^ab| ≠ |G|", self.label)));
                }
            }
        }
        Ok(())
    }

    fn record<T: PartialEq + fmt::Display>(
        label: &str,
        slot: &mut Option<T>,
        provenance: &mut BTreeMap<String, Provenance>,
        key: &str,
        value: T,
        how: Provenance,
    ) -> Result<()> {
        match slot {
            Some(old) if *old != value => Err(Error::invalid(format!(
                "{label}: supplied {key} {old} conflicts with {how} value {value}"
            ))),
            Some(_) => Ok(()),
            None => {
                *slot = Some(value);
                provenance.insert(key.into(), how);
                Ok(())
            }
        }
    }

    /// Fills in everything the source determines and checks supplied values
    /// against it. Tables up to `bar_cap` elements also get `M^(1)` from the
    /// bar complex.
    pub fn resolve(&mut self, bar_cap: usize) -> Result<()> {
        let label = self.label.clone();
        let (ab, order, abelian): (Option<FgAbelianGroup>, Option<DatumOrder>, Option<bool>) = match &self.source {
            GroupSource::Cyclic { n } => {
                let g = FgAbelianGroup::cyclic(*n);
                (Some(g.clone()), Some(g.order().into()), Some(true))
            }
            GroupSource::Abelian { invariants } => {
                let g = FgAbelianGroup::from_cyclic_factors(invariants.iter().copied())?;
                (Some(g.clone()), Some(g.order().into()), Some(true))
            }
            GroupSource::Table { table } => (
                Some(table.bar_h1(table.order().max(bar_cap))?),
                Some(DatumOrder::Finite(table.order().into())),
                Some(table.is_abelian()),
            ),
            GroupSource::Presentation { presentation } => {
                let g = presentation.abelianization()?;
                let order = (g.free_rank() > 0).then_some(DatumOrder::Infinite);
                (Some(g), order, None)
            }
            GroupSource::User => (None, None, None),
        };
        if let Some(ab) = ab {
            Self::record(
                &label,
                &mut self.abelianization,
                &mut self.provenance,
                "abelianization",
                ab,
                Provenance::Computed,
            )?;
        }
        if let Some(o) = order {
            let mut slot = (self.order != DatumOrder::Unknown).then(|| self.order.clone());
            Self::record(
                &label,
                &mut slot,
                &mut self.provenance,
                "order",
                o,
                Provenance::Computed,
            )?;
            self.order = slot.expect("recorded");
        }
        if let Some(a) = abelian {
            let mut slot = self.abelian;
            Self::record(
                &label,
                &mut slot,
                &mut self.provenance,
                "abelian",
                a,
                Provenance::Computed,
            )?;
            self.abelian = slot;
        }
        if let GroupSource::Table { table } = &self.source {
            if table.order() <= bar_cap {
                let m = table.bar_h2(bar_cap)?;
                let mut slot = self.multipliers.get(&1).cloned();
                Self::record(
                    &label,
                    &mut slot,
                    &mut self.provenance,
                    "multiplier.1",
                    m,
                    Provenance::Computed,
                )?;
                self.multipliers.insert(1, slot.expect("recorded"));
            }
        }
        self.check()
    }

    pub fn provenance_of(&self, field: &str) -> Option<Provenance> {
        self.provenance.get(field).copied()
    }

    /// `M^(c)` with its provenance; see [`multiplier_of`].
    pub fn multiplier(&self, c: usize, bar_cap: usize) -> Result<(FgAbelianGroup, Provenance)> {
        multiplier_of(self, c, bar_cap)
    }

    /// Records `M^(c)` computed from the source, if it is not yet present.
    pub fn ensure_multiplier(&mut self, c: usize, bar_cap: usize) -> Result<&FgAbelianGroup> {
        if !self.multipliers.contains_key(&c) {
            let (m, how) = multiplier_of(self, c, bar_cap)?;
            self.provenance.insert(format!("multiplier.{c}"), how);
            self.multipliers.insert(c, m);
        }
        Ok(&self.multipliers[&c])
    }
}

trait IsZeroBig {
    fn is_zero_big(&self) -> bool;
}

impl IsZeroBig for BigInt {
    fn is_zero_big(&self) -> bool {
        *self == BigInt::from(0)
    }
}

/// `M^(c)(G)`: recorded values are returned as they are; otherwise cyclic
/// groups give `0`, abelian sources go through the free-nilpotent engine,
/// and tables give `M^(1)` from the bar complex (and `M^(c)` through the
/// engine when the table is abelian).
pub fn multiplier_of(d: &GroupDatum, c: usize, bar_cap: usize) -> Result<(FgAbelianGroup, Provenance)> {
    if c == 0 {
        return Err(Error::invalid("class must be at least 1"));
    }
    if let Some(m) = d.multipliers.get(&c) {
        let how = d
            .provenance_of(&format!("multiplier.{c}"))
            .unwrap_or(Provenance::UserSupplied);
        return Ok((m.clone(), how));
    }
    let computed = match &d.source {
        GroupSource::Cyclic { .. } => FgAbelianGroup::trivial(),
        GroupSource::Abelian { invariants } => {
            let g = FgAbelianGroup::from_cyclic_factors(invariants.iter().copied())?;
            nilpotent_multiplier_abelian(&chain_u64(&g)?, c)?
        }
        GroupSource::Table { table } if c == 1 => table.bar_h2(bar_cap)?,
        GroupSource::Table { table } if table.is_abelian() => {
            let g = table.bar_h1(table.order().max(bar_cap))?;
            nilpotent_multiplier_abelian(&chain_u64(&g)?, c)?
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "M^({c})({}) is not computable from this source; supply it in the datum",
                d.label
            )))
        }
    };
    Ok((computed, Provenance::Computed))
}

/// Cyclic orders of a canonical form (free summands as `0`).
fn chain_u64(g: &FgAbelianGroup) -> Result<Vec<u64>> {
    g.cyclic_orders()
        .iter()
        .map(|d| u64::try_from(d).map_err(|_| Error::Unsupported(format!("invariant factor {d} exceeds 64 bits"))))
        .collect()
}

/// Names accepted by [`builtin_datum`].
pub const BUILTIN_NAMES: &[&str] = &["Z", "Z<n>", "Z<n>xZ<m>x…", "S3", "D4", "Q8", "A5"];

/// Built-in group data: `Z`, `Z<n>`, products such as `Z2xZ4`, `S3`, `D4`,
/// `Q8`, and `A5` (given by `⟨a, b | a², b³, (ab)⁵⟩` with order 60 and
/// Schur multiplier `Z_2` recorded as built-in values).
pub fn builtin_datum(name: &str) -> Result<GroupDatum> {
    let unknown = || {
        Error::invalid(format!(
            "unknown builtin group '{name}'; known: {}",
            BUILTIN_NAMES.join(", ")
        ))
    };
    let mut d = match name {
        "S3" => GroupDatum::from_source(
            "S3",
            GroupSource::Table {
                table: FiniteGroupTable::symmetric3(),
            },
        ),
        "D4" => GroupDatum::from_source(
            "D4",
            GroupSource::Table {
                table: FiniteGroupTable::dihedral4(),
            },
        ),
        "Q8" => GroupDatum::from_source(
            "Q8",
            GroupSource::Table {
                table: FiniteGroupTable::quaternion8(),
            },
        ),
        "A5" => {
            let presentation = Presentation::parse(&["a", "b"], &["a^2", "b^3", "(ab)^5"])?;
            let mut d = GroupDatum::from_source("A5", GroupSource::Presentation { presentation });
            d.order = DatumOrder::Finite(60.into());
            d.abelian = Some(false);
            d.multipliers.insert(1, FgAbelianGroup::cyclic(2u8));
            for k in ["order", "abelian", "multiplier.1"] {
                d.provenance.insert(k.into(), Provenance::Builtin);
            }
            d
        }
        _ => {
            let parts: Vec<&str> = name.split('x').collect();
            let mut orders = Vec::with_capacity(parts.len());
            for p in &parts {
                let rest = p.strip_prefix('Z').ok_or_else(unknown)?;
                orders.push(if rest.is_empty() {
                    0
                } else {
                    rest.parse::<u64>().map_err(|_| unknown())?
                });
            }
            if orders.len() == 1 {
                GroupDatum::from_source(name, GroupSource::Cyclic { n: orders[0] })
            } else {
                GroupDatum::from_source(name, GroupSource::Abelian { invariants: orders })
            }
        }
    };
    d.resolve(super::DEFAULT_BAR_ORDER_CAP)?;
    for v in d.provenance.values_mut() {
        if *v == Provenance::Computed && !matches!(d.source, GroupSource::Presentation { .. }) {
            *v = Provenance::Builtin;
        }
    }
    Ok(d)
}
