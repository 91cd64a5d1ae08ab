use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::abelian::FgAbelianGroup;
use crate::error::{Error, Result};

use super::datum::{multiplier_of, DatumOrder, GroupDatum, Provenance};

/// One of the four groups that must vanish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub group: FgAbelianGroup,
    pub holds: bool,
}

/// `G^ab ⊗ H^ab`, `M(G) ⊗ H^ab`, `M(H) ⊗ G^ab` and `Tor(G^ab, H^ab)`,
/// each required to be trivial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub g: String,
    pub h: String,
    pub checks: Vec<HypothesisCheck>,
    pub passes: bool,
    /// `name = group` for every check that fails.
    pub witnesses: Vec<String>,
}

/// A multiplier value that went into a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplierUse {
    pub class: usize,
    pub group: FgAbelianGroup,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputSummary {
    pub label: String,
    pub order: DatumOrder,
    pub abelianization: Option<FgAbelianGroup>,
    pub multipliers: Vec<MultiplierUse>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub name: String,
    pub group: FgAbelianGroup,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportKind {
    FreeProduct,
    FormulaI,
}

/// What a conclusion rests on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// The classical splitting of the Schur multiplier of a free product.
    Background,
    /// The vanishing hypotheses.
    VanishingHypotheses,
    /// The five-summand formula for `M^(2)`.
    FiveSummandFormula,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeProductReport {
    pub kind: ReportKind,
    pub class: usize,
    pub inputs: Vec<InputSummary>,
    pub hypotheses: Option<HypothesisReport>,
    pub corollary: CorollaryReport,
    pub basis: Option<Basis>,
    /// `M^(c)(G ∗ H)`; present only when everything it rests on holds.
    pub conclusion: Option<FgAbelianGroup>,
    pub breakdown: Vec<Summand>,
    pub caveats: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionStatus {
    Pass,
    Fail,
    Undetermined,
}

/// `gcd(lhs, rhs) = 1` with the values compared; `None` where unknown.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub lhs: String,
    pub lhs_value: Option<String>,
    pub rhs: String,
    pub rhs_value: Option<String>,
    pub gcd: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryCondition {
    pub label: String,
    pub statement: String,
    pub status: ConditionStatus,
    pub comparisons: Vec<Comparison>,
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryReport {
    pub g: String,
    pub h: String,
    pub conditions: Vec<CorollaryCondition>,
    /// Labels of the conditions that pass.
    pub satisfied: Vec<String>,
    pub note: String,
}

fn abelianization_of(d: &GroupDatum) -> Result<&FgAbelianGroup> {
    d.abelianization
        .as_ref()
        .ok_or_else(|| Error::MissingData(format!("{}: abelianization", d.label)))
}

/// `M^(c)` of a datum, reporting an unavailable value as missing data.
fn multiplier_needed(d: &GroupDatum, c: usize, bar_cap: usize) -> Result<(FgAbelianGroup, Provenance)> {
    multiplier_of(d, c, bar_cap).map_err(|e| match e {
        Error::Unsupported(_) => Error::MissingData(format!("{}: multiplier.{c}", d.label)),
        e => e,
    })
}

/// Checks that `G^ab ⊗ H^ab`, `M(G) ⊗ H^ab`, `M(H) ⊗ G^ab` and
/// `Tor(G^ab, H^ab)` all vanish.
pub fn vanishing_hypothesis_check(g: &GroupDatum, h: &GroupDatum, bar_cap: usize) -> Result<HypothesisReport> {
    let (gab, hab) = (abelianization_of(g)?, abelianization_of(h)?);
    let (mg, _) = multiplier_needed(g, 1, bar_cap)?;
    let (mh, _) = multiplier_needed(h, 1, bar_cap)?;
    let groups = [
        ("G^ab ⊗ H^ab", gab.tensor(hab)),
        ("M(G) ⊗ H^ab", mg.tensor(hab)),
        ("M(H) ⊗ G^ab", mh.tensor(gab)),
        ("Tor(G^ab, H^ab)", gab.tor(hab)),
    ];
    let checks: Vec<HypothesisCheck> = groups
        .into_iter()
        .map(|(name, group)| HypothesisCheck {
            name: name.into(),
            holds: group.is_trivial(),
            group,
        })
        .collect();
    let witnesses: Vec<String> = checks
        .iter()
        .filter(|c| !c.holds)
        .map(|c| format!("{} = {}", c.name, c.group))
        .collect();
    Ok(HypothesisReport {
        g: g.label.clone(),
        h: h.label.clone(),
        passes: witnesses.is_empty(),
        checks,
        witnesses,
    })
}

fn summary(d: &GroupDatum, used: Vec<MultiplierUse>) -> InputSummary {
    InputSummary {
        label: d.label.clone(),
        order: d.order.clone(),
        abelianization: d.abelianization.clone(),
        multipliers: used,
    }
}

fn uses(d: &GroupDatum, classes: &[usize], bar_cap: usize) -> Result<Vec<MultiplierUse>> {
    classes
        .iter()
        .map(|&c| {
            let (group, provenance) = multiplier_needed(d, c, bar_cap)?;
            Ok(MultiplierUse {
                class: c,
                group,
                provenance,
            })
        })
        .collect()
}

fn group_of(u: &[MultiplierUse], c: usize) -> &FgAbelianGroup {
    &u.iter().find(|m| m.class == c).expect("fetched above").group
}

/// `M^(c)(G ∗ H)` as far as it can be stated. For `c = 1` the classical
/// splitting applies with no hypotheses; for `c ≥ 2` the vanishing
/// hypotheses are checked and the conclusion is omitted when one fails.
pub fn free_product_report(g: &GroupDatum, h: &GroupDatum, c: usize, bar_cap: usize) -> Result<FreeProductReport> {
    if c == 0 {
        return Err(Error::invalid("class must be at least 1"));
    }
    let corollary = corollary_classifier(g, h, bar_cap);
    let mut caveats = Vec::new();
    let hypotheses = if c == 1 {
        caveats.push("c = 1: the Schur multiplier of a free product splits for all groups; background result, no hypotheses checked".into());
        None
    } else {
        Some(vanishing_hypothesis_check(g, h, bar_cap)?)
    };
    let holds = hypotheses.as_ref().is_none_or(|r| r.passes);
    let (ug, uh) = if holds {
        let mut classes = vec![c];
        if c > 1 {
            classes.insert(0, 1);
        }
        (uses(g, &classes, bar_cap)?, uses(h, &classes, bar_cap)?)
    } else {
        (uses(g, &[1], bar_cap)?, uses(h, &[1], bar_cap)?)
    };
    let mut breakdown = Vec::new();
    let mut conclusion = None;
    if holds {
        let (mg, mh) = (group_of(&ug, c).clone(), group_of(&uh, c).clone());
        conclusion = Some(mg.direct_sum(&mh));
        breakdown.push(Summand {
            name: format!("M^({c})(G)"),
            group: mg,
        });
        breakdown.push(Summand {
            name: format!("M^({c})(H)"),
            group: mh,
        });
    } else {
        caveats.push("hypotheses fail; no conclusion is drawn".into());
    }
    Ok(FreeProductReport {
        kind: ReportKind::FreeProduct,
        class: c,
        inputs: vec![summary(g, ug), summary(h, uh)],
        hypotheses,
        corollary,
        basis: conclusion.as_ref().map(|_| {
            if c == 1 {
                Basis::Background
            } else {
                Basis::VanishingHypotheses
            }
        }),
        conclusion,
        breakdown,
        caveats,
    })
}

/// [`free_product_report`], with a failed hypothesis turned into an error
/// carrying the witnesses.
pub fn free_product_multiplier(g: &GroupDatum, h: &GroupDatum, c: usize, bar_cap: usize) -> Result<FgAbelianGroup> {
    let r = free_product_report(g, h, c, bar_cap)?;
    match r.conclusion {
        Some(m) => Ok(m),
        None => Err(Error::HypothesisFailed {
            witness: r.hypotheses.map(|h| h.witnesses.join("; ")).unwrap_or_default(),
        }),
    }
}

/// `M^(2)(G ∗ H) = M^(2)(G) ⊕ M^(2)(H) ⊕ (M(G) ⊗ H^ab) ⊕ (G^ab ⊗ M(H)) ⊕ Tor(G^ab, H^ab)`
/// with each summand reported.
pub fn formula_i(g: &GroupDatum, h: &GroupDatum, bar_cap: usize) -> Result<FreeProductReport> {
    let (gab, hab) = (abelianization_of(g)?.clone(), abelianization_of(h)?.clone());
    let ug = uses(g, &[1, 2], bar_cap)?;
    let uh = uses(h, &[1, 2], bar_cap)?;
    let breakdown = vec![
        Summand {
            name: "M^(2)(G)".into(),
            group: group_of(&ug, 2).clone(),
        },
        Summand {
            name: "M^(2)(H)".into(),
            group: group_of(&uh, 2).clone(),
        },
        Summand {
            name: "M(G) ⊗ H^ab".into(),
            group: group_of(&ug, 1).tensor(&hab),
        },
        Summand {
            name: "G^ab ⊗ M(H)".into(),
            group: gab.tensor(group_of(&uh, 1)),
        },
        Summand {
            name: "Tor(G^ab, H^ab)".into(),
            group: gab.tor(&hab),
        },
    ];
    let total = FgAbelianGroup::direct_sum_all(breakdown.iter().map(|s| &s.group));
    Ok(FreeProductReport {
        kind: ReportKind::FormulaI,
        class: 2,
        inputs: vec![summary(g, ug), summary(h, uh)],
        hypotheses: None,
        corollary: corollary_classifier(g, h, bar_cap),
        basis: Some(Basis::FiveSummandFormula),
        conclusion: Some(total),
        breakdown,
        caveats: Vec::new(),
    })
}

/// A size that may be unknown or infinite.
#[derive(Clone)]
enum Size {
    Finite(BigInt),
    Infinite,
    Unknown,
}

impl Size {
    fn text(&self) -> Option<String> {
        match self {
            Size::Finite(n) => Some(n.to_string()),
            Size::Infinite => Some("infinite".into()),
            Size::Unknown => None,
        }
    }
}

fn order_size(d: &GroupDatum) -> Size {
    match &d.order {
        DatumOrder::Finite(n) => Size::Finite(n.clone()),
        DatumOrder::Infinite => Size::Infinite,
        DatumOrder::Unknown => Size::Unknown,
    }
}

fn group_size(g: Option<&FgAbelianGroup>) -> Size {
    match g.map(|g| g.order()) {
        Some(crate::abelian::GroupOrder::Finite(n)) => Size::Finite(n),
        Some(crate::abelian::GroupOrder::Infinite) => Size::Infinite,
        None => Size::Unknown,
    }
}

fn compare(lhs: &str, a: &Size, rhs: &str, b: &Size) -> (Comparison, ConditionStatus) {
    let (gcd, status) = match (a, b) {
        (Size::Finite(x), Size::Finite(y)) => {
            let g = x.gcd(y);
            let s = if g.is_one() {
                ConditionStatus::Pass
            } else {
                ConditionStatus::Fail
            };
            (Some(g.to_string()), s)
        }
        (Size::Infinite, _) | (_, Size::Infinite) => (None, ConditionStatus::Fail),
        _ => (None, ConditionStatus::Undetermined),
    };
    (
        Comparison {
            lhs: lhs.into(),
            lhs_value: a.text(),
            rhs: rhs.into(),
            rhs_value: b.text(),
            gcd,
        },
        status,
    )
}

/// Fail if any part fails, otherwise undetermined if any part is unknown.
fn combine(parts: impl IntoIterator<Item = ConditionStatus>) -> ConditionStatus {
    let parts: Vec<_> = parts.into_iter().collect();
    if parts.contains(&ConditionStatus::Fail) {
        ConditionStatus::Fail
    } else if parts.contains(&ConditionStatus::Undetermined) {
        ConditionStatus::Undetermined
    } else {
        ConditionStatus::Pass
    }
}

fn finiteness(d: &GroupDatum, who: &str) -> (ConditionStatus, Option<String>) {
    match d.order {
        DatumOrder::Finite(_) => (ConditionStatus::Pass, None),
        DatumOrder::Infinite => (ConditionStatus::Fail, Some(format!("{who} is infinite"))),
        DatumOrder::Unknown => (ConditionStatus::Undetermined, Some(format!("order of {who} unknown"))),
    }
}

fn condition(
    label: &str,
    statement: &str,
    pre: Vec<(ConditionStatus, Option<String>)>,
    cmps: Vec<(Comparison, ConditionStatus)>,
) -> CorollaryCondition {
    let reasons: Vec<String> = pre.iter().filter_map(|(_, r)| r.clone()).collect();
    let status = combine(pre.iter().map(|p| p.0).chain(cmps.iter().map(|c| c.1)));
    CorollaryCondition {
        label: label.into(),
        statement: statement.into(),
        status,
        comparisons: cmps.into_iter().map(|c| c.0).collect(),
        reason: (!reasons.is_empty()).then(|| reasons.join("; ")),
    }
}

/// Evaluates the four sufficient conditions for `M^(c)(G ∗ H) = M^(c)(G) ⊕ M^(c)(H)`.
/// Anything that depends on unknown data is reported as undetermined.
pub fn corollary_classifier(g: &GroupDatum, h: &GroupDatum, bar_cap: usize) -> CorollaryReport {
    let (og, oh) = (order_size(g), order_size(h));
    let (ag, ah) = (
        group_size(g.abelianization.as_ref()),
        group_size(h.abelianization.as_ref()),
    );
    let schur = |d: &GroupDatum| match multiplier_of(d, 1, bar_cap) {
        Ok((m, _)) => group_size(Some(&m)),
        Err(_) => Size::Unknown,
    };
    let (mg, mh) = (schur(g), schur(h));
    let abelian = |d: &GroupDatum, who: &str| match d.abelian {
        Some(true) => (ConditionStatus::Pass, None),
        Some(false) => (ConditionStatus::Fail, Some(format!("{who} is not abelian"))),
        None => (
            ConditionStatus::Undetermined,
            Some(format!("whether {who} is abelian is unknown")),
        ),
    };
    let perfect = |a: &Size, who: &str| match a {
        Size::Finite(n) if n.is_one() => (ConditionStatus::Pass, None),
        Size::Unknown => (
            ConditionStatus::Undetermined,
            Some(format!("abelianization of {who} unknown")),
        ),
        _ => (ConditionStatus::Fail, Some(format!("{who} is not perfect"))),
    };
    let conditions = vec![
        condition(
            "(i)",
            "G and H are abelian groups of coprime orders",
            vec![abelian(g, "G"), abelian(h, "H"), finiteness(g, "G"), finiteness(h, "H")],
            vec![compare("|G|", &og, "|H|", &oh)],
        ),
        condition(
            "(ii)",
            "G and H are finite with (|G|, |H^ab|) = (|G^ab|, |H|) = 1",
            vec![finiteness(g, "G"), finiteness(h, "H")],
            vec![compare("|G|", &og, "|H^ab|", &ah), compare("|G^ab|", &ag, "|H|", &oh)],
        ),
        condition(
            "(iii)",
            "G and H are finite with (|G^ab|, |H^ab|) = (|M(G)|, |H|) = (|G^ab|, |M(H)|) = 1",
            vec![finiteness(g, "G"), finiteness(h, "H")],
            vec![
                compare("|G^ab|", &ag, "|H^ab|", &ah),
                compare("|M(G)|", &mg, "|H|", &oh),
                compare("|G^ab|", &ag, "|M(H)|", &mh),
            ],
        ),
        condition(
            "(iv)",
            "G and H are perfect",
            vec![perfect(&ag, "G"), perfect(&ah, "H")],
            vec![],
        ),
    ];
    CorollaryReport {
        g: g.label.clone(),
        h: h.label.clone(),
        satisfied: conditions
            .iter()
            .filter(|c| c.status == ConditionStatus::Pass)
            .map(|c| c.label.clone())
            .collect(),
        conditions,
        note: "the perfect-groups condition is item (iv); some printings label it (vi)".into(),
    }
}
