use super::*;
use crate::abelian::FgAbelianGroup;
use crate::error::Error;
use crate::nilpotent::nilpotent_multiplier_abelian;

fn z(n: u64) -> FgAbelianGroup {
    FgAbelianGroup::cyclic(n)
}

fn chain(orders: &[u64]) -> FgAbelianGroup {
    FgAbelianGroup::from_cyclic_factors(orders.iter().copied()).unwrap()
}

const CAP: usize = DEFAULT_BAR_ORDER_CAP;

#[test]
fn tables_validate() {
    assert_eq!(FiniteGroupTable::symmetric3().order(), 6);
    assert_eq!(FiniteGroupTable::dihedral4().order(), 8);
    assert_eq!(FiniteGroupTable::quaternion8().order(), 8);
    assert_eq!(FiniteGroupTable::alternating5().order(), 60);
    assert!(!FiniteGroupTable::quaternion8().is_abelian());
    assert!(FiniteGroupTable::abelian(&[2, 4]).unwrap().is_abelian());
    let mut bad = FiniteGroupTable::cyclic(3).unwrap().table().to_vec();
    bad[1][1] = 1;
    assert!(FiniteGroupTable::new(3, 0, bad).is_err());
}

#[test]
fn bar_h2_examples() {
    let t = |orders: &[usize]| FiniteGroupTable::abelian(orders).unwrap();
    assert_eq!(t(&[2, 2]).bar_h2(CAP).unwrap(), z(2));
    assert_eq!(t(&[6]).bar_h2(CAP).unwrap(), FgAbelianGroup::trivial());
    assert_eq!(
        FiniteGroupTable::symmetric3().bar_h2(CAP).unwrap(),
        FgAbelianGroup::trivial()
    );
    assert_eq!(FiniteGroupTable::dihedral4().bar_h2(CAP).unwrap(), z(2));
    assert_eq!(
        FiniteGroupTable::quaternion8().bar_h2(CAP).unwrap(),
        FgAbelianGroup::trivial()
    );
    assert_eq!(t(&[2, 2, 2]).bar_h2(CAP).unwrap(), chain(&[2, 2, 2]));
}

#[test]
fn bar_cap_is_enforced() {
    let e = FiniteGroupTable::alternating5().bar_h2(CAP).unwrap_err();
    assert!(matches!(
        e,
        Error::ResourceLimit {
            needed: 60,
            cap: 24,
            ..
        }
    ));
}

#[test]
fn bar_h1_is_abelianization() {
    assert_eq!(FiniteGroupTable::symmetric3().bar_h1(CAP).unwrap(), z(2));
    assert_eq!(FiniteGroupTable::dihedral4().bar_h1(CAP).unwrap(), chain(&[2, 2]));
    assert_eq!(FiniteGroupTable::quaternion8().bar_h1(CAP).unwrap(), chain(&[2, 2]));
    assert_eq!(
        FiniteGroupTable::abelian(&[4, 6]).unwrap().bar_h1(CAP).unwrap(),
        chain(&[2, 12])
    );
}

#[test]
fn presentation_abelianizations() {
    let p = |names: &[&str], rels: &[&str]| Presentation::parse(names, rels).unwrap();
    assert_eq!(p(&["x"], &["x^5"]).abelianization().unwrap(), z(5));
    assert_eq!(
        p(&["x", "y"], &["[x,y]"]).abelianization().unwrap(),
        FgAbelianGroup::free(2)
    );
    let a5 = p(&["a", "b"], &["a^2", "b^3", "(ab)^5"]);
    assert!(a5.is_perfect().unwrap());
    assert!(!p(&["x"], &["x^2"]).is_perfect().unwrap());
    assert!(!p(&["x", "y"], &[]).is_perfect().unwrap());
}

#[test]
fn presentation_and_table_agree() {
    let pairs = [
        (
            Presentation::parse(&["a", "b"], &["a^3", "b^2", "(ab)^2"]).unwrap(),
            FiniteGroupTable::symmetric3(),
        ),
        (
            Presentation::parse(&["r", "s"], &["r^4", "s^2", "(rs)^2"]).unwrap(),
            FiniteGroupTable::dihedral4(),
        ),
        (
            Presentation::parse(&["i", "j"], &["i^4", "i^2 j^-2", "j^-1 i j i"]).unwrap(),
            FiniteGroupTable::quaternion8(),
        ),
        (
            Presentation::parse(&["a", "b"], &["a^2", "b^3", "(ab)^5"]).unwrap(),
            FiniteGroupTable::alternating5(),
        ),
    ];
    for (p, t) in pairs {
        assert_eq!(p.abelianization().unwrap(), t.bar_h1(60).unwrap());
    }
}

#[test]
fn presentation_json_round_trip() {
    let p = Presentation::parse(&["a", "b"], &["a^2", "b^3", "(ab)^5"]).unwrap();
    let s = serde_json::to_string(&p).unwrap();
    assert_eq!(serde_json::from_str::<Presentation>(&s).unwrap(), p);
    let q: Presentation = serde_json::from_str(r#"{"generators": 2, "relators": ["x1^2", "[x1,x2]"]}"#).unwrap();
    assert_eq!(q.abelianization().unwrap(), chain(&[2, 0]));
    assert!(serde_json::from_str::<Presentation>(r#"{"generators": 1, "relators": ["x2"]}"#).is_err());
}

#[test]
fn multiplier_sources() {
    let d = GroupDatum::cyclic(7);
    for c in 1..=4 {
        assert!(multiplier_of(&d, c, CAP).unwrap().0.is_trivial());
    }
    let v = GroupDatum::abelian_group(&[2, 2]);
    assert_eq!(multiplier_of(&v, 2, CAP).unwrap().0, chain(&[2, 2]));
    let s3 = builtin_datum("S3").unwrap();
    assert!(multiplier_of(&s3, 1, CAP).unwrap().0.is_trivial());
    assert!(matches!(multiplier_of(&s3, 2, CAP), Err(Error::Unsupported(_))));
    let a5 = builtin_datum("A5").unwrap();
    assert_eq!(multiplier_of(&a5, 1, CAP).unwrap(), (z(2), Provenance::Builtin));
    assert!(matches!(multiplier_of(&a5, 2, CAP), Err(Error::Unsupported(_))));
}

#[test]
fn abelian_table_multipliers_match_engine() {
    let t = FiniteGroupTable::abelian(&[2, 4]).unwrap();
    let d = GroupDatum::from_source("t", GroupSource::Table { table: t });
    assert_eq!(
        multiplier_of(&d, 3, CAP).unwrap().0,
        nilpotent_multiplier_abelian(&[2, 4], 3).unwrap()
    );
}

#[test]
fn builtins() {
    let d = builtin_datum("Z2xZ4").unwrap();
    assert_eq!(d.abelianization, Some(chain(&[2, 4])));
    assert_eq!(d.order, DatumOrder::Finite(8.into()));
    assert_eq!(d.provenance_of("abelianization"), Some(Provenance::Builtin));
    assert_eq!(builtin_datum("Z").unwrap().order, DatumOrder::Infinite);
    let a5 = builtin_datum("A5").unwrap();
    assert_eq!(a5.abelianization, Some(FgAbelianGroup::trivial()));
    assert_eq!(a5.provenance_of("abelianization"), Some(Provenance::Computed));
    assert!(builtin_datum("G7").is_err());
}

#[test]
fn datum_validation() {
    let bad = r#"{"label": "bad", "abelianization": {"free_rank": 1, "invariant_factors": []}, "order": 6}"#;
    assert!(serde_json::from_str::<GroupDatum>(bad).is_err());
    let ok = r#"{"label": "G", "abelianization": {"free_rank": 0, "invariant_factors": [2]}, "order": 6,
                 "multipliers": {"1": {"free_rank": 0, "invariant_factors": []}}}"#;
    let d: GroupDatum = serde_json::from_str(ok).unwrap();
    assert_eq!(d.provenance_of("multiplier.1"), Some(Provenance::UserSupplied));
    assert_eq!(d.provenance_of("order"), Some(Provenance::UserSupplied));
    let s = serde_json::to_string(&d).unwrap();
    assert_eq!(serde_json::from_str::<GroupDatum>(&s).unwrap(), d);
    let unknown = r#"{"label": "G", "colour": 3}"#;
    assert!(serde_json::from_str::<GroupDatum>(unknown).is_err());
}

#[test]
fn resolve_detects_conflicts() {
    let mut d = GroupDatum::from_source("Z4", GroupSource::Cyclic { n: 4 });
    d.abelianization = Some(z(2));
    d.provenance.insert("abelianization".into(), Provenance::UserSupplied);
    assert!(d.resolve(CAP).is_err());
}

#[test]
fn hypothesis_examples() {
    let r = vanishing_hypothesis_check(&GroupDatum::cyclic(2), &GroupDatum::cyclic(3), CAP).unwrap();
    assert!(r.passes);
    let r = vanishing_hypothesis_check(&GroupDatum::cyclic(2), &GroupDatum::cyclic(2), CAP).unwrap();
    assert!(!r.passes);
    assert!(r.witnesses.contains(&"Tor(G^ab, H^ab) = Z_2".to_string()));
    let a5 = builtin_datum("A5").unwrap();
    assert!(vanishing_hypothesis_check(&a5, &a5, CAP).unwrap().passes);
    let blank = GroupDatum::from_source("?", GroupSource::User);
    assert!(matches!(
        vanishing_hypothesis_check(&blank, &a5, CAP),
        Err(Error::MissingData(m)) if m.contains("abelianization")
    ));
}

#[test]
fn free_product_examples() {
    let m = free_product_multiplier(&GroupDatum::cyclic(2), &GroupDatum::cyclic(3), 3, CAP).unwrap();
    assert!(m.is_trivial());
    let m = free_product_multiplier(&GroupDatum::cyclic(9), &GroupDatum::abelian_group(&[4, 2]), 1, CAP).unwrap();
    assert_eq!(m, z(2));
    let e = free_product_multiplier(&GroupDatum::cyclic(2), &GroupDatum::cyclic(2), 2, CAP).unwrap_err();
    assert!(matches!(e, Error::HypothesisFailed { ref witness } if witness.contains("Tor(G^ab, H^ab) = Z_2")));
    let r = free_product_report(&GroupDatum::cyclic(2), &GroupDatum::cyclic(2), 2, CAP).unwrap();
    assert!(r.conclusion.is_none() && r.breakdown.is_empty());
    let r = free_product_report(&GroupDatum::cyclic(2), &GroupDatum::cyclic(2), 1, CAP).unwrap();
    assert_eq!(r.basis, Some(Basis::Background));
    assert!(r.hypotheses.is_none());
    assert!(r.conclusion.unwrap().is_trivial());
}

#[test]
fn formula_i_examples() {
    let r = formula_i(&GroupDatum::cyclic(2), &GroupDatum::cyclic(2), CAP).unwrap();
    assert_eq!(r.conclusion, Some(z(2)));
    let nonzero: Vec<_> = r
        .breakdown
        .iter()
        .filter(|s| !s.group.is_trivial())
        .map(|s| s.name.as_str())
        .collect();
    assert_eq!(nonzero, ["Tor(G^ab, H^ab)"]);
    let r = formula_i(&GroupDatum::cyclic(2), &GroupDatum::cyclic(3), CAP).unwrap();
    assert!(r.conclusion.unwrap().is_trivial());
    let r = formula_i(&GroupDatum::abelian_group(&[2, 2]), &GroupDatum::cyclic(3), CAP).unwrap();
    assert_eq!(r.conclusion, Some(chain(&[2, 2])));
    assert!(r.breakdown[2..].iter().all(|s| s.group.is_trivial()));
}

#[test]
fn formula_i_needs_second_multiplier() {
    let s3 = builtin_datum("S3").unwrap();
    assert!(
        matches!(formula_i(&s3, &GroupDatum::cyclic(5), CAP), Err(Error::MissingData(m)) if m.contains("multiplier.2"))
    );
}

fn satisfied(g: &GroupDatum, h: &GroupDatum) -> Vec<String> {
    corollary_classifier(g, h, CAP).satisfied
}

#[test]
fn corollary_examples() {
    assert_eq!(
        satisfied(&GroupDatum::cyclic(4), &GroupDatum::cyclic(9)),
        ["(i)", "(ii)", "(iii)"]
    );
    let a5 = builtin_datum("A5").unwrap();
    assert!(satisfied(&a5, &a5).contains(&"(iv)".to_string()));
    assert!(satisfied(&GroupDatum::cyclic(2), &GroupDatum::cyclic(2)).is_empty());
    let s3 = builtin_datum("S3").unwrap();
    // |S3| = 6 and |Z_5| = 5 are coprime, but S3 is not abelian
    assert_eq!(satisfied(&s3, &GroupDatum::cyclic(5)), ["(ii)", "(iii)"]);
}

#[test]
fn corollary_never_guesses() {
    let blank = GroupDatum::from_source("?", GroupSource::User);
    let r = corollary_classifier(&blank, &GroupDatum::cyclic(3), CAP);
    assert!(r.satisfied.is_empty());
    assert!(r.conditions[..3]
        .iter()
        .all(|c| c.status == ConditionStatus::Undetermined));
    // Z_3 is not perfect whatever G is
    assert_eq!(r.conditions[3].status, ConditionStatus::Fail);
    let c = &r.conditions[1].comparisons[0];
    assert_eq!(
        (c.lhs_value.as_deref(), c.rhs_value.as_deref(), c.gcd.as_deref()),
        (None, Some("3"), None)
    );
}

#[test]
fn reports_round_trip() {
    let r = free_product_report(&builtin_datum("Z4").unwrap(), &builtin_datum("Z9").unwrap(), 2, CAP).unwrap();
    let s = serde_json::to_string(&r).unwrap();
    let back: FreeProductReport = serde_json::from_str(&s).unwrap();
    assert_eq!(back, r);
    assert_eq!(serde_json::to_string(&back).unwrap(), s);
}
