//! The shipped JSON fixtures parse, match their builders and validate.

use std::fs;
use std::path::PathBuf;

use nilmult::engine::{builtin_datum, GroupDatum, Provenance, DEFAULT_BAR_ORDER_CAP};
use nilmult::io::input::{builtin_fixture, load_datum, load_fixture};
use nilmult::simplicial::SimplicialFixture;

fn data(sub: &str) -> Vec<PathBuf> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(sub);
    let mut v: Vec<PathBuf> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    v.sort();
    v
}

const SIMPLICIAL: [(&str, &str); 7] = [
    ("circle", "circle"),
    ("point", "point"),
    ("nerve-z2", "nerve-Z2"),
    ("nerve-s3", "nerve-S3"),
    ("mult-5", "mult-5"),
    ("stabilizing", "stabilizing"),
    ("doubling", "doubling"),
];

#[test]
fn simplicial_files_match_builders() {
    assert_eq!(data("simplicial").len(), SIMPLICIAL.len());
    for (file, name) in SIMPLICIAL {
        let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("data/simplicial/{file}.json"));
        let loaded = load_fixture(path.to_str().unwrap(), 4).unwrap();
        assert_eq!(loaded, builtin_fixture(name, 4).unwrap(), "{file}");
    }
}

#[test]
fn simplicial_files_validate() {
    for path in data("simplicial") {
        let f = load_fixture(path.to_str().unwrap(), 4).unwrap();
        let report = match &f {
            SimplicialFixture::Set { object, .. } => object.validate(),
            SimplicialFixture::System { system, .. } => system.validate(),
            _ => {
                let a = f.abelian().unwrap();
                assert!(a.moore_complex().unwrap().boundary_squares_vanish());
                a.validate()
            }
        };
        assert!(report.passes(), "{}: {:?}", path.display(), report.violations);
    }
}

#[test]
fn group_files_resolve() {
    for path in data("groups") {
        let d = load_datum(path.to_str().unwrap(), DEFAULT_BAR_ORDER_CAP).unwrap();
        assert!(d.abelianization.is_some(), "{}", path.display());
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(serde_json::from_str::<GroupDatum>(&s).unwrap(), d);
    }
}

#[test]
fn group_files_agree_with_builtins() {
    for (file, name) in [
        ("z4", "Z4"),
        ("z2xz2", "Z2xZ2"),
        ("s3", "S3"),
        ("d4", "D4"),
        ("q8", "Q8"),
        ("a5", "A5"),
    ] {
        let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("data/groups/{file}.json"));
        let d = load_datum(path.to_str().unwrap(), DEFAULT_BAR_ORDER_CAP).unwrap();
        let b = builtin_datum(name).unwrap();
        assert_eq!(
            (&d.abelianization, &d.order, &d.multipliers),
            (&b.abelianization, &b.order, &b.multipliers),
            "{file}"
        );
    }
}

#[test]
fn user_values_keep_their_provenance() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/groups/a5.json");
    let d = load_datum(path.to_str().unwrap(), DEFAULT_BAR_ORDER_CAP).unwrap();
    assert_eq!(d.provenance_of("multiplier.1"), Some(Provenance::UserSupplied));
    assert_eq!(d.provenance_of("abelianization"), Some(Provenance::Computed));
}
