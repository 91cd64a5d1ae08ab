//! Loading inputs given on the command line: inline JSON, a file path, or
//! `builtin:<name>`.

use std::path::Path;

use serde::de::DeserializeOwned;

use crate::abelian::FgAbelianGroup;
use crate::engine::{builtin_datum, FiniteGroupTable, GroupDatum, Presentation};
use crate::error::{Error, Result};
use crate::simplicial::{doubling_system, mult_fixture, stabilizing_system, SimplicialFixture, TruncatedSimplicialSet};

const BUILTIN: &str = "builtin:";

/// Text of an argument that is either inline JSON or a path.
pub fn read_source(arg: &str) -> Result<String> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(Path::new(arg))
            .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{arg}: {e}"))))
    }
}

pub fn load_json<T: DeserializeOwned>(arg: &str) -> Result<T> {
    Ok(serde_json::from_str(&read_source(arg)?)?)
}

/// A group datum, resolved against its source.
pub fn load_datum(arg: &str, bar_cap: usize) -> Result<GroupDatum> {
    if let Some(name) = arg.strip_prefix(BUILTIN) {
        return builtin_datum(name);
    }
    let mut d: GroupDatum = load_json(arg)?;
    d.resolve(bar_cap)?;
    Ok(d)
}

/// `builtin:S3|D4|Q8|A5|Z<n>xZ<m>…` or a table in JSON.
pub fn load_table(arg: &str) -> Result<FiniteGroupTable> {
    match arg.strip_prefix(BUILTIN) {
        Some("S3") => Ok(FiniteGroupTable::symmetric3()),
        Some("D4") => Ok(FiniteGroupTable::dihedral4()),
        Some("Q8") => Ok(FiniteGroupTable::quaternion8()),
        Some("A5") => Ok(FiniteGroupTable::alternating5()),
        Some(name) => {
            let orders = name
                .split('x')
                .map(|p| {
                    p.strip_prefix('Z')
                        .and_then(|n| n.parse::<usize>().ok())
                        .filter(|&n| n >= 1)
                })
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::invalid(format!("unknown builtin table '{name}'")))?;
            FiniteGroupTable::abelian(&orders)
        }
        None => load_json(arg),
    }
}

pub fn load_presentation(arg: &str) -> Result<Presentation> {
    match arg.strip_prefix(BUILTIN) {
        Some("A5") => Presentation::parse(&["a", "b"], &["a^2", "b^3", "(ab)^5"]),
        Some(name) => Err(Error::invalid(format!("unknown builtin presentation '{name}'"))),
        None => load_json(arg),
    }
}

/// Comma-separated cyclic orders (`0` for `Z`).
pub fn parse_invariants(text: &str) -> Result<Vec<u64>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<u64>()
                .map_err(|_| Error::invalid(format!("'{p}' is not a non-negative integer")))
        })
        .collect()
}

/// An abelian group as JSON or as a list of cyclic orders such as `2,4,0`.
pub fn load_group(arg: &str) -> Result<FgAbelianGroup> {
    let t = arg.trim_start();
    if t.starts_with('{') || Path::new(arg).is_file() {
        load_json(arg)
    } else {
        FgAbelianGroup::from_cyclic_factors(parse_invariants(arg)?)
    }
}

/// Names accepted by [`builtin_fixture`].
pub const FIXTURE_NAMES: &[&str] = &[
    "circle",
    "point",
    "nerve-Z2",
    "nerve-S3",
    "mult-<k>",
    "stabilizing",
    "doubling",
];

pub fn builtin_fixture(name: &str, truncation: usize) -> Result<SimplicialFixture> {
    let set = |label: &str, object| SimplicialFixture::Set {
        label: label.into(),
        object,
    };
    Ok(match name {
        "circle" => set(name, TruncatedSimplicialSet::circle(truncation)?),
        "point" => set(name, TruncatedSimplicialSet::point(truncation)?),
        "nerve-Z2" => {
            let t = FiniteGroupTable::cyclic(2)?;
            set(
                name,
                TruncatedSimplicialSet::nerve(t.table(), t.identity(), truncation)?,
            )
        }
        "nerve-S3" => {
            let t = FiniteGroupTable::symmetric3();
            set(
                name,
                TruncatedSimplicialSet::nerve(t.table(), t.identity(), truncation)?,
            )
        }
        "stabilizing" => SimplicialFixture::System {
            label: name.into(),
            system: stabilizing_system(truncation),
        },
        "doubling" => SimplicialFixture::System {
            label: name.into(),
            system: doubling_system(6, truncation),
        },
        _ => {
            let k = name
                .strip_prefix("mult-")
                .and_then(|k| k.parse::<i64>().ok())
                .ok_or_else(|| {
                    Error::invalid(format!(
                        "unknown builtin fixture '{name}'; known: {}",
                        FIXTURE_NAMES.join(", ")
                    ))
                })?;
            SimplicialFixture::Abelian {
                label: name.into(),
                object: mult_fixture(k, truncation),
            }
        }
    })
}

pub fn load_fixture(arg: &str, truncation: usize) -> Result<SimplicialFixture> {
    match arg.strip_prefix(BUILTIN) {
        Some(name) => builtin_fixture(name, truncation),
        None => load_json(arg),
    }
}
