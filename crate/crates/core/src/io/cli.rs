//! The `nilmult` command line.

use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use super::cache::HallCache;
use super::grammar::parse_word;
use super::input::{load_datum, load_fixture, load_group, load_presentation, load_table, parse_invariants};
use super::render::human;
use crate::abelian::FgAbelianGroup;
use crate::engine::{corollary_classifier, formula_i, free_product_report, DEFAULT_BAR_ORDER_CAP};
use crate::error::{Error, Result};
use crate::hall::{bidegree_count, graded_piece, mixed_rank, witt, Bidegree, DEFAULT_BASIS_CAP, ORDER_VERSION};
use crate::nilpotent::{collect, nilpotent_multiplier_abelian};
use crate::simplicial::{
    abelianize, colimit_stabilized, kan_loop_group, kunneth_check, limit_commutes, SimplicialFixture,
    TruncatedSimplicialAbelianGroup,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Human,
    Json,
}

/// Resource caps; each must be positive.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Caps {
    pub basis: Option<usize>,
    pub group_order: Option<usize>,
    pub truncation: Option<usize>,
}

/// Job file given with `--config`. Flags on the command line take precedence.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    /// Command and arguments, used when none is given on the command line.
    pub command: Option<Vec<String>>,
    pub format: Option<Format>,
    pub cache_dir: Option<PathBuf>,
    #[serde(default)]
    pub caps: Caps,
}

impl JobConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let c: JobConfig = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        for (name, v) in [
            ("basis", c.caps.basis),
            ("group_order", c.caps.group_order),
            ("truncation", c.caps.truncation),
        ] {
            if v == Some(0) {
                return Err(Error::invalid(format!("cap '{name}' must be positive")));
            }
        }
        Ok(c)
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "nilmult",
    version,
    about = "Nilpotent multipliers, free products and simplicial checks"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// JSON job file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Hall-basis cache directory (overrides NILMULT_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Largest Hall basis to build.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    basis_cap: Option<u64>,
    /// Largest group order for the bar complex.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    order_cap: Option<u64>,
    /// Largest truncation accepted for simplicial fixtures.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    truncation_cap: Option<u64>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Number of basic commutators of weight w on n generators.
    Witt { n: usize, w: usize },
    /// Hall basis on n generators through weight w.
    Hall { n: usize, w: usize },
    /// Basic commutators of weight c on m + n generators by bidegree.
    Bidegree { m: usize, n: usize, c: usize },
    /// Weight-c mixed piece for two abelian groups.
    Graded {
        g: String,
        h: String,
        c: usize,
        /// Generators of the first factor; defaults to its minimal count.
        #[arg(long)]
        m: Option<usize>,
        /// Generators of the second factor.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Tensor product of two abelian groups (JSON or cyclic orders like 2,4).
    Tensor { a: String, b: String },
    /// Tor of two abelian groups.
    Tor { a: String, b: String },
    /// Normal form of a word in the free nilpotent group.
    Collect {
        /// Word such as `x1^2 [x2,x1]^-1`.
        word: String,
        /// Rank of the free group; defaults to the largest generator used.
        #[arg(long)]
        generators: Option<usize>,
        #[arg(long)]
        class: usize,
    },
    /// c-nilpotent multiplier of a finite direct sum of cyclic groups.
    Multiplier {
        /// Cyclic orders, comma separated, e.g. `2,4`.
        #[arg(long)]
        invariants: String,
        #[arg(long)]
        class: usize,
    },
    /// Schur multiplier of a multiplication table via the bar complex.
    H2Bar {
        /// JSON table, a path, or builtin:S3|D4|Q8|A5|Z2xZ4…
        #[arg(long)]
        table: String,
    },
    /// Abelianization of a presentation.
    Abelianize {
        /// JSON presentation, a path, or builtin:A5.
        #[arg(long)]
        presentation: String,
    },
    /// M^(c) of a free product.
    FreeProduct {
        /// Group datum: JSON, a path, or builtin:<name>.
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        class: usize,
    },
    /// Five-summand decomposition of M^(2) of a free product.
    FormulaI {
        /// Group datum: JSON, a path, or builtin:<name>.
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
    },
    /// Sufficient conditions for the free-product splitting.
    Corollary {
        /// Group datum: JSON, a path, or builtin:<name>.
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
    },
    /// Simplicial checks.
    Simplicial {
        #[command(subcommand)]
        action: SimplicialAction,
    },
}

#[derive(Subcommand, Debug)]
enum SimplicialAction {
    /// Check the simplicial identities.
    Validate(FixtureArgs),
    /// Moore complex ranks and boundary matrices.
    Moore(FixtureArgs),
    /// Homotopy groups in the trusted range.
    Homotopy(FixtureArgs),
    /// Abelianized Kan loop group of a reduced simplicial set.
    Kan(FixtureArgs),
    /// Compare homotopy of a tensor product with the Künneth prediction.
    Kunneth {
        #[command(flatten)]
        fixture: FixtureArgs,
        /// Second factor; defaults to the first.
        #[arg(long)]
        other: Option<String>,
    },
    /// Check that homotopy commutes with the direct limit of a system.
    Colimit {
        #[command(flatten)]
        fixture: FixtureArgs,
        /// Transitions to search for stabilization.
        #[arg(long, default_value_t = 8)]
        window: usize,
        #[arg(long, default_value_t = 0)]
        degree: usize,
    },
}

#[derive(clap::Args, Debug)]
struct FixtureArgs {
    /// JSON file, inline JSON, or builtin:<name>.
    #[arg(long)]
    fixture: String,
    /// Truncation used for builtin fixtures.
    #[arg(long, default_value_t = 4)]
    truncation: usize,
}

struct Settings {
    format: Format,
    cache: HallCache,
    basis_cap: usize,
    order_cap: usize,
    truncation_cap: usize,
}

/// A command's report, plus whether a hypothesis failed.
struct Outcome {
    json: String,
    human: String,
    hypothesis_failed: bool,
}

fn report<T: Serialize>(value: &T) -> Result<Outcome> {
    Ok(Outcome {
        json: serde_json::to_string_pretty(value)?,
        human: human(&serde_json::to_value(value)?),
        hypothesis_failed: false,
    })
}

#[derive(Serialize)]
struct HallElement {
    index: usize,
    weight: usize,
    commutator: String,
    multidegree: Vec<usize>,
}

#[derive(Serialize)]
struct BidegreeEntry {
    bidegree: Bidegree,
    count: u128,
}

#[derive(Serialize)]
struct FixtureValidation {
    label: String,
    passes: bool,
    violations: Vec<crate::simplicial::Violation>,
    boundary_squares_vanish: Option<bool>,
}

fn abelian_of(f: &SimplicialFixture, what: &str) -> Result<TruncatedSimplicialAbelianGroup> {
    f.abelian().ok_or_else(|| {
        Error::Unsupported(format!(
            "{what} needs a simplicial abelian group; '{}' is not one",
            f.label()
        ))
    })
}

fn truncation_of(f: &SimplicialFixture) -> usize {
    match f {
        SimplicialFixture::Set { object, .. } => object.truncation(),
        SimplicialFixture::Abelian { object, .. } => object.truncation(),
        SimplicialFixture::ChainComplex { truncation, .. } => *truncation,
        SimplicialFixture::System { system, .. } => system.objects().first().map_or(0, |o| o.truncation()),
    }
}

fn fixture(args: &FixtureArgs, s: &Settings) -> Result<SimplicialFixture> {
    let check = |d: usize| {
        if d > s.truncation_cap {
            return Err(Error::ResourceLimit {
                what: "simplicial truncation",
                needed: d as u128,
                cap: s.truncation_cap as u128,
            });
        }
        Ok(())
    };
    check(args.truncation)?;
    let f = load_fixture(&args.fixture, args.truncation)?;
    check(truncation_of(&f))?;
    Ok(f)
}

fn run_simplicial(action: &SimplicialAction, s: &Settings) -> Result<Outcome> {
    match action {
        SimplicialAction::Validate(a) => {
            let f = fixture(a, s)?;
            let (v, squares) = match &f {
                SimplicialFixture::Set { object, .. } => (object.validate(), None),
                SimplicialFixture::System { system, .. } => (system.validate(), None),
                _ => {
                    let o = abelian_of(&f, "validate")?;
                    (o.validate(), Some(o.moore_complex()?.boundary_squares_vanish()))
                }
            };
            report(&FixtureValidation {
                label: f.label().into(),
                passes: v.passes() && squares != Some(false),
                violations: v.violations,
                boundary_squares_vanish: squares,
            })
        }
        SimplicialAction::Moore(a) => {
            let f = fixture(a, s)?;
            let moore = abelian_of(&f, "moore")?.moore_complex()?;
            #[derive(Serialize)]
            struct Moore {
                label: String,
                complex: crate::simplicial::ChainComplex,
                boundary_squares_vanish: bool,
            }
            report(&Moore {
                label: f.label().into(),
                boundary_squares_vanish: moore.boundary_squares_vanish(),
                complex: moore,
            })
        }
        SimplicialAction::Homotopy(a) => {
            let f = fixture(a, s)?;
            let o = abelian_of(&f, "homotopy")?;
            let top = o.truncation().checked_sub(1).ok_or(Error::OutOfTruncationRange {
                requested: 0,
                truncation: 0,
                max: -1,
            })?;
            #[derive(Serialize)]
            struct Homotopy {
                label: String,
                truncation: usize,
                groups: Vec<FgAbelianGroup>,
            }
            report(&Homotopy {
                label: f.label().into(),
                truncation: o.truncation(),
                groups: o.homotopy_through(top)?,
            })
        }
        SimplicialAction::Kan(a) => {
            let f = fixture(a, s)?;
            let SimplicialFixture::Set { object, label } = &f else {
                return Err(Error::Unsupported("kan needs a simplicial set fixture".into()));
            };
            let g = kan_loop_group(object)?;
            let ab = abelianize(&g)?;
            let top = ab.truncation().saturating_sub(1);
            #[derive(Serialize)]
            struct Kan {
                label: String,
                truncation: usize,
                generator_counts: Vec<usize>,
                identities_hold: bool,
                abelianized_homotopy: Vec<FgAbelianGroup>,
            }
            report(&Kan {
                label: label.clone(),
                truncation: g.truncation(),
                generator_counts: (0..=g.truncation()).map(|n| g.generator_count(n)).collect(),
                identities_hold: g.validate().passes(),
                abelianized_homotopy: if ab.truncation() == 0 {
                    Vec::new()
                } else {
                    ab.homotopy_through(top)?
                },
            })
        }
        SimplicialAction::Kunneth { fixture: a, other } => {
            let f = fixture(a, s)?;
            let x = abelian_of(&f, "kunneth")?;
            let y = match other {
                Some(o) => abelian_of(
                    &fixture(
                        &FixtureArgs {
                            fixture: o.clone(),
                            truncation: a.truncation,
                        },
                        s,
                    )?,
                    "kunneth",
                )?,
                None => x.clone(),
            };
            report(&kunneth_check(&x, &y)?)
        }
        SimplicialAction::Colimit {
            fixture: a,
            window,
            degree,
        } => {
            let f = fixture(a, s)?;
            let SimplicialFixture::System { system, label } = &f else {
                return Err(Error::Unsupported("colimit needs a directed-system fixture".into()));
            };
            let c = colimit_stabilized(system, *window)?;
            #[derive(Serialize)]
            struct Colimit {
                label: String,
                stable_index: usize,
                colimit_ranks: Vec<usize>,
                limit: crate::simplicial::LimitReport,
            }
            report(&Colimit {
                label: label.clone(),
                stable_index: c.index,
                colimit_ranks: c.object.ranks().to_vec(),
                limit: limit_commutes(system, *degree, *window)?,
            })
        }
    }
}

fn run(cmd: &Command, s: &Settings) -> Result<Outcome> {
    match cmd {
        Command::Witt { n, w } => {
            if *n == 0 || *w == 0 {
                return Err(Error::invalid("witt needs n >= 1 and w >= 1"));
            }
            report(&witt(*n, *w))
        }
        Command::Hall { n, w } => {
            let (b, _) = s.cache.basis(*n, *w, s.basis_cap)?;
            #[derive(Serialize)]
            struct Hall {
                n: usize,
                w: usize,
                order: &'static str,
                count: usize,
                elements: Vec<HallElement>,
            }
            report(&Hall {
                n: *n,
                w: *w,
                order: ORDER_VERSION,
                count: b.len(),
                elements: (0..b.len())
                    .map(|i| HallElement {
                        index: i,
                        weight: b.weight(i),
                        commutator: b.tree(i).to_string(),
                        multidegree: b.multidegree(i).to_vec(),
                    })
                    .collect(),
            })
        }
        Command::Bidegree { m, n, c } => {
            let counts = bidegree_count(*m, *n, *c)?;
            #[derive(Serialize)]
            struct Bidegrees {
                m: usize,
                n: usize,
                c: usize,
                total: u128,
                mixed_rank: u128,
                counts: Vec<BidegreeEntry>,
            }
            report(&Bidegrees {
                m: *m,
                n: *n,
                c: *c,
                total: counts.values().sum(),
                mixed_rank: mixed_rank(*m, *n, *c),
                counts: counts
                    .into_iter()
                    .map(|(bidegree, count)| BidegreeEntry { bidegree, count })
                    .collect(),
            })
        }
        Command::Graded { g, h, c, m, n } => {
            let (g, h) = (load_group(g)?, load_group(h)?);
            let m = m.unwrap_or(g.generator_count().max(1));
            let n = n.unwrap_or(h.generator_count().max(1));
            report(&graded_piece(&g, &h, *c, m, n)?)
        }
        Command::Tensor { a, b } => report(&load_group(a)?.tensor(&load_group(b)?)),
        Command::Tor { a, b } => report(&load_group(a)?.tor(&load_group(b)?)),
        Command::Collect {
            word,
            generators,
            class,
        } => {
            let w = parse_word(word)?;
            let n = generators.unwrap_or((w.max_generator() as usize).max(1));
            report(&collect(&w, n, *class)?)
        }
        Command::Multiplier { invariants, class } => {
            let inv = parse_invariants(invariants)?;
            #[derive(Serialize)]
            struct Multiplier {
                invariants: Vec<u64>,
                class: usize,
                multiplier: FgAbelianGroup,
            }
            report(&Multiplier {
                multiplier: nilpotent_multiplier_abelian(&inv, *class)?,
                invariants: inv,
                class: *class,
            })
        }
        Command::H2Bar { table } => {
            let t = load_table(table)?;
            #[derive(Serialize)]
            struct Bar {
                order: usize,
                abelian: bool,
                h1: FgAbelianGroup,
                h2: FgAbelianGroup,
            }
            report(&Bar {
                order: t.order(),
                abelian: t.is_abelian(),
                h1: t.bar_h1(s.order_cap)?,
                h2: t.bar_h2(s.order_cap)?,
            })
        }
        Command::Abelianize { presentation } => {
            let p = load_presentation(presentation)?;
            let ab = p.abelianization()?;
            #[derive(Serialize)]
            struct Abelianization {
                presentation: crate::engine::Presentation,
                abelianization: FgAbelianGroup,
                perfect: bool,
            }
            report(&Abelianization {
                perfect: ab.is_trivial(),
                abelianization: ab,
                presentation: p,
            })
        }
        Command::FreeProduct { g, h, class } => {
            let (g, h) = (load_datum(g, s.order_cap)?, load_datum(h, s.order_cap)?);
            let r = free_product_report(&g, &h, *class, s.order_cap)?;
            let mut out = report(&r)?;
            out.hypothesis_failed = r.conclusion.is_none();
            Ok(out)
        }
        Command::FormulaI { g, h } => {
            let (g, h) = (load_datum(g, s.order_cap)?, load_datum(h, s.order_cap)?);
            report(&formula_i(&g, &h, s.order_cap)?)
        }
        Command::Corollary { g, h } => {
            let (g, h) = (load_datum(g, s.order_cap)?, load_datum(h, s.order_cap)?);
            report(&corollary_classifier(&g, &h, s.order_cap))
        }
        Command::Simplicial { action } => run_simplicial(action, s),
    }
}

fn execute(cli: Cli) -> Result<(Outcome, Format)> {
    let config = match &cli.config {
        Some(p) => JobConfig::load(p)?,
        None => JobConfig::default(),
    };
    let command = match cli.command {
        Some(c) => c,
        None => {
            let args = config
                .command
                .clone()
                .ok_or_else(|| Error::invalid("no command given on the command line or in the job file"))?;
            let inner = Cli::try_parse_from(std::iter::once("nilmult".to_string()).chain(args))
                .map_err(|e| Error::invalid(format!("job file command: {e}")))?;
            inner
                .command
                .ok_or_else(|| Error::invalid("job file command is empty"))?
        }
    };
    let settings = Settings {
        format: cli.format.or(config.format).unwrap_or_default(),
        cache: HallCache::from_flag_or_env(cli.cache_dir.as_deref().or(config.cache_dir.as_deref())),
        basis_cap: cli
            .basis_cap
            .map(|v| v as usize)
            .or(config.caps.basis)
            .unwrap_or(DEFAULT_BASIS_CAP),
        order_cap: cli
            .order_cap
            .map(|v| v as usize)
            .or(config.caps.group_order)
            .unwrap_or(DEFAULT_BAR_ORDER_CAP),
        truncation_cap: cli
            .truncation_cap
            .map(|v| v as usize)
            .or(config.caps.truncation)
            .unwrap_or(8),
    };
    Ok((run(&command, &settings)?, settings.format))
}

/// Runs the CLI and returns the process exit code: 0 success, 2 parse or
/// format error, 3 hypothesis failed, 4 resource cap, 5 undetermined data.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let json_errors = cli.format == Some(Format::Json);
    match execute(cli) {
        Ok((out, format)) => {
            let text = match format {
                Format::Json => format!("{}\n", out.json),
                Format::Human => out.human,
            };
            // a closed pipe is not an error of the computation
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if out.hypothesis_failed {
                3
            } else {
                0
            }
        }
        Err(e) => {
            if json_errors {
                let v = serde_json::json!({"error": {"message": e.to_string(), "exit_code": e.exit_code()}});
                let text = format!("{}\n", serde_json::to_string_pretty(&v).unwrap_or_default());
                let _ = std::io::stdout().lock().write_all(text.as_bytes());
            }
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
