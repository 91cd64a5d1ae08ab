//! Acceptance criteria, one test per criterion. Each prints a single
//! `criterion N: PASS|FAIL` line with its pinned limits, then asserts.

use std::collections::BTreeMap;
use std::io::Write as _;
use std::time::{Duration, Instant};

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nilmult::abelian::{FgAbelianGroup, IntegerMatrix};
use nilmult::engine::{
    builtin_datum, corollary_classifier, formula_i, free_product_multiplier, free_product_report,
    vanishing_hypothesis_check, ConditionStatus, FiniteGroupTable, GroupDatum, GroupSource, Presentation, Provenance,
};
use nilmult::error::Error;
use nilmult::hall::{bidegree_count, necklace_count, witt, HallBasis};
use nilmult::io::input::builtin_fixture;
use nilmult::nilpotent::{collect, matrix_oracle_check, nilpotent_multiplier_abelian, FreeGroupWord};
use nilmult::simplicial::{
    abelianize, chain_system, doubling_system, kan_loop_group, kunneth_check, limit_commutes, stabilizing_system,
    ChainComplex, SimplicialFixture, TruncatedSimplicialAbelianGroup, TruncatedSimplicialSet,
};

/// Bar-complex order cap used by the acceptance grid.
const BAR_CAP: usize = 36;

fn finish(n: u32, what: &str, failures: &[String], start: Instant, limit: Duration) {
    let elapsed = start.elapsed();
    let ok = failures.is_empty() && elapsed <= limit;
    let line = format!(
        "criterion {n}: {} ({what}; {} failures; {:.2}s of {}s)\n",
        if ok { "PASS" } else { "FAIL" },
        failures.len(),
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    // written past the harness capture so the line shows in every run
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(
        failures.is_empty(),
        "criterion {n}: {:?}",
        &failures[..failures.len().min(10)]
    );
    assert!(elapsed <= limit, "criterion {n}: took {elapsed:?}, limit {limit:?}");
}

/// Invariant-factor chains `d_1 | … | d_k` (all `d_i ≥ 2`) with product `n`.
fn chains(n: u64) -> Vec<Vec<u64>> {
    fn go(rest: u64, min: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 1 {
            out.push(acc.clone());
            return;
        }
        for d in 2..=rest {
            let divides_prev = acc.last().is_none_or(|&p| d % p == 0);
            if rest.is_multiple_of(d) && d >= min && divides_prev {
                // remaining factors are multiples of d
                let r = rest / d;
                if r == 1 || r.is_multiple_of(d) {
                    acc.push(d);
                    go(r, d, acc, out);
                    acc.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(n, 2, &mut Vec::new(), &mut out);
    out
}

fn abelian_groups_up_to(max: u64) -> Vec<Vec<u64>> {
    (1..=max).flat_map(chains).collect()
}

fn order(chain: &[u64]) -> u64 {
    chain.iter().product()
}

#[test]
fn criterion_1_hall_sizes_match_witt() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 1..=4 {
        let b = HallBasis::generate(n, 8).unwrap();
        for w in 1..=8 {
            if b.count_at(w) as u128 != witt(n, w) {
                failures.push(format!("n={n} w={w}: {} vs {}", b.count_at(w), witt(n, w)));
            }
        }
    }
    finish(
        1,
        "Hall basis sizes for n <= 4, w <= 8 equal Witt numbers",
        &failures,
        start,
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_2_bidegree_counts() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for m in 1..=3 {
        for n in 1..=3 {
            for c in 2..=6 {
                let counts = bidegree_count(m, n, c).unwrap();
                let total: u128 = counts.values().sum();
                let expected = witt(m + n, c) - witt(m, c) - witt(n, c);
                if total != expected {
                    failures.push(format!("m={m} n={n} c={c}: sum {total} vs {expected}"));
                }
                for i in 1..c {
                    let got = counts
                        .get(&nilmult::hall::Bidegree::new(i, c - i))
                        .copied()
                        .unwrap_or(0);
                    let neck = necklace_count(m, n, i, c - i);
                    if got != neck {
                        failures.push(format!("m={m} n={n} ({i},{}): {got} vs necklace {neck}", c - i));
                    }
                }
            }
        }
    }
    // c = 1 has no mixed commutators
    for (m, n) in [(1, 1), (2, 3), (3, 3)] {
        if witt(m + n, 1) - witt(m, 1) - witt(n, 1) != 0 {
            failures.push(format!("m={m} n={n} c=1: mixed weight-1 count nonzero"));
        }
    }
    finish(
        2,
        "bidegree sums and necklace counts for m, n <= 3, c <= 6",
        &failures,
        start,
        Duration::from_secs(30),
    );
}

fn random_word(rng: &mut ChaCha8Rng, n: u32, len: usize) -> FreeGroupWord {
    FreeGroupWord::from_syllables((0..len).map(|_| (rng.gen_range(1..=n), rng.gen_range(-3i64..=3))))
}

#[test]
fn criterion_3_collection_soundness() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    for t in 0..200 {
        let n = rng.gen_range(1..=3u32);
        let c = rng.gen_range(1..=4usize);
        let (lu, lv) = (rng.gen_range(0..8), rng.gen_range(0..8));
        let (u, v) = (random_word(&mut rng, n, lu), random_word(&mut rng, n, lv));
        let cu = collect(&u, n as usize, c).unwrap();
        let cv = collect(&v, n as usize, c).unwrap();
        let cuv = collect(&u.concat(&v), n as usize, c).unwrap();
        if cuv != cu.multiply(&cv).unwrap() {
            failures.push(format!("pair {t}: collect({u} {v}) differs from the product"));
        }
    }
    for t in 0..100 {
        let n = rng.gen_range(1..=3u32);
        let len = rng.gen_range(1..10);
        let w = random_word(&mut rng, n, len);
        if !matrix_oracle_check(&w, n as usize).unwrap() {
            failures.push(format!("matrix oracle {t}: {w}"));
        }
    }
    // every left-normed (c+1)-fold commutator of generators, and of random words
    for n in 1..=3u32 {
        for c in 1..=4usize {
            let mut tuples: Vec<Vec<u32>> = vec![vec![]];
            for _ in 0..=c {
                tuples = tuples
                    .into_iter()
                    .flat_map(|t| (1..=n).map(move |g| [t.clone(), vec![g]].concat()))
                    .collect();
            }
            for t in tuples {
                let words: Vec<FreeGroupWord> = t.iter().map(|&g| FreeGroupWord::generator(g)).collect();
                let w = FreeGroupWord::left_normed(&words);
                if !collect(&w, n as usize, c).unwrap().is_identity() {
                    failures.push(format!("n={n} c={c}: {t:?} survives"));
                }
            }
            for _ in 0..5 {
                let words: Vec<FreeGroupWord> = (0..=c).map(|_| random_word(&mut rng, n, 3)).collect();
                if !collect(&FreeGroupWord::left_normed(&words), n as usize, c)
                    .unwrap()
                    .is_identity()
                {
                    failures.push(format!("n={n} c={c}: random commutator survives"));
                }
            }
        }
    }
    finish(
        3,
        "200 random products, 100 matrix-oracle words, all (c+1)-fold commutators",
        &failures,
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_4_engine_matches_bar_complex() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let groups = abelian_groups_up_to(36);
    for chain in &groups {
        let orders: Vec<usize> = chain.iter().map(|&d| d as usize).collect();
        let bar = FiniteGroupTable::abelian(&orders).unwrap().bar_h2(BAR_CAP).unwrap();
        let engine = nilpotent_multiplier_abelian(chain, 1).unwrap();
        if bar != engine {
            failures.push(format!("{chain:?}: bar {bar} vs engine {engine}"));
        }
    }
    for n in 1..=12u64 {
        for c in 1..=5 {
            // [n, 1] runs the full rank-2 computation with a killed generator
            for inv in [vec![n], vec![n, 1]] {
                let m = nilpotent_multiplier_abelian(&inv, c).unwrap();
                if !m.is_trivial() {
                    failures.push(format!("M^({c})({inv:?}) = {m}"));
                }
            }
        }
    }
    let what = format!(
        "{} abelian groups of order <= 36 against the bar complex; M^(c)(Z_n) = 0",
        groups.len()
    );
    finish(4, &what, &failures, start, Duration::from_secs(120));
}

fn abelian_datum(chain: &[u64], classes: &[usize]) -> GroupDatum {
    let mut d = GroupDatum::abelian_group(chain);
    for &c in classes {
        d.ensure_multiplier(c, BAR_CAP).unwrap();
    }
    d
}

#[test]
fn criterion_5_free_product_pipeline() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let data: Vec<(Vec<u64>, GroupDatum)> = abelian_groups_up_to(30)
        .into_iter()
        .map(|ch| {
            let d = abelian_datum(&ch, &[1, 2, 3]);
            (ch, d)
        })
        .collect();
    let mut pairs = 0;
    for (cg, g) in &data {
        for (ch, h) in &data {
            if order(cg).gcd(&order(ch)) != 1 {
                continue;
            }
            pairs += 1;
            match vanishing_hypothesis_check(g, h, BAR_CAP) {
                Ok(r) if r.passes => {}
                other => failures.push(format!("{cg:?} * {ch:?}: hypotheses {other:?}")),
            }
            for c in 1..=3 {
                let expected = g.multipliers[&c].direct_sum(&h.multipliers[&c]);
                match free_product_multiplier(g, h, c, BAR_CAP) {
                    Ok(m) if m == expected => {}
                    other => failures.push(format!("{cg:?} * {ch:?}, c={c}: {other:?}")),
                }
            }
        }
    }
    let z2 = GroupDatum::cyclic(2);
    let r = vanishing_hypothesis_check(&z2, &z2, BAR_CAP).unwrap();
    if r.passes || !r.witnesses.iter().any(|w| w == "Tor(G^ab, H^ab) = Z_2") {
        failures.push(format!("Z_2 * Z_2 hypotheses: {r:?}"));
    }
    match free_product_multiplier(&z2, &z2, 2, BAR_CAP) {
        Err(Error::HypothesisFailed { witness }) if witness.contains("Tor(G^ab, H^ab) = Z_2") => {}
        other => failures.push(format!("Z_2 * Z_2 at c = 2: {other:?}")),
    }
    let f = formula_i(&z2, &z2, BAR_CAP).unwrap();
    let nonzero: Vec<&str> = f
        .breakdown
        .iter()
        .filter(|s| !s.group.is_trivial())
        .map(|s| s.name.as_str())
        .collect();
    if f.conclusion != Some(FgAbelianGroup::cyclic(2u8)) || nonzero != ["Tor(G^ab, H^ab)"] {
        failures.push(format!(
            "formula for Z_2, Z_2: {:?} with nonzero {nonzero:?}",
            f.conclusion
        ));
    }
    // coprime inputs reduce the formula to the two second multipliers
    for (cg, g) in data.iter().take(20) {
        for (ch, h) in data.iter().take(20) {
            if order(cg).gcd(&order(ch)) == 1 {
                let f = formula_i(g, h, BAR_CAP).unwrap();
                if f.conclusion != Some(g.multipliers[&2].direct_sum(&h.multipliers[&2])) {
                    failures.push(format!("formula for {cg:?}, {ch:?}: {:?}", f.conclusion));
                }
            }
        }
    }
    let what = format!("{pairs} coprime abelian pairs of order <= 30, c <= 3; Z_2 * Z_2 witness; five-summand formula");
    finish(5, &what, &failures, start, Duration::from_secs(120));
}

#[test]
fn criterion_6_corollary_implies_hypotheses() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut data: Vec<GroupDatum> = abelian_groups_up_to(30)
        .iter()
        .map(|ch| abelian_datum(ch, &[1]))
        .collect();
    for name in ["S3", "D4", "Q8", "A5", "Z"] {
        data.push(builtin_datum(name).unwrap());
    }
    let mut checked = 0;
    for g in &data {
        for h in &data {
            let report = corollary_classifier(g, h, BAR_CAP);
            for cond in &report.conditions {
                if cond.status != ConditionStatus::Pass {
                    continue;
                }
                checked += 1;
                match vanishing_hypothesis_check(g, h, BAR_CAP) {
                    Ok(r) if r.passes => {}
                    other => failures.push(format!(
                        "{} with {}: {} holds but {other:?}",
                        g.label, h.label, cond.label
                    )),
                }
            }
        }
    }
    let a5 = builtin_datum("A5").unwrap();
    let GroupSource::Presentation { presentation } = &a5.source else {
        panic!("A5 is given by a presentation")
    };
    let perfect = presentation.is_perfect().unwrap()
        && a5.provenance_of("abelianization") == Some(Provenance::Computed)
        && *presentation == Presentation::parse(&["a", "b"], &["a^2", "b^3", "(ab)^5"]).unwrap();
    let satisfied = corollary_classifier(&a5, &a5, BAR_CAP).satisfied;
    if !perfect || !satisfied.contains(&"(iv)".to_string()) {
        failures.push(format!("A5 pair: perfect {perfect}, satisfied {satisfied:?}"));
    }
    if !vanishing_hypothesis_check(&a5, &a5, BAR_CAP).unwrap().passes {
        failures.push("A5 pair: hypotheses fail".into());
    }
    let what = format!(
        "{} data, {checked} satisfied conditions checked; A5 pair perfect by SNF",
        data.len()
    );
    finish(6, &what, &failures, start, Duration::from_secs(120));
}

fn random_chain_fixture(rng: &mut ChaCha8Rng) -> TruncatedSimplicialAbelianGroup {
    let r0 = rng.gen_range(1..=3);
    let r1 = rng.gen_range(1..=3);
    let rows: Vec<Vec<i64>> = (0..r1)
        .map(|_| (0..r0).map(|_| rng.gen_range(-3i64..=3)).collect())
        .collect();
    let c = ChainComplex::new(vec![r0, r1], vec![IntegerMatrix::from_rows(r0, &rows).unwrap()]).unwrap();
    TruncatedSimplicialAbelianGroup::from_chain_complex(&c, 4)
}

#[test]
fn criterion_7_simplicial_layer() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let names = [
        "circle",
        "point",
        "nerve-Z2",
        "nerve-S3",
        "mult-5",
        "mult-0",
        "stabilizing",
        "doubling",
    ];
    for name in names {
        let f = builtin_fixture(name, 4).unwrap();
        let (report, squares) = match &f {
            SimplicialFixture::Set { object, .. } => {
                let g = kan_loop_group(object);
                let ab = g.as_ref().ok().map(|g| abelianize(g).unwrap());
                let squares = ab.map(|a| a.moore_complex().unwrap().boundary_squares_vanish());
                (object.validate(), squares)
            }
            SimplicialFixture::System { system, .. } => {
                let all = system
                    .objects()
                    .iter()
                    .all(|o| o.moore_complex().unwrap().boundary_squares_vanish());
                (system.validate(), Some(all))
            }
            _ => {
                let a = f.abelian().unwrap();
                (a.validate(), Some(a.moore_complex().unwrap().boundary_squares_vanish()))
            }
        };
        if !report.passes() || squares == Some(false) {
            failures.push(format!("{name}: {:?}, squares vanish {squares:?}", report.violations));
        }
    }
    let pi0 = |k: TruncatedSimplicialSet| abelianize(&kan_loop_group(&k).unwrap()).unwrap().homotopy(0).unwrap();
    let circle = pi0(TruncatedSimplicialSet::circle(4).unwrap());
    if circle != FgAbelianGroup::free(1) {
        failures.push(format!("pi_0 for the circle: {circle}"));
    }
    let z2 = FiniteGroupTable::cyclic(2).unwrap();
    let nerve = pi0(TruncatedSimplicialSet::nerve(z2.table(), z2.identity(), 4).unwrap());
    if nerve != FgAbelianGroup::cyclic(2u8) {
        failures.push(format!("pi_0 for nerve(Z_2): {nerve}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    for t in 0..50 {
        let (a, b) = (random_chain_fixture(&mut rng), random_chain_fixture(&mut rng));
        match kunneth_check(&a, &b) {
            Ok(r) if r.passes => {}
            other => failures.push(format!("Künneth fixture {t}: {other:?}")),
        }
    }
    let systems = [
        stabilizing_system(4),
        chain_system(&[12, 6, 3, 3, 3], 4).unwrap(),
        chain_system(&[8, 8], 4).unwrap(),
    ];
    for (k, s) in systems.iter().enumerate() {
        for n in 0..=2 {
            match limit_commutes(s, n, 8) {
                Ok(r) if r.commutes => {}
                other => failures.push(format!("system {k}, degree {n}: {other:?}")),
            }
        }
    }
    match limit_commutes(&doubling_system(6, 4), 0, 8) {
        Err(Error::Unstabilized { .. }) => {}
        other => failures.push(format!("doubling system: {other:?}")),
    }
    finish(
        7,
        "fixtures validate, squares vanish, loop-group pi_0, 50 Künneth fixtures, direct limits",
        &failures,
        start,
        Duration::from_secs(120),
    );
}

/// Every report the suite produces, serialised in a fixed order.
fn suite_reports() -> String {
    let mut out: BTreeMap<String, serde_json::Value> = BTreeMap::new();
    let data: Vec<GroupDatum> = ["Z2", "Z3", "Z4", "Z9", "Z2xZ2", "Z4xZ2", "S3", "Q8", "A5"]
        .iter()
        .map(|n| builtin_datum(n).unwrap())
        .collect();
    for g in &data {
        for h in &data {
            let key = format!("{}*{}", g.label, h.label);
            out.insert(
                format!("corollary {key}"),
                serde_json::to_value(corollary_classifier(g, h, BAR_CAP)).unwrap(),
            );
            for c in 1..=3 {
                let r = free_product_report(g, h, c, BAR_CAP).map_err(|e| e.to_string());
                out.insert(format!("free product {key} c={c}"), serde_json::to_value(r).unwrap());
            }
            let f = formula_i(g, h, BAR_CAP).map_err(|e| e.to_string());
            out.insert(format!("formula {key}"), serde_json::to_value(f).unwrap());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    for t in 0..10 {
        let r = kunneth_check(&random_chain_fixture(&mut rng), &random_chain_fixture(&mut rng)).unwrap();
        out.insert(format!("kunneth {t}"), serde_json::to_value(r).unwrap());
    }
    out.insert(
        "limit".into(),
        serde_json::to_value(limit_commutes(&stabilizing_system(4), 0, 8).unwrap()).unwrap(),
    );
    serde_json::to_string_pretty(&out).unwrap()
}

fn cli_reports() -> Vec<u8> {
    let runs: [&[&str]; 4] = [
        &["free-product", "--g", "builtin:Z2", "--h", "builtin:Z2", "--class", "2"],
        &["formula-i", "--g", "builtin:Z2xZ2", "--h", "builtin:Z3"],
        &["hall", "3", "4"],
        &[
            "simplicial",
            "kunneth",
            "--fixture",
            "builtin:mult-2",
            "--other",
            "builtin:mult-4",
        ],
    ];
    let mut bytes = Vec::new();
    for args in runs {
        let o = std::process::Command::new(env!("CARGO_BIN_EXE_nilmult"))
            .args(args)
            .args(["--format", "json"])
            .env_remove("NILMULT_CACHE_DIR")
            .output()
            .unwrap();
        bytes.extend(o.stdout);
    }
    bytes
}

#[test]
fn criterion_8_determinism() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let first = suite_reports();
    let second = suite_reports();
    if first != second {
        failures.push("library reports differ between runs".into());
    }
    let threaded = std::thread::scope(|s| {
        let hs: Vec<_> = (0..4).map(|_| s.spawn(suite_reports)).collect();
        hs.into_iter().map(|h| h.join().unwrap()).collect::<Vec<_>>()
    });
    if threaded.iter().any(|r| *r != first) {
        failures.push("reports differ when produced concurrently".into());
    }
    if cli_reports() != cli_reports() {
        failures.push("command-line reports differ between runs".into());
    }
    let what = format!(
        "{} bytes of library reports and four CLI reports byte-identical across runs",
        first.len()
    );
    finish(8, &what, &failures, start, Duration::from_secs(120));
}
