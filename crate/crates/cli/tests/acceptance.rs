//! Acceptance suite: one test per criterion, each printing a PASS
//! line with its measurements (run with `--nocapture` to see them).

mod common;

use std::process::{Command, Output, Stdio};
use std::time::{Duration, Instant};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use pmcover::berge::{self, BergeError};
use pmcover::gen;
use pmcover::graphcore::Multigraph;
use pmcover::matching::{pm_of_circuit_minus_vertex, three_edge_coloring};
use pmcover::oracle::{self, MinCoverOrder};

fn pmcover_stdin(args: &[&str], stdin: &str) -> Output {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_pmcover"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("failed to spawn pmcover");
    child.stdin.as_mut().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// Criterion 1: the Petersen pipeline. `cover --auto` returns a valid
/// cover of order exactly 5, `oracle min-order` returns 5, both within
/// a second; the near-hamiltonian construction succeeds for every
/// choice of the removed vertex.
#[test]
fn criterion_1_petersen_pipeline() {
    let g = gen::petersen();
    let text = g.emit_edgelist();
    let t = Instant::now();
    let o = pmcover_stdin(&["cover", "--auto", "-"], &text);
    assert!(o.status.success());
    let matchings = pmcover_cli::cover_format::parse_cover(&stdout(&o)).unwrap();
    let report = oracle::verify_cover(&g, &matchings);
    assert!(report.is_valid());
    assert_eq!(report.order, 5);
    let mo = pmcover_stdin(&["oracle", "min-order", "-"], &text);
    assert_eq!(stdout(&mo), "5\n");
    let elapsed = t.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");

    for v in 0..10 {
        let c = berge::cover_near_hamiltonian(&g, v).unwrap();
        assert!(oracle::verify_cover(&g, &c.matchings).is_valid(), "v = {v}");
        assert!(c.order() <= 5);
    }
    println!("criterion 1 PASS: order 5, min-order 5, 10/10 vertex choices ({elapsed:?})");
}

/// Criterion 2: the 3-edge-colorable families get order-3 covers, and
/// exhaustive search confirms the colorings.
#[test]
fn criterion_2_shortcut_families() {
    let t = Instant::now();
    let families: Vec<(&str, Multigraph)> = vec![
        ("k4", gen::k4()),
        ("theta", gen::theta()),
        ("prism", gen::prism()),
        ("gp(7,2)", gen::gp(7, 2).unwrap()),
        ("gp(9,2)", gen::gp(9, 2).unwrap()),
        ("gp(11,2)", gen::gp(11, 2).unwrap()),
        ("moebius-kantor", gen::moebius_kantor()),
    ];
    for (name, g) in &families {
        let o = pmcover_stdin(&["cover", "--auto", "-"], &g.emit_edgelist());
        assert!(o.status.success(), "{name}");
        let matchings = pmcover_cli::cover_format::parse_cover(&stdout(&o)).unwrap();
        let report = oracle::verify_cover(g, &matchings);
        assert!(report.is_valid(), "{name}");
        assert_eq!(report.order, 3, "{name}");
        let (a, b, c) = three_edge_coloring(g).unwrap_or_else(|| panic!("{name} not 3ec"));
        assert_eq!(a.union(&b).union(&c), g.edge_set(), "{name}");
    }
    let elapsed = t.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    println!("criterion 2 PASS: 7 families at order 3 ({elapsed:?})");
}

/// Criterion 3: the two-matchings lemma satisfies clauses (1)-(3) on
/// at least 200 generated valid inputs, verified independently, with
/// zero assumption violations.
#[test]
fn criterion_3_two_pm_postconditions() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut count = 0;
    while count < 200 {
        let n = 2 * rng.gen_range(1..=8); // n in {2, ..., 16}
        let Some((g, m1, m2, m3)) = common::two_pm_instance(n, &mut rng) else {
            continue;
        };
        let f = common::random_nonempty_subset(&m2, &mut rng);
        let alphas: Vec<usize> = m3.iter().collect();
        let alpha = alphas[rng.gen_range(0..alphas.len())];
        count += 1;
        match berge::lemma_two_pm(&g, &m1, &m2, &m3, &f, alpha) {
            Ok(r) => {
                common::independent_clause_check(&g, &m1, &m2, &m3, &f, alpha, &r)
                    .unwrap_or_else(|e| panic!("clause check failed: {e}\n{}", g.emit_edgelist()));
            }
            Err(e) => panic!("assumption violated on instance {count}: {e}"),
        }
    }
    let elapsed = t.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    println!("criterion 3 PASS: {count} instances, zero assumption violations ({elapsed:?})");
}

/// Criterion 4: over a generated corpus, every two-odd-circuit
/// instance whose C3 satisfies the three-matchings hypotheses yields
/// three perfect matchings covering `(E(C1) ∪ E(C2)) \ M`.
#[test]
fn criterion_4_three_pm_suite() {
    let t = Instant::now();
    let mut corpus = common::bridgeless_corpus(14, 80, 77);
    // Extra chord-rich two-odd-circuit graphs so the hypotheses hold
    // on a healthy share of the corpus.
    let mut rng = ChaCha8Rng::seed_from_u64(78);
    while corpus.len() < 400 {
        let n1 = 2 * rng.gen_range(1..=3) + 1;
        let n2 = 2 * rng.gen_range(1..=3) + 1;
        if n1 + n2 > 14 {
            continue;
        }
        let g = common::random_two_circuit(n1, n2, &mut rng);
        if g.is_connected() && g.bridges().unwrap().is_empty() {
            corpus.push(g);
        }
    }
    assert!(corpus.len() >= 50);
    let mut ran = 0;
    let mut skipped = 0;
    for g in &corpus {
        if g.vertex_count() > 14 {
            continue;
        }
        let Some((c1, c2)) = oracle::find_two_factor_two_circuits(g) else {
            continue;
        };
        let v1 = c1.vertex_set();
        let v2 = c2.vertex_set();
        let Some(u1u2) = (0..g.edge_count()).find(|&e| {
            let (a, b) = g.ends(e);
            (v1.contains(&a) && v2.contains(&b)) || (v1.contains(&b) && v2.contains(&a))
        }) else {
            continue;
        };
        let (a, b) = g.ends(u1u2);
        let (u1, _) = if v1.contains(&a) { (a, b) } else { (b, a) };
        let (Ok(pm1), Ok(pm2)) = (
            pm_of_circuit_minus_vertex(&c1, if v1.contains(&a) { a } else { b }),
            pm_of_circuit_minus_vertex(&c2, if v1.contains(&a) { b } else { a }),
        ) else {
            skipped += 1;
            continue; // even circuits: hypotheses cannot hold
        };
        let m = pmcover::graphcore::EdgeSet::singleton(u1u2).union(&pm1).union(&pm2);
        let comps = g.circuits_of(&g.edge_set().minus(&m)).unwrap();
        let c3 = comps.iter().find(|z| z.contains_vertex(u1)).unwrap().clone();
        match berge::lemma_three_pm(g, &c1, &c2, u1u2, &m, &c3) {
            Ok(three) => {
                ran += 1;
                let target = c1.edge_set().union(&c2.edge_set()).minus(&m);
                let covered = three[0].union(&three[1]).union(&three[2]);
                assert!(
                    target.is_subset_of(&covered),
                    "coverage gap on\n{}",
                    g.emit_edgelist()
                );
                for pm in &three {
                    assert!(pmcover::matching::is_perfect_matching(g, pm));
                }
            }
            Err(BergeError::PreconditionViolated(_)) => skipped += 1,
            Err(e) => panic!("assumption violated:\n{}\n{e}", g.emit_edgelist()),
        }
    }
    assert!(ran >= 10, "only {ran} instances satisfied the hypotheses");
    let elapsed = t.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!(
        "criterion 4 PASS: corpus {}, {ran} instances ran, {skipped} skipped ({elapsed:?})",
        corpus.len()
    );
}

/// Criterion 5: oracle consistency sweep over bridgeless cubic graphs
/// with at most 12 vertices.
#[test]
fn criterion_5_oracle_consistency() {
    let t = Instant::now();
    let corpus = common::bridgeless_corpus(12, 120, 99);
    let mut covered = 0;
    for g in &corpus {
        let min = match oracle::min_cover_order(g, 6).unwrap() {
            MinCoverOrder::Exact(k) => k,
            MinCoverOrder::MoreThan(cap) => {
                panic!("minimum cover order exceeds {cap} on\n{}", g.emit_edgelist())
            }
        };
        assert!(min <= 5, "minimum order {min} on\n{}", g.emit_edgelist());
        match berge::cover(g) {
            Ok(c) => {
                covered += 1;
                let report = oracle::verify_cover(g, &c.matchings);
                assert!(report.is_valid(), "invalid cover on\n{}", g.emit_edgelist());
                assert!(
                    c.order() >= min,
                    "cover order {} below the oracle minimum {min}",
                    c.order()
                );
            }
            Err(BergeError::Unsupported(_)) => {}
            Err(e) => panic!("cover failed on\n{}\n{e}", g.emit_edgelist()),
        }
    }
    let elapsed = t.elapsed();
    assert!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    println!(
        "criterion 5 PASS: {covered}/{} graphs covered, all oracle-consistent ({elapsed:?})",
        corpus.len()
    );
}

/// Criterion 6: the first two flower snarks are covered by the
/// near-hamiltonian construction and are not 3-edge-colorable.
#[test]
fn criterion_6_flower_snarks() {
    let t = Instant::now();
    for n in [5, 7] {
        let g = gen::flower(n).unwrap();
        assert!(three_edge_coloring(&g).is_none(), "J{n} is 3-edge-colorable?");
        let c = berge::cover_near_hamiltonian(&g, 0).unwrap();
        assert!(oracle::verify_cover(&g, &c.matchings).is_valid(), "J{n}");
        assert!(c.order() <= 5, "J{n}");
    }
    let elapsed = t.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    println!("criterion 6 PASS: J5 and J7 covered, neither 3-edge-colorable ({elapsed:?})");
}

/// Criterion 7: edge-list round trips on every generator, and the
/// cover text format re-verifies end to end with exit code 0.
#[test]
fn criterion_7_round_trips() {
    let all: Vec<(String, Multigraph)> = vec![
        ("theta".into(), gen::theta()),
        ("k4".into(), gen::k4()),
        ("prism".into(), gen::prism()),
        ("petersen".into(), gen::petersen()),
        ("moebius_kantor".into(), gen::moebius_kantor()),
        ("gp(7,2)".into(), gen::gp(7, 2).unwrap()),
        ("gp(9,2)".into(), gen::gp(9, 2).unwrap()),
        ("gp(11,3)".into(), gen::gp(11, 3).unwrap()),
        ("flower(5)".into(), gen::flower(5).unwrap()),
        ("flower(7)".into(), gen::flower(7).unwrap()),
    ];
    for (name, g) in &all {
        let text = g.emit_edgelist();
        let back = Multigraph::parse_edgelist(&text).unwrap();
        assert_eq!(&back, g, "{name}");
        assert_eq!(back.emit_edgelist(), text, "{name}");
    }
    // End-to-end: cover written by the binary re-verifies via files.
    let dir = std::env::temp_dir().join(format!("pmcover-acc-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let gpath = dir.join("g.txt");
    let cpath = dir.join("c.txt");
    for (name, g) in &all {
        std::fs::write(&gpath, g.emit_edgelist()).unwrap();
        let o = Command::new(env!("CARGO_BIN_EXE_pmcover"))
            .args(["cover", "--auto", gpath.to_str().unwrap()])
            .output()
            .unwrap();
        assert!(o.status.success(), "{name}");
        std::fs::write(&cpath, stdout(&o)).unwrap();
        let v = Command::new(env!("CARGO_BIN_EXE_pmcover"))
            .args(["verify", gpath.to_str().unwrap(), cpath.to_str().unwrap()])
            .output()
            .unwrap();
        assert_eq!(v.status.code(), Some(0), "{name}");
    }
    std::fs::remove_dir_all(&dir).ok();
    println!("criterion 7 PASS: {} generators round-trip and re-verify", all.len());
}
