//! Randomized postcondition suite for the two-matchings lemma, with a
//! clause checker independent of the construction (it uses only
//! circuit decomposition and matching tests).

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use pmcover::berge::{lemma_two_pm, Side, TwoPmResult};
use pmcover::graphcore::{EdgeId, EdgeSet, Multigraph};
use pmcover::matching::{is_perfect_matching, is_perfect_matching_on};

/// Random cubic instance satisfying the lemma's hypotheses: an even
/// circuit 0-1-...-n-1 whose edges alternate M1/M2, plus a random
/// pairing M3 filtered so that M1 ∪ M3 is a single circuit.
pub fn two_pm_instance(
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Option<(Multigraph, EdgeSet, EdgeSet, EdgeSet)> {
    assert!(n.is_multiple_of(2) && n >= 2);
    if n == 2 {
        let g = Multigraph::new(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap();
        return Some((g, EdgeSet::singleton(0), EdgeSet::singleton(1), EdgeSet::singleton(2)));
    }
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let m1: EdgeSet = (0..n).step_by(2).collect();
    let m2: EdgeSet = (1..n).step_by(2).collect();
    let mut verts: Vec<usize> = (0..n).collect();
    verts.shuffle(rng);
    for pair in verts.chunks(2) {
        edges.push((pair[0], pair[1]));
    }
    let m3: EdgeSet = (n..n + n / 2).collect();
    let g = Multigraph::new(n, edges).unwrap();
    let circuits = g.circuits_of(&m1.union(&m3)).ok()?;
    if circuits.len() == 1 && circuits[0].len() == n {
        Some((g, m1, m2, m3))
    } else {
        None
    }
}

pub fn random_nonempty_subset(s: &EdgeSet, rng: &mut ChaCha8Rng) -> EdgeSet {
    loop {
        let out: EdgeSet = s.iter().filter(|_| rng.gen_bool(0.5)).collect();
        if !out.is_empty() {
            return out;
        }
    }
}

/// Clauses (1)-(3), re-derived from the inputs alone.
pub fn independent_clause_check(
    g: &Multigraph,
    m1: &EdgeSet,
    m2: &EdgeSet,
    m3: &EdgeSet,
    f: &EdgeSet,
    alpha: EdgeId,
    r: &TwoPmResult,
) -> Result<(), String> {
    if !is_perfect_matching(g, &r.m4) {
        return Err("M4 is not a perfect matching".into());
    }
    if !is_perfect_matching(g, &r.m5) {
        return Err("M5 is not a perfect matching".into());
    }
    let inter = r.m4.intersection(&r.m5);
    let union = r.m4.union(&r.m5);
    let ok1 = match r.side {
        Side::ContainsM3 => inter.is_subset_of(m3) && m3.is_subset_of(&union),
        Side::ContainsM1 => inter.is_subset_of(m1) && m1.is_subset_of(&union),
    };
    if !ok1 {
        return Err("clause 1 containment fails".into());
    }
    let circuits = g.circuits_of(&r.m4.sym_diff(&r.m5)).map_err(|e| e.to_string())?;
    let hits: Vec<_> = circuits
        .iter()
        .filter(|c| !f.intersection(&c.edge_set()).is_empty())
        .collect();
    if hits.len() != 1 {
        return Err(format!("{} circuits of G[M4 ∪ M5] meet F, expected 1", hits.len()));
    }
    if *hits[0] != r.c {
        return Err("the F-meeting circuit is not the returned one".into());
    }
    if !r.c.contains_edge(alpha) {
        return Err("returned circuit misses alpha".into());
    }
    match (r.side, &r.c_prime) {
        (Side::ContainsM3, None) => Ok(()),
        (Side::ContainsM3, Some(_)) => Err("unexpected C' on the M3 side".into()),
        (Side::ContainsM1, None) => Err("missing C' on the M1 side".into()),
        (Side::ContainsM1, Some(cp)) => {
            if !cp.contains_edge(alpha) {
                return Err("C' misses alpha".into());
            }
            if !m2.intersection(&r.c.edge_set()).intersection(&cp.edge_set()).is_empty() {
                return Err("M2 ∩ E(C) ∩ E(C') is nonempty".into());
            }
            if !m3.minus(&union).is_subset_of(&m3.minus(&cp.edge_set())) {
                return Err("M3 \\ (M4 ∪ M5) escapes M3 \\ E(C')".into());
            }
            let off: std::collections::BTreeSet<usize> =
                (0..g.vertex_count()).filter(|v| !cp.contains_vertex(*v)).collect();
            if !is_perfect_matching_on(g, &m3.minus(&cp.edge_set()), &off) {
                return Err("M3 \\ E(C') is not a perfect matching of G − V(C')".into());
            }
            Ok(())
        }
    }
}

#[test]
fn randomized_instances_satisfy_all_clauses() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut count = 0;
    let mut deep = 0;
    let mut m1_side = 0;
    while count < 150 {
        let n = 2 * rng.gen_range(1..=8);
        let Some((g, m1, m2, m3)) = two_pm_instance(n, &mut rng) else {
            continue;
        };
        let f = random_nonempty_subset(&m2, &mut rng);
        let alphas: Vec<EdgeId> = m3.iter().collect();
        let alpha = alphas[rng.gen_range(0..alphas.len())];
        count += 1;
        let r = lemma_two_pm(&g, &m1, &m2, &m3, &f, alpha)
            .unwrap_or_else(|e| panic!("lemma failed on\n{}{e}", g.emit_edgelist()));
        if let Err(e) = independent_clause_check(&g, &m1, &m2, &m3, &f, alpha, &r) {
            panic!("clause check failed: {e}\n{}", g.emit_edgelist());
        }
        if r.m4 != m2 {
            deep += 1;
        }
        if r.side == Side::ContainsM1 {
            m1_side += 1;
        }
    }
    // The suite must exercise both sides and the non-trivial branch.
    assert!(deep > 10, "only {deep} instances left the early exit");
    assert!(m1_side > 10, "only {m1_side} instances returned the M1 side");
    assert!(m1_side < count, "no instance returned the M3 side");
}

#[test]
fn deterministic_twelve_vertex_instance() {
    // An even 12-circuit alternating M1/M2 plus the chord matching
    // M3 = {(0,3), (1,10), (2,5), (4,7), (6,9), (8,11)}; M1 ∪ M3 is
    // the single circuit 0-1-10-11-8-9-6-7-4-5-2-3.
    let mut edges: Vec<(usize, usize)> = (0..12).map(|i| (i, (i + 1) % 12)).collect();
    edges.extend([(0, 3), (1, 10), (2, 5), (4, 7), (6, 9), (8, 11)]);
    let g = Multigraph::new(12, edges).unwrap();
    let m1: EdgeSet = (0..12).step_by(2).collect();
    let m2: EdgeSet = (1..12).step_by(2).collect();
    let m3: EdgeSet = (12..18).collect();
    let circuits = g.circuits_of(&m1.union(&m3)).unwrap();
    assert_eq!(circuits.len(), 1);
    assert_eq!(circuits[0].len(), 12);
    // Exhaust every (F, alpha) with |F| <= 2.
    let m2v: Vec<EdgeId> = m2.iter().collect();
    let mut fs: Vec<EdgeSet> = m2v.iter().map(|&e| EdgeSet::singleton(e)).collect();
    for (i, &a) in m2v.iter().enumerate() {
        for &b in &m2v[i + 1..] {
            fs.push([a, b].into_iter().collect());
        }
    }
    for f in &fs {
        for alpha in &m3 {
            let r = lemma_two_pm(&g, &m1, &m2, &m3, f, alpha).unwrap();
            independent_clause_check(&g, &m1, &m2, &m3, f, alpha, &r).unwrap();
        }
    }
}
