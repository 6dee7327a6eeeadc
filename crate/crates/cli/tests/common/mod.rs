//! Shared corpus builders and the independent clause checker used by
//! the acceptance suite.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use pmcover::berge::{Side, TwoPmResult};
use pmcover::graphcore::{EdgeId, EdgeSet, Multigraph};
use pmcover::matching::{is_perfect_matching, is_perfect_matching_on};

/// Random instance satisfying the two-matchings lemma's hypotheses:
/// an even circuit alternating M1/M2 plus a random pairing M3,
/// filtered by the two-hamiltonian-unions precondition.
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

/// Clauses (1)-(3) of the two-matchings lemma, re-derived from the
/// inputs using only circuit decomposition and matching tests.
pub fn independent_clause_check(
    g: &Multigraph,
    m1: &EdgeSet,
    m2: &EdgeSet,
    m3: &EdgeSet,
    f: &EdgeSet,
    alpha: EdgeId,
    r: &TwoPmResult,
) -> Result<(), String> {
    if !is_perfect_matching(g, &r.m4) || !is_perfect_matching(g, &r.m5) {
        return Err("output is not a pair of perfect matchings".into());
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
    if hits.len() != 1 || *hits[0] != r.c || !r.c.contains_edge(alpha) {
        return Err("clause 2 fails".into());
    }
    match (r.side, &r.c_prime) {
        (Side::ContainsM3, None) => Ok(()),
        (Side::ContainsM3, Some(_)) => Err("unexpected C' on the M3 side".into()),
        (Side::ContainsM1, None) => Err("missing C' on the M1 side".into()),
        (Side::ContainsM1, Some(cp)) => {
            if !cp.contains_edge(alpha)
                || !m2.intersection(&r.c.edge_set()).intersection(&cp.edge_set()).is_empty()
                || !m3.minus(&union).is_subset_of(&m3.minus(&cp.edge_set()))
            {
                return Err("clause 3 fails".into());
            }
            let off: std::collections::BTreeSet<usize> =
                (0..g.vertex_count()).filter(|v| !cp.contains_vertex(*v)).collect();
            if !is_perfect_matching_on(g, &m3.minus(&cp.edge_set()), &off) {
                return Err("clause 3: M3 \\ E(C') is not a PM of G − V(C')".into());
            }
            Ok(())
        }
    }
}

/// Random cubic multigraph from the pairing model (no loops).
pub fn random_cubic(n: usize, rng: &mut ChaCha8Rng) -> Option<Multigraph> {
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| [v, v, v]).collect();
    stubs.shuffle(rng);
    let mut edges = Vec::new();
    for pair in stubs.chunks(2) {
        if pair[0] == pair[1] {
            return None;
        }
        edges.push((pair[0], pair[1]));
    }
    Some(Multigraph::new(n, edges).unwrap())
}

/// Two odd circuits plus a random pairing of all vertices; rich in
/// chords, so the deep branches of the two-factor construction are
/// reachable.
pub fn random_two_circuit(n1: usize, n2: usize, rng: &mut ChaCha8Rng) -> Multigraph {
    let n = n1 + n2;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for i in 0..n1 {
        edges.push((i, (i + 1) % n1));
    }
    for i in 0..n2 {
        edges.push((n1 + i, n1 + (i + 1) % n2));
    }
    let mut verts: Vec<usize> = (0..n).collect();
    verts.shuffle(rng);
    for pair in verts.chunks(2) {
        edges.push((pair[0], pair[1]));
    }
    Multigraph::new(n, edges).unwrap()
}

/// A deterministic corpus of connected bridgeless cubic graphs with
/// at most `max_n` vertices, at least `min_count` of them.
pub fn bridgeless_corpus(max_n: usize, min_count: usize, seed: u64) -> Vec<Multigraph> {
    let mut out: Vec<Multigraph> = Vec::new();
    for g in [
        pmcover::gen::theta(),
        pmcover::gen::k4(),
        pmcover::gen::prism(),
        pmcover::gen::petersen(),
    ] {
        if g.vertex_count() <= max_n {
            out.push(g);
        }
    }
    for n in 4..=6 {
        for k in 1..=2 {
            if 2 * k < n {
                let g = pmcover::gen::gp(n, k).unwrap();
                if g.vertex_count() <= max_n {
                    out.push(g);
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < min_count {
        let n = 2 * rng.gen_range(2..=max_n / 2);
        let g = match rng.gen_range(0..2) {
            0 => match random_cubic(n, &mut rng) {
                Some(g) => g,
                None => continue,
            },
            _ => {
                let n1 = 2 * rng.gen_range(1..=(max_n / 2).saturating_sub(1)) + 1;
                let n2 = 2 * rng.gen_range(1..=(max_n / 2).saturating_sub(1)) + 1;
                if n1 + n2 > max_n {
                    continue;
                }
                random_two_circuit(n1, n2, &mut rng)
            }
        };
        if g.is_connected() && g.bridges().unwrap().is_empty() {
            out.push(g);
        }
    }
    out
}
