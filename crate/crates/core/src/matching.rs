//! Perfect-matching primitives and alternating-path machinery.
//!
//! The searches here are plain backtracking, not blossom: instances
//! are desk-scale, and these functions serve as the trusted oracle
//! layer for the cover constructions, so they must be obviously
//! correct. All orderings are deterministic (lowest vertex, lowest
//! edge id) so that downstream covers are reproducible across runs.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graphcore::{Circuit, EdgeId, EdgeSet, Multigraph, Path, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("no perfect matching through edge {edge}")]
    NoMatching { edge: EdgeId },
    #[error("component at vertex {vertex} is not an even circuit")]
    OddComponent { vertex: Vertex },
    #[error("circuit has even length {len}, expected odd")]
    EvenCircuit { len: usize },
    #[error("vertex {vertex} does not lie on the circuit")]
    VertexNotOnCircuit { vertex: Vertex },
}

/// True iff `s` is a matching: no two edges share a vertex.
pub fn is_matching(g: &Multigraph, s: &EdgeSet) -> bool {
    let mut covered = vec![false; g.vertex_count()];
    for e in s {
        let (a, b) = g.ends(e);
        if covered[a] || covered[b] {
            return false;
        }
        covered[a] = true;
        covered[b] = true;
    }
    true
}

/// True iff every vertex of `g` is covered exactly once by `s`.
pub fn is_perfect_matching(g: &Multigraph, s: &EdgeSet) -> bool {
    is_matching(g, s) && s.len() * 2 == g.vertex_count()
}

/// True iff `s` covers exactly the vertices in `verts`, each once, and
/// uses no edge leaving `verts`. This is "`s` is a perfect matching of
/// the subgraph induced by `verts`" without building the subgraph.
pub fn is_perfect_matching_on(g: &Multigraph, s: &EdgeSet, verts: &BTreeSet<Vertex>) -> bool {
    let mut covered = BTreeSet::new();
    for e in s {
        let (a, b) = g.ends(e);
        if !verts.contains(&a) || !verts.contains(&b) {
            return false;
        }
        if !covered.insert(a) || !covered.insert(b) {
            return false;
        }
    }
    covered == *verts
}

/// Core backtracking enumerator: extends a partial matching by pairing
/// the lowest-indexed uncovered vertex, trying its incident edges in
/// id order. With `stop_first` it returns after the first success.
fn search_pms(
    g: &Multigraph,
    covered: &mut Vec<bool>,
    chosen: &mut Vec<EdgeId>,
    out: &mut Vec<EdgeSet>,
    stop_first: bool,
) -> bool {
    let next = (0..g.vertex_count()).find(|&v| !covered[v]);
    let v = match next {
        None => {
            out.push(chosen.iter().copied().collect());
            return true;
        }
        Some(v) => v,
    };
    for &e in g.incident(v) {
        let w = g.other_end(e, v);
        if covered[w] {
            continue;
        }
        covered[v] = true;
        covered[w] = true;
        chosen.push(e);
        let found = search_pms(g, covered, chosen, out, stop_first);
        chosen.pop();
        covered[v] = false;
        covered[w] = false;
        if found && stop_first {
            return true;
        }
    }
    false
}

/// All perfect matchings of `g`, in deterministic backtracking order.
pub fn enumerate_pms(g: &Multigraph) -> Vec<EdgeSet> {
    let mut covered = vec![false; g.vertex_count()];
    let mut out = Vec::new();
    search_pms(g, &mut covered, &mut Vec::new(), &mut out, false);
    out
}

/// The first perfect matching in enumeration order, if any.
pub fn first_pm(g: &Multigraph) -> Option<EdgeSet> {
    let mut covered = vec![false; g.vertex_count()];
    let mut out = Vec::new();
    search_pms(g, &mut covered, &mut Vec::new(), &mut out, true);
    out.into_iter().next()
}

/// A perfect matching containing `e`: the first found in enumeration
/// order with `e` forced.
pub fn pm_through_edge(g: &Multigraph, e: EdgeId) -> Result<EdgeSet, MatchingError> {
    let (a, b) = g.ends(e);
    let mut covered = vec![false; g.vertex_count()];
    covered[a] = true;
    covered[b] = true;
    let mut out = Vec::new();
    search_pms(g, &mut covered, &mut vec![e], &mut out, true);
    out.into_iter().next().ok_or(MatchingError::NoMatching { edge: e })
}

/// Three edge-disjoint perfect matchings partitioning `E(g)`, or
/// `None` if `g` is not 3-edge-colorable. Exact backtracking over a
/// connectivity-friendly edge order, with the colors at the first
/// vertex fixed to break symmetry. The classes are returned ordered by
/// their smallest edge id.
pub fn three_edge_coloring(g: &Multigraph) -> Option<(EdgeSet, EdgeSet, EdgeSet)> {
    let m = g.edge_count();
    if m == 0 {
        return Some((EdgeSet::new(), EdgeSet::new(), EdgeSet::new()));
    }
    if g.assert_cubic().is_err() {
        return None;
    }
    // Edge processing order: breadth-first from edge 0 so each edge
    // after the first touches an already-colored one.
    let mut order = Vec::with_capacity(m);
    let mut queued = vec![false; m];
    let mut seen_vertex = vec![false; g.vertex_count()];
    let mut queue = std::collections::VecDeque::new();
    for start in 0..m {
        if queued[start] {
            continue;
        }
        queued[start] = true;
        queue.push_back(start);
        while let Some(e) = queue.pop_front() {
            order.push(e);
            let (a, b) = g.ends(e);
            for v in [a, b] {
                if seen_vertex[v] {
                    continue;
                }
                seen_vertex[v] = true;
                for &f in g.incident(v) {
                    if !queued[f] {
                        queued[f] = true;
                        queue.push_back(f);
                    }
                }
            }
        }
    }
    let mut color = vec![usize::MAX; m];
    // used[v] is a bitmask of colors already present at v.
    let mut used = vec![0u8; g.vertex_count()];
    fn assign(
        g: &Multigraph,
        order: &[EdgeId],
        pos: usize,
        color: &mut Vec<usize>,
        used: &mut Vec<u8>,
        fixed: usize,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let e = order[pos];
        let (a, b) = g.ends(e);
        let limit = if pos < fixed { pos + 1 } else { 3 };
        for c in 0..limit {
            let bit = 1u8 << c;
            if used[a] & bit != 0 || used[b] & bit != 0 {
                continue;
            }
            color[e] = c;
            used[a] |= bit;
            used[b] |= bit;
            if assign(g, order, pos + 1, color, used, fixed) {
                return true;
            }
            color[e] = usize::MAX;
            used[a] &= !bit;
            used[b] &= !bit;
        }
        false
    }
    // The first three edges in the order pairwise share a vertex only
    // if they are incident to the same vertex; restricting edge k (for
    // k < 3) to colors 0..=k is a safe symmetry break because colors
    // are interchangeable.
    if !assign(g, &order, 0, &mut color, &mut used, 3) {
        return None;
    }
    let mut classes = [EdgeSet::new(), EdgeSet::new(), EdgeSet::new()];
    for e in 0..m {
        classes[color[e]].insert(e);
    }
    classes.sort_by_key(|c| c.min_id());
    let [a, b, c] = classes;
    Some((a, b, c))
}

/// Splits an edge set whose components are all even circuits into two
/// matchings. Per circuit, the class containing the canonical first
/// edge is the first one.
pub fn split_even_circuits(
    g: &Multigraph,
    s: &EdgeSet,
) -> Result<(EdgeSet, EdgeSet), MatchingError> {
    let circuits = g
        .circuits_of(s)
        .map_err(|err| match err {
            crate::graphcore::GraphError::NotTwoRegular { vertex } => {
                MatchingError::OddComponent { vertex }
            }
            other => panic!("unexpected circuit decomposition failure: {other}"),
        })?;
    let mut n1 = EdgeSet::new();
    let mut n2 = EdgeSet::new();
    for c in &circuits {
        if c.len() % 2 != 0 {
            return Err(MatchingError::OddComponent { vertex: c.min_vertex() });
        }
        for (i, &e) in c.edge_ids().iter().enumerate() {
            if i % 2 == 0 {
                n1.insert(e);
            } else {
                n2.insert(e);
            }
        }
    }
    Ok((n1, n2))
}

/// Inclusionwise-maximal `a`-`b` alternating paths avoiding
/// `forbidden`, each edge of `(a ∪ b) \ forbidden` in exactly one
/// path, sorted by canonical start vertex.
///
/// Panics if `a` and `b` are not disjoint matchings, or if some
/// component of the remaining edge set is a circuit (then no maximal
/// path decomposition exists; every caller arranges `forbidden` to
/// break all circuits).
pub fn maximal_alternating_paths(
    g: &Multigraph,
    a: &EdgeSet,
    b: &EdgeSet,
    forbidden: &EdgeSet,
) -> Vec<Path> {
    assert!(a.is_disjoint_from(b), "alternating path classes must be disjoint");
    assert!(is_matching(g, a) && is_matching(g, b), "both classes must be matchings");
    let live = a.union(b).minus(forbidden);
    let mut at: Vec<Vec<EdgeId>> = vec![Vec::new(); g.vertex_count()];
    for e in &live {
        let (x, y) = g.ends(e);
        at[x].push(e);
        at[y].push(e);
    }
    let mut used = BTreeSet::new();
    let mut out = Vec::new();
    for start in 0..g.vertex_count() {
        if at[start].len() != 1 || used.contains(&at[start][0]) {
            continue;
        }
        // Walk from this degree-1 endpoint to the other end.
        let mut verts = vec![start];
        let mut edges = Vec::new();
        let mut v = start;
        let mut e = at[start][0];
        loop {
            used.insert(e);
            edges.push(e);
            let w = g.other_end(e, v);
            verts.push(w);
            match at[w].iter().copied().find(|&f| f != e && !used.contains(&f)) {
                Some(next) => {
                    v = w;
                    e = next;
                }
                None => break,
            }
        }
        out.push(Path::from_walk(g, verts, edges));
    }
    assert_eq!(
        out.iter().map(|p| p.len()).sum::<usize>(),
        live.len(),
        "a live component is a circuit; no maximal alternating path decomposition exists"
    );
    out.sort_by_key(|p| p.ends().0);
    out
}

/// The unique perfect matching of the path `c − u`, for an odd circuit
/// `c` and a vertex `u` on it.
pub fn pm_of_circuit_minus_vertex(c: &Circuit, u: Vertex) -> Result<EdgeSet, MatchingError> {
    if c.len().is_multiple_of(2) {
        return Err(MatchingError::EvenCircuit { len: c.len() });
    }
    if !c.contains_vertex(u) {
        return Err(MatchingError::VertexNotOnCircuit { vertex: u });
    }
    let (_, edges) = c.walk_from(u);
    // Walk edges e0 e1 ... e_{k-1}; skipping u leaves the alternating
    // pairs (e1, e3, ..., e_{k-2}).
    Ok(edges.into_iter().skip(1).step_by(2).collect())
}
