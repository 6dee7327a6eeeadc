//! Multigraph representation with identity-carrying edges.
//!
//! Vertices are dense indices `0..n`. Edges carry dense integer ids
//! `0..m`; parallel edges are allowed and are distinguished solely by
//! their id, loops are rejected. Everything downstream (matchings,
//! circuits, contractions, covers) manipulates sets of edge ids, never
//! endpoint pairs: with parallel edges an endpoint pair is ambiguous.
//!
//! All values are immutable after construction and safe to share
//! across threads.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub type Vertex = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} has degree {degree}, expected 3")]
    Degree { vertex: Vertex, degree: usize },
    #[error("vertex {vertex} does not have exactly 2 incident edges in the given edge set")]
    NotTwoRegular { vertex: Vertex },
    #[error("graph is not connected")]
    Disconnected,
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("edge {edge} is a loop at vertex {vertex}")]
    Loop { edge: EdgeId, vertex: Vertex },
    #[error("vertex {vertex} out of range, graph has {n} vertices")]
    VertexRange { vertex: Vertex, n: usize },
}

fn parse_err(line: usize, reason: impl Into<String>) -> GraphError {
    GraphError::Parse { line, reason: reason.into() }
}

/// A set of edge ids of some host [`Multigraph`].
///
/// Backed by a `BTreeSet`, so iteration order is always ascending and
/// all operations are deterministic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct EdgeSet(BTreeSet<EdgeId>);

impl EdgeSet {
    pub fn new() -> Self {
        EdgeSet(BTreeSet::new())
    }

    pub fn singleton(e: EdgeId) -> Self {
        let mut s = BTreeSet::new();
        s.insert(e);
        EdgeSet(s)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.0.contains(&e)
    }

    pub fn insert(&mut self, e: EdgeId) -> bool {
        self.0.insert(e)
    }

    pub fn remove(&mut self, e: EdgeId) -> bool {
        self.0.remove(&e)
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.0.iter().copied()
    }

    pub fn min_id(&self) -> Option<EdgeId> {
        self.0.first().copied()
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet(self.0.union(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn minus(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet(self.0.difference(&other.0).copied().collect())
    }

    /// Symmetric difference `(self \ other) ∪ (other \ self)`.
    pub fn sym_diff(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet(self.0.symmetric_difference(&other.0).copied().collect())
    }

    pub fn is_subset_of(&self, other: &EdgeSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint_from(&self, other: &EdgeSet) -> bool {
        self.0.is_disjoint(&other.0)
    }
}

/// Exact symmetric difference of two edge sets over the same host graph.
pub fn sym_diff(a: &EdgeSet, b: &EdgeSet) -> EdgeSet {
    a.sym_diff(b)
}

impl FromIterator<EdgeId> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = EdgeId>>(iter: I) -> Self {
        EdgeSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a EdgeSet {
    type Item = EdgeId;
    type IntoIter = std::iter::Copied<std::collections::btree_set::Iter<'a, EdgeId>>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in &self.0 {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

/// A cubic-graph-friendly multigraph: dense vertices, dense edge ids,
/// parallel edges allowed, loops rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    ends: Vec<(Vertex, Vertex)>,
    incident: Vec<Vec<EdgeId>>,
}

impl Multigraph {
    /// Builds a multigraph from an edge list; edge ids are assigned in
    /// iteration order. Endpoints are normalized so `a < b`.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self, GraphError> {
        let mut ends = Vec::new();
        let mut incident = vec![Vec::new(); n];
        for (id, (a, b)) in edges.into_iter().enumerate() {
            if a >= n {
                return Err(GraphError::VertexRange { vertex: a, n });
            }
            if b >= n {
                return Err(GraphError::VertexRange { vertex: b, n });
            }
            if a == b {
                return Err(GraphError::Loop { edge: id, vertex: a });
            }
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            ends.push((a, b));
            incident[a].push(id);
            incident[b].push(id);
        }
        Ok(Multigraph { n, ends, incident })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    /// Endpoints of edge `e`, with the smaller vertex first.
    pub fn ends(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.ends[e]
    }

    /// Edge ids incident to `v`, ascending.
    pub fn incident(&self, v: Vertex) -> &[EdgeId] {
        &self.incident[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.incident[v].len()
    }

    pub fn is_end(&self, e: EdgeId, v: Vertex) -> bool {
        let (a, b) = self.ends[e];
        a == v || b == v
    }

    pub fn other_end(&self, e: EdgeId, v: Vertex) -> Vertex {
        let (a, b) = self.ends[e];
        debug_assert!(a == v || b == v, "vertex {v} is not an end of edge {e}");
        if a == v {
            b
        } else {
            a
        }
    }

    /// The set of all edge ids.
    pub fn edge_set(&self) -> EdgeSet {
        (0..self.edge_count()).collect()
    }

    /// All edges joining `a` and `b`, ascending by id.
    pub fn edges_between(&self, a: Vertex, b: Vertex) -> Vec<EdgeId> {
        self.incident[a]
            .iter()
            .copied()
            .filter(|&e| self.other_end(e, a) == b)
            .collect()
    }

    /// Succeeds iff every vertex has degree exactly 3.
    pub fn assert_cubic(&self) -> Result<(), GraphError> {
        for v in 0..self.n {
            let d = self.degree(v);
            if d != 3 {
                return Err(GraphError::Degree { vertex: v, degree: d });
            }
        }
        Ok(())
    }

    pub fn is_cubic(&self) -> bool {
        self.assert_cubic().is_ok()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &e in &self.incident[v] {
                let w = self.other_end(e, v);
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Cut edges, by depth-first low-link traversal. Parallel edges are
    /// never bridges: the traversal skips only the edge id used to
    /// enter a vertex, not the parent vertex.
    pub fn bridges(&self) -> Result<EdgeSet, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let mut disc = vec![usize::MAX; self.n];
        let mut low = vec![usize::MAX; self.n];
        let mut time = 0usize;
        let mut out = EdgeSet::new();
        if self.n == 0 {
            return Ok(out);
        }
        // Iterative DFS; each frame remembers the edge used to reach it.
        enum Step {
            Enter(Vertex, Option<EdgeId>),
            Exit(Vertex, Option<EdgeId>),
        }
        let mut stack = vec![Step::Enter(0, None)];
        while let Some(step) = stack.pop() {
            match step {
                Step::Enter(v, via) => {
                    if disc[v] != usize::MAX {
                        continue;
                    }
                    disc[v] = time;
                    low[v] = time;
                    time += 1;
                    stack.push(Step::Exit(v, via));
                    for &e in self.incident[v].iter().rev() {
                        if Some(e) == via {
                            continue;
                        }
                        let w = self.other_end(e, v);
                        if disc[w] == usize::MAX {
                            stack.push(Step::Enter(w, Some(e)));
                        } else {
                            low[v] = low[v].min(disc[w]);
                        }
                    }
                }
                Step::Exit(v, via) => {
                    if let Some(e) = via {
                        let parent = self.other_end(e, v);
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > disc[parent] {
                            out.insert(e);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Decomposes a 2-regular edge set into circuits, each in canonical
    /// form, sorted by their minimum vertex. The circuits' edge sets
    /// partition `s`.
    pub fn circuits_of(&self, s: &EdgeSet) -> Result<Vec<Circuit>, GraphError> {
        // Collect the set edges incident to each touched vertex.
        let mut at: Vec<Vec<EdgeId>> = vec![Vec::new(); self.n];
        for e in s {
            let (a, b) = self.ends(e);
            at[a].push(e);
            at[b].push(e);
        }
        for (v, touched) in at.iter().enumerate() {
            if !touched.is_empty() && touched.len() != 2 {
                return Err(GraphError::NotTwoRegular { vertex: v });
            }
        }
        let mut used = BTreeSet::new();
        let mut out = Vec::new();
        for start in 0..self.n {
            if at[start].is_empty() || used.contains(&at[start][0]) {
                continue;
            }
            let mut verts = vec![start];
            let mut edges = Vec::new();
            let mut v = start;
            let mut e = *at[start].iter().min().unwrap();
            loop {
                used.insert(e);
                edges.push(e);
                let w = self.other_end(e, v);
                if w == start {
                    break;
                }
                verts.push(w);
                let next = at[w]
                    .iter()
                    .copied()
                    .find(|&f| f != e)
                    .expect("2-regular vertex must have a second set edge");
                v = w;
                e = next;
            }
            out.push(Circuit::from_walk(self, verts, edges));
        }
        Ok(out)
    }

    /// Parses the edge-list text format: line 1 is `n m`, then `m`
    /// lines `a b` with `a < b`, assigned ids `0..m` in file order.
    /// Lines starting with `#` are comments.
    pub fn parse_edgelist(text: &str) -> Result<Self, GraphError> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            if raw.starts_with('#') {
                continue;
            }
            let line = raw.trim();
            if line.is_empty() {
                return Err(parse_err(line_no, "blank line"));
            }
            let mut parts = line.split_whitespace();
            let a: usize = parts
                .next()
                .ok_or_else(|| parse_err(line_no, "missing field"))?
                .parse()
                .map_err(|_| parse_err(line_no, "not an integer"))?;
            let b: usize = parts
                .next()
                .ok_or_else(|| parse_err(line_no, "missing second field"))?
                .parse()
                .map_err(|_| parse_err(line_no, "not an integer"))?;
            if parts.next().is_some() {
                return Err(parse_err(line_no, "trailing fields"));
            }
            match header {
                None => header = Some((a, b)),
                Some((n, m)) => {
                    if edges.len() == m {
                        return Err(parse_err(line_no, format!("more than {m} edge lines")));
                    }
                    if a >= b {
                        return Err(parse_err(line_no, "edge endpoints must satisfy a < b"));
                    }
                    if b >= n {
                        return Err(parse_err(line_no, format!("vertex {b} out of range 0..{n}")));
                    }
                    edges.push((a, b));
                }
            }
        }
        let (n, m) = header.ok_or_else(|| parse_err(1, "missing `n m` header"))?;
        if edges.len() != m {
            return Err(parse_err(
                0,
                format!("header declares {m} edges, found {}", edges.len()),
            ));
        }
        Multigraph::new(n, edges)
    }

    /// Emits the canonical edge-list text; `emit ∘ parse` is the
    /// identity on canonical text.
    pub fn emit_edgelist(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edge_count());
        for &(a, b) in &self.ends {
            out.push_str(&format!("{a} {b}\n"));
        }
        out
    }

    /// Parses a graph6 string (simple graphs only). Edges are ordered
    /// lexicographically by `(min endpoint, max endpoint)`.
    pub fn parse_graph6(text: &str) -> Result<Self, GraphError> {
        let mut s = text.trim_end_matches(['\n', '\r']);
        if let Some(rest) = s.strip_prefix(">>graph6<<") {
            s = rest;
        }
        let bytes = s.as_bytes();
        if bytes.is_empty() {
            return Err(parse_err(1, "empty graph6 string"));
        }
        for &b in bytes {
            if !(63..=126).contains(&b) {
                return Err(parse_err(1, format!("byte {b} outside graph6 range 63..=126")));
            }
        }
        let vals: Vec<usize> = bytes.iter().map(|&b| (b - 63) as usize).collect();
        let (n, header_len) = if vals[0] < 63 {
            (vals[0], 1)
        } else if vals.len() >= 4 && vals[1] < 63 {
            ((vals[1] << 12) | (vals[2] << 6) | vals[3], 4)
        } else if vals.len() >= 8 {
            let mut v = 0usize;
            for &x in &vals[2..8] {
                v = (v << 6) | x;
            }
            (v, 8)
        } else {
            return Err(parse_err(1, "truncated graph6 size header"));
        };
        let nbits = n.saturating_mul(n.saturating_sub(1)) / 2;
        let nbytes = nbits.div_ceil(6);
        if vals.len() != header_len + nbytes {
            return Err(parse_err(
                1,
                format!("expected {} data bytes, found {}", nbytes, vals.len() - header_len),
            ));
        }
        let mut edges = Vec::new();
        let mut pos = 0usize;
        for j in 1..n {
            for i in 0..j {
                let byte = vals[header_len + pos / 6];
                let bit = (byte >> (5 - pos % 6)) & 1;
                if bit == 1 {
                    edges.push((i, j));
                }
                pos += 1;
            }
        }
        edges.sort();
        Multigraph::new(n, edges)
    }

    /// The subgraph induced by deleting one vertex, with maps from new
    /// vertex/edge indices back to the originals.
    pub fn delete_vertex(&self, v: Vertex) -> (Multigraph, Vec<Vertex>, Vec<EdgeId>) {
        let keep: Vec<Vertex> = (0..self.n).filter(|&u| u != v).collect();
        self.induced_subgraph(&keep)
    }

    /// The subgraph induced by a vertex subset (all edges with both
    /// ends inside), with maps new → old.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> (Multigraph, Vec<Vertex>, Vec<EdgeId>) {
        let mut old_to_new = vec![usize::MAX; self.n];
        for (new, &old) in keep.iter().enumerate() {
            old_to_new[old] = new;
        }
        let mut edge_map = Vec::new();
        let mut edges = Vec::new();
        for (e, &(a, b)) in self.ends.iter().enumerate() {
            if old_to_new[a] != usize::MAX && old_to_new[b] != usize::MAX {
                edge_map.push(e);
                edges.push((old_to_new[a], old_to_new[b]));
            }
        }
        let g = Multigraph::new(keep.len(), edges).expect("induced subgraph of a valid graph");
        (g, keep.to_vec(), edge_map)
    }

    /// The subgraph spanned by an edge subset: its vertices are the
    /// endpoints of `s`, its edges are exactly `s`. Maps are new → old.
    pub fn edge_subgraph(&self, s: &EdgeSet) -> (Multigraph, Vec<Vertex>, Vec<EdgeId>) {
        let mut verts = BTreeSet::new();
        for e in s {
            let (a, b) = self.ends(e);
            verts.insert(a);
            verts.insert(b);
        }
        let verts: Vec<Vertex> = verts.into_iter().collect();
        let mut old_to_new = vec![usize::MAX; self.n];
        for (new, &old) in verts.iter().enumerate() {
            old_to_new[old] = new;
        }
        let mut edge_map = Vec::new();
        let mut edges = Vec::new();
        for e in s {
            let (a, b) = self.ends(e);
            edge_map.push(e);
            edges.push((old_to_new[a], old_to_new[b]));
        }
        let g = Multigraph::new(verts.len(), edges).expect("edge subgraph of a valid graph");
        (g, verts, edge_map)
    }

    /// Vertices touched by an edge set.
    pub fn vertices_of(&self, s: &EdgeSet) -> BTreeSet<Vertex> {
        let mut out = BTreeSet::new();
        for e in s {
            let (a, b) = self.ends(e);
            out.insert(a);
            out.insert(b);
        }
        out
    }
}

/// A circuit: a closed walk with pairwise distinct vertices, stored in
/// canonical form (starts at its minimum vertex, first edge is the
/// smaller-id of the two incident circuit edges).
///
/// A 2-circuit consists of two parallel edges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Circuit {
    verts: Vec<Vertex>,
    edges: Vec<EdgeId>,
}

impl Circuit {
    /// Builds a circuit from a closed walk `v0 e0 v1 e1 ... e_{k-1}`
    /// (with `e_{k-1}` returning to `v0`) and canonicalizes it.
    ///
    /// Panics if the walk is not a valid circuit of `g`; callers
    /// construct walks from 2-regular edge sets, so a violation is a
    /// programming error.
    pub fn from_walk(g: &Multigraph, verts: Vec<Vertex>, edges: Vec<EdgeId>) -> Self {
        let k = verts.len();
        assert!(k >= 2, "circuit must have at least 2 vertices");
        assert_eq!(k, edges.len(), "circuit walk must have as many edges as vertices");
        let distinct: BTreeSet<_> = verts.iter().collect();
        assert_eq!(distinct.len(), k, "circuit vertices must be pairwise distinct");
        for i in 0..k {
            let (a, b) = (verts[i], verts[(i + 1) % k]);
            let e = edges[i];
            assert!(
                g.is_end(e, a) && g.other_end(e, a) == b,
                "edge {e} does not join {a} and {b}"
            );
        }
        if k == 2 {
            assert_ne!(edges[0], edges[1], "2-circuit must use two distinct parallel edges");
        }
        let pos = verts
            .iter()
            .enumerate()
            .min_by_key(|(_, v)| **v)
            .map(|(i, _)| i)
            .unwrap();
        let forward_edge = edges[pos];
        let backward_edge = edges[(pos + k - 1) % k];
        let (vs, es): (Vec<_>, Vec<_>) = if forward_edge <= backward_edge {
            (
                (0..k).map(|i| verts[(pos + i) % k]).collect(),
                (0..k).map(|i| edges[(pos + i) % k]).collect(),
            )
        } else {
            (
                (0..k).map(|i| verts[(pos + k - i) % k]).collect(),
                (0..k).map(|i| edges[(pos + k - 1 - i) % k]).collect(),
            )
        };
        Circuit { verts: vs, edges: es }
    }

    /// Number of edges (equals the number of vertices, at least 2).
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.verts
    }

    pub fn edge_ids(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges.iter().copied().collect()
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.verts.iter().copied().collect()
    }

    pub fn min_vertex(&self) -> Vertex {
        self.verts[0]
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.verts.contains(&v)
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    /// The circuit walk rotated to start at `v`, leaving `v` by its
    /// smaller incident circuit edge. Returns (vertices, edges).
    pub fn walk_from(&self, v: Vertex) -> (Vec<Vertex>, Vec<EdgeId>) {
        let k = self.len();
        let pos = self
            .verts
            .iter()
            .position(|&u| u == v)
            .expect("vertex must lie on the circuit");
        let forward = self.edges[pos];
        let backward = self.edges[(pos + k - 1) % k];
        if forward <= backward {
            (
                (0..k).map(|i| self.verts[(pos + i) % k]).collect(),
                (0..k).map(|i| self.edges[(pos + i) % k]).collect(),
            )
        } else {
            (
                (0..k).map(|i| self.verts[(pos + k - i) % k]).collect(),
                (0..k).map(|i| self.edges[(pos + k - 1 - i) % k]).collect(),
            )
        }
    }

}

/// An open path: `k ≥ 1` edges, `k + 1` pairwise distinct vertices,
/// stored canonically (the smaller endpoint first).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Path {
    verts: Vec<Vertex>,
    edges: Vec<EdgeId>,
}

impl Path {
    /// Builds a path from a walk and canonicalizes it. Panics on a
    /// malformed walk, as for [`Circuit::from_walk`].
    pub fn from_walk(g: &Multigraph, mut verts: Vec<Vertex>, mut edges: Vec<EdgeId>) -> Self {
        assert!(!edges.is_empty(), "path must have length at least 1");
        assert_eq!(verts.len(), edges.len() + 1, "path walk shape mismatch");
        let distinct: BTreeSet<_> = verts.iter().collect();
        assert_eq!(distinct.len(), verts.len(), "path vertices must be pairwise distinct");
        for i in 0..edges.len() {
            let (a, b) = (verts[i], verts[i + 1]);
            let e = edges[i];
            assert!(
                g.is_end(e, a) && g.other_end(e, a) == b,
                "edge {e} does not join {a} and {b}"
            );
        }
        if verts[0] > *verts.last().unwrap() {
            verts.reverse();
            edges.reverse();
        }
        Path { verts, edges }
    }

    /// Number of edges, at least 1.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.verts
    }

    pub fn edge_ids(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges.iter().copied().collect()
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.verts.iter().copied().collect()
    }

    /// Endpoints `(first, last)` in canonical order.
    pub fn ends(&self) -> (Vertex, Vertex) {
        (self.verts[0], *self.verts.last().unwrap())
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.verts.contains(&v)
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    pub fn interior_vertices(&self) -> &[Vertex] {
        &self.verts[1..self.verts.len() - 1]
    }

    /// The walk starting from the given endpoint.
    pub fn walk_from(&self, end: Vertex) -> (Vec<Vertex>, Vec<EdgeId>) {
        let (a, b) = self.ends();
        if end == a {
            (self.verts.clone(), self.edges.clone())
        } else {
            assert_eq!(end, b, "vertex {end} is not an endpoint of the path");
            let mut v = self.verts.clone();
            let mut e = self.edges.clone();
            v.reverse();
            e.reverse();
            (v, e)
        }
    }

    /// Edges at even positions (0, 2, ...) of the canonical walk. For
    /// an odd-length path this is the unique perfect matching of the
    /// path's vertices, independent of orientation.
    pub fn even_position_edges(&self) -> EdgeSet {
        self.edges.iter().copied().step_by(2).collect()
    }

    /// Edges at odd positions (1, 3, ...); for an odd-length path this
    /// covers exactly the interior vertices.
    pub fn odd_position_edges(&self) -> EdgeSet {
        self.edges.iter().copied().skip(1).step_by(2).collect()
    }
}

/// Maximal subpaths of `c` avoiding the edges in `cut`, in traversal
/// order from the circuit's canonical start. Gaps of length 0 (two cut
/// edges meeting at a vertex) contribute no path.
pub fn circuit_gaps(g: &Multigraph, c: &Circuit, cut: &EdgeSet) -> Vec<Path> {
    let k = c.len();
    let verts = c.vertices();
    let edges = c.edge_ids();
    if !edges.iter().any(|e| cut.contains(*e)) {
        panic!("cut must contain at least one circuit edge");
    }
    // Rotate so the walk starts right after some cut edge.
    let start = (0..k)
        .find(|&i| cut.contains(edges[(i + k - 1) % k]))
        .unwrap();
    let mut out = Vec::new();
    let mut run_verts: Vec<Vertex> = Vec::new();
    let mut run_edges: Vec<EdgeId> = Vec::new();
    for i in 0..k {
        let vi = verts[(start + i) % k];
        let ei = edges[(start + i) % k];
        let vnext = verts[(start + i + 1) % k];
        if cut.contains(ei) {
            if !run_edges.is_empty() {
                out.push(Path::from_walk(g, run_verts.clone(), run_edges.clone()));
                run_verts.clear();
                run_edges.clear();
            }
        } else {
            if run_edges.is_empty() {
                run_verts.push(vi);
            }
            run_edges.push(ei);
            run_verts.push(vnext);
        }
    }
    // The walk starts right after a cut edge, so the final run is
    // always closed inside the loop.
    debug_assert!(run_edges.is_empty());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn theta() -> Multigraph {
        Multigraph::new(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap()
    }

    pub fn k4() -> Multigraph {
        Multigraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn petersen() -> Multigraph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
        }
        for i in 0..5 {
            edges.push((i, 5 + i));
        }
        for i in 0..5 {
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Multigraph::new(10, edges).unwrap()
    }

    #[test]
    fn assert_cubic_examples() {
        assert!(k4().assert_cubic().is_ok());
        assert!(theta().assert_cubic().is_ok());
        let path = Multigraph::new(2, vec![(0, 1)]).unwrap();
        assert_eq!(
            path.assert_cubic(),
            Err(GraphError::Degree { vertex: 0, degree: 1 })
        );
    }

    #[test]
    fn loops_rejected() {
        assert_eq!(
            Multigraph::new(2, vec![(1, 1)]),
            Err(GraphError::Loop { edge: 0, vertex: 1 })
        );
    }

    #[test]
    fn circuits_of_theta_pair() {
        let g = theta();
        let s: EdgeSet = [0, 1].into_iter().collect();
        let cs = g.circuits_of(&s).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].len(), 2);
        assert_eq!(cs[0].vertices(), &[0, 1]);
    }

    #[test]
    fn circuits_of_k4_square() {
        let g = k4();
        // 0-1-2-3-0 uses edges (0,1)=0, (1,2)=3, (2,3)=5, (0,3)=2.
        let s: EdgeSet = [0, 3, 5, 2].into_iter().collect();
        let cs = g.circuits_of(&s).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].len(), 4);
        assert_eq!(cs[0].edge_set(), s);
    }

    #[test]
    fn circuits_of_rejects_non_two_regular() {
        let g = k4();
        // Vertex 0 has both set edges, vertices 1 and 2 only one.
        let s: EdgeSet = [0, 1].into_iter().collect();
        assert_eq!(g.circuits_of(&s), Err(GraphError::NotTwoRegular { vertex: 1 }));
    }

    #[test]
    fn circuit_canonical_form_is_rotation_reflection_invariant() {
        let g = k4();
        let verts = vec![0, 1, 2, 3];
        let edges = vec![0, 3, 5, 2];
        let c = Circuit::from_walk(&g, verts.clone(), edges.clone());
        for rot in 0..4 {
            let vs: Vec<_> = (0..4).map(|i| verts[(rot + i) % 4]).collect();
            let es: Vec<_> = (0..4).map(|i| edges[(rot + i) % 4]).collect();
            assert_eq!(Circuit::from_walk(&g, vs.clone(), es.clone()), c);
            // Reflection of the same rotation.
            let mut rvs = vs;
            let mut res = es;
            rvs[1..].reverse();
            res.reverse();
            assert_eq!(Circuit::from_walk(&g, rvs, res), c);
        }
    }

    #[test]
    fn sum_of_circuit_lengths_is_set_size() {
        let g = petersen();
        // Union of outer and inner circuits is 2-regular.
        let s: EdgeSet = (0..5).chain(10..15).collect();
        let cs = g.circuits_of(&s).unwrap();
        let total: usize = cs.iter().map(|c| c.len()).sum();
        assert_eq!(total, s.len());
        assert_eq!(cs.len(), 2);
    }

    #[test]
    fn sym_diff_examples() {
        let x: EdgeSet = [1, 2, 3].into_iter().collect();
        assert_eq!(sym_diff(&EdgeSet::new(), &x), x);
        assert_eq!(sym_diff(&x, &x), EdgeSet::new());
    }

    #[test]
    fn bridges_of_petersen_empty() {
        assert!(petersen().bridges().unwrap().is_empty());
    }

    #[test]
    fn bridges_of_joined_gadgets() {
        // Two K4-minus-an-edge gadgets joined by a single edge.
        let g = Multigraph::new(
            8,
            vec![
                (0, 1),
                (0, 2),
                (1, 3),
                (2, 3),
                (1, 2), // gadget A, degree-2 at 0 and 3
                (4, 5),
                (4, 6),
                (5, 7),
                (6, 7),
                (5, 6), // gadget B
                (0, 4), // the bridge
            ],
        )
        .unwrap();
        let b = g.bridges().unwrap();
        assert_eq!(b, EdgeSet::singleton(10));
    }

    #[test]
    fn bridges_never_include_parallel_edges() {
        let g = theta();
        assert!(g.bridges().unwrap().is_empty());
        let two = Multigraph::new(2, vec![(0, 1), (0, 1)]).unwrap();
        assert!(two.bridges().unwrap().is_empty());
        let one = Multigraph::new(2, vec![(0, 1)]).unwrap();
        assert_eq!(one.bridges().unwrap(), EdgeSet::singleton(0));
    }

    #[test]
    fn bridges_match_deletion_oracle_on_small_graphs() {
        // Deterministic exhaustive oracle: an edge is a bridge iff
        // deleting it disconnects the graph.
        let gs = vec![
            petersen(),
            k4(),
            theta(),
            Multigraph::new(
                6,
                vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
            )
            .unwrap(),
            Multigraph::new(4, vec![(0, 1), (1, 2), (2, 3), (1, 2)]).unwrap(),
        ];
        for g in gs {
            let fast = g.bridges().unwrap();
            for e in 0..g.edge_count() {
                let reduced: Vec<(Vertex, Vertex)> = (0..g.edge_count())
                    .filter(|&f| f != e)
                    .map(|f| g.ends(f))
                    .collect();
                let h = Multigraph::new(g.vertex_count(), reduced).unwrap();
                assert_eq!(fast.contains(e), !h.is_connected(), "edge {e}");
            }
        }
    }

    #[test]
    fn edgelist_round_trip() {
        let text = "2 3\n0 1\n0 1\n0 1\n";
        let g = Multigraph::parse_edgelist(text).unwrap();
        assert_eq!(g, theta());
        assert_eq!(g.emit_edgelist(), text);
        let with_comment = "# theta\n2 3\n0 1\n0 1\n0 1\n";
        assert_eq!(Multigraph::parse_edgelist(with_comment).unwrap(), theta());
    }

    #[test]
    fn edgelist_errors() {
        assert!(matches!(
            Multigraph::parse_edgelist("2 1\n1 0\n"),
            Err(GraphError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            Multigraph::parse_edgelist("2 2\n0 1\n"),
            Err(GraphError::Parse { .. })
        ));
        assert!(matches!(
            Multigraph::parse_edgelist("x y\n"),
            Err(GraphError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn graph6_k4_and_petersen() {
        // K4 in graph6 is "C~": n=4, all six upper-triangle bits set.
        let g = Multigraph::parse_graph6("C~").unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g, k4());
        // Petersen, standard graph6 encoding.
        let p = Multigraph::parse_graph6("IsP@OkWHG").unwrap();
        assert_eq!(p.vertex_count(), 10);
        assert_eq!(p.edge_count(), 15);
        for v in 0..10 {
            assert_eq!(p.degree(v), 3);
        }
    }

    #[test]
    fn graph6_malformed() {
        assert!(Multigraph::parse_graph6("").is_err());
        assert!(Multigraph::parse_graph6("C").is_err());
        assert!(Multigraph::parse_graph6("C~~~").is_err());
        assert!(Multigraph::parse_graph6("C\u{1}").is_err());
    }

    #[test]
    fn circuit_gaps_of_square() {
        let g = k4();
        let c = Circuit::from_walk(&g, vec![0, 1, 2, 3], vec![0, 3, 5, 2]);
        let cut = EdgeSet::singleton(3);
        let gaps = circuit_gaps(&g, &c, &cut);
        assert_eq!(gaps.len(), 1);
        assert_eq!(gaps[0].len(), 3);
        assert_eq!(gaps[0].edge_set(), [0, 5, 2].into_iter().collect());
    }
}
