//! Independent brute-force verification.
//!
//! The oracles here are deliberately exponential and small-n only:
//! they exist to certify the constructive procedures, so they must be
//! simple enough to trust. Nothing in this module depends on the
//! construction code.

use std::fmt;

use thiserror::Error;

use crate::graphcore::{Circuit, EdgeId, EdgeSet, Multigraph, Vertex};
use crate::matching::{enumerate_pms, is_perfect_matching};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has no perfect matching")]
    NoPerfectMatching,
}

/// Per-matching verdict inside a [`CoverReport`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingCheck {
    pub index: usize,
    pub is_perfect: bool,
}

/// Diagnostic result of checking a claimed perfect matching cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverReport {
    pub matchings: Vec<MatchingCheck>,
    pub uncovered: EdgeSet,
    /// Number of distinct matchings in the cover.
    pub order: usize,
}

impl CoverReport {
    pub fn is_valid(&self) -> bool {
        self.uncovered.is_empty() && self.matchings.iter().all(|m| m.is_perfect)
    }
}

impl fmt::Display for CoverReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.matchings {
            writeln!(
                f,
                "matching {}: {}",
                m.index,
                if m.is_perfect { "perfect" } else { "not-a-perfect-matching" }
            )?;
        }
        if self.uncovered.is_empty() {
            writeln!(f, "uncovered: none")?;
        } else {
            writeln!(f, "uncovered: {}", self.uncovered)?;
        }
        writeln!(f, "order: {}", self.order)?;
        write!(f, "result: {}", if self.is_valid() { "valid" } else { "invalid" })
    }
}

/// Checks each claimed matching and reports the uncovered edges.
pub fn verify_cover(g: &Multigraph, matchings: &[EdgeSet]) -> CoverReport {
    let checks: Vec<MatchingCheck> = matchings
        .iter()
        .enumerate()
        .map(|(index, s)| MatchingCheck { index, is_perfect: is_perfect_matching(g, s) })
        .collect();
    let mut covered = EdgeSet::new();
    for s in matchings {
        covered = covered.union(s);
    }
    let uncovered = g.edge_set().minus(&covered);
    let mut distinct = matchings.to_vec();
    distinct.sort();
    distinct.dedup();
    CoverReport { matchings: checks, uncovered, order: distinct.len() }
}

/// Result of the exact minimum-order search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinCoverOrder {
    Exact(usize),
    MoreThan(usize),
}

impl fmt::Display for MinCoverOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinCoverOrder::Exact(k) => write!(f, "{k}"),
            MinCoverOrder::MoreThan(cap) => write!(f, ">{cap}"),
        }
    }
}

/// Exact minimum number of perfect matchings needed to cover `E(g)`,
/// by depth-bounded set-cover search over all perfect matchings.
pub fn min_cover_order(g: &Multigraph, cap: usize) -> Result<MinCoverOrder, OracleError> {
    let pms = enumerate_pms(g);
    if pms.is_empty() {
        return Err(OracleError::NoPerfectMatching);
    }
    // Index matchings by the edges they contain.
    let mut by_edge: Vec<Vec<usize>> = vec![Vec::new(); g.edge_count()];
    for (i, pm) in pms.iter().enumerate() {
        for e in pm {
            by_edge[e].push(i);
        }
    }
    if by_edge.iter().any(|v| v.is_empty()) {
        // Some edge lies in no perfect matching: no cover of any order.
        return Ok(MinCoverOrder::MoreThan(cap));
    }
    fn cover_exists(
        pms: &[EdgeSet],
        by_edge: &[Vec<usize>],
        uncovered: &EdgeSet,
        budget: usize,
    ) -> bool {
        let e = match uncovered.min_id() {
            None => return true,
            Some(e) => e,
        };
        if budget == 0 {
            return false;
        }
        for &i in &by_edge[e] {
            if cover_exists(pms, by_edge, &uncovered.minus(&pms[i]), budget - 1) {
                return true;
            }
        }
        false
    }
    let all = g.edge_set();
    for k in 1..=cap {
        if cover_exists(&pms, &by_edge, &all, k) {
            return Ok(MinCoverOrder::Exact(k));
        }
    }
    Ok(MinCoverOrder::MoreThan(cap))
}

/// A hamiltonian circuit of `g` if one exists, by backtracking; the
/// first one in deterministic search order.
pub fn hamiltonian_circuit(g: &Multigraph) -> Option<Circuit> {
    let n = g.vertex_count();
    if n < 2 {
        return None;
    }
    let mut visited = vec![false; n];
    visited[0] = true;
    let mut verts: Vec<Vertex> = vec![0];
    let mut edges: Vec<EdgeId> = Vec::new();
    fn extend(
        g: &Multigraph,
        visited: &mut Vec<bool>,
        verts: &mut Vec<Vertex>,
        edges: &mut Vec<EdgeId>,
    ) -> bool {
        let v = *verts.last().unwrap();
        if verts.len() == g.vertex_count() {
            // Close the circuit with the smallest eligible edge.
            for &e in g.incident(v) {
                if g.other_end(e, v) == 0 && Some(&e) != edges.first() {
                    edges.push(e);
                    return true;
                }
            }
            return false;
        }
        for &e in g.incident(v) {
            let w = g.other_end(e, v);
            if visited[w] {
                continue;
            }
            visited[w] = true;
            verts.push(w);
            edges.push(e);
            if extend(g, visited, verts, edges) {
                return true;
            }
            edges.pop();
            verts.pop();
            visited[w] = false;
        }
        false
    }
    if extend(g, &mut visited, &mut verts, &mut edges) {
        Some(Circuit::from_walk(g, verts, edges))
    } else {
        None
    }
}

/// True iff `g` is not hamiltonian but `g − v` is hamiltonian for
/// every vertex `v`.
pub fn is_hypohamiltonian(g: &Multigraph) -> bool {
    if hamiltonian_circuit(g).is_some() {
        return false;
    }
    (0..g.vertex_count()).all(|v| {
        let (h, _, _) = g.delete_vertex(v);
        hamiltonian_circuit(&h).is_some()
    })
}

/// A spanning 2-regular subgraph with exactly two components, if one
/// exists. In a cubic graph every 2-factor is the complement of a
/// perfect matching, so this scans `enumerate_pms` in order.
pub fn find_two_factor_two_circuits(g: &Multigraph) -> Option<(Circuit, Circuit)> {
    if !g.is_cubic() {
        return None;
    }
    let all = g.edge_set();
    for pm in enumerate_pms(g) {
        let factor = all.minus(&pm);
        let circuits = g.circuits_of(&factor).expect("complement of a PM in a cubic graph");
        if circuits.len() == 2 {
            let mut it = circuits.into_iter();
            return Some((it.next().unwrap(), it.next().unwrap()));
        }
    }
    None
}
