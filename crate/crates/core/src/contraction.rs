//! Auxiliary graphs built by replacing vertex-disjoint paths with
//! surrogate edges, with full provenance so matchings and circuits
//! lift back to the parent graph.
//!
//! The auxiliary graph has its own dense vertex and edge ids. Kept
//! parent edges come first (in parent-id order) and surrogates are
//! allocated above all kept ids, family by family; the two explicit
//! translation tables make the identification of kept edges across
//! the two graphs unambiguous.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use thiserror::Error;

use crate::graphcore::{Circuit, EdgeId, EdgeSet, Multigraph, Path, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContractError {
    #[error("auxiliary graph is not cubic at aux vertex {aux_vertex} (parent vertex {parent_vertex}, degree {degree})")]
    NotCubicAux { aux_vertex: Vertex, parent_vertex: Vertex, degree: usize },
    #[error("aux edge {edge} is not a surrogate")]
    NotSurrogate { edge: EdgeId },
    #[error("aux edge {edge} is not a kept parent edge")]
    NotKept { edge: EdgeId },
    #[error("parent edge {edge} is not kept in the auxiliary graph")]
    NotKeptParent { edge: EdgeId },
    #[error("paths of family {family:?} are not vertex-disjoint at parent vertex {vertex}")]
    FamilyOverlap { family: String, vertex: Vertex },
    #[error("family {family:?} path runs through auxiliary vertex {vertex} interiorly")]
    InteriorClash { family: String, vertex: Vertex },
    #[error("parent vertex {vertex} does not exist in the auxiliary graph")]
    NotAuxVertex { vertex: Vertex },
}

/// An auxiliary graph plus the provenance needed to lift results back.
#[derive(Debug, Clone)]
pub struct Contraction {
    parent: Multigraph,
    aux: Multigraph,
    aux_to_parent_vertex: Vec<Vertex>,
    parent_to_aux_vertex: BTreeMap<Vertex, Vertex>,
    kept_to_parent: BTreeMap<EdgeId, EdgeId>,
    parent_to_kept: BTreeMap<EdgeId, EdgeId>,
    provenance: BTreeMap<EdgeId, Path>,
    groups: Vec<(String, Vec<EdgeId>)>,
}

/// Builds the auxiliary graph whose vertices are the endpoints of the
/// family paths and of the kept edges, with one fresh surrogate edge
/// per path and all kept edges translated through an id table.
///
/// The construction asserts that the result is cubic; a violation
/// signals a broken proof assumption at the call site and is reported
/// with full context rather than panicking.
pub fn contract(
    parent: &Multigraph,
    families: &[(&str, Vec<Path>)],
    kept: &EdgeSet,
) -> Result<Contraction, ContractError> {
    // Auxiliary vertex set: endpoints of kept edges and of all paths.
    let mut verts = BTreeSet::new();
    for e in kept {
        let (a, b) = parent.ends(e);
        verts.insert(a);
        verts.insert(b);
    }
    for (name, paths) in families {
        let mut touched = BTreeSet::new();
        for p in paths {
            for &v in p.vertices() {
                if !touched.insert(v) {
                    return Err(ContractError::FamilyOverlap {
                        family: (*name).to_string(),
                        vertex: v,
                    });
                }
            }
            let (a, b) = p.ends();
            verts.insert(a);
            verts.insert(b);
        }
    }
    for (name, paths) in families {
        for p in paths {
            for &v in p.interior_vertices() {
                if verts.contains(&v) {
                    return Err(ContractError::InteriorClash {
                        family: (*name).to_string(),
                        vertex: v,
                    });
                }
            }
        }
    }
    let aux_to_parent_vertex: Vec<Vertex> = verts.iter().copied().collect();
    let parent_to_aux_vertex: BTreeMap<Vertex, Vertex> = aux_to_parent_vertex
        .iter()
        .enumerate()
        .map(|(aux, &par)| (par, aux))
        .collect();

    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut kept_to_parent = BTreeMap::new();
    let mut parent_to_kept = BTreeMap::new();
    for e in kept {
        let (a, b) = parent.ends(e);
        let id = edges.len();
        edges.push((parent_to_aux_vertex[&a], parent_to_aux_vertex[&b]));
        kept_to_parent.insert(id, e);
        parent_to_kept.insert(e, id);
    }
    let mut provenance = BTreeMap::new();
    let mut groups = Vec::new();
    for (name, paths) in families {
        let mut ids = Vec::new();
        for p in paths {
            let (a, b) = p.ends();
            let id = edges.len();
            edges.push((parent_to_aux_vertex[&a], parent_to_aux_vertex[&b]));
            provenance.insert(id, p.clone());
            ids.push(id);
        }
        groups.push(((*name).to_string(), ids));
    }
    let aux = Multigraph::new(aux_to_parent_vertex.len(), edges)
        .expect("contracted endpoints are valid vertices and paths have length >= 1");
    for (v, &parent_vertex) in aux_to_parent_vertex.iter().enumerate() {
        let d = aux.degree(v);
        if d != 3 {
            return Err(ContractError::NotCubicAux { aux_vertex: v, parent_vertex, degree: d });
        }
    }
    Ok(Contraction {
        parent: parent.clone(),
        aux,
        aux_to_parent_vertex,
        parent_to_aux_vertex,
        kept_to_parent,
        parent_to_kept,
        provenance,
        groups,
    })
}

impl Contraction {
    pub fn parent(&self) -> &Multigraph {
        &self.parent
    }

    pub fn aux(&self) -> &Multigraph {
        &self.aux
    }

    /// Aux ids of the surrogate edges of the named family, in path order.
    pub fn group(&self, name: &str) -> &[EdgeId] {
        &self
            .groups
            .iter()
            .find(|(n, _)| n == name)
            .unwrap_or_else(|| panic!("no contraction family named {name:?}"))
            .1
    }

    pub fn surrogate_ids(&self) -> EdgeSet {
        self.provenance.keys().copied().collect()
    }

    pub fn kept_aux_ids(&self) -> EdgeSet {
        self.kept_to_parent.keys().copied().collect()
    }

    pub fn provenance_path(&self, aux_edge: EdgeId) -> Option<&Path> {
        self.provenance.get(&aux_edge)
    }

    pub fn aux_vertex(&self, parent_v: Vertex) -> Option<Vertex> {
        self.parent_to_aux_vertex.get(&parent_v).copied()
    }

    pub fn parent_vertex(&self, aux_v: Vertex) -> Vertex {
        self.aux_to_parent_vertex[aux_v]
    }

    /// Translates a set of kept parent edges into aux ids.
    pub fn to_aux_set(&self, parent_set: &EdgeSet) -> Result<EdgeSet, ContractError> {
        parent_set
            .iter()
            .map(|e| {
                self.parent_to_kept
                    .get(&e)
                    .copied()
                    .ok_or(ContractError::NotKeptParent { edge: e })
            })
            .collect()
    }

    /// Translates a set of kept aux edges back to parent ids.
    pub fn to_parent_set(&self, aux_set: &EdgeSet) -> Result<EdgeSet, ContractError> {
        aux_set
            .iter()
            .map(|e| {
                self.kept_to_parent
                    .get(&e)
                    .copied()
                    .ok_or(ContractError::NotKept { edge: e })
            })
            .collect()
    }

    /// Union of the provenance-path edge sets of the chosen surrogates.
    pub fn lift_by_parity(&self, chosen: &EdgeSet) -> Result<EdgeSet, ContractError> {
        let mut out = EdgeSet::new();
        for e in chosen {
            let path = self
                .provenance
                .get(&e)
                .ok_or(ContractError::NotSurrogate { edge: e })?;
            out = out.union(&path.edge_set());
        }
        Ok(out)
    }

    /// Lifts an edge set of the auxiliary graph edge-by-edge: kept
    /// edges map through the id table, surrogates expand to their
    /// whole provenance paths.
    pub fn lift_edge_set(&self, aux_set: &EdgeSet) -> EdgeSet {
        let mut out = EdgeSet::new();
        for e in aux_set {
            if let Some(&p) = self.kept_to_parent.get(&e) {
                out.insert(p);
            } else {
                let path = self
                    .provenance
                    .get(&e)
                    .expect("aux edge is either kept or a surrogate");
                out = out.union(&path.edge_set());
            }
        }
        out
    }

    /// Lifts a circuit of the auxiliary graph: kept edges map through
    /// the id table, surrogates expand to their paths, oriented by the
    /// vertex through which the circuit walk enters them.
    pub fn lift_circuit(&self, aux_circuit: &Circuit) -> Circuit {
        let verts = aux_circuit.vertices();
        let edges = aux_circuit.edge_ids();
        let mut out_verts: Vec<Vertex> = Vec::new();
        let mut out_edges: Vec<EdgeId> = Vec::new();
        for i in 0..aux_circuit.len() {
            let enter = self.parent_vertex(verts[i]);
            out_verts.push(enter);
            let e = edges[i];
            if let Some(&p) = self.kept_to_parent.get(&e) {
                out_edges.push(p);
            } else {
                let path = self
                    .provenance
                    .get(&e)
                    .expect("aux edge is either kept or a surrogate");
                let (pv, pe) = path.walk_from(enter);
                out_verts.extend_from_slice(&pv[1..pv.len() - 1]);
                out_edges.extend_from_slice(&pe);
            }
        }
        Circuit::from_walk(&self.parent, out_verts, out_edges)
    }

    /// Parity lift of a perfect matching of the auxiliary graph: kept
    /// edges translate; a surrogate's path contributes its endpoint
    /// parity class when the surrogate is in the matching (covering
    /// all path vertices) and its interior class otherwise. Requires
    /// all provenance paths to have odd length.
    pub fn lift_pm(&self, aux_pm: &EdgeSet) -> EdgeSet {
        let mut out = EdgeSet::new();
        for (&s, path) in &self.provenance {
            assert!(path.len() % 2 == 1, "parity lift requires odd-length paths");
            if aux_pm.contains(s) {
                out = out.union(&path.even_position_edges());
            } else {
                out = out.union(&path.odd_position_edges());
            }
        }
        for (&k, &p) in &self.kept_to_parent {
            if aux_pm.contains(k) {
                out.insert(p);
            }
        }
        out
    }

    /// Translates a circuit whose edges are all kept into aux form.
    pub fn circuit_to_aux(&self, c: &Circuit) -> Result<Circuit, ContractError> {
        let mut verts = Vec::new();
        let mut edges = Vec::new();
        for &v in c.vertices() {
            verts.push(
                self.aux_vertex(v)
                    .ok_or(ContractError::NotAuxVertex { vertex: v })?,
            );
        }
        for &e in c.edge_ids() {
            edges.push(
                self.parent_to_kept
                    .get(&e)
                    .copied()
                    .ok_or(ContractError::NotKeptParent { edge: e })?,
            );
        }
        Ok(Circuit::from_walk(&self.aux, verts, edges))
    }
}
