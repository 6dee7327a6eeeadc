//! Cover construction for a cubic graph with a circuit through all
//! vertices but one.
//!
//! Given v with `G − v` hamiltonian: pick the smallest neighbor u of v
//! on the circuit C, take the perfect matching N1 of `C − u`, and look
//! at the 2-factor left by removing `N1 ∪ {uv}`. Two degenerate cases
//! certify 3-edge-colorability directly; otherwise the circuit pieces
//! between the two distinguished circuits contract to a smaller cubic
//! graph on which the three-matchings lemma applies, and its output
//! lifts by path parity.

use crate::contraction::contract;
use crate::graphcore::{circuit_gaps, Circuit, EdgeSet, Multigraph, Vertex};
use crate::matching::{pm_of_circuit_minus_vertex, split_even_circuits};
use crate::oracle;

use super::{
    av, check, ensure_pm, finalize_cover, internal, lemma_three_pm, BergeError, Cover,
};

pub fn cover_near_hamiltonian(g: &Multigraph, v: Vertex) -> Result<Cover, BergeError> {
    g.assert_cubic()
        .map_err(|e| BergeError::PreconditionViolated(format!("cubic input required: {e}")))?;
    if v >= g.vertex_count() {
        return Err(BergeError::PreconditionViolated(format!(
            "vertex {v} out of range"
        )));
    }
    let (h, vmap, emap) = g.delete_vertex(v);
    let ch = oracle::hamiltonian_circuit(&h).ok_or(BergeError::NoHamiltonianCircuit(v))?;
    let c = Circuit::from_walk(
        g,
        ch.vertices().iter().map(|&x| vmap[x]).collect(),
        ch.edge_ids().iter().map(|&e| emap[e]).collect(),
    );

    // The smallest neighbor of v; every neighbor lies on C.
    let u = g
        .incident(v)
        .iter()
        .map(|&e| g.other_end(e, v))
        .min()
        .expect("cubic vertex has neighbors");
    let uv = g.edges_between(u, v)[0];
    let n1 = pm_of_circuit_minus_vertex(&c, u)
        .map_err(|e| av(g, format!("C − u has no matching: {e}")))?;
    let m1_pm = n1.union(&EdgeSet::singleton(uv));
    let rest = g.edge_set().minus(&m1_pm);
    let comps = g
        .circuits_of(&rest)
        .map_err(|e| av(g, format!("G − (N1 ∪ {{uv}}) is not a 2-factor: {e}")))?;
    let cc1 = comps
        .iter()
        .find(|z| z.contains_vertex(u))
        .cloned()
        .ok_or_else(|| av(g, "no leftover circuit through u"))?;
    let cc2 = comps
        .iter()
        .find(|z| z.contains_vertex(v))
        .cloned()
        .ok_or_else(|| av(g, "no leftover circuit through v"))?;
    if cc1 == cc2 {
        // All leftover circuits are even: split them for a coloring.
        let (k2, k3) = split_even_circuits(g, &rest)
            .map_err(|e| av(g, format!("expected even circuits only: {e}")))?;
        return finalize_cover(g, vec![m1_pm, k2, k3], "near-hamiltonian/3ec-c1c2");
    }

    let n2 = c.edge_set().minus(&n1);
    let c_edges = c.edge_set();
    let cc1_edges = cc1.edge_set();
    let cc2_edges = cc2.edge_set();
    let m2_pm = cc1_edges
        .minus(&c_edges)
        .union(&cc2_edges.intersection(&c_edges))
        .union(&g.edge_set().minus(&c_edges.union(&cc1_edges).union(&cc2_edges)));
    ensure_pm(g, &m1_pm, "M1 = N1 ∪ {uv}")?;
    ensure_pm(g, &m2_pm, "M2")?;

    // Paths of C separated by (E(C1) ∪ E(C2)) ∩ E(C); the two shared
    // edges at u are adjacent, so that gap is empty and drops out.
    let shared = cc1_edges.union(&cc2_edges).intersection(&c_edges);
    let pieces = circuit_gaps(g, &c, &shared);
    for p in &pieces {
        let es = p.edge_set();
        check(es.intersection(&n1).len() == es.intersection(&n2).len() + 1, || {
            av(g, format!("piece {:?} of C is not N1-ended", p.ends()))
        })?;
    }
    let kept = EdgeSet::singleton(uv).union(&cc1_edges).union(&cc2_edges);
    let con = contract(g, &[("alpha", pieces)], &kept)
        .map_err(|e| av(g, format!("contraction to G' failed: {e}")))?;
    let aux = con.aux();
    check(
        aux.bridges().map(|b| b.is_empty()).unwrap_or(false),
        || av(g, "auxiliary graph must be bridgeless"),
    )?;

    let c1_aux = con
        .circuit_to_aux(&cc1)
        .map_err(|e| av(g, format!("C1 does not translate to G': {e}")))?;
    let c2_aux = con
        .circuit_to_aux(&cc2)
        .map_err(|e| av(g, format!("C2 does not translate to G': {e}")))?;
    let uv_aux = con
        .to_aux_set(&EdgeSet::singleton(uv))
        .expect("uv is kept")
        .min_id()
        .unwrap();
    let u_aux = con.aux_vertex(u).expect("u is an aux vertex");
    let v_aux = con.aux_vertex(v).expect("v is an aux vertex");
    let m_aux = EdgeSet::singleton(uv_aux)
        .union(
            &pm_of_circuit_minus_vertex(&c1_aux, u_aux)
                .map_err(|e| av(g, format!("C1 − u has no matching in G': {e}")))?,
        )
        .union(
            &pm_of_circuit_minus_vertex(&c2_aux, v_aux)
                .map_err(|e| av(g, format!("C2 − v has no matching in G': {e}")))?,
        );
    let rest_aux = aux.edge_set().minus(&m_aux);
    let comps_aux = aux
        .circuits_of(&rest_aux)
        .map_err(|e| av(g, format!("G' − M' is not a 2-factor: {e}")))?;
    let c3_aux = comps_aux
        .iter()
        .find(|z| z.contains_vertex(u_aux))
        .cloned()
        .ok_or_else(|| av(g, "no circuit of G' − M' through u"))?;
    let c4_aux = comps_aux
        .iter()
        .find(|z| z.contains_vertex(v_aux))
        .cloned()
        .ok_or_else(|| av(g, "no circuit of G' − M' through v"))?;
    if c3_aux == c4_aux {
        // G − M2 is a 2-factor with even circuits only.
        let (k2, k3) = split_even_circuits(g, &g.edge_set().minus(&m2_pm))
            .map_err(|e| av(g, format!("expected even circuits only: {e}")))?;
        return finalize_cover(g, vec![m2_pm, k2, k3], "near-hamiltonian/3ec-c3c4");
    }
    check(!c3_aux.edge_set().intersection(&c2_aux.edge_set()).is_empty(), || {
        av(g, "E(C3) ∩ E(C2) must be nonempty in G'")
    })?;

    let three = lemma_three_pm(aux, &c1_aux, &c2_aux, uv_aux, &m_aux, &c3_aux)
        .map_err(|e| internal(e, "three-pm invocation inside the near-hamiltonian cover"))?;
    let surr = con.surrogate_ids();
    check(
        three[0]
            .intersection(&three[1])
            .intersection(&three[2])
            .intersection(&surr)
            .is_empty(),
        || av(g, "some contracted piece lies in all three lifted matchings"),
    )?;
    // Each piece alternates N1/N2 with N1 ends, so the parity lift
    // picks E(P) ∩ N1 for surrogates in the matching and E(P) ∩ N2
    // otherwise.
    let mut matchings = vec![m1_pm, m2_pm];
    for mi in &three {
        let lifted = con.lift_pm(mi);
        ensure_pm(g, &lifted, "lifted matching")?;
        matchings.push(lifted);
    }
    finalize_cover(g, matchings, "near-hamiltonian/5pm")
}
