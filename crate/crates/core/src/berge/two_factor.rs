//! Cover construction for a bridgeless cubic graph with a 2-factor of
//! two circuits.
//!
//! The route mirrors the underlying case analysis: even circuits give
//! a coloring outright; otherwise a cross edge u1u2 fixes a perfect
//! matching M2 inside the 2-factor, and the circuits C3 (through u1)
//! and C4 (through u2) of `G − M2` steer between a second coloring
//! shortcut, two direct applications of the three-matchings lemma, and
//! the deep branch through the circuit C5, the symmetric difference
//! `E(C1) △ E(C5)`, a contraction, and the two claims below.

use std::collections::BTreeSet;

use crate::contraction::contract;
use crate::graphcore::{circuit_gaps, Circuit, EdgeId, EdgeSet, Multigraph, Path, Vertex};
use crate::matching::{
    first_pm, is_perfect_matching_on, maximal_alternating_paths, pm_of_circuit_minus_vertex,
    split_even_circuits,
};

use super::{
    av, check, circuit_in_graph, ensure_pm, ensure_pm_on, finalize_cover, internal,
    lemma_three_pm, lemma_two_pm, BergeError, Cover, Side,
};

fn pv(msg: impl Into<String>) -> BergeError {
    BergeError::PreconditionViolated(msg.into())
}

/// Shared objects of the deep branch, consumed by the claims.
#[derive(Debug, Clone)]
pub struct TwoFactorContext {
    pub c1: Circuit,
    pub c2: Circuit,
    pub u1: Vertex,
    pub u2: Vertex,
    pub u1u2: EdgeId,
    /// `(E(C1) ∪ E(C2)) \ M2`; not a matching (both circuit edges at
    /// u1 and u2 belong to it).
    pub m1: EdgeSet,
    pub m2: EdgeSet,
    pub m3: EdgeSet,
    pub c3: Circuit,
    pub c4: Circuit,
    pub c5: Circuit,
    /// Maximal path of C1 through u1 avoiding `E(C5)`.
    pub q: Path,
}

pub fn cover_two_factor(
    g: &Multigraph,
    c1: &Circuit,
    c2: &Circuit,
) -> Result<Cover, BergeError> {
    g.assert_cubic().map_err(|e| pv(format!("cubic input required: {e}")))?;
    match g.bridges() {
        Err(_) => return Err(pv("graph is not connected")),
        Ok(b) if !b.is_empty() => return Err(pv(format!("graph must be bridgeless, bridges: {b}"))),
        Ok(_) => {}
    }
    if !circuit_in_graph(g, c1) || !circuit_in_graph(g, c2) {
        return Err(pv("C1 and C2 must be circuits of the input graph"));
    }
    let v1 = c1.vertex_set();
    let v2 = c2.vertex_set();
    if !v1.is_disjoint(&v2) || v1.len() + v2.len() != g.vertex_count() {
        return Err(pv("C1 and C2 must form a spanning 2-factor of two circuits"));
    }

    let factor = c1.edge_set().union(&c2.edge_set());
    let m3 = g.edge_set().minus(&factor);
    if c1.len().is_multiple_of(2) {
        // Both circuits are even (n is even), so the 2-factor splits.
        check(c2.len().is_multiple_of(2), || av(g, "circuit parities disagree on an even vertex count"))?;
        let (na, nb) = split_even_circuits(g, &factor)
            .map_err(|e| av(g, format!("even 2-factor does not split: {e}")))?;
        return finalize_cover(g, vec![na, nb, m3], "two-factor/3ec-even");
    }
    check(c2.len() % 2 == 1, || av(g, "circuit parities disagree on an even vertex count"))?;

    // Smallest edge joining the two circuits.
    let u1u2 = (0..g.edge_count())
        .find(|&e| {
            let (a, b) = g.ends(e);
            (v1.contains(&a) && v2.contains(&b)) || (v1.contains(&b) && v2.contains(&a))
        })
        .ok_or_else(|| pv("no edge joins the two circuits"))?;
    let (a, b) = g.ends(u1u2);
    let (u1, u2) = if v1.contains(&a) { (a, b) } else { (b, a) };

    let m2 = EdgeSet::singleton(u1u2)
        .union(
            &pm_of_circuit_minus_vertex(c1, u1)
                .map_err(|e| av(g, format!("C1 − u1 has no matching: {e}")))?,
        )
        .union(
            &pm_of_circuit_minus_vertex(c2, u2)
                .map_err(|e| av(g, format!("C2 − u2 has no matching: {e}")))?,
        );
    ensure_pm(g, &m2, "M2")?;
    let m1 = factor.minus(&m2);

    let rest = g.edge_set().minus(&m2);
    let comps = g
        .circuits_of(&rest)
        .map_err(|e| av(g, format!("G − M2 is not a 2-factor: {e}")))?;
    let c3 = comps.iter().find(|z| z.contains_vertex(u1)).cloned().unwrap();
    let c4 = comps.iter().find(|z| z.contains_vertex(u2)).cloned().unwrap();
    if c3 == c4 {
        let (k2, k3) = split_even_circuits(g, &rest)
            .map_err(|e| av(g, format!("expected even circuits only: {e}")))?;
        return finalize_cover(g, vec![m2, k2, k3], "two-factor/3ec-c3c4");
    }

    if !c3.edge_set().intersection(&c2.edge_set()).is_empty() {
        let three = lemma_three_pm(g, c1, c2, u1u2, &m2, &c3)
            .map_err(|e| internal(e, "three-pm on C3"))?;
        let mut matchings = three.to_vec();
        matchings.push(m2);
        matchings.push(m3);
        return finalize_cover(g, matchings, "two-factor/3pm-c3");
    }
    if !c4.edge_set().intersection(&c1.edge_set()).is_empty() {
        // Symmetric case with the roles of the circuits exchanged.
        let three = lemma_three_pm(g, c2, c1, u1u2, &m2, &c4)
            .map_err(|e| internal(e, "three-pm on C4"))?;
        let mut matchings = three.to_vec();
        matchings.push(m2);
        matchings.push(m3);
        return finalize_cover(g, matchings, "two-factor/3pm-c4");
    }

    // Deep branch. A circuit C5 of G − M2 meeting both C1 and C2
    // exists because M3 has at least 3 edges; scan the non-u1u2
    // M3-edges in id order and take the first whose circuit meets
    // both.
    check(m3.len() >= 3, || av(g, "M3 must have at least 3 edges"))?;
    let mut c5 = None;
    for e in m3.iter().filter(|&e| e != u1u2) {
        let z = comps.iter().find(|z| z.contains_edge(e)).unwrap();
        if !z.edge_set().intersection(&c1.edge_set()).is_empty()
            && !z.edge_set().intersection(&c2.edge_set()).is_empty()
        {
            c5 = Some(z.clone());
            break;
        }
    }
    let c5 = c5.ok_or_else(|| av(g, "no circuit of G − M2 meets both C1 and C2"))?;
    check(
        c5.vertex_set().is_disjoint(&c3.vertex_set())
            && c5.vertex_set().is_disjoint(&c4.vertex_set()),
        || av(g, "C5 must avoid C3 and C4"),
    )?;

    let cut1 = c1.edge_set().intersection(&c5.edge_set());
    check(!cut1.is_empty(), || av(g, "E(C5) ∩ E(C1) is empty"))?;
    let q = circuit_gaps(g, c1, &cut1)
        .into_iter()
        .find(|p| p.contains_vertex(u1))
        .ok_or_else(|| av(g, "u1 lies on no maximal C5-free path of C1"))?;

    let ctx = TwoFactorContext {
        c1: c1.clone(),
        c2: c2.clone(),
        u1,
        u2,
        u1u2,
        m1,
        m2,
        m3,
        c3,
        c4,
        c5,
        q,
    };

    let delta6 = ctx.c1.edge_set().sym_diff(&ctx.c5.edge_set());
    let comps6 = g
        .circuits_of(&delta6)
        .map_err(|e| av(g, format!("E(C1) △ E(C5) is not 2-regular: {e}")))?;
    let c6 = comps6
        .iter()
        .find(|z| z.contains_vertex(u1))
        .cloned()
        .ok_or_else(|| av(g, "u1 lies on no circuit of E(C1) △ E(C5)"))?;
    let others: Vec<&Circuit> = comps6.iter().filter(|z| **z != c6).collect();

    if others.iter().all(|z| z.edge_set().intersection(&ctx.c2.edge_set()).is_empty()) {
        // Every other circuit stays inside G[V(C1)]; splitting them
        // yields the two matchings required by the second claim.
        check(!c6.edge_set().intersection(&ctx.c2.edge_set()).is_empty(), || {
            av(g, "C6 must meet E(C2)")
        })?;
        let mut zs = EdgeSet::new();
        for z in &others {
            zs = zs.union(&z.edge_set());
        }
        let (n2c, n3c) = if zs.is_empty() {
            (EdgeSet::new(), EdgeSet::new())
        } else {
            split_even_circuits(g, &zs)
                .map_err(|e| av(g, format!("leftover circuits are not even: {e}")))?
        };
        let c3 = ctx.c3.clone();
        let cover = claim2_cover(g, &ctx, &n2c, &n3c, &c6, &c3)
            .map_err(|e| internal(e, "claim 2 on (C6, C3)"))?;
        let note = format!("two-factor/claim2-c6[{}]", cover.provenance_note);
        return Ok(Cover { provenance_note: note, ..cover });
    }

    // Some other circuit C7 of the symmetric difference meets C2.
    let c7 = others
        .iter()
        .find(|z| !z.edge_set().intersection(&ctx.c2.edge_set()).is_empty())
        .copied()
        .cloned()
        .unwrap();
    deep_branch(g, &ctx, &c7)
}

/// The contraction branch through C7, producing either a third
/// application of the three-matchings lemma or the (C8, C9) instance
/// of the second claim.
fn deep_branch(
    g: &Multigraph,
    ctx: &TwoFactorContext,
    c7: &Circuit,
) -> Result<Cover, BergeError> {
    let c1_edges = ctx.c1.edge_set();
    let c2_edges = ctx.c2.edge_set();
    let shared = c7.edge_set().intersection(&c1_edges);
    check(!shared.is_empty(), || av(g, "E(C7) ∩ E(C1) is empty"))?;
    // P2: components of E(C7) ∩ E(C1), alternating M2/M1 with M2 ends.
    let p2 = maximal_alternating_paths(
        g,
        &shared.intersection(&ctx.m2),
        &shared.minus(&ctx.m2),
        &EdgeSet::new(),
    );
    for p in &p2 {
        let es = p.edge_set();
        check(es.intersection(&ctx.m2).len() == es.intersection(&ctx.m1).len() + 1, || {
            av(g, format!("component {:?} of E(C7) ∩ E(C1) is not M2-ended", p.ends()))
        })?;
    }
    let t = p2.len();
    let p3 = circuit_gaps(g, c7, &shared);
    let mut p4 = circuit_gaps(g, &ctx.c1, &shared);
    check(p3.len() == t && p4.len() == t, || {
        av(
            g,
            format!("family sizes disagree: {t} shared arcs, {} C7 gaps, {} C1 gaps", p3.len(), p4.len()),
        )
    })?;
    rotate_to_front(&mut p4, |p| p.contains_vertex(ctx.u1))
        .ok_or_else(|| av(g, "u1 lies on no gap of C1"))?;

    let con = contract(g, &[("b1", p2), ("b2", p3.clone()), ("b3", p4)], &EdgeSet::new())
        .map_err(|e| av(g, format!("contraction to G2 failed: {e}")))?;
    let b1: EdgeSet = con.group("b1").iter().copied().collect();
    let b2: EdgeSet = con.group("b2").iter().copied().collect();
    let b3: EdgeSet = con.group("b3").iter().copied().collect();
    // Surrogates of the C7 gaps that meet C2.
    let b2_prime: EdgeSet = con
        .group("b2")
        .iter()
        .enumerate()
        .filter(|(j, _)| !p3[*j].edge_set().intersection(&c2_edges).is_empty())
        .map(|(_, &e)| e)
        .collect();
    check(!b2_prime.is_empty(), || av(g, "no C7 gap meets C2"))?;
    let alpha41 = con.group("b3")[0];
    let rec = lemma_two_pm(con.aux(), &b1, &b2, &b3, &b2_prime, alpha41)
        .map_err(|e| internal(e, "two-pm invocation inside the two-factor cover"))?;

    let c8 = con.lift_circuit(&rec.c);
    check(c8.contains_vertex(ctx.u1), || av(g, "C8 must contain u1"))?;
    let shared8 = c8.edge_set().intersection(&c2_edges);
    let shared5 = ctx.c5.edge_set().intersection(&c2_edges);
    check(!shared8.is_empty(), || av(g, "E(C8) ∩ E(C2) is empty"))?;
    check(shared8.is_subset_of(&shared5), || {
        av(g, "E(C8) ∩ E(C2) must lie inside E(C5) ∩ E(C2)")
    })?;
    check(shared8.is_subset_of(&ctx.m1), || av(g, "E(C8) ∩ E(C2) must lie inside M1"))?;
    check(shared8.intersection(&ctx.c4.edge_set()).is_empty(), || {
        av(g, "E(C8) ∩ E(C2) must avoid E(C4)")
    })?;

    match rec.side {
        Side::ContainsM3 => {
            // B3 side: C8 satisfies the hypotheses of the
            // three-matchings lemma for M2.
            let aux_verts: BTreeSet<Vertex> = rec.c.vertex_set();
            check(
                is_perfect_matching_on(con.aux(), &b3.intersection(&rec.c.edge_set()), &aux_verts),
                || av(g, "B3 ∩ E(C'2) is not a perfect matching of C'2"),
            )?;
            let three = lemma_three_pm(g, &ctx.c1, &ctx.c2, ctx.u1u2, &ctx.m2, &c8)
                .map_err(|e| internal(e, "three-pm on C8"))?;
            let mut matchings = three.to_vec();
            matchings.push(ctx.m2.clone());
            matchings.push(ctx.m3.clone());
            finalize_cover(g, matchings, "two-factor/3pm-c8")
        }
        Side::ContainsM1 => {
            let sym = rec.m4.sym_diff(&rec.m5);
            let e3 = con.lift_by_parity(&sym).expect("all aux edges are surrogates");
            let e3_verts = g.vertices_of(&e3);
            let off3: BTreeSet<Vertex> =
                ctx.c1.vertex_set().iter().copied().filter(|v| !e3_verts.contains(v)).collect();
            ensure_pm_on(g, &c1_edges.minus(&e3).intersection(&ctx.m2), &off3, "(E(C1) \\ E3) ∩ M2")?;
            let evens = e3.minus(&c8.edge_set());
            let (s1, s2) = if evens.is_empty() {
                (EdgeSet::new(), EdgeSet::new())
            } else {
                split_even_circuits(g, &evens)
                    .map_err(|e| av(g, format!("E3 \\ E(C8) is not a union of even circuits: {e}")))?
            };
            let tail = c1_edges.minus(&e3).intersection(&ctx.m2);
            let n8 = s1.union(&tail);
            let n9 = s2.union(&tail);
            let off8: BTreeSet<Vertex> = ctx
                .c1
                .vertex_set()
                .difference(&c8.vertex_set())
                .copied()
                .collect();
            ensure_pm_on(g, &n8, &off8, "N8")?;
            ensure_pm_on(g, &n9, &off8, "N9")?;
            // The terse step: these two matchings leave uncovered in
            // C1 exactly the M1-edges outside E3.
            let leftover = c1_edges.minus(&c8.edge_set().union(&n8).union(&n9));
            let expected = c1_edges.minus(&e3).intersection(&ctx.m1);
            check(leftover == expected, || {
                av(
                    g,
                    format!("E(C1) \\ (E(C8) ∪ N8 ∪ N9) is {leftover}, expected (E(C1) \\ E3) ∩ M1 = {expected}"),
                )
            })?;

            // Path structure of C8 around its C2-edges.
            let mut p5 = circuit_gaps(g, &c8, &shared8);
            rotate_to_front(&mut p5, |p| p.contains_vertex(ctx.u1))
                .ok_or_else(|| av(g, "u1 lies on no gap of C8"))?;
            check(ctx.q.edge_set().is_subset_of(&p5[0].edge_set()), || {
                av(g, "E(Q) must lie inside the u1-gap of C8")
            })?;
            for p in p5.iter().skip(1) {
                let verts: BTreeSet<Vertex> = p
                    .vertex_set()
                    .difference(&ctx.c2.vertex_set())
                    .copied()
                    .collect();
                if !is_perfect_matching_on(g, &p.edge_set().intersection(&ctx.m2), &verts) {
                    return Err(av(
                        g,
                        format!("gap {:?} of C8 fails the matching condition", p.ends()),
                    ));
                }
            }

            let cp = rec.c_prime.as_ref().expect("ContainsM1 carries C'");
            let c9 = con.lift_circuit(cp);
            check(c9.contains_vertex(ctx.u1), || av(g, "C9 must contain u1"))?;
            check(c9.edge_set().intersection(&c2_edges).is_subset_of(&shared5), || {
                av(g, "E(C9) ∩ E(C2) must lie inside E(C5) ∩ E(C2)")
            })?;
            check(
                c8.edge_set().intersection(&c9.edge_set()).intersection(&c2_edges).is_empty(),
                || av(g, "E(C8) ∩ E(C9) ∩ E(C2) must be empty"),
            )?;
            let m1c1_off9 = ctx.m1.intersection(&c1_edges).minus(&c9.edge_set());
            check(expected.is_subset_of(&m1c1_off9), || {
                av(g, "(E(C1) \\ E3) ∩ M1 must avoid E(C9)")
            })?;
            let off9: BTreeSet<Vertex> =
                ctx.c1.vertex_set().difference(&c9.vertex_set()).copied().collect();
            ensure_pm_on(g, &m1c1_off9, &off9, "(M1 ∩ E(C1)) \\ E(C9)")?;
            let c9_minus_u1: BTreeSet<Vertex> =
                c9.vertex_set().iter().copied().filter(|&v| v != ctx.u1).collect();
            ensure_pm_on(g, &c9.edge_set().minus(&ctx.m1), &c9_minus_u1, "E(C9) \\ M1")?;

            let cover = claim2_cover(g, ctx, &n8, &n9, &c8, &c9)
                .map_err(|e| internal(e, "claim 2 on (C8, C9)"))?;
            let note = format!("two-factor/claim2-c8c9[{}]", cover.provenance_note);
            Ok(Cover { provenance_note: note, ..cover })
        }
    }
}

/// A perfect matching containing `(M1 ∩ E(C1)) \ (E(Q) ∪ E(C5))`,
/// following the first claim's case analysis. With nothing to contain,
/// returns the first perfect matching in enumeration order.
pub fn claim1_matching(g: &Multigraph, ctx: &TwoFactorContext) -> Result<EdgeSet, BergeError> {
    let c1_edges = ctx.c1.edge_set();
    let m1c1 = ctx.m1.intersection(&c1_edges);
    let e1 = m1c1.minus(&ctx.q.edge_set().union(&ctx.c5.edge_set()));
    if e1.is_empty() {
        return first_pm(g).ok_or_else(|| av(g, "graph has no perfect matching"));
    }
    let (u3, u4) = ctx.q.ends();
    // The edge of E(C5) ∩ E(C1) at each end of Q: the circuit edge of
    // C1 just beyond the maximal C5-free path.
    let beta = |end: Vertex| -> Result<EdgeId, BergeError> {
        ctx.c5
            .edge_set()
            .intersection(&c1_edges)
            .iter()
            .find(|&e| g.is_end(e, end))
            .ok_or_else(|| av(g, format!("no C5 ∩ C1 edge at the Q end {end}")))
    };
    let beta1 = beta(u3)?;
    let beta2 = beta(u4)?;
    let t1 = walk_from_via_until(g, &ctx.c5, u3, beta1, |v| {
        ctx.c2.contains_vertex(v) || v == u4
    })
    .ok_or_else(|| av(g, "C5 walk from u3 reaches neither C2 nor u4"))?;
    let t2 = walk_from_via_until(g, &ctx.c5, u4, beta2, |v| {
        ctx.c2.contains_vertex(v) || v == u3
    })
    .ok_or_else(|| av(g, "C5 walk from u4 reaches neither C2 nor u3"))?;
    let other_end = |p: &Path, from: Vertex| {
        let (a, b) = p.ends();
        if a == from {
            b
        } else {
            a
        }
    };
    let u5 = other_end(&t1, u3);
    let u6 = other_end(&t2, u4);

    let n = if ctx.c2.contains_vertex(u5) {
        let t3 = q_prefix(g, &ctx.q, ctx.u1, u3);
        let n1 = pm_of_circuit_minus_vertex(&ctx.c2, u5)
            .map_err(|e| av(g, format!("C2 − u5 has no matching: {e}")))?;
        m1c1.sym_diff(&t1.edge_set().union(&t3.edge_set())).union(&n1)
    } else if ctx.c2.contains_vertex(u6) {
        let t3 = q_prefix(g, &ctx.q, ctx.u1, u4);
        let n1 = pm_of_circuit_minus_vertex(&ctx.c2, u6)
            .map_err(|e| av(g, format!("C2 − u6 has no matching: {e}")))?;
        m1c1.sym_diff(&t2.edge_set().union(&t3.edge_set())).union(&n1)
    } else {
        // Both walks run end to end; then the walk from u3 must have
        // consumed the far anchor edge, else the rest of C5 would
        // contain a C2-vertex.
        check(u5 == u4 && u6 == u3, || av(g, "claim 1 walks end off C2 but not at Q's ends"))?;
        check(t1.contains_edge(beta2), || {
            av(g, "claim 1: the u3-walk misses beta2 yet no walk reaches C2")
        })?;
        ctx.m2
            .minus(&c1_edges)
            .union(&m1c1.sym_diff(&ctx.q.edge_set().union(&t1.edge_set())))
    };
    ensure_pm(g, &n, "claim 1 matching")?;
    check(e1.is_subset_of(&n), || {
        av(g, "claim 1 matching misses part of (M1 ∩ E(C1)) \\ (E(Q) ∪ E(C5))")
    })?;
    Ok(n)
}

/// The five-matchings cover from two circuits C and C' satisfying the
/// second claim's hypotheses (checked here, numbered in the errors;
/// `n2`/`n3` witness hypothesis (4)).
pub fn claim2_cover(
    g: &Multigraph,
    ctx: &TwoFactorContext,
    n2: &EdgeSet,
    n3: &EdgeSet,
    c: &Circuit,
    c_prime: &Circuit,
) -> Result<Cover, BergeError> {
    let c1_edges = ctx.c1.edge_set();
    let c2_edges = ctx.c2.edge_set();
    let m1c1 = ctx.m1.intersection(&c1_edges);

    // Hypotheses (1)-(5).
    if !(c.contains_vertex(ctx.u1) && c_prime.contains_vertex(ctx.u1)) {
        return Err(pv("claim 2 hypothesis (1): u1 must lie on both C and C'"));
    }
    let d1 = c.edge_set().intersection(&c2_edges);
    let shared5 = ctx.c5.edge_set().intersection(&c2_edges);
    if d1.is_empty() {
        return Err(pv("claim 2 hypothesis (2): E(C) ∩ E(C2) is empty"));
    }
    if !d1.is_subset_of(&shared5) {
        return Err(pv("claim 2 hypothesis (2): E(C) ∩ E(C2) must lie inside E(C5) ∩ E(C2)"));
    }
    if !c_prime.edge_set().intersection(&c2_edges).is_subset_of(&shared5) {
        return Err(pv("claim 2 hypothesis (2): E(C') ∩ E(C2) must lie inside E(C5) ∩ E(C2)"));
    }
    if !c.edge_set().intersection(&c_prime.edge_set()).intersection(&c2_edges).is_empty() {
        return Err(pv("claim 2 hypothesis (2): E(C) ∩ E(C') ∩ E(C2) must be empty"));
    }
    let mut q_paths = circuit_gaps(g, c, &d1);
    let q1_idx = q_paths
        .iter()
        .position(|p| ctx.q.edge_set().is_subset_of(&p.edge_set()))
        .ok_or_else(|| pv("claim 2 hypothesis (3): E(Q) lies in no single gap of C"))?;
    q_paths.rotate_left(q1_idx);
    for p in q_paths.iter().skip(1) {
        let verts: BTreeSet<Vertex> =
            p.vertex_set().difference(&ctx.c2.vertex_set()).copied().collect();
        if !is_perfect_matching_on(g, &p.edge_set().intersection(&ctx.m2), &verts) {
            return Err(pv(format!(
                "claim 2 hypothesis (3): gap {:?} fails the matching condition",
                p.ends()
            )));
        }
    }
    let off_c: BTreeSet<Vertex> =
        ctx.c1.vertex_set().difference(&c.vertex_set()).copied().collect();
    for (name, w) in [("N2", n2), ("N3", n3)] {
        // A perfect matching on V(C1) \ V(C) cannot leave G[V(C1)].
        if !is_perfect_matching_on(g, w, &off_c) {
            return Err(pv(format!(
                "claim 2 hypothesis (4): {name} is not a perfect matching of G[V(C1)] − (V(C) ∩ V(C1))"
            )));
        }
    }
    let c1_leftover = c1_edges.minus(&c.edge_set().union(n2).union(n3));
    if !c1_leftover.is_subset_of(&m1c1.minus(&c_prime.edge_set())) {
        return Err(pv(
            "claim 2 hypothesis (4): E(C1) \\ (E(C) ∪ N2 ∪ N3) must lie in (M1 ∩ E(C1)) \\ E(C')",
        ));
    }
    let off_cp: BTreeSet<Vertex> =
        ctx.c1.vertex_set().difference(&c_prime.vertex_set()).copied().collect();
    if !is_perfect_matching_on(g, &m1c1.minus(&c_prime.edge_set()), &off_cp) {
        return Err(pv(
            "claim 2 hypothesis (5): (M1 ∩ E(C1)) \\ E(C') is not a perfect matching of C1 − (V(C') ∩ V(C1))",
        ));
    }
    let cp_minus_u1: BTreeSet<Vertex> =
        c_prime.vertex_set().iter().copied().filter(|&v| v != ctx.u1).collect();
    if !is_perfect_matching_on(g, &c_prime.edge_set().minus(&ctx.m1), &cp_minus_u1) {
        return Err(pv(
            "claim 2 hypothesis (5): E(C') \\ M1 is not a perfect matching of C' − u1",
        ));
    }

    // Contraction G1 over the C2 pieces and the gaps of C.
    let mut p1 = circuit_gaps(g, &ctx.c2, &d1);
    check(p1.len() == q_paths.len() && p1.len() == d1.len(), || {
        av(
            g,
            format!(
                "family sizes disagree: |D1| = {}, {} C2 pieces, {} C gaps",
                d1.len(),
                p1.len(),
                q_paths.len()
            ),
        )
    })?;
    rotate_to_front(&mut p1, |p| p.contains_vertex(ctx.u2))
        .ok_or_else(|| av(g, "u2 lies strictly inside no C2 piece"))?;
    let con = contract(g, &[("d2", p1.clone()), ("d3", q_paths.clone())], &d1)
        .map_err(|e| av(g, format!("contraction to G1 failed: {e}")))?;
    let d1x = con.kept_aux_ids();
    let d2x: EdgeSet = con.group("d2").iter().copied().collect();
    let d3x: EdgeSet = con.group("d3").iter().copied().collect();
    let alpha11 = con.group("d2")[0];
    let gamma1 = con.group("d3")[0];
    let rec = lemma_two_pm(con.aux(), &d1x, &d2x, &d3x, &EdgeSet::singleton(alpha11), gamma1)
        .map_err(|e| internal(e, "two-pm invocation inside claim 2"))?;
    check(rec.c.contains_edge(alpha11) && rec.c.contains_edge(gamma1), || {
        av(g, "two-pm circuit misses alpha_{1,1} or gamma_1")
    })?;

    check(q_paths[0].len().is_multiple_of(2), || av(g, "Q1 must have even length"))?;
    for p in q_paths.iter().skip(1) {
        check(p.len() % 2 == 1, || av(g, "gaps of C other than Q1 must have odd length"))?;
    }
    let sym = rec.m4.sym_diff(&rec.m5);
    let e2 = con
        .to_parent_set(&sym.intersection(&con.kept_aux_ids()))
        .expect("kept subset")
        .union(&con.lift_by_parity(&sym.intersection(&con.surrogate_ids())).expect("surrogates"));
    let (n4, n5) = split_even_circuits(g, &e2)
        .map_err(|e| av(g, format!("lifted E2 is not a union of even circuits: {e}")))?;
    let e2_verts = g.vertices_of(&e2);
    let cov_verts: BTreeSet<Vertex> = c
        .vertex_set()
        .union(&ctx.c2.vertex_set())
        .copied()
        .filter(|v| !e2_verts.contains(v))
        .collect();
    let both = rec.m4.union(&rec.m5);
    let cap = rec.m4.intersection(&rec.m5);

    match rec.side {
        Side::ContainsM3 => {
            // F1 ∩ F2 ⊆ D3: assemble N6 from the untouched C2 pieces
            // and the doubled gaps.
            let mut n6 = EdgeSet::new();
            for (j, &s) in con.group("d2").iter().enumerate() {
                if !both.contains(s) {
                    n6 = n6.union(&p1[j].edge_set().intersection(&ctx.m1));
                }
            }
            for (j, &s) in con.group("d3").iter().enumerate() {
                if cap.contains(s) {
                    n6 = n6.union(&q_paths[j].edge_set().minus(&ctx.m2));
                }
            }
            let m1_cc2 = ctx.m1.intersection(&c.edge_set().union(&c2_edges));
            check(m1_cc2.minus(&e2.union(&n6)).is_subset_of(&d1), || {
                av(g, "(M1 ∩ (E(C) ∪ E(C2))) \\ (E2 ∪ N6) must lie inside D1")
            })?;
            ensure_pm_on(g, &n6, &cov_verts, "N6")?;
            let m4 = n2.union(&n4).union(&n6);
            let m5 = n3.union(&n5).union(&n6);
            ensure_pm(g, &m4, "M4 = N2 ∪ N4 ∪ N6")?;
            ensure_pm(g, &m5, "M5 = N3 ∪ N5 ∪ N6")?;
            check(
                ctx.m1
                    .minus(&m4.union(&m5))
                    .is_subset_of(&c1_leftover.union(&d1)),
                || av(g, "M1 \\ (M4 ∪ M5) exceeds (E(C1) \\ (E(C) ∪ N2 ∪ N3)) ∪ D1"),
            )?;
            let third = ctx
                .m1
                .sym_diff(&c_prime.edge_set().union(&ctx.c4.edge_set()))
                .union(&EdgeSet::singleton(ctx.u1u2));
            ensure_pm(g, &third, "(M1 △ (E(C') ∪ E(C4))) ∪ {u1u2}")?;
            check(c1_leftover.union(&d1).is_subset_of(&third), || {
                av(g, "third matching misses part of its containment obligation")
            })?;
            finalize_cover(
                g,
                vec![ctx.m2.clone(), ctx.m3.clone(), m4, m5, third],
                "claim2/d3-side",
            )
        }
        Side::ContainsM1 => {
            // F1 ∩ F2 ⊆ D1.
            let mut n7 = con.to_parent_set(&cap).map_err(|e| {
                av(g, format!("F1 ∩ F2 is not inside the kept D1 edges: {e}"))
            })?;
            for (j, &s) in con.group("d2").iter().enumerate() {
                if !both.contains(s) {
                    n7 = n7.union(&p1[j].edge_set().intersection(&ctx.m1));
                }
            }
            for (j, &s) in con.group("d3").iter().enumerate() {
                if !both.contains(s) {
                    n7 = n7.union(&q_paths[j].edge_set().intersection(&ctx.m2));
                }
            }
            ensure_pm_on(g, &n7, &cov_verts, "N7")?;
            let m6 = n2.union(&n4).union(&n7);
            let m7 = n3.union(&n5).union(&n7);
            ensure_pm(g, &m6, "M6 = N2 ∪ N4 ∪ N7")?;
            ensure_pm(g, &m7, "M7 = N3 ∪ N5 ∪ N7")?;
            let m67 = m6.union(&m7);
            check(
                ctx.m2.intersection(&c1_edges).union(&ctx.m1.intersection(&c2_edges)).is_subset_of(&m67),
                || av(g, "(M2 ∩ E(C1)) ∪ (M1 ∩ E(C2)) must lie in M6 ∪ M7"),
            )?;
            check(ctx.q.edge_set().is_subset_of(&e2), || av(g, "E(Q) must lie inside E2"))?;
            check(
                g.edge_set()
                    .minus(&ctx.m3.union(&m67))
                    .is_subset_of(&m1c1.minus(&ctx.q.edge_set()).union(&ctx.m2.intersection(&c2_edges))),
                || av(g, "edges outside M3 ∪ M6 ∪ M7 exceed the claimed leftover"),
            )?;
            let m8 = m1c1
                .sym_diff(&ctx.c3.edge_set())
                .union(&ctx.m2.minus(&c1_edges));
            ensure_pm(g, &m8, "M8 = ((M1 ∩ E(C1)) △ E(C3)) ∪ (M2 \\ E(C1))")?;
            check(
                ctx.c5
                    .edge_set()
                    .intersection(&c1_edges)
                    .union(&ctx.m2.intersection(&c2_edges))
                    .is_subset_of(&m8),
                || av(g, "M8 misses (E(C5) ∩ E(C1)) ∪ (M2 ∩ E(C2))"),
            )?;
            let m9 = claim1_matching(g, ctx)?;
            check(m1c1.minus(&ctx.q.edge_set()).is_subset_of(&m8.union(&m9)), || {
                av(g, "(M1 ∩ E(C1)) \\ E(Q) must lie in M8 ∪ M9")
            })?;
            finalize_cover(
                g,
                vec![ctx.m3.clone(), m6, m7, m8, m9],
                "claim2/d1-side",
            )
        }
    }
}

/// The path along circuit `c` from `v`, leaving via the given first
/// edge, up to the first vertex satisfying `stop`.
fn walk_from_via_until(
    g: &Multigraph,
    c: &Circuit,
    v: Vertex,
    first: EdgeId,
    stop: impl Fn(Vertex) -> bool,
) -> Option<Path> {
    let (verts, edges) = c.walk_from(v);
    let (verts, edges) = if edges[0] == first {
        (verts, edges)
    } else {
        // Reverse direction: rotate the canonical walk backwards.
        let k = edges.len();
        let rv: Vec<Vertex> = (0..k).map(|i| verts[(k - i) % k]).collect();
        let re: Vec<EdgeId> = (0..k).map(|i| edges[k - 1 - i]).collect();
        assert_eq!(re[0], first, "first edge must be incident to v on c");
        (rv, re)
    };
    let mut pv = vec![verts[0]];
    let mut pe = Vec::new();
    for i in 0..edges.len() {
        pe.push(edges[i]);
        let w = verts[(i + 1) % verts.len()];
        pv.push(w);
        if stop(w) {
            return Some(Path::from_walk(g, pv, pe));
        }
    }
    None
}

/// The subpath of Q from `u1` to the end `target`.
fn q_prefix(g: &Multigraph, q: &Path, u1: Vertex, target: Vertex) -> Path {
    let (verts, edges) = q.walk_from(target);
    let mut pv = vec![verts[0]];
    let mut pe = Vec::new();
    for i in 0..edges.len() {
        pe.push(edges[i]);
        pv.push(verts[i + 1]);
        if verts[i + 1] == u1 {
            break;
        }
    }
    Path::from_walk(g, pv, pe)
}

fn rotate_to_front<T>(v: &mut [T], pred: impl Fn(&T) -> bool) -> Option<usize> {
    let idx = v.iter().position(pred)?;
    v.rotate_left(idx);
    Some(idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::matching::first_pm;

    #[test]
    fn claim1_with_nothing_to_contain_returns_first_matching() {
        // With (M1 ∩ E(C1)) \ (E(Q) ∪ E(C5)) empty any perfect
        // matching qualifies; the deterministic first one is returned.
        let g = gen::prism();
        let c1 = g.circuits_of(&(0..3).collect()).unwrap().remove(0);
        let c2 = g.circuits_of(&(6..9).collect()).unwrap().remove(0);
        let u1u2 = 3; // spoke (0, 3)
        let m2 = EdgeSet::singleton(u1u2)
            .union(&pm_of_circuit_minus_vertex(&c1, 0).unwrap())
            .union(&pm_of_circuit_minus_vertex(&c2, 3).unwrap());
        let factor = c1.edge_set().union(&c2.edge_set());
        let m1 = factor.minus(&m2);
        let m3 = g.edge_set().minus(&factor);
        let around = g
            .circuits_of(&g.edge_set().minus(&m2))
            .unwrap()
            .remove(0);
        // Q covers both M1-edges of C1, so the containment set is empty.
        let m1c1: Vec<usize> = m1.intersection(&c1.edge_set()).iter().collect();
        let q = crate::graphcore::circuit_gaps(&g, &c1, &c1.edge_set().minus(&m1c1.iter().copied().collect()))
            .into_iter()
            .find(|p| p.contains_vertex(0))
            .unwrap();
        let ctx = TwoFactorContext {
            c1: c1.clone(),
            c2,
            u1: 0,
            u2: 3,
            u1u2,
            m1: m1.clone(),
            m2,
            m3,
            c3: around.clone(),
            c4: around.clone(),
            c5: around,
            q,
        };
        let e1 = ctx
            .m1
            .intersection(&ctx.c1.edge_set())
            .minus(&ctx.q.edge_set().union(&ctx.c5.edge_set()));
        assert!(e1.is_empty());
        assert_eq!(claim1_matching(&g, &ctx).unwrap(), first_pm(&g).unwrap());
    }
}
