//! The three-matchings lemma: a bridgeless cubic graph with a
//! 2-factor of two odd circuits C1, C2, a cross edge u1u2, the
//! perfect matching M through it inside the 2-factor, and a hypothesis
//! circuit C through u1 yield three perfect matchings covering
//! `(E(C1) ∪ E(C2)) \ M`.
//!
//! Hypotheses on C (checked, with the clause number in the error):
//!
//! 1. `(E(C1) \ M) \ E(C)` is a perfect matching of
//!    `C1 − (V(C) ∩ V(C1))`,
//! 2. `∅ ≠ E(C) ∩ E(C2) ⊆ E(C2) \ M` and
//!    `E(C) ∩ E(C2) ∩ E(C4) = ∅`,
//! 3. every path of C separated by `E(C) ∩ E(C2)` avoiding u1 meets
//!    `E(C1) \ M` in a perfect matching of the path minus its
//!    C2-vertices.

use std::collections::BTreeSet;

use crate::contraction::contract;
use crate::graphcore::{circuit_gaps, Circuit, EdgeId, EdgeSet, Multigraph, Path, Vertex};
use crate::matching::{
    first_pm, is_perfect_matching, is_perfect_matching_on, maximal_alternating_paths,
    pm_of_circuit_minus_vertex, split_even_circuits,
};

use super::{
    av, check, circuit_in_graph, circuit_through, ensure_pm, ensure_pm_on, internal,
    lemma_two_pm, BergeError, Side,
};

fn pv(msg: impl Into<String>) -> BergeError {
    BergeError::PreconditionViolated(msg.into())
}

/// Inputs plus everything derived while checking the hypotheses.
struct Setup<'a> {
    g: &'a Multigraph,
    c1: &'a Circuit,
    c2: &'a Circuit,
    u1u2: EdgeId,
    u1: Vertex,
    u2: Vertex,
    m1: EdgeSet,
    m2: &'a EdgeSet,
    c4: Circuit,
}

fn setup<'a>(
    g: &'a Multigraph,
    c1: &'a Circuit,
    c2: &'a Circuit,
    u1u2: EdgeId,
    m: &'a EdgeSet,
    c: &Circuit,
) -> Result<Setup<'a>, BergeError> {
    g.assert_cubic().map_err(|e| pv(format!("cubic input required: {e}")))?;
    for (name, circ) in [("C1", c1), ("C2", c2), ("C", c)] {
        if !circuit_in_graph(g, circ) {
            return Err(pv(format!("{name} is not a circuit of the input graph")));
        }
    }
    let v1 = c1.vertex_set();
    let v2 = c2.vertex_set();
    if !v1.is_disjoint(&v2) {
        return Err(pv("C1 and C2 must be vertex-disjoint"));
    }
    if v1.len() + v2.len() != g.vertex_count() {
        return Err(pv("C1 and C2 must span all vertices"));
    }
    if c1.len().is_multiple_of(2) || c2.len().is_multiple_of(2) {
        return Err(pv("C1 and C2 must both be odd circuits"));
    }
    if u1u2 >= g.edge_count() {
        return Err(pv(format!("u1u2 = {u1u2} is not an edge")));
    }
    let (a, b) = g.ends(u1u2);
    let (u1, u2) = if v1.contains(&a) && v2.contains(&b) {
        (a, b)
    } else if v1.contains(&b) && v2.contains(&a) {
        (b, a)
    } else {
        return Err(pv("u1u2 must join V(C1) and V(C2)"));
    };
    if !is_perfect_matching(g, m) {
        return Err(pv("M is not a perfect matching"));
    }
    if !m.contains(u1u2) {
        return Err(pv("u1u2 must lie in M"));
    }
    let factor = c1.edge_set().union(&c2.edge_set());
    if !m.minus(&EdgeSet::singleton(u1u2)).is_subset_of(&factor) {
        return Err(pv("M \\ {u1u2} must lie inside E(C1) ∪ E(C2)"));
    }
    let m1 = factor.minus(m);
    let rest = g.edge_set().minus(m);
    let comps = g
        .circuits_of(&rest)
        .map_err(|e| pv(format!("G − M is not a 2-factor: {e}")))?;
    let c3 = comps
        .iter()
        .find(|z| z.contains_vertex(u1))
        .cloned()
        .ok_or_else(|| pv("no circuit of G − M through u1"))?;
    let c4 = comps
        .iter()
        .find(|z| z.contains_vertex(u2))
        .cloned()
        .ok_or_else(|| pv("no circuit of G − M through u2"))?;
    if c3 == c4 {
        return Err(pv("the circuits of G − M through u1 and u2 must differ"));
    }
    // Hypotheses (1)-(3) on C.
    if !c.contains_vertex(u1) {
        return Err(pv("hypothesis circuit C must contain u1"));
    }
    let shared = c.edge_set().intersection(&c2.edge_set());
    let off_c: BTreeSet<Vertex> = v1.difference(&c.vertex_set()).copied().collect();
    if !is_perfect_matching_on(g, &m1.intersection(&c1.edge_set()).minus(&c.edge_set()), &off_c) {
        return Err(pv(
            "hypothesis (1): (E(C1) \\ M) \\ E(C) is not a perfect matching of C1 − (V(C) ∩ V(C1))",
        ));
    }
    if shared.is_empty() {
        return Err(pv("hypothesis (2): E(C) ∩ E(C2) is empty"));
    }
    if !shared.is_subset_of(&c2.edge_set().minus(m)) {
        return Err(pv("hypothesis (2): E(C) ∩ E(C2) must avoid M"));
    }
    if !shared.intersection(&c4.edge_set()).is_empty() {
        return Err(pv("hypothesis (2): E(C) ∩ E(C2) must avoid E(C4)"));
    }
    for q in circuit_gaps(g, c, &shared) {
        if q.contains_vertex(u1) {
            continue;
        }
        let qv: BTreeSet<Vertex> = q.vertex_set().difference(&v2).copied().collect();
        if !is_perfect_matching_on(g, &q.edge_set().intersection(&m1), &qv) {
            return Err(pv(format!(
                "hypothesis (3): path of C between {:?} fails the matching condition",
                q.ends()
            )));
        }
    }
    Ok(Setup { g, c1, c2, u1u2, u1, u2, m1, m2: m, c4 })
}

/// Three perfect matchings whose union covers `(E(C1) ∪ E(C2)) \ M`.
pub fn lemma_three_pm(
    g: &Multigraph,
    c1: &Circuit,
    c2: &Circuit,
    u1u2: EdgeId,
    m: &EdgeSet,
    c: &Circuit,
) -> Result<[EdgeSet; 3], BergeError> {
    let ctx = setup(g, c1, c2, u1u2, m, c)?;

    let delta = c.edge_set().sym_diff(&c2.edge_set());
    let c5 = circuit_through(g, &delta, ctx.u1, "circuit C5 in G[E(C) △ E(C2)]")?;
    let off5: BTreeSet<Vertex> = c1.vertex_set().difference(&c5.vertex_set()).copied().collect();
    ensure_pm_on(
        g,
        &ctx.m1.intersection(&c1.edge_set()).minus(&c5.edge_set()),
        &off5,
        "(E(C1) ∩ M1) \\ E(C5)",
    )?;

    let result = if c5.contains_vertex(ctx.u2) {
        branch_split(&ctx, c, &delta)?
    } else {
        branch_contract(&ctx, &c5)?
    };

    for (i, pm) in result.iter().enumerate() {
        ensure_pm(g, pm, &format!("three-pm output {i}"))?;
    }
    let covered = result[0].union(&result[1]).union(&result[2]);
    check(ctx.m1.is_subset_of(&covered), || {
        av(g, format!("three-pm outputs miss {}", ctx.m1.minus(&covered)))
    })?;
    Ok(result)
}

/// Branch with u2 on C5: split `E(C) △ E(C2)` into two matchings and
/// complete them over C1; the third matching extends a perfect
/// matching of `G[{u1u2} ∪ E(C1) ∪ E(C4)]` (found by exact search;
/// the text leaves its existence as an exercise) across the rest
/// of C2.
fn branch_split(ctx: &Setup, c: &Circuit, delta: &EdgeSet) -> Result<[EdgeSet; 3], BergeError> {
    let g = ctx.g;
    let (n1, n2) = split_even_circuits(g, delta)
        .map_err(|e| av(g, format!("E(C) △ E(C2) has a non-even component: {e}")))?;
    let c1_edges = ctx.c1.edge_set();
    let c2_edges = ctx.c2.edge_set();
    let tail = ctx.m1.intersection(&c1_edges).minus(&c.edge_set());
    let p_a = n1.union(&tail);
    let p_b = n2.union(&tail);
    ensure_pm(g, &p_a, "M4 = N1 ∪ ((E(C1) ∩ M1) \\ E(C))")?;
    ensure_pm(g, &p_b, "M5 = N2 ∪ ((E(C1) ∩ M1) \\ E(C))")?;
    let uncovered = ctx.m1.minus(&p_a.union(&p_b));
    let c_c2 = c.edge_set().intersection(&c2_edges);
    check(uncovered == c_c2, || {
        av(g, format!("M1 \\ (M4 ∪ M5) is {uncovered}, expected E(C) ∩ E(C2) = {c_c2}"))
    })?;

    let h_edges = EdgeSet::singleton(ctx.u1u2).union(&c1_edges).union(&ctx.c4.edge_set());
    let (h, _, emap) = g.edge_subgraph(&h_edges);
    let n3_sub = first_pm(&h)
        .ok_or_else(|| av(g, "G[{u1u2} ∪ E(C1) ∪ E(C4)] has no perfect matching"))?;
    let n3: EdgeSet = n3_sub.iter().map(|e| emap[e]).collect();
    let third = n3.union(&c2_edges.intersection(&ctx.m1).minus(&ctx.c4.edge_set()));
    ensure_pm(g, &third, "N3 ∪ ((E(C2) ∩ M1) \\ E(C4))")?;
    check(c_c2.is_subset_of(&third), || {
        av(g, "third matching does not contain E(C) ∩ E(C2)")
    })?;
    Ok([p_a, p_b, third])
}

/// Branch with u2 off C5: contract the shared C5/C2 arcs and the
/// separated pieces of C5 and C2, apply the two-matchings lemma in
/// the auxiliary graph, and lift.
fn branch_contract(ctx: &Setup, c5: &Circuit) -> Result<[EdgeSet; 3], BergeError> {
    let g = ctx.g;
    let (m1, m2) = (&ctx.m1, ctx.m2);
    let c1_edges = ctx.c1.edge_set();
    let c2_edges = ctx.c2.edge_set();
    let shared = c5.edge_set().intersection(&c2_edges);
    check(!shared.is_empty(), || av(g, "E(C5) ∩ E(C2) is empty"))?;
    // P1: components of the shared edge set, alternating M1/M2 with
    // M2 ends.
    let p1 = maximal_alternating_paths(
        g,
        &shared.intersection(m2),
        &shared.minus(m2),
        &EdgeSet::new(),
    );
    for p in &p1 {
        let es = p.edge_set();
        check(es.intersection(m2).len() == es.intersection(m1).len() + 1, || {
            av(g, format!("shared arc {:?} is not M2-ended", p.ends()))
        })?;
    }
    let t = p1.len();
    let mut p2 = circuit_gaps(g, c5, &shared);
    let mut p3 = circuit_gaps(g, ctx.c2, &shared);
    check(p2.len() == t && p3.len() == t, || {
        av(
            g,
            format!(
                "family sizes disagree: {t} shared arcs, {} C5 gaps, {} C2 gaps",
                p2.len(),
                p3.len()
            ),
        )
    })?;
    rotate_to_front(&mut p2, |p| p.contains_vertex(ctx.u1))
        .ok_or_else(|| av(g, "u1 lies on no gap of C5"))?;
    rotate_to_front(&mut p3, |p| p.contains_vertex(ctx.u2))
        .ok_or_else(|| av(g, "u2 lies on no gap of C2"))?;

    let con = contract(g, &[("a1", p1), ("a2", p2), ("a3", p3)], &EdgeSet::new())
        .map_err(|e| av(g, format!("contraction to G' failed: {e}")))?;
    let a1: EdgeSet = con.group("a1").iter().copied().collect();
    let a2: EdgeSet = con.group("a2").iter().copied().collect();
    let a3: EdgeSet = con.group("a3").iter().copied().collect();
    let alpha21 = con.group("a2")[0];
    let alpha31 = con.group("a3")[0];
    let rec = lemma_two_pm(con.aux(), &a1, &a2, &a3, &EdgeSet::singleton(alpha21), alpha31)
        .map_err(|e| internal(e, "two-pm invocation inside three-pm"))?;
    check(rec.c.contains_edge(alpha21), || {
        av(g, "two-pm circuit does not contain alpha_{2,1}")
    })?;

    let sym = rec.m4.sym_diff(&rec.m5);
    let e1 = con.lift_by_parity(&sym).expect("all aux edges are surrogates");
    let (n4, n5) = split_even_circuits(g, &e1)
        .map_err(|e| av(g, format!("lifted E1 has a non-even component: {e}")))?;

    match rec.side {
        Side::ContainsM3 => {
            // A3 side: M1 \ E1 is a perfect matching away from E1 and
            // extends either half of the split.
            let rest = m1.minus(&e1);
            let e1_verts = g.vertices_of(&e1);
            let off: BTreeSet<Vertex> =
                (0..g.vertex_count()).filter(|v| !e1_verts.contains(v)).collect();
            ensure_pm_on(g, &rest, &off, "M1 \\ E1")?;
            let p_a = rest.union(&n4);
            let p_b = rest.union(&n5);
            ensure_pm(g, &p_a, "(M1 \\ E1) ∪ N4")?;
            ensure_pm(g, &p_b, "(M1 \\ E1) ∪ N5")?;
            check(m1.is_subset_of(&p_a.union(&p_b)), || {
                av(g, "A3-side matchings do not cover M1")
            })?;
            Ok([p_a, p_b, m2.clone()])
        }
        Side::ContainsM1 => {
            let both = rec.m4.union(&rec.m5);
            let cap = rec.m4.intersection(&rec.m5);
            let e2 = con
                .lift_by_parity(&cap.intersection(&a1))
                .expect("surrogates")
                .union(&con.lift_by_parity(&a3.minus(&both)).expect("surrogates"));
            check(e2.is_subset_of(&m1.union(m2)), || av(g, "E2 is not inside M1 ∪ M2"))?;
            let tail = e2.intersection(m2).union(&m1.intersection(&c1_edges).minus(&e1));
            let m6 = n4.union(&tail);
            let m7 = n5.union(&tail);
            ensure_pm(g, &m6, "M6 = N4 ∪ (E2 ∩ M2) ∪ ((M1 ∩ E(C1)) \\ E1)")?;
            ensure_pm(g, &m7, "M7 = N5 ∪ (E2 ∩ M2) ∪ ((M1 ∩ E(C1)) \\ E1)")?;
            let e2m1 = e2.intersection(m1);
            check(m1.minus(&m6.union(&m7)) == e2m1, || {
                av(g, "M1 \\ (M6 ∪ M7) is not E2 ∩ M1")
            })?;

            let cp = rec.c_prime.as_ref().expect("ContainsM1 carries C'");
            let c6 = con.lift_circuit(cp);
            check(c6.contains_vertex(ctx.u2) && !c6.contains_vertex(ctx.u1), || {
                av(g, "lifted C6 must contain u2 and avoid u1")
            })?;
            let m1c2 = m1.intersection(&c2_edges);
            check(e2m1.is_subset_of(&m1c2.minus(&c6.edge_set())), || {
                av(g, "E2 ∩ M1 is not inside (M1 ∩ E(C2)) \\ E(C6)")
            })?;
            let off6: BTreeSet<Vertex> =
                ctx.c2.vertex_set().difference(&c6.vertex_set()).copied().collect();
            ensure_pm_on(g, &m1c2.minus(&c6.edge_set()), &off6, "(M1 ∩ E(C2)) \\ E(C6)")?;
            let c6_minus_u2: BTreeSet<Vertex> =
                c6.vertex_set().iter().copied().filter(|&v| v != ctx.u2).collect();
            ensure_pm_on(g, &c6.edge_set().minus(m1), &c6_minus_u2, "E(C6) \\ M1")?;

            let third = if c6.edge_set().intersection(&c1_edges).is_empty() {
                m2.minus(&c2_edges).union(&m1c2.sym_diff(&c6.edge_set()))
            } else {
                // Walk C6 from u2 (leaving by its smaller incident
                // edge) to the first C1-vertex.
                let t_path = walk_until(g, &c6, ctx.u2, |v| ctx.c1.contains_vertex(v))
                    .ok_or_else(|| av(g, "no walk from u2 along C6 reaches V(C1)"))?;
                let (ta, tb) = t_path.ends();
                let w = if ta == ctx.u2 { tb } else { ta };
                let n6 = pm_of_circuit_minus_vertex(ctx.c1, w)
                    .map_err(|e| av(g, format!("C1 − {w} has no matching: {e}")))?;
                n6.union(&m1c2.sym_diff(&t_path.edge_set()))
            };
            ensure_pm(g, &third, "matching containing E2 ∩ M1")?;
            check(e2m1.is_subset_of(&third), || {
                av(g, "third matching does not contain E2 ∩ M1")
            })?;
            Ok([m6, m7, third])
        }
    }
}

/// Rotates the vector so the first element satisfying the predicate
/// comes first; returns its old index.
fn rotate_to_front<T>(v: &mut [T], pred: impl Fn(&T) -> bool) -> Option<usize> {
    let idx = v.iter().position(pred)?;
    v.rotate_left(idx);
    Some(idx)
}

/// The path along circuit `c` from `v` (leaving by the smaller
/// incident edge) up to the first vertex satisfying `stop`.
fn walk_until(
    g: &Multigraph,
    c: &Circuit,
    v: Vertex,
    stop: impl Fn(Vertex) -> bool,
) -> Option<Path> {
    let (verts, edges) = c.walk_from(v);
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
