//! Deterministic instance generators.
//!
//! Every family has a fixed, documented edge-id layout so that golden
//! files and covers are stable across runs.
//!
//! * `theta`: 2 vertices, 3 parallel edges.
//! * `k4`: complete graph on 4 vertices, edges in lexicographic order.
//! * `gp(n, k)`: generalized Petersen graph; vertices `0..n` outer,
//!   `n..2n` inner; edge ids: outer circuit `(i, i+1 mod n)` first,
//!   spokes `(i, n+i)` second, inner edges `(n+i, n+(i+k mod n))` last.
//! * `prism` = `gp(3, 1)`, `petersen` = `gp(5, 2)`,
//!   `moebius_kantor` = `gp(8, 3)`.
//! * `flower(n)` (odd n ≥ 5): n stars with hubs `i` and tips `n+i`,
//!   `2n+i`, `3n+i`; star edges first (per i), then the tip n-cycle on
//!   `n..2n`, then the 2n-cycle through `2n..3n` and `3n..4n`.

use thiserror::Error;

use crate::graphcore::{Multigraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("bad parameters: {0}")]
    BadParams(String),
}

pub fn theta() -> Multigraph {
    Multigraph::new(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap()
}

pub fn k4() -> Multigraph {
    Multigraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
}

pub fn prism() -> Multigraph {
    gp(3, 1).unwrap()
}

pub fn petersen() -> Multigraph {
    gp(5, 2).unwrap()
}

pub fn moebius_kantor() -> Multigraph {
    gp(8, 3).unwrap()
}

/// Generalized Petersen graph GP(n, k), `n ≥ 3`, `1 ≤ k < n/2`.
pub fn gp(n: usize, k: usize) -> Result<Multigraph, GenError> {
    if n < 3 {
        return Err(GenError::BadParams(format!("gp: n = {n} < 3")));
    }
    if k < 1 || 2 * k >= n {
        return Err(GenError::BadParams(format!("gp: need 1 <= k < n/2, got k = {k}, n = {n}")));
    }
    let mut edges: Vec<(Vertex, Vertex)> = Vec::with_capacity(3 * n);
    for i in 0..n {
        edges.push((i, (i + 1) % n));
    }
    for i in 0..n {
        edges.push((i, n + i));
    }
    for i in 0..n {
        edges.push((n + i, n + (i + k) % n));
    }
    Ok(Multigraph::new(2 * n, edges).unwrap())
}

/// Flower snark J_n for odd n ≥ 5.
pub fn flower(n: usize) -> Result<Multigraph, GenError> {
    if n < 5 || n.is_multiple_of(2) {
        return Err(GenError::BadParams(format!("flower: need odd n >= 5, got {n}")));
    }
    let mut edges: Vec<(Vertex, Vertex)> = Vec::with_capacity(6 * n);
    for i in 0..n {
        edges.push((i, n + i));
        edges.push((i, 2 * n + i));
        edges.push((i, 3 * n + i));
    }
    for i in 0..n {
        edges.push((n + i, n + (i + 1) % n));
    }
    // The 2n-cycle 2n, 2n+1, ..., 3n-1, 3n, 3n+1, ..., 4n-1, back to 2n.
    for i in 0..n - 1 {
        edges.push((2 * n + i, 2 * n + i + 1));
    }
    edges.push((3 * n - 1, 3 * n));
    for i in 0..n - 1 {
        edges.push((3 * n + i, 3 * n + i + 1));
    }
    edges.push((4 * n - 1, 2 * n));
    Ok(Multigraph::new(4 * n, edges).unwrap())
}

/// Generator lookup by family name, for the command line.
pub fn from_name(name: &str, params: &[usize]) -> Result<Multigraph, GenError> {
    let expect = |k: usize| {
        if params.len() == k {
            Ok(())
        } else {
            Err(GenError::BadParams(format!(
                "{name} takes {k} parameter(s), got {}",
                params.len()
            )))
        }
    };
    match name {
        "theta" => expect(0).map(|_| theta()),
        "k4" => expect(0).map(|_| k4()),
        "prism" => expect(0).map(|_| prism()),
        "petersen" => expect(0).map(|_| petersen()),
        "moebius_kantor" | "moebius-kantor" => expect(0).map(|_| moebius_kantor()),
        "gp" => {
            expect(2)?;
            gp(params[0], params[1])
        }
        "flower" => {
            expect(1)?;
            flower(params[0])
        }
        _ => Err(GenError::BadParams(format!("unknown family {name:?}"))),
    }
}
