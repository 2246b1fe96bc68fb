//! Exhaustive enumeration of small labeled graphs, with optional
//! isomorphism dedup.
//!
//! A graph on `n` vertices is encoded as its upper-triangle adjacency
//! bit-string in column order `(1,2), (1,3), (2,3), (1,4), ...`; the first
//! pair is the most significant bit, so integer order is lexicographic order
//! of the bit-string. The canonical form of a graph is the minimum code over
//! all `n!` relabelings. Graphs are yielded in increasing code order.

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::graph::Graph;

pub const MAX_ENUM_N: usize = 7;

fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Position (0 = most significant) of 0-based pair `a < b` in column order.
fn pair_pos(a: usize, b: usize) -> usize {
    b * (b - 1) / 2 + a
}

fn check_n(n: usize) -> Result<()> {
    if (1..=MAX_ENUM_N).contains(&n) {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "enumeration supports 1 <= n <= {MAX_ENUM_N}, got {n}"
        )))
    }
}

/// Per-vertex adjacency bitmasks (0-based) of a code.
fn adjacency(n: usize, code: u32) -> [u8; MAX_ENUM_N] {
    let total = pair_count(n);
    let mut adj = [0u8; MAX_ENUM_N];
    for b in 1..n {
        for a in 0..b {
            if code >> (total - 1 - pair_pos(a, b)) & 1 == 1 {
                adj[a] |= 1 << b;
                adj[b] |= 1 << a;
            }
        }
    }
    adj
}

fn connected(n: usize, adj: &[u8; MAX_ENUM_N]) -> bool {
    let full = (1u16 << n) - 1;
    let mut seen: u16 = 1;
    let mut frontier: u16 = 1;
    while frontier != 0 {
        let mut next = 0u16;
        for v in 0..n {
            if frontier >> v & 1 == 1 {
                next |= adj[v] as u16;
            }
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == full
}

fn code_to_graph(n: usize, code: u32) -> Graph {
    let adj = adjacency(n, code);
    let edges = (0..n).flat_map(|a| {
        (a + 1..n)
            .filter(move |&b| adj[a] >> b & 1 == 1)
            .map(move |b| (a + 1, b + 1))
    });
    Graph::new(n, edges).expect("enumerated codes are simple graphs")
}

/// The column-order code of `g`. Requires `g.n() <= 7`.
pub fn graph_code(g: &Graph) -> Result<u32> {
    check_n(g.n())?;
    let total = pair_count(g.n());
    Ok(g.edges().iter().fold(0u32, |code, &(u, v)| {
        code | 1 << (total - 1 - pair_pos(u - 1, v - 1))
    }))
}

/// Bits contributed by placing original vertex `vtx` at new position `b`,
/// given the vertices already placed at positions `0..b`.
fn segment(adj: &[u8; MAX_ENUM_N], placed: &[usize], vtx: usize) -> u32 {
    placed
        .iter()
        .fold(0u32, |s, &p| (s << 1) | (adj[vtx] >> p & 1) as u32)
}

struct Search<'a> {
    n: usize,
    adj: &'a [u8; MAX_ENUM_N],
    placed: Vec<usize>,
    used: u8,
}

impl Search<'_> {
    /// Minimum code completing the current placement, pruned against `best`.
    fn minimize(&mut self, prefix: u32, best: &mut Option<u32>) {
        let b = self.placed.len();
        if b == self.n {
            if best.is_none_or(|cur| prefix < cur) {
                *best = Some(prefix);
            }
            return;
        }
        let total = pair_count(self.n);
        let len_after = pair_count(b + 1);
        for vtx in 0..self.n {
            if self.used >> vtx & 1 == 1 {
                continue;
            }
            let next = (prefix << b) | segment(self.adj, &self.placed, vtx);
            if let Some(cur) = *best {
                if next > cur >> (total - len_after) {
                    continue;
                }
            }
            self.placed.push(vtx);
            self.used |= 1 << vtx;
            self.minimize(next, best);
            self.used &= !(1 << vtx);
            self.placed.pop();
        }
    }

    /// True if some completion yields a code strictly below `target`.
    fn beats(&mut self, prefix: u32, target: u32) -> bool {
        let b = self.placed.len();
        if b == self.n {
            return false;
        }
        let total = pair_count(self.n);
        let target_prefix = target >> (total - pair_count(b + 1));
        for vtx in 0..self.n {
            if self.used >> vtx & 1 == 1 {
                continue;
            }
            let next = (prefix << b) | segment(self.adj, &self.placed, vtx);
            if next < target_prefix {
                return true;
            }
            if next > target_prefix {
                continue;
            }
            self.placed.push(vtx);
            self.used |= 1 << vtx;
            let found = self.beats(next, target);
            self.used &= !(1 << vtx);
            self.placed.pop();
            if found {
                return true;
            }
        }
        false
    }
}

fn canonical_of(n: usize, code: u32) -> u32 {
    let adj = adjacency(n, code);
    let mut search = Search { n, adj: &adj, placed: Vec::with_capacity(n), used: 0 };
    let mut best = None;
    search.minimize(0, &mut best);
    best.expect("at least one permutation")
}

fn is_canonical(n: usize, code: u32) -> bool {
    let adj = adjacency(n, code);
    let mut search = Search { n, adj: &adj, placed: Vec::with_capacity(n), used: 0 };
    !search.beats(0, code)
}

/// Canonical form of `g`: the least code over all vertex relabelings.
pub fn canonical_code(g: &Graph) -> Result<u32> {
    Ok(canonical_of(g.n(), graph_code(g)?))
}

/// Canonical representative of `g`'s isomorphism class, as a graph.
pub fn canonical_graph(g: &Graph) -> Result<Graph> {
    Ok(code_to_graph(g.n(), canonical_code(g)?))
}

fn keep(n: usize, code: u32, dedup: bool) -> bool {
    connected(n, &adjacency(n, code)) && (!dedup || is_canonical(n, code))
}

/// Lazily yields all connected labeled graphs on `n` vertices; with `dedup`,
/// only the canonical representative of each isomorphism class.
pub fn enumerate_connected_graphs(
    n: usize,
    dedup: bool,
) -> Result<impl Iterator<Item = Graph>> {
    check_n(n)?;
    let end = 1u32 << pair_count(n);
    Ok((0..end)
        .filter(move |&code| keep(n, code, dedup))
        .map(move |code| code_to_graph(n, code)))
}

/// Same output as [`enumerate_connected_graphs`], collected, with the
/// filtering spread over `exec`.
pub fn connected_graphs(n: usize, dedup: bool, exec: Exec) -> Result<Vec<Graph>> {
    check_n(n)?;
    let end = 1usize << pair_count(n);
    Ok(exec::filter_map_range(exec, end, |code| {
        let code = code as u32;
        keep(n, code, dedup).then(|| code_to_graph(n, code))
    }))
}

/// All labeled graphs on `n` vertices, connected or not.
pub fn enumerate_graphs(n: usize) -> Result<impl Iterator<Item = Graph>> {
    check_n(n)?;
    let end = 1u32 << pair_count(n);
    Ok((0..end).map(move |code| code_to_graph(n, code)))
}
