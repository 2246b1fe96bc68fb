//! Simple undirected graphs with vertices numbered `1..=n`.

use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An ordered set of distinct vertex indices (strictly increasing, 1-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// A simple undirected graph. Immutable once built.
///
/// Edges are stored as `(u, v)` with `u < v`, sorted. Closed neighborhoods are
/// precomputed (0-based internally) since every game move walks one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    closed: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph on `1..=n`. Endpoints may be given in either order.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::InvalidGraph("graph needs at least one vertex".into()));
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            let e = (u.min(v), u.max(v));
            if !set.insert(e) {
                return Err(Error::InvalidGraph(format!("duplicate edge {}-{}", e.0, e.1)));
            }
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut closed: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        for &(u, v) in &edges {
            closed[u - 1].push(v - 1);
            closed[v - 1].push(u - 1);
        }
        for nb in &mut closed {
            nb.sort_unstable();
        }
        Ok(Graph { n, edges, closed })
    }

    /// The path `P_n`: edges `i, i+1`.
    pub fn path(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("path needs n >= 1".into()));
        }
        Graph::new(n, (1..n).map(|i| (i, i + 1)))
    }

    /// The cycle `C_n`, `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph(format!(
                "cycle needs n >= 3 (C_{n} is not simple)"
            )));
        }
        Graph::new(n, (1..n).map(|i| (i, i + 1)).chain([(1, n)]))
    }

    /// `K_{n,p}` with first part `1..=n` and second part `n+1..=n+p`.
    pub fn complete_bipartite(n: usize, p: usize) -> Result<Self> {
        if n == 0 || p == 0 {
            return Err(Error::InvalidGraph("complete bipartite needs n, p >= 1".into()));
        }
        Graph::new(
            n + p,
            (1..=n).flat_map(|u| (n + 1..=n + p).map(move |v| (u, v))),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// `{v}` together with every vertex adjacent to `v`.
    pub fn closed_neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(VertexSet(self.closed[v - 1].iter().map(|&w| w + 1).collect()))
    }

    /// Closed neighborhood of 0-based vertex `i`, 0-based and sorted.
    pub(crate) fn closed0(&self, i: usize) -> &[usize] {
        &self.closed[i]
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.closed[v - 1].len() - 1)
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for &j in &self.closed[i] {
                if !seen[j] {
                    seen[j] = true;
                    count += 1;
                    stack.push(j);
                }
            }
        }
        count == self.n
    }

    /// Renders in the edge-list text format accepted by [`parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Compact one-line edge list, e.g. `1-2;2-3`. Empty for edgeless graphs.
    pub fn descriptor(&self) -> String {
        self.edges
            .iter()
            .map(|(u, v)| format!("{u}-{v}"))
            .collect::<Vec<_>>()
            .join(";")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Path,
    Cycle,
    CompleteBipartite,
}

pub fn build_family(family: Family, n: usize, p: Option<usize>) -> Result<Graph> {
    match family {
        Family::Path => Graph::path(n),
        Family::Cycle => Graph::cycle(n),
        Family::CompleteBipartite => {
            let p = p.ok_or_else(|| {
                Error::InvalidGraph("complete bipartite graph needs a second part size".into())
            })?;
            Graph::complete_bipartite(n, p)
        }
    }
}

/// Parses the edge-list format: a vertex count line, then one `u v` pair per
/// line. `#` starts a comment; blank lines are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut n = None;
    let mut edges = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let Some(n) = n else {
            if fields.len() != 1 {
                return Err(err(format!("expected vertex count, got `{line}`")));
            }
            let count: usize = fields[0]
                .parse()
                .map_err(|_| err(format!("bad vertex count `{}`", fields[0])))?;
            if count == 0 {
                return Err(err("vertex count must be at least 1".into()));
            }
            n = Some(count);
            continue;
        };
        if fields.len() != 2 {
            return Err(err(format!("expected `u v`, got `{line}`")));
        }
        let mut ends = [0usize; 2];
        for (slot, f) in ends.iter_mut().zip(&fields) {
            *slot = f.parse().map_err(|_| err(format!("bad vertex `{f}`")))?;
            if *slot == 0 || *slot > n {
                return Err(err(format!("endpoint {} out of range 1..={n}", *slot)));
            }
        }
        let [u, v] = ends;
        if u == v {
            return Err(err(format!("self-loop at vertex {u}")));
        }
        if !edges.insert((u.min(v), u.max(v))) {
            return Err(err(format!("duplicate edge {u} {v}")));
        }
    }
    let n = n.ok_or(Error::Parse {
        line: 0,
        msg: "missing vertex count".into(),
    })?;
    Graph::new(n, edges)
}

/// Command-line graph spec: `path:N`, `cycle:N`, `kbip:N,P`, or `file:PATH`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphSpec {
    Path(usize),
    Cycle(usize),
    CompleteBipartite(usize, usize),
    File(PathBuf),
}

impl GraphSpec {
    pub fn build(&self) -> Result<Graph> {
        match self {
            GraphSpec::Path(n) => Graph::path(*n),
            GraphSpec::Cycle(n) => Graph::cycle(*n),
            GraphSpec::CompleteBipartite(n, p) => Graph::complete_bipartite(*n, *p),
            GraphSpec::File(path) => parse_edge_list(&std::fs::read_to_string(path)?),
        }
    }
}

impl FromStr for GraphSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse {
            line: 0,
            msg: format!("graph spec `{s}`: {msg}"),
        };
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| bad("expected KIND:ARGS"))?;
        let num = |t: &str| -> Result<usize> {
            t.trim().parse().map_err(|_| bad("expected a positive integer"))
        };
        match kind {
            "path" => Ok(GraphSpec::Path(num(arg)?)),
            "cycle" => Ok(GraphSpec::Cycle(num(arg)?)),
            "kbip" => {
                let (a, b) = arg.split_once(',').ok_or_else(|| bad("expected kbip:N,P"))?;
                Ok(GraphSpec::CompleteBipartite(num(a)?, num(b)?))
            }
            "file" if !arg.is_empty() => Ok(GraphSpec::File(PathBuf::from(arg))),
            _ => Err(bad("unknown kind (path, cycle, kbip, file)")),
        }
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Path(n) => write!(f, "path:{n}"),
            GraphSpec::Cycle(n) => write!(f, "cycle:{n}"),
            GraphSpec::CompleteBipartite(n, p) => write!(f, "kbip:{n},{p}"),
            GraphSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}
