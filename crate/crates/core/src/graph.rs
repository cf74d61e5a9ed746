//! Simple undirected graphs, Hamilton-cycle bookkeeping and 2-factors.
//!
//! Vertices are `0..n` internally. The text format and every user-facing
//! message use 1-based ids.

use std::collections::BTreeSet;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{FactorError, GraphError, ParseError};

/// Simple undirected graph with bitset adjacency rows.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<FixedBitSet>,
    edge_count: usize,
}

impl Graph {
    /// Graph on `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: (0..n).map(|_| FixedBitSet::with_capacity(n)).collect(),
            edge_count: 0,
        }
    }

    /// Builds a graph from 0-based edge pairs. Duplicate pairs collapse,
    /// loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds `{u, v}`; returns `Ok(false)` if the edge was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(GraphError::VertexOutOfRange {
                vertex: u.max(v) + 1,
                n,
            });
        }
        if u == v {
            return Err(GraphError::Loop { vertex: u + 1 });
        }
        if self.adj[u].contains(v) {
            return Ok(false);
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self.edge_count += 1;
        Ok(true)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj[u].contains(v)
    }

    pub fn neighbours(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| self.adj[u].ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().map(|(u, v)| (u + 1, v + 1)).collect::<Vec<_>>())
            .finish()
    }
}

/// Index of a Hamilton edge `e_i = v_i v_{i+1}`, taken modulo `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeIndex(pub usize);

impl EdgeIndex {
    /// From a 1-based (possibly out of range) index, reduced mod `n`.
    pub fn from_external(i: i64, n: usize) -> Self {
        EdgeIndex((i - 1).rem_euclid(n as i64) as usize)
    }

    pub fn succ(self, n: usize) -> Self {
        EdgeIndex((self.0 + 1) % n)
    }

    pub fn pred(self, n: usize) -> Self {
        EdgeIndex((self.0 + n - 1) % n)
    }
}

impl fmt::Display for EdgeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0 + 1)
    }
}

/// A graph together with a fixed Hamilton cycle `H = v_1 v_2 ... v_n v_1`.
///
/// `order[i]` is the graph vertex playing the role of `v_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamiltonianInstance {
    graph: Graph,
    order: Vec<usize>,
    position: Vec<usize>,
}

impl HamiltonianInstance {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Graph vertex at Hamilton position `i` (taken mod n).
    #[inline]
    pub fn vertex_at(&self, i: usize) -> usize {
        self.order[i % self.order.len()]
    }

    /// Hamilton position of graph vertex `v`.
    #[inline]
    pub fn position_of(&self, v: usize) -> usize {
        self.position[v]
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Endpoints `(v_i, v_{i+1})` of the Hamilton edge `e_i`.
    pub fn hamilton_edge(&self, e: EdgeIndex) -> (usize, usize) {
        (self.vertex_at(e.0), self.vertex_at(e.0 + 1))
    }

    /// Edges of `G` not on `H`, as sorted `(u, v)` graph-vertex pairs.
    pub fn inner_edges(&self) -> Vec<(usize, usize)> {
        inner_edges(self)
    }

    /// The Hamilton cycle viewed as a one-cycle 2-factor.
    pub fn hamilton_factor(&self) -> TwoFactor {
        TwoFactor::from_cycles_unchecked(vec![self.order.clone()])
    }
}

/// Checks that `order` (0-based graph vertices) is a Hamilton cycle of `graph`.
pub fn validate_hamiltonian(graph: Graph, order: Vec<usize>) -> Result<HamiltonianInstance, GraphError> {
    let n = graph.n();
    if order.len() != n {
        return Err(GraphError::OrderLength { expected: n, found: order.len() });
    }
    if n < 3 {
        return Err(GraphError::TooSmall { n });
    }
    let mut position = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n {
            return Err(GraphError::VertexOutOfRange { vertex: v + 1, n });
        }
        if position[v] != usize::MAX {
            return Err(GraphError::NotPermutation { vertex: v + 1 });
        }
        position[v] = i;
    }
    for i in 0..n {
        let (a, b) = (order[i], order[(i + 1) % n]);
        if !graph.has_edge(a, b) {
            return Err(GraphError::MissingHamiltonEdge { u: a + 1, v: b + 1 });
        }
    }
    Ok(HamiltonianInstance { graph, order, position })
}

/// `E(G)` minus the `n` Hamilton edges.
pub fn inner_edges(instance: &HamiltonianInstance) -> Vec<(usize, usize)> {
    let n = instance.n();
    instance
        .graph
        .edges()
        .filter(|&(u, v)| {
            let d = instance.position[u].abs_diff(instance.position[v]);
            d != 1 && d != n - 1
        })
        .collect()
}

/// Spanning 2-regular subgraph, stored as canonical vertex cycles.
///
/// Canonical form: each cycle starts at its smallest vertex and continues
/// towards the smaller of that vertex's two cycle neighbours; cycles are
/// sorted by first vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "FactorRepr", try_from = "FactorRepr")]
pub struct TwoFactor {
    cycles: Vec<Vec<usize>>,
}

/// 1-based cycle lists.
#[derive(Serialize, Deserialize)]
struct FactorRepr {
    cycles: Vec<Vec<usize>>,
}

impl From<TwoFactor> for FactorRepr {
    fn from(f: TwoFactor) -> Self {
        FactorRepr { cycles: f.cycles.iter().map(|c| c.iter().map(|v| v + 1).collect()).collect() }
    }
}

impl TryFrom<FactorRepr> for TwoFactor {
    type Error = FactorError;

    fn try_from(r: FactorRepr) -> Result<Self, FactorError> {
        let mut cycles = Vec::with_capacity(r.cycles.len());
        for c in r.cycles {
            if c.len() < 3 {
                return Err(FactorError::ShortCycle { len: c.len() });
            }
            if c.contains(&0) {
                return Err(FactorError::VertexOutOfRange { vertex: 0, n: 0 });
            }
            cycles.push(c.into_iter().map(|v| v - 1).collect());
        }
        Ok(TwoFactor::from_cycles_unchecked(cycles))
    }
}

impl TwoFactor {
    pub(crate) fn from_cycles_unchecked(cycles: Vec<Vec<usize>>) -> Self {
        let mut cycles: Vec<Vec<usize>> = cycles.into_iter().map(canonical_cycle).collect();
        cycles.sort();
        TwoFactor { cycles }
    }

    /// Validates a user-supplied cycle listing (0-based vertices) against
    /// `graph`: disjoint cycles of length at least 3 along graph edges
    /// covering every vertex.
    pub fn from_cycles(graph: &Graph, cycles: Vec<Vec<usize>>) -> Result<Self, FactorError> {
        let n = graph.n();
        let mut seen = vec![false; n];
        for cycle in &cycles {
            if cycle.len() < 3 {
                return Err(FactorError::ShortCycle { len: cycle.len() });
            }
            for &v in cycle {
                if v >= n {
                    return Err(FactorError::VertexOutOfRange { vertex: v + 1, n });
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(FactorError::RepeatedVertex { vertex: v + 1 });
                }
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(FactorError::Uncovered { vertex: v + 1 });
        }
        for cycle in &cycles {
            for (i, &v) in cycle.iter().enumerate() {
                let w = cycle[(i + 1) % cycle.len()];
                if !graph.has_edge(v, w) {
                    return Err(FactorError::EdgeNotInGraph { u: v + 1, v: w + 1 });
                }
            }
        }
        Ok(Self::from_cycles_unchecked(cycles))
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn n(&self) -> usize {
        self.cycles.iter().map(Vec::len).sum()
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .cycles
            .iter()
            .flat_map(|c| {
                (0..c.len()).map(move |i| {
                    let (a, b) = (c[i], c[(i + 1) % c.len()]);
                    (a.min(b), a.max(b))
                })
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Component label per vertex (index into `cycles`).
    pub fn component_labels(&self) -> Vec<usize> {
        let mut label = vec![0; self.n()];
        for (c, cycle) in self.cycles.iter().enumerate() {
            for &v in cycle {
                label[v] = c;
            }
        }
        label
    }
}

/// Number of cycles of the 2-factor.
pub fn count_components(tf: &TwoFactor) -> usize {
    tf.cycles.len()
}

fn canonical_cycle(mut cycle: Vec<usize>) -> Vec<usize> {
    if cycle.is_empty() {
        return cycle;
    }
    let start = cycle.iter().enumerate().min_by_key(|&(_, &v)| v).map(|(i, _)| i).unwrap();
    cycle.rotate_left(start);
    if cycle.len() > 2 && cycle[cycle.len() - 1] < cycle[1] {
        cycle[1..].reverse();
    }
    cycle
}

/// Decomposes `edges` into cycles if every vertex has degree exactly 2.
pub fn verify_two_factor(graph: &Graph, edges: &[(usize, usize)]) -> Result<TwoFactor, FactorError> {
    let n = graph.n();
    let mut nbrs = vec![[usize::MAX; 2]; n];
    let mut deg = vec![0usize; n];
    let mut seen = BTreeSet::new();
    for &(u, v) in edges {
        if u >= n || v >= n {
            return Err(FactorError::VertexOutOfRange { vertex: u.max(v) + 1, n });
        }
        if !graph.has_edge(u, v) {
            return Err(FactorError::EdgeNotInGraph { u: u + 1, v: v + 1 });
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(FactorError::DuplicateEdge { u: u + 1, v: v + 1 });
        }
        for (a, b) in [(u, v), (v, u)] {
            if deg[a] < 2 {
                nbrs[a][deg[a]] = b;
            }
            deg[a] += 1;
        }
    }
    if let Some(v) = (0..n).find(|&v| deg[v] != 2) {
        return Err(FactorError::BadDegree { vertex: v + 1, degree: deg[v] });
    }
    let mut visited = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut cycle = vec![start];
        visited[start] = true;
        let (mut prev, mut cur) = (start, nbrs[start][0]);
        while cur != start {
            visited[cur] = true;
            cycle.push(cur);
            let next = if nbrs[cur][0] == prev { nbrs[cur][1] } else { nbrs[cur][0] };
            prev = cur;
            cur = next;
        }
        cycles.push(cycle);
    }
    Ok(TwoFactor::from_cycles_unchecked(cycles))
}

/// Contents of a graph file: the graph plus an optional declared Hamilton
/// cycle (0-based vertex order, not yet validated).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: Graph,
    pub hamilton: Option<Vec<usize>>,
}

/// Parses the graph text format, discarding any `H:` line.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    parse_graph_file(text).map(|f| f.graph)
}

/// Parses `n m`, then `m` edge lines `u v` (1-based), an optional
/// `H: v1 ... vn` line anywhere after the header, and `#` comments.
pub fn parse_graph_file(text: &str) -> Result<GraphFile, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut graph = Graph::empty(0);
    let mut listed = 0usize;
    let mut hamilton = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let malformed = |reason: &str| ParseError::Malformed { line: line_no, reason: reason.to_string() };
        let Some((n, _)) = header else {
            let nums = parse_numbers(line).ok_or_else(|| malformed("expected header `n m`"))?;
            let [n, m] = nums[..] else {
                return Err(malformed("expected header `n m`"));
            };
            header = Some((n, m));
            graph = Graph::empty(n);
            continue;
        };
        if let Some(rest) = line.strip_prefix("H:") {
            if hamilton.is_some() {
                return Err(malformed("duplicate `H:` line"));
            }
            let nums = parse_numbers(rest).ok_or_else(|| malformed("expected vertex ids after `H:`"))?;
            let mut order = Vec::with_capacity(nums.len());
            for v in nums {
                if v == 0 || v > n {
                    return Err(ParseError::OutOfRange { line: line_no, vertex: v, n });
                }
                order.push(v - 1);
            }
            hamilton = Some(order);
            continue;
        }
        let nums = parse_numbers(line).ok_or_else(|| malformed("expected edge `u v`"))?;
        let [u, v] = nums[..] else {
            return Err(malformed("expected edge `u v`"));
        };
        for w in [u, v] {
            if w == 0 || w > n {
                return Err(ParseError::OutOfRange { line: line_no, vertex: w, n });
            }
        }
        if u == v {
            return Err(ParseError::Loop { line: line_no, vertex: u });
        }
        graph.add_edge(u - 1, v - 1).expect("endpoints checked");
        listed += 1;
    }

    let Some((_, m)) = header else {
        return Err(ParseError::Malformed { line: last_line.max(1), reason: "missing header `n m`".into() });
    };
    if listed != m {
        return Err(ParseError::EdgeCount { declared: m, found: listed });
    }
    Ok(GraphFile { graph, hamilton })
}

fn parse_numbers(s: &str) -> Option<Vec<usize>> {
    s.split_whitespace().map(|t| t.parse().ok()).collect()
}

/// Serializes in the graph text format; edges in lexicographic order.
pub fn write_graph(graph: &Graph, hamilton: Option<&[usize]>) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    writeln!(out, "{} {}", graph.n(), graph.edge_count()).unwrap();
    for (u, v) in graph.edges() {
        writeln!(out, "{} {}", u + 1, v + 1).unwrap();
    }
    if let Some(order) = hamilton {
        out.push_str("H:");
        for v in order {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    out
}

/// Convenience constructors for the small graphs used throughout tests.
pub mod named {
    use super::Graph;

    pub fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("valid clique")
    }

    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("valid star")
    }
}

#[cfg(test)]
mod tests {
    use super::named::{complete, cycle};
    use super::*;

    fn pairs(list: &[(usize, usize)]) -> Vec<(usize, usize)> {
        list.iter().map(|&(u, v)| (u - 1, v - 1)).collect()
    }

    #[test]
    fn parse_triangle_and_square() {
        let g = parse_graph("3 3\n1 2\n2 3\n1 3").unwrap();
        assert_eq!(g, complete(3));
        let g = parse_graph("4 4\n1 2\n2 3\n3 4\n4 1").unwrap();
        assert_eq!(g, cycle(4));
    }

    #[test]
    fn parse_rejects_loop_with_line_number() {
        assert_eq!(parse_graph("2 1\n1 1"), Err(ParseError::Loop { line: 2, vertex: 1 }));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert!(matches!(parse_graph("3 1\n1 4"), Err(ParseError::OutOfRange { line: 2, vertex: 4, n: 3 })));
        assert!(matches!(parse_graph("3 1\n# c\n1 x"), Err(ParseError::Malformed { line: 3, .. })));
        assert!(matches!(parse_graph("3 2\n1 2"), Err(ParseError::EdgeCount { declared: 2, found: 1 })));
    }

    #[test]
    fn parse_dedups_and_reads_hamilton_line() {
        let f = parse_graph_file("# comment\n3 4\n1 2\n2 1 # again\n2 3\n3 1\nH: 1 2 3\n").unwrap();
        assert_eq!(f.graph.edge_count(), 3);
        assert_eq!(f.hamilton, Some(vec![0, 1, 2]));
    }

    #[test]
    fn validate_orders() {
        assert!(validate_hamiltonian(cycle(4), vec![0, 1, 2, 3]).is_ok());
        assert_eq!(
            validate_hamiltonian(cycle(4), vec![0, 2, 1, 3]),
            Err(GraphError::MissingHamiltonEdge { u: 1, v: 3 })
        );
        assert!(validate_hamiltonian(complete(4), vec![0, 2, 1, 3]).is_ok());
        assert_eq!(
            validate_hamiltonian(cycle(4), vec![0, 1, 1, 3]),
            Err(GraphError::NotPermutation { vertex: 2 })
        );
    }

    #[test]
    fn inner_edge_sets() {
        let c = validate_hamiltonian(cycle(7), (0..7).collect()).unwrap();
        assert!(inner_edges(&c).is_empty());
        let k4 = validate_hamiltonian(complete(4), vec![0, 1, 2, 3]).unwrap();
        assert_eq!(inner_edges(&k4), pairs(&[(1, 3), (2, 4)]));
        let k5 = validate_hamiltonian(complete(5), vec![2, 0, 4, 1, 3]).unwrap();
        assert_eq!(inner_edges(&k5).len(), 5);
    }

    #[test]
    fn verify_factors() {
        let c6 = cycle(6);
        let all: Vec<_> = c6.edges().collect();
        let tf = verify_two_factor(&c6, &all).unwrap();
        assert_eq!(count_components(&tf), 1);
        assert_eq!(tf.cycles()[0], vec![0, 1, 2, 3, 4, 5]);

        let k6 = complete(6);
        let tri = pairs(&[(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]);
        let tf = verify_two_factor(&k6, &tri).unwrap();
        assert_eq!(count_components(&tf), 2);

        let err = verify_two_factor(&c6, &all[1..]).unwrap_err();
        assert!(matches!(err, FactorError::BadDegree { degree: 1, .. }));
        assert!(matches!(
            verify_two_factor(&c6, &[(0, 2)]),
            Err(FactorError::EdgeNotInGraph { u: 1, v: 3 })
        ));
    }

    #[test]
    fn canonical_cycles_compare_equal() {
        let a = TwoFactor::from_cycles_unchecked(vec![vec![3, 2, 1, 0]]);
        let b = TwoFactor::from_cycles_unchecked(vec![vec![1, 2, 3, 0]]);
        assert_eq!(a, b);
        assert_eq!(a.cycles()[0], vec![0, 1, 2, 3]);
    }

    #[test]
    fn from_cycles_reports_uncovered_vertex() {
        let err = TwoFactor::from_cycles(&cycle(6), vec![vec![0, 1, 2, 3, 4]]).unwrap_err();
        assert_eq!(err, FactorError::Uncovered { vertex: 6 });
        let err = TwoFactor::from_cycles(&cycle(6), vec![vec![0, 2, 1, 3, 4, 5]]).unwrap_err();
        assert_eq!(err, FactorError::EdgeNotInGraph { u: 1, v: 3 });
    }

    #[test]
    fn edge_index_wraps() {
        assert_eq!(EdgeIndex(0).pred(5), EdgeIndex(4));
        assert_eq!(EdgeIndex(4).succ(5), EdgeIndex(0));
        assert_eq!(EdgeIndex::from_external(6, 5), EdgeIndex(0));
        assert_eq!(EdgeIndex(2).to_string(), "e3");
    }
}
