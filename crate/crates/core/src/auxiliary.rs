//! The ordered 2-edge-coloured auxiliary graph built from a Hamiltonian
//! instance.
//!
//! Vertex `i` of the auxiliary graph stands for the Hamilton edge
//! `e_i = v_i v_{i+1}`. An inner edge `{v_a, v_b}` of `G` yields the blue
//! edge `{e_a, e_b}` and the red edge `{e_{a-1}, e_{b-1}}`. The same pair
//! may therefore carry one edge of each colour, but never two of one.

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::AuxError;
use crate::graph::{EdgeIndex, HamiltonianInstance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Colour {
    Red,
    Blue,
}

impl Colour {
    pub fn other(self) -> Colour {
        match self {
            Colour::Red => Colour::Blue,
            Colour::Blue => Colour::Red,
        }
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Colour::Red => "red",
            Colour::Blue => "blue",
        })
    }
}

/// One coloured edge of the auxiliary graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ColouredEdge {
    pub a: EdgeIndex,
    pub b: EdgeIndex,
    pub colour: Colour,
}

#[derive(Clone, Debug)]
pub struct AuxGraph {
    instance: Arc<HamiltonianInstance>,
    red: Vec<FixedBitSet>,
    blue: Vec<FixedBitSet>,
    red_edges: usize,
    blue_edges: usize,
}

/// Builds the auxiliary graph; vertex order is `e_1 < e_2 < ... < e_n`.
pub fn build_auxiliary(instance: impl Into<Arc<HamiltonianInstance>>) -> AuxGraph {
    let instance = instance.into();
    let n = instance.n();
    let mut red = vec![FixedBitSet::with_capacity(n); n];
    let mut blue = vec![FixedBitSet::with_capacity(n); n];
    let mut count = 0;
    for (u, v) in instance.inner_edges() {
        let (a, b) = (instance.position_of(u), instance.position_of(v));
        blue[a].insert(b);
        blue[b].insert(a);
        let (ra, rb) = ((a + n - 1) % n, (b + n - 1) % n);
        red[ra].insert(rb);
        red[rb].insert(ra);
        count += 1;
    }
    AuxGraph {
        instance,
        red,
        blue,
        red_edges: count,
        blue_edges: count,
    }
}

impl AuxGraph {
    pub fn n(&self) -> usize {
        self.red.len()
    }

    pub fn instance(&self) -> &HamiltonianInstance {
        &self.instance
    }

    pub fn instance_arc(&self) -> &Arc<HamiltonianInstance> {
        &self.instance
    }

    #[inline]
    pub fn adjacency(&self, colour: Colour) -> &[FixedBitSet] {
        match colour {
            Colour::Red => &self.red,
            Colour::Blue => &self.blue,
        }
    }

    #[inline]
    pub fn neighbours(&self, v: usize, colour: Colour) -> &FixedBitSet {
        &self.adjacency(colour)[v]
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize, colour: Colour) -> bool {
        a < self.n() && self.adjacency(colour)[a].contains(b)
    }

    pub fn degree(&self, v: usize, colour: Colour) -> usize {
        self.adjacency(colour)[v].count_ones(..)
    }

    pub fn min_degree(&self, colour: Colour) -> usize {
        (0..self.n()).map(|v| self.degree(v, colour)).min().unwrap_or(0)
    }

    pub fn edge_count(&self, colour: Colour) -> usize {
        match colour {
            Colour::Red => self.red_edges,
            Colour::Blue => self.blue_edges,
        }
    }

    /// All edges of one colour as `(a, b)` with `a < b`, sorted.
    pub fn edges(&self, colour: Colour) -> Vec<(usize, usize)> {
        let adj = self.adjacency(colour);
        (0..self.n())
            .flat_map(|a| adj[a].ones().filter(move |&b| b > a).map(move |b| (a, b)))
            .collect()
    }

    /// Pairs carrying both colours.
    pub fn double_edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|a| {
                let mut both = self.red[a].clone();
                both.intersect_with(&self.blue[a]);
                both.ones().filter(move |&b| b > a).map(move |b| (a, b)).collect::<Vec<_>>()
            })
            .collect()
    }

    /// `|i - j| ≡ ±1 (mod n)`.
    #[inline]
    pub fn neighbouring(&self, i: usize, j: usize) -> bool {
        neighbouring(self.n(), i, j)
    }

    /// The inner edge of `G` (graph vertices) generating this coloured edge.
    pub fn inner_edge_of(&self, edge: ColouredEdge) -> Result<(usize, usize), AuxError> {
        let (a, b) = (edge.a.0, edge.b.0);
        if !self.has_edge(a, b, edge.colour) {
            return Err(AuxError::MissingEdge { a, b, colour: edge.colour });
        }
        Ok(self.inner_edge_unchecked(a, b, edge.colour))
    }

    #[inline]
    pub(crate) fn inner_edge_unchecked(&self, a: usize, b: usize, colour: Colour) -> (usize, usize) {
        let shift = match colour {
            Colour::Red => 1,
            Colour::Blue => 0,
        };
        (self.instance.vertex_at(a + shift), self.instance.vertex_at(b + shift))
    }
}

/// Neighbouring test on `n` cyclically ordered vertices.
#[inline]
pub fn neighbouring(n: usize, i: usize, j: usize) -> bool {
    let d = i.abs_diff(j);
    i != j && (d == 1 || d == n - 1)
}

/// Free-function form of [`AuxGraph::inner_edge_of`].
pub fn inner_edge_of(aux: &AuxGraph, edge: ColouredEdge) -> Result<(usize, usize), AuxError> {
    aux.inner_edge_of(edge)
}

/// Checks red-degree(e_i) = deg(v_{i+1}) - 2 and blue-degree(e_i) = deg(v_i) - 2
/// for every `i`; reports the first violating index.
pub fn check_degree_identity(instance: &HamiltonianInstance, aux: &AuxGraph) -> Result<(), AuxError> {
    let g = instance.graph();
    for i in 0..instance.n() {
        let red_ok = aux.degree(i, Colour::Red) + 2 == g.degree(instance.vertex_at(i + 1));
        let blue_ok = aux.degree(i, Colour::Blue) + 2 == g.degree(instance.vertex_at(i));
        if !(red_ok && blue_ok) {
            return Err(AuxError::DegreeIdentity { index: i });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::{complete, cycle};
    use crate::graph::{validate_hamiltonian, Graph};

    fn instance(g: Graph) -> HamiltonianInstance {
        let n = g.n();
        validate_hamiltonian(g, (0..n).collect()).unwrap()
    }

    /// Edges straight from the definition, looping over all index pairs.
    fn oracle_edges(inst: &HamiltonianInstance, colour: Colour) -> Vec<(usize, usize)> {
        let n = inst.n();
        let inner = inst.inner_edges();
        let is_inner = |x: usize, y: usize| inner.contains(&(x.min(y), x.max(y)));
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let (x, y) = match colour {
                    Colour::Red => (inst.vertex_at(i + 1), inst.vertex_at(j + 1)),
                    Colour::Blue => (inst.vertex_at(i), inst.vertex_at(j)),
                };
                if is_inner(x, y) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    #[test]
    fn cycle_has_empty_aux() {
        let aux = build_auxiliary(instance(cycle(7)));
        assert_eq!(aux.n(), 7);
        assert!(aux.edges(Colour::Red).is_empty());
        assert!(aux.edges(Colour::Blue).is_empty());
        assert!(check_degree_identity(aux.instance(), &aux).is_ok());
    }

    #[test]
    fn k4_has_two_double_edges() {
        let aux = build_auxiliary(instance(complete(4)));
        // red {e4,e2},{e1,e3}; blue {e1,e3},{e2,e4}
        assert_eq!(aux.edges(Colour::Red), vec![(0, 2), (1, 3)]);
        assert_eq!(aux.edges(Colour::Blue), vec![(0, 2), (1, 3)]);
        assert_eq!(aux.double_edges().len(), 2);
        assert!(check_degree_identity(aux.instance(), &aux).is_ok());
        for v in 0..4 {
            assert_eq!(aux.degree(v, Colour::Red), 1);
            assert_eq!(aux.degree(v, Colour::Blue), 1);
        }
    }

    #[test]
    fn k4_inner_edge_lookup() {
        let aux = build_auxiliary(instance(complete(4)));
        let red = ColouredEdge { a: EdgeIndex(0), b: EdgeIndex(2), colour: Colour::Red };
        assert_eq!(aux.inner_edge_of(red), Ok((1, 3)));
        let blue = ColouredEdge { colour: Colour::Blue, ..red };
        assert_eq!(aux.inner_edge_of(blue), Ok((0, 2)));
        let missing = ColouredEdge { a: EdgeIndex(0), b: EdgeIndex(1), colour: Colour::Red };
        assert!(aux.inner_edge_of(missing).is_err());
    }

    #[test]
    fn chorded_hexagon_matches_definition() {
        let mut g = cycle(6);
        g.add_edge(0, 2).unwrap();
        g.add_edge(1, 3).unwrap();
        let inst = instance(g);
        let aux = build_auxiliary(inst.clone());
        for colour in [Colour::Red, Colour::Blue] {
            assert_eq!(aux.edges(colour), oracle_edges(&inst, colour));
        }
        // red {e1,e3} from {v2,v4}, {e6,e2} from {v1,v3}
        assert_eq!(aux.edges(Colour::Red), vec![(0, 2), (1, 5)]);
        // blue {e1,e3} from {v1,v3}, {e2,e4} from {v2,v4}
        assert_eq!(aux.edges(Colour::Blue), vec![(0, 2), (1, 3)]);
    }

    #[test]
    fn k5_red_degrees_are_two() {
        let inst = validate_hamiltonian(complete(5), vec![3, 1, 4, 0, 2]).unwrap();
        let aux = build_auxiliary(inst.clone());
        assert!((0..5).all(|i| aux.degree(i, Colour::Red) == 2));
        assert!(check_degree_identity(&inst, &aux).is_ok());
        for colour in [Colour::Red, Colour::Blue] {
            assert_eq!(aux.edges(colour), oracle_edges(&inst, colour));
            for (a, b) in aux.edges(colour) {
                let e = ColouredEdge { a: EdgeIndex(a), b: EdgeIndex(b), colour };
                let (x, y) = aux.inner_edge_of(e).unwrap();
                assert!(inst.inner_edges().contains(&(x.min(y), x.max(y))));
            }
        }
    }

    #[test]
    fn neighbouring_wraps() {
        assert!(neighbouring(6, 0, 1));
        assert!(neighbouring(6, 0, 5));
        assert!(!neighbouring(6, 0, 2));
        assert!(!neighbouring(6, 3, 3));
    }
}
