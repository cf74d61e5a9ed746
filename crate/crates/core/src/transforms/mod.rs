//! The correspondence `S -> F(S)` and the two cycle-count-steering pattern
//! transforms.
//!
//! `F(S)` keeps every Hamilton edge that is not a vertex of `S` and adds the
//! inner edge behind every edge of `S`. Going up duplicates one cycle of a
//! pattern and adds exactly one cycle to `F`; going down triples the cycle
//! through a separating vertex with rewired edges and removes exactly one.

mod embed;
mod enumerate;
mod pattern;

pub use embed::{embed_child_incremental, embed_pattern, embed_pattern_direct, DirectSearch};
pub use enumerate::{enumerate_systems, for_each_system, EnumerationBudgetExhausted};
pub use pattern::{going_down_pattern, going_up_pattern, AbstractPattern, PatternLabel, Slot};

use serde::Serialize;

use crate::altcycle::AltCycle;
use crate::auxiliary::{neighbouring, AuxGraph, Colour};
use crate::error::TransformError;
use crate::graph::{verify_two_factor, TwoFactor};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Member {
    vertex: usize,
    red: usize,
    blue: usize,
}

/// Vertex-disjoint union of colour-alternating cycles in one auxiliary graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AltCycleSystem {
    cycles: Vec<AltCycle>,
    #[serde(skip)]
    members: Vec<Member>,
}

impl AltCycleSystem {
    pub fn empty() -> Self {
        AltCycleSystem { cycles: Vec::new(), members: Vec::new() }
    }

    /// Validates each cycle against the host and pairwise disjointness.
    /// Cycles are stored in canonical form, sorted by smallest vertex.
    pub fn new(aux: &AuxGraph, cycles: Vec<AltCycle>) -> Result<Self, TransformError> {
        for c in &cycles {
            c.check(aux)?;
        }
        Self::from_checked(cycles)
    }

    pub(crate) fn from_checked(cycles: Vec<AltCycle>) -> Result<Self, TransformError> {
        let mut cycles: Vec<AltCycle> = cycles.iter().map(AltCycle::canonical).collect();
        cycles.sort_by_key(|c| c.vertices()[0]);
        let mut members = Vec::new();
        for c in &cycles {
            for i in 0..c.len() {
                let (red, blue) = c.mates_at(i);
                members.push(Member { vertex: c.vertices()[i], red, blue });
            }
        }
        members.sort_by_key(|m| m.vertex);
        if let Some(w) = members.windows(2).find(|w| w[0].vertex == w[1].vertex) {
            return Err(TransformError::Overlap { vertex: w[0].vertex });
        }
        Ok(AltCycleSystem { cycles, members })
    }

    /// Rebuilds from JSON produced by serializing a system, re-checking
    /// everything against `aux`.
    pub fn from_json(aux: &AuxGraph, json: &str) -> Result<Self, TransformError> {
        #[derive(serde::Deserialize)]
        struct Repr {
            cycles: Vec<AltCycle>,
        }
        let repr: Repr = serde_json::from_str(json).map_err(|e| TransformError::Json(e.to_string()))?;
        Self::new(aux, repr.cycles)
    }

    pub fn cycles(&self) -> &[AltCycle] {
        &self.cycles
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Vertices in increasing order.
    pub fn vertices(&self) -> Vec<usize> {
        self.members.iter().map(|m| m.vertex).collect()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.member(v).is_some()
    }

    fn member(&self, v: usize) -> Option<&Member> {
        self.members.binary_search_by_key(&v, |m| m.vertex).ok().map(|i| &self.members[i])
    }

    pub fn red_mate(&self, v: usize) -> Option<usize> {
        self.member(v).map(|m| m.red)
    }

    pub fn blue_mate(&self, v: usize) -> Option<usize> {
        self.member(v).map(|m| m.blue)
    }

    /// Every edge once, as `(a, b, colour)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Colour)> + '_ {
        self.cycles.iter().flat_map(|c| c.edges().collect::<Vec<_>>())
    }

    /// First neighbouring pair, if any.
    pub fn neighbouring_pair(&self, n: usize) -> Option<(usize, usize)> {
        let vs = self.vertices();
        vs.windows(2)
            .find(|w| neighbouring(n, w[0], w[1]))
            .map(|w| (w[0], w[1]))
            .or_else(|| (vs.len() >= 2 && neighbouring(n, vs[0], vs[vs.len() - 1])).then(|| (vs[0], vs[vs.len() - 1])))
    }

    pub fn no_neighbours(&self, n: usize) -> bool {
        self.neighbouring_pair(n).is_none()
    }

    /// No pair of system vertices joined by both a red and a blue system edge.
    pub fn no_double_edges(&self) -> bool {
        self.members.iter().all(|m| m.red != m.blue)
    }
}

/// `F(S)`: Hamilton edges outside `V(S)` plus the inner edge behind every
/// edge of `S`, verified to be a 2-factor.
pub fn two_factor_of(aux: &AuxGraph, system: &AltCycleSystem) -> Result<TwoFactor, TransformError> {
    let n = aux.n();
    if let Some((a, b)) = system.neighbouring_pair(n) {
        return Err(TransformError::NeighbouringVertices { a, b });
    }
    let inst = aux.instance();
    let mut edges = Vec::with_capacity(n);
    for i in 0..n {
        if !system.contains(i) {
            edges.push((inst.vertex_at(i), inst.vertex_at(i + 1)));
        }
    }
    for (a, b, colour) in system.edges() {
        edges.push(aux.inner_edge_unchecked(a, b, colour));
    }
    Ok(verify_two_factor(inst.graph(), &edges)?)
}

/// Vertices `e_k` of `S` whose endpoints `v_k, v_{k+1}` lie on different
/// cycles of `factor`, in increasing order.
pub fn separating_vertices(aux: &AuxGraph, system: &AltCycleSystem, factor: &TwoFactor) -> Vec<usize> {
    let labels = factor.component_labels();
    let inst = aux.instance();
    system
        .vertices()
        .into_iter()
        .filter(|&k| labels[inst.vertex_at(k)] != labels[inst.vertex_at(k + 1)])
        .collect()
}
