//! Colour-alternating cycles and the search machinery that finds them:
//! the red-blue witness digraph, blow-up search, median-split ordering and
//! thinning to a non-neighbouring blow-up.

mod blowup;
mod digraph;

pub use blowup::{
    find_alternating_cycle_blowup, max_ordered_size, order_blowup, thin_non_neighbouring, BlowupEmbedding, BlowupSearch,
    SearchStrategy,
};
pub use digraph::{
    build_path_digraph, count_cycles_by_length, enumerate_short_directed_cycles, expand_to_alternating, Digraph,
    PathDigraph,
};

use serde::{Deserialize, Serialize};

use crate::auxiliary::{AuxGraph, Colour};
use crate::error::{CycleError, SearchError};

/// A closed walk `x_0 x_1 ... x_{2m-1} x_0` whose edges alternate in colour.
///
/// Edge `x_i x_{i+1}` has colour `first` for even `i` and the other colour
/// for odd `i`. Length 2 is a double edge used once in each colour.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "AltCycleRepr", try_from = "AltCycleRepr")]
pub struct AltCycle {
    vertices: Vec<usize>,
    first: Colour,
}

impl AltCycle {
    pub fn new(vertices: Vec<usize>, first: Colour) -> Result<Self, CycleError> {
        let len = vertices.len();
        if len < 2 || !len.is_multiple_of(2) {
            return Err(CycleError::BadLength { len });
        }
        for (i, &v) in vertices.iter().enumerate() {
            if vertices[..i].contains(&v) {
                return Err(CycleError::Repeated { vertex: v });
            }
        }
        Ok(AltCycle { vertices, first })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn first_colour(&self) -> Colour {
        self.first
    }

    /// Colour of the edge leaving position `i`.
    pub fn colour_at(&self, i: usize) -> Colour {
        if i.is_multiple_of(2) {
            self.first
        } else {
            self.first.other()
        }
    }

    /// `(x_i, x_{i+1}, colour)` for every edge of the cycle.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Colour)> + '_ {
        let len = self.len();
        (0..len).map(move |i| (self.vertices[i], self.vertices[(i + 1) % len], self.colour_at(i)))
    }

    /// `(red mate, blue mate)` of the vertex at position `i`.
    pub fn mates_at(&self, i: usize) -> (usize, usize) {
        let len = self.len();
        let next = self.vertices[(i + 1) % len];
        let prev = self.vertices[(i + len - 1) % len];
        if self.colour_at(i) == Colour::Red {
            (next, prev)
        } else {
            (prev, next)
        }
    }

    /// Checks every edge against the host graph.
    pub fn check(&self, aux: &AuxGraph) -> Result<(), CycleError> {
        let n = aux.n();
        if let Some(&v) = self.vertices.iter().find(|&&v| v >= n) {
            return Err(CycleError::OutOfRange { vertex: v });
        }
        for (a, b, colour) in self.edges() {
            if !aux.has_edge(a, b, colour) {
                return Err(CycleError::MissingEdge { a, b, colour });
            }
        }
        Ok(())
    }

    /// Rotation starting at the smallest vertex, oriented so that its red
    /// edge comes first.
    pub fn canonical(&self) -> AltCycle {
        let len = self.len();
        let i = (0..len).min_by_key(|&i| self.vertices[i]).unwrap_or(0);
        if self.colour_at(i) == Colour::Red {
            let mut vertices = self.vertices.clone();
            vertices.rotate_left(i);
            AltCycle { vertices, first: Colour::Red }
        } else {
            let vertices = (0..len).map(|s| self.vertices[(i + len - s) % len]).collect();
            AltCycle { vertices, first: Colour::Red }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct AltCycleRepr {
    /// 1-based auxiliary vertex ids `e_i`.
    vertices: Vec<usize>,
    colours: Vec<Colour>,
}

impl From<AltCycle> for AltCycleRepr {
    fn from(c: AltCycle) -> Self {
        AltCycleRepr {
            colours: (0..c.len()).map(|i| c.colour_at(i)).collect(),
            vertices: c.vertices.iter().map(|v| v + 1).collect(),
        }
    }
}

impl TryFrom<AltCycleRepr> for AltCycle {
    type Error = CycleError;

    fn try_from(r: AltCycleRepr) -> Result<Self, CycleError> {
        if r.colours.len() != r.vertices.len() || r.vertices.is_empty() {
            return Err(CycleError::BadLength { len: r.vertices.len() });
        }
        let first = r.colours[0];
        let alternates = r
            .colours
            .iter()
            .enumerate()
            .all(|(i, &c)| c == if i % 2 == 0 { first } else { first.other() });
        if !alternates {
            return Err(CycleError::BadLength { len: r.vertices.len() });
        }
        if r.vertices.contains(&0) {
            return Err(CycleError::OutOfRange { vertex: usize::MAX });
        }
        AltCycle::new(r.vertices.iter().map(|v| v - 1).collect(), first)
    }
}

/// Constants of the many-cycles lemma derived from a density `gamma`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchParams {
    pub gamma: f64,
    /// `⌈(8/γ²)·ln(8/γ²)⌉`
    pub k: u64,
    /// Longest alternating cycle length, `2k`.
    #[serde(rename = "L")]
    pub l: u64,
    /// Vertex-count threshold `⌈8k/γ²⌉`.
    #[serde(rename = "K")]
    pub big_k: u64,
    /// `(γ/2)^{2k} / (4 k^{k+1})`; underflows to 0 for small gamma, see `log10_c`.
    pub c: f64,
    pub log10_c: f64,
}

/// Evaluates the many-cycles constants for `0 < gamma < 1`.
pub fn lemma_params(gamma: f64) -> Result<SearchParams, SearchError> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(SearchError::GammaOutOfRange { gamma });
    }
    let base = 8.0 / (gamma * gamma);
    let k = (base * base.ln()).ceil() as u64;
    let kf = k as f64;
    let big_k = (8.0 * kf / (gamma * gamma)).ceil() as u64;
    let log10_c = 2.0 * kf * (gamma / 2.0).log10() - 4f64.log10() - (kf + 1.0) * kf.log10();
    Ok(SearchParams {
        gamma,
        k,
        l: 2 * k,
        big_k,
        c: 10f64.powf(log10_c),
        log10_c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::auxiliary::build_auxiliary;
    use crate::graph::{named::complete, validate_hamiltonian};

    #[test]
    fn lemma_params_at_one_half() {
        let p = lemma_params(0.5).unwrap();
        assert_eq!((p.k, p.l, p.big_k), (111, 222, 3552));
        // (1/4)^222 / (4 * 111^112), evaluated in log space
        let expect = 222.0 * 0.25f64.log10() - 4f64.log10() - 112.0 * 111f64.log10();
        assert!((p.log10_c - expect).abs() < 1e-9);
    }

    #[test]
    fn lemma_params_near_one_and_out_of_range() {
        // the open upper end approaches ⌈8 ln 8⌉ = 17
        let p = lemma_params(1.0 - 1e-12).unwrap();
        assert_eq!(p.k, 17);
        assert!(lemma_params(0.0).is_err());
        assert!(lemma_params(1.0).is_err());
        assert!(lemma_params(-0.3).is_err());
    }

    #[test]
    fn canonical_rotation_and_orientation() {
        let c = AltCycle::new(vec![5, 2, 7, 3], Colour::Red).unwrap();
        // edges: 5-2 red, 2-7 blue, 7-3 red, 3-5 blue; at 2 the red edge goes to 5
        let k = c.canonical();
        assert_eq!(k.vertices(), &[2, 5, 3, 7]);
        assert_eq!(k.first_colour(), Colour::Red);
        let edges: Vec<_> = c.edges().map(|(a, b, col)| (a.min(b), a.max(b), col)).collect();
        for e in k.edges().map(|(a, b, col)| (a.min(b), a.max(b), col)) {
            assert!(edges.contains(&e));
        }
    }

    #[test]
    fn rejects_bad_lengths() {
        assert!(AltCycle::new(vec![1, 2, 3], Colour::Red).is_err());
        assert!(AltCycle::new(vec![1], Colour::Red).is_err());
        assert!(AltCycle::new(vec![1, 1], Colour::Red).is_err());
    }

    #[test]
    fn json_round_trip_is_one_based() {
        let c = AltCycle::new(vec![0, 2], Colour::Red).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"vertices":[1,3],"colours":["red","blue"]}"#);
        assert_eq!(serde_json::from_str::<AltCycle>(&s).unwrap(), c);
        assert!(serde_json::from_str::<AltCycle>(r#"{"vertices":[1,3],"colours":["red","red"]}"#).is_err());
    }

    #[test]
    fn host_check() {
        let aux = build_auxiliary(validate_hamiltonian(complete(4), vec![0, 1, 2, 3]).unwrap());
        assert!(AltCycle::new(vec![0, 2], Colour::Red).unwrap().check(&aux).is_ok());
        assert!(AltCycle::new(vec![0, 1], Colour::Red).unwrap().check(&aux).is_err());
    }
}
