use fixedbitset::FixedBitSet;

use super::AltCycle;
use crate::auxiliary::{AuxGraph, Colour};
use crate::error::SearchError;

/// Simple digraph: no loops, at most one arc per ordered pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    out: Vec<FixedBitSet>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph { out: vec![FixedBitSet::with_capacity(n); n] }
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    /// Adds `u -> v`; loops are ignored.
    pub fn add_arc(&mut self, u: usize, v: usize) {
        if u != v {
            self.out[u].insert(v);
        }
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v)
    }

    pub fn out_neighbours(&self, u: usize) -> &FixedBitSet {
        &self.out[u]
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out[u].count_ones(..)
    }

    pub fn min_out_degree(&self) -> usize {
        (0..self.n()).map(|u| self.out_degree(u)).min().unwrap_or(0)
    }

    pub fn arc_count(&self) -> usize {
        (0..self.n()).map(|u| self.out_degree(u)).sum()
    }
}

/// Digraph on the auxiliary vertices with an arc `v -> u` whenever at
/// least `threshold` vertices `w` have `vw` red and `wu` blue.
#[derive(Clone, Debug)]
pub struct PathDigraph {
    digraph: Digraph,
    witness: Vec<u32>,
    threshold: usize,
}

impl PathDigraph {
    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    /// Number of `w` with `vw` red and `wu` blue.
    pub fn witness_count(&self, v: usize, u: usize) -> usize {
        self.witness[v * self.digraph.n() + u] as usize
    }
}

pub fn build_path_digraph(aux: &AuxGraph, threshold: usize) -> PathDigraph {
    let n = aux.n();
    let threshold = threshold.max(1);
    let mut digraph = Digraph::new(n);
    let mut witness = vec![0u32; n * n];
    for v in 0..n {
        let red = aux.neighbours(v, Colour::Red);
        for u in 0..n {
            if u == v {
                continue;
            }
            let count = red.intersection_count(aux.neighbours(u, Colour::Blue));
            witness[v * n + u] = count as u32;
            if count >= threshold {
                digraph.add_arc(v, u);
            }
        }
    }
    PathDigraph { digraph, witness, threshold }
}

/// All simple directed cycles of length `2..=max_len`, each listed once,
/// starting at its smallest vertex. Output order is lexicographic in the
/// vertex sequence.
pub fn enumerate_short_directed_cycles(d: &Digraph, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_short_cycle(d, max_len, |c| out.push(c.to_vec()));
    out
}

/// `counts[l]` = number of directed cycles of length `l`, for `l <= max_len`.
pub fn count_cycles_by_length(d: &Digraph, max_len: usize) -> Vec<u64> {
    let mut counts = vec![0u64; max_len + 1];
    for_each_short_cycle(d, max_len, |c| counts[c.len()] += 1);
    counts
}

fn for_each_short_cycle(d: &Digraph, max_len: usize, mut visit: impl FnMut(&[usize])) {
    let n = d.n();
    if max_len < 2 {
        return;
    }
    let mut path = Vec::with_capacity(max_len);
    let mut on_path = FixedBitSet::with_capacity(n);
    for start in 0..n {
        path.clear();
        path.push(start);
        on_path.insert(start);
        extend(d, start, max_len, &mut path, &mut on_path, &mut visit);
        on_path.remove(start);
    }
}

fn extend(
    d: &Digraph,
    start: usize,
    max_len: usize,
    path: &mut Vec<usize>,
    on_path: &mut FixedBitSet,
    visit: &mut impl FnMut(&[usize]),
) {
    let last = *path.last().unwrap();
    for next in d.out_neighbours(last).ones() {
        if next == start && path.len() >= 2 {
            visit(path);
        } else if next > start && !on_path.contains(next) && path.len() < max_len {
            path.push(next);
            on_path.insert(next);
            extend(d, start, max_len, path, on_path, visit);
            on_path.remove(next);
            path.pop();
        }
    }
}

/// Replaces each arc `v -> u` of a directed cycle by a red-blue path
/// `v w u`, choosing pairwise distinct witnesses outside `used` and outside
/// the cycle itself. Witness choices backtrack; lowest indices win.
pub fn expand_to_alternating(aux: &AuxGraph, dcycle: &[usize], used: &FixedBitSet) -> Result<AltCycle, SearchError> {
    let n = aux.n();
    let len = dcycle.len();
    let mut blocked = FixedBitSet::with_capacity(n);
    blocked.union_with(used);
    blocked.grow(n);
    for &v in dcycle {
        blocked.insert(v);
    }
    let mut chosen = vec![usize::MAX; len];
    if let Err(arc) = choose_witnesses(aux, dcycle, 0, &mut blocked, &mut chosen) {
        return Err(SearchError::WitnessExhausted { from: dcycle[arc], to: dcycle[(arc + 1) % len] });
    }
    let mut vertices = Vec::with_capacity(2 * len);
    for (i, &v) in dcycle.iter().enumerate() {
        vertices.push(v);
        vertices.push(chosen[i]);
    }
    AltCycle::new(vertices, Colour::Red).map_err(|e| SearchError::InvalidParameter(e.to_string()))
}

/// On failure returns the deepest arc that ran out of witnesses.
fn choose_witnesses(
    aux: &AuxGraph,
    dcycle: &[usize],
    arc: usize,
    blocked: &mut FixedBitSet,
    chosen: &mut [usize],
) -> Result<(), usize> {
    if arc == dcycle.len() {
        return Ok(());
    }
    let (v, u) = (dcycle[arc], dcycle[(arc + 1) % dcycle.len()]);
    let mut candidates = aux.neighbours(v, Colour::Red).clone();
    candidates.intersect_with(aux.neighbours(u, Colour::Blue));
    candidates.difference_with(blocked);
    let mut deepest = arc;
    for w in candidates.ones() {
        chosen[arc] = w;
        blocked.insert(w);
        match choose_witnesses(aux, dcycle, arc + 1, blocked, chosen) {
            Ok(()) => return Ok(()),
            Err(d) => deepest = deepest.max(d),
        }
        blocked.remove(w);
    }
    Err(deepest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::auxiliary::build_auxiliary;
    use crate::generate::gen_random_hamiltonian;
    use crate::graph::{named::complete, validate_hamiltonian};

    fn digraph(n: usize, arcs: &[(usize, usize)]) -> Digraph {
        let mut d = Digraph::new(n);
        for &(u, v) in arcs {
            d.add_arc(u, v);
        }
        d
    }

    fn brute_witness(aux: &AuxGraph, v: usize, u: usize) -> usize {
        (0..aux.n())
            .filter(|&w| aux.has_edge(v, w, Colour::Red) && aux.has_edge(w, u, Colour::Blue))
            .count()
    }

    #[test]
    fn empty_aux_gives_no_arcs() {
        let aux = build_auxiliary(validate_hamiltonian(crate::graph::named::cycle(6), (0..6).collect()).unwrap());
        assert_eq!(build_path_digraph(&aux, 1).digraph().arc_count(), 0);
    }

    #[test]
    fn k4_path_digraph_matches_triple_loop() {
        let aux = build_auxiliary(validate_hamiltonian(complete(4), vec![0, 1, 2, 3]).unwrap());
        let pd = build_path_digraph(&aux, 1);
        for v in 0..4 {
            for u in 0..4 {
                let w = if u == v { 0 } else { brute_witness(&aux, v, u) };
                assert_eq!(pd.digraph().has_arc(v, u), w >= 1, "arc {v}->{u}");
            }
        }
        // e1 -red- e3 -blue- e1 only returns to e1, so no loop-free arc from e1
        assert_eq!(pd.digraph().arc_count(), 0);
        assert!(build_path_digraph(&aux, 5).digraph().arc_count() == 0);
    }

    #[test]
    fn threshold_above_n_has_no_arcs() {
        let inst = gen_random_hamiltonian(20, 0.5, 3).unwrap();
        let aux = build_auxiliary(inst);
        assert_eq!(build_path_digraph(&aux, 21).digraph().arc_count(), 0);
    }

    #[test]
    fn cycles_of_two_and_three() {
        assert_eq!(enumerate_short_directed_cycles(&digraph(2, &[(0, 1), (1, 0)]), 2), vec![vec![0, 1]]);
        let all: Vec<_> = (0..3).flat_map(|u| (0..3).map(move |v| (u, v))).collect();
        let cycles = enumerate_short_directed_cycles(&digraph(3, &all), 3);
        assert_eq!(cycles.iter().filter(|c| c.len() == 2).count(), 3);
        assert_eq!(cycles.iter().filter(|c| c.len() == 3).count(), 2);
        let dag = digraph(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]);
        assert!(enumerate_short_directed_cycles(&dag, 4).is_empty());
    }

    fn aux_with_edges(n: usize, red: &[(usize, usize)], blue: &[(usize, usize)]) -> AuxGraph {
        // Reverse-engineer inner edges: blue {a,b} <- {v_a,v_b}; red {a,b} <- {v_{a+1},v_{b+1}}.
        let mut g = crate::graph::named::cycle(n);
        for &(a, b) in blue {
            g.add_edge(a, b).unwrap();
        }
        for &(a, b) in red {
            g.add_edge((a + 1) % n, (b + 1) % n).unwrap();
        }
        build_auxiliary(validate_hamiltonian(g, (0..n).collect()).unwrap())
    }

    #[test]
    fn expand_two_cycle_with_distinct_witnesses() {
        // v=0, u=4, w1=2 (0-2 red, 2-4 blue), w2=6 (4-6 red, 6-0 blue)
        let aux = aux_with_edges(10, &[(0, 2), (4, 6)], &[(2, 4), (6, 0)]);
        let c = expand_to_alternating(&aux, &[0, 4], &FixedBitSet::with_capacity(10)).unwrap();
        assert_eq!(c.vertices(), &[0, 2, 4, 6]);
        c.check(&aux).unwrap();
    }

    #[test]
    fn expand_fails_when_witness_shared() {
        // both arcs only have witness 2
        let aux = aux_with_edges(10, &[(0, 2), (4, 2)], &[(2, 4), (2, 0)]);
        let err = expand_to_alternating(&aux, &[0, 4], &FixedBitSet::with_capacity(10)).unwrap_err();
        assert!(matches!(err, SearchError::WitnessExhausted { .. }));
    }

    #[test]
    fn expand_three_cycles_on_dense_aux() {
        let aux = build_auxiliary(gen_random_hamiltonian(30, 0.5, 11).unwrap());
        let pd = build_path_digraph(&aux, 1);
        let threes: Vec<_> =
            enumerate_short_directed_cycles(pd.digraph(), 3).into_iter().filter(|c| c.len() == 3).take(50).collect();
        assert!(!threes.is_empty());
        let mut expanded = 0;
        for c in threes {
            if let Ok(alt) = expand_to_alternating(&aux, &c, &FixedBitSet::with_capacity(30)) {
                assert_eq!(alt.len(), 6);
                alt.check(&aux).unwrap();
                expanded += 1;
            }
        }
        assert!(expanded > 0);
    }
}
