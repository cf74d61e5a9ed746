//! Exhaustive ground truth: every achievable 2-factor component count of a
//! small graph, a second independent enumerator over cycle covers, and a
//! budgeted Hamilton cycle search.

use std::collections::{BTreeMap, BTreeSet};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::OracleError;
use crate::exec::{self, Execution};
use crate::graph::{Graph, TwoFactor};

pub const DEFAULT_ORACLE_CAP: usize = 14;

/// Achievable component counts with the first witness found for each.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub achievable: BTreeSet<usize>,
    pub witnesses: BTreeMap<usize, TwoFactor>,
}

impl OracleResult {
    pub fn contains(&self, k: usize) -> bool {
        self.achievable.contains(&k)
    }

    fn record(&mut self, k: usize, witness: impl FnOnce() -> TwoFactor) {
        if self.achievable.insert(k) {
            self.witnesses.insert(k, witness());
        }
    }

    /// Union; on a shared count the witness of `self` wins.
    fn absorb(&mut self, other: OracleResult) {
        for (k, w) in other.witnesses {
            if self.achievable.insert(k) {
                self.witnesses.insert(k, w);
            }
        }
    }
}

/// `brute_force_two_factors_with` using the default execution mode.
pub fn brute_force_two_factors(graph: &Graph, n_cap: usize) -> Result<OracleResult, OracleError> {
    brute_force_two_factors_with(graph, n_cap, Execution::default())
}

/// Exhaustive search over spanning 2-regular edge subsets, backtracking on
/// vertices in id order. The branches at vertex 0 may run in parallel; the
/// merge keeps the witness of the earliest branch, so the result does not
/// depend on the execution mode.
pub fn brute_force_two_factors_with(graph: &Graph, n_cap: usize, exec: Execution) -> Result<OracleResult, OracleError> {
    let n = graph.n();
    if n > n_cap {
        return Err(OracleError::TooLarge { n, cap: n_cap });
    }
    if n < 3 || graph.min_degree() < 2 {
        return Ok(OracleResult::default());
    }
    let first: Vec<usize> = graph.neighbours(0).ones().collect();
    let mut roots = Vec::new();
    for (i, &a) in first.iter().enumerate() {
        for &b in &first[i + 1..] {
            roots.push((a, b));
        }
    }
    let partial = exec::map_collect(exec, &roots, |&(a, b)| {
        let mut s = FactorSearch::new(graph);
        s.link(0, a);
        s.link(0, b);
        s.run(1);
        s.result
    });
    let mut out = OracleResult::default();
    for r in partial {
        out.absorb(r);
    }
    Ok(out)
}

struct FactorSearch<'a> {
    graph: &'a Graph,
    n: usize,
    nbrs: Vec<[usize; 2]>,
    deg: Vec<usize>,
    full: usize,
    result: OracleResult,
}

impl<'a> FactorSearch<'a> {
    fn new(graph: &'a Graph) -> Self {
        let n = graph.n();
        FactorSearch { graph, n, nbrs: vec![[usize::MAX; 2]; n], deg: vec![0; n], full: n / 3, result: OracleResult::default() }
    }

    fn link(&mut self, u: usize, v: usize) {
        self.nbrs[u][self.deg[u]] = v;
        self.nbrs[v][self.deg[v]] = u;
        self.deg[u] += 1;
        self.deg[v] += 1;
    }

    fn unlink(&mut self, u: usize, v: usize) {
        self.deg[u] -= 1;
        self.deg[v] -= 1;
    }

    fn done(&self) -> bool {
        self.result.achievable.len() == self.full
    }

    /// Saturates vertex `v`, all smaller vertices being saturated already.
    fn run(&mut self, v: usize) {
        if self.done() {
            return;
        }
        if v == self.n {
            self.leaf();
            return;
        }
        match self.deg[v] {
            2 => self.run(v + 1),
            d => {
                let open: Vec<usize> = self.graph.neighbours(v).ones().filter(|&w| w > v && self.deg[w] < 2).collect();
                if d == 1 {
                    for &w in &open {
                        self.link(v, w);
                        self.run(v + 1);
                        self.unlink(v, w);
                    }
                } else {
                    for (i, &a) in open.iter().enumerate() {
                        for &b in &open[i + 1..] {
                            self.link(v, a);
                            self.link(v, b);
                            self.run(v + 1);
                            self.unlink(v, b);
                            self.unlink(v, a);
                        }
                    }
                }
            }
        }
    }

    fn leaf(&mut self) {
        let mut seen = vec![false; self.n];
        let mut cycles = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut cycle = vec![s];
            seen[s] = true;
            let (mut prev, mut cur) = (s, self.nbrs[s][0]);
            while cur != s {
                seen[cur] = true;
                cycle.push(cur);
                let next = if self.nbrs[cur][0] == prev { self.nbrs[cur][1] } else { self.nbrs[cur][0] };
                prev = cur;
                cur = next;
            }
            cycles.push(cycle);
        }
        self.result.record(cycles.len(), || TwoFactor::from_cycles_unchecked(cycles));
    }
}

/// Independent check: component counts of 2-factors via cycle covers, i.e.
/// permutations `σ` with `σ(v)` adjacent to `v`, no fixed points and no
/// 2-cycles. Each 2-factor with `c` cycles appears as `2^c` covers with `c`
/// permutation cycles.
pub fn cycle_cover_counts(graph: &Graph, n_cap: usize) -> Result<BTreeSet<usize>, OracleError> {
    let n = graph.n();
    if n > n_cap {
        return Err(OracleError::TooLarge { n, cap: n_cap });
    }
    let mut sigma = vec![usize::MAX; n];
    let mut taken = vec![false; n];
    let mut out = BTreeSet::new();
    if n >= 3 {
        cover(graph, 0, &mut sigma, &mut taken, &mut out);
    }
    Ok(out)
}

fn cover(graph: &Graph, v: usize, sigma: &mut [usize], taken: &mut [bool], out: &mut BTreeSet<usize>) {
    let n = sigma.len();
    if v == n {
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for s in 0..n {
            if !seen[s] {
                cycles += 1;
                let mut x = s;
                while !seen[x] {
                    seen[x] = true;
                    x = sigma[x];
                }
            }
        }
        out.insert(cycles);
        return;
    }
    for w in graph.neighbours(v).ones() {
        if taken[w] || (w < v && sigma[w] == v) {
            continue;
        }
        sigma[v] = w;
        taken[w] = true;
        cover(graph, v + 1, sigma, taken, out);
        taken[w] = false;
        sigma[v] = usize::MAX;
    }
}

/// Backtracking Hamilton cycle search from vertex 0, trying low-degree
/// neighbours first. `budget` bounds the number of path extensions.
pub fn find_hamilton_cycle(graph: &Graph, budget: u64) -> Result<Vec<usize>, OracleError> {
    let n = graph.n();
    let exhaustive_fail = OracleError::NoHamiltonCycle { budget, exhaustive: true };
    if n < 3 || graph.min_degree() < 2 {
        return Err(exhaustive_fail);
    }
    let mut h = HamSearch {
        graph,
        path: vec![0],
        on_path: FixedBitSet::with_capacity(n),
        nodes: 0,
        budget,
        exhausted: false,
    };
    h.on_path.insert(0);
    if h.extend() {
        Ok(h.path)
    } else if h.exhausted {
        Err(OracleError::NoHamiltonCycle { budget, exhaustive: false })
    } else {
        Err(exhaustive_fail)
    }
}

struct HamSearch<'a> {
    graph: &'a Graph,
    path: Vec<usize>,
    on_path: FixedBitSet,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl HamSearch<'_> {
    fn extend(&mut self) -> bool {
        let n = self.graph.n();
        let last = *self.path.last().unwrap();
        if self.path.len() == n {
            return self.graph.has_edge(last, 0);
        }
        if self.stranded() {
            return false;
        }
        let mut next: Vec<usize> = self.graph.neighbours(last).ones().filter(|&w| !self.on_path.contains(w)).collect();
        next.sort_by_key(|&w| (self.free_degree(w), w));
        for w in next {
            if self.nodes >= self.budget {
                self.exhausted = true;
                return false;
            }
            self.nodes += 1;
            self.path.push(w);
            self.on_path.insert(w);
            if self.extend() {
                return true;
            }
            self.on_path.remove(w);
            self.path.pop();
        }
        false
    }

    /// Neighbours of `w` still usable: off the path or a path end.
    fn free_degree(&self, w: usize) -> usize {
        let last = *self.path.last().unwrap();
        self.graph.neighbours(w).ones().filter(|&x| !self.on_path.contains(x) || x == last || x == 0).count()
    }

    /// Some vertex off the path can no longer get two cycle neighbours.
    fn stranded(&self) -> bool {
        (0..self.graph.n()).any(|w| !self.on_path.contains(w) && self.free_degree(w) < 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{extremal_hamilton_order, gen_extremal, gen_random_hamiltonian};
    use crate::graph::{count_components, named, verify_two_factor};

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    #[test]
    fn small_named_graphs() {
        assert_eq!(brute_force_two_factors(&named::cycle(6), 14).unwrap().achievable, set(&[1]));
        assert_eq!(brute_force_two_factors(&named::complete(6), 14).unwrap().achievable, set(&[1, 2]));
        assert_eq!(brute_force_two_factors(&named::star(4), 14).unwrap().achievable, set(&[]));
        assert!(matches!(brute_force_two_factors(&named::cycle(15), 14), Err(OracleError::TooLarge { .. })));
    }

    #[test]
    fn witnesses_verify() {
        let g = named::complete(9);
        let r = brute_force_two_factors(&g, 14).unwrap();
        assert_eq!(r.achievable, set(&[1, 2, 3]));
        for (&k, w) in &r.witnesses {
            let f = verify_two_factor(&g, &w.edges()).unwrap();
            assert_eq!(count_components(&f), k);
        }
    }

    #[test]
    fn extremal_misses_k() {
        let g = gen_extremal(10, 3).unwrap();
        assert!(!brute_force_two_factors(&g, 14).unwrap().contains(3));
    }

    #[test]
    fn enumerators_agree() {
        for seed in 0..6 {
            let g = gen_random_hamiltonian(9, 0.45, seed).unwrap().graph().clone();
            let a = brute_force_two_factors(&g, 14).unwrap().achievable;
            assert_eq!(a, cycle_cover_counts(&g, 10).unwrap());
        }
    }

    #[test]
    fn execution_modes_agree() {
        let g = gen_random_hamiltonian(11, 0.5, 3).unwrap().graph().clone();
        assert_eq!(
            brute_force_two_factors_with(&g, 14, Execution::Sequential).unwrap(),
            brute_force_two_factors_with(&g, 14, Execution::Parallel).unwrap()
        );
    }

    #[test]
    fn hamilton_search() {
        assert_eq!(find_hamilton_cycle(&named::cycle(7), 1000).unwrap().len(), 7);
        let g = gen_extremal(10, 3).unwrap();
        let h = find_hamilton_cycle(&g, 100_000).unwrap();
        crate::graph::validate_hamiltonian(g, h).unwrap();
        assert!(extremal_hamilton_order(10, 3).is_ok());
        assert_eq!(
            find_hamilton_cycle(&named::star(4), 1000),
            Err(OracleError::NoHamiltonCycle { budget: 1000, exhaustive: true })
        );
        // Petersen graph is not Hamiltonian
        let mut p = Graph::empty(10);
        for i in 0..5 {
            p.add_edge(i, (i + 1) % 5).unwrap();
            p.add_edge(i, i + 5).unwrap();
            p.add_edge(5 + i, 5 + (i + 2) % 5).unwrap();
        }
        assert_eq!(
            find_hamilton_cycle(&p, 1_000_000),
            Err(OracleError::NoHamiltonCycle { budget: 1_000_000, exhaustive: true })
        );
        assert_eq!(brute_force_two_factors(&p, 14).unwrap().achievable, set(&[2]));
    }
}
