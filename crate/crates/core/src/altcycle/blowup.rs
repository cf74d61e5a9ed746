use std::sync::atomic::{AtomicBool, Ordering};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::auxiliary::{neighbouring, AuxGraph, Colour};
use crate::error::SearchError;
use crate::exec::{self, Execution};

/// A blow-up `C(t)` of an abstract alternating cycle `C` inside an
/// auxiliary graph.
///
/// Cluster `i` replaces pattern vertex `i`; pattern edge `i -> i+1` has
/// colour `first` for even `i` and the other colour for odd `i`. Every
/// cross pair of two consecutive clusters is an edge of that colour.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "BlowupRepr", try_from = "BlowupRepr")]
pub struct BlowupEmbedding {
    first: Colour,
    clusters: Vec<Vec<usize>>,
    ordered: bool,
}

impl BlowupEmbedding {
    /// Clusters are sorted on construction; `ordered` is computed, not trusted.
    pub fn new(first: Colour, mut clusters: Vec<Vec<usize>>) -> Result<Self, SearchError> {
        if clusters.len() < 2 || !clusters.len().is_multiple_of(2) {
            return Err(SearchError::InvalidEmbedding(format!("pattern length {}", clusters.len())));
        }
        for c in &mut clusters {
            c.sort_unstable();
        }
        let size = clusters[0].len();
        if size == 0 || clusters.iter().any(|c| c.len() != size) {
            return Err(SearchError::InvalidEmbedding("clusters must be non-empty and of equal size".into()));
        }
        let mut all: Vec<usize> = clusters.iter().flatten().copied().collect();
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(SearchError::InvalidEmbedding("clusters overlap".into()));
        }
        let ordered = clusters_consistently_ordered(&clusters);
        Ok(BlowupEmbedding { first, clusters, ordered })
    }

    pub fn pattern_len(&self) -> usize {
        self.clusters.len()
    }

    pub fn cluster_size(&self) -> usize {
        self.clusters[0].len()
    }

    pub fn clusters(&self) -> &[Vec<usize>] {
        &self.clusters
    }

    pub fn is_ordered(&self) -> bool {
        self.ordered
    }

    pub fn first_colour(&self) -> Colour {
        self.first
    }

    /// Colour of the pattern edge between cluster `i` and cluster `i + 1`.
    pub fn colour_between(&self, i: usize) -> Colour {
        if i.is_multiple_of(2) {
            self.first
        } else {
            self.first.other()
        }
    }

    /// Cluster ids sorted by their smallest vertex.
    pub fn cluster_order(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = (0..self.clusters.len()).collect();
        ids.sort_by_key(|&c| self.clusters[c][0]);
        ids
    }

    /// Full invariant check against the host: every cross pair of
    /// consecutive clusters carries the pattern colour.
    pub fn check(&self, aux: &AuxGraph) -> Result<(), SearchError> {
        let p = self.clusters.len();
        for i in 0..p {
            let colour = self.colour_between(i);
            let (a, b) = (&self.clusters[i], &self.clusters[(i + 1) % p]);
            for &x in a {
                for &y in b {
                    if !aux.has_edge(x, y, colour) {
                        return Err(SearchError::InvalidEmbedding(format!(
                            "missing {colour} edge {{e{},e{}}} between clusters {i} and {}",
                            x + 1,
                            y + 1,
                            (i + 1) % p
                        )));
                    }
                }
            }
        }
        if self.ordered != clusters_consistently_ordered(&self.clusters) {
            return Err(SearchError::NotOrdered);
        }
        Ok(())
    }

    /// True if no two retained vertices are neighbouring in the host order.
    pub fn is_non_neighbouring(&self, n: usize) -> bool {
        let mut all: Vec<usize> = self.clusters.iter().flatten().copied().collect();
        all.sort_unstable();
        !has_neighbouring_pair(&all, n)
    }
}

/// All-pairs check: any two clusters occupy disjoint, non-interleaved ranges.
fn clusters_consistently_ordered(clusters: &[Vec<usize>]) -> bool {
    clusters.iter().enumerate().all(|(i, a)| {
        clusters[i + 1..].iter().all(|b| a.iter().all(|x| b.iter().all(|y| x < y)) || b.iter().all(|y| a.iter().all(|x| y < x)))
    })
}

fn has_neighbouring_pair(sorted: &[usize], n: usize) -> bool {
    sorted.windows(2).any(|w| neighbouring(n, w[0], w[1]))
        || (sorted.len() >= 2 && neighbouring(n, sorted[0], sorted[sorted.len() - 1]))
}

#[derive(Serialize, Deserialize)]
struct BlowupRepr {
    pattern_colours: Vec<Colour>,
    /// 1-based auxiliary vertex ids.
    clusters: Vec<Vec<usize>>,
    ordered: bool,
}

impl From<BlowupEmbedding> for BlowupRepr {
    fn from(b: BlowupEmbedding) -> Self {
        BlowupRepr {
            pattern_colours: (0..b.pattern_len()).map(|i| b.colour_between(i)).collect(),
            clusters: b.clusters.iter().map(|c| c.iter().map(|v| v + 1).collect()).collect(),
            ordered: b.ordered,
        }
    }
}

impl TryFrom<BlowupRepr> for BlowupEmbedding {
    type Error = SearchError;

    fn try_from(r: BlowupRepr) -> Result<Self, SearchError> {
        let first = *r.pattern_colours.first().ok_or_else(|| SearchError::InvalidEmbedding("empty pattern".into()))?;
        if r.clusters.iter().flatten().any(|&v| v == 0) {
            return Err(SearchError::InvalidEmbedding("vertex ids are 1-based".into()));
        }
        let b = BlowupEmbedding::new(first, r.clusters.iter().map(|c| c.iter().map(|v| v - 1).collect()).collect())?;
        if b.ordered != r.ordered {
            return Err(SearchError::NotOrdered);
        }
        Ok(b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchStrategy {
    /// Exact backtracking for `n <= 200`, greedy above.
    #[default]
    Auto,
    Exact,
    /// Backtracks only while closing the first cycle, then fills clusters
    /// with the lowest common neighbour without revisiting choices.
    Greedy,
}

/// Search controls for [`find_alternating_cycle_blowup`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupSearch {
    /// Node expansions allowed per root vertex.
    pub budget_per_root: u64,
    pub strategy: SearchStrategy,
    #[serde(skip)]
    pub exec: Execution,
}

impl Default for BlowupSearch {
    fn default() -> Self {
        BlowupSearch { budget_per_root: 20_000, strategy: SearchStrategy::Auto, exec: Execution::Parallel }
    }
}

const EXACT_LIMIT: usize = 200;

/// Finds `C(t)` for an alternating cycle `C` of the shortest admissible
/// length in `4..=max_len`, preferring the lexicographically smallest
/// witness in round-robin slot order.
pub fn find_alternating_cycle_blowup(
    aux: &AuxGraph,
    t: usize,
    max_len: usize,
    search: &BlowupSearch,
) -> Result<BlowupEmbedding, SearchError> {
    if t == 0 {
        return Err(SearchError::InvalidParameter("cluster size t must be >= 1".into()));
    }
    if max_len < 4 || !max_len.is_multiple_of(2) {
        return Err(SearchError::InvalidParameter(format!("max_len {max_len} must be even and >= 4")));
    }
    if aux.edge_count(Colour::Red) == 0 || aux.edge_count(Colour::Blue) == 0 {
        return Err(SearchError::Absent);
    }
    let greedy = match search.strategy {
        SearchStrategy::Exact => false,
        SearchStrategy::Greedy => true,
        SearchStrategy::Auto => aux.n() > EXACT_LIMIT,
    };
    let roots: Vec<usize> = (0..aux.n())
        .filter(|&r| aux.degree(r, Colour::Red) >= t && aux.degree(r, Colour::Blue) >= t)
        .collect();
    // Only consulted when no root succeeds, in which case every root ran.
    let exhausted = AtomicBool::new(false);
    for len in (4..=max_len).step_by(2) {
        let found = exec::find_map_first(search.exec, &roots, |&root| {
            let mut s = ClusterSearch::new(aux, len, t, greedy, search.budget_per_root);
            match s.run(root) {
                RootOutcome::Found(clusters) => Some(clusters),
                RootOutcome::Exhausted => {
                    exhausted.store(true, Ordering::Relaxed);
                    None
                }
                RootOutcome::Absent => None,
            }
        });
        if let Some(clusters) = found {
            let emb = BlowupEmbedding::new(Colour::Red, clusters)?;
            debug_assert!(emb.check(aux).is_ok());
            return Ok(emb);
        }
    }
    let exhausted = exhausted.into_inner();
    if exhausted {
        Err(SearchError::BudgetExhausted { budget: search.budget_per_root })
    } else {
        Err(SearchError::Absent)
    }
}

enum RootOutcome {
    Found(Vec<Vec<usize>>),
    Exhausted,
    Absent,
}

struct ClusterSearch<'a> {
    aux: &'a AuxGraph,
    len: usize,
    t: usize,
    greedy: bool,
    budget: u64,
    nodes: u64,
    clusters: Vec<Vec<usize>>,
    /// Common neighbourhood in the right colours of every placed vertex in
    /// the two adjacent clusters.
    cand: Vec<FixedBitSet>,
    used: FixedBitSet,
}

impl<'a> ClusterSearch<'a> {
    fn new(aux: &'a AuxGraph, len: usize, t: usize, greedy: bool, budget: u64) -> Self {
        let n = aux.n();
        let mut all = FixedBitSet::with_capacity(n);
        all.insert_range(..);
        ClusterSearch {
            aux,
            len,
            t,
            greedy,
            budget,
            nodes: 0,
            clusters: vec![Vec::with_capacity(t); len],
            cand: vec![all; len],
            used: FixedBitSet::with_capacity(n),
        }
    }

    fn colour(&self, i: usize) -> Colour {
        if i.is_multiple_of(2) {
            Colour::Red
        } else {
            Colour::Blue
        }
    }

    fn run(&mut self, root: usize) -> RootOutcome {
        match self.place(0, root).and_then(|()| self.step(1)) {
            Ok(true) => RootOutcome::Found(std::mem::take(&mut self.clusters)),
            Ok(false) => RootOutcome::Absent,
            Err(()) => RootOutcome::Exhausted,
        }
    }

    /// Places `v` as the next slot of the cluster for `step`, updating the
    /// candidate sets of both neighbouring clusters. Errors on budget.
    fn place(&mut self, step: usize, v: usize) -> Result<(), ()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(());
        }
        let c = step % self.len;
        let (prev, next) = ((c + self.len - 1) % self.len, (c + 1) % self.len);
        let into_prev = self.colour(prev);
        let into_next = self.colour(c);
        self.cand[prev].intersect_with(self.aux.neighbours(v, into_prev));
        self.cand[next].intersect_with(self.aux.neighbours(v, into_next));
        self.clusters[c].push(v);
        self.used.insert(v);
        Ok(())
    }

    fn feasible(&self) -> bool {
        (0..self.len).all(|c| {
            let need = self.t - self.clusters[c].len();
            need == 0 || self.cand[c].difference_count(&self.used) >= need
        })
    }

    /// `Ok(true)` on success, `Ok(false)` if the subtree is empty.
    fn step(&mut self, step: usize) -> Result<bool, ()> {
        if step == self.len * self.t {
            return Ok(true);
        }
        if !self.feasible() {
            return Ok(false);
        }
        let c = step % self.len;
        let (prev, next) = ((c + self.len - 1) % self.len, (c + 1) % self.len);
        let floor = self.clusters[c].last().map_or(0, |&v| v + 1);
        let mut options = self.cand[c].clone();
        options.difference_with(&self.used);
        let options: Vec<usize> = options.ones().filter(|&v| v >= floor).collect();
        let limit = if self.greedy && step >= self.len { 1 } else { usize::MAX };
        for &v in options.iter().take(limit) {
            let saved = (self.cand[prev].clone(), self.cand[next].clone());
            self.place(step, v)?;
            if self.step(step + 1)? {
                return Ok(true);
            }
            self.clusters[c].pop();
            self.used.remove(v);
            self.cand[prev] = saved.0;
            self.cand[next] = saved.1;
        }
        Ok(false)
    }
}

/// Extracts a consistently ordered sub-blow-up with cluster size `t_target`
/// by recursive median splitting: the cluster with the smallest median
/// keeps its lower half and is set aside, every other cluster keeps its
/// upper half, and the procedure recurses on the rest.
///
/// An input that is already consistently ordered keeps the first
/// `t_target` vertices of each cluster.
pub fn order_blowup(embedding: &BlowupEmbedding, t_target: usize) -> Result<BlowupEmbedding, SearchError> {
    if t_target == 0 {
        return Err(SearchError::InvalidParameter("t_target must be >= 1".into()));
    }
    if embedding.cluster_size() < t_target {
        return Err(SearchError::OrderingFailed { level: 0, size: embedding.cluster_size(), needed: t_target });
    }
    let kept = if embedding.is_ordered() {
        embedding.clusters.clone()
    } else {
        median_split(&embedding.clusters, t_target)?
    };
    let clusters = kept.into_iter().map(|c| c[..t_target].to_vec()).collect();
    let out = BlowupEmbedding::new(embedding.first, clusters)?;
    if !out.ordered {
        return Err(SearchError::NotOrdered);
    }
    Ok(out)
}

/// Largest `t` for which [`order_blowup`] succeeds.
pub fn max_ordered_size(embedding: &BlowupEmbedding) -> usize {
    if embedding.is_ordered() {
        return embedding.cluster_size();
    }
    match median_split(&embedding.clusters, 1) {
        Ok(kept) => kept.iter().map(Vec::len).min().unwrap_or(0),
        Err(_) => 0,
    }
}

fn median_split(clusters: &[Vec<usize>], needed: usize) -> Result<Vec<Vec<usize>>, SearchError> {
    let mut kept: Vec<Vec<usize>> = clusters.to_vec();
    let mut remaining: Vec<usize> = (0..kept.len()).collect();
    let mut level = 0;
    while remaining.len() > 1 {
        // median of s sorted elements: the ⌈s/2⌉-th smallest
        let median = |c: usize| kept[c][kept[c].len().div_ceil(2) - 1];
        let chosen = *remaining.iter().min_by_key(|&&c| (median(c), c)).unwrap();
        for &c in &remaining {
            let s = kept[c].len();
            let half = s.div_ceil(2);
            if c == chosen {
                kept[c].truncate(half);
            } else {
                kept[c].drain(..s - half);
            }
            if kept[c].len() < needed {
                return Err(SearchError::OrderingFailed { level, size: kept[c].len(), needed });
            }
        }
        remaining.retain(|&c| c != chosen);
        level += 1;
    }
    Ok(kept)
}

/// Drops every second vertex of each maximal run of cyclically consecutive
/// cluster vertices, rebalances clusters to the smallest resulting size
/// (keeping the lowest vertices), then removes residual neighbouring
/// vertices greedily, smallest index first.
pub fn thin_non_neighbouring(embedding: &BlowupEmbedding, n: usize) -> Result<BlowupEmbedding, SearchError> {
    if !embedding.is_ordered() {
        return Err(SearchError::NotOrdered);
    }
    let mut owner = vec![usize::MAX; n];
    for (c, cluster) in embedding.clusters.iter().enumerate() {
        for &v in cluster {
            if v >= n {
                return Err(SearchError::InvalidEmbedding(format!("vertex e{} outside host of size {n}", v + 1)));
            }
            owner[v] = c;
        }
    }
    let occupied = |v: usize| owner[v] != usize::MAX;
    // Start scanning right after an unoccupied vertex so no run wraps.
    let start = (0..n).find(|&v| !occupied((v + n - 1) % n)).unwrap_or(0);
    let mut keep = FixedBitSet::with_capacity(n);
    let mut run_pos = 0usize;
    for s in 0..n {
        let v = (start + s) % n;
        if occupied(v) {
            if run_pos.is_multiple_of(2) {
                keep.insert(v);
            }
            run_pos += 1;
        } else {
            run_pos = 0;
        }
    }
    let mut clusters: Vec<Vec<usize>> =
        embedding.clusters.iter().map(|c| c.iter().copied().filter(|&v| keep.contains(v)).collect()).collect();
    loop {
        let size = clusters.iter().map(Vec::len).min().unwrap_or(0);
        if let Some(empty) = clusters.iter().position(Vec::is_empty) {
            return Err(SearchError::ClusterEmptied { cluster: empty });
        }
        for c in &mut clusters {
            c.truncate(size);
        }
        let mut all: Vec<usize> = clusters.iter().flatten().copied().collect();
        all.sort_unstable();
        let offender = all
            .windows(2)
            .find(|w| neighbouring(n, w[0], w[1]))
            .map(|w| w[0])
            .or_else(|| (all.len() >= 2 && neighbouring(n, all[0], all[all.len() - 1])).then_some(all[0]));
        match offender {
            None => break,
            Some(v) => {
                for c in &mut clusters {
                    c.retain(|&x| x != v);
                }
            }
        }
    }
    BlowupEmbedding::new(embedding.first, clusters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::auxiliary::build_auxiliary;
    use crate::generate::{gen_planted_blowup, gen_random_hamiltonian};
    use crate::graph::{named::cycle, validate_hamiltonian};

    fn emb(clusters: Vec<Vec<usize>>) -> BlowupEmbedding {
        BlowupEmbedding::new(Colour::Red, clusters).unwrap()
    }

    #[test]
    fn ordered_input_keeps_prefix() {
        let e = emb(vec![vec![0, 2, 4], vec![6, 8, 10]]);
        assert!(e.is_ordered());
        let o = order_blowup(&e, 2).unwrap();
        assert_eq!(o.clusters(), &[vec![0, 2], vec![6, 8]]);
    }

    #[test]
    fn interleaved_pair_traced_by_hand() {
        // a,b,a,b,... on positions 1..=8
        let e = emb(vec![vec![1, 3, 5, 7], vec![2, 4, 6, 8]]);
        assert!(!e.is_ordered());
        // medians 3 and 4: cluster a keeps {1,3}, b keeps {6,8}
        let o = order_blowup(&e, 1).unwrap();
        assert_eq!(o.clusters(), &[vec![1], vec![6]]);
        assert!(o.is_ordered());
        assert_eq!(order_blowup(&e, 2).unwrap().clusters(), &[vec![1, 3], vec![6, 8]]);
        assert!(matches!(order_blowup(&e, 3), Err(SearchError::OrderingFailed { level: 0, .. })));
    }

    #[test]
    fn too_small_cluster_fails() {
        let e = emb(vec![vec![1], vec![5]]);
        assert!(order_blowup(&e, 2).is_err());
    }

    #[test]
    fn thinning_by_runs() {
        let e = emb(vec![vec![2, 3, 4], vec![7, 8, 9]]);
        let th = thin_non_neighbouring(&e, 12).unwrap();
        assert_eq!(th.clusters(), &[vec![2, 4], vec![7, 9]]);
        assert!(th.is_non_neighbouring(12));

        let spaced = emb(vec![vec![0, 3], vec![6, 9]]);
        assert_eq!(thin_non_neighbouring(&spaced, 12).unwrap(), spaced);

        let touching = emb(vec![vec![4], vec![5]]);
        assert!(matches!(thin_non_neighbouring(&touching, 12), Err(SearchError::ClusterEmptied { cluster: 1 })));
    }

    #[test]
    fn thinning_handles_wraparound() {
        let e = emb(vec![vec![0, 1], vec![4, 5], vec![8, 9], vec![10, 11]]);
        let th = thin_non_neighbouring(&e, 12).unwrap();
        assert!(th.is_non_neighbouring(12));
        assert!(th.cluster_size() >= 1);
    }

    #[test]
    fn no_red_edges_means_absent() {
        let aux = build_auxiliary(validate_hamiltonian(cycle(10), (0..10).collect()).unwrap());
        assert_eq!(find_alternating_cycle_blowup(&aux, 1, 6, &BlowupSearch::default()), Err(SearchError::Absent));
    }

    #[test]
    fn t_one_finds_single_alternating_cycle() {
        let aux = build_auxiliary(gen_random_hamiltonian(30, 0.4, 5).unwrap());
        let e = find_alternating_cycle_blowup(&aux, 1, 8, &BlowupSearch::default()).unwrap();
        assert_eq!(e.cluster_size(), 1);
        assert_eq!(e.pattern_len(), 4);
        e.check(&aux).unwrap();
    }

    #[test]
    fn recovers_planted_blowup() {
        let (inst, cert) = gen_planted_blowup(4, 3, 0.0, 9).unwrap();
        let aux = build_auxiliary(inst);
        cert.check(&aux).unwrap();
        let e = find_alternating_cycle_blowup(&aux, 3, 4, &BlowupSearch::default()).unwrap();
        assert!(e.cluster_size() >= 3);
        e.check(&aux).unwrap();
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let aux = build_auxiliary(gen_random_hamiltonian(60, 0.35, 2).unwrap());
        let seq = BlowupSearch { exec: Execution::Sequential, ..Default::default() };
        let par = BlowupSearch { exec: Execution::Parallel, ..Default::default() };
        for t in 1..=2 {
            assert_eq!(
                find_alternating_cycle_blowup(&aux, t, 6, &seq),
                find_alternating_cycle_blowup(&aux, t, 6, &par)
            );
        }
    }

    #[test]
    fn json_shape() {
        let e = emb(vec![vec![0], vec![2], vec![4], vec![6]]);
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"{"pattern_colours":["red","blue","red","blue"],"clusters":[[1],[3],[5],[7]],"ordered":true}"#);
        assert_eq!(serde_json::from_str::<BlowupEmbedding>(&s).unwrap(), e);
    }
}
