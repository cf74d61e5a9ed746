use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{AbstractPattern, AltCycleSystem};
use crate::altcycle::BlowupEmbedding;
use crate::auxiliary::{AuxGraph, Colour};
use crate::error::TransformError;

/// Places pattern vertex `i` on the `r`-th smallest vertex of cluster
/// `origin[i]`, where `r` counts earlier pattern vertices of that cluster.
/// The blow-up must be ordered so that the result is order-isomorphic to
/// the pattern.
pub fn embed_pattern(
    aux: &AuxGraph,
    blowup: &BlowupEmbedding,
    pattern: &AbstractPattern,
) -> Result<AltCycleSystem, TransformError> {
    let clusters = blowup.clusters();
    let demand = pattern.demand();
    for (cluster, &needed) in demand.iter().enumerate() {
        if needed == 0 {
            continue;
        }
        let available = clusters.get(cluster).ok_or(TransformError::ForeignOrigin { origin: cluster })?.len();
        if needed > available {
            return Err(TransformError::CapacityExceeded { cluster, needed, available });
        }
    }
    let mut rank = vec![0; clusters.len()];
    let at: Vec<usize> = pattern
        .origin()
        .iter()
        .map(|&o| {
            let v = clusters[o][rank[o]];
            rank[o] += 1;
            v
        })
        .collect();
    if at.windows(2).any(|w| w[0] >= w[1]) {
        return Err(TransformError::OrderMismatch);
    }
    let system = pattern.realise(&at)?;
    AltCycleSystem::new(aux, system.cycles().to_vec())
}

/// Budgeted backtracking placement of a pattern straight into the
/// auxiliary graph: increasing positions, no two placed vertices
/// neighbouring, every pattern edge present in its colour.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectSearch {
    /// Maximum number of placement attempts.
    pub budget: u64,
    /// Candidate order is shuffled per node when set, lowest-first otherwise.
    pub shuffle_seed: Option<u64>,
}

impl Default for DirectSearch {
    fn default() -> Self {
        DirectSearch { budget: 200_000, shuffle_seed: None }
    }
}

/// Places `pattern` anywhere in `aux`.
pub fn embed_pattern_direct(
    aux: &AuxGraph,
    pattern: &AbstractPattern,
    search: &DirectSearch,
) -> Result<AltCycleSystem, TransformError> {
    let n = aux.n();
    let m = pattern.len();
    let at = place(aux, pattern, &vec![None; m], &vec![(0, n.saturating_sub(1)); m], search)?;
    pattern.realise(&at)
}

/// Places a pattern derived from a parent placed at `parent_at`: every
/// `Whole` vertex stays where its parent vertex is and every added vertex
/// goes strictly between its parent vertex and the next one.
pub fn embed_child_incremental(
    aux: &AuxGraph,
    parent_at: &[usize],
    child: &AbstractPattern,
    search: &DirectSearch,
) -> Result<AltCycleSystem, TransformError> {
    let n = aux.n();
    let mut fixed = Vec::with_capacity(child.len());
    let mut windows = Vec::with_capacity(child.len());
    for l in child.labels() {
        let here = *parent_at.get(l.base).ok_or(TransformError::InvalidVertex { index: l.base, count: parent_at.len() })?;
        let next = parent_at.get(l.base + 1).copied().unwrap_or(n);
        if l.slot == super::Slot::Whole {
            fixed.push(Some(here));
            windows.push((here, here));
        } else {
            fixed.push(None);
            if next < here + 2 {
                return Err(TransformError::EmbeddingNotFound { budget: 0 });
            }
            windows.push((here + 1, next - 1));
        }
    }
    let at = place(aux, child, &fixed, &windows, search)?;
    child.realise(&at)
}

struct Placer<'a> {
    aux: &'a AuxGraph,
    pattern: &'a AbstractPattern,
    fixed: &'a [Option<usize>],
    windows: &'a [(usize, usize)],
    cap: Vec<usize>,
    at: Vec<usize>,
    nodes: u64,
    budget: u64,
    rng: Option<ChaCha8Rng>,
}

fn place(
    aux: &AuxGraph,
    pattern: &AbstractPattern,
    fixed: &[Option<usize>],
    windows: &[(usize, usize)],
    search: &DirectSearch,
) -> Result<Vec<usize>, TransformError> {
    let n = aux.n();
    let m = pattern.len();
    let not_found = TransformError::EmbeddingNotFound { budget: search.budget };
    if m == 0 {
        return Ok(Vec::new());
    }
    if 2 * m > n {
        return Err(not_found);
    }
    // cap[i]: largest position for vertex i leaving room for a gap of two
    // before every later fixed vertex and before the end.
    let mut cap = vec![0; m];
    let mut limit = (n - 1) as i64;
    for i in (0..m).rev() {
        if let Some(f) = fixed[i] {
            limit = limit.min(f as i64);
        }
        if limit < 0 {
            return Err(not_found);
        }
        cap[i] = limit as usize;
        limit -= 2;
    }
    let mut placer = Placer {
        aux,
        pattern,
        fixed,
        windows,
        cap,
        at: vec![usize::MAX; m],
        nodes: 0,
        budget: search.budget,
        rng: search.shuffle_seed.map(ChaCha8Rng::seed_from_u64),
    };
    if placer.step(0) {
        Ok(placer.at)
    } else {
        Err(not_found)
    }
}

impl Placer<'_> {
    fn step(&mut self, i: usize) -> bool {
        let m = self.pattern.len();
        if i == m {
            return true;
        }
        let n = self.aux.n();
        let lo = if i == 0 { self.windows[0].0 } else { (self.at[i - 1] + 2).max(self.windows[i].0) };
        let mut hi = self.windows[i].1.min(self.cap[i]);
        if i == m - 1 && m > 1 && self.at[0] == 0 {
            hi = hi.min(n - 2);
        }
        if lo > hi {
            return false;
        }
        let mut cand = FixedBitSet::with_capacity(n);
        match self.fixed[i] {
            Some(f) if f >= lo && f <= hi => cand.insert(f),
            Some(_) => return false,
            None => cand.insert_range(lo..hi + 1),
        }
        for colour in [Colour::Red, Colour::Blue] {
            let mate = self.pattern.mate(i, colour);
            if mate < i {
                cand.intersect_with(self.aux.neighbours(self.at[mate], colour));
            }
        }
        let mut order: Vec<usize> = cand.ones().collect();
        if let Some(rng) = self.rng.as_mut() {
            order.shuffle(rng);
        }
        for v in order {
            if self.nodes >= self.budget {
                return false;
            }
            self.nodes += 1;
            self.at[i] = v;
            if self.step(i + 1) {
                return true;
            }
        }
        self.at[i] = usize::MAX;
        false
    }
}
