//! Deterministic instance generators: random Hamiltonian graphs with a
//! minimum-degree floor, the extremal construction without a `k`-cycle
//! 2-factor, and instances with a planted alternating-cycle blow-up.

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::altcycle::BlowupEmbedding;
use crate::auxiliary::{AuxGraph, Colour};
use crate::error::{GenError, SearchError};
use crate::graph::{named, validate_hamiltonian, Graph, HamiltonianInstance};

/// Hamilton cycle `0 1 ... n-1` plus random inner edges until the minimum
/// degree reaches `⌈delta_frac · n⌉`. Each added edge joins a uniformly
/// chosen minimum-degree vertex to a uniformly chosen non-neighbour.
pub fn gen_random_hamiltonian(n: usize, delta_frac: f64, seed: u64) -> Result<HamiltonianInstance, GenError> {
    if n < 3 {
        return Err(GenError::InvalidParameter(format!("n = {n} is below 3")));
    }
    if !(delta_frac > 0.0 && delta_frac < 1.0) {
        return Err(GenError::InvalidParameter(format!("delta_frac = {delta_frac} is outside (0, 1)")));
    }
    let target = min_degree_target(n, delta_frac);
    if target > n - 1 {
        return Err(GenError::DegreeInfeasible { target, max: n - 1 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = named::cycle(n);
    loop {
        let min = g.min_degree();
        if min >= target {
            break;
        }
        let lowest: Vec<usize> = (0..n).filter(|&v| g.degree(v) == min).collect();
        let v = *lowest.choose(&mut rng).expect("some vertex has minimum degree");
        let options: Vec<usize> = (0..n).filter(|&w| w != v && !g.has_edge(v, w)).collect();
        let w = *options.choose(&mut rng).expect("degree below n - 1 leaves a non-neighbour");
        g.add_edge(v, w).expect("in range");
    }
    Ok(validate_hamiltonian(g, (0..n).collect()).expect("planted cycle present"))
}

/// `⌈delta_frac · n⌉`, robust to the float product landing just above an
/// integer.
pub fn min_degree_target(n: usize, delta_frac: f64) -> usize {
    (delta_frac * n as f64 - 1e-9).ceil().max(0.0) as usize
}

/// A cycle on `0..=n-k` with every vertex joined to an independent set
/// `U = {n-k+1, ..., n-1}` of size `k - 1`. Minimum degree `k + 1` (for
/// `k >= 2`), Hamiltonian, and every cycle of a 2-factor meets `U`.
pub fn gen_extremal(n: usize, k: usize) -> Result<Graph, GenError> {
    if k == 0 || n < 3 {
        return Err(GenError::InvalidParameter(format!("need k >= 1 and n >= 3, got n = {n}, k = {k}")));
    }
    if n < 2 * k {
        return Err(GenError::InvalidParameter(format!("need n >= 2k, got n = {n}, k = {k}")));
    }
    let m = n - k + 1;
    let mut g = Graph::empty(n);
    for i in 0..m {
        g.add_edge(i, (i + 1) % m).expect("in range");
    }
    for u in m..n {
        for c in 0..m {
            g.add_edge(u, c).expect("in range");
        }
    }
    Ok(g)
}

/// An explicit Hamilton cycle of `gen_extremal(n, k)`:
/// `c_0 u_1 c_1 u_2 ... u_{k-1} c_{k-1} c_k ... c_{m-1}`.
pub fn extremal_hamilton_order(n: usize, k: usize) -> Result<Vec<usize>, GenError> {
    gen_extremal(n, k)?;
    let m = n - k + 1;
    let mut order = vec![0];
    for j in 1..k {
        order.push(m + j - 1);
        order.push(j);
    }
    order.extend(k.max(1)..m);
    Ok(order)
}

/// Where a planted blow-up sits in the auxiliary graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlantCertificate {
    pub embedding: BlowupEmbedding,
}

impl PlantCertificate {
    /// Every cross pair of consecutive planted clusters carries its colour.
    pub fn check(&self, aux: &AuxGraph) -> Result<(), SearchError> {
        self.embedding.check(aux)
    }
}

/// Smallest host that fits `pattern_len` clusters of size `t`.
pub fn planted_size(pattern_len: usize, t: usize) -> usize {
    2 * pattern_len * t + 4
}

/// `gen_planted_blowup_in` on the smallest comfortable host.
pub fn gen_planted_blowup(
    pattern_len: usize,
    t: usize,
    noise: f64,
    seed: u64,
) -> Result<(HamiltonianInstance, PlantCertificate), GenError> {
    gen_planted_blowup_in(planted_size(pattern_len, t), pattern_len, t, noise, seed)
}

/// Plants `C(t)` for an alternating cycle `C` of length `pattern_len`
/// (first edge red) on `n` vertices. Cluster vertices are pairwise
/// non-neighbouring auxiliary vertices assigned to clusters in random
/// order, so the plant is in general not consistently ordered. Every other
/// vertex pair becomes an inner edge independently with probability
/// `noise`.
pub fn gen_planted_blowup_in(
    n: usize,
    pattern_len: usize,
    t: usize,
    noise: f64,
    seed: u64,
) -> Result<(HamiltonianInstance, PlantCertificate), GenError> {
    if pattern_len < 4 || !pattern_len.is_multiple_of(2) || t == 0 {
        return Err(GenError::InvalidParameter(format!(
            "need even pattern_len >= 4 and t >= 1, got {pattern_len} and {t}"
        )));
    }
    if !(0.0..=1.0).contains(&noise) {
        return Err(GenError::InvalidParameter(format!("noise = {noise} is outside [0, 1]")));
    }
    let m = pattern_len * t;
    // m pairwise non-neighbouring positions, avoiding the wrap from n-1 to 0
    if n < 2 * m + 1 || n < 5 {
        return Err(GenError::InfeasibleGeometry { needed: 2 * m + 1, n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gaps = index::sample(&mut rng, n - m, m).into_vec();
    gaps.sort_unstable();
    let mut positions: Vec<usize> = gaps.iter().enumerate().map(|(i, &q)| q + i).collect();
    positions.shuffle(&mut rng);
    let clusters: Vec<Vec<usize>> = positions.chunks(t).map(<[usize]>::to_vec).collect();

    let mut g = named::cycle(n);
    for c in 0..pattern_len {
        let colour = if c % 2 == 0 { Colour::Red } else { Colour::Blue };
        for &x in &clusters[c] {
            for &y in &clusters[(c + 1) % pattern_len] {
                let shift = usize::from(colour == Colour::Red);
                g.add_edge((x + shift) % n, (y + shift) % n).expect("distinct non-neighbouring positions");
            }
        }
    }
    if noise > 0.0 {
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(noise) {
                    g.add_edge(u, v).expect("in range");
                }
            }
        }
    }
    let inst = validate_hamiltonian(g, (0..n).collect()).expect("planted cycle present");
    let embedding = BlowupEmbedding::new(Colour::Red, clusters).expect("disjoint equal clusters");
    Ok((inst, PlantCertificate { embedding }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::auxiliary::build_auxiliary;

    #[test]
    fn low_target_returns_plain_cycle() {
        let inst = gen_random_hamiltonian(12, 0.1, 4).unwrap();
        assert_eq!(inst.graph().edge_count(), 12);
    }

    #[test]
    fn degree_floor_reached() {
        let inst = gen_random_hamiltonian(40, 0.3, 1).unwrap();
        assert!(inst.graph().min_degree() >= 12);
        assert_eq!(inst.order(), (0..40).collect::<Vec<_>>().as_slice());
    }

    #[test]
    fn deterministic_per_seed() {
        let a = gen_random_hamiltonian(30, 0.4, 8).unwrap();
        let b = gen_random_hamiltonian(30, 0.4, 8).unwrap();
        let c = gen_random_hamiltonian(30, 0.4, 9).unwrap();
        assert_eq!(a.graph().edges().collect::<Vec<_>>(), b.graph().edges().collect::<Vec<_>>());
        assert_ne!(a.graph().edges().collect::<Vec<_>>(), c.graph().edges().collect::<Vec<_>>());
    }

    #[test]
    fn bad_fractions_rejected() {
        assert!(gen_random_hamiltonian(10, 1.0, 0).is_err());
        assert!(gen_random_hamiltonian(10, 0.0, 0).is_err());
        assert!(gen_random_hamiltonian(2, 0.5, 0).is_err());
    }

    #[test]
    fn extremal_shape() {
        let g = gen_extremal(10, 3).unwrap();
        assert_eq!(g.edge_count(), 8 + 16);
        assert_eq!(g.min_degree(), 4);
        assert_eq!(gen_extremal(7, 1).unwrap().edge_count(), 7);
        assert!(gen_extremal(5, 3).is_err());
        for (n, k) in [(10, 3), (8, 4), (6, 3), (9, 1), (12, 2)] {
            let order = extremal_hamilton_order(n, k).unwrap();
            validate_hamiltonian(gen_extremal(n, k).unwrap(), order).unwrap();
        }
    }

    #[test]
    fn planted_certificate_replays() {
        for seed in 0..5 {
            for (len, t) in [(4, 1), (4, 3), (6, 2)] {
                let (inst, cert) = gen_planted_blowup(len, t, 0.0, seed).unwrap();
                let aux = build_auxiliary(inst);
                cert.check(&aux).unwrap();
                assert_eq!(cert.embedding.cluster_size(), t);
                assert!(cert.embedding.is_non_neighbouring(aux.n()));
            }
        }
        let (inst, cert) = gen_planted_blowup(4, 2, 0.5, 3).unwrap();
        cert.check(&build_auxiliary(inst)).unwrap();
    }

    #[test]
    fn infeasible_geometry_reported() {
        assert!(matches!(
            gen_planted_blowup_in(10, 4, 2, 0.0, 1),
            Err(GenError::InfeasibleGeometry { .. })
        ));
        assert!(gen_planted_blowup(3, 1, 0.0, 1).is_err());
    }
}
