use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;

use super::AltCycleSystem;
use crate::altcycle::AltCycle;
use crate::auxiliary::{neighbouring, AuxGraph, Colour};

/// The node budget ran out before enumeration finished.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBudgetExhausted;

/// Visits every alternating-cycle system with exactly `size` vertices, once
/// each. Cycles are generated from their smallest vertex with the red edge
/// first and in increasing order of smallest vertex. With
/// `non_neighbouring` only systems without neighbouring vertices are
/// produced. Every search node and every visited system costs one unit of
/// `budget`, which is decremented in place.
pub fn for_each_system(
    aux: &AuxGraph,
    size: usize,
    non_neighbouring: bool,
    budget: &mut u64,
    mut visit: impl FnMut(&AltCycleSystem) -> ControlFlow<()>,
) -> Result<ControlFlow<()>, EnumerationBudgetExhausted> {
    let n = aux.n();
    if size % 2 == 1 {
        return Ok(ControlFlow::Continue(()));
    }
    let mut e = Enumerator {
        aux,
        n,
        non_neighbouring,
        used: FixedBitSet::with_capacity(n),
        cycles: Vec::new(),
        path: Vec::new(),
        budget: *budget,
    };
    let flow = e.systems(size, 0, &mut visit);
    *budget = e.budget;
    match flow {
        Step::Done(f) => Ok(f),
        Step::Exhausted => Err(EnumerationBudgetExhausted),
    }
}

/// All systems with exactly `size` vertices, in visiting order.
pub fn enumerate_systems(
    aux: &AuxGraph,
    size: usize,
    non_neighbouring: bool,
    budget: u64,
) -> Result<Vec<AltCycleSystem>, EnumerationBudgetExhausted> {
    let mut out = Vec::new();
    let mut budget = budget;
    let _ = for_each_system(aux, size, non_neighbouring, &mut budget, |s| {
        out.push(s.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

enum Step {
    Done(ControlFlow<()>),
    Exhausted,
}

struct Enumerator<'a> {
    aux: &'a AuxGraph,
    n: usize,
    non_neighbouring: bool,
    used: FixedBitSet,
    cycles: Vec<AltCycle>,
    path: Vec<usize>,
    budget: u64,
}

impl Enumerator<'_> {
    fn tick(&mut self) -> bool {
        if self.budget == 0 {
            return false;
        }
        self.budget -= 1;
        true
    }

    fn admissible(&self, v: usize) -> bool {
        if self.used.contains(v) {
            return false;
        }
        if self.non_neighbouring {
            let n = self.n;
            if self.used.contains((v + 1) % n) || self.used.contains((v + n - 1) % n) {
                return false;
            }
        }
        true
    }

    /// Adds cycles whose smallest vertex is at least `from` until `left`
    /// vertices have been used.
    fn systems(&mut self, left: usize, from: usize, visit: &mut impl FnMut(&AltCycleSystem) -> ControlFlow<()>) -> Step {
        if left == 0 {
            if !self.tick() {
                return Step::Exhausted;
            }
            let system = AltCycleSystem::from_checked(self.cycles.clone()).expect("disjoint by construction");
            return Step::Done(visit(&system));
        }
        for start in from..self.n {
            if !self.admissible(start) {
                continue;
            }
            if !self.tick() {
                return Step::Exhausted;
            }
            self.used.insert(start);
            self.path.push(start);
            let flow = self.grow(start, left, Colour::Red, visit);
            self.path.pop();
            self.used.remove(start);
            if let Step::Done(ControlFlow::Continue(())) = flow {
                continue;
            }
            return flow;
        }
        Step::Done(ControlFlow::Continue(()))
    }

    /// Extends the current cycle path starting at `start`; the next edge has
    /// colour `colour`.
    fn grow(
        &mut self,
        start: usize,
        left: usize,
        colour: Colour,
        visit: &mut impl FnMut(&AltCycleSystem) -> ControlFlow<()>,
    ) -> Step {
        let last = *self.path.last().unwrap();
        let len = self.path.len();
        // closing requires an even length and a blue last edge back to start
        if colour == Colour::Blue && self.aux.has_edge(last, start, Colour::Blue) && len <= left {
            let cycle = AltCycle::new(self.path.clone(), Colour::Red).expect("even simple path");
            let path = std::mem::take(&mut self.path);
            self.cycles.push(cycle);
            let flow = self.systems(left - len, start + 1, visit);
            self.cycles.pop();
            self.path = path;
            if !matches!(flow, Step::Done(ControlFlow::Continue(()))) {
                return flow;
            }
        }
        if len + 1 > left {
            return Step::Done(ControlFlow::Continue(()));
        }
        let nbrs: Vec<usize> = self.aux.neighbours(last, colour).ones().filter(|&w| w > start).collect();
        for w in nbrs {
            if !self.admissible(w) {
                continue;
            }
            if self.non_neighbouring && self.path.iter().any(|&x| neighbouring(self.n, x, w)) {
                continue;
            }
            if !self.tick() {
                return Step::Exhausted;
            }
            self.used.insert(w);
            self.path.push(w);
            let flow = self.grow(start, left, colour.other(), visit);
            self.path.pop();
            self.used.remove(w);
            if !matches!(flow, Step::Done(ControlFlow::Continue(()))) {
                return flow;
            }
        }
        Step::Done(ControlFlow::Continue(()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::auxiliary::build_auxiliary;
    use crate::graph::{named::complete, validate_hamiltonian};
    use crate::transforms::two_factor_of;

    /// Every vertex subset, every pair of perfect matchings on it: accept
    /// when red and blue matchings exist in aux and their union alternates.
    fn brute_count(aux: &AuxGraph, size: usize, non_neighbouring: bool) -> usize {
        let n = aux.n();
        let mut count = 0;
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != size {
                continue;
            }
            let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if non_neighbouring && vs.iter().any(|&a| vs.iter().any(|&b| a < b && neighbouring(n, a, b))) {
                continue;
            }
            let reds = matchings(aux, &vs, Colour::Red);
            let blues = matchings(aux, &vs, Colour::Blue);
            count += reds.len() * blues.len();
        }
        count
    }

    fn matchings(aux: &AuxGraph, vs: &[usize], colour: Colour) -> Vec<Vec<(usize, usize)>> {
        if vs.is_empty() {
            return vec![vec![]];
        }
        let a = vs[0];
        let mut out = Vec::new();
        for (i, &b) in vs.iter().enumerate().skip(1) {
            if aux.has_edge(a, b, colour) {
                let rest: Vec<usize> = vs[1..].iter().enumerate().filter(|&(j, _)| j + 1 != i).map(|(_, &v)| v).collect();
                for mut m in matchings(aux, &rest, colour) {
                    m.push((a, b));
                    out.push(m);
                }
            }
        }
        out
    }

    #[test]
    fn counts_match_matching_pairs() {
        // A red perfect matching and a blue perfect matching on the same set
        // form a unique system of alternating cycles, double edges included.
        let inst = validate_hamiltonian(complete(8), (0..8).collect()).unwrap();
        let aux = build_auxiliary(inst);
        for size in [2, 4, 6] {
            for nn in [false, true] {
                let got = enumerate_systems(&aux, size, nn, u64::MAX).unwrap();
                assert_eq!(got.len(), brute_count(&aux, size, nn), "size {size} nn {nn}");
                let mut keys: Vec<_> = got.iter().map(|s| serde_json::to_string(s).unwrap()).collect();
                keys.sort();
                keys.dedup();
                assert_eq!(keys.len(), got.len());
            }
        }
    }

    #[test]
    fn non_neighbouring_systems_give_two_factors() {
        let aux = build_auxiliary(validate_hamiltonian(complete(9), (0..9).collect()).unwrap());
        for s in enumerate_systems(&aux, 4, true, u64::MAX).unwrap() {
            two_factor_of(&aux, &s).unwrap();
        }
    }

    #[test]
    fn budget_reported() {
        let aux = build_auxiliary(validate_hamiltonian(complete(9), (0..9).collect()).unwrap());
        assert_eq!(enumerate_systems(&aux, 6, false, 10), Err(EnumerationBudgetExhausted));
    }

    #[test]
    fn stop_early() {
        let aux = build_auxiliary(validate_hamiltonian(complete(8), (0..8).collect()).unwrap());
        let mut seen = 0;
        let flow = for_each_system(&aux, 2, true, &mut u64::MAX.clone(), |_| {
            seen += 1;
            ControlFlow::Break(())
        })
        .unwrap();
        assert_eq!(flow, ControlFlow::Break(()));
        assert_eq!(seen, 1);
    }
}
