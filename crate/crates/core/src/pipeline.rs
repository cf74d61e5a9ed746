//! End-to-end solver: from a Hamiltonian instance and a target `k` to a
//! verified 2-factor with exactly `k` cycles.
//!
//! Stages: auxiliary graph, largest certified blow-up, ordering, thinning,
//! base cycle and its count `ℓ`, then `|k - ℓ|` going-up or going-down
//! steps. Each step is placed inside the blow-up when capacity allows and
//! otherwise directly in the auxiliary graph, since only the order type of
//! a system determines its count. With fallback enabled, failing runs
//! restart from small alternative base systems and finally enumerate
//! systems outright.

use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::altcycle::{
    find_alternating_cycle_blowup, lemma_params, max_ordered_size, order_blowup, thin_non_neighbouring,
    BlowupEmbedding, BlowupSearch,
};
use crate::auxiliary::{build_auxiliary, AuxGraph, Colour};
use crate::error::{PipelineError, SearchError};
use crate::exec::{self, Execution};
use crate::graph::{count_components, verify_two_factor, HamiltonianInstance, TwoFactor};
use crate::transforms::{
    embed_child_incremental, embed_pattern, embed_pattern_direct, for_each_system, going_down_pattern,
    going_up_pattern, separating_vertices, two_factor_of, AbstractPattern, AltCycleSystem, DirectSearch,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub target_k: usize,
    /// Minimum-degree fraction; only used for the theoretical report.
    pub epsilon: f64,
    /// Longest base alternating cycle searched for.
    pub max_pattern_len: usize,
    /// Largest blow-up cluster size requested.
    pub max_cluster_size: usize,
    pub blowup: BlowupSearch,
    /// Budget per direct placement attempt.
    pub embed: DirectSearch,
    /// Transform candidates tried per step before giving up.
    pub max_choices: usize,
    /// Alternative base systems tried by the fallback.
    pub alternative_bases: usize,
    /// Node budget of the fallback system enumeration.
    pub fallback_budget: u64,
    pub seed: u64,
    pub fallback_enabled: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            target_k: 2,
            epsilon: 0.3,
            max_pattern_len: 8,
            max_cluster_size: 4,
            blowup: BlowupSearch::default(),
            embed: DirectSearch { budget: 100_000, shuffle_seed: None },
            max_choices: 8,
            alternative_bases: 32,
            fallback_budget: 2_000_000,
            seed: 0,
            fallback_enabled: true,
        }
    }
}

impl PipelineConfig {
    pub fn with_target(target_k: usize) -> Self {
        PipelineConfig { target_k, ..Default::default() }
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        if self.target_k == 0 {
            return Err(PipelineError::InvalidConfig("target_k must be at least 1".into()));
        }
        if self.max_pattern_len < 4 || !self.max_pattern_len.is_multiple_of(2) {
            return Err(PipelineError::InvalidConfig(format!(
                "max_pattern_len must be even and at least 4, got {}",
                self.max_pattern_len
            )));
        }
        if self.max_cluster_size == 0 || self.max_choices == 0 {
            return Err(PipelineError::InvalidConfig("max_cluster_size and max_choices must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Success,
    Failure,
}

/// Which stage produced the answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// `k = 1`: the Hamilton cycle itself.
    Trivial,
    /// Every system placed inside the blow-up.
    Blowup,
    /// Blow-up base, some steps placed directly.
    Adaptive,
    AlternativeBase,
    DirectSearch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    Up,
    Down,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Placement {
    Blowup,
    Incremental,
    Direct,
    Shuffled,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuxSummary {
    pub red_edges: usize,
    pub blue_edges: usize,
    pub min_red_degree: usize,
    pub min_blue_degree: usize,
    pub double_edges: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlowupSummary {
    pub pattern_len: usize,
    pub found_cluster_size: usize,
    pub ordered_cluster_size: usize,
    pub thinned_cluster_size: usize,
    pub embedding: BlowupEmbedding,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BaseSummary {
    pub system: AltCycleSystem,
    pub ell: usize,
    /// Cluster size the proof asks for: `2^(k-ℓ)` going up, `3^(ℓ-k)` going down.
    pub capacity_needed: Option<u64>,
    pub capacity_available: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransformStep {
    pub kind: StepKind,
    pub cycle_id: Option<usize>,
    /// 1-based auxiliary vertex `e_k` chosen as separating vertex.
    pub separating_vertex: Option<usize>,
    /// Position of the chosen candidate among those tried; 0 is the
    /// canonical choice.
    pub choice_rank: usize,
    pub placement: Placement,
    pub pattern_size: usize,
    pub components_before: usize,
    pub components_after: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct FallbackSummary {
    pub alternative_bases_tried: usize,
    pub direct_search_used: bool,
    pub budget_left: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoryParams {
    pub epsilon: f64,
    pub k: usize,
    #[serde(rename = "L")]
    pub l: u64,
    #[serde(rename = "K")]
    pub big_k: u64,
    #[serde(rename = "N")]
    pub big_n: u64,
    /// `log10(2^k 6^L)`
    pub log10_initial_cluster: f64,
    /// `log10(2^k 3^L)`
    pub log10_ordered_cluster: f64,
    /// `log10(2^(k-1) 3^L)`
    pub log10_thinned_cluster: f64,
    pub n: Option<usize>,
    /// `n` is below the theoretical `N`.
    pub desk_scale: Option<bool>,
}

/// Constants of the asymptotic argument for `epsilon` and `k`, evaluated
/// at `gamma = epsilon / 2`. Informational only.
pub fn theoretical_params(epsilon: f64, k: usize, n: Option<usize>) -> Result<TheoryParams, SearchError> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(SearchError::GammaOutOfRange { gamma: epsilon });
    }
    let lemma = lemma_params(epsilon / 2.0)?;
    let big_n = ((4.0 / epsilon).ceil() as u64).max(lemma.big_k);
    let (kf, lf) = (k as f64, lemma.l as f64);
    let log2 = 2f64.log10();
    Ok(TheoryParams {
        epsilon,
        k,
        l: lemma.l,
        big_k: lemma.big_k,
        big_n,
        log10_initial_cluster: kf * log2 + lf * 6f64.log10(),
        log10_ordered_cluster: kf * log2 + lf * 3f64.log10(),
        log10_thinned_cluster: (kf - 1.0) * log2 + lf * 3f64.log10(),
        n,
        desk_scale: n.map(|n| (n as u64) < big_n),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub status: Status,
    pub route: Option<Route>,
    pub target_k: usize,
    pub n: usize,
    pub seed: u64,
    pub theory: Option<TheoryParams>,
    pub aux: Option<AuxSummary>,
    pub blowup: Option<BlowupSummary>,
    pub base: Option<BaseSummary>,
    pub steps: Vec<TransformStep>,
    pub fallback: Option<FallbackSummary>,
    pub final_pattern: Option<AbstractPattern>,
    pub final_system: Option<AltCycleSystem>,
    pub factor: Option<TwoFactor>,
    pub components: Option<usize>,
    pub verified: bool,
    pub diagnostics: Vec<String>,
    pub error: Option<String>,
    pub timings_ms: BTreeMap<String, f64>,
}

impl RunReport {
    fn new(n: usize, config: &PipelineConfig) -> Self {
        RunReport {
            status: Status::Failure,
            route: None,
            target_k: config.target_k,
            n,
            seed: config.seed,
            theory: theoretical_params(config.epsilon, config.target_k, Some(n)).ok(),
            aux: None,
            blowup: None,
            base: None,
            steps: Vec::new(),
            fallback: None,
            final_pattern: None,
            final_system: None,
            factor: None,
            components: None,
            verified: false,
            diagnostics: Vec::new(),
            error: None,
            timings_ms: BTreeMap::new(),
        }
    }

    /// The report with timings cleared; identical inputs give identical
    /// values.
    pub fn without_timings(&self) -> RunReport {
        RunReport { timings_ms: BTreeMap::new(), ..self.clone() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub factor: TwoFactor,
    pub system: AltCycleSystem,
    pub report: RunReport,
}

#[derive(Clone, Debug)]
pub struct SolveFailure {
    pub error: PipelineError,
    pub report: Box<RunReport>,
}

/// Runs the whole pipeline. Every success is re-verified against the
/// input graph before it is returned.
pub fn solve(instance: impl Into<Arc<HamiltonianInstance>>, config: &PipelineConfig) -> Result<Solution, SolveFailure> {
    let instance = instance.into();
    let mut run = Run { config, report: RunReport::new(instance.n(), config) };
    let outcome = run.drive(&instance);
    run.finish(&instance, outcome)
}

/// `solve` over many independent jobs, results in input order.
pub fn solve_batch(
    jobs: &[(Arc<HamiltonianInstance>, PipelineConfig)],
    exec: Execution,
) -> Vec<Result<Solution, SolveFailure>> {
    exec::map_collect(exec, jobs, |(inst, cfg)| solve(Arc::clone(inst), cfg))
}

/// Enumerates systems without neighbouring vertices by increasing size and
/// returns the first whose 2-factor has `target_k` cycles.
pub fn fallback_direct_search(
    aux: &AuxGraph,
    target_k: usize,
    budget: u64,
) -> Result<(AltCycleSystem, TwoFactor), PipelineError> {
    let mut left = budget;
    fallback_direct_search_in(aux, target_k, &mut left).ok_or(PipelineError::FallbackExhausted { budget })
}

fn fallback_direct_search_in(aux: &AuxGraph, target_k: usize, left: &mut u64) -> Option<(AltCycleSystem, TwoFactor)> {
    for size in (0..=aux.n() / 2).step_by(2) {
        let mut hit = None;
        let flow = for_each_system(aux, size, true, left, |s| match two_factor_of(aux, s) {
            Ok(f) if count_components(&f) == target_k => {
                hit = Some((s.clone(), f));
                ControlFlow::Break(())
            }
            _ => ControlFlow::Continue(()),
        });
        if hit.is_some() {
            return hit;
        }
        if flow.is_err() {
            return None;
        }
    }
    None
}

type Steered = (AbstractPattern, AltCycleSystem, TwoFactor);

struct Run<'a> {
    config: &'a PipelineConfig,
    report: RunReport,
}

impl Run<'_> {
    fn timed<R>(&mut self, stage: &str, f: impl FnOnce(&mut Self) -> R) -> R {
        let start = Instant::now();
        let r = f(self);
        *self.report.timings_ms.entry(stage.to_string()).or_default() += start.elapsed().as_secs_f64() * 1e3;
        r
    }

    fn drive(&mut self, instance: &Arc<HamiltonianInstance>) -> Result<(AltCycleSystem, TwoFactor), PipelineError> {
        self.config.validate()?;
        let (k, n) = (self.config.target_k, instance.n());
        if 3 * k > n {
            return Err(PipelineError::TargetTooLarge { k, n });
        }
        if k == 1 {
            self.report.route = Some(Route::Trivial);
            return Ok((AltCycleSystem::empty(), instance.hamilton_factor()));
        }
        let aux = self.timed("aux", |_| build_auxiliary(Arc::clone(instance)));
        self.report.aux = Some(AuxSummary {
            red_edges: aux.edge_count(Colour::Red),
            blue_edges: aux.edge_count(Colour::Blue),
            min_red_degree: aux.min_degree(Colour::Red),
            min_blue_degree: aux.min_degree(Colour::Blue),
            double_edges: aux.double_edges().len(),
        });

        let theory_err = match self.timed("blowup_route", |run| run.blowup_route(&aux)) {
            Ok((pattern, system, factor)) => {
                let direct = self.report.steps.iter().any(|s| s.placement != Placement::Blowup);
                self.report.route = Some(if direct { Route::Adaptive } else { Route::Blowup });
                self.report.final_pattern = Some(pattern);
                return Ok((system, factor));
            }
            Err(e) => e,
        };
        self.report.diagnostics.push(format!("blow-up route: {theory_err}"));
        if !self.config.fallback_enabled {
            return Err(theory_err);
        }

        let mut summary = FallbackSummary { budget_left: self.config.fallback_budget, ..Default::default() };
        let alternative = self.timed("alternative_bases", |run| run.alternative_bases(&aux, &mut summary));
        if let Some((pattern, system, factor)) = alternative {
            self.report.route = Some(Route::AlternativeBase);
            self.report.final_pattern = Some(pattern);
            self.report.fallback = Some(summary);
            return Ok((system, factor));
        }
        summary.direct_search_used = true;
        let mut left = summary.budget_left;
        let hit = self.timed("direct_search", |_| fallback_direct_search_in(&aux, k, &mut left));
        summary.budget_left = left;
        self.report.fallback = Some(summary);
        match hit {
            Some((system, factor)) => {
                self.report.route = Some(Route::DirectSearch);
                self.report.steps.clear();
                Ok((system, factor))
            }
            None => {
                self.report.diagnostics.push("direct search: no system found".into());
                Err(PipelineError::FallbackExhausted { budget: self.config.fallback_budget })
            }
        }
    }

    fn finish(
        mut self,
        instance: &HamiltonianInstance,
        outcome: Result<(AltCycleSystem, TwoFactor), PipelineError>,
    ) -> Result<Solution, SolveFailure> {
        let outcome = outcome.and_then(|(system, factor)| {
            let again = verify_two_factor(instance.graph(), &factor.edges())
                .map_err(|e| PipelineError::Internal(format!("final 2-factor does not verify: {e}")))?;
            if count_components(&again) != self.config.target_k {
                return Err(PipelineError::Internal(format!(
                    "final 2-factor has {} cycles, expected {}",
                    count_components(&again),
                    self.config.target_k
                )));
            }
            Ok((system, again))
        });
        match outcome {
            Ok((system, factor)) => {
                self.report.status = Status::Success;
                self.report.verified = true;
                self.report.components = Some(count_components(&factor));
                self.report.factor = Some(factor.clone());
                self.report.final_system = Some(system.clone());
                Ok(Solution { factor, system, report: self.report })
            }
            Err(error) => {
                self.report.error = Some(error.to_string());
                Err(SolveFailure { error, report: Box::new(self.report) })
            }
        }
    }

    /// Largest blow-up, ordered and thinned, its base cycle and the
    /// transform steps.
    fn blowup_route(&mut self, aux: &AuxGraph) -> Result<Steered, PipelineError> {
        let cfg = self.config;
        let mut best = find_alternating_cycle_blowup(aux, 1, cfg.max_pattern_len, &cfg.blowup)
            .map_err(PipelineError::NoAlternatingCycle)?;
        for t in 2..=cfg.max_cluster_size {
            match find_alternating_cycle_blowup(aux, t, cfg.max_pattern_len, &cfg.blowup) {
                Ok(b) => best = b,
                Err(e) => {
                    self.report.diagnostics.push(format!("blow-up with cluster size {t}: {e}"));
                    break;
                }
            }
        }
        let found = best.cluster_size();
        let ordered = order_blowup(&best, max_ordered_size(&best)).map_err(PipelineError::Blowup)?;
        let thinned = thin_non_neighbouring(&ordered, aux.n()).map_err(PipelineError::Blowup)?;
        self.report.blowup = Some(BlowupSummary {
            pattern_len: best.pattern_len(),
            found_cluster_size: found,
            ordered_cluster_size: ordered.cluster_size(),
            thinned_cluster_size: thinned.cluster_size(),
            embedding: thinned.clone(),
        });

        let base = AbstractPattern::from_blowup(&thinned);
        let system = embed_pattern(aux, &thinned, &base)
            .map_err(|e| PipelineError::Internal(format!("base cycle does not embed: {e}")))?;
        let factor =
            two_factor_of(aux, &system).map_err(|e| PipelineError::Internal(format!("F of the base cycle: {e}")))?;
        let ell = count_components(&factor);
        let k = cfg.target_k;
        let capacity_needed = if k >= ell {
            1u64.checked_shl((k - ell) as u32)
        } else {
            3u64.checked_pow((ell - k) as u32)
        };
        self.report.base = Some(BaseSummary {
            system: system.clone(),
            ell,
            capacity_needed,
            capacity_available: Some(thinned.cluster_size()),
        });
        self.steer(aux, Some(&thinned), base, system, factor)
    }

    /// Small systems without neighbouring vertices as alternative bases,
    /// those whose count is closest to `k` first.
    fn alternative_bases(&mut self, aux: &AuxGraph, summary: &mut FallbackSummary) -> Option<Steered> {
        let cfg = self.config;
        let k = cfg.target_k;
        let mut bases: Vec<(usize, AltCycleSystem, TwoFactor)> = Vec::new();
        let limit = cfg.alternative_bases;
        for size in [2, 4, 6] {
            if bases.len() >= limit {
                break;
            }
            let _ = for_each_system(aux, size, true, &mut summary.budget_left, |s| {
                if let Ok(f) = two_factor_of(aux, s) {
                    bases.push((count_components(&f), s.clone(), f));
                }
                if bases.len() >= limit {
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            });
        }
        bases.sort_by_key(|(c, s, _)| (c.abs_diff(k), s.len()));
        for (c, system, factor) in bases {
            summary.alternative_bases_tried += 1;
            self.report.steps.clear();
            let pattern = AbstractPattern::from_system(&system);
            match self.steer(aux, None, pattern, system.clone(), factor) {
                Ok(done) => {
                    self.report.base = Some(BaseSummary {
                        system,
                        ell: c,
                        capacity_needed: None,
                        capacity_available: None,
                    });
                    return Some(done);
                }
                Err(PipelineError::Internal(msg)) => {
                    self.report.diagnostics.push(format!("alternative base: internal error: {msg}"));
                    return None;
                }
                Err(_) => {}
            }
        }
        self.report.steps.clear();
        self.report.diagnostics.push(format!("alternative bases: {} tried, none reached k", summary.alternative_bases_tried));
        None
    }

    /// Applies going-up or going-down steps until the count is `k`. The
    /// canonical choice (first cycle, smallest separating vertex) is tried
    /// first, then the other candidates.
    fn steer(
        &mut self,
        aux: &AuxGraph,
        blowup: Option<&BlowupEmbedding>,
        mut pattern: AbstractPattern,
        mut system: AltCycleSystem,
        mut factor: TwoFactor,
    ) -> Result<Steered, PipelineError> {
        let k = self.config.target_k;
        loop {
            let c = count_components(&factor);
            if c == k {
                return Ok((pattern, system, factor));
            }
            let mut candidates = Vec::new();
            if c < k {
                let cycles = pattern.cycles();
                let mut ids: Vec<usize> = (1..cycles.len()).collect();
                ids.sort_by_key(|&i| cycles[i].len());
                ids.insert(0, 0);
                for id in ids {
                    let child = going_up_pattern(&pattern, id).map_err(|e| PipelineError::Internal(e.to_string()))?;
                    candidates.push((child, Some(id), None));
                }
            } else {
                let seps = separating_vertices(aux, &system, &factor);
                if seps.is_empty() {
                    return Err(PipelineError::Internal(format!("F(S) has {c} cycles but no separating vertex")));
                }
                let vertices = system.vertices();
                for e in seps {
                    let idx = vertices.binary_search(&e).expect("separating vertices belong to S");
                    let child =
                        going_down_pattern(&pattern, idx).map_err(|e| PipelineError::Internal(e.to_string()))?;
                    candidates.push((child, None, Some(e)));
                }
            }
            let step_no = self.report.steps.len() as u64;
            let mut placed = None;
            for (rank, (child, cycle_id, sep)) in candidates.into_iter().take(self.config.max_choices).enumerate() {
                if let Some((next, how)) = self.place(aux, blowup, &system, &child, step_no) {
                    placed = Some((rank, child, cycle_id, sep, next, how));
                    break;
                }
            }
            let Some((rank, child, cycle_id, sep, next, how)) = placed else {
                return Err(PipelineError::Steering {
                    reached: c,
                    reason: format!("no candidate of step {} could be placed", step_no + 1),
                });
            };
            let next_factor = two_factor_of(aux, &next).map_err(|e| PipelineError::Internal(e.to_string()))?;
            let after = count_components(&next_factor);
            let expected = if c < k { c + 1 } else { c - 1 };
            if after != expected {
                return Err(PipelineError::Internal(format!(
                    "step {} moved the count from {c} to {after}, expected {expected}",
                    step_no + 1
                )));
            }
            self.report.steps.push(TransformStep {
                kind: if c < k { StepKind::Up } else { StepKind::Down },
                cycle_id,
                separating_vertex: sep.map(|e| e + 1),
                choice_rank: rank,
                placement: how,
                pattern_size: child.len(),
                components_before: c,
                components_after: after,
            });
            pattern = child;
            system = next;
            factor = next_factor;
        }
    }

    fn place(
        &self,
        aux: &AuxGraph,
        blowup: Option<&BlowupEmbedding>,
        parent: &AltCycleSystem,
        child: &AbstractPattern,
        step_no: u64,
    ) -> Option<(AltCycleSystem, Placement)> {
        if let Some(b) = blowup {
            if let Ok(s) = embed_pattern(aux, b, child) {
                return Some((s, Placement::Blowup));
            }
        }
        let lowest = DirectSearch { budget: self.config.embed.budget, shuffle_seed: None };
        if let Ok(s) = embed_child_incremental(aux, &parent.vertices(), child, &lowest) {
            return Some((s, Placement::Incremental));
        }
        if let Ok(s) = embed_pattern_direct(aux, child, &lowest) {
            return Some((s, Placement::Direct));
        }
        let seed = self.config.embed.shuffle_seed.unwrap_or(self.config.seed);
        let shuffled = DirectSearch { budget: self.config.embed.budget, shuffle_seed: Some(seed.wrapping_add(step_no)) };
        embed_pattern_direct(aux, child, &shuffled).ok().map(|s| (s, Placement::Shuffled))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{gen_extremal, extremal_hamilton_order, gen_random_hamiltonian};
    use crate::graph::{named, validate_hamiltonian};

    #[test]
    fn k_one_short_circuits() {
        let inst = gen_random_hamiltonian(30, 0.3, 1).unwrap();
        let sol = solve(inst, &PipelineConfig::with_target(1)).unwrap();
        assert_eq!(sol.report.route, Some(Route::Trivial));
        assert!(sol.system.is_empty());
        assert_eq!(count_components(&sol.factor), 1);
    }

    #[test]
    fn planted_three_cycles() {
        let inst = gen_random_hamiltonian(80, 0.35, 7).unwrap();
        let sol = solve(inst.clone(), &PipelineConfig::with_target(3)).unwrap();
        assert_eq!(count_components(&sol.factor), 3);
        verify_two_factor(inst.graph(), &sol.factor.edges()).unwrap();
        assert!(sol.report.verified);
    }

    #[test]
    fn extremal_fails() {
        let order = extremal_hamilton_order(10, 3).unwrap();
        let inst = validate_hamiltonian(gen_extremal(10, 3).unwrap(), order).unwrap();
        let err = solve(inst, &PipelineConfig::with_target(3)).unwrap_err();
        assert_eq!(err.report.status, Status::Failure);
        assert!(err.report.error.is_some());
    }

    #[test]
    fn bad_config_and_large_k() {
        let inst = gen_random_hamiltonian(12, 0.5, 1).unwrap();
        assert!(matches!(
            solve(inst.clone(), &PipelineConfig::with_target(0)).unwrap_err().error,
            PipelineError::InvalidConfig(_)
        ));
        assert!(matches!(
            solve(inst, &PipelineConfig::with_target(5)).unwrap_err().error,
            PipelineError::TargetTooLarge { k: 5, n: 12 }
        ));
    }

    #[test]
    fn direct_search_order() {
        let mut g = named::cycle(6);
        g.add_edge(0, 2).unwrap();
        g.add_edge(1, 3).unwrap();
        let aux = build_auxiliary(validate_hamiltonian(g, (0..6).collect()).unwrap());
        let (s, f) = fallback_direct_search(&aux, 1, 1000).unwrap();
        assert!(s.is_empty());
        assert_eq!(count_components(&f), 1);

        let aux = build_auxiliary(validate_hamiltonian(named::complete(10), (0..10).collect()).unwrap());
        let (_, f) = fallback_direct_search(&aux, 2, 1_000_000).unwrap();
        assert_eq!(count_components(&f), 2);
    }

    #[test]
    fn theory_params() {
        let p = theoretical_params(0.5, 2, Some(100)).unwrap();
        assert_eq!(p.l, lemma_params(0.25).unwrap().l);
        assert!(p.big_n >= 8 && p.big_n >= p.big_k);
        assert_eq!(p.desk_scale, Some(true));
        assert!(theoretical_params(1.0, 2, None).is_err());
        assert!(theoretical_params(0.1, 2, None).unwrap().big_n > p.big_n);
    }

    #[test]
    fn reports_are_deterministic() {
        let inst = Arc::new(gen_random_hamiltonian(50, 0.4, 3).unwrap());
        let cfg = PipelineConfig::with_target(4);
        let a = solve(Arc::clone(&inst), &cfg).map(|s| s.report).unwrap_or_else(|f| *f.report);
        let b = solve(inst, &cfg).map(|s| s.report).unwrap_or_else(|f| *f.report);
        assert_eq!(a.without_timings().to_json(), b.without_timings().to_json());
    }
}
