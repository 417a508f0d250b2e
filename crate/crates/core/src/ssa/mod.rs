//! Sparrow search optimizer and its geometric variant.
//!
//! One generation ranks the flock, moves the producers, then the scroungers,
//! then a random subset of danger-aware sparrows. Every candidate is clamped,
//! evaluated and kept only if it improves on the member's current fitness,
//! so the best-so-far curve never rises.
//!
//! The three strategy switches in [`StrategyToggles`] select between the
//! original rules and their geometric replacements; the named presets cover
//! the plain algorithm, the full variant and the three single-ablation
//! variants.

mod init;
mod telemetry;
mod update;

use std::fmt;
use std::str::FromStr;

pub use init::{
    good_nodes_unit, good_nodes_unit_with, good_nodes_vector, init_good_nodes,
    init_good_nodes_with, init_pseudo_random, star_discrepancy_grid,
};
pub use telemetry::{explore_exploit_split, population_diversity};
pub use update::{
    edge_update_original, edge_update_triangular, inertia_weight, producer_update_original,
    producer_update_sine_cosine, scrounger_update, triangular_step, walk_range, walk_scale,
    EdgeMove, TriangularStep,
};

use crate::error::{Error, Result};
use crate::problem::Objective;
use crate::rng::{RandomSource, RngStream};

#[derive(Clone, Debug, PartialEq)]
pub struct Individual {
    pub position: Vec<f64>,
    pub fitness: f64,
    pub evaluated: bool,
}

impl Individual {
    pub fn unevaluated(position: Vec<f64>) -> Self {
        Self {
            position,
            fitness: f64::INFINITY,
            evaluated: false,
        }
    }
}

/// The flock plus its most recent fitness ranking.
#[derive(Clone, Debug, PartialEq)]
pub struct Population {
    members: Vec<Individual>,
    order: Vec<usize>,
}

impl Population {
    pub fn new(members: Vec<Individual>) -> Self {
        let order = (0..members.len()).collect();
        Self { members, order }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    /// Member indices from best to worst as of the last [`Population::rank`].
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Stable sort by fitness; equal fitness keeps member-index order.
    pub fn rank(&mut self) {
        let members = &self.members;
        self.order = (0..members.len()).collect();
        self.order
            .sort_by(|&a, &b| members[a].fitness.total_cmp(&members[b].fitness));
    }

    pub fn best_index(&self) -> usize {
        self.order[0]
    }

    pub fn worst_index(&self) -> usize {
        self.order[self.order.len() - 1]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SsaParams {
    /// Flock size.
    pub n: usize,
    /// Number of generations `T`.
    pub max_iter: usize,
    /// Producer share; the producer count is `round(pd_fraction n)`, at least 1.
    pub pd_fraction: f64,
    /// Danger-aware share; `ceil(sd_fraction n)` members move each generation.
    pub sd_fraction: f64,
    /// Safety threshold `ST`.
    pub st: f64,
    /// Division guard.
    pub epsilon: f64,
    /// Seed used by [`run_optimizer_seeded`].
    pub seed: u64,
    /// Draw the triangular-walk `(u1, u2)` per coordinate instead of once per
    /// sparrow.
    pub triangular_per_coordinate: bool,
    /// Overrides the good-nodes generating vector.
    pub good_nodes_vector: Option<Vec<f64>>,
}

impl Default for SsaParams {
    fn default() -> Self {
        Self {
            n: 30,
            max_iter: 500,
            pd_fraction: 0.3,
            sd_fraction: 0.2,
            st: 0.7,
            epsilon: 1e-50,
            seed: 0,
            triangular_per_coordinate: false,
            good_nodes_vector: None,
        }
    }
}

impl SsaParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.n < 2 {
            return Err(Error::InvalidPopulation(self.n));
        }
        if !(self.pd_fraction > 0.0 && self.pd_fraction < 1.0) {
            return bad(format!("pd_fraction must be in (0, 1), got {}", self.pd_fraction));
        }
        if !(self.sd_fraction > 0.0 && self.sd_fraction < 1.0) {
            return bad(format!("sd_fraction must be in (0, 1), got {}", self.sd_fraction));
        }
        if !(0.5..=1.0).contains(&self.st) {
            return bad(format!("st must be in [0.5, 1], got {}", self.st));
        }
        if !(self.epsilon > 0.0) {
            return bad(format!("epsilon must be positive, got {}", self.epsilon));
        }
        Ok(())
    }

    pub fn producer_count(&self) -> usize {
        ((self.pd_fraction * self.n as f64).round() as usize).clamp(1, self.n)
    }

    pub fn danger_count(&self) -> usize {
        ((self.sd_fraction * self.n as f64).ceil() as usize).clamp(1, self.n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InitStrategy {
    PseudoRandom,
    GoodNodes,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProducerStrategy {
    Original,
    SineCosine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeStrategy {
    Original,
    TriangularWalk,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StrategyToggles {
    pub init: InitStrategy,
    pub producer: ProducerStrategy,
    pub edge: EdgeStrategy,
}

impl StrategyToggles {
    pub const SSA: Self = Self {
        init: InitStrategy::PseudoRandom,
        producer: ProducerStrategy::Original,
        edge: EdgeStrategy::Original,
    };
    pub const GEOSSA: Self = Self {
        init: InitStrategy::GoodNodes,
        producer: ProducerStrategy::SineCosine,
        edge: EdgeStrategy::TriangularWalk,
    };
    /// Good-nodes initialization replaced by pseudo-random.
    pub const GEOSSA1: Self = Self {
        init: InitStrategy::PseudoRandom,
        ..Self::GEOSSA
    };
    /// Sine-cosine producers replaced by the original rule.
    pub const GEOSSA2: Self = Self {
        producer: ProducerStrategy::Original,
        ..Self::GEOSSA
    };
    /// Triangular walk replaced by the original danger-aware rule.
    pub const GEOSSA3: Self = Self {
        edge: EdgeStrategy::Original,
        ..Self::GEOSSA
    };
}

/// Named toggle presets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Preset {
    Ssa,
    GeoSsa,
    GeoSsa1,
    GeoSsa2,
    GeoSsa3,
}

impl Preset {
    pub const ALL: [Preset; 5] = [
        Preset::Ssa,
        Preset::GeoSsa,
        Preset::GeoSsa1,
        Preset::GeoSsa2,
        Preset::GeoSsa3,
    ];

    pub fn toggles(self) -> StrategyToggles {
        match self {
            Preset::Ssa => StrategyToggles::SSA,
            Preset::GeoSsa => StrategyToggles::GEOSSA,
            Preset::GeoSsa1 => StrategyToggles::GEOSSA1,
            Preset::GeoSsa2 => StrategyToggles::GEOSSA2,
            Preset::GeoSsa3 => StrategyToggles::GEOSSA3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Preset::Ssa => "SSA",
            Preset::GeoSsa => "GeoSSA",
            Preset::GeoSsa1 => "GeoSSA1",
            Preset::GeoSsa2 => "GeoSSA2",
            Preset::GeoSsa3 => "GeoSSA3",
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidInput(format!("unknown algorithm preset `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IterationTelemetry {
    /// 1-based generation index.
    pub t: usize,
    pub best_fitness: f64,
    pub diversity: f64,
    pub exploration_pct: f64,
    pub exploitation_pct: f64,
    /// Member positions after the generation, when history is recorded.
    pub snapshot: Option<Vec<Vec<f64>>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunResult {
    pub best_position: Vec<f64>,
    pub best_fitness: f64,
    pub curve: Vec<IterationTelemetry>,
    pub evaluations: usize,
    pub seed: u64,
    pub stream_id: u64,
    /// Number of danger-aware moves that hit the division guard.
    pub guard_events: usize,
    /// Initial positions, when history is recorded.
    pub initial_snapshot: Option<Vec<Vec<f64>>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Keep every generation's positions (search history).
    pub record_history: bool,
}

/// Runs one optimization with a stream derived from `params.seed`.
pub fn run_optimizer_seeded(
    problem: &dyn Objective,
    params: &SsaParams,
    toggles: StrategyToggles,
) -> Result<RunResult> {
    let mut rng = RngStream::new(params.seed, 0);
    run_optimizer(problem, params, toggles, &mut rng)
}

pub fn run_optimizer(
    problem: &dyn Objective,
    params: &SsaParams,
    toggles: StrategyToggles,
    rng: &mut RngStream,
) -> Result<RunResult> {
    run_optimizer_with(problem, params, toggles, rng, RunOptions::default())
}

struct Flock<'a> {
    problem: &'a dyn Objective,
    pop: Population,
    best: usize,
    evaluations: usize,
    iteration: usize,
}

impl Flock<'_> {
    fn evaluate(&mut self, x: &[f64], rng: &mut RngStream) -> Result<f64> {
        self.evaluations += 1;
        self.problem
            .evaluate(x, rng)
            .map_err(|e| Error::Objective {
                iteration: self.iteration,
                source: Box::new(e),
            })
    }

    /// Clamp, evaluate, keep if better.
    fn offer(&mut self, idx: usize, mut candidate: Vec<f64>, rng: &mut RngStream) -> Result<()> {
        self.problem.space().clamp_in_place(&mut candidate);
        let fitness = self.evaluate(&candidate, rng)?;
        let member = &mut self.pop.members[idx];
        if fitness < member.fitness {
            member.position = candidate;
            member.fitness = fitness;
            if fitness < self.pop.members[self.best].fitness {
                self.best = idx;
            }
        }
        Ok(())
    }

    fn best_position(&self) -> Vec<f64> {
        self.pop.members[self.best].position.clone()
    }

    fn best_fitness(&self) -> f64 {
        self.pop.members[self.best].fitness
    }

    fn snapshot(&self) -> Vec<Vec<f64>> {
        self.pop.members.iter().map(|m| m.position.clone()).collect()
    }
}

/// Sorted-without-replacement sample of `k` indices from `0..n` via a partial
/// Fisher-Yates shuffle (one uniform draw per pick).
fn sample_indices<R: RandomSource + ?Sized>(n: usize, k: usize, rng: &mut R) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..k.min(n) {
        let j = i + rng.index(n - i);
        pool.swap(i, j);
    }
    pool.truncate(k.min(n));
    pool
}

pub fn run_optimizer_with(
    problem: &dyn Objective,
    params: &SsaParams,
    toggles: StrategyToggles,
    rng: &mut RngStream,
    options: RunOptions,
) -> Result<RunResult> {
    params.validate()?;
    let space = problem.space();
    let n = params.n;
    let max_iter = params.max_iter;

    let pop = match toggles.init {
        InitStrategy::PseudoRandom => init_pseudo_random(space, n, rng)?,
        InitStrategy::GoodNodes => match &params.good_nodes_vector {
            Some(r) => init_good_nodes_with(space, n, r)?,
            None => init_good_nodes(space, n)?,
        },
    };
    let mut flock = Flock {
        problem,
        pop,
        best: 0,
        evaluations: 0,
        iteration: 0,
    };
    for idx in 0..n {
        let x = flock.pop.members[idx].position.clone();
        let fitness = flock.evaluate(&x, rng)?;
        let member = &mut flock.pop.members[idx];
        member.fitness = fitness;
        member.evaluated = true;
    }
    flock.pop.rank();
    flock.best = flock.pop.best_index();

    let initial_snapshot = options.record_history.then(|| flock.snapshot());
    let mut max_diversity = population_diversity(flock.pop.members());
    let producers = params.producer_count();
    let danger = params.danger_count();
    let mut guard_events = 0;
    let mut curve = Vec::with_capacity(max_iter);

    for t in 1..=max_iter {
        flock.iteration = t;
        flock.pop.rank();
        flock.best = flock.pop.best_index();
        let worst_idx = flock.pop.worst_index();
        let worst = flock.pop.members[worst_idx].position.clone();
        let worst_fitness = flock.pop.members[worst_idx].fitness;
        let order = flock.pop.order().to_vec();

        for (i, &idx) in order.iter().enumerate().take(producers) {
            let x = &flock.pop.members[idx].position;
            let candidate = match toggles.producer {
                ProducerStrategy::Original => producer_update_original(x, i + 1, params, rng),
                ProducerStrategy::SineCosine => {
                    let best = &flock.pop.members[flock.best].position;
                    producer_update_sine_cosine(x, best, t, params, rng)
                }
            };
            flock.offer(idx, candidate, rng)?;
        }

        let producer_best = flock.best_position();
        for (i, &idx) in order.iter().enumerate().skip(producers) {
            let x = &flock.pop.members[idx].position;
            let candidate = scrounger_update(x, i + 1, &producer_best, &worst, n, rng);
            flock.offer(idx, candidate, rng)?;
        }

        for idx in sample_indices(n, danger, rng) {
            let member = &flock.pop.members[idx];
            let candidate = match toggles.edge {
                EdgeStrategy::Original => {
                    let best = &flock.pop.members[flock.best];
                    let step = edge_update_original(
                        &member.position,
                        &best.position,
                        &worst,
                        member.fitness,
                        best.fitness,
                        worst_fitness,
                        params,
                        rng,
                    );
                    guard_events += usize::from(step.guarded);
                    step.position
                }
                EdgeStrategy::TriangularWalk => edge_update_triangular(
                    &member.position,
                    &producer_best,
                    t,
                    max_iter,
                    params.triangular_per_coordinate,
                    rng,
                ),
            };
            flock.offer(idx, candidate, rng)?;
        }

        let diversity = population_diversity(flock.pop.members());
        max_diversity = max_diversity.max(diversity);
        let (exploration_pct, exploitation_pct) = explore_exploit_split(diversity, max_diversity);
        curve.push(IterationTelemetry {
            t,
            best_fitness: flock.best_fitness(),
            diversity,
            exploration_pct,
            exploitation_pct,
            snapshot: options.record_history.then(|| flock.snapshot()),
        });
    }

    Ok(RunResult {
        best_position: flock.best_position(),
        best_fitness: flock.best_fitness(),
        curve,
        evaluations: flock.evaluations,
        seed: rng.seed(),
        stream_id: rng.stream_id(),
        guard_events,
        initial_snapshot,
    })
}
