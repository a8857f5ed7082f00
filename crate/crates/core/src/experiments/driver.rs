use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::anonymization::exceeds;
use super::{
    detect_anonymization, detect_community, loglog_fit, median_t_hat, AnonymizationEstimate, ExperimentConfig,
    LogLogFit, ModelKind, TraceRecord, WalkKind,
};
use crate::error::{Error, Result};
use crate::graph::{sample_er, sample_sbm, Graph, Partition, SbmParams};
use crate::matching::{match_correctness, sgm_faq, SeedSet, SolverOptions};
use crate::rng::RngStream;
use crate::walk::{run_walk, start_walk, BlockWalkParams, StandardWalkParams, WalkSpec};

/// Everything one replicate needs besides the experiment config.
#[derive(Debug, Clone)]
pub struct ReplicateInput<'a> {
    pub g0: &'a Graph,
    /// Communities tracked for per-community correctness.
    pub partition: Option<&'a Partition>,
    pub walk: WalkSpec,
    pub steps: u64,
    pub cadence: u64,
    /// Seeds, walk and solver draw from children 1, 2 and 3 of this stream.
    pub stream: RngStream,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReplicateOutcome {
    pub n: usize,
    pub replicate: usize,
    pub steps_run: u64,
    /// First step at which every vertex pair had been traversed.
    pub cover_time: Option<u64>,
    pub n_free: usize,
    pub community_sizes: Vec<usize>,
    pub community_free: Vec<usize>,
    pub trace: Vec<TraceRecord>,
    /// One estimate per configured β.
    pub global: Vec<AnonymizationEstimate>,
    /// `per_community[k][b]` for community `k` and the `b`-th β.
    pub per_community: Vec<Vec<AnonymizationEstimate>>,
}

impl ReplicateOutcome {
    pub fn global_t_hat(&self, beta_index: usize) -> Option<u64> {
        self.global[beta_index].t_hat
    }

    pub fn community_t_hat(&self, k: usize, beta_index: usize) -> Option<u64> {
        self.per_community[k][beta_index].t_hat
    }
}

/// All replicates for one graph size plus their medians.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SizeSummary {
    pub n: usize,
    pub cadence: u64,
    pub steps: u64,
    pub replicates: Vec<ReplicateOutcome>,
    /// Median global `t̂` per β (missing estimates count as `+∞`).
    pub median_global: Vec<Option<f64>>,
    /// `median_community[k][b]`.
    pub median_community: Vec<Vec<Option<f64>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepResult {
    pub config: ExperimentConfig,
    pub sizes: Vec<SizeSummary>,
    /// Log-log fit of median global `t̂` against `n` per β, when at least two
    /// sizes have a finite median.
    pub fits: Vec<Option<LogLogFit<f64>>>,
}

/// Incremental persistence check for one series at one β.
struct Watch {
    n: usize,
    n_free: usize,
    run: usize,
    done: bool,
}

impl Watch {
    fn update(&mut self, correctness: f64, beta: f64, persistence: usize) {
        if self.done {
            return;
        }
        if exceeds(correctness, self.n, self.n_free, beta) {
            self.run += 1;
            self.done = self.run >= persistence;
        } else {
            self.run = 0;
        }
    }
}

fn detectable(n: usize, n_free: usize, beta: f64) -> bool {
    n_free as f64 > (n as f64).powf(beta)
}

/// Runs the walk from `input.g0`, matching each checkpoint back to `g0` with
/// seeded graph matching, then estimates anonymization times.
pub fn run_replicate(input: &ReplicateInput<'_>, config: &ExperimentConfig, replicate: usize) -> Result<ReplicateOutcome> {
    let g0 = input.g0;
    let n = g0.n();
    if let Some(p) = input.partition {
        if p.n() != n {
            return Err(Error::DimensionMismatch { expected: n, found: p.n() });
        }
    }
    let seeds = SeedSet::random(n, config.seed_fraction, &mut input.stream.child(1).generator())?;
    let mut walk_rng = input.stream.child(2).generator();
    let opts = SolverOptions { rng: input.stream.child(3), ..config.solver.clone() };
    let (mut kernel, mut state) = start_walk(g0, &input.walk, &mut walk_rng)?;

    let (community_sizes, community_free): (Vec<usize>, Vec<usize>) = match input.partition {
        Some(p) => (0..p.k())
            .map(|k| (p.size(k), p.members(k).iter().filter(|&&v| !seeds.contains(v)).count()))
            .unzip(),
        None => (Vec::new(), Vec::new()),
    };
    let n_free = seeds.free_count();
    let beta = config.max_beta();
    let mut watches: Vec<(Option<usize>, Watch)> = std::iter::once((None, n, n_free))
        .chain((0..community_sizes.len()).map(|k| (Some(k), community_sizes[k], community_free[k])))
        .filter(|&(_, nk, fk)| detectable(nk, fk, beta))
        .map(|(k, nk, fk)| (k, Watch { n: nk, n_free: fk, run: 0, done: false }))
        .collect();

    let mut trace = Vec::new();
    let mut failure = None;
    run_walk(&mut kernel, &mut state, input.steps, input.cadence, &mut walk_rng, |s| {
        let result = match sgm_faq(g0, &s.graph, &seeds, &opts) {
            Ok(r) => r,
            Err(e) => {
                failure = Some(e);
                return ControlFlow::Break(());
            }
        };
        let (correctness, per_community) = match_correctness(&result.permutation, &seeds, input.partition);
        for (k, w) in watches.iter_mut() {
            let c = match k {
                None => correctness,
                Some(k) => per_community.as_ref().expect("partition present")[*k],
            };
            w.update(c, beta, config.persistence);
        }
        trace.push(TraceRecord { step: s.step, correctness, cover_rate: s.cover_rate(), per_community, objective: result.objective });
        if config.early_stop && !watches.is_empty() && watches.iter().all(|(_, w)| w.done) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }

    let global = config.betas.iter().map(|&b| detect_anonymization(&trace, n, n_free, b, config.persistence)).collect();
    let per_community = (0..community_sizes.len())
        .map(|k| {
            config
                .betas
                .iter()
                .map(|&b| detect_community(&trace, k, community_sizes[k], community_free[k], b, config.persistence))
                .collect()
        })
        .collect();
    Ok(ReplicateOutcome {
        n,
        replicate,
        steps_run: state.step,
        cover_time: state.cover.cover_time(),
        n_free,
        community_sizes,
        community_free,
        trace,
        global,
        per_community,
    })
}

fn summarize(n: usize, cadence: u64, steps: u64, replicates: Vec<ReplicateOutcome>, config: &ExperimentConfig) -> SizeSummary {
    let nb = config.betas.len();
    let median_global = (0..nb)
        .map(|b| median_t_hat(&replicates.iter().map(|r| r.global_t_hat(b)).collect::<Vec<_>>()))
        .collect();
    let k = replicates.first().map_or(0, |r| r.per_community.len());
    let median_community = (0..k)
        .map(|c| {
            (0..nb)
                .map(|b| median_t_hat(&replicates.iter().map(|r| r.community_t_hat(c, b)).collect::<Vec<_>>()))
                .collect()
        })
        .collect();
    SizeSummary { n, cadence, steps, replicates, median_global, median_community }
}

fn fits(sizes: &[SizeSummary], betas: usize) -> Vec<Option<LogLogFit<f64>>> {
    (0..betas)
        .map(|b| {
            let points: Vec<(f64, f64)> =
                sizes.iter().filter_map(|s| s.median_global[b].map(|t| (s.n as f64, t.max(1.0)))).collect();
            loglog_fit(&points).ok()
        })
        .collect()
}

/// Graph, optional partition and walk for replicate `r` at size `n`.
type Instance = (Graph, Option<Partition>, WalkSpec);

fn sweep<F>(config: &ExperimentConfig, expected: ModelKind, make: F) -> Result<SweepResult>
where
    F: Fn(usize, &RngStream) -> Result<Instance> + Sync,
{
    config.validate()?;
    if config.model != expected {
        return Err(Error::InvalidArgument(format!("config model is {:?}, expected {expected:?}", config.model)));
    }
    let root = RngStream::root(config.seed);
    let jobs: Vec<(usize, usize)> =
        (0..config.n_values.len()).flat_map(|i| (0..config.replicates).map(move |r| (i, r))).collect();
    let outcomes: Vec<Result<ReplicateOutcome>> = jobs
        .par_iter()
        .map(|&(i, r)| {
            let n = config.n_values[i];
            let stream = root.path(&[n as u64, r as u64]);
            let (g0, partition, walk) = make(n, &stream.child(0))?;
            let input = ReplicateInput {
                g0: &g0,
                partition: partition.as_ref(),
                walk,
                steps: config.steps_for(i, n),
                cadence: config.cadence_for(i),
                stream,
            };
            run_replicate(&input, config, r)
        })
        .collect();
    let mut outcomes = outcomes.into_iter();
    let mut sizes = Vec::with_capacity(config.n_values.len());
    for (i, &n) in config.n_values.iter().enumerate() {
        let reps = outcomes.by_ref().take(config.replicates).collect::<Result<Vec<_>>>()?;
        sizes.push(summarize(n, config.cadence_for(i), config.steps_for(i, n), reps, config));
    }
    let fits = fits(&sizes, config.betas.len());
    Ok(SweepResult { config: config.clone(), sizes, fits })
}

/// Standard walk on `ER(n, p)` for every configured size.
pub fn run_er_sweep(config: &ExperimentConfig) -> Result<SweepResult> {
    let params = StandardWalkParams::new(config.q_on_to_off, config.q_off_to_on)?;
    sweep(config, ModelKind::Er, |n, stream| {
        let g0 = sample_er(n, config.p, &mut stream.generator())?;
        Ok((g0, None, WalkSpec::Standard(params)))
    })
}

fn sbm_params(config: &ExperimentConfig, n: usize) -> Result<SbmParams> {
    match config.sbm_blocks {
        Some(k) => SbmParams::experiment_preset(n, k),
        None => SbmParams::sized_preset(n),
    }
}

/// Block walk on the preset SBM for every configured size, tracking
/// per-community correctness.
pub fn run_sbm_sweep(config: &ExperimentConfig) -> Result<SweepResult> {
    for &n in &config.n_values {
        sbm_params(config, n)?;
    }
    sweep(config, ModelKind::Sbm, |n, stream| {
        let (g0, partition) = sample_sbm(&sbm_params(config, n)?, &mut stream.generator())?;
        let spec = match config.walk {
            WalkKind::Block => WalkSpec::Block {
                params: BlockWalkParams::uniform(partition.k(), config.q_on_to_off, config.q_off_to_on)?,
                partition: partition.clone(),
            },
            WalkKind::Standard => WalkSpec::Standard(StandardWalkParams::new(config.q_on_to_off, config.q_off_to_on)?),
        };
        Ok((g0, Some(partition), spec))
    })
}

/// The pipeline on an externally supplied graph. With the block walk the
/// partition supplies the communities; with the standard walk it is optional
/// and only used for per-community correctness.
pub fn run_loaded_graph(g0: &Graph, partition: Option<&Partition>, config: &ExperimentConfig) -> Result<SizeSummary> {
    config.validate()?;
    let walk = match (config.walk, partition) {
        (WalkKind::Block, None) => {
            return Err(Error::InvalidArgument("the block walk on a loaded graph needs a community partition".into()))
        }
        (WalkKind::Block, Some(p)) => WalkSpec::Block {
            params: BlockWalkParams::uniform(p.k(), config.q_on_to_off, config.q_off_to_on)?,
            partition: p.clone(),
        },
        (WalkKind::Standard, _) => WalkSpec::Standard(StandardWalkParams::new(config.q_on_to_off, config.q_off_to_on)?),
    };
    let n = g0.n();
    let (steps, cadence) = (config.steps_for(0, n), config.cadence_for(0));
    let root = RngStream::root(config.seed);
    let replicates = (0..config.replicates)
        .into_par_iter()
        .map(|r| {
            let input = ReplicateInput {
                g0,
                partition,
                walk: walk.clone(),
                steps,
                cadence,
                stream: root.path(&[n as u64, r as u64]),
            };
            run_replicate(&input, config, r)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(n, cadence, steps, replicates, config))
}
