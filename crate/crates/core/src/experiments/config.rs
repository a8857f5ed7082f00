use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matching::{Init, SolverOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    Er,
    Sbm,
    Loaded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WalkKind {
    Standard,
    Block,
}

/// Parameters of a sweep. Vectors indexed by size (`cadence`, `step_budget`)
/// either have one entry per `n_values` element or a single entry used for
/// every size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub name: String,
    pub model: ModelKind,
    pub walk: WalkKind,
    pub n_values: Vec<usize>,
    /// Edge probability of the ER model.
    pub p: f64,
    /// Number of SBM blocks for sizes without a built-in preset.
    pub sbm_blocks: Option<usize>,
    pub q_on_to_off: f64,
    pub q_off_to_on: f64,
    /// Checkpoint spacing `s_n`.
    pub cadence: Vec<u64>,
    /// Steps per replicate; empty means `budget_factor · n² ln n`.
    pub step_budget: Vec<u64>,
    pub budget_factor: f64,
    pub seed_fraction: f64,
    pub betas: Vec<f64>,
    pub persistence: usize,
    pub replicates: usize,
    /// End a replicate once every series has been detected at the largest β.
    pub early_stop: bool,
    pub solver: SolverOptions,
    pub seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            name: "custom".into(),
            model: ModelKind::Er,
            walk: WalkKind::Standard,
            n_values: vec![49],
            p: 0.5,
            sbm_blocks: None,
            q_on_to_off: 0.5,
            q_off_to_on: 0.5,
            cadence: vec![1],
            step_budget: Vec::new(),
            budget_factor: 6.0,
            seed_fraction: 0.05,
            betas: vec![0.25, 0.5, 0.75],
            persistence: 3,
            replicates: 5,
            early_stop: true,
            solver: SolverOptions::default(),
            seed: 2024,
        }
    }
}

impl ExperimentConfig {
    /// Names accepted by [`ExperimentConfig::preset`].
    pub const PRESETS: [&'static str; 8] =
        ["er-full", "er-ci", "er-smoke", "sbm-full", "sbm-ci", "sbm-smoke", "facebook", "eu-email"];

    pub fn preset(name: &str) -> Result<Self> {
        let er = Self {
            model: ModelKind::Er,
            walk: WalkKind::Standard,
            solver: SolverOptions::with_init(Init::Barycenter),
            ..Self::default()
        };
        let sbm = Self {
            model: ModelKind::Sbm,
            walk: WalkKind::Block,
            solver: SolverOptions::with_init(Init::Identity),
            budget_factor: 4.0,
            ..Self::default()
        };
        let mut c = match name {
            "er-full" => Self {
                n_values: vec![49, 100, 144, 225, 324, 729],
                cadence: vec![1, 1, 1, 3, 30, 300],
                ..er
            },
            "er-ci" => Self { n_values: vec![49, 100, 144, 225], cadence: vec![10, 25, 50, 100], ..er },
            "er-smoke" => Self { n_values: vec![16, 25], cadence: vec![4], replicates: 2, ..er },
            "sbm-full" => Self { n_values: vec![81, 256, 625], cadence: vec![1, 90, 2100], ..sbm },
            "sbm-ci" => Self { n_values: vec![81, 256], cadence: vec![20, 200], ..sbm },
            "sbm-smoke" => Self { n_values: vec![81], cadence: vec![200], replicates: 2, ..sbm },
            "facebook" => Self {
                model: ModelKind::Loaded,
                n_values: Vec::new(),
                cadence: vec![150],
                step_budget: vec![900_000],
                replicates: 1,
                early_stop: false,
                solver: SolverOptions::with_init(Init::Identity),
                ..Self::default()
            },
            "eu-email" => Self {
                model: ModelKind::Loaded,
                walk: WalkKind::Block,
                n_values: Vec::new(),
                cadence: vec![220],
                step_budget: vec![900_000],
                replicates: 1,
                early_stop: false,
                solver: SolverOptions::with_init(Init::Identity),
                ..Self::default()
            },
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown preset {other:?}; known presets: {}",
                    Self::PRESETS.join(", ")
                )))
            }
        };
        c.name = name.into();
        Ok(c)
    }

    fn per_size<T: Copy>(values: &[T], index: usize) -> Option<T> {
        match values.len() {
            0 => None,
            1 => Some(values[0]),
            _ => values.get(index).copied(),
        }
    }

    /// Checkpoint spacing for the `index`-th size.
    pub fn cadence_for(&self, index: usize) -> u64 {
        Self::per_size(&self.cadence, index).unwrap_or(1)
    }

    /// Step budget for a graph with `n` vertices at size index `index`.
    pub fn steps_for(&self, index: usize, n: usize) -> u64 {
        Self::per_size(&self.step_budget, index).unwrap_or_else(|| {
            let nf = n as f64;
            (self.budget_factor * nf * nf * nf.ln().max(1.0)).ceil() as u64
        })
    }

    pub fn validate(&self) -> Result<()> {
        let check_len = |what: &str, len: usize| {
            if len > 1 && self.model != ModelKind::Loaded && len != self.n_values.len() {
                Err(Error::InvalidArgument(format!(
                    "{what} has {len} entries but there are {} sizes",
                    self.n_values.len()
                )))
            } else {
                Ok(())
            }
        };
        check_len("cadence", self.cadence.len())?;
        check_len("step_budget", self.step_budget.len())?;
        if self.cadence.contains(&0) {
            return Err(Error::InvalidArgument("cadence must be >= 1".into()));
        }
        if self.model != ModelKind::Loaded && self.n_values.is_empty() {
            return Err(Error::InvalidArgument("n_values is empty".into()));
        }
        if self.n_values.iter().any(|&n| n < 2) {
            return Err(Error::InvalidArgument("every n must be at least 2".into()));
        }
        if self.betas.is_empty() || self.betas.iter().any(|&b| !(b > 0.0 && b < 1.0)) {
            return Err(Error::InvalidArgument("betas must be nonempty and lie in (0, 1)".into()));
        }
        if self.replicates == 0 {
            return Err(Error::InvalidArgument("replicates must be >= 1".into()));
        }
        if self.persistence == 0 {
            return Err(Error::InvalidArgument("persistence must be >= 1".into()));
        }
        if self.budget_factor.is_nan() || self.budget_factor <= 0.0 {
            return Err(Error::InvalidArgument("budget_factor must be positive".into()));
        }
        for (name, value) in [
            ("p", self.p),
            ("q_on_to_off", self.q_on_to_off),
            ("q_off_to_on", self.q_off_to_on),
            ("seed_fraction", self.seed_fraction),
        ] {
            crate::error::check_probability(name, value)?;
        }
        if self.model == ModelKind::Er && self.walk == WalkKind::Block {
            return Err(Error::InvalidArgument("the block walk needs communities; use model = \"sbm\" or a loaded graph with labels".into()));
        }
        self.solver.validate()
    }

    /// Largest β, the one driving early stopping.
    pub fn max_beta(&self) -> f64 {
        self.betas.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}
