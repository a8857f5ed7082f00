use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::ControlFlow;
use std::path::{Path, PathBuf};
use std::time::Instant;

use edgelighter::chain::{
    cover_time_stats, enumerate_block_chain, enumerate_standard_chain, exact_mixing_time, ChainModel, CoverProcess,
};
use edgelighter::experiments::{run_er_sweep, run_loaded_graph, run_sbm_sweep, ExperimentConfig, SizeSummary, SweepResult};
use edgelighter::graph::{pair_count, pair_endpoints, sample_er, sample_sbm, Graph, Partition, SbmParams};
use edgelighter::io::{
    loglog_svg, parse_edge_list, parse_labels, parse_trace_csv, summary_csv, trace_csv, trace_svg, write_edge_list,
    EdgeListFile, LabelFile, LoadedGraph,
};
use edgelighter::matching::{brute_force_gmp, sgm_faq, Init, SeedSet, SolverOptions};
use edgelighter::walk::{run_walk, start_walk, BlockWalkParams, StandardWalkParams, WalkSpec};
use edgelighter::RngStream;
use serde_json::json;

use crate::config::load_config;
use crate::{ChainCommand, ChainParams, Cli, CliError, Command, ExperimentArgs, ExperimentCommand, InitArg, ModelArg, WalkArg};

const DEFAULT_SEED: u64 = 2024;

type CmdResult = Result<(), CliError>;

struct Out {
    dir: PathBuf,
    written: Vec<String>,
}

impl Out {
    fn write(&mut self, name: &str, contents: &str) -> CmdResult {
        let path = self.dir.join(name);
        std::fs::write(&path, contents).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
        self.written.push(name.to_string());
        Ok(())
    }
}

pub fn run(cli: &Cli) -> CmdResult {
    if cli.threads > 0 {
        // a second initialization (only possible in tests) keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global();
    }
    std::fs::create_dir_all(&cli.out_dir)
        .map_err(|e| CliError::Data(format!("{}: {e}", cli.out_dir.display())))?;
    let mut out = Out { dir: cli.out_dir.clone(), written: Vec::new() };
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    match &cli.command {
        Command::Sample(a) => sample(a, seed, &mut out),
        Command::Walk(a) => walk(a, seed, &mut out),
        Command::Chain(c) => chain(c, seed, &mut out),
        Command::Match(a) => matching(a, seed, &mut out),
        Command::Experiment(e) => experiment(e, cli.seed, &mut out),
        Command::Ingest(a) => ingest(a, &mut out),
        Command::Plot(a) => {
            let text = read(&a.trace)?;
            let trace = parse_trace_csv(&text)?;
            out.write(&a.output, &trace_svg(&trace, &a.title)?)
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<LoadedGraph, CliError> {
    parse_edge_list(&EdgeListFile::new(path)).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn load_partition(graph: &LoadedGraph, path: &Path) -> Result<Partition, CliError> {
    let labels = parse_labels(&LabelFile { path: path.to_path_buf() })
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    graph.partition(&labels).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn labels_text(partition: &Partition) -> String {
    let mut s = String::from("# vertex label\n");
    for (v, l) in partition.labels().iter().enumerate() {
        let _ = writeln!(s, "{v} {l}");
    }
    s
}

fn sample(a: &crate::SampleArgs, seed: u64, out: &mut Out) -> CmdResult {
    let mut rng = RngStream::root(seed).generator();
    match a.model {
        ModelArg::Er => {
            let g = sample_er(a.n, a.p, &mut rng)?;
            out.write(&a.output, &write_edge_list(&g))?;
            println!("sampled ER({}, {}) with {} edges", a.n, a.p, g.edge_count());
        }
        ModelArg::Sbm => {
            let params = match a.blocks {
                Some(k) => SbmParams::experiment_preset(a.n, k)?,
                None => SbmParams::sized_preset(a.n)?,
            };
            let (g, partition) = sample_sbm(&params, &mut rng)?;
            out.write(&a.output, &write_edge_list(&g))?;
            out.write("labels.txt", &labels_text(&partition))?;
            println!("sampled SBM with block sizes {:?} and {} edges", params.sizes(), g.edge_count());
        }
    }
    Ok(())
}

fn walk(a: &crate::WalkArgs, seed: u64, out: &mut Out) -> CmdResult {
    let loaded = load_graph(&a.graph)?;
    let spec = match a.kind {
        WalkArg::Standard => WalkSpec::Standard(StandardWalkParams::new(a.q_on_to_off, a.q_off_to_on)?),
        WalkArg::Block => {
            let path = a.labels.as_ref().ok_or_else(|| CliError::Config("--labels is required for the block walk".into()))?;
            let partition = load_partition(&loaded, path)?;
            WalkSpec::Block { params: BlockWalkParams::uniform(partition.k(), a.q_on_to_off, a.q_off_to_on)?, partition }
        }
    };
    let mut rng = RngStream::root(seed).generator();
    let (mut kernel, mut state) = start_walk(&loaded.graph, &spec, &mut rng)?;
    let mut csv = String::from("step,position,edge_count,cover_rate\n");
    run_walk(&mut kernel, &mut state, a.steps, a.every, &mut rng, |s| {
        let _ = writeln!(csv, "{},{},{},{}", s.step, s.position, s.graph.edge_count(), s.cover_rate());
        ControlFlow::Continue(())
    })?;
    out.write("walk.csv", &csv)?;
    out.write("final_graph.txt", &write_edge_list(&state.graph))?;
    println!("walked {} steps; cover time {:?}", state.step, state.cover.cover_time());
    Ok(())
}

fn build_chain(p: &ChainParams) -> Result<ChainModel<f64>, CliError> {
    match (&p.sizes, p.n) {
        (Some(sizes), _) => {
            let partition = Partition::contiguous(sizes)?;
            let n = partition.n();
            let mut g0 = Graph::empty(n);
            let mut added = 0;
            for idx in 0..pair_count(n) {
                let (u, v) = pair_endpoints(n, idx);
                if added < p.cross_edges && partition.label(u) != partition.label(v) {
                    g0.add_edge(u, v);
                    added += 1;
                }
            }
            if added < p.cross_edges {
                return Err(CliError::Config(format!("only {added} cross-community pairs exist")));
            }
            let params = BlockWalkParams::uniform(partition.k(), p.q_on_to_off, p.q_off_to_on)?;
            Ok(enumerate_block_chain(&g0, &partition, &params)?)
        }
        (None, Some(n)) => Ok(enumerate_standard_chain(n, &StandardWalkParams::new(p.q_on_to_off, p.q_off_to_on)?)?),
        (None, None) => Err(CliError::Config("pass --n for the standard chain or --sizes for the block chain".into())),
    }
}

fn chain(c: &ChainCommand, seed: u64, out: &mut Out) -> CmdResult {
    match c {
        ChainCommand::Enumerate(p) => {
            let m = build_chain(p)?;
            out.write("transitions.csv", &m.transitions_csv())?;
            out.write("states.csv", &m.states_csv())?;
            println!("{} states; max row-sum error {:e}", m.len(), m.row_sum_error());
        }
        ChainCommand::Stationary(p) => {
            let m = build_chain(p)?;
            let power = m.power_stationary(1e-12, 1_000_000)?;
            let mut csv = String::from("index,closed_form,power_iteration\n");
            let mut worst: f64 = 0.0;
            for (i, (&a, &b)) in m.stationary().iter().zip(&power).enumerate() {
                worst = worst.max((a - b).abs());
                let _ = writeln!(csv, "{i},{a},{b}");
            }
            out.write("stationary.csv", &csv)?;
            println!(
                "max |closed form - power iteration| = {worst:e}; detailed balance residual = {:e}",
                m.detailed_balance_residual(m.stationary())
            );
        }
        ChainCommand::Mixing { params, epsilon } => {
            let m = build_chain(params)?;
            let report = exact_mixing_time(&m, *epsilon)?;
            let mut csv = String::from("t,max_tv\n");
            for (t, d) in &report.tv_curve {
                let _ = writeln!(csv, "{t},{d}");
            }
            out.write("tv_curve.csv", &csv)?;
            println!("t_mix({epsilon}) = {}", report.t_mix);
        }
        ChainCommand::Cover { n, replicates } => {
            let stats = cover_time_stats(&CoverProcess::Standard { n: *n }, *replicates, &RngStream::root(seed))?;
            let mut csv = String::from("replicate,cover_time\n");
            for (r, t) in stats.samples.iter().enumerate() {
                let _ = writeln!(csv, "{r},{t}");
            }
            out.write("cover_samples.csv", &csv)?;
            let summary = json!({
                "n": stats.n,
                "replicates": stats.replicates,
                "mean": stats.mean,
                "min": stats.min,
                "max": stats.max,
                "quantiles": stats.quantiles,
                "lower_ref": stats.lower_ref,
                "upper_ref": stats.upper_ref,
            });
            let text = serde_json::to_string_pretty(&summary).expect("serializable");
            out.write("cover_stats.json", &text)?;
            println!("{text}");
        }
    }
    Ok(())
}

fn matching(a: &crate::MatchArgs, seed: u64, out: &mut Out) -> CmdResult {
    let ga = load_graph(&a.a)?;
    let gb = load_graph(&a.b)?;
    if ga.graph.n() != gb.graph.n() {
        return Err(CliError::Data(format!("graphs have {} and {} vertices", ga.graph.n(), gb.graph.n())));
    }
    let n = ga.graph.n();
    let root = RngStream::root(seed);
    let seeds = SeedSet::random(n, a.seed_fraction, &mut root.child(1).generator())?;
    let summary = if a.brute_force {
        let r = brute_force_gmp(&ga.graph, &gb.graph, &seeds)?;
        json!({
            "solver": "brute-force",
            "objective": r.objective,
            "optimum_count": r.optima.len(),
            "identity_optimal": r.contains_identity(),
            "first_optimum": r.optima[0].image(),
            "seeds": seeds.ids(),
        })
    } else {
        let init = match a.init {
            InitArg::Identity => Init::Identity,
            InitArg::Barycenter => Init::Barycenter,
            InitArg::Random => Init::Random,
        };
        let opts =
            SolverOptions { init, restarts: a.restarts, max_iterations: a.max_iterations, rng: root.child(3), ..SolverOptions::default() };
        let r = sgm_faq(&ga.graph, &gb.graph, &seeds, &opts)?;
        json!({
            "solver": "sgm-faq",
            "objective": r.objective,
            "correctness": r.correctness,
            "iterations": r.iterations,
            "converged": r.converged,
            "permutation": r.permutation.image(),
            "seeds": seeds.ids(),
        })
    };
    let text = serde_json::to_string_pretty(&summary).expect("serializable");
    out.write("match.json", &text)?;
    println!("{text}");
    Ok(())
}

fn experiment_config(args: &ExperimentArgs, default_preset: &str, seed: Option<u64>) -> Result<ExperimentConfig, CliError> {
    let mut config = match (&args.config, &args.preset) {
        (Some(path), _) => load_config(path)?,
        (None, Some(name)) => ExperimentConfig::preset(name)?,
        (None, None) => ExperimentConfig::preset(default_preset)?,
    };
    if let Some(r) = args.replicates {
        config.replicates = r;
    }
    if let Some(n) = &args.n {
        config.n_values = n.clone();
    }
    if let Some(c) = &args.cadence {
        config.cadence = c.clone();
    }
    if let Some(s) = seed {
        config.seed = s;
    }
    config.validate()?;
    Ok(config)
}

fn write_size(name: &str, size: &SizeSummary, plots: bool, out: &mut Out) -> CmdResult {
    for rep in &size.replicates {
        let stem = format!("trace_{name}_n{}_r{}", size.n, rep.replicate);
        out.write(&format!("{stem}.csv"), &trace_csv(&rep.trace)?)?;
        if plots {
            out.write(&format!("{stem}.svg"), &trace_svg(&rep.trace, &format!("{name}, n = {}, replicate {}", size.n, rep.replicate))?)?;
        }
    }
    Ok(())
}

fn experiment(e: &ExperimentCommand, seed: Option<u64>, out: &mut Out) -> CmdResult {
    let started = Instant::now();
    let (config, result) = match e {
        ExperimentCommand::ErSweep(args) => {
            let config = experiment_config(args, "er-ci", seed)?;
            let r = run_er_sweep(&config)?;
            (config, (r, args.plots))
        }
        ExperimentCommand::SbmSweep(args) => {
            let config = experiment_config(args, "sbm-ci", seed)?;
            let r = run_sbm_sweep(&config)?;
            (config, (r, args.plots))
        }
        ExperimentCommand::Loaded { args, graph, labels } => {
            let config = experiment_config(args, "facebook", seed)?;
            let loaded = load_graph(graph)?;
            let partition = labels.as_ref().map(|p| load_partition(&loaded, p)).transpose()?;
            let size = run_loaded_graph(&loaded.graph, partition.as_ref(), &config)?;
            let r = SweepResult { config: config.clone(), sizes: vec![size], fits: vec![None; config.betas.len()] };
            (config, (r, args.plots))
        }
    };
    let (result, plots) = result;
    for size in &result.sizes {
        write_size(&config.name, size, plots, out)?;
    }
    out.write("summary.csv", &summary_csv(&result))?;
    let mut fits = String::from("beta,slope,intercept,points\n");
    for (b, fit) in result.fits.iter().enumerate() {
        let beta = config.betas[b];
        let points: Vec<(f64, f64)> =
            result.sizes.iter().filter_map(|s| s.median_global[b].map(|t| (s.n as f64, t.max(1.0)))).collect();
        match fit {
            Some(f) => {
                let _ = writeln!(fits, "{beta},{},{},{}", f.slope, f.intercept, points.len());
                out.write(&format!("loglog_beta{beta}.svg"), &loglog_svg(&points, Some(f), &format!("beta = {beta}"))?)?;
            }
            None => {
                let _ = writeln!(fits, "{beta},NA,NA,{}", points.len());
            }
        }
    }
    out.write("fits.csv", &fits)?;
    for size in &result.sizes {
        println!("n = {}: median t_hat per beta {:?}", size.n, size.median_global);
    }
    for (b, fit) in result.fits.iter().enumerate() {
        if let Some(f) = fit {
            println!("beta = {}: log-log slope {:.3}", config.betas[b], f.slope);
        }
    }
    let mut outputs = out.written.clone();
    outputs.sort();
    let manifest = json!({
        "tool": "edgelighter",
        "version": env!("CARGO_PKG_VERSION"),
        "command": std::env::args().collect::<Vec<_>>(),
        "config": config,
        "outputs": outputs,
        "elapsed_seconds": started.elapsed().as_secs_f64(),
        "anonymization_estimator": "first checkpoint opening a persistence window of over-threshold shuffle counts",
    });
    out.write("manifest.json", &serde_json::to_string_pretty(&manifest).expect("serializable"))
}

fn ingest(a: &crate::IngestArgs, out: &mut Out) -> CmdResult {
    let file = EdgeListFile { path: a.input.clone(), directed: a.directed, one_indexed: a.one_indexed };
    let mut g = parse_edge_list(&file).map_err(|e| CliError::Data(format!("{}: {e}", a.input.display())))?;
    if let Some(range) = &a.id_range {
        let (lo, hi) = range
            .split_once('-')
            .and_then(|(l, h)| Some((l.trim().parse::<u64>().ok()?, h.trim().parse::<u64>().ok()?)))
            .ok_or_else(|| CliError::Config(format!("--id-range expects LO-HI, got {range:?}")))?;
        g = g.induced_id_range(lo, hi)?;
    }
    let labels = a
        .labels
        .as_ref()
        .map(|p| parse_labels(&LabelFile { path: p.clone() }).map_err(|e| CliError::Data(format!("{}: {e}", p.display()))))
        .transpose()?;
    if let Some(labels) = &labels {
        let keep: Vec<usize> = (0..g.graph.n()).filter(|&v| labels.contains_key(&g.original_ids[v])).collect();
        g = g.induced(&keep)?;
    }
    if a.lcc {
        g = g.largest_component();
    }
    out.write(&a.output, &write_edge_list(&g.graph))?;
    let mut ids = String::from("dense,original\n");
    for (v, id) in g.original_ids.iter().enumerate() {
        let _ = writeln!(ids, "{v},{id}");
    }
    out.write("ids.csv", &ids)?;
    if let Some(labels) = &labels {
        let subset: BTreeMap<u64, u64> = g.original_ids.iter().map(|id| (*id, labels[id])).collect();
        out.write("labels.txt", &labels_text(&g.partition(&subset)?))?;
    }
    println!("{} vertices, {} edges", g.graph.n(), g.graph.edge_count());
    Ok(())
}
