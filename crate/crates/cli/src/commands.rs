use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use wolfpack::benchmarks::{list_benchmarks, BenchId};
use wolfpack::gwo::Algorithm;
use wolfpack::opt::{run, RunConfig, RunResult, PENALTY};
use wolfpack::oswec::{Design, OswecModel, PtoParams, Summary, WaveSpec};
use wolfpack::site::{self, sensitivity_grid, BestCell, GridSweepSpec, Param, Scaling};
use wolfpack::stats::{friedman_ranks, run_experiment, ExperimentGrid};

use crate::config::{self, AppConfig};
use crate::{BenchAction, BenchArgs, Cli, CliError, Command, OptimizeArgs, SimulateArgs, SiteArgs, SweepArgs};

pub fn dispatch(cli: &Cli) -> Result<(), CliError> {
    let cfg = config::load(cli.config.as_ref(), &cli.set)?;
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(CliError::Config("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Runtime(e.to_string()))?;
    }
    match &cli.command {
        Command::Bench(BenchArgs { action: Some(BenchAction::List), .. }) => bench_list(),
        Command::Bench(a) => bench(cli, cfg, a),
        Command::Optimize(a) => optimize(cli, cfg, a),
        Command::Simulate(a) => simulate(cli, cfg, a),
        Command::Sweep(a) => sweep(cli, cfg, a),
        Command::Site(a) => site(cli, cfg, a),
    }
}

fn run_dir(cli: &Cli, command: &str) -> Result<PathBuf, CliError> {
    let name = match &cli.tag {
        Some(t) if t.is_empty() || t.contains(['/', '\\']) => {
            return Err(CliError::Config(format!("--tag `{t}` must be a plain directory name")))
        }
        Some(t) => t.clone(),
        None => humantime::format_rfc3339_seconds(std::time::SystemTime::now()).to_string().replace(':', "-"),
    };
    let dir = cli.out.join(command).join(name);
    std::fs::create_dir_all(&dir).map_err(CliError::io)?;
    Ok(dir)
}

fn write_with(path: &Path, f: impl FnOnce(&mut BufWriter<File>) -> wolfpack::Result<()>) -> Result<(), CliError> {
    let mut w = BufWriter::new(File::create(path).map_err(CliError::io)?);
    f(&mut w).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?;
    w.flush().map_err(CliError::io)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    write_with(path, |w| {
        serde_json::to_writer_pretty(&mut *w, value)?;
        writeln!(w)?;
        Ok(())
    })
}

fn parse_list<T: std::str::FromStr<Err = wolfpack::Error>>(items: &[String]) -> Result<Vec<T>, CliError> {
    items.iter().map(|s| s.trim().parse::<T>().map_err(CliError::from_core)).collect()
}

fn bench_list() -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    let mut text = String::from("id,name,dim,lower,upper,fmin\n");
    for b in list_benchmarks() {
        text.push_str(&format!("{},{},{},{},{},{}\n", b.id, b.name, b.dim, b.lower, b.upper, b.fmin_ref));
    }
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::io(e)),
        _ => Ok(()),
    }
}

fn bench(cli: &Cli, mut cfg: AppConfig, a: &BenchArgs) -> Result<(), CliError> {
    if !a.algos.is_empty() {
        cfg.bench.algorithms = parse_list::<Algorithm>(&a.algos)?;
    }
    if !a.funcs.is_empty() {
        cfg.bench.functions = parse_list::<BenchId>(&a.funcs)?;
    }
    cfg.bench.repeats = a.repeats.unwrap_or(cfg.bench.repeats);
    cfg.bench.iterations = a.iters.unwrap_or(cfg.bench.iterations);
    cfg.bench.agents = a.agents.unwrap_or(cfg.bench.agents);
    let seed = config::resolve_seed(cli.seed, &cfg)?;
    cfg.optimizer.seed = Some(seed);
    let grid = ExperimentGrid {
        algorithms: cfg.bench.algorithms.clone(),
        functions: cfg.bench.functions.clone(),
        repeats: cfg.bench.repeats,
        base_seed: seed,
        seed_stride: cfg.bench.seed_stride,
        population: cfg.bench.agents,
        max_iter: cfg.bench.iterations,
        hc: cfg.optimizer.hc.clone(),
    };
    grid.validate().map_err(CliError::from_core)?;
    let dir = run_dir(cli, "bench")?;
    let table = run_experiment(&grid).map_err(CliError::from_core)?;
    let ranks = friedman_ranks(&table).map_err(CliError::from_core)?;
    write_with(&dir.join("means.csv"), |w| table.write_csv(w))?;
    write_with(&dir.join("runs.csv"), |w| table.write_raw_csv(w))?;
    write_json(&dir.join("friedman.json"), &ranks)?;
    write_json(&dir.join("config.json"), &cfg)?;
    let mut order: Vec<_> = ranks.ranks.iter().collect();
    order.sort_by(|x, y| x.1.total_cmp(y.1).then_with(|| x.0.cmp(y.0)));
    for (name, r) in order {
        println!("{name:>8}  average rank {r:.4}");
    }
    Ok(())
}

#[derive(Serialize)]
struct RunSummary {
    run: usize,
    seed: u64,
    /// Absent when the run found no design within the rotation limit.
    best_power_w: Option<f64>,
    design: Option<Design>,
    max_theta_deg: Option<f64>,
    feasible: bool,
}

#[derive(Serialize)]
struct OptimizeSummary {
    algorithm: String,
    base_seed: u64,
    agents: usize,
    iterations: usize,
    theta_limit_deg: f64,
    runs: Vec<RunSummary>,
    best_run: Option<usize>,
    best_power_w: Option<f64>,
    best_design: Option<Design>,
}

fn optimize(cli: &Cli, mut cfg: AppConfig, a: &OptimizeArgs) -> Result<(), CliError> {
    if let Some(s) = &a.algo {
        cfg.optimizer.algorithm = s.parse().map_err(CliError::from_core)?;
    }
    cfg.optimizer.runs = a.runs.unwrap_or(cfg.optimizer.runs);
    cfg.optimizer.iterations = a.iters.unwrap_or(cfg.optimizer.iterations);
    cfg.optimizer.agents = a.agents.unwrap_or(cfg.optimizer.agents);
    let seed = config::resolve_seed(cli.seed, &cfg)?;
    cfg.optimizer.seed = Some(seed);
    let o = &cfg.optimizer;
    if o.runs == 0 {
        return Err(CliError::Config("runs must be at least 1".into()));
    }
    let model = cfg.model.build()?;
    let space = cfg.space.search_space()?;
    let configs: Vec<RunConfig> = (0..o.runs)
        .map(|r| {
            let mut rc = RunConfig::new(o.algorithm, o.agents, o.iterations, seed.wrapping_add(r as u64));
            rc.hybrid = rc.hybrid.map(|_| o.hc.clone());
            rc
        })
        .collect();
    configs[0].validate().map_err(CliError::from_core)?;
    let dir = run_dir(cli, "optimize")?;
    let results: Vec<RunResult> = configs
        .par_iter()
        .map(|rc| run(&model, &space, rc))
        .collect::<wolfpack::Result<_>>()
        .map_err(CliError::from_core)?;

    let mut runs = Vec::new();
    for (i, res) in results.iter().enumerate() {
        let n = i + 1;
        write_json(&dir.join(format!("run_{n:02}.json")), res)?;
        write_with(&dir.join(format!("convergence_{n:02}.csv")), |w| {
            writeln!(w, "iteration,best_power_w")?;
            for (t, v) in res.convergence.iter().enumerate() {
                writeln!(w, "{},{}", t + 1, v)?;
            }
            Ok(())
        })?;
        runs.push(reassess(&model, n, res)?);
    }
    let best = runs
        .iter()
        .filter(|r| r.feasible)
        .max_by(|x, y| x.best_power_w.unwrap_or(f64::MIN).total_cmp(&y.best_power_w.unwrap_or(f64::MIN)));
    let summary = OptimizeSummary {
        algorithm: o.algorithm.to_string(),
        base_seed: seed,
        agents: o.agents,
        iterations: o.iterations,
        theta_limit_deg: model.theta_limit_deg(),
        best_run: best.map(|b| b.run),
        best_power_w: best.and_then(|b| b.best_power_w),
        best_design: best.and_then(|b| b.design),
        runs,
    };
    write_json(&dir.join("summary.json"), &summary)?;
    write_json(&dir.join("config.json"), &cfg)?;
    match (summary.best_power_w, summary.best_design) {
        (Some(p), Some(d)) => println!(
            "best {:.6e} W at H={} m, T={} s, K={} MNm/rad, C={} MNsm/rad (run {})",
            p,
            d.h,
            d.t,
            d.k_mn,
            d.c_mn,
            summary.best_run.unwrap_or(0)
        ),
        _ => println!("no run found a design within the rotation limit"),
    }
    Ok(())
}

/// Re-simulates a run's best design so the reported optimum is checked
/// against the rotation limit independently of the optimizer.
fn reassess(model: &OswecModel, run: usize, res: &RunResult) -> Result<RunSummary, CliError> {
    let mut out =
        RunSummary { run, seed: res.seed, best_power_w: None, design: None, max_theta_deg: None, feasible: false };
    if res.best_fitness <= -PENALTY {
        return Ok(out);
    }
    let d = Design::from_slice(&res.best_position).map_err(CliError::from_core)?;
    let (sim, feas) = model.assess(&d).map_err(CliError::from_core)?;
    out.design = Some(d);
    out.max_theta_deg = Some(sim.summary.max_theta_deg);
    out.feasible = feas.is_feasible();
    out.best_power_w = out.feasible.then_some(sim.summary.mean_power_w);
    Ok(out)
}

#[derive(Serialize)]
struct SimulateSummary {
    design: Design,
    wave: WaveSpec,
    theta_limit_deg: f64,
    feasible: bool,
    #[serde(flatten)]
    summary: Summary,
}

fn simulate(cli: &Cli, cfg: AppConfig, a: &SimulateArgs) -> Result<(), CliError> {
    let seed = config::resolve_seed(cli.seed, &cfg)?;
    let model = cfg.model.build()?;
    let wave = if a.irregular {
        WaveSpec::Irregular { hs: a.height, tp: a.period, components: a.components, phase_seed: seed }
    } else {
        WaveSpec::regular(a.height, a.period)
    };
    let pto = PtoParams::from_mega(a.k, a.c).map_err(CliError::from_core)?;
    let result = model.simulate(&wave, &pto).map_err(CliError::from_core)?;
    let feasible = model.feasibility(&result).is_feasible();
    let dir = run_dir(cli, "simulate")?;
    write_with(&dir.join("series.csv"), |w| result.write_csv(w))?;
    let summary = SimulateSummary {
        design: Design { h: a.height, t: a.period, k_mn: a.k, c_mn: a.c },
        wave,
        theta_limit_deg: model.theta_limit_deg(),
        feasible,
        summary: result.summary,
    };
    write_json(&dir.join("summary.json"), &summary)?;
    println!(
        "mean power {:.6e} W, max rotation {:.3} deg ({})",
        result.summary.mean_power_w,
        result.summary.max_theta_deg,
        if feasible { "feasible" } else { "infeasible" }
    );
    Ok(())
}

#[derive(Serialize)]
struct SweepReport<'a> {
    vary: [Param; 2],
    fixed: Design,
    mask: bool,
    best: &'a Option<BestCell>,
}

fn parse_assign(s: &str) -> Result<(Param, &str), CliError> {
    let (k, v) = s.split_once('=').ok_or_else(|| CliError::Config(format!("`{s}` is not P=VALUE")))?;
    Ok((k.parse().map_err(CliError::from_core)?, v.trim()))
}

fn parse_f64(s: &str) -> Result<f64, CliError> {
    s.parse().map_err(|_| CliError::Config(format!("`{s}` is not a number")))
}

fn sweep(cli: &Cli, mut cfg: AppConfig, a: &SweepArgs) -> Result<(), CliError> {
    let s = &mut cfg.sweep;
    if !a.vary.is_empty() {
        let v = parse_list::<Param>(&a.vary)?;
        s.vary = v.try_into().map_err(|_| CliError::Config("--vary takes exactly two parameters".into()))?;
    }
    for f in &a.fix {
        let (p, v) = parse_assign(f)?;
        s.fixed.insert(p, parse_f64(v)?);
    }
    for g in &a.grid {
        let (p, v) = parse_assign(g)?;
        let parts: Vec<&str> = v.split(':').collect();
        let [lo, hi, n] = parts[..] else {
            return Err(CliError::Config(format!("grid `{g}` is not P=lo:hi:n")));
        };
        let n = n.parse().map_err(|_| CliError::Config(format!("grid `{g}`: n must be a positive integer")))?;
        s.grid.insert(p, (parse_f64(lo)?, parse_f64(hi)?, n));
    }
    s.mask = s.mask && !a.no_mask;
    let fixed_of = |p: Param| -> Result<f64, CliError> {
        if s.vary.contains(&p) {
            return Ok(s.fixed.get(&p).copied().unwrap_or(0.0));
        }
        s.fixed.get(&p).copied().ok_or_else(|| CliError::Config(format!("no fixed value for {}", p.name())))
    };
    let fixed = Design { h: fixed_of(Param::H)?, t: fixed_of(Param::T)?, k_mn: fixed_of(Param::K)?, c_mn: fixed_of(Param::C)? };
    let axis = |p: Param| -> Result<Vec<f64>, CliError> {
        let ax = s.grid.get(&p).ok_or_else(|| CliError::Config(format!("no grid for {}", p.name())))?;
        config::axis_values(*ax)
    };
    let spec = GridSweepSpec { vary: s.vary, grids: [axis(s.vary[0])?, axis(s.vary[1])?], fixed, mask: s.mask };
    spec.validate().map_err(CliError::from_core)?;
    let model = cfg.model.build()?;
    let dir = run_dir(cli, "sweep")?;
    let grid = sensitivity_grid(&spec, &model).map_err(CliError::from_core)?;
    let (r, c) = (spec.vary[0].name(), spec.vary[1].name());
    let stem = if spec.vary == [Param::H, Param::T] { "power_matrix".to_string() } else { format!("sensitivity_{r}_{c}") };
    write_with(&dir.join(format!("{stem}.csv")), |w| grid.write_csv(w))?;
    write_with(&dir.join(format!("feasibility_{r}_{c}.csv")), |w| grid.write_mask_csv(w))?;
    write_json(&dir.join("best.json"), &SweepReport { vary: spec.vary, fixed, mask: spec.mask, best: &grid.best })?;
    match &grid.best {
        Some(b) => println!("best cell {r}={} {c}={}: {:.6e} W", spec.grids[0][b.row], spec.grids[1][b.col], b.power_w),
        None => println!("no feasible cell"),
    }
    Ok(())
}

fn site(cli: &Cli, cfg: AppConfig, a: &SiteArgs) -> Result<(), CliError> {
    let data = a.data.clone().unwrap_or(cfg.sites.data.clone());
    let h = a.hstar.unwrap_or(cfg.sites.h_star);
    let t = a.tstar.unwrap_or(cfg.sites.t_star);
    let scaling = if a.relative { Scaling::Relative } else { cfg.sites.scaling };
    let sites = if data == "synthetic" {
        site::synthetic_sites()
    } else {
        site::load_sites(Path::new(&data)).map_err(CliError::from_core)?
    };
    let ranked = site::rank_sites_scaled(&sites, h, t, scaling);
    let dir = run_dir(cli, "site")?;
    write_with(&dir.join("ranked_sites.csv"), |w| site::write_ranked_csv(&ranked, w))?;
    for r in ranked.iter().take(5) {
        println!("{:>6} {:<16} {:>8.4} {:>8.4}  rmse {:.4}", r.point_id, r.port, r.lat, r.lon, r.rmse);
    }
    Ok(())
}
