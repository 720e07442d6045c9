//! Argument definitions and the five subcommands.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use vortmetric_core::flow::{
    conservation_report, order_check, simulate, FlowError, InitialData, Precision, SimConfig, Trajectory,
};
use vortmetric_core::metricity::{catalog, catalog_templates, classify, ClassifyOptions, Model, Verdict};
use vortmetric_core::{Domain, EquationParams, Real};

use crate::config::{FileConfig, NumberMode};
use crate::error::CliError;
use crate::format::{self, Format};
use crate::sweep::{self, Axis, Grid};
use crate::verify::{self, Suite};

#[derive(Debug, Parser)]
#[command(name = "vortmetric", version, about = "Metricity classification and geodesic-flow experiments for m_t + u m_x + b u_x m = 0")]
pub struct Cli {
    /// Read decimal literals as exact rationals (the default).
    #[arg(long, global = true, conflicts_with = "float")]
    pub exact: bool,
    /// Read every number as a double; membership tests use a tolerance.
    #[arg(long, global = true)]
    pub float: bool,
    /// Also decide a = 1, b < -1 for non-integer b on the full group.
    #[arg(long, global = true)]
    pub extended: bool,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Directory for output files.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify one (a, b) under every applicable model.
    Analyze {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Integrate the family and report conservation diagnostics.
    Simulate(SimulateArgs),
    /// Classify a rectangular (a, b) grid.
    Sweep(SweepArgs),
    /// Run a self-check suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// List named equations, or look one up.
    Catalog { name: Option<String> },
}

#[derive(Debug, Default, Args)]
pub struct SimulateArgs {
    /// Flat TOML run record; flags override its values.
    pub config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    /// `full` or `zero-mean`.
    #[arg(long)]
    pub domain: Option<String>,
    #[arg(long)]
    pub resolution: Option<usize>,
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long)]
    pub t_end: Option<f64>,
    /// zero | cos | sin | cos+half-cos2 | random
    #[arg(long)]
    pub initial: Option<String>,
    #[arg(long)]
    pub degree: Option<usize>,
    #[arg(long)]
    pub amplitude: Option<f64>,
    #[arg(long)]
    pub blowup_slope_threshold: Option<f64>,
    #[arg(long)]
    pub tail_ratio_threshold: Option<f64>,
    /// Dump the full state every s steps (0: never).
    #[arg(long)]
    pub state_every: Option<usize>,
    /// `double` or `double-double`.
    #[arg(long)]
    pub precision: Option<String>,
    /// Repeat at dt/2 and report the drift ratio.
    #[arg(long)]
    pub order_check: bool,
}

#[derive(Debug, Default, Args)]
pub struct SweepArgs {
    /// Flat TOML grid record; flags override its values.
    pub config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub a_min: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub a_max: Option<String>,
    #[arg(long)]
    pub a_step: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b_min: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b_max: Option<String>,
    #[arg(long)]
    pub b_step: Option<String>,
    /// Also write an SVG heat map to this path.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

/// Resolved global flags.
#[derive(Clone, Debug)]
pub struct Globals {
    pub mode: NumberMode,
    pub options: ClassifyOptions,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

impl Globals {
    fn from_cli(cli: &Cli) -> Globals {
        Globals {
            mode: if cli.float { NumberMode::Float } else { NumberMode::Exact },
            options: ClassifyOptions { extended: cli.extended, ..ClassifyOptions::default() },
            seed: cli.seed,
            out: cli.out.clone(),
            format: cli.format,
        }
    }

    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn out_file(&self, name: &str) -> Result<Option<BufWriter<File>>, CliError> {
        let Some(dir) = &self.out else { return Ok(None) };
        fs::create_dir_all(dir)?;
        Ok(Some(BufWriter::new(File::create(dir.join(name))?)))
    }
}

/// Runs a parsed command line, writing the primary output to `stdout`.
pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let globals = Globals::from_cli(&cli);
    match cli.command {
        Command::Analyze { a, b } => {
            let a = globals.mode.parse(&a)?;
            let b = globals.mode.parse(&b)?;
            analyze(&globals, &a, &b, stdout)
        }
        Command::Simulate(args) => run_simulate(&globals, &args, stdout),
        Command::Sweep(args) => run_sweep(&globals, &args, stdout),
        Command::Verify { suite } => run_verify(&globals, suite, stdout),
        Command::Catalog { name } => run_catalog(&globals, name.as_deref(), stdout),
    }
}

/// Models reported by `analyze`: both general ones, plus the full-group
/// Fourier-type result where it says more (`a = 1`).
pub fn analyze_models(a: &Real, options: &ClassifyOptions) -> Vec<Model> {
    let mut models = vec![Model::FullGroup, Model::ZeroMeanFourier];
    if (a.to_f64() - 1.0).abs() <= options.tolerance || *a == Real::one() {
        models.push(Model::FullGroupFourier);
    }
    models
}

pub fn analyze(g: &Globals, a: &Real, b: &Real, stdout: &mut dyn Write) -> Result<(), CliError> {
    let verdicts: Vec<(Model, Verdict)> =
        analyze_models(a, &g.options).into_iter().map(|m| (m, classify(m, a, b, &g.options))).collect();
    let doc = json!({
        "a": format::real_json(a),
        "b": format::real_json(b),
        "extended": g.options.extended,
        "verdicts": verdicts.iter().map(|(m, v)| format::verdict_json(*m, v)).collect::<Vec<_>>(),
    });
    match g.format_or(Format::Text) {
        Format::Text => {
            writeln!(stdout, "a = {}, b = {}", format::real(a), format::real(b))?;
            for (m, v) in &verdicts {
                writeln!(stdout, "{}", format::verdict_text(*m, v))?;
            }
        }
        Format::Json => writeln!(stdout, "{}", serde_json::to_string_pretty(&doc)?)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *stdout);
            w.write_record(["a", "b", "model", "verdict", "detail"])?;
            for (m, v) in &verdicts {
                w.write_record([format::real(a), format::real(b), m.as_str().into(), v.label().into(), format::verdict_detail(v)])?;
            }
            w.flush()?;
        }
    }
    if let Some(mut f) = g.out_file("analyze.json")? {
        writeln!(f, "{}", serde_json::to_string_pretty(&doc)?)?;
        f.flush()?;
    }
    Ok(())
}

/// Fully resolved simulation request.
#[derive(Clone, Debug, PartialEq)]
pub struct SimulateRequest {
    pub config: SimConfig,
    pub initial: InitialData,
    pub state_every: usize,
    pub order_check: bool,
}

pub fn parse_domain(s: &str) -> Result<Domain, CliError> {
    match s {
        "full" | "full-group" => Ok(Domain::FullGroup),
        "zero-mean" | "zero" => Ok(Domain::ZeroMean),
        _ => Err(CliError::usage(format!("unknown domain `{s}` (expected full or zero-mean)"))),
    }
}

pub fn resolve_simulate(g: &Globals, args: &SimulateArgs) -> Result<SimulateRequest, CliError> {
    let file = match &args.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let number = |flag: &Option<String>, key: &Option<crate::config::Number>, default: i64| -> Result<Real, CliError> {
        match (flag, key) {
            (Some(s), _) => g.mode.parse(s),
            (None, Some(n)) => n.to_real(g.mode),
            (None, None) => Ok(match g.mode {
                NumberMode::Exact => Real::int(default),
                NumberMode::Float => Real::Float(default as f64),
            }),
        }
    };
    let a = number(&args.a, &file.a, 2)?;
    let b = number(&args.b, &file.b, 2)?;
    let domain = parse_domain(args.domain.as_deref().or(file.domain.as_deref()).unwrap_or("full"))?;
    let resolution = args.resolution.or(file.resolution).unwrap_or(64);
    let dt = args.dt.or(file.dt).unwrap_or(1e-3);
    let t_end = args.t_end.or(file.t_end).unwrap_or(0.1);
    let mut config = SimConfig::new(EquationParams::new(a, b), resolution, dt, t_end, domain);
    if let Some(v) = args.blowup_slope_threshold.or(file.blowup_slope_threshold) {
        config.blowup_slope_threshold = v;
    }
    if let Some(v) = args.tail_ratio_threshold.or(file.tail_ratio_threshold) {
        config.tail_ratio_threshold = v;
    }
    if let Some(p) = args.precision.as_deref().or(file.precision.as_deref()) {
        config.precision = Precision::parse(p).ok_or_else(|| CliError::usage(format!("unknown precision `{p}`")))?;
    }
    let state_every = args.state_every.or(file.state_every).unwrap_or(0);
    config.record_every = state_every;
    let name = args.initial.as_deref().or(file.initial.as_deref()).unwrap_or("cos");
    let mut initial = InitialData::parse(name).ok_or_else(|| CliError::usage(format!("unknown initial data `{name}`")))?;
    if let InitialData::Random { seed, degree, amplitude } = &mut initial {
        *seed = g.seed.or(file.seed).unwrap_or(0);
        *degree = args.degree.or(file.degree).unwrap_or(*degree);
        *amplitude = args.amplitude.or(file.amplitude).unwrap_or(*amplitude);
    }
    config.validate().map_err(flow_error)?;
    let order_check = args.order_check || file.order_check.unwrap_or(false);
    Ok(SimulateRequest { config, initial, state_every, order_check })
}

fn flow_error(e: FlowError) -> CliError {
    match e {
        FlowError::NonFinite => CliError::Runtime(e.to_string()),
        _ => CliError::Usage(e.to_string()),
    }
}

pub fn run_simulate(g: &Globals, args: &SimulateArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let req = resolve_simulate(g, args)?;
    let seed = match req.initial {
        InitialData::Random { seed, .. } => seed,
        _ => 0,
    };
    let u0 = req.initial.build(&mut ChaCha8Rng::seed_from_u64(seed), req.config.domain == Domain::ZeroMean);
    let traj = simulate(&req.config, &u0).map_err(flow_error)?;
    let report = conservation_report(&traj);
    let order = if req.order_check {
        let half = SimConfig { dt: req.config.dt / 2.0, record_every: 0, ..req.config.clone() };
        let fine = simulate(&half, &u0).map_err(flow_error)?;
        Some(order_check(&report, &conservation_report(&fine)))
    } else {
        None
    };

    write_trajectory(g, &traj, req.state_every > 0)?;
    let mut doc = format::report_json(&traj, &report);
    let cfg = &req.config;
    doc["a"] = format::real_json(&cfg.params.a);
    doc["b"] = format::real_json(&cfg.params.b);
    doc["domain"] = json!(cfg.domain.as_str());
    doc["resolution"] = json!(cfg.resolution);
    doc["dt"] = format::float_json(cfg.dt);
    doc["t_end"] = format::float_json(cfg.t_end);
    doc["initial"] = json!(req.initial.name());
    doc["precision"] = json!(cfg.precision.as_str());
    if let Some(o) = &order {
        doc["order_check"] = format::order_json(o);
    }
    if let Some(mut f) = g.out_file("report.json")? {
        writeln!(f, "{}", serde_json::to_string_pretty(&doc)?)?;
        f.flush()?;
    }
    match g.format_or(Format::Text) {
        Format::Json => writeln!(stdout, "{}", serde_json::to_string_pretty(&doc)?)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *stdout);
            w.write_record(format::DIAGNOSTICS_HEADER)?;
            for d in &traj.diagnostics {
                w.write_record(format::diagnostics_row(d))?;
            }
            w.flush()?;
        }
        Format::Text => {
            writeln!(
                stdout,
                "a = {}, b = {}, domain = {}, N = {}, dt = {}, T = {}, initial = {}, precision = {}",
                format::real(&cfg.params.a),
                format::real(&cfg.params.b),
                cfg.domain.as_str(),
                cfg.resolution,
                format::float(cfg.dt),
                format::float(cfg.t_end),
                req.initial.name(),
                cfg.precision.as_str()
            )?;
            let t_stop = traj.times.last().copied().unwrap_or(0.0);
            writeln!(stdout, "termination = {} at t = {}", traj.termination.as_str(), format::float(t_stop))?;
            writeln!(stdout, "steps = {}", report.steps)?;
            writeln!(stdout, "energy_drift = {}", format::float(report.energy_drift))?;
            writeln!(stdout, "mean_m_drift = {}", format::float(report.mean_m_drift))?;
            writeln!(stdout, "mean_u_drift = {}", format::float(report.mean_u_drift))?;
            if let Some(o) = &order {
                writeln!(
                    stdout,
                    "order_check: drift {} at dt, {} at dt/2, ratio {}, fourth order: {}",
                    format::float(o.coarse_drift),
                    format::float(o.fine_drift),
                    format::float(o.ratio),
                    o.fourth_order
                )?;
            }
        }
    }
    Ok(())
}

/// `diagnostics.jsonl`, `diagnostics.csv` and optionally `states.jsonl`
/// under `--out`.
fn write_trajectory(g: &Globals, traj: &Trajectory, states: bool) -> Result<(), CliError> {
    if let Some(mut f) = g.out_file("diagnostics.jsonl")? {
        for d in &traj.diagnostics {
            serde_json::to_writer(&mut f, &format::diagnostics_json(d))?;
            f.write_all(b"\n")?;
        }
        f.flush()?;
    }
    if let Some(f) = g.out_file("diagnostics.csv")? {
        let mut w = csv::Writer::from_writer(f);
        w.write_record(format::DIAGNOSTICS_HEADER)?;
        for d in &traj.diagnostics {
            w.write_record(format::diagnostics_row(d))?;
        }
        w.flush()?;
    }
    if states {
        if let Some(mut f) = g.out_file("states.jsonl")? {
            for s in &traj.states {
                let rec = json!({"step": s.step, "t": format::float_json(s.t), "u": format::trig_poly_json(&s.u)});
                serde_json::to_writer(&mut f, &rec)?;
                f.write_all(b"\n")?;
            }
            f.flush()?;
        }
    }
    Ok(())
}

pub fn resolve_grid(g: &Globals, args: &SweepArgs) -> Result<Grid, CliError> {
    let file = match &args.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let default = Grid::default_square();
    let pick = |flag: &Option<String>, key: &Option<crate::config::Number>, fallback: &Real| -> Result<Real, CliError> {
        match (flag, key) {
            (Some(s), _) => g.mode.parse(s),
            (None, Some(n)) => n.to_real(g.mode),
            (None, None) => Ok(match g.mode {
                NumberMode::Exact => fallback.clone(),
                NumberMode::Float => fallback.to_float(),
            }),
        }
    };
    Ok(Grid {
        a: Axis::new(
            pick(&args.a_min, &file.a_min, &default.a.min)?,
            pick(&args.a_max, &file.a_max, &default.a.max)?,
            pick(&args.a_step, &file.a_step, &default.a.step)?,
        ),
        b: Axis::new(
            pick(&args.b_min, &file.b_min, &default.b.min)?,
            pick(&args.b_max, &file.b_max, &default.b.max)?,
            pick(&args.b_step, &file.b_step, &default.b.step)?,
        ),
    })
}

pub fn run_sweep(g: &Globals, args: &SweepArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let grid = resolve_grid(g, args)?;
    let fmt = g.format_or(Format::Csv);
    let name = if fmt == Format::Json { "sweep.jsonl" } else { "sweep.csv" };
    let cells = match g.out_file(name)? {
        Some(f) => sweep::write_sweep(&grid, &g.options, fmt, f)?,
        None => sweep::write_sweep(&grid, &g.options, fmt, &mut *stdout)?,
    };
    if let Some(path) = &args.svg {
        let (na, nb) = (grid.a.values()?.len(), grid.b.values()?.len());
        write_file(path, &sweep::svg(&cells, na, nb))?;
    }
    Ok(())
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)?;
    }
    fs::write(path, contents)?;
    Ok(())
}

pub fn run_verify(g: &Globals, suite: Suite, stdout: &mut dyn Write) -> Result<(), CliError> {
    let checks = verify::run(suite, g.seed.unwrap_or(0));
    let failed = checks.iter().filter(|c| !c.passed).count();
    let doc = json!({
        "suite": suite.as_str(),
        "passed": failed == 0,
        "checks": checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect::<Vec<Value>>(),
    });
    match g.format_or(Format::Text) {
        Format::Json => writeln!(stdout, "{}", serde_json::to_string_pretty(&doc)?)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *stdout);
            w.write_record(["check", "passed", "detail"])?;
            for c in &checks {
                w.write_record([c.name.as_str(), if c.passed { "true" } else { "false" }, c.detail.as_str()])?;
            }
            w.flush()?;
        }
        Format::Text => {
            for c in &checks {
                writeln!(stdout, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
            }
            writeln!(stdout, "{}: {} of {} checks passed", suite.as_str(), checks.len() - failed, checks.len())?;
        }
    }
    if let Some(mut f) = g.out_file(&format!("verify-{}.json", suite.as_str()))? {
        writeln!(f, "{}", serde_json::to_string_pretty(&doc)?)?;
        f.flush()?;
    }
    if failed > 0 {
        return Err(CliError::VerifyFailed(format!("{failed} check(s) failed in suite {}", suite.as_str())));
    }
    Ok(())
}

/// One printable catalog row.
#[derive(Clone, Debug, PartialEq)]
pub struct CatalogRow {
    pub name: String,
    pub a: String,
    pub b: String,
    pub domain: Domain,
    pub verdict: Verdict,
}

pub fn catalog_rows(name: Option<&str>) -> Result<Vec<CatalogRow>, CliError> {
    match name {
        Some(n) => {
            let e = catalog(n).map_err(|e| CliError::usage(e.to_string()))?;
            Ok(vec![CatalogRow {
                name: e.name,
                a: format::real(&e.params.a),
                b: format::real(&e.params.b),
                domain: e.domain,
                verdict: e.expected,
            }])
        }
        None => catalog_templates()
            .iter()
            .map(|t| {
                let e = catalog(t.example).map_err(|e| CliError::Runtime(e.to_string()))?;
                let name = if t.name == t.example { t.name.to_string() } else { format!("{} [e.g. {}]", t.name, t.example) };
                Ok(CatalogRow { name, a: t.a.to_string(), b: t.b.to_string(), domain: t.domain, verdict: e.expected })
            })
            .collect(),
    }
}

pub fn run_catalog(g: &Globals, name: Option<&str>, stdout: &mut dyn Write) -> Result<(), CliError> {
    let rows = catalog_rows(name)?;
    match g.format_or(Format::Text) {
        Format::Text => {
            writeln!(stdout, "{:<50} {:>2} {:>12} {:<10} {:<13} detail", "name", "a", "b", "mean", "verdict")?;
            for r in &rows {
                writeln!(
                    stdout,
                    "{:<50} {:>2} {:>12} {:<10} {:<13} {}",
                    r.name,
                    r.a,
                    r.b,
                    r.domain.as_str(),
                    r.verdict.label(),
                    format::verdict_detail(&r.verdict)
                )?;
            }
        }
        Format::Json => {
            let doc: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let model = catalog_model(r.domain);
                    json!({"name": r.name, "a": r.a, "b": r.b, "mean": r.domain.as_str(), "expected": format::verdict_json(model, &r.verdict)})
                })
                .collect();
            writeln!(stdout, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *stdout);
            w.write_record(["name", "a", "b", "mean", "verdict", "detail"])?;
            for r in &rows {
                w.write_record([
                    r.name.clone(),
                    r.a.clone(),
                    r.b.clone(),
                    r.domain.as_str().to_string(),
                    r.verdict.label().to_string(),
                    format::verdict_detail(&r.verdict),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn catalog_model(domain: Domain) -> Model {
    match domain {
        Domain::FullGroup => Model::FullGroup,
        Domain::ZeroMean => Model::ZeroMeanFourier,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("vortmetric").chain(args.iter().copied())).unwrap()
    }

    fn output(args: &[&str]) -> String {
        let mut buf = Vec::new();
        run(parse(args), &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn analyze_examples() {
        let out = output(&["analyze", "--a", "2", "--b", "3"]);
        assert!(out.contains("full-group: non-metric [scaling-contradiction]"), "{out}");
        let out = output(&["analyze", "--a", "1", "--b", "2"]);
        assert!(out.contains("full-group: metric (b = 2, symbol |k|^1 (+mu))"), "{out}");
        assert!(out.contains("full-group-fourier: metric"), "{out}");
        let out = output(&["analyze", "--a", "1", "--b", "-3"]);
        assert!(out.contains("full-group: undetermined"), "{out}");
        let out = output(&["--format", "json", "analyze", "--a", "1", "--b", "-5/3"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["verdicts"][1]["verdict"], "undetermined");
        assert_eq!(v["verdicts"][1]["excluded_set_member"], "-5/3");
    }

    #[test]
    fn number_modes() {
        let g = Globals::from_cli(&parse(&["--float", "analyze", "--a", "1", "--b", "0.5"]));
        assert_eq!(g.mode, NumberMode::Float);
        assert!(Cli::try_parse_from(["vortmetric", "--exact", "--float", "catalog"]).is_err());
        let out = output(&["--float", "--format", "json", "analyze", "--a", "1", "--b", "0.5"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["verdicts"][1]["reason"], "exclusion-set");
        assert_eq!(v["verdicts"][1]["excluded_set_member"], 0.5);
        let out = output(&["--float", "--format", "json", "analyze", "--a", "1", "--b", "0.5000000001"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["verdicts"][1]["reason"], "near-exclusion");
    }

    #[test]
    fn catalog_lookups() {
        let rows = catalog_rows(None).unwrap();
        assert_eq!(rows.len(), 9);
        let hs = catalog_rows(Some("hunter-saxton")).unwrap();
        assert_eq!((hs[0].a.as_str(), hs[0].b.as_str(), hs[0].domain), ("2", "2", Domain::ZeroMean));
        assert!(hs[0].verdict.is_metric());
        let g = catalog_rows(Some("gclm(0.5)")).unwrap();
        assert_eq!((g[0].a.as_str(), g[0].b.as_str(), g[0].domain), ("1", "-2", Domain::ZeroMean));
        assert_eq!(catalog_rows(Some("kdv")).unwrap_err().exit_code(), 1);
    }

    #[test]
    fn simulate_resolution_order() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        fs::write(&path, "a = 2\nb = 2\ndomain = \"zero-mean\"\nresolution = 16\ndt = 0.01\nt_end = 0.1\n").unwrap();
        let cli = parse(&["simulate", path.to_str().unwrap(), "--b", "3"]);
        let Command::Simulate(args) = &cli.command else { panic!() };
        let req = resolve_simulate(&Globals::from_cli(&cli), args).unwrap();
        assert_eq!(req.config.params.b, Real::int(3));
        assert_eq!((req.config.resolution, req.config.domain), (16, Domain::ZeroMean));
        assert_eq!(req.initial, InitialData::Cos);
    }

    #[test]
    fn simulate_zero_data() {
        let out = output(&["simulate", "--initial", "zero", "--resolution", "16", "--dt", "0.01", "--t-end", "0.05"]);
        assert!(out.contains("energy_drift = 0.0\n"), "{out}");
        assert!(out.contains("mean_m_drift = 0.0\n"), "{out}");
        let out = output(&["--format", "csv", "simulate", "--initial", "zero", "--resolution", "16", "--dt", "0.01", "--t-end", "0.02"]);
        assert_eq!(out.lines().nth(1).unwrap(), "0.0,0.0,0.0,0.0,0.0,0.0,0.0");
    }

    #[test]
    fn grid_defaults() {
        let cli = parse(&["sweep"]);
        let Command::Sweep(args) = &cli.command else { panic!() };
        assert_eq!(resolve_grid(&Globals::from_cli(&cli), args).unwrap(), Grid::default_square());
        let cli = parse(&["sweep", "--a-min", "-1", "--a-max", "1", "--a-step", "0.5"]);
        let Command::Sweep(args) = &cli.command else { panic!() };
        let grid = resolve_grid(&Globals::from_cli(&cli), args).unwrap();
        assert_eq!(grid.a.values().unwrap().len(), 5);
    }
}
