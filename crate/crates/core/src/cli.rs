//! Command-line front end.

use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::graph::SymmetricDigraph;
use crate::io::{self, complex, complex_list, num, real_list};
use crate::series::TruncatedSeries;
use crate::spectral::{self, SpectrumReport};
use crate::unitarity::{self, GWParams, SatoParams, UnitarityReport};
use crate::walk::{self, TransitionMatrix, WalkState};
use crate::zeta::{self, Preset, WeightParams, WeightScheme};

#[derive(Debug, Parser)]
#[command(name = "zetawalk", version, about = "Weighted graph zeta functions and the quantum walks they determine")]
pub struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Zeta series by path sums, cycle products and the edge-matrix determinant.
    Zeta(ZetaArgs),
    /// Evolve a quantum walk and tabulate vertex probabilities.
    Walk(WalkArgs),
    /// Eigenvalues, characteristic polynomial and periodicity of a walk.
    Spectrum(SpectrumArgs),
    /// Check a weight scheme against the unitarity criteria.
    Unitarity(UnitarityArgs),
    /// Build a unitary weight scheme and write it as a weight file.
    Construct(ConstructArgs),
}

#[derive(Debug, Clone, Args)]
pub struct WeightInput {
    /// Edge-list file.
    #[arg(long)]
    pub graph: PathBuf,

    /// Weight file (JSON).
    #[arg(long, conflicts_with = "preset")]
    pub weights: Option<PathBuf>,

    /// Named weight preset: ihara, bartholdi, mizuno_sato, sato, grover.
    #[arg(long)]
    pub preset: Option<String>,

    /// Bartholdi parameter, `RE` or `RE,IM`.
    #[arg(long, value_parser = parse_complex, allow_negative_numbers = true)]
    pub q: Option<Complex64>,
}

#[derive(Debug, Args)]
pub struct ZetaArgs {
    #[command(flatten)]
    pub input: WeightInput,

    /// Truncation order L.
    #[arg(long, default_value_t = zeta::DEFAULT_ORDER, value_parser = parse_positive)]
    pub order: usize,

    /// Longest closed path that enumeration may visit.
    #[arg(long, default_value_t = zeta::DEFAULT_CYCLE_CAP)]
    pub cycle_cap: usize,

    /// Sample point for the Ihara expression, `RE` or `RE,IM`; repeatable.
    #[arg(long = "t", value_parser = parse_complex, allow_negative_numbers = true)]
    pub t: Vec<Complex64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct WalkArgs {
    #[command(flatten)]
    pub input: WeightInput,

    /// Number of steps.
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    pub steps: u64,

    /// Start in δ_a for this arc; uniform superposition otherwise.
    #[arg(long)]
    pub start_arc: Option<usize>,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Also write the final amplitudes as JSON to this path.
    #[arg(long)]
    pub amplitudes: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub input: WeightInput,

    /// Largest eigenvalue order searched.
    #[arg(long, default_value_t = spectral::DEFAULT_N_MAX, value_parser = clap::value_parser!(u64).range(1..))]
    pub n_max: u64,

    /// Tolerance for |λⁿ − 1| in the order search, in (0, 1e-2].
    #[arg(long, default_value_t = spectral::DEFAULT_TOL, value_parser = parse_tol)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CriterionArg {
    /// Sato when υ ≡ 1, generalized-weighted otherwise.
    Auto,
    Sato,
    Gw,
}

#[derive(Debug, Args)]
pub struct UnitarityArgs {
    #[command(flatten)]
    pub input: WeightInput,

    #[arg(long, value_enum, default_value_t = CriterionArg::Auto)]
    pub criterion: CriterionArg,

    /// Tolerance for each condition residual, in (0, 1e-2].
    #[arg(long, default_value_t = unitarity::DEFAULT_TOL, value_parser = parse_tol)]
    pub tol: f64,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("family").required(true).args(["sato", "gw"])))]
pub struct ConstructArgs {
    /// Edge-list file.
    #[arg(long)]
    pub graph: PathBuf,

    /// Sato family: τ = (2cos f/deg)·e^{if}, υ ≡ 1.
    #[arg(long)]
    pub sato: bool,

    /// Generalized-weighted family.
    #[arg(long)]
    pub gw: bool,

    /// Common phase f for every vertex (Sato).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phase: f64,

    /// Per-vertex phases (Sato); overrides --phase.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub phases: Option<Vec<f64>>,

    /// Vertices whose out-arcs get τ = 0 (Sato).
    #[arg(long, value_delimiter = ',')]
    pub zero_vertices: Vec<usize>,

    /// Per-vertex amplitudes R_u (generalized-weighted).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub r: Option<Vec<f64>>,

    /// R_u = s·2/deg(u) for every vertex, s in [-1, 1] (generalized-weighted).
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub r_fraction: f64,

    /// Per-arc phases of υ at vertices of degree ≥ 2.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub upsilon_phases: Option<Vec<f64>>,

    /// Per-arc phases α with τ = υ + e^{iα} at degree-1 vertices.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub leaf_phases: Option<Vec<f64>>,
}

/// Parses `RE` or `RE,IM`.
pub fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let parse = |x: &str| x.parse::<f64>().map_err(|e| format!("`{x}`: {e}"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(parse(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(parse(re)?, parse(im)?)),
        _ => Err(format!("expected RE or RE,IM, got `{s}`")),
    }
}

pub fn parse_positive(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(x) => Ok(x),
        Err(e) => Err(format!("`{s}`: {e}")),
    }
}

/// Tolerances must lie in (0, 1e-2].
pub fn parse_tol(s: &str) -> std::result::Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("`{s}`: {e}"))?;
    if x > 0.0 && x <= 1e-2 {
        Ok(x)
    } else {
        Err(format!("tolerance {x} is outside (0, 1e-2]"))
    }
}

fn load(input: &WeightInput, default: Preset) -> Result<(SymmetricDigraph, WeightScheme)> {
    let d = SymmetricDigraph::new(io::load_graph(&input.graph)?);
    let w = match (&input.weights, &input.preset) {
        (Some(path), _) => io::load_weights(path, &d)?,
        (None, preset) => {
            let preset = match preset {
                Some(p) => p.parse()?,
                None => default,
            };
            let params = WeightParams { q: input.q, ..WeightParams::default() };
            zeta::make_weights(&d, preset, &params)?
        }
    };
    Ok((d, w))
}

fn transition(d: &SymmetricDigraph, w: &WeightScheme) -> Result<TransitionMatrix> {
    if w.preset() == Preset::Grover {
        walk::grover_transition(d)
    } else {
        walk::transition_from_weights(d, w)
    }
}

fn graph_summary(d: &SymmetricDigraph) -> Value {
    json!({
        "n_vertices": d.n_vertices(),
        "n_edges": d.graph().edge_count(),
        "n_arcs": d.arc_count(),
    })
}

/// max |a − b| / max(|a|, |b|), zero when both vanish.
fn relative_diff(a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

fn series_value(s: &TruncatedSeries) -> Value {
    complex_list(s.coeffs())
}

pub fn cmd_zeta(args: &ZetaArgs) -> Result<Value> {
    let (d, w) = load(&args.input, Preset::Ihara)?;
    let exp = zeta::zeta_exponential_capped(&d, &w, args.order, args.cycle_cap)?;
    let euler = zeta::zeta_euler_capped(&d, &w, args.order, args.cycle_cap)?;
    let hash = zeta::zeta_hashimoto(&d, &w, args.order)?;

    let samples = if args.t.is_empty() { zeta::default_t_samples() } else { args.t.clone() };
    let mut points = Vec::with_capacity(samples.len());
    let mut worst: f64 = 0.0;
    for &t in &samples {
        let det = zeta::hashimoto_determinant(&d, &w, t);
        let mut p = Map::new();
        p.insert("t".into(), complex(t));
        p.insert("hashimoto_determinant".into(), complex(det));
        match zeta::zeta_ihara_expression(&d, &w, t) {
            Ok(v) => {
                let r = relative_diff(v, det);
                worst = worst.max(r);
                p.insert("ihara_expression".into(), complex(v));
                p.insert("relative_residual".into(), num(r));
            }
            Err(Error::Singularity { edge, .. }) => {
                p.insert("ihara_expression".into(), Value::Null);
                p.insert("singular_edge".into(), json!(edge));
            }
            Err(e) => return Err(e),
        }
        points.push(Value::Object(p));
    }

    let mut out = Map::new();
    out.insert("graph".into(), graph_summary(&d));
    out.insert("preset".into(), json!(w.preset().name()));
    out.insert("order".into(), json!(args.order));
    out.insert(
        "series".into(),
        json!({
            "exponential": series_value(&exp),
            "euler": series_value(&euler),
            "hashimoto": series_value(&hash),
        }),
    );
    out.insert(
        "deviations".into(),
        json!({
            "exponential_euler": num(exp.max_abs_diff(&euler)),
            "exponential_hashimoto": num(exp.max_abs_diff(&hash)),
            "euler_hashimoto": num(euler.max_abs_diff(&hash)),
        }),
    );
    out.insert("ihara".into(), Value::Array(points));
    out.insert("max_ihara_residual".into(), num(worst));
    Ok(Value::Object(out))
}

/// Result of a walk run: per-step vertex probabilities and conservation data.
#[derive(Debug, Clone)]
pub struct WalkRun {
    pub probabilities: Vec<Vec<f64>>,
    pub final_state: WalkState,
    /// max over steps of |‖Ψ_n‖ − 1|
    pub norm_residual: f64,
    /// max over steps of |Σ_v p_v − 1|
    pub probability_residual: f64,
}

pub fn run_walk(d: &SymmetricDigraph, u: &TransitionMatrix, start: WalkState, steps: u64) -> Result<WalkRun> {
    let mut state = start;
    let mut probabilities = Vec::with_capacity(steps as usize + 1);
    let (mut norm_residual, mut probability_residual) = (0.0f64, 0.0f64);
    for n in 0..=steps {
        if n > 0 {
            state = walk::step(u, &state)?;
        }
        let p = walk::observe(d, &state);
        norm_residual = norm_residual.max((state.norm() - 1.0).abs());
        probability_residual = probability_residual.max((p.iter().sum::<f64>() - 1.0).abs());
        probabilities.push(p);
    }
    Ok(WalkRun { probabilities, final_state: state, norm_residual, probability_residual })
}

pub fn cmd_walk(args: &WalkArgs) -> Result<String> {
    let (d, w) = load(&args.input, Preset::Grover)?;
    let u = transition(&d, &w)?;
    let start = match args.start_arc {
        Some(a) => WalkState::delta(&d, a)?,
        None => WalkState::uniform(&d)?,
    };
    let run = run_walk(&d, &u, start, args.steps)?;

    if let Some(path) = &args.amplitudes {
        let doc = json!({
            "time": run.final_state.time(),
            "amplitudes": complex_list(run.final_state.amplitudes().as_slice()),
        });
        io::write_text(path, &io::to_json_string(&doc))?;
    }

    Ok(match args.format {
        Format::Csv => {
            let mut s = String::from("step,vertex,probability\n");
            for (n, p) in run.probabilities.iter().enumerate() {
                for (v, x) in p.iter().enumerate() {
                    s.push_str(&format!("{n},{v},{}\n", io::csv_num(*x)));
                }
            }
            eprintln!(
                "final norm residual {}; max probability-sum deviation {}",
                io::csv_num(run.norm_residual),
                io::csv_num(run.probability_residual)
            );
            s
        }
        Format::Json => {
            let steps: Vec<Value> = run
                .probabilities
                .iter()
                .enumerate()
                .map(|(n, p)| json!({"step": n, "probabilities": real_list(p)}))
                .collect();
            let doc = json!({
                "graph": graph_summary(&d),
                "preset": w.preset().name(),
                "steps": steps,
                "norm_residual": num(run.norm_residual),
                "probability_residual": num(run.probability_residual),
            });
            io::to_json_string(&doc)
        }
    })
}

fn spectrum_value(r: &SpectrumReport) -> Value {
    let cp = &r.char_poly;
    let mut out = Map::new();
    out.insert("eigenvalues".into(), complex_list(&r.eigenvalues));
    out.insert(
        "char_poly".into(),
        json!({
            "coeffs": complex_list(cp.coeffs()),
            "exact": cp.exact().map(|p| p.iter().map(ToString::to_string).collect::<Vec<_>>()),
        }),
    );
    out.insert(
        "konno_sato".into(),
        match &r.konno_sato {
            None => Value::Null,
            Some(k) => json!({
                "hypothesis_holds": k.hypothesis_holds(),
                "warnings": k.warnings,
                "trivial_pair_exponent": k.exponent,
                "residual": num(k.residual),
                "numeric_residual": num(k.numeric_residual),
                "t_spectrum": real_list(&k.t_spectrum),
                "quadratic_factors": k.quadratic_factors.iter().map(|q| json!({
                    "mu": num(q.mu),
                    "roots": complex_list(&q.roots),
                })).collect::<Vec<_>>(),
            }),
        },
    );
    let p = &r.periodicity;
    out.insert(
        "periodicity".into(),
        json!({
            "periodic": r.is_periodic(),
            "period": p.period,
            "orders": p.orders,
            "n_max": p.n_max,
            "tol": num(p.tol),
            "verification_residual": p.verification_residual.map(num),
        }),
    );
    out.insert(
        "cyclotomic".into(),
        match &r.cyclotomic {
            None => Value::Null,
            Some(f) => json!({
                "all_roots_of_unity": f.all_roots_of_unity(),
                "factors": f.orders.iter().map(|&(n, m)| json!({"n": n, "multiplicity": m})).collect::<Vec<_>>(),
                "remainder_degree": f.remainder_degree,
                "period": f.period(),
            }),
        },
    );
    Value::Object(out)
}

pub fn cmd_spectrum(args: &SpectrumArgs) -> Result<Value> {
    let (d, w) = load(&args.input, Preset::Grover)?;
    let u = transition(&d, &w)?;
    let report = spectral::spectrum_report(&d, &u, args.n_max, args.tol)?;
    let mut out = Map::new();
    out.insert("graph".into(), graph_summary(&d));
    out.insert("preset".into(), json!(w.preset().name()));
    if let Value::Object(m) = spectrum_value(&report) {
        out.extend(m);
    }
    Ok(Value::Object(out))
}

pub fn unitarity_value(r: &UnitarityReport) -> Value {
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| {
            json!({
                "vertex": v.vertex,
                "arc": v.arc,
                "condition": v.condition.name(),
                "residual": num(v.residual),
            })
        })
        .collect();
    json!({
        "criterion": r.criterion.name(),
        "unitary": r.unitary,
        "violations": violations,
        "direct_unitary": r.direct_unitary,
        "direct_residual": num(r.direct_residual),
        "agrees": r.agrees(),
        "amplitudes": r.amplitudes.iter().map(|x| x.map(num)).collect::<Vec<_>>(),
    })
}

pub fn cmd_unitarity(args: &UnitarityArgs) -> Result<Value> {
    let (d, w) = load(&args.input, Preset::Grover)?;
    let report = match args.criterion {
        CriterionArg::Auto => unitarity::check(&d, &w, args.tol)?,
        CriterionArg::Sato => unitarity::check_sato(&d, &w, args.tol)?,
        CriterionArg::Gw => unitarity::check_gw(&d, &w, args.tol)?,
    };
    Ok(unitarity_value(&report))
}

fn per_arc(d: &SymmetricDigraph, v: &Option<Vec<f64>>, name: &str) -> Result<Vec<f64>> {
    match v {
        None => Ok(vec![0.0; d.arc_count()]),
        Some(xs) if xs.len() == d.arc_count() => Ok(xs.clone()),
        Some(xs) => Err(Error::Input(format!(
            "--{name} has {} entries but the graph has {} arcs",
            xs.len(),
            d.arc_count()
        ))),
    }
}

pub fn cmd_construct(args: &ConstructArgs) -> Result<Value> {
    let d = SymmetricDigraph::new(io::load_graph(&args.graph)?);
    let n = d.n_vertices();
    let w = if args.sato {
        let phases = args.phases.clone().unwrap_or_else(|| vec![args.phase; n]);
        let mut zero = vec![false; n];
        for &v in &args.zero_vertices {
            *zero
                .get_mut(v)
                .ok_or_else(|| Error::Input(format!("vertex {v} does not exist")))? = true;
        }
        unitarity::construct_sato(&d, &SatoParams { phases, zero })?
    } else {
        if !(-1.0..=1.0).contains(&args.r_fraction) {
            return Err(Error::Input(format!("--r-fraction {} is outside [-1, 1]", args.r_fraction)));
        }
        let mut p = GWParams::grover(&d);
        match &args.r {
            Some(r) => p.r = r.clone(),
            None => p.r.iter_mut().for_each(|r| *r *= args.r_fraction),
        }
        p.upsilon_phase = per_arc(&d, &args.upsilon_phases, "upsilon-phases")?;
        p.leaf_phase = per_arc(&d, &args.leaf_phases, "leaf-phases")?;
        unitarity::construct_gw(&d, &p)?
    };
    let mut doc = io::weights_to_json(&w);
    if let Value::Object(m) = &mut doc {
        m.insert("family".into(), json!(if args.sato { "sato" } else { "generalized_weighted" }));
    }
    Ok(doc)
}

/// Runs a parsed command and returns the primary report text.
pub fn execute(cli: &Cli) -> Result<String> {
    Ok(match &cli.command {
        Command::Zeta(a) => io::to_json_string(&cmd_zeta(a)?),
        Command::Walk(a) => cmd_walk(a)?,
        Command::Spectrum(a) => io::to_json_string(&cmd_spectrum(a)?),
        Command::Unitarity(a) => io::to_json_string(&cmd_unitarity(a)?),
        Command::Construct(a) => io::to_json_string(&cmd_construct(a)?),
    })
}

/// Executes and writes the report; returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let result = execute(cli).and_then(|text| emit(cli.out.as_deref(), &text));
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => io::write_text(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
