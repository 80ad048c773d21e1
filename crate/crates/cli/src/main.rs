use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use seedwave::cascade::{cascade_report, cascade_scaling_with, mother_wavelet, SampledFunction};
use seedwave::cascade::{DEFAULT_ITERATIONS, DEFAULT_LEVEL};
use seedwave::filter::{extract_filter_with, relevance_report, FilterSequence, RelevanceTols};
use seedwave::ortho::{f_coefficients_with, ont_filter_with, ont_seed, symbol_with, SampleGrid, DEFAULT_GRID};
use seedwave::overlap::{check_monc, check_onc, overlap_lattice_with, OverlapLattice};
use seedwave::qmcheck::{crosscheck, KernelModel, KernelVariant, QuadSettings};
use seedwave::report::OutDir;
use seedwave::seedfn::{presets, spec, LatticeParams, SeedFunction};
use seedwave::{Error, Exec, Result};

#[derive(Parser, Debug)]
#[command(name = "seedwave", version, about = "Wavelet filters from lattice seed functions")]
struct Cli {
    /// Evaluate everything on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Overlap lattice, filter coefficients and relevance verdicts of a seed.
    Analyze(AnalyzeArgs),
    /// Orthonormalize a seed through its Gram symbol.
    Ont(OntArgs),
    /// Scaling function and mother wavelet by the cascade algorithm.
    Cascade(CascadeArgs),
    /// Compare 2D overlaps of the kernel models with the lattice overlap.
    Crosscheck(CrosscheckArgs),
    /// List built-in seeds.
    Presets,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct Common {
    /// Seed specification: a JSON file or `preset:NAME`.
    #[arg(long)]
    seed: String,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Format of tabular outputs.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args, Debug)]
struct RelevanceArgs {
    /// Largest lag in (r1).
    #[arg(long, default_value_t = 8)]
    r1_lags: usize,
    #[arg(long, default_value_t = 1e-10)]
    tol_r1: f64,
    #[arg(long, default_value_t = 1e-10)]
    tol_r3: f64,
    /// Smallest accepted `|m(ω)|` on `|ω| ≤ π/2` in (r4).
    #[arg(long, default_value_t = 1e-6)]
    tol_r4: f64,
    #[arg(long, default_value_t = 4096)]
    r4_grid: usize,
    #[arg(long, default_value_t = 512)]
    omega_grid: usize,
}

impl RelevanceArgs {
    fn tols(&self) -> Result<RelevanceTols> {
        positive(&[("tol-r1", self.tol_r1), ("tol-r3", self.tol_r3), ("tol-r4", self.tol_r4)])?;
        Ok(RelevanceTols {
            r1_tol: self.tol_r1,
            l_max: self.r1_lags,
            r3_tol: self.tol_r3,
            r4_grid: self.r4_grid,
            r4_delta: self.tol_r4,
            omega_grid: self.omega_grid,
        })
    }
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[command(flatten)]
    common: Common,
    /// Overlap lattice truncation `|l1|, |l2| ≤ L`.
    #[arg(long, default_value_t = 8)]
    l_max: usize,
    /// Filter window `|n| ≤ N`.
    #[arg(long, default_value_t = 64)]
    n_range: usize,
    #[arg(long, default_value_t = 1e-10)]
    tol_onc: f64,
    #[command(flatten)]
    relevance: RelevanceArgs,
}

#[derive(Args, Debug)]
struct OntArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 8)]
    l_max: usize,
    /// Symbol grid size along each axis.
    #[arg(long, default_value_t = DEFAULT_GRID)]
    grid: usize,
    #[arg(long, default_value_t = 64)]
    n_range: usize,
    #[arg(long, default_value_t = 1e-10)]
    tol_onc: f64,
    /// Also sample the orthonormalized seed with `k` nodes per lattice cell.
    #[arg(long, value_name = "K")]
    assemble: Option<usize>,
    #[command(flatten)]
    relevance: RelevanceArgs,
}

#[derive(Args, Debug)]
struct CascadeArgs {
    /// Filter CSV (`n,re,im`), e.g. the output of `analyze` or `ont`.
    #[arg(long, conflicts_with = "seed", required_unless_present = "seed")]
    filter: Option<PathBuf>,
    /// Extract the filter from a seed instead.
    #[arg(long)]
    seed: Option<String>,
    #[arg(long, default_value_t = 64)]
    n_range: usize,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long, default_value_t = DEFAULT_ITERATIONS)]
    iterations: usize,
    /// Dyadic resolution `2^-level`.
    #[arg(long, default_value_t = DEFAULT_LEVEL)]
    level: u32,
    /// Translates checked for orthonormality.
    #[arg(long, default_value_t = 4)]
    k_max: usize,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

#[derive(Args, Debug)]
struct CrosscheckArgs {
    #[command(flatten)]
    common: Common,
    /// Auxiliary function of the kernels.
    #[arg(long, default_value = "preset:gaussian")]
    phi0: String,
    #[arg(long, default_value_t = 2)]
    l_max: usize,
    #[arg(long, default_value_t = 1e-4)]
    tol: f64,
    /// Subset of models, e.g. `--models example1,example3`.
    #[arg(long, value_delimiter = ',', value_parser = ["example1", "example2", "example3"])]
    models: Vec<String>,
    #[arg(long, default_value_t = QuadSettings::default().inner_radius)]
    inner_radius: f64,
    #[arg(long, default_value_t = QuadSettings::default().inner_nodes)]
    inner_nodes: usize,
    #[arg(long, default_value_t = QuadSettings::default().outer_radius)]
    outer_radius: f64,
    #[arg(long, default_value_t = QuadSettings::default().outer_nodes)]
    outer_nodes: usize,
    #[arg(long, default_value_t = QuadSettings::default().tail_tol)]
    tol_tail: f64,
}

fn positive(values: &[(&str, f64)]) -> Result<()> {
    for (name, v) in values {
        if v.is_nan() || *v <= 0.0 {
            return Err(Error::InvalidArgument(format!("--{name} must be positive, got {v}")));
        }
    }
    Ok(())
}

fn lattice_params(l_max: usize) -> Result<LatticeParams> {
    LatticeParams::new(l_max)
}

fn filter_table(f: &FilterSequence, format: Format) -> (String, String) {
    match format {
        Format::Csv => (f.to_csv(), "csv".into()),
        Format::Json => {
            let rows: Vec<Value> = f.iter().map(|(n, c)| json!({ "n": n, "re": c.re, "im": c.im })).collect();
            (pretty(&Value::Array(rows)), "json".into())
        }
    }
}

fn overlap_table(lat: &OverlapLattice, format: Format) -> (String, String) {
    match format {
        Format::Csv => (lat.to_csv(), "csv".into()),
        Format::Json => {
            let rows: Vec<Value> = lat
                .values
                .iter()
                .map(|(l1, l2, v)| json!({ "l1": l1, "l2": l2, "re": v.re, "im": v.im, "abs": v.norm() }))
                .collect();
            (pretty(&Value::Array(rows)), "json".into())
        }
    }
}

fn sampled_table(g: &SampledFunction, format: Format) -> (String, String) {
    match format {
        Format::Csv => (g.to_csv(), "csv".into()),
        Format::Json => {
            let rows: Vec<Value> =
                g.values.iter().enumerate().map(|(i, v)| json!({ "x": g.x(i), "re": v.re, "im": v.im })).collect();
            (pretty(&Value::Array(rows)), "json".into())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialise");
    s.push('\n');
    s
}

fn write_table(out: &OutDir, stem: &str, (text, ext): (String, String)) -> Result<()> {
    let p = out.write_text(&format!("{stem}.{ext}"), &text)?;
    println!("wrote {}", p.display());
    Ok(())
}

fn write_json(out: &OutDir, name: &str, v: &Value) -> Result<()> {
    let p = out.write_json(name, v)?;
    println!("wrote {}", p.display());
    Ok(())
}

fn monc_json(lat: &OverlapLattice, tol: f64) -> Value {
    match check_monc(lat, tol) {
        Ok(m) => json!(m),
        Err(e) => json!({ "error": e.name(), "message": e.to_string() }),
    }
}

fn cmd_analyze(args: &AnalyzeArgs, exec: Exec) -> Result<bool> {
    positive(&[("tol-onc", args.tol_onc)])?;
    let tols = args.relevance.tols()?;
    let seed = spec::load(&args.common.seed)?;
    let out = OutDir::create(&args.common.out)?;
    let lat = overlap_lattice_with(&seed, lattice_params(args.l_max)?, exec)?;
    let filter = extract_filter_with(&seed, args.n_range, exec)?;
    let rep = relevance_report(&filter, Some(&seed), &tols)?;

    let mut doc = rep.to_json();
    doc["seed"] = json!(args.common.seed);
    doc["domain"] = json!(seed.domain());
    doc["lattice"] = json!({ "l_max": args.l_max, "n_range": args.n_range });
    doc["onc"] = json!(check_onc(&lat, args.tol_onc));
    doc["monc"] = monc_json(&lat, args.tol_onc);
    doc["all_pass"] = json!(rep.all_pass());

    write_table(&out, "overlap", overlap_table(&lat, args.common.format))?;
    write_table(&out, "filter", filter_table(&filter, args.common.format))?;
    write_json(&out, "relevance.json", &doc)?;
    Ok(rep.all_pass())
}

fn cmd_ont(args: &OntArgs, exec: Exec) -> Result<bool> {
    positive(&[("tol-onc", args.tol_onc)])?;
    let tols = args.relevance.tols()?;
    let seed = spec::load(&args.common.seed)?;
    let out = OutDir::create(&args.common.out)?;
    let lat = overlap_lattice_with(&seed, lattice_params(args.l_max)?, exec)?;
    let sym = symbol_with(&lat, args.grid, args.grid, exec)?;
    let f = f_coefficients_with(&sym, args.l_max, exec)?;
    let big_h = ont_filter_with(&seed, &sym, args.n_range, exec)?;
    let h = extract_filter_with(&seed, args.n_range, exec)?;
    let rep = relevance_report(&big_h, None, &tols)?;

    let onc = check_onc(&lat, args.tol_onc);
    let change = h.iter().map(|(n, c)| (c - big_h.get(n)).norm()).fold(0.0, f64::max);
    let mut doc = rep.to_json();
    doc["seed"] = json!(args.common.seed);
    doc["grid"] = json!({ "n1": sym.n1, "n2": sym.n2 });
    doc["l_max"] = json!(args.l_max);
    doc["singular_eps"] = json!(sym.singular_eps());
    doc["symbol"] = json!({ "min": sym.min, "max": sym.max, "imag_residue": sym.imag_residue });
    doc["seed_onc"] = json!(onc);
    doc["seed_monc"] = monc_json(&lat, args.tol_onc);
    // An orthonormal seed must come back unchanged.
    doc["max_coefficient_change"] = json!(change);
    doc["unchanged"] = json!(change <= 1e-10);
    doc["all_pass"] = json!(rep.all_pass());

    let mut fdoc = f.to_json();
    fdoc["seed"] = json!(args.common.seed);
    write_json(&out, "f_coefficients.json", &fdoc)?;
    write_table(&out, "ont_filter", filter_table(&big_h, args.common.format))?;

    if let Some(per_cell) = args.assemble {
        if per_cell == 0 {
            return Err(Error::InvalidArgument("--assemble needs at least one node per cell".into()));
        }
        let (lo, hi) = seed
            .effective_extent_a()
            .ok_or_else(|| Error::Unsupported("--assemble needs a seed with effectively compact support".into()))?;
        let reach = lo.abs().max(hi.abs());
        let radius = (reach + args.l_max as f64 + 2.0) * seedwave::LATTICE_A;
        let assembled = ont_seed(&seed, &f.values, SampleGrid::lattice_aligned(radius, per_cell))?;
        let check = check_onc(&overlap_lattice_with(&assembled, lattice_params(2)?, exec)?, 1e-4);
        if let seedwave::seedfn::SeedKind::Sampled(s) = assembled.kind() {
            let mut text = String::from("x,re,im\n");
            for (i, v) in s.values.iter().enumerate() {
                text.push_str(&format!("{},{},{}\n", s.x(i), v.re, v.im));
            }
            let p = out.write_text("ont_seed.csv", &text)?;
            println!("wrote {}", p.display());
        }
        doc["assembled"] = json!({ "per_cell": per_cell, "radius": radius, "onc_l2": check });
    }
    write_json(&out, "ont_relevance.json", &doc)?;
    Ok(rep.all_pass())
}

fn cmd_cascade(args: &CascadeArgs, exec: Exec) -> Result<bool> {
    positive(&[("tol", args.tol)])?;
    let filter = match (&args.filter, &args.seed) {
        (Some(path), _) => FilterSequence::from_csv(&std::fs::read_to_string(path)?)?,
        (None, Some(source)) => extract_filter_with(&spec::load(source)?, args.n_range, exec)?,
        (None, None) => return Err(Error::InvalidArgument("either --filter or --seed is required".into())),
    };
    let out = OutDir::create(&args.out)?;
    let c = cascade_scaling_with(&filter, args.iterations, args.level, exec)?;
    let psi = mother_wavelet(&c);
    let rep = cascade_report(&c, &psi, args.k_max, args.tol);

    let mut warnings = Vec::new();
    if (rep.phi_integral_re - 1.0).abs() > 1e-6 || rep.phi_integral_im.abs() > 1e-6 {
        warnings.push(format!("integral of phi is {:e} + {:e}i, not 1", rep.phi_integral_re, rep.phi_integral_im));
    }
    if rep.last_diff > args.tol {
        warnings.push(format!("last iteration still changed phi by {:e}", rep.last_diff));
    }
    let pass = rep.phi_translates.pass && rep.psi_phi_cross.pass && rep.psi_translates.pass;
    let mut doc = json!(rep);
    doc["warnings"] = json!(warnings);
    doc["all_pass"] = json!(pass);

    write_table(&out, "phi", sampled_table(&c.phi, args.format))?;
    write_table(&out, "psi", sampled_table(&psi, args.format))?;
    write_json(&out, "orthonormality.json", &doc)?;
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    Ok(pass)
}

fn cmd_crosscheck(args: &CrosscheckArgs, exec: Exec) -> Result<bool> {
    positive(&[("tol", args.tol), ("tol-tail", args.tol_tail)])?;
    let seed = spec::load(&args.common.seed)?;
    let phi0 = spec::load(&args.phi0)?;
    let variants: Vec<KernelVariant> = if args.models.is_empty() {
        KernelVariant::ALL.to_vec()
    } else {
        KernelVariant::ALL.into_iter().filter(|v| args.models.iter().any(|m| m == v.name())).collect()
    };
    let models = variants.into_iter().map(|v| KernelModel::new(v, phi0.clone())).collect::<Result<Vec<_>>>()?;
    let quad = QuadSettings {
        inner_radius: args.inner_radius,
        inner_nodes: args.inner_nodes,
        outer_radius: args.outer_radius,
        outer_nodes: args.outer_nodes,
        tail_tol: args.tol_tail,
    };
    let out = OutDir::create(&args.common.out)?;
    let rep = crosscheck(&models, &seed, args.l_max, &quad, args.tol, exec)?;
    let mut doc = json!(rep);
    doc["seed"] = json!(args.common.seed);
    doc["phi0"] = json!(args.phi0);
    doc["max_abs_error"] = json!(rep.max_abs_error());
    doc["all_pass"] = json!(rep.pass());
    write_json(&out, "crosscheck.json", &doc)?;
    Ok(rep.pass())
}

fn cmd_presets() -> Result<bool> {
    for name in presets::NAMES {
        let seed: SeedFunction = presets::by_name(name)?;
        let domain = match seed.domain() {
            seedwave::seedfn::Domain::Position => "position",
            seedwave::seedfn::Domain::Frequency => "frequency",
        };
        println!("{name}\t{domain}");
    }
    Ok(true)
}

fn run(cli: &Cli) -> Result<bool> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    match &cli.command {
        Command::Analyze(a) => cmd_analyze(a, exec),
        Command::Ont(a) => cmd_ont(a, exec),
        Command::Cascade(a) => cmd_cascade(a, exec),
        Command::Crosscheck(a) => cmd_crosscheck(a, exec),
        Command::Presets => cmd_presets(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(1)
        }
    }
}
