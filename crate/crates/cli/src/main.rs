use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use trimat_core::io::{parse_vector, scalars_to_strings, BetaFile, LoadedBeta, LoadedModule, ModuleFile, ModuleSpec};
use trimat_core::lab::{self, RunOptions, SuiteReport, SuiteStatus, TrialConfig};
use trimat_core::{
    annihilator, beta_to_extension, counterexample_check, cyclic_counterexample_check, gorenstein_divisibility_solve,
    inductive_step_check, inequality_j, parse_poly, FieldSpec, InequalityReport, Subspace,
};

macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

const DEFAULT_CAP: u32 = trimat_core::module::DEFAULT_DEGREE_CAP;

#[derive(Parser)]
#[command(name = "trimat", version, about = "Exact computations with commuting matrices and their modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Degree up to which finite colength of an ideal is certified.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    degree_cap: u32,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ModuleInput {
    /// Module file with explicit action matrices.
    #[arg(long)]
    module: Option<PathBuf>,
    /// Ideal file; the module is `S/I` on its standard monomials.
    #[arg(long)]
    ideal: Option<PathBuf>,
}

#[derive(Args)]
struct BetaInput {
    /// Map file: target module, domain and images.
    #[arg(long)]
    beta: PathBuf,
}

#[derive(Args)]
struct SuiteArgs {
    /// `rational` or a prime.
    #[arg(long)]
    field: Option<FieldSpec>,
    #[arg(long = "vars")]
    vars: Option<usize>,
    #[arg(long)]
    max_dim: Option<usize>,
    #[arg(long)]
    max_degree: Option<u32>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Worker threads; 0 picks one per core.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Leave timing out of the report, making it a function of the config.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Known,
    MainTheorem,
    SpecialCase,
    Gorenstein,
    Oracle,
    Gerstenhaber,
    Search,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of the algebra generated by the action matrices.
    AlgebraDim {
        #[command(flatten)]
        input: ModuleInput,
        #[command(flatten)]
        out: Output,
    },
    /// Dimension, support, socle, cyclicity and algebra dimension.
    ModuleInfo {
        #[command(flatten)]
        input: ModuleInput,
        #[command(flatten)]
        out: Output,
    },
    /// Annihilator ideal, or whether `--poly` annihilates the module.
    Annihilator {
        #[command(flatten)]
        input: ModuleInput,
        #[arg(long)]
        poly: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Socle basis, or whether the class of `--poly` in `S/I` lies in it.
    Socle {
        #[command(flatten)]
        input: ModuleInput,
        #[arg(long)]
        poly: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// The extension module defined by a map.
    Extend {
        #[command(flatten)]
        beta: BetaInput,
        #[command(flatten)]
        out: Output,
    },
    /// `dim S/ann M + dim b(ann M) <= dim M + 1` for `b: m -> M`.
    Check {
        #[command(flatten)]
        beta: BetaInput,
        #[command(flatten)]
        out: Output,
    },
    /// `dim b(I) <= 1` for `b: m -> S/I`; the target must be an ideal file.
    CheckCyclic {
        #[command(flatten)]
        beta: BetaInput,
        #[command(flatten)]
        out: Output,
    },
    /// `dim J/(J ∩ ann M) + dim b(J ∩ ann M) <= dim M` for `b: J -> M`.
    #[command(name = "check-J")]
    CheckJ {
        #[command(flatten)]
        beta: BetaInput,
        #[command(flatten)]
        out: Output,
    },
    /// Compare the inequality for `b` into a codimension-one submodule with
    /// the inequality for `b` into the whole module.
    InductiveStep {
        #[command(flatten)]
        beta: BetaInput,
        /// JSON list of vectors spanning the submodule.
        #[arg(long)]
        sub: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Find `r` with `g(x_i) = x_i r` for a map `g: m -> M`, `M` Gorenstein.
    GorensteinSolve {
        #[command(flatten)]
        beta: BetaInput,
        #[command(flatten)]
        out: Output,
    },
    /// Run a verification suite.
    Verify {
        suite: Suite,
        #[command(flatten)]
        args: SuiteArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Search for modules with `dim S/ann N > dim N` by iterated extension.
    Search {
        #[command(flatten)]
        args: SuiteArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Recompute the worked examples.
    ReproduceKnown {
        #[command(flatten)]
        args: SuiteArgs,
        #[command(flatten)]
        out: Output,
    },
}

/// What a command found; decides the exit status.
enum Found {
    Nothing,
    Counterexample,
    Failure,
}

fn print_json<T: Serialize>(v: &T) -> Result<()> {
    outln!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn load_module(input: &ModuleInput, cap: u32) -> Result<LoadedModule> {
    let spec = match (&input.module, &input.ideal) {
        (Some(p), _) => ModuleSpec::Module(ModuleFile::read(p)?),
        (None, Some(p)) => ModuleSpec::Ideal(trimat_core::io::IdealFile::read(p)?),
        (None, None) => bail!("give --module or --ideal"),
    };
    Ok(spec.load(cap)?)
}

fn load_beta(input: &BetaInput, cap: u32) -> Result<LoadedBeta> {
    let file = BetaFile::read(&input.beta)?;
    let base = input.beta.parent().unwrap_or(Path::new("."));
    file.load(base, cap)
        .with_context(|| format!("loading map {}", input.beta.display()))
}

fn vectors(vs: &[Vec<trimat_core::Scalar>]) -> Vec<Vec<String>> {
    vs.iter().map(|v| scalars_to_strings(v)).collect()
}

fn print_report(r: &InequalityReport) {
    outln!("{}", r.inequality);
    for t in r.lhs_terms.iter().chain(&r.rhs_terms) {
        outln!("  {} = {}", t.name, t.value);
    }
    let verdict = if r.is_counterexample() { "counterexample" } else { "holds" };
    outln!("{}: {verdict}", r.summary());
    for w in &r.witnesses {
        outln!("  image vector [{}]", w.join(", "));
    }
    outln!(
        "extension: dim {}, algebra dimension {}{}",
        r.extension_dim,
        r.extension_algebra_dim,
        if r.consistent { "" } else { " (INCONSISTENT)" }
    );
}

fn report_outcome(r: &InequalityReport, out: &Output) -> Result<Found> {
    if out.json {
        print_json(r)?;
    } else {
        print_report(r);
    }
    Ok(if !r.consistent {
        Found::Failure
    } else if r.is_counterexample() {
        Found::Counterexample
    } else {
        Found::Nothing
    })
}

#[derive(Serialize)]
struct ComponentInfo {
    point: Vec<String>,
    dim: usize,
}

#[derive(Serialize)]
struct ModuleInfo {
    field: FieldSpec,
    nvars: usize,
    dim: usize,
    algebra_dimension: usize,
    nilpotency_degree: Option<usize>,
    socle_dim: usize,
    support: Option<Vec<ComponentInfo>>,
    cyclic: Option<bool>,
    generators_at_origin: usize,
    notes: Vec<String>,
}

fn module_info(m: &trimat_core::FdModule) -> ModuleInfo {
    let mut notes = Vec::new();
    let support = match m.support_split() {
        Ok(cs) => Some(
            cs.iter()
                .map(|c| ComponentInfo {
                    point: scalars_to_strings(&c.point.0),
                    dim: c.subspace.dim(),
                })
                .collect(),
        ),
        Err(e) => {
            notes.push(e.to_string());
            None
        }
    };
    let cyclic = m.is_cyclic().map_err(|e| notes.push(e.to_string())).ok();
    ModuleInfo {
        field: m.field(),
        nvars: m.nvars(),
        dim: m.dim(),
        algebra_dimension: m.algebra_dimension(),
        nilpotency_degree: m.nilpotency_degree(),
        socle_dim: m.socle().dim(),
        support,
        cyclic,
        generators_at_origin: m.generators_at_origin(),
        notes,
    }
}

fn suite_config(suite: Suite, a: &SuiteArgs, cap: u32) -> TrialConfig {
    let (field, nvars, max_dim, trials) = match suite {
        Suite::Search => (FieldSpec::prime(2).unwrap(), 4, 6, 500),
        Suite::Gerstenhaber => (FieldSpec::prime(101).unwrap(), 2, 12, 500),
        Suite::Oracle => (FieldSpec::prime(5).unwrap(), 3, 10, 300),
        Suite::SpecialCase => (FieldSpec::rational(), 3, 0, 150),
        Suite::Known => (FieldSpec::prime(101).unwrap(), 3, 4, 10_000),
        Suite::MainTheorem | Suite::Gorenstein => (FieldSpec::prime(5).unwrap(), 3, 8, 200),
    };
    let mut cfg = TrialConfig::new(
        a.vars.unwrap_or(nvars),
        a.field.unwrap_or(field),
        a.max_dim.unwrap_or(max_dim),
        a.trials.unwrap_or(trials),
        a.seed,
    );
    if let Some(d) = a.max_degree {
        cfg.max_degree = d;
    }
    cfg.degree_cap = cap;
    cfg
}

fn run_suite(suite: Suite, args: &SuiteArgs, out: &Output) -> Result<Found> {
    let cfg = suite_config(suite, args, out.degree_cap);
    let opts = RunOptions {
        threads: args.threads,
        timing: !args.no_timing,
    };
    let run = match suite {
        Suite::Known => lab::reproduce_known,
        Suite::MainTheorem => lab::suite_main_theorem,
        Suite::SpecialCase => lab::suite_special_case,
        Suite::Gorenstein => lab::suite_gorenstein,
        Suite::Oracle => lab::suite_oracle_equivalence,
        Suite::Gerstenhaber => lab::suite_gerstenhaber_pairs,
        Suite::Search => lab::search_counterexamples,
    };
    let report = run(&cfg, opts);
    if out.json {
        print_json(&report)?;
    } else {
        print_suite(&report);
    }
    Ok(match report.status() {
        SuiteStatus::Passed => Found::Nothing,
        SuiteStatus::ViolationsFound => Found::Counterexample,
        SuiteStatus::Failed => Found::Failure,
    })
}

fn print_suite(r: &SuiteReport) {
    let c = &r.config;
    outln!(
        "{} over {} in {} variables (max dim {}, seed {})",
        r.suite, c.field, c.nvars, c.max_dim, c.seed
    );
    outln!(
        "{} trials, {} accepted, {} skipped, {} checks",
        r.trials_run, r.accepted, r.skipped, r.checks
    );
    outln!("{} failures, {} violations", r.failures.len(), r.violations.len());
    for f in r.failures.iter().take(10) {
        let at = f.trial.map_or("fixed case".to_string(), |t| format!("trial {t}"));
        outln!("  FAIL {at}: {}: {}", f.check, f.detail);
    }
    for v in r.violations.iter().take(10) {
        let at = v.trial.map_or("fixed case".to_string(), |t| format!("trial {t}"));
        let shrunk = v.shrunk.as_ref().map_or(String::new(), |m| format!(", shrunk to dim {}", m.dim));
        outln!("  {at}: {} > {} in {}{shrunk}", v.lhs, v.rhs, v.inequality);
    }
    for (k, n) in &r.stats {
        outln!("  {k}: {n}");
    }
    if let Some(t) = &r.timing {
        outln!(
            "time {:.3} s, mean trial {} us, max trial {} us",
            t.total_us as f64 / 1e6,
            t.mean_trial_us,
            t.max_trial_us
        );
    }
}

fn run(cmd: Command) -> Result<Found> {
    match cmd {
        Command::AlgebraDim { input, out } => {
            let m = load_module(&input, out.degree_cap)?.module;
            let a = m.algebra_dimension();
            if out.json {
                print_json(&serde_json::json!({ "dim": m.dim(), "algebra_dimension": a }))?;
            } else {
                outln!("{a}");
            }
            Ok(Found::Nothing)
        }
        Command::ModuleInfo { input, out } => {
            let info = module_info(&load_module(&input, out.degree_cap)?.module);
            if out.json {
                print_json(&info)?;
            } else {
                outln!("module of dimension {} over {} in {} variables", info.dim, info.field, info.nvars);
                outln!("algebra dimension {}", info.algebra_dimension);
                match info.nilpotency_degree {
                    Some(c) => outln!("supported at the origin, m^{c} kills it"),
                    None => outln!("not supported only at the origin"),
                }
                outln!("socle dimension {}", info.socle_dim);
                outln!("minimal generators at the origin {}", info.generators_at_origin);
                if let Some(cs) = &info.support {
                    for c in cs {
                        outln!("  point ({}): dimension {}", c.point.join(", "), c.dim);
                    }
                }
                if let Some(c) = info.cyclic {
                    outln!("cyclic: {c}");
                }
                for n in &info.notes {
                    outln!("note: {n}");
                }
            }
            Ok(Found::Nothing)
        }
        Command::Annihilator { input, poly, out } => {
            let m = load_module(&input, out.degree_cap)?.module;
            if let Some(p) = poly {
                let p = parse_poly(&p, m.nvars(), m.field())?;
                let kills = m.annihilates(&p)?;
                if out.json {
                    print_json(&serde_json::json!({ "poly": p.to_string(), "annihilates": kills }))?;
                } else {
                    outln!("{}", if kills { "annihilates" } else { "does not annihilate" });
                }
                return Ok(Found::Nothing);
            }
            let ann = annihilator(&m)?;
            let gens: Vec<String> = ann.ideal_generators().iter().map(ToString::to_string).collect();
            if out.json {
                print_json(&serde_json::json!({
                    "nilpotency_degree": ann.nilpotency_degree,
                    "quotient_dim": ann.quotient_dim,
                    "generators": gens,
                }))?;
            } else {
                outln!("dim S/ann = {}", ann.quotient_dim);
                outln!("ann = ({}) + m^{}", gens.join(", "), ann.nilpotency_degree + 1);
            }
            Ok(Found::Nothing)
        }
        Command::Socle { input, poly, out } => {
            let loaded = load_module(&input, out.degree_cap)?;
            let m = &loaded.module;
            let soc = m.socle();
            if let Some(p) = poly {
                let ring = loaded
                    .ring
                    .as_ref()
                    .ok_or_else(|| anyhow!("--poly needs the module given as --ideal"))?;
                let p = parse_poly(&p, m.nvars(), m.field())?;
                let inside = soc.contains(&ring.normal_form(&p)?);
                if out.json {
                    print_json(&serde_json::json!({ "poly": p.to_string(), "in_socle": inside }))?;
                } else {
                    outln!("{}", if inside { "in the socle" } else { "not in the socle" });
                }
                return Ok(Found::Nothing);
            }
            let basis = vectors(soc.basis());
            if out.json {
                print_json(&serde_json::json!({ "dim": soc.dim(), "basis": basis }))?;
            } else {
                outln!("socle dimension {}", soc.dim());
                for v in &basis {
                    outln!("  [{}]", v.join(", "));
                }
            }
            Ok(Found::Nothing)
        }
        Command::Extend { beta, out } => {
            let b = load_beta(&beta, out.degree_cap)?.beta;
            let ext = beta_to_extension(&b)?;
            let n = &ext.total;
            let file = ModuleFile::from_module(n);
            if out.json {
                print_json(&serde_json::json!({
                    "dim": n.dim(),
                    "algebra_dimension": n.algebra_dimension(),
                    "quotient_dim": ext.quotient_dim,
                    "module": file,
                }))?;
            } else {
                outln!("extension of dimension {}, algebra dimension {}", n.dim(), n.algebra_dimension());
                print_json(&file)?;
            }
            Ok(Found::Nothing)
        }
        Command::Check { beta, out } => {
            let b = load_beta(&beta, out.degree_cap)?.beta;
            report_outcome(&counterexample_check(&b)?, &out)
        }
        Command::CheckCyclic { beta, out } => {
            let loaded = load_beta(&beta, out.degree_cap)?;
            let ring = loaded
                .ring
                .ok_or_else(|| anyhow!("check-cyclic needs the map's target to be an ideal file"))?;
            report_outcome(&cyclic_counterexample_check(&ring, &loaded.beta)?, &out)
        }
        Command::CheckJ { beta, out } => {
            let b = load_beta(&beta, out.degree_cap)?.beta;
            report_outcome(&inequality_j(&b)?, &out)
        }
        Command::InductiveStep { beta, sub, out } => {
            let b = load_beta(&beta, out.degree_cap)?.beta;
            let text = std::fs::read_to_string(&sub).with_context(|| format!("reading {}", sub.display()))?;
            let raw: Vec<Vec<String>> =
                serde_json::from_str(&text).with_context(|| format!("parsing {}", sub.display()))?;
            let m = b.target();
            let vs = raw
                .iter()
                .map(|v| parse_vector(m.field(), v))
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(v) = vs.iter().find(|v| v.len() != m.dim()) {
                bail!("submodule vector of length {}, module has dimension {}", v.len(), m.dim());
            }
            let w = Subspace::span(m.field(), m.dim(), vs);
            let step = inductive_step_check(m, &w, &b)?;
            if out.json {
                print_json(&step)?;
            } else {
                outln!("premise (submodule):");
                print_report(&step.premise);
                outln!("conclusion (module):");
                print_report(&step.conclusion);
                if step.step_fails {
                    outln!("the premise holds and the conclusion fails");
                }
            }
            Ok(if step.conclusion.is_counterexample() {
                Found::Counterexample
            } else {
                Found::Nothing
            })
        }
        Command::GorensteinSolve { beta, out } => {
            let b = load_beta(&beta, out.degree_cap)?.beta;
            let r = gorenstein_divisibility_solve(&b)?;
            let r = r.as_deref().map(scalars_to_strings);
            if out.json {
                print_json(&serde_json::json!({ "solution": r }))?;
            } else {
                match r {
                    Some(r) => outln!("r = [{}]", r.join(", ")),
                    None => outln!("no solution"),
                }
            }
            Ok(Found::Nothing)
        }
        Command::Verify { suite, args, out } => run_suite(suite, &args, &out),
        Command::Search { args, out } => run_suite(Suite::Search, &args, &out),
        Command::ReproduceKnown { args, out } => run_suite(Suite::Known, &args, &out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(Found::Nothing) => ExitCode::SUCCESS,
        Ok(Found::Counterexample) => ExitCode::from(2),
        Ok(Found::Failure) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
