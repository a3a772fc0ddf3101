use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use mqg_core::corep::{comodule_tensor, decompose, fp_dimension, indecomposables};
use mqg_core::quiver::parse_path;
use mqg_core::{
    classify, ArrowBimodule, CocycleParams, CycleModule, CycloNum, ExportFormat, FusionData, IntervalModule,
    MajidAlgebra, Parameters, QuiverAlgebra,
};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "mqg", version, about = "Pointed Majid algebras M(n,s,q) on the cyclic quiver Z^n")]
struct Cli {
    /// Machine-readable JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct ParamArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    s: u32,
    /// q = ζ_N^{q-exp}, N = n² when s ≠ 0 and N = n when s = 0.
    #[arg(long = "q-exp", allow_negative_numbers = true)]
    q_exp: i64,
}

impl ParamArgs {
    fn resolve(self) -> Result<Parameters, Failure> {
        Parameters::new(self.n, self.s, self.q_exp).map_err(Failure::usage)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    All,
    Quasi,
    Antipode,
    Hopf,
}

#[derive(Subcommand)]
enum Command {
    /// List every (s, q) for the given n with d and dim M(n,s,q).
    Classify {
        #[arg(long)]
        n: u32,
    },
    /// Build M(n,s,q) and print a summary.
    Build {
        #[command(flatten)]
        params: ParamArgs,
        /// Also write the structure constants to this file.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Check the quasi-bialgebra and quasi-antipode axioms.
    Verify {
        #[command(flatten)]
        params: Option<ParamArgs>,
        /// Verify an exported algebra instead of building one.
        #[arg(long, conflicts_with_all = ["n", "s", "q_exp"])]
        import: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
    },
    /// Multiply two paths in the quiver algebra.
    Product {
        #[command(flatten)]
        params: ParamArgs,
        left: String,
        right: String,
    },
    /// The reassociator Φ_s: pentagon check and one-dimensional modules.
    Cocycle {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: u32,
    },
    /// Indecomposable comodules of the d-truncated path coalgebra.
    Indec {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
    },
    /// Decompose a module given as JSON.
    Decompose {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Tensor two interval modules over an exported algebra.
    Tensor {
        #[arg(long)]
        alg: PathBuf,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Frobenius–Perron dimension of an interval module.
    Fpdim {
        #[arg(long)]
        alg: PathBuf,
        #[arg(long)]
        object: String,
    },
    /// Write the structure constants of M(n,s,q).
    Export {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// An error with its exit code: 1 for failed verification, 2 for bad input.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl Failure {
    fn usage(e: impl Into<anyhow::Error>) -> Self {
        Failure { code: 2, error: e.into() }
    }
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::usage(e)
    }
}

fn emit<T: Serialize>(json: bool, value: &T, human: impl FnOnce() -> String) -> Result<(), Failure> {
    if json {
        println!("{}", serde_json::to_string_pretty(value)?);
    } else {
        print!("{}", human());
    }
    Ok(())
}

fn load_algebra(path: &PathBuf) -> Result<MajidAlgebra, Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(MajidAlgebra::import(&text, ExportFormat::Json)?)
}

fn interval(text: &str, alg: &MajidAlgebra) -> Result<CycleModule, Failure> {
    let iv: IntervalModule = text.parse()?;
    Ok(iv.realize(alg.n(), alg.d())?)
}

#[derive(Serialize)]
struct Summary {
    n: u32,
    s: u32,
    q_exp: u32,
    conductor: u32,
    hbar: String,
    d: u32,
    dim: usize,
    is_hopf: bool,
}

#[derive(Serialize)]
struct ProductOut {
    left: String,
    right: String,
    coefficient: CycloNum,
    coefficient_text: String,
    target: String,
}

#[derive(Serialize)]
struct CocycleOut {
    n: u32,
    s: u32,
    pentagon: bool,
    normalization: bool,
    one_dim_modules: Vec<OneDimOut>,
}

#[derive(Serialize)]
struct OneDimOut {
    lambda: String,
    q_exp: Option<u32>,
    power_relation: bool,
}

#[derive(Serialize)]
struct Piece {
    interval: String,
    dims: Vec<usize>,
    multiplicity: usize,
}

#[derive(Serialize)]
struct TensorOut {
    left: String,
    right: String,
    dims: Vec<usize>,
    decomposition: Vec<Piece>,
    associator: Vec<AssociatorOut>,
}

#[derive(Serialize)]
struct AssociatorOut {
    i: u32,
    j: u32,
    k: u32,
    value: String,
}

#[derive(Serialize)]
struct FpOut {
    object: String,
    value: f64,
    certificate: Option<u64>,
    iterations: usize,
}

fn pieces(n: u32, parts: &[(IntervalModule, usize)]) -> Vec<Piece> {
    parts
        .iter()
        .map(|(iv, k)| Piece {
            interval: iv.to_string(),
            dims: iv.dim_vector(n),
            multiplicity: *k,
        })
        .collect()
}

fn pieces_text(parts: &[Piece]) -> String {
    if parts.is_empty() {
        return "0\n".into();
    }
    parts
        .iter()
        .map(|p| format!("{:<10} dims {:?}  x{}\n", p.interval, p.dims, p.multiplicity))
        .collect()
}

fn run(cli: Cli) -> Result<(), Failure> {
    let json = cli.json;
    match cli.command {
        Command::Classify { n } => {
            let entries = classify(n)?;
            emit(json, &entries, || {
                let mut out = format!("{:>3} {:>6} {:>9} {:>4} {:>5}  kind\n", "s", "q_exp", "conductor", "d", "dim");
                for e in &entries {
                    let kind = match (e.trivial_coradical, e.is_hopf) {
                        (true, _) => "group algebra only",
                        (false, true) => "Hopf",
                        (false, false) => "quasi-Hopf dual",
                    };
                    out += &format!(
                        "{:>3} {:>6} {:>9} {:>4} {:>5}  {kind}\n",
                        e.s, e.q_exp, e.conductor, e.d, e.dim
                    );
                }
                out
            })
        }
        Command::Build { params, export } => {
            let p = params.resolve()?;
            let alg = MajidAlgebra::from_params(p)?;
            if let Some(path) = export {
                fs::write(&path, alg.export(ExportFormat::Json)? + "\n")
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            let summary = Summary {
                n: p.n,
                s: p.s,
                q_exp: p.q_exp,
                conductor: p.conductor(),
                hbar: p.hbar().to_string(),
                d: alg.d(),
                dim: alg.dim(),
                is_hopf: alg.is_hopf(),
            };
            emit(json, &summary, || {
                format!(
                    "M({}, {}, z{}^{}): d = {}, dim = {}, hbar = {}, {}\n",
                    p.n,
                    p.s,
                    p.conductor(),
                    p.q_exp,
                    alg.d(),
                    alg.dim(),
                    summary.hbar,
                    if alg.is_hopf() { "Hopf" } else { "not Hopf" }
                )
            })
        }
        Command::Verify { params, import, suite } => {
            let alg = match (params, import) {
                (_, Some(path)) => load_algebra(&path)?,
                (Some(p), None) => MajidAlgebra::from_params(p.resolve()?)?,
                (None, None) => bail_usage("verify needs --n/--s/--q-exp or --import")?,
            };
            let mut checks = Vec::new();
            if matches!(suite, Suite::All | Suite::Quasi) {
                checks.extend(alg.verify_quasi_bialgebra().checks);
            }
            if matches!(suite, Suite::All | Suite::Antipode) {
                checks.extend(alg.verify_antipode().checks);
            }
            if matches!(suite, Suite::All | Suite::Hopf) && alg.is_hopf() {
                checks.push(alg.verify_hopf_antipode());
            }
            let passed = checks.iter().all(|c| c.passed);
            emit(json, &serde_json::json!({ "passed": passed, "checks": checks }), || {
                let mut out = String::new();
                for c in &checks {
                    out += &format!(
                        "{:<4} {} ({} cases){}\n",
                        if c.passed { "ok" } else { "FAIL" },
                        c.name,
                        c.checked,
                        c.witness.as_ref().map(|w| format!(": {w}")).unwrap_or_default()
                    );
                }
                out
            })?;
            if !passed {
                return Err(Failure {
                    code: 1,
                    error: anyhow::anyhow!("verification failed"),
                });
            }
            Ok(())
        }
        Command::Product { params, left, right } => {
            let p = params.resolve()?;
            let a = parse_path(&left, p.n)?;
            let b = parse_path(&right, p.n)?;
            let alg = QuiverAlgebra::new(ArrowBimodule::build(p));
            let (c, target) = alg.closed_form_product(&a, &b);
            let out = ProductOut {
                left: a.to_string(),
                right: b.to_string(),
                coefficient_text: c.to_string(),
                coefficient: c,
                target: target.to_string(),
            };
            emit(json, &out, || format!("{} * {} = ({}) {}\n", out.left, out.right, out.coefficient_text, out.target))
        }
        Command::Cocycle { n, s } => {
            let c = CocycleParams::new(n, s)?;
            let report = c.pentagon_check();
            let out = CocycleOut {
                n,
                s,
                pentagon: report.pentagon,
                normalization: report.normalization,
                one_dim_modules: c
                    .one_dim_modules()
                    .iter()
                    .map(|m| OneDimOut {
                        lambda: m.lambda.to_string(),
                        q_exp: m.q_exp,
                        power_relation: m.satisfies_power_relation(),
                    })
                    .collect(),
            };
            emit(json, &out, || {
                let mut text = format!(
                    "Phi_{s} on Z_{n}: pentagon {}, normalization {}\none-dimensional modules (lambda^n = qq^s):\n",
                    if out.pentagon { "holds" } else { "FAILS" },
                    if out.normalization { "holds" } else { "FAILS" },
                );
                for m in &out.one_dim_modules {
                    let q = m.q_exp.map(|e| format!("q_exp {e}")).unwrap_or_else(|| "no q".into());
                    text += &format!("  lambda = {:<8} {q}\n", m.lambda);
                }
                text
            })?;
            if !report.passed {
                return Err(Failure {
                    code: 1,
                    error: anyhow::anyhow!("cocycle check failed"),
                });
            }
            Ok(())
        }
        Command::Indec { n, d } => {
            if n < 2 || d < 1 {
                bail_usage("indec needs n ≥ 2 and d ≥ 1")?;
            }
            let list: Vec<Piece> = indecomposables(n, d)
                .iter()
                .map(|iv| Piece {
                    interval: iv.to_string(),
                    dims: iv.dim_vector(n),
                    multiplicity: 1,
                })
                .collect();
            emit(json, &list, || {
                let mut out = format!("{} indecomposables\n", list.len());
                for p in &list {
                    out += &format!("{:<10} dims {:?}\n", p.interval, p.dims);
                }
                out
            })
        }
        Command::Decompose { input } => {
            let text = fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let m = CycleModule::from_json(&text)?;
            let parts = pieces(m.n(), &decompose(&m)?);
            emit(json, &parts, || pieces_text(&parts))
        }
        Command::Tensor { alg, left, right } => {
            let alg = load_algebra(&alg)?;
            let x = interval(&left, &alg)?;
            let y = interval(&right, &alg)?;
            let report = comodule_tensor(&alg, &x, &y)?;
            let out = TensorOut {
                left,
                right,
                dims: report.module.dims().to_vec(),
                decomposition: pieces(alg.n(), &decompose(&report.module)?),
                associator: report
                    .associator
                    .iter()
                    .map(|((i, j, k), v)| AssociatorOut {
                        i: *i,
                        j: *j,
                        k: *k,
                        value: v.to_string(),
                    })
                    .collect(),
            };
            emit(json, &out, || {
                format!(
                    "{} (x) {} has dims {:?}\n{}",
                    out.left,
                    out.right,
                    out.dims,
                    pieces_text(&out.decomposition)
                )
            })
        }
        Command::Fpdim { alg, object } => {
            let alg = load_algebra(&alg)?;
            let m = interval(&object, &alg)?;
            let fusion = FusionData::from_algebra(&alg)?;
            let fp = fp_dimension(&fusion, &m.class())?;
            let out = FpOut {
                object,
                value: fp.value,
                certificate: fp.certificate,
                iterations: fp.iterations,
            };
            emit(json, &out, || {
                let exact = out.certificate.map(|c| format!(" (exact {c})")).unwrap_or_default();
                format!("FPdim {} = {:.12}{exact}\n", out.object, out.value)
            })
        }
        Command::Export { params, format, out } => {
            let format: ExportFormat = format.parse()?;
            let alg = MajidAlgebra::from_params(params.resolve()?)?;
            let text = alg.export(format)? + "\n";
            match out {
                Some(path) => fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(())
        }
    }
}

fn bail_usage<T>(msg: &str) -> Result<T, Failure> {
    let r: anyhow::Result<T> = (|| bail!("{msg}"))();
    r.map_err(Failure::usage)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
