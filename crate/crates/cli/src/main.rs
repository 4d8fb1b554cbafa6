//! `hcs`: enumerate labels, build and export modules, and run verification
//! campaigns for completely splittable Hecke-Clifford modules.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hecke_clifford::combinatorics::weights::{classes_of, enumerate_wprime};
use hecke_clifford::combinatorics::{
    classify, classify_finite, Characteristic, CombinatoricsError, ModuleType, PlacedDiagram, Weight,
};
use hecke_clifford::supermodules::{
    basic_spin, build_d, build_v001, build_v100, build_v2, induced_v00_l, kato_module, weight_module, ModuleFile,
    SupermoduleError,
};
use hecke_clifford::verify::{
    verify_classification, verify_finite, verify_intertwiners, verify_larger, verify_module, Report, VerifyConfig,
    VerifyError,
};
use hecke_clifford::{with_field, Field};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Combinatorics(#[from] CombinatoricsError),
    #[error(transparent)]
    Supermodule(#[from] SupermoduleError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Scalar(#[from] hecke_clifford::scalars::ScalarError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid module file: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "hcs", version, about = "Completely splittable Hecke-Clifford modules, computed exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Characteristic: 0 or an odd prime up to 31.
    #[arg(long, default_value_t = 0)]
    p: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the result here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for campaigns.
    #[arg(long, env = "HC_JOBS")]
    jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List diagrams, weights, weight classes, or standard tableaux.
    Enumerate {
        #[arg(value_enum)]
        kind: EnumerateKind,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Largest content in characteristic 0 (defaults to n).
        #[arg(long)]
        max_content: Option<u32>,
        /// Label the finite superalgebra's modules instead.
        #[arg(long)]
        finite: bool,
        /// Shifted shape `λ` or `λ/μ`, parts comma separated.
        #[arg(long)]
        shape: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Build the seminormal module of a weight and write it as JSON.
    Build {
        /// Comma-separated entries, e.g. `0,1,0`.
        #[arg(long)]
        weight: String,
        /// Require a weight of the finite superalgebra.
        #[arg(long)]
        finite: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification campaign.
    Verify {
        #[arg(value_enum)]
        scope: Scope,
        /// Module file for the `module-file` scope.
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long)]
        max_content: Option<u32>,
        /// Largest rank for which endomorphisms are computed.
        #[arg(long, default_value_t = 4)]
        end_bound: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Write one of the named example modules as JSON.
    Export {
        #[arg(value_enum)]
        module: ExportKind,
        /// Weight for `weight-module`, `(i,j)` for `v2`, `j` for `induced`.
        #[arg(long)]
        weight: Option<String>,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EnumerateKind {
    Diagrams,
    Weights,
    Classes,
    Tableaux,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Scope {
    ModuleFile,
    Classification,
    Finite,
    Larger,
    Intertwiners,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ExportKind {
    WeightModule,
    V2,
    V001,
    V100,
    Induced,
    Kato,
    BasicSpin,
}

fn parse_list(s: &str) -> Result<Vec<u32>, CliError> {
    s.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| CliError::Usage(format!("not a nonnegative integer: {t:?}"))))
        .collect()
}

fn emit(common: &Common, body: &str) -> Result<(), CliError> {
    match &common.out {
        Some(path) => fs::write(path, body).map_err(|source| CliError::Io { path: path.clone(), source }),
        None => {
            print!("{body}");
            if !body.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

fn enumerate(
    kind: EnumerateKind,
    n: usize,
    max_content: Option<u32>,
    finite: bool,
    shape: Option<&str>,
    common: &Common,
) -> Result<(), CliError> {
    let p = Characteristic::new(common.p)?;
    let max = max_content.unwrap_or(n as u32);
    let (count, text, value) = match kind {
        EnumerateKind::Tableaux => {
            let shape = shape.ok_or_else(|| CliError::Usage("tableaux need --shape".into()))?;
            let (lambda, mu) = match shape.split_once('/') {
                Some((l, m)) => (parse_list(l)?, parse_list(m)?),
                None => (parse_list(shape)?, vec![]),
            };
            let ts = PlacedDiagram::skew(&lambda, &mu).standard_tableaux();
            let text: Vec<String> = ts.iter().map(|t| t.render_labels()).collect();
            let value = json!(ts.iter().map(|t| t.labels().to_vec()).collect::<Vec<_>>());
            (ts.len(), text.join("\n\n"), value)
        }
        EnumerateKind::Weights => {
            let ws: Vec<Weight> = enumerate_wprime(n, p, max).into_iter().filter(|w| !finite || w.in_wyn()).collect();
            let text: Vec<String> = ws.iter().map(Weight::to_string).collect();
            (ws.len(), text.join("\n"), json!(ws))
        }
        EnumerateKind::Classes => {
            let ws: Vec<Weight> = enumerate_wprime(n, p, max).into_iter().filter(|w| !finite || w.in_wyn()).collect();
            let classes = classes_of(&ws);
            let text: Vec<String> =
                classes.iter().map(|c| c.iter().map(Weight::to_string).collect::<Vec<_>>().join(" ")).collect();
            (classes.len(), text.join("\n"), json!(classes))
        }
        EnumerateKind::Diagrams => {
            let labels = if finite { classify_finite(n, p) } else { classify(n, p, max) };
            let labels = match labels {
                Ok(l) => l,
                Err(e @ CombinatoricsError::EmptyClassification { .. }) => {
                    let msg = e.to_string();
                    let body = match common.format {
                        Format::Text => format!("{msg}\n0 labels\n"),
                        Format::Json => pretty(&json!({ "count": 0, "items": [], "note": msg })),
                    };
                    return emit(common, &body);
                }
                Err(e) => return Err(e.into()),
            };
            let text: Vec<String> = labels
                .iter()
                .map(|c| {
                    format!(
                        "{}\n  weight {}  dimension {}  type {:?}  tableaux {}",
                        c.label.describe(),
                        c.weight,
                        c.dimension,
                        c.module_type,
                        c.tableaux
                    )
                })
                .collect();
            (labels.len(), text.join("\n"), json!(labels))
        }
    };
    let body = match common.format {
        Format::Text => format!("{text}\n{count} {}\n", if count == 1 { "item" } else { "items" }),
        Format::Json => pretty(&json!({ "count": count, "items": value })),
    };
    emit(common, &body)
}

fn build_file<F: Field>(w: &Weight) -> Result<ModuleFile, CliError> {
    Ok(ModuleFile::from_module(&build_d::<F>(w)?))
}

fn build(weight: &str, finite: bool, common: &Common) -> Result<(), CliError> {
    let p = Characteristic::new(common.p)?;
    let w = Weight::new(parse_list(weight)?, p)?;
    if let Some(v) = w.wprime_violation() {
        return Err(CliError::Usage(format!("{w} is not the weight of a completely splittable module: {v}")));
    }
    if finite && !w.in_wyn() {
        return Err(CliError::Usage(format!("{w} is not a weight of the finite superalgebra: it must start with 0")));
    }
    let file = with_field!(common.p, F => build_file::<F>(&w))?;
    let n = w.len();
    let zeros = w.zero_count();
    let class = w.class().len();
    let simple = (1usize << (n - zeros / 2)) * class;
    let kind = ModuleType::from_zero_count(zeros);
    let summary = json!({
        "weight": w,
        "p": common.p,
        "thick_dimension": file.dimension,
        "simple_dimension": simple,
        "zero_count": zeros,
        "type": format!("{kind:?}"),
        "class_size": class,
    });
    match &common.out {
        Some(path) => {
            let body = serde_json::to_string_pretty(&file)? + "\n";
            fs::write(path, body).map_err(|source| CliError::Io { path: path.clone(), source })?;
        }
        None if common.format == Format::Json => print!("{}", serde_json::to_string_pretty(&file)? + "\n"),
        None => {}
    }
    if common.out.is_some() || common.format == Format::Text {
        match common.format {
            Format::Text => println!(
                "weight {w}  p = {}\nthick dimension {}\nsimple dimension {simple}\nγ₀ = {zeros}, type {kind:?}\nclass size {class}",
                common.p, file.dimension
            ),
            Format::Json => eprint!("{}", pretty(&summary)),
        }
    }
    Ok(())
}

fn verify_file<F: Field>(file: &ModuleFile) -> Result<Report, CliError> {
    Ok(verify_module(&file.to_module::<F>()?))
}

fn verify(
    scope: Scope,
    file: Option<&PathBuf>,
    n: usize,
    config: &VerifyConfig,
    common: &Common,
) -> Result<bool, CliError> {
    let report = match scope {
        Scope::ModuleFile => {
            let path = file.ok_or_else(|| CliError::Usage("module-file needs a path".into()))?;
            let body = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
            let mf: ModuleFile = serde_json::from_str(&body)?;
            with_field!(mf.p, F => verify_file::<F>(&mf))?
        }
        Scope::Classification => verify_classification(n, common.p, config)?,
        Scope::Finite => verify_finite(n, common.p)?,
        Scope::Larger => verify_larger(common.p)?,
        Scope::Intertwiners => verify_intertwiners(n, common.p)?,
    };
    let body = match common.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json() + "\n",
    };
    emit(common, &body)?;
    Ok(report.passed())
}

fn export(kind: ExportKind, weight: Option<&str>, n: usize, common: &Common) -> Result<(), CliError> {
    let need = |what: &str| -> Result<Vec<u32>, CliError> {
        parse_list(weight.ok_or_else(|| CliError::Usage(format!("{what} needs --weight")))?)
    };
    let args = match kind {
        ExportKind::WeightModule => need("weight-module")?,
        ExportKind::V2 => {
            let w = need("v2")?;
            if w.len() != 2 {
                return Err(CliError::Usage("v2 needs --weight i,j".into()));
            }
            w
        }
        ExportKind::Induced => {
            let w = need("induced")?;
            if w.len() != 1 {
                return Err(CliError::Usage("induced needs --weight j".into()));
            }
            w
        }
        _ => vec![],
    };
    let file = with_field!(common.p, F => export_file::<F>(kind, &args, n))?;
    emit(common, &(serde_json::to_string_pretty(&file)? + "\n"))
}

fn export_file<F: Field>(kind: ExportKind, args: &[u32], n: usize) -> Result<ModuleFile, CliError> {
    let m = match kind {
        ExportKind::WeightModule => weight_module::<F>(args)?,
        ExportKind::V2 => build_v2::<F>(args[0], args[1])?,
        ExportKind::V001 => build_v001::<F>()?,
        ExportKind::V100 => build_v100::<F>()?,
        ExportKind::Induced => induced_v00_l::<F>(args[0])?,
        ExportKind::Kato => kato_module::<F>(n)?,
        ExportKind::BasicSpin => basic_spin::<F>(n)?,
    };
    Ok(ModuleFile::from_module(&m))
}

fn configure_pool(jobs: Option<usize>) {
    if let Some(j) = jobs.filter(|j| *j > 0) {
        // A second initialization only happens in tests; the first pool wins.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Enumerate { kind, n, max_content, finite, shape, common } => {
            configure_pool(common.jobs);
            enumerate(kind, n, max_content, finite, shape.as_deref(), &common)?;
            Ok(true)
        }
        Command::Build { weight, finite, common } => {
            build(&weight, finite, &common)?;
            Ok(true)
        }
        Command::Verify { scope, file, n, max_content, end_bound, common } => {
            configure_pool(common.jobs);
            verify(scope, file.as_ref(), n, &VerifyConfig { max_content, end_bound }, &common)
        }
        Command::Export { module, weight, n, common } => {
            export(module, weight.as_deref(), n, &common)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
