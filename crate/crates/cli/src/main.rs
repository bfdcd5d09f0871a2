//! `nfpc`: compile NFP-annotated service models into WSDL/XSD/WS-Policy
//! files, validate them, or evaluate their policies against a snapshot of
//! measured values.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nfpc_core::model::{parse_model_with, type_check, ConstraintKind, ServiceModel};
use nfpc_core::policy::{evaluate_with, EvalMode, PolicySubjectRef};
use nfpc_core::{
    emit_bundles, transform_model, EmitConfig, FunctionIdMode, ParseError, PolicyArtifacts,
    TransformError, TypeLibrary, Valuation,
};

#[derive(Parser)]
#[command(
    name = "nfpc",
    version,
    about = "Compile and check NFP constraints of service models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write `<service>.wsdl` and `<service>-types.xsd` for every service.
    Compile {
        model: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, value_enum, default_value_t = FunctionIds::Urn)]
        function_ids: FunctionIds,
        /// Also write each policy to `<policy id>.xml`.
        #[arg(long)]
        split_policies: bool,
        #[arg(long, env = "NFPC_TYPES_LIB")]
        types_lib: Option<PathBuf>,
    },
    /// Parse, validate and type-check a model without writing anything.
    Validate {
        model: PathBuf,
        #[arg(long, env = "NFPC_TYPES_LIB")]
        types_lib: Option<PathBuf>,
    },
    /// Evaluate the policies of one service or endpoint against a values file.
    Eval {
        model: PathBuf,
        /// Service name, endpoint name, or `Service/Endpoint`.
        #[arg(long)]
        subject: String,
        /// Lines of `Name/NameValue = literal`.
        #[arg(long)]
        values: PathBuf,
        #[arg(long, value_enum, default_value_t = KindFilter::All)]
        kind: KindFilter,
        /// Ignore the empty alternative of offered policies.
        #[arg(long)]
        strict_offered: bool,
        #[arg(long, env = "NFPC_TYPES_LIB")]
        types_lib: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FunctionIds {
    Entity,
    Urn,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindFilter {
    Required,
    Offered,
    All,
}

const EXIT_INVALID: u8 = 1;
const EXIT_TYPE: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_UNSATISFIED: u8 = 4;
const EXIT_EVAL: u8 = 5;

/// A failed command: exit code plus the lines for standard error.
struct Failure {
    code: u8,
    lines: Vec<String>,
}

impl Failure {
    fn new(code: u8, line: impl fmt::Display) -> Self {
        Failure {
            code,
            lines: vec![line.to_string()],
        }
    }

    fn io(path: &Path, err: impl fmt::Display) -> Self {
        Failure::new(EXIT_IO, format!("{}: {err}", path.display()))
    }

    fn parse(path: &Path, err: &ParseError) -> Self {
        Failure::new(EXIT_INVALID, format!("{}:{err}", path.display()))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INVALID } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Compile {
            model,
            out_dir,
            function_ids,
            split_policies,
            types_lib,
        } => run_compile(
            &model,
            &out_dir,
            function_ids,
            split_policies,
            types_lib.as_deref(),
        ),
        Command::Validate { model, types_lib } => run_validate(&model, types_lib.as_deref()),
        Command::Eval {
            model,
            subject,
            values,
            kind,
            strict_offered,
            types_lib,
        } => run_eval(
            &model,
            &subject,
            &values,
            kind,
            strict_offered,
            types_lib.as_deref(),
        ),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            for line in f.lines {
                eprintln!("error: {line}");
            }
            ExitCode::from(f.code)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::io(path, e))
}

fn load_library(path: Option<&Path>) -> Result<TypeLibrary, Failure> {
    let mut lib = TypeLibrary::builtin();
    if let Some(path) = path {
        let text = read(path)?;
        lib.extend_from_text(&text)
            .map_err(|e| Failure::parse(path, &e))?;
    }
    Ok(lib)
}

fn load_model(path: &Path, lib: &TypeLibrary) -> Result<ServiceModel, Failure> {
    let text = read(path)?;
    parse_model_with(&text, lib).map_err(|e| Failure::parse(path, &e))
}

/// Type-checks, then lowers. Every type error is reported, not just the first.
fn lower(path: &Path, model: &ServiceModel, lib: &TypeLibrary) -> Result<PolicyArtifacts, Failure> {
    let diagnostics = type_check(model, lib);
    if !diagnostics.is_empty() {
        return Err(Failure {
            code: EXIT_TYPE,
            lines: diagnostics
                .iter()
                .map(|d| format!("{}: {d}", path.display()))
                .collect(),
        });
    }
    transform_model(model, lib).map_err(|e| {
        let code = match e {
            TransformError::Invalid(_) => EXIT_INVALID,
            _ => EXIT_TYPE,
        };
        Failure::new(code, format!("{}: {e}", path.display()))
    })
}

fn run_compile(
    model_path: &Path,
    out_dir: &Path,
    function_ids: FunctionIds,
    split_policies: bool,
    types_lib: Option<&Path>,
) -> Result<(), Failure> {
    let lib = load_library(types_lib)?;
    let model = load_model(model_path, &lib)?;
    let artifacts = lower(model_path, &model, &lib)?;
    let config = EmitConfig {
        function_ids: match function_ids {
            FunctionIds::Entity => FunctionIdMode::Entity,
            FunctionIds::Urn => FunctionIdMode::XacmlUrn,
        },
        ..EmitConfig::default()
    };
    let bundles = emit_bundles(&model, &artifacts, &config);
    fs::create_dir_all(out_dir).map_err(|e| Failure::io(out_dir, e))?;
    for bundle in &bundles {
        for (name, contents) in bundle.files(split_policies) {
            let path = out_dir.join(&name);
            fs::write(&path, contents).map_err(|e| Failure::io(&path, e))?;
            println!("WROTE {name}");
        }
    }
    Ok(())
}

fn run_validate(model_path: &Path, types_lib: Option<&Path>) -> Result<(), Failure> {
    let lib = load_library(types_lib)?;
    let model = load_model(model_path, &lib)?;
    let diagnostics = type_check(&model, &lib);
    if diagnostics.is_empty() {
        println!("{}: ok", model_path.display());
        return Ok(());
    }
    Err(Failure {
        code: EXIT_INVALID,
        lines: diagnostics
            .iter()
            .map(|d| format!("{}: {d}", model_path.display()))
            .collect(),
    })
}

fn find_subject(model: &ServiceModel, name: &str) -> Result<PolicySubjectRef, Failure> {
    if let Some((service, endpoint)) = name.split_once('/') {
        return model
            .service(service)
            .and_then(|s| s.endpoints.iter().find(|e| e.name == endpoint))
            .map(|_| PolicySubjectRef::endpoint(service, endpoint))
            .ok_or_else(|| Failure::new(EXIT_INVALID, format!("unknown subject `{name}`")));
    }
    if model.service(name).is_some() {
        return Ok(PolicySubjectRef::service(name));
    }
    let mut found = model.services.iter().flat_map(|s| {
        s.endpoints
            .iter()
            .filter(|e| e.name == name)
            .map(|e| PolicySubjectRef::endpoint(&s.name, &e.name))
    });
    match (found.next(), found.next()) {
        (Some(subject), None) => Ok(subject),
        (Some(_), Some(_)) => Err(Failure::new(
            EXIT_INVALID,
            format!("endpoint name `{name}` is ambiguous; use `Service/Endpoint`"),
        )),
        (None, _) => Err(Failure::new(
            EXIT_INVALID,
            format!("unknown subject `{name}`"),
        )),
    }
}

fn run_eval(
    model_path: &Path,
    subject: &str,
    values: &Path,
    kind: KindFilter,
    strict_offered: bool,
    types_lib: Option<&Path>,
) -> Result<(), Failure> {
    let lib = load_library(types_lib)?;
    let model = load_model(model_path, &lib)?;
    let artifacts = lower(model_path, &model, &lib)?;
    let subject = find_subject(&model, subject)?;
    let valuation = Valuation::parse(&read(values)?).map_err(|e| Failure::parse(values, &e))?;

    let selected: Vec<_> = artifacts
        .policies_of(&subject)
        .into_iter()
        .filter(|p| match kind {
            KindFilter::All => true,
            KindFilter::Required => p.kind == ConstraintKind::Required,
            KindFilter::Offered => p.kind == ConstraintKind::Offered,
        })
        .collect();
    if selected.is_empty() {
        println!("{subject}: no policies selected");
        return Ok(());
    }

    let mut unsatisfied = 0;
    for policy in selected {
        let mode = if strict_offered && policy.kind == ConstraintKind::Offered {
            EvalMode::SkipEmptyAlternatives
        } else {
            EvalMode::Standard
        };
        let report = evaluate_with(policy, &valuation, mode)
            .map_err(|e| Failure::new(EXIT_EVAL, format!("policy {}: {e}", policy.id)))?;
        if report.satisfied {
            let by = report.satisfied_by.unwrap_or(0);
            let how = if policy.alternatives[by].is_empty() {
                " (empty alternative)".to_string()
            } else {
                String::new()
            };
            println!(
                "{} [{}]: satisfied by alternative {}{how}",
                policy.id,
                policy.kind,
                by + 1
            );
        } else {
            unsatisfied += 1;
            println!("{} [{}]: unsatisfied", policy.id, policy.kind);
            for f in &report.failures {
                println!(
                    "  alternative {}: {} on {}: {} {} {} is false",
                    f.alternative + 1,
                    f.function.operator,
                    f.function.attribute_id,
                    f.actual,
                    f.function.op,
                    f.function.literal_text()
                );
            }
            if report.failures.is_empty() {
                println!("  no applicable alternative");
            }
        }
    }
    if unsatisfied > 0 {
        Err(Failure::new(
            EXIT_UNSATISFIED,
            format!("{unsatisfied} policy(ies) unsatisfied for {subject}"),
        ))
    } else {
        Ok(())
    }
}
