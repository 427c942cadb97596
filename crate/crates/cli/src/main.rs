//! Command-line front end: materialize canonical forms, emit their simplest
//! miniversal deformation patterns, run the greedy and orthogonal
//! constructions, decompose directions, and batch-check the pattern
//! invariants on random structures.
//!
//! Exit codes: 0 ok, 2 parse error, 3 validation error, 4 oracle rejection,
//! 5 property failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use miniversal::canonical::CanonicalStructure;
use miniversal::patterns;
use miniversal::quiver::{
    bracket, codimension, decompose, greedy_simplest_miniversal, orthogonal_miniversal,
    verify_transversal, Representation, Star, StarPattern,
};
use miniversal_cli::{check, docs, render, spec, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Ascii,
    Latex,
}

#[derive(Parser)]
#[command(
    name = "miniversal",
    about = "Canonical forms and simplest miniversal deformation patterns \
             for matrices, matrix pencils, and contragredient pencils over C and R",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Materialize the canonical matrices of a structure file.
    Build {
        spec: PathBuf,
        /// Write the document here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the closed-form simplest miniversal deformation pattern.
    Pattern {
        spec: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Run the transversality oracle and fail (exit 4) unless the
        /// pattern is miniversal.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Construct a pattern by the greedy scan in a named entry order.
    Greedy {
        spec: PathBuf,
        /// Entry order: row-major, col-major, or reverse.
        #[arg(long, default_value = "row-major")]
        order: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a basis of the orthogonal complement of the orbit tangent
    /// space (the orthogonal miniversal deformation directions).
    Orthogonal {
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decompose a direction into pattern coefficients plus a tangent part.
    Decompose {
        spec: PathBuf,
        /// JSON file {"matrices": [...]} matching the canonical shapes.
        direction: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample random structures and assert the pattern invariants on each.
    Check {
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 60)]
        trials: usize,
        /// Deliberately damage each pattern; the run must then fail
        /// (exit 5). Kept as a tripwire test hook.
        #[arg(long, hide = true)]
        corrupt: bool,
    },
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        None => {
            println!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, format!("{text}\n"))
            .map_err(|e| CliError::Parse(format!("cannot write {}: {e}", path.display()))),
    }
}

fn load(spec_path: &Path) -> Result<(CanonicalStructure, Representation), CliError> {
    let structure = spec::parse_spec(&read_file(spec_path)?)?;
    let rep = structure
        .build()
        .map_err(|e| CliError::Validation(e.to_string()))?;
    Ok((structure, rep))
}

fn render_pattern_document(
    format: Format,
    structure: &CanonicalStructure,
    rep: &Representation,
    pattern: &StarPattern,
    doc: &docs::PatternDocument,
) -> String {
    match format {
        Format::Json => docs::pattern_document(doc).to_string(),
        Format::Ascii => render::ascii(structure, rep, pattern),
        Format::Latex => render::latex(structure, rep, pattern),
    }
}

fn cmd_build(spec_path: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let (structure, rep) = load(spec_path)?;
    emit(&docs::build_document(&structure, &rep).to_string(), out)
}

fn cmd_pattern(
    spec_path: &Path,
    format: Format,
    verify: bool,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let (structure, rep) = load(spec_path)?;
    let pattern = patterns::pattern_for(&structure)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    let verification = if verify {
        let report = verify_transversal(&rep, &pattern)
            .map_err(|e| CliError::OracleReject(e.to_string()))?;
        if !report.is_miniversal {
            return Err(CliError::OracleReject(format!(
                "pattern failed the transversality check: {report:?}"
            )));
        }
        Some(report)
    } else {
        None
    };
    let doc = docs::PatternDocument {
        structure: &structure,
        rep: &rep,
        pattern: &pattern,
        codimension: codimension(&rep),
        verification: verification.as_ref(),
        order: None,
    };
    emit(
        &render_pattern_document(format, &structure, &rep, &pattern, &doc),
        out,
    )
}

fn entry_order(rep: &Representation, name: &str) -> Result<Vec<Star>, CliError> {
    match name {
        "row-major" => Ok(rep.entry_coordinates()),
        "col-major" => Ok(rep.entry_coordinates_col_major()),
        "reverse" => {
            let mut order = rep.entry_coordinates();
            order.reverse();
            Ok(order)
        }
        other => Err(CliError::Parse(format!(
            "unknown entry order {other:?} (expected row-major, col-major, or reverse)"
        ))),
    }
}

fn cmd_greedy(
    spec_path: &Path,
    order_name: &str,
    format: Format,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let (structure, rep) = load(spec_path)?;
    let order = entry_order(&rep, order_name)?;
    let pattern = greedy_simplest_miniversal(&rep, &order);
    let report = verify_transversal(&rep, &pattern)
        .map_err(|e| CliError::OracleReject(e.to_string()))?;
    let doc = docs::PatternDocument {
        structure: &structure,
        rep: &rep,
        pattern: &pattern,
        codimension: report.ambient_dim - report.tangent_rank,
        verification: Some(&report),
        order: Some(order_name),
    };
    emit(
        &render_pattern_document(format, &structure, &rep, &pattern, &doc),
        out,
    )
}

fn cmd_orthogonal(spec_path: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let (structure, rep) = load(spec_path)?;
    let basis = orthogonal_miniversal(&rep);
    emit(&docs::orthogonal_document(&structure, &basis).to_string(), out)
}

fn cmd_decompose(
    spec_path: &Path,
    direction_path: &Path,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let (structure, rep) = load(spec_path)?;
    let direction_doc: serde_json::Value = serde_json::from_str(&read_file(direction_path)?)
        .map_err(|e| CliError::Parse(format!("bad direction file: {e}")))?;
    let raw = direction_doc
        .get("matrices")
        .and_then(serde_json::Value::as_array)
        .ok_or_else(|| CliError::Parse("direction file must contain \"matrices\"".into()))?;
    if raw.len() != rep.mats().len() {
        return Err(CliError::Validation(format!(
            "direction has {} matrices, expected {}",
            raw.len(),
            rep.mats().len()
        )));
    }
    let mut mats = Vec::with_capacity(raw.len());
    for (value, canonical) in raw.iter().zip(rep.mats()) {
        let m = docs::matrix_from_value(rep.field(), value)?;
        if (m.rows(), m.cols()) != (canonical.rows(), canonical.cols()) {
            return Err(CliError::Validation(format!(
                "direction matrix is {}x{}, expected {}x{}",
                m.rows(),
                m.cols(),
                canonical.rows(),
                canonical.cols()
            )));
        }
        mats.push(m);
    }
    let direction = Representation::new(
        rep.quiver().clone(),
        rep.dims().to_vec(),
        rep.field(),
        mats,
    );
    let pattern = patterns::pattern_for(&structure)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    let dec = decompose(&rep, &pattern, &direction)
        .map_err(|e| CliError::OracleReject(e.to_string()))?;
    let rebuilt = pattern
        .place(&rep, &dec.coefficients)
        .add(&bracket(&dec.witness, &rep));
    let residual_is_zero = rebuilt == direction;
    emit(
        &docs::decompose_document(&structure, &dec.coefficients, &dec.witness, residual_is_zero)
            .to_string(),
        out,
    )
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Build { spec, out } => cmd_build(&spec, out.as_deref()),
        Command::Pattern {
            spec,
            format,
            verify,
            out,
        } => cmd_pattern(&spec, format, verify, out.as_deref()),
        Command::Greedy {
            spec,
            order,
            format,
            out,
        } => cmd_greedy(&spec, &order, format, out.as_deref()),
        Command::Orthogonal { spec, out } => cmd_orthogonal(&spec, out.as_deref()),
        Command::Decompose {
            spec,
            direction,
            out,
        } => cmd_decompose(&spec, &direction, out.as_deref()),
        Command::Check {
            max_size,
            seed,
            trials,
            corrupt,
        } => {
            let summary = check::run_check(max_size, seed, trials, corrupt)?;
            println!("{summary}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
