//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use indefinite_core::constants;
use indefinite_core::contextuality::{builtin, ContextHypergraph, Value};
use indefinite_core::linalg::UnitaryMatrix;
use indefinite_core::optics::{decompose, network_unitary};
use indefinite_core::qrng::{
    assemble_binary, sample_probabilities, sample_segment, BinaryMode, Distribution, Preset, GENERATOR,
    SEGMENT_LEN,
};

use crate::error::{CliError, CliResult};
use crate::formats::{hypergraph, matrix, netlist};
use crate::report::{analyze, Query};
use crate::stats;
use crate::stream_io::{decode, encode, sidecar_path, StreamFormat, StreamMetadata};
use crate::verify::{run_suite, Fixture};

#[derive(Debug, Parser)]
#[command(name = "indefinite", version, about = "Value-indefinite quantum random number generator simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a symbol stream from a preset or a target distribution.
    Generate(GenerateArgs),
    /// Run a query against a context hypergraph.
    Analyze(AnalyzeArgs),
    /// Compile a unitary into a beam-splitter netlist.
    Decompose(DecomposeArgs),
    /// Check the built-in identity suite.
    Verify(VerifyArgs),
    /// Sanity statistics on a stream file.
    Stats(StatsArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Ternary,
    Morphism,
    Merge,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// One of Ux-a010, Ux-a100, merged-Eq6, fig5.
    #[arg(long, conflicts_with = "dist", required_unless_present = "dist")]
    pub preset: Option<String>,
    /// Comma-separated target probabilities.
    #[arg(long, value_delimiter = ',')]
    pub dist: Option<Vec<f64>>,
    #[arg(long)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Mode::Ternary)]
    pub mode: Mode,
    /// Stream file; the sidecar goes to `<output>.meta.json`. Without it the
    /// stream goes to stdout and the metadata to stderr.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = StreamFormat::Ascii)]
    pub format: StreamFormat,
    /// Worker threads for sampling; the stream does not depend on it.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum QueryKind {
    Propagate,
    Enumerate,
    Gadget,
    Unital,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// One of fig4, fig4-tifs, fig4-tits.
    #[arg(long, conflicts_with = "hypergraph", required_unless_present = "hypergraph")]
    pub builtin: Option<String>,
    #[arg(long)]
    pub hypergraph: Option<PathBuf>,
    /// Seed value, `label=0` or `label=1`; repeatable.
    #[arg(long = "set", value_name = "LABEL=VALUE")]
    pub set: Vec<String>,
    #[arg(long, value_enum)]
    pub query: QueryKind,
    /// Gadget source vertex.
    #[arg(long)]
    pub from: Option<String>,
    /// Gadget target vertex.
    #[arg(long)]
    pub to: Option<String>,
    /// Also write the JSON report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Print the JSON report instead of the text summary.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
    pub matrix: Option<PathBuf>,
    /// One of U-sec4.2, Ux, U-prime, U-prime-Ux, U-2to1, V.
    #[arg(long)]
    pub builtin: Option<String>,
    /// Netlist file; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub json: bool,
    /// Test hook: add this to entry (0,0) of U_x before checking.
    #[arg(long, hide = true)]
    pub perturb_ux: Option<f64>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    pub file: PathBuf,
    /// Metadata sidecar; defaults to `<file>.meta.json` when present.
    #[arg(long)]
    pub meta: Option<PathBuf>,
    /// Stream encoding; defaults to the sidecar's, else ascii.
    #[arg(long, value_enum)]
    pub format: Option<StreamFormat>,
    /// Alphabet size; defaults to the sidecar's, else inferred.
    #[arg(long)]
    pub alphabet: Option<usize>,
    /// Expected distribution for chi-square; defaults to the sidecar's.
    #[arg(long, value_delimiter = ',')]
    pub expect: Option<Vec<f64>>,
    #[arg(long)]
    pub json: bool,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    match command {
        Command::Generate(a) => generate(a, out, err),
        Command::Analyze(a) => analyze_cmd(a, out),
        Command::Decompose(a) => decompose_cmd(a, out, err),
        Command::Verify(a) => verify_cmd(a, out),
        Command::Stats(a) => stats_cmd(a, out),
    }
}

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path.display().to_string(), e))
}

fn write_file(path: &Path, bytes: &[u8]) -> CliResult<()> {
    fs::write(path, bytes).map_err(|e| CliError::io(path.display().to_string(), e))
}

fn emit(out: &mut dyn Write, bytes: &[u8]) -> CliResult<()> {
    out.write_all(bytes).map_err(|e| CliError::io("<stdout>", e))
}

/// `count` outcomes, segment by segment, on `threads` workers.
pub fn sample_parallel(probs: &[f64], count: usize, seed: u64, threads: usize) -> CliResult<Vec<u8>> {
    if threads <= 1 {
        return Ok(sample_probabilities(probs, count, seed));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {threads} threads: {e}")))?;
    let segments = count.div_ceil(SEGMENT_LEN);
    let parts: Vec<Vec<u8>> = pool.install(|| {
        (0..segments)
            .into_par_iter()
            .map(|k| {
                let len = SEGMENT_LEN.min(count - k * SEGMENT_LEN);
                sample_segment(probs, seed, k as u64, len)
            })
            .collect()
    });
    Ok(parts.concat())
}

/// Law of the bits produced by a binary plan: outcome mass per label,
/// renormalized over labelled outcomes.
fn binary_law(probs: &[f64], labels: &[Option<u8>]) -> Vec<f64> {
    let mut law = [0.0; 2];
    for (p, l) in probs.iter().zip(labels) {
        if let Some(b) = l {
            law[*b as usize] += p;
        }
    }
    let total = law[0] + law[1];
    law.iter().map(|x| x / total).collect()
}

/// Samples the stream described by `a`. Returns symbols and metadata.
pub fn generate_stream(a: &GenerateArgs) -> CliResult<(Vec<u8>, StreamMetadata)> {
    let (preset, preset_name) = match (&a.preset, &a.dist) {
        (Some(name), _) => (Preset::named(name).map_err(|e| CliError::Usage(e.to_string()))?, name.clone()),
        (None, Some(p)) => {
            let d = Distribution::new(p.clone()).map_err(|e| CliError::Usage(e.to_string()))?;
            (Preset::from_distribution(&d)?, "custom".to_string())
        }
        (None, None) => return Err(CliError::Usage("one of --preset or --dist is required".into())),
    };
    let (symbols, distribution, alphabet, dust_events, mode) = match a.mode {
        Mode::Ternary => {
            let probs = preset.outcome_probabilities();
            let symbols = sample_parallel(&probs, a.count, a.seed, a.threads)?;
            let n = probs.len();
            (symbols, probs, n, 0, "ternary")
        }
        Mode::Morphism | Mode::Merge => {
            let (mode, name) = if a.mode == Mode::Morphism {
                (BinaryMode::Morphism, "morphism")
            } else {
                (BinaryMode::UnitaryMerge, "merge")
            };
            let (probs, labels) = preset.binary_plan(mode).map_err(|e| CliError::Usage(e.to_string()))?;
            let outcomes = sample_parallel(&probs, a.count, a.seed, a.threads)?;
            let stream = assemble_binary(&preset, mode, a.seed, &outcomes, &labels);
            (stream.symbols, binary_law(&probs, &labels), 2, stream.meta.dust_events, name)
        }
    };
    let meta = StreamMetadata {
        seed: a.seed,
        preset: preset_name,
        count: symbols.len(),
        mode: mode.to_string(),
        format: a.format,
        alphabet,
        generator: GENERATOR.to_string(),
        distribution,
        dust_events,
    };
    Ok((symbols, meta))
}

fn generate(a: GenerateArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    if a.format == StreamFormat::Packed && a.mode == Mode::Ternary {
        return Err(CliError::Usage("packed format requires --mode morphism or merge".into()));
    }
    let (symbols, meta) = generate_stream(&a)?;
    let bytes = encode(&symbols, meta.alphabet, a.format)?;
    match &a.output {
        Some(path) => {
            write_file(path, &bytes)?;
            write_file(&sidecar_path(path), format!("{}\n", meta.to_json()).as_bytes())?;
        }
        None => {
            emit(out, &bytes)?;
            writeln!(err, "{}", meta.to_json()).map_err(|e| CliError::io("<stderr>", e))?;
        }
    }
    Ok(0)
}

fn builtin_hypergraph(name: &str) -> CliResult<ContextHypergraph> {
    match name {
        "fig4" => Ok(builtin::full()),
        "fig4-tifs" => Ok(builtin::tifs()),
        "fig4-tits" => Ok(builtin::tits()),
        other => Err(CliError::Usage(format!("unknown builtin hypergraph `{other}` (fig4, fig4-tifs, fig4-tits)"))),
    }
}

fn parse_seed(h: &ContextHypergraph, text: &str) -> CliResult<(String, Value)> {
    let (label, value) =
        text.split_once('=').ok_or_else(|| CliError::Usage(format!("--set expects LABEL=VALUE, got `{text}`")))?;
    let value = match value {
        "0" => Value::Zero,
        "1" => Value::One,
        other => return Err(CliError::Usage(format!("seed value must be 0 or 1, got `{other}`"))),
    };
    if !h.contains(label) {
        return Err(CliError::Usage(format!("unknown vertex `{label}`")));
    }
    Ok((label.to_string(), value))
}

fn analyze_cmd(a: AnalyzeArgs, out: &mut dyn Write) -> CliResult<i32> {
    let (subject, h) = match (&a.builtin, &a.hypergraph) {
        (Some(name), _) => (name.clone(), builtin_hypergraph(name)?),
        (None, Some(path)) => {
            let name = path.display().to_string();
            (name.clone(), hypergraph::parse(&read_text(path)?, &name)?)
        }
        (None, None) => return Err(CliError::Usage("one of --builtin or --hypergraph is required".into())),
    };
    let seeds = a.set.iter().map(|s| parse_seed(&h, s)).collect::<CliResult<Vec<_>>>()?;
    let query = match a.query {
        QueryKind::Propagate => Query::Propagate,
        QueryKind::Enumerate => Query::Enumerate,
        QueryKind::Unital => Query::Unital,
        QueryKind::Gadget => {
            let (Some(from), Some(to)) = (a.from.clone(), a.to.clone()) else {
                return Err(CliError::Usage("gadget query needs --from and --to".into()));
            };
            for label in [&from, &to] {
                if !h.contains(label) {
                    return Err(CliError::Usage(format!("unknown vertex `{label}`")));
                }
            }
            Query::Gadget { from, to }
        }
    };
    let report = analyze(&subject, &h, &seeds, &query)?;
    if let Some(path) = &a.report {
        write_file(path, format!("{}\n", report.to_json()).as_bytes())?;
    }
    let text = if a.json { format!("{}\n", report.to_json()) } else { report.render() };
    emit(out, text.as_bytes())?;
    Ok(0)
}

fn builtin_unitary(name: &str) -> CliResult<UnitaryMatrix> {
    match name {
        "U-sec4.2" => Ok(constants::u_network()),
        "Ux" => Ok(constants::u_x()),
        "U-prime" => Ok(constants::u_prime()),
        "U-prime-Ux" => Ok(constants::u_prime_u_x()),
        "U-2to1" => Ok(constants::u_prime_two_to_one()),
        "V" => Ok(constants::v_conjugator()),
        other => Err(CliError::Usage(format!(
            "unknown builtin matrix `{other}` (U-sec4.2, Ux, U-prime, U-prime-Ux, U-2to1, V)"
        ))),
    }
}

fn decompose_cmd(a: DecomposeArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    let u = match (&a.matrix, &a.builtin) {
        (Some(path), _) => {
            let name = path.display().to_string();
            UnitaryMatrix::new(matrix::parse(&read_text(path)?, &name)?)?
        }
        (None, Some(name)) => builtin_unitary(name)?,
        (None, None) => return Err(CliError::Usage("one of --matrix or --builtin is required".into())),
    };
    let net = decompose(&u)?;
    let error = network_unitary(&net)?.as_matrix().max_abs_diff(u.as_matrix());
    let text = netlist::serialize(&net);
    match &a.output {
        Some(path) => write_file(path, text.as_bytes())?,
        None => emit(out, text.as_bytes())?,
    }
    writeln!(err, "reconstruction error: {error:e}").map_err(|e| CliError::io("<stderr>", e))?;
    Ok(0)
}

fn verify_cmd(a: VerifyArgs, out: &mut dyn Write) -> CliResult<i32> {
    let fixture = a.perturb_ux.map_or_else(Fixture::standard, Fixture::perturbed);
    let items = run_suite(&fixture);
    let text = if a.json {
        format!("{}\n", serde_json::to_string_pretty(&items).expect("items serialize"))
    } else {
        let mut text = String::new();
        for item in &items {
            let status = if item.passed { "PASS" } else { "FAIL" };
            if item.detail.is_empty() {
                text.push_str(&format!("{status} {}\n", item.name));
            } else {
                text.push_str(&format!("{status} {} [{}]\n", item.name, item.detail));
            }
        }
        let failed = items.iter().filter(|i| !i.passed).count();
        text.push_str(&format!("{} passed, {failed} failed\n", items.len() - failed));
        text
    };
    emit(out, text.as_bytes())?;
    Ok(if items.iter().all(|i| i.passed) { 0 } else { 3 })
}

fn stats_cmd(a: StatsArgs, out: &mut dyn Write) -> CliResult<i32> {
    let meta_path = a.meta.clone().or_else(|| {
        let p = sidecar_path(&a.file);
        p.exists().then_some(p)
    });
    let meta = match &meta_path {
        Some(p) => Some(StreamMetadata::from_json(&read_text(p)?, &p.display().to_string())?),
        None => None,
    };
    let format = a.format.or(meta.as_ref().map(|m| m.format)).unwrap_or(StreamFormat::Ascii);
    let bytes = fs::read(&a.file).map_err(|e| CliError::io(a.file.display().to_string(), e))?;
    let name = a.file.display().to_string();
    let symbols = decode(&bytes, format, meta.as_ref().map(|m| m.count), &name)?;
    let inferred = symbols.iter().max().map_or(2, |&m| (m as usize + 1).max(2));
    let alphabet = a
        .alphabet
        .or(meta.as_ref().map(|m| m.alphabet))
        .unwrap_or(if format == StreamFormat::Packed { 2 } else { inferred });
    if let Some(&bad) = symbols.iter().find(|&&s| s as usize >= alphabet) {
        return Err(CliError::parse(&name, 1, format!("symbol {bad} outside an alphabet of size {alphabet}")));
    }
    let expected = a.expect.clone().or(meta.map(|m| m.distribution));
    if let Some(e) = &expected {
        if e.len() != alphabet {
            return Err(CliError::Usage(format!(
                "expected distribution has {} entries, alphabet has {alphabet}",
                e.len()
            )));
        }
    }
    let report = stats::analyze(&symbols, alphabet, expected.as_deref());
    let text = if a.json { format!("{}\n", report.to_json()) } else { report.render() };
    emit(out, text.as_bytes())?;
    Ok(0)
}

#[cfg(test)]
mod tests;
