//! The `graphtrace` command line: reproducible pipelines over the library.
//!
//! Every artifact-writing subcommand also emits a manifest (seeds, flags,
//! version, content digest) sufficient to regenerate the artifact
//! bit-exactly. Configuration precedence is flags, then environment
//! (`GRAPHTRACE_BASE_URL`, `GRAPHTRACE_MODEL`, `GRAPHTRACE_API_KEY`), then a
//! JSON config file; the effective values are echoed into the manifest.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::dataset::{self, CorpusMode, CorpusSpec};
use crate::eval::{self, ScoredRow};
use crate::gateway::{self, stub::StubBehavior, stub::StubServer, ModelConfig};
use crate::graph::{parse_instance_text, sample_instance, SizeClass, TaskInstance, TaskKind, ALL_TASKS};
use crate::solve::{heuristic_solve, oracle_solve, solve, solution_objective, Strategy};

/// Failure classes with distinct exit codes (clap itself exits 2 on usage).
#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Io(String),
    Remote(String),
    Config(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 3,
            CliError::Io(_) => 4,
            CliError::Remote(_) => 5,
            CliError::Config(_) => 6,
        }
    }

    fn describe(&self) -> (&'static str, &str) {
        match self {
            CliError::Parse(m) => ("parse error", m),
            CliError::Io(m) => ("io error", m),
            CliError::Remote(m) => ("remote error", m),
            CliError::Config(m) => ("config error", m),
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |e| CliError::Io(format!("{}: {e}", path.display()))
}

#[derive(Parser, Debug)]
#[command(name = "graphtrace", version, about = "Graph task solving, trace corpora, and answer grading")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample task instances into a JSON Lines file.
    GenInstances {
        /// Comma-separated task list, or `all`.
        #[arg(long, default_value = "all")]
        tasks: String,
        /// `small`, `large`, or `both`.
        #[arg(long, default_value = "small")]
        size: String,
        /// Instances per (task, size) cell.
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build a reasoning-trace corpus (plus manifest).
    GenDataset {
        #[arg(long, default_value = "all")]
        tasks: String,
        #[arg(long, default_value = "small")]
        size: String,
        /// Records per (task, size) cell.
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `thought` or `answer-only`.
        #[arg(long, default_value = "thought")]
        mode: CorpusMode,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads; never changes output bytes.
        #[arg(long)]
        workers: Option<usize>,
        /// Resample records whose output exceeds this many characters.
        #[arg(long)]
        max_output_chars: Option<usize>,
    },
    /// Solve one instance and print solution, objective, and exactness.
    Solve {
        #[arg(long)]
        task: TaskKind,
        /// File holding the raw instance text.
        #[arg(long, conflicts_with = "text")]
        instance: Option<PathBuf>,
        /// Instance text inline.
        #[arg(long)]
        text: Option<String>,
        /// Use the brute-force oracle instead of the main solver.
        #[arg(long)]
        oracle: bool,
        /// `greedy` or `random` baseline instead of the exact solver.
        #[arg(long, conflicts_with = "oracle")]
        heuristic: Option<String>,
        /// Seed for the random baseline.
        #[arg(long, default_value_t = 0)]
        heuristic_seed: u64,
    },
    /// Grade a candidate file offline against exact optima.
    ScoreFile {
        /// JSON Lines instance file from gen-instances.
        #[arg(long)]
        instances: PathBuf,
        /// JSON Lines {instance_id, candidates} file.
        #[arg(long)]
        candidates: PathBuf,
        #[arg(long, default_value = "text")]
        format: String,
        /// Report destination (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write per-instance outcomes as JSON Lines.
        #[arg(long)]
        outcomes: Option<PathBuf>,
    },
    /// Query a chat-completions endpoint (or the built-in stub) and grade.
    QueryAndScore {
        #[arg(long)]
        instances: PathBuf,
        /// Serve answers from the built-in stub instead of a remote model.
        #[arg(long)]
        stub: bool,
        #[arg(long)]
        base_url: Option<String>,
        #[arg(long)]
        model: Option<String>,
        /// JSON config file with optional base_url / model.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Candidates per instance (best-of-n).
        #[arg(short, long, default_value_t = 1)]
        n: usize,
        #[arg(long)]
        temperature: Option<f64>,
        #[arg(long, default_value_t = 4)]
        concurrency: usize,
        #[arg(long, default_value_t = 60)]
        timeout: u64,
        #[arg(long, default_value_t = 3)]
        retries: u32,
        #[arg(long)]
        max_tokens: Option<u32>,
        #[arg(long, default_value = "text")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        outcomes: Option<PathBuf>,
    },
    /// Render a report from stored outcomes.
    Report {
        #[arg(long)]
        outcomes: PathBuf,
        #[arg(long, default_value = "text")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// One sampled instance on disk.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub instance_id: String,
    pub kind: TaskKind,
    pub size_class: SizeClass,
    pub seed: u64,
    pub text: String,
}

/// Offline scoring input: candidate texts for one instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CandidateRecord {
    pub instance_id: String,
    pub candidates: Vec<String>,
}

/// Flags-and-digest manifest written next to CLI artifacts.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CliManifest {
    pub command: String,
    pub flags: BTreeMap<String, String>,
    pub generator_version: String,
    pub digest: String,
}

pub fn main() -> i32 {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => 0,
        Err(err) => {
            let (class, message) = err.describe();
            eprintln!("graphtrace: {class}: {message}");
            err.exit_code()
        }
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::GenInstances { tasks, size, count, seed, out } => {
            gen_instances(&tasks, &size, count, seed, &out)
        }
        Command::GenDataset { tasks, size, count, seed, mode, out, workers, max_output_chars } => {
            gen_dataset(&tasks, &size, count, seed, mode, &out, workers, max_output_chars)
        }
        Command::Solve { task, instance, text, oracle, heuristic, heuristic_seed } => {
            solve_command(task, instance, text, oracle, heuristic, heuristic_seed)
        }
        Command::ScoreFile { instances, candidates, format, out, outcomes } => {
            score_file(&instances, &candidates, &format, out.as_deref(), outcomes.as_deref())
        }
        Command::QueryAndScore {
            instances,
            stub,
            base_url,
            model,
            config,
            n,
            temperature,
            concurrency,
            timeout,
            retries,
            max_tokens,
            format,
            out,
            outcomes,
        } => query_and_score(QueryArgs {
            instances,
            stub,
            base_url,
            model,
            config,
            n,
            temperature,
            concurrency,
            timeout,
            retries,
            max_tokens,
            format,
            out,
            outcomes,
        }),
        Command::Report { outcomes, format, out } => report_command(&outcomes, &format, out.as_deref()),
    }
}

fn parse_tasks(spec: &str) -> Result<Vec<TaskKind>, CliError> {
    if spec == "all" {
        return Ok(ALL_TASKS.to_vec());
    }
    spec.split(',')
        .map(|s| s.trim().parse().map_err(CliError::Config))
        .collect()
}

fn parse_sizes(spec: &str) -> Result<Vec<SizeClass>, CliError> {
    match spec {
        "both" => Ok(vec![SizeClass::Small, SizeClass::Large]),
        other => Ok(vec![other.parse().map_err(CliError::Config)?]),
    }
}

fn parse_format(spec: &str) -> Result<bool, CliError> {
    match spec {
        "text" => Ok(false),
        "structured" => Ok(true),
        other => Err(CliError::Config(format!("unknown format `{other}` (text | structured)"))),
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    use std::fmt::Write as _;
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let mut out = String::new();
    for b in hasher.finalize() {
        let _ = write!(out, "{b:02x}");
    }
    out
}

fn write_artifact_with_manifest(
    path: &Path,
    bytes: &[u8],
    command: &str,
    flags: BTreeMap<String, String>,
) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(io_err(path))?;
    let manifest = CliManifest {
        command: command.to_string(),
        flags,
        generator_version: dataset::GENERATOR_VERSION.to_string(),
        digest: sha256_hex(bytes),
    };
    let manifest_path = dataset::manifest_path(path);
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    fs::write(&manifest_path, json).map_err(io_err(&manifest_path))
}

fn gen_instances(tasks: &str, size: &str, count: usize, seed: u64, out: &Path) -> Result<(), CliError> {
    let kinds = parse_tasks(tasks)?;
    let sizes = parse_sizes(size)?;
    let mut lines = String::new();
    for &kind in &kinds {
        for &size_class in &sizes {
            for index in 0..count {
                let inst_seed = dataset::derive_instance_seed(seed, kind, size_class, index, 0);
                let inst = sample_instance(kind, size_class, inst_seed);
                let record = InstanceRecord {
                    instance_id: inst.instance_id.clone(),
                    kind,
                    size_class,
                    seed: inst_seed,
                    text: inst.render_text(),
                };
                lines.push_str(&serde_json::to_string(&record).expect("record serializes"));
                lines.push('\n');
            }
        }
    }
    let flags = BTreeMap::from([
        ("tasks".into(), tasks.to_string()),
        ("size".into(), size.to_string()),
        ("count".into(), count.to_string()),
        ("seed".into(), seed.to_string()),
    ]);
    write_artifact_with_manifest(out, lines.as_bytes(), "gen-instances", flags)?;
    println!("wrote {} instances to {}", kinds.len() * sizes.len() * count, out.display());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn gen_dataset(
    tasks: &str,
    size: &str,
    count: usize,
    seed: u64,
    mode: CorpusMode,
    out: &Path,
    workers: Option<usize>,
    max_output_chars: Option<usize>,
) -> Result<(), CliError> {
    let kinds = parse_tasks(tasks)?;
    let sizes = parse_sizes(size)?;
    let mut spec = CorpusSpec::even(&kinds, &sizes, count, seed, mode);
    spec.max_output_chars = max_output_chars;
    let build = || dataset::build_corpus(&spec);
    let records = match workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| CliError::Config(e.to_string()))?
            .install(build),
        None => build(),
    }
    .map_err(|e| CliError::Config(e.to_string()))?;
    let manifest = dataset::emit_corpus(&spec, &records, out).map_err(|e| CliError::Io(e.to_string()))?;
    println!(
        "wrote {} records to {} (digest {})",
        manifest.total,
        out.display(),
        &manifest.digest[..12]
    );
    Ok(())
}

fn solve_command(
    task: TaskKind,
    instance: Option<PathBuf>,
    text: Option<String>,
    oracle: bool,
    heuristic: Option<String>,
    heuristic_seed: u64,
) -> Result<(), CliError> {
    let raw = match (instance, text) {
        (Some(path), None) => fs::read_to_string(&path).map_err(io_err(&path))?,
        (None, Some(text)) => text,
        _ => return Err(CliError::Config("pass exactly one of --instance or --text".into())),
    };
    let inst = parse_instance_text(raw.trim_end(), task).map_err(|e| CliError::Parse(e.to_string()))?;
    let (solution, objective, exact, solver) = if oracle {
        let sol = oracle_solve(&inst).map_err(|e| CliError::Config(e.to_string()))?;
        let obj = solution_objective(&inst, &sol);
        (sol, obj, true, "oracle".to_string())
    } else if let Some(strategy) = heuristic {
        let strategy = match strategy.as_str() {
            "greedy" => Strategy::Greedy,
            "random" => Strategy::Random(heuristic_seed),
            other => return Err(CliError::Config(format!("unknown heuristic `{other}`"))),
        };
        let sol = heuristic_solve(&inst, strategy).map_err(|e| CliError::Config(e.to_string()))?;
        let obj = solution_objective(&inst, &sol);
        (sol, obj, false, format!("heuristic-{strategy:?}").to_lowercase())
    } else {
        let solved = solve(&inst).map_err(|e| CliError::Config(e.to_string()))?;
        (solved.solution, solved.objective, solved.exact, solved.solver.to_string())
    };
    println!("task: {task}");
    println!("instance: {}", inst.instance_id);
    println!("solution: {}", solution.render());
    println!("objective: {objective}");
    println!("exact: {exact}");
    println!("solver: {solver}");
    Ok(())
}

fn load_instances(path: &Path) -> Result<BTreeMap<String, TaskInstance>, CliError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let record: InstanceRecord = serde_json::from_str(line)
            .map_err(|e| CliError::Parse(format!("{}:{}: {e}", path.display(), i + 1)))?;
        let mut inst = parse_instance_text(&record.text, record.kind)
            .map_err(|e| CliError::Parse(format!("{}:{}: {e}", path.display(), i + 1)))?;
        inst.instance_id = record.instance_id.clone();
        out.insert(record.instance_id, inst);
    }
    Ok(out)
}

fn score_rows(
    instances: &BTreeMap<String, TaskInstance>,
    candidates: &[CandidateRecord],
) -> Result<Vec<ScoredRow>, CliError> {
    let mut rows = Vec::with_capacity(candidates.len());
    for record in candidates {
        let inst = instances
            .get(&record.instance_id)
            .ok_or_else(|| CliError::Config(format!("unknown instance_id `{}`", record.instance_id)))?;
        let solved = solve(inst).map_err(|e| CliError::Config(e.to_string()))?;
        let outcome = if record.candidates.is_empty() {
            eval::score_candidate(inst, solved.objective, "")
        } else {
            eval::best_of_n(inst, solved.objective, &record.candidates)
                .map_err(|e| CliError::Config(e.to_string()))?
        };
        rows.push(ScoredRow {
            instance_id: record.instance_id.clone(),
            kind: inst.kind,
            size_class: inst.size_class,
            outcome,
        });
    }
    Ok(rows)
}

fn emit_report(
    rows: &[ScoredRow],
    structured: bool,
    out: Option<&Path>,
    outcomes: Option<&Path>,
    command: &str,
    flags: BTreeMap<String, String>,
) -> Result<(), CliError> {
    if let Some(path) = outcomes {
        let mut lines = String::new();
        for row in rows {
            lines.push_str(&serde_json::to_string(row).expect("row serializes"));
            lines.push('\n');
        }
        write_artifact_with_manifest(path, lines.as_bytes(), command, flags.clone())?;
    }
    let mut report = eval::aggregate_report(rows);
    report.manifest = Some(
        serde_json::to_string(&CliManifest {
            command: command.to_string(),
            flags,
            generator_version: dataset::GENERATOR_VERSION.to_string(),
            digest: String::new(),
        })
        .expect("manifest serializes"),
    );
    let rendered = if structured {
        serde_json::to_string_pretty(&report).expect("report serializes")
    } else {
        report.render_text()
    };
    match out {
        Some(path) => {
            let flags = BTreeMap::new();
            write_artifact_with_manifest(path, rendered.as_bytes(), command, flags)?;
        }
        None => println!("{rendered}"),
    }
    Ok(())
}

fn score_file(
    instances_path: &Path,
    candidates_path: &Path,
    format: &str,
    out: Option<&Path>,
    outcomes: Option<&Path>,
) -> Result<(), CliError> {
    let structured = parse_format(format)?;
    let instances = load_instances(instances_path)?;
    let text = fs::read_to_string(candidates_path).map_err(io_err(candidates_path))?;
    let mut candidates = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let record: CandidateRecord = serde_json::from_str(line)
            .map_err(|e| CliError::Parse(format!("{}:{}: {e}", candidates_path.display(), i + 1)))?;
        candidates.push(record);
    }
    let rows = score_rows(&instances, &candidates)?;
    let flags = BTreeMap::from([
        ("instances".into(), instances_path.display().to_string()),
        ("candidates".into(), candidates_path.display().to_string()),
    ]);
    emit_report(&rows, structured, out, outcomes, "score-file", flags)
}

struct QueryArgs {
    instances: PathBuf,
    stub: bool,
    base_url: Option<String>,
    model: Option<String>,
    config: Option<PathBuf>,
    n: usize,
    temperature: Option<f64>,
    concurrency: usize,
    timeout: u64,
    retries: u32,
    max_tokens: Option<u32>,
    format: String,
    out: Option<PathBuf>,
    outcomes: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
struct FileConfig {
    base_url: Option<String>,
    model: Option<String>,
}

fn query_and_score(args: QueryArgs) -> Result<(), CliError> {
    let structured = parse_format(&args.format)?;
    let instances = load_instances(&args.instances)?;

    let file_config: FileConfig = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(io_err(path))?;
            serde_json::from_str(&text).map_err(|e| CliError::Config(e.to_string()))?
        }
        None => FileConfig::default(),
    };

    // Flags beat environment beats config file.
    let _stub_server: Option<StubServer>;
    let base_url = if args.stub {
        let server = StubServer::spawn(StubBehavior::default())
            .map_err(|e| CliError::Remote(format!("stub server: {e}")))?;
        let url = server.url();
        _stub_server = Some(server);
        url
    } else {
        _stub_server = None;
        args.base_url
            .or_else(|| std::env::var("GRAPHTRACE_BASE_URL").ok())
            .or(file_config.base_url)
            .ok_or_else(|| CliError::Config("need --base-url (or --stub)".into()))?
    };
    let model = args
        .model
        .or_else(|| std::env::var("GRAPHTRACE_MODEL").ok())
        .or(file_config.model)
        .unwrap_or_else(|| "stub".into());

    let cfg = ModelConfig {
        base_url: base_url.clone(),
        model: model.clone(),
        temperature: args.temperature.unwrap_or(if args.n > 1 { 1.0 } else { 0.1 }),
        n: args.n,
        timeout_secs: args.timeout,
        max_retries: args.retries,
        concurrency: args.concurrency,
        max_tokens: args.max_tokens,
        ..ModelConfig::default()
    };
    cfg.validate().map_err(|e| CliError::Config(e.to_string()))?;

    let jobs: Vec<(String, String)> = instances
        .values()
        .map(|inst| (inst.instance_id.clone(), dataset::record_input(inst)))
        .collect();
    let results = gateway::batch_query(&jobs, &cfg);

    let mut rows = Vec::with_capacity(results.len());
    let mut failures = 0usize;
    for result in &results {
        let inst = &instances[&result.instance_id];
        let solved = solve(inst).map_err(|e| CliError::Config(e.to_string()))?;
        let outcome = if result.candidates.is_empty() {
            failures += 1;
            eval::score_candidate(inst, solved.objective, "")
        } else {
            eval::best_of_n(inst, solved.objective, &result.candidates)
                .map_err(|e| CliError::Config(e.to_string()))?
        };
        rows.push(ScoredRow {
            instance_id: result.instance_id.clone(),
            kind: inst.kind,
            size_class: inst.size_class,
            outcome,
        });
    }
    if failures == results.len() && !results.is_empty() {
        return Err(CliError::Remote(format!(
            "every query failed; first error: {}",
            results[0].error.clone().unwrap_or_default()
        )));
    }
    if failures > 0 {
        log::warn!("{failures}/{} instances failed remotely and score ratio 0", results.len());
    }

    let flags = BTreeMap::from([
        ("instances".into(), args.instances.display().to_string()),
        ("base_url".into(), if args.stub { "<stub>".into() } else { base_url }),
        ("model".into(), model),
        ("n".into(), args.n.to_string()),
        ("temperature".into(), cfg.temperature.to_string()),
        ("concurrency".into(), args.concurrency.to_string()),
    ]);
    emit_report(&rows, structured, args.out.as_deref(), args.outcomes.as_deref(), "query-and-score", flags)
}

fn report_command(outcomes: &Path, format: &str, out: Option<&Path>) -> Result<(), CliError> {
    let structured = parse_format(format)?;
    let text = fs::read_to_string(outcomes).map_err(io_err(outcomes))?;
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let row: ScoredRow = serde_json::from_str(line)
            .map_err(|e| CliError::Parse(format!("{}:{}: {e}", outcomes.display(), i + 1)))?;
        rows.push(row);
    }
    let flags = BTreeMap::from([("outcomes".into(), outcomes.display().to_string())]);
    emit_report(&rows, structured, out, None, "report", flags)
}
