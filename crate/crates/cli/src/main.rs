use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use tripar::automorphism::{search_automorphisms_with, InvarianceChecker, SearchMode};
use tripar::rs::{build_poly_parity_matrix, compute_m_matrix, CodeSpec};
use tripar::schema::{BuildReport, FieldId, GroupReport, PermutationList};
use tripar::sim::{write_csv, BerPoint, Simulator, SweepConfig};

#[derive(Parser)]
#[command(
    name = "tripar",
    version,
    about = "Triple-parity Reed-Solomon binary images: construction, automorphisms, decoding"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the field, idempotent, u-vectors, parity matrix and M-matrix as JSON.
    Build {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search the automorphism group and print it as JSON.
    Search {
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..=10))]
        m: u32,
        /// Loop over a_3 and filter instead of deriving it.
        #[arg(long)]
        paper_faithful: bool,
        #[command(flatten)]
        threads: ThreadArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check permutations from a JSON file; exit 1 if any is rejected.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..=10))]
        m: Option<u32>,
        /// Permutation list or `search` output.
        file: PathBuf,
    },
    /// Run a BER sweep described by a JSON config.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the seed in the config.
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        threads: ThreadArgs,
        /// CSV path; a manifest is written next to it. CSV goes to stdout if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CodeArgs {
    /// Extension degree.
    #[arg(long, value_parser = clap::value_parser!(u32).range(3..=10))]
    m: u32,
    /// Number of parity symbols.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(2..=3))]
    parity: u8,
}

#[derive(Args)]
struct ThreadArgs {
    /// Worker threads; results do not depend on it.
    #[arg(long)]
    threads: Option<usize>,
}

/// Failure with its exit code: 1 for verification or consistency, 2 for usage.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn check(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<tripar::Error> for Failure {
    fn from(e: tripar::Error) -> Self {
        Failure::check(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::check(format!("i/o error: {e}"))
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build { code, out } => build(code, out),
        Command::Search {
            m,
            paper_faithful,
            threads,
            out,
        } => with_threads(threads, || search(m, paper_faithful, out)),
        Command::Verify { m, file } => verify(m, &file),
        Command::Simulate {
            config,
            seed,
            threads,
            out,
        } => {
            let n = threads.threads;
            with_threads(threads, || simulate(&config, seed, n, out))
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn with_threads(args: ThreadArgs, f: impl FnOnce() -> CmdResult + Send) -> CmdResult {
    match args.threads {
        None => f(),
        Some(0) => Err(Failure::usage("--threads must be at least 1")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Failure::check(format!("thread pool: {e}")))?
            .install(f),
    }
}

fn emit_json<T: Serialize>(value: &T, out: Option<&Path>) -> CmdResult {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    match out {
        Some(path) => fs::write(path, text + "\n")?,
        None => {
            let mut stdout = io::stdout().lock();
            writeln!(stdout, "{text}")?;
        }
    }
    Ok(())
}

fn build(code: CodeArgs, out: Option<PathBuf>) -> CmdResult {
    let spec = CodeSpec::new(code.m, usize::from(code.parity))?;
    let pm = build_poly_parity_matrix(&spec)?;
    let mm = if spec.parity() == 3 {
        Some(compute_m_matrix(&spec)?)
    } else {
        None
    };
    emit_json(&BuildReport::new(&spec, &pm, mm.as_ref()), out.as_deref())
}

fn search(m: u32, paper_faithful: bool, out: Option<PathBuf>) -> CmdResult {
    let spec = CodeSpec::new(m, 3)?;
    let mm = compute_m_matrix(&spec)?;
    let mode = if paper_faithful {
        SearchMode::PaperFaithful
    } else {
        SearchMode::Derived
    };
    let group = search_automorphisms_with(&mm, &spec, mode);
    let report = GroupReport::new(&spec, &group);
    eprintln!("order={}, classes={}", report.order, report.classes.len());
    for p in group.classes() {
        eprintln!("  {p}");
    }
    emit_json(&report, out.as_deref())
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let key = e.path().to_string();
        Failure::usage(format!(
            "{}: invalid value at `{key}`: {}",
            path.display(),
            e.inner()
        ))
    })
}

fn verify(m: Option<u32>, file: &Path) -> CmdResult {
    let list: PermutationList = read_json(file)?;
    let m = match m {
        Some(m) if m as usize != list.field.m => {
            return Err(Failure::usage(format!(
                "--m {m} disagrees with field.m = {} in {}",
                list.field.m,
                file.display()
            )))
        }
        _ => list.field.m as u32,
    };
    if !(3..=10).contains(&m) {
        return Err(Failure::usage(format!("field.m = {m} outside 3..=10")));
    }
    let spec = CodeSpec::new(m, 3)?;
    if list.field != FieldId::of(&spec) {
        return Err(Failure::usage(format!(
            "field polynomial {} differs from the supported {}",
            list.field.poly,
            FieldId::of(&spec).poly
        )));
    }
    let checker = InvarianceChecker::new(&spec);
    let mut rejected = 0;
    let mut stdout = io::stdout().lock();
    for (k, entry) in list.classes.iter().enumerate() {
        let p = entry
            .to_permutation(spec.m(), spec.n())
            .map_err(|e| Failure::usage(format!("classes[{k}]: {e}")))?;
        let ok = checker.check(&p);
        rejected += usize::from(!ok);
        writeln!(stdout, "{} {p}", if ok { "accept" } else { "reject" })?;
    }
    if rejected > 0 {
        return Err(Failure::check(format!(
            "{rejected} of {} permutations rejected",
            list.classes.len()
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct CodeParams {
    m: usize,
    n: usize,
    k: usize,
    parity: usize,
    field: FieldId,
}

#[derive(Serialize)]
struct PointTime {
    ebno_db: f64,
    decoder: String,
    wall_time_s: f64,
}

#[derive(Serialize)]
struct RunManifest {
    schema: &'static str,
    tool: &'static str,
    version: &'static str,
    git_describe: &'static str,
    command: Vec<String>,
    code: CodeParams,
    seed: u64,
    threads: Option<usize>,
    config: SweepConfig,
    started_unix_s: u64,
    finished_unix_s: u64,
    outputs: Vec<PathBuf>,
    timings: Vec<PointTime>,
}

fn unix_now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

fn validate(cfg: &SweepConfig) -> CmdResult {
    let bad = |key: &str, why: &str| Err(Failure::usage(format!("config key `{key}`: {why}")));
    if !(3..=10).contains(&cfg.m) {
        return bad("m", "must be in 3..=10");
    }
    if cfg.parity != 3 {
        return bad("parity", "only triple-parity codes are simulated");
    }
    if cfg.ebno_db.is_empty() {
        return bad("ebno_db", "must list at least one point");
    }
    if let Some(k) = cfg.ebno_db.iter().position(|x| !x.is_finite()) {
        return bad(&format!("ebno_db[{k}]"), "must be finite");
    }
    if cfg.decoders.is_empty() {
        return bad("decoders", "must name at least one decoder");
    }
    if cfg.stop.max_frames == 0 {
        return bad("stop.max_frames", "must be positive");
    }
    if cfg.batch_frames == 0 {
        return bad("batch_frames", "must be positive");
    }
    Ok(())
}

fn simulate(
    config: &Path,
    seed: Option<u64>,
    threads: Option<usize>,
    out: Option<PathBuf>,
) -> CmdResult {
    let started = unix_now();
    let mut cfg: SweepConfig = read_json(config)?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    validate(&cfg)?;
    let sim = Simulator::new(cfg.clone())?;
    let points = sim.run(|pts: &[BerPoint]| {
        for p in pts {
            eprintln!(
                "Eb/N0 {:5.2} dB  {:8}  frames {:9}  ber {:.3e}  fer {:.3e}",
                p.ebno_db, p.decoder, p.frames, p.ber, p.fer
            );
        }
    })?;
    match &out {
        None => write_csv(&points, io::stdout().lock())?,
        Some(path) => {
            write_csv(&points, fs::File::create(path)?)?;
            let spec = sim.spec();
            let manifest = RunManifest {
                schema: tripar::schema::SCHEMA_VERSION,
                tool: "tripar",
                version: env!("CARGO_PKG_VERSION"),
                git_describe: env!("TRIPAR_GIT_DESCRIBE"),
                command: std::env::args().collect(),
                code: CodeParams {
                    m: spec.m(),
                    n: spec.n(),
                    k: spec.k(),
                    parity: spec.parity(),
                    field: FieldId::of(spec),
                },
                seed: cfg.seed,
                threads,
                config: cfg,
                started_unix_s: started,
                finished_unix_s: unix_now(),
                outputs: vec![path.clone()],
                timings: points
                    .iter()
                    .map(|p| PointTime {
                        ebno_db: p.ebno_db,
                        decoder: p.decoder.to_string(),
                        wall_time_s: p.wall_time_s,
                    })
                    .collect(),
            };
            emit_json(&manifest, Some(&manifest_path(path)))?;
        }
    }
    Ok(())
}

/// `sweep.csv` → `sweep.csv.manifest.json`.
fn manifest_path(csv: &Path) -> PathBuf {
    let mut name = csv.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}
