//! `edsm` binary: `match` searches an ED text and prints one TSV line per
//! report, `gen` emits seeded random texts, `bench` prints a CSV timing
//! table over doubling text sizes, and `oracle-check` cross-validates the
//! engine against the brute-force enumerator. Exit codes: 0 found/pass,
//! 1 not found/fail, 2 bad arguments or I/O.

use clap::{Args, Parser, Subcommand, ValueEnum};
use edsm::eds::{parse_eds, remap, serialize_eds, Mode};
use edsm::engine::{run_decision, run_reporting, AnchorAlgo, EngineConfig, Task};
use edsm::generate::{plant, random_pattern, random_text, scaling_instance, GenConfig, Injected};
use edsm::oracle::oracle_reports;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "edsm", version, about = "Pattern matching in elastic-degenerate texts")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Search for a pattern; one `end<TAB>kind` line per report
    Match(MatchArgs),
    /// Emit a seeded random ED text on standard output
    Gen(GenArgs),
    /// CSV timing table over a series of text sizes
    Bench(BenchArgs),
    /// Random cross-validation of the engine against the oracle
    OracleCheck(OracleCheckArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Hamming1,
    Edit1,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TaskArg {
    Report,
    Decide,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgoArg {
    Auto,
    Geom,
    Grid,
    Errata,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InjectArg {
    None,
    Sub,
    Del,
    Ins,
}

impl ModeArg {
    fn mode(self) -> Mode {
        match self {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Hamming1 => Mode::Hamming1,
            ModeArg::Edit1 => Mode::Edit1,
        }
    }
}

impl fmt::Display for ModeArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModeArg::Exact => "exact",
            ModeArg::Hamming1 => "hamming1",
            ModeArg::Edit1 => "edit1",
        })
    }
}

impl TaskArg {
    fn task(self) -> Task {
        match self {
            TaskArg::Report => Task::Report,
            TaskArg::Decide => Task::Decide,
        }
    }
}

impl fmt::Display for TaskArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TaskArg::Report => "report",
            TaskArg::Decide => "decide",
        })
    }
}

impl AlgoArg {
    fn algo(self) -> AnchorAlgo {
        match self {
            AlgoArg::Auto => AnchorAlgo::Auto,
            AlgoArg::Geom => AnchorAlgo::Geometric,
            AlgoArg::Grid => AnchorAlgo::Grid,
            AlgoArg::Errata => AnchorAlgo::Errata,
        }
    }
}

impl fmt::Display for AlgoArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgoArg::Auto => "auto",
            AlgoArg::Geom => "geom",
            AlgoArg::Grid => "grid",
            AlgoArg::Errata => "errata",
        })
    }
}

impl InjectArg {
    fn injected(self) -> Injected {
        match self {
            InjectArg::None => Injected::None,
            InjectArg::Sub => Injected::Substitution,
            InjectArg::Del => Injected::Deletion,
            InjectArg::Ins => Injected::Insertion,
        }
    }
}

#[derive(Args)]
struct MatchArgs {
    /// Pattern letters
    #[arg(short, long)]
    pattern: String,
    /// ED text: a file path, or `-` for standard input
    #[arg(short, long)]
    text: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Edit1)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = TaskArg::Report)]
    task: TaskArg,
    #[arg(long, value_enum, default_value_t = AlgoArg::Auto)]
    algo: AlgoArg,
    /// Summary line on standard error
    #[arg(long)]
    verbose: bool,
}

#[derive(Args)]
struct GenArgs {
    /// Upper bound on the number of segments
    #[arg(short = 'n', long, default_value_t = 8)]
    segments: usize,
    /// Strings per segment, at most
    #[arg(long, default_value_t = 3)]
    max_alts: usize,
    /// String length, at most
    #[arg(long, default_value_t = 4)]
    max_len: usize,
    #[arg(long, default_value = "acgt")]
    alphabet: String,
    /// Probability that a drawn string is empty
    #[arg(long, default_value_t = 0.15)]
    eps_prob: f64,
    #[arg(long)]
    seed: u64,
    /// Embed this pattern along a segment-respecting path
    #[arg(long)]
    plant: Option<String>,
    /// Error injected into the planted copy
    #[arg(long, value_enum, default_value_t = InjectArg::None, requires = "plant")]
    inject: InjectArg,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated total text sizes
    #[arg(long, default_value = "32768,65536,131072,262144")]
    sizes: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Edit1)]
    mode: ModeArg,
    /// Single algorithm to time (default: every one valid for the mode)
    #[arg(long, value_enum)]
    algo: Option<AlgoArg>,
    /// Wall time is the minimum over this many runs
    #[arg(long, default_value_t = 3)]
    repeat: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

#[derive(Args)]
struct OracleCheckArgs {
    #[arg(long, default_value_t = 1000)]
    count: usize,
    #[arg(long, default_value_t = 6)]
    max_segments: usize,
    #[arg(long, default_value_t = 3)]
    max_alts: usize,
    #[arg(long, default_value_t = 4)]
    max_len: usize,
    #[arg(long, default_value_t = 10)]
    max_m: usize,
    #[arg(long, default_value = "abcd")]
    alphabet: String,
    #[arg(long, default_value_t = 0.15)]
    eps_prob: f64,
    #[arg(long, default_value_t = 11)]
    seed: u64,
    /// Progress on standard error
    #[arg(long)]
    verbose: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Match(a) => cmd_match(a),
        Cmd::Gen(a) => cmd_gen(a),
        Cmd::Bench(a) => cmd_bench(a),
        Cmd::OracleCheck(a) => cmd_oracle_check(a),
    };
    res.unwrap_or_else(|msg| {
        eprintln!("error: {msg}");
        ExitCode::from(2)
    })
}

fn read_text_arg(source: &str) -> Result<Vec<u8>, String> {
    if source == "-" {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| format!("standard input: {e}"))?;
        Ok(buf)
    } else {
        std::fs::read(source).map_err(|e| format!("{source}: {e}"))
    }
}

/// Every algorithm choice the mode admits, the automatic picker included.
fn algos_for(mode: Mode) -> Vec<AlgoArg> {
    let mut v = vec![AlgoArg::Auto, AlgoArg::Geom, AlgoArg::Grid];
    if mode == Mode::Hamming1 {
        v.push(AlgoArg::Errata);
    }
    v
}

fn cmd_match(a: &MatchArgs) -> Result<ExitCode, String> {
    if a.pattern.is_empty() {
        return Err("pattern must not be empty".into());
    }
    let bytes = read_text_arg(&a.text)?;
    let tb = parse_eds(&bytes).map_err(|e| format!("{}: {e}", a.text))?;
    let (p, t) = remap(a.pattern.as_bytes(), &tb);
    let cfg = EngineConfig {
        mode: a.mode.mode(),
        task: a.task.task(),
        anchor_algo: a.algo.algo(),
    };
    cfg.validate().map_err(|e| e.to_string())?;
    match cfg.task {
        Task::Report => {
            let run = run_reporting(&p, &t, &cfg).map_err(|e| e.to_string())?;
            let mut out = String::new();
            for r in &run.reports {
                out.push_str(&format!("{}\t{}\n", r.end_segment, r.kind));
            }
            print!("{out}");
            if a.verbose {
                eprintln!(
                    "{} report(s) over {} segments (size {})",
                    run.reports.len(),
                    t.n(),
                    t.size()
                );
            }
            Ok(if run.reports.is_empty() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Task::Decide => {
            let yes = run_decision(&p, &t, &cfg).map_err(|e| e.to_string())?;
            println!("{}", if yes { "yes" } else { "no" });
            Ok(if yes { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn cmd_gen(a: &GenArgs) -> Result<ExitCode, String> {
    if a.segments == 0 || a.max_alts == 0 || a.max_len == 0 {
        return Err("segments, max-alts, and max-len must be positive".into());
    }
    if a.alphabet.is_empty() {
        return Err("alphabet must not be empty".into());
    }
    if !(0.0..=1.0).contains(&a.eps_prob) {
        return Err("eps-prob must lie in [0, 1]".into());
    }
    let cfg = GenConfig {
        max_n: a.segments,
        max_strings: a.max_alts,
        max_len: a.max_len,
        alphabet: a.alphabet.clone().into_bytes(),
        eps_prob: a.eps_prob,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut text = random_text(&cfg, &mut rng);
    if let Some(pat) = &a.plant {
        if pat.is_empty() {
            return Err("planted pattern must not be empty".into());
        }
        if !plant(&mut text, pat.as_bytes(), a.inject.injected(), &cfg, &mut rng) {
            return Err("the text cannot host the planted pattern variant".into());
        }
    }
    println!("{}", serialize_eds(&text));
    Ok(ExitCode::SUCCESS)
}

fn cmd_bench(a: &BenchArgs) -> Result<ExitCode, String> {
    let sizes: Vec<usize> = a
        .sizes
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|e| format!("sizes: {e}")))
        .collect::<Result<_, _>>()?;
    if sizes.is_empty() || sizes.contains(&0) {
        return Err("sizes must be a non-empty list of positive integers".into());
    }
    if a.repeat == 0 {
        return Err("repeat must be positive".into());
    }
    let mode = a.mode.mode();
    let algos = match a.algo {
        Some(one) => vec![one],
        None => algos_for(mode),
    };
    for algo in &algos {
        let cfg = EngineConfig {
            mode,
            task: Task::Report,
            anchor_algo: algo.algo(),
        };
        cfg.validate().map_err(|e| e.to_string())?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    println!("n,m,N,mode,algo,wall_ms");
    for &size in &sizes {
        let (pb, tb) = scaling_instance(size, &mut rng);
        let (p, t) = remap(&pb, &tb);
        for algo in &algos {
            let cfg = EngineConfig {
                mode,
                task: Task::Report,
                anchor_algo: algo.algo(),
            };
            let mut best = f64::INFINITY;
            for _ in 0..a.repeat {
                let start = Instant::now();
                let run = run_reporting(&p, &t, &cfg).map_err(|e| e.to_string())?;
                let ms = start.elapsed().as_secs_f64() * 1e3;
                std::hint::black_box(run.reports.len());
                best = best.min(ms);
            }
            println!("{},{},{},{},{},{best:.3}", t.n(), p.m(), t.size(), a.mode, algo);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle_check(a: &OracleCheckArgs) -> Result<ExitCode, String> {
    if a.max_segments == 0 || a.max_alts == 0 || a.max_len == 0 || a.max_m == 0 {
        return Err("bounds must be positive".into());
    }
    if a.alphabet.is_empty() {
        return Err("alphabet must not be empty".into());
    }
    if !(0.0..=1.0).contains(&a.eps_prob) {
        return Err("eps-prob must lie in [0, 1]".into());
    }
    let cfg = GenConfig {
        max_n: a.max_segments,
        max_strings: a.max_alts,
        max_len: a.max_len,
        alphabet: a.alphabet.clone().into_bytes(),
        eps_prob: a.eps_prob,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    for i in 0..a.count {
        let pb = random_pattern(a.max_m, &cfg.alphabet, &mut rng);
        let tb = random_text(&cfg, &mut rng);
        let (p, t) = remap(&pb, &tb);
        for mode_arg in [ModeArg::Exact, ModeArg::Hamming1, ModeArg::Edit1] {
            let mode = mode_arg.mode();
            let want = oracle_reports(&p, &t, mode).map_err(|e| e.to_string())?;
            for algo in algos_for(mode) {
                let cfg_run = EngineConfig {
                    mode,
                    task: Task::Report,
                    anchor_algo: algo.algo(),
                };
                let run = run_reporting(&p, &t, &cfg_run).map_err(|e| e.to_string())?;
                let decided = run_decision(&p, &t, &cfg_run).map_err(|e| e.to_string())?;
                if run.reports != want || decided != !want.is_empty() {
                    println!("fail\tinstance {i}\tmode {mode_arg}\talgo {algo}");
                    println!("pattern\t{}", String::from_utf8_lossy(&pb));
                    println!("text\t{}", serialize_eds(&tb));
                    println!("expected\t{want:?}");
                    println!("got\t{:?} decision {decided}", run.reports);
                    return Ok(ExitCode::from(1));
                }
            }
        }
        if a.verbose && (i + 1) % 100 == 0 {
            eprintln!("{} / {}", i + 1, a.count);
        }
    }
    println!("pass\t{}", a.count);
    Ok(ExitCode::SUCCESS)
}
