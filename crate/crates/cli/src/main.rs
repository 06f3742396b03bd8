//! `skelsum`: decide skeleton barycenter problems from JSON files.
//!
//! Exit codes: 0 certificate (or probe value, or all checks passed),
//! 1 refutation (or no feasible tuple, or a failed check), 2 input error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use log::{debug, info};

use skelsum::instances::{
    lemma_target, lift_instance, prop_a_instance, prop_b_instance, simplex_barycenter, weight_family,
};
use skelsum::io::{Mode, ProblemFile, ReportFile};
use skelsum::reproduce::{run_all, to_csv, Scale};
use skelsum::search::{decompose_with, max_weight_probe_with, Decomposition, DecompositionProblem, SearchMode};
use skelsum::{Error, Polytope};

#[derive(Parser)]
#[command(name = "skelsum", version, about = "Exact weighted barycenters over polytope skeleta")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct SearchFlags {
    /// Worker threads for a parallel scan (0 = all cores); any feasible tuple may win.
    #[arg(long, conflicts_with = "deterministic")]
    jobs: Option<usize>,
    /// Sequential scan returning the lexicographically first feasible tuple (the default).
    #[arg(long)]
    deterministic: bool,
}

impl SearchFlags {
    fn mode(&self) -> SearchMode {
        match self.jobs {
            Some(jobs) if !self.deterministic => SearchMode::Parallel { jobs },
            _ => SearchMode::Deterministic,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Search for a certificate or an exhaustive refutation.
    Decompose {
        file: PathBuf,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        search: SearchFlags,
    },
    /// Maximize one point's weight over all face tuples.
    Probe {
        file: PathBuf,
        /// Point whose weight is maximized; overrides the file's probe_index.
        #[arg(long)]
        index: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        search: SearchFlags,
    },
    /// Export a constructed problem as a problem file.
    Instance {
        name: InstanceName,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the reproducibility suite and emit a CSV summary.
    VerifyPaper {
        #[arg(long, value_enum, default_value = "default")]
        scale: ScaleArg,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum InstanceName {
    /// Δ^d at the vertex-heavy target: n−d+1 points pinned to vertices, the rest free.
    Lemma24,
    /// Δ^d at its barycenter with one point in a (k−1)-face (needs d ≥ nk).
    #[value(name = "propA")]
    PropA,
    /// (Δ^n)^k × Δ^r with n−r+1 points capped at k.
    #[value(name = "propB")]
    PropB,
    /// The product lift of Δ^(nk+r) with caps k+1.
    Lift,
    /// Δ^n, n = sk + t(k+1), at its barycenter with two-level weights on edges.
    WeightFamily,
    /// Probe of the first weight on Δ^(nk) at its barycenter with caps k.
    Bound,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScaleArg {
    Smoke,
    Default,
}

const EXIT_INPUT: u8 = 2;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("SKELSUM_LOG")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("skelsum: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn read_problem_file(path: &Path) -> Result<ProblemFile, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Argument(format!("{}: {e}", path.display())))?;
    ProblemFile::from_json(&text)
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, format!("{text}\n"))
            .map_err(|e| Error::Argument(format!("{}: {e}", path.display()))),
        None => match writeln!(std::io::stdout().lock(), "{text}") {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Error::Internal(e.to_string())),
            _ => Ok(()),
        },
    }
}

fn need(value: Option<usize>, flag: &str) -> Result<usize, Error> {
    value.ok_or_else(|| Error::Argument(format!("missing --{flag}")))
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Decompose { file, out, search } => {
            let spec = read_problem_file(&file)?;
            if spec.mode == Mode::Probe {
                return Err(Error::Argument("problem file is in probe mode; use `skelsum probe`".into()));
            }
            let problem = spec.to_problem()?;
            let mode = search.mode();
            debug!("searching with {mode:?}");
            let start = Instant::now();
            let result = decompose_with(&problem, mode)?;
            let report = ReportFile::from_decomposition(&result, mode, start.elapsed());
            emit(&report.to_json(), out.as_deref())?;
            Ok(match result {
                Decomposition::Certificate(_) => 0,
                Decomposition::Refutation(r) => {
                    info!("refuted over {} tuples", r.tuple_count());
                    1
                }
            })
        }
        Command::Probe { file, index, out, search } => {
            let spec = read_problem_file(&file)?;
            let (polytope, target) = spec.geometry()?;
            let index = index.or(spec.probe_index).unwrap_or(0);
            let mode = search.mode();
            let start = Instant::now();
            let result = max_weight_probe_with(&polytope, &target, &spec.dims, index, mode)?;
            let report = ReportFile::from_probe(index, result.as_ref(), mode, start.elapsed());
            emit(&report.to_json(), out.as_deref())?;
            Ok(if result.is_some() { 0 } else { 1 })
        }
        Command::Instance { name, n, k, d, r, s, t, out } => {
            let file = build_instance(name, n, k, d, r, s, t)?;
            emit(&file.to_json(), out.as_deref())?;
            Ok(0)
        }
        Command::VerifyPaper { scale, out } => {
            let scale = match scale {
                ScaleArg::Smoke => Scale::Smoke,
                ScaleArg::Default => Scale::Full,
            };
            let results = run_all(scale);
            for r in &results {
                eprintln!("{r}");
            }
            emit(to_csv(&results).trim_end(), out.as_deref())?;
            let failed: Vec<String> = results.iter().filter(|r| !r.passed()).map(|r| r.id.to_string()).collect();
            if failed.is_empty() {
                Ok(0)
            } else {
                eprintln!("failing criteria: {}", failed.join(", "));
                Ok(1)
            }
        }
    }
}

fn build_instance(
    name: InstanceName,
    n: Option<usize>,
    k: Option<usize>,
    d: Option<usize>,
    r: Option<usize>,
    s: Option<usize>,
    t: Option<usize>,
) -> Result<ProblemFile, Error> {
    let problem = match name {
        InstanceName::Lemma24 => {
            let (d, n) = (need(d, "d")?, need(n, "n")?);
            let target = lemma_target(d, n)?;
            let mut dims = vec![0; n - d + 1];
            dims.extend(std::iter::repeat_n(d, d - 1));
            DecompositionProblem::with_equal_weights(Polytope::standard_simplex(d), target, dims)?
        }
        InstanceName::PropA => prop_a_instance(need(n, "n")?, need(k, "k")?, need(d, "d")?)?,
        InstanceName::PropB => prop_b_instance(need(n, "n")?, need(k, "k")?, need(r, "r")?)?,
        InstanceName::Lift => {
            let (n, k, r) = (need(n, "n")?, need(k, "k")?, need(r, "r")?);
            let dim = n * k + r;
            let lift = lift_instance(&Polytope::standard_simplex(dim), n, k, r)?;
            let target = simplex_barycenter(dim).concat(&lift.simplex_target);
            DecompositionProblem::with_equal_weights(lift.polytope, target, vec![k + 1; n])?
        }
        InstanceName::WeightFamily => {
            let (s, t, k) = (need(s, "s")?, need(t, "t")?, need(k, "k")?);
            let weights = weight_family(s, t, k)?;
            let dim = weights.len();
            DecompositionProblem::new(
                Polytope::standard_simplex(dim),
                simplex_barycenter(dim),
                vec![1; dim],
                weights.entries().to_vec(),
            )?
        }
        InstanceName::Bound => {
            let (n, k) = (need(n, "n")?, need(k, "k")?);
            if n < 1 || k < 1 {
                return Err(Error::Argument("need n, k >= 1".into()));
            }
            let dim = n * k;
            return Ok(ProblemFile::probe(
                &Polytope::standard_simplex(dim),
                &simplex_barycenter(dim),
                &vec![k; n],
                0,
            ));
        }
    };
    Ok(ProblemFile::from_problem(&problem))
}
