use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::Rng;
use serde_json::json;

use lrmc::completability::{find_finite_certificate, DEFAULT_BUDGET};
use lrmc::formats::{matrix_to_csv, parse_matrix_csv, parse_values_csv};
use lrmc::linalg::DEFAULT_RANK_TOL;
use lrmc::numerics::{complete_matrix, export_plucker_system, jacobian_rank_test, observed_residual};
use lrmc::rng::trial_rng;
use lrmc::slmf::{check_slmf_combinatorial, check_slmf_randomized, SlmfVerdict};
use lrmc::{analyze, random_pattern, AnalysisOptions, Error, ObservationPattern, Slmf, SubspaceBasis};

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_SOFTWARE: u8 = 70;

const SLMF_TRIALS: usize = 4;
const SLMF_SEED: u64 = 0x5eed;
const GEN_TRIALS: usize = 3;

#[derive(Parser)]
#[command(name = "lrmc", version, about = "Completability analysis of low-rank matrix completion patterns")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every completability test on a pattern file.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        json: bool,
    },
    /// Check whether an m x (m-r) grid is an SLMF.
    SlmfCheck {
        file: PathBuf,
        #[arg(long)]
        rank: usize,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Complete a partially observed matrix from a known column space.
    Complete {
        values: PathBuf,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        basis: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Draw random patterns with a fixed number of entries per column.
    Gen {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rank: usize,
        #[arg(long = "per-column")]
        per_column: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long)]
        emit_stats: bool,
        /// Directory for the pattern files; patterns go to stdout otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Export the linear section equations in Plücker coordinates.
    ExportSystem {
        values: PathBuf,
        #[arg(long)]
        rank: usize,
        /// Writes <prefix>.csv and <prefix>.json.
        #[arg(long)]
        out: PathBuf,
        /// Ground-truth basis whose Plücker vector is checked against the system.
        #[arg(long)]
        basis: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Both,
    Combinatorial,
    Randomized,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(e: impl ToString) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }

    fn data(e: impl ToString) -> Self {
        Failure {
            code: EXIT_DATA,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_pattern(path: &Path) -> Result<ObservationPattern, Failure> {
    ObservationPattern::parse(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn cmd_analyze(file: &Path, rank: usize, seed: u64, budget: u64, as_json: bool) -> Outcome {
    let pattern = load_pattern(file)?;
    let report = analyze(&pattern, AnalysisOptions { rank, seed, budget }).map_err(Failure::usage)?;
    if as_json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    Ok(report.exit_code() as u8)
}

fn describe(v: &SlmfVerdict) -> String {
    match &v.witness {
        None if v.is_slmf => "SLMF".to_owned(),
        None => "not an SLMF".to_owned(),
        Some(t) => {
            let t: Vec<usize> = t.iter().map(|j| j + 1).collect();
            format!("not an SLMF, violated at columns T = {t:?}")
        }
    }
}

fn cmd_slmf_check(file: &Path, rank: usize, method: Method) -> Outcome {
    let pattern = load_pattern(file)?;
    let phi = Slmf::from_pattern(&pattern, rank).map_err(Failure::usage)?;
    let combinatorial = (method != Method::Randomized).then(|| check_slmf_combinatorial(&phi));
    let randomized = match method {
        Method::Combinatorial => None,
        _ => Some(check_slmf_randomized(&phi, SLMF_TRIALS, SLMF_SEED).map_err(Failure::usage)?),
    };
    let verdict = match (&combinatorial, &randomized) {
        (Some(c), Some(r)) if c.is_slmf != r.is_slmf => {
            return Err(Failure {
                code: EXIT_SOFTWARE,
                message: format!(
                    "internal fault: combinatorial says {}, randomized says {}",
                    describe(c),
                    describe(r)
                ),
            })
        }
        (Some(c), _) => c,
        (None, Some(r)) => r,
        (None, None) => unreachable!("at least one method runs"),
    };
    println!("{}", describe(verdict));
    Ok(if verdict.is_slmf { EXIT_OK } else { EXIT_NEGATIVE })
}

fn load_basis(path: &Path, m: usize, rank: usize) -> Result<SubspaceBasis, Failure> {
    let matrix = parse_matrix_csv(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    if matrix.shape() != (m, rank) {
        return Err(Failure::data(format!(
            "basis is {}x{}, expected {m}x{rank}",
            matrix.nrows(),
            matrix.ncols()
        )));
    }
    SubspaceBasis::new(matrix).map_err(Failure::data)
}

fn cmd_complete(values: &Path, rank: usize, basis: &Path, out: &Path) -> Outcome {
    let obs = parse_values_csv(&read(values)?).map_err(|e| Failure::usage(format!("{}: {e}", values.display())))?;
    let basis = load_basis(basis, obs.m(), rank)?;
    let x = complete_matrix(&obs, &basis).map_err(|e| match e {
        Error::Argument(_) => Failure::usage(e),
        _ => Failure::data(e),
    })?;
    write(out, &matrix_to_csv(&x))?;
    println!("max observed-entry residual: {:.3e}", observed_residual(&obs, &x));
    Ok(EXIT_OK)
}

struct GenArgs {
    m: usize,
    n: usize,
    rank: usize,
    per_column: usize,
    seed: u64,
    count: usize,
    emit_stats: bool,
    out: Option<PathBuf>,
    budget: u64,
}

fn cmd_gen(a: GenArgs) -> Outcome {
    if a.m == 0 || a.n == 0 || a.count == 0 {
        return Err(Failure::usage("m, n and count must be positive"));
    }
    if a.per_column > a.m {
        return Err(Failure::usage(format!("per-column count {} exceeds m = {}", a.per_column, a.m)));
    }
    if a.rank == 0 || a.rank > a.m.min(a.n) {
        return Err(Failure::usage(format!("rank {} must lie in 1..={}", a.rank, a.m.min(a.n))));
    }
    if let Some(dir) = &a.out {
        fs::create_dir_all(dir).map_err(|e| Failure::usage(format!("{}: {e}", dir.display())))?;
    }
    let width = a.count.to_string().len();
    let (mut certified, mut inconclusive, mut full_rank) = (0usize, 0usize, 0usize);
    for i in 0..a.count {
        let seed_i: u64 = trial_rng(a.seed, i as u64).random();
        let pattern = random_pattern(a.m, a.n, a.per_column, seed_i).map_err(Failure::usage)?;
        match &a.out {
            Some(dir) => write(&dir.join(format!("pattern_{:0width$}.txt", i + 1)), &pattern.to_grid())?,
            None => {
                if i > 0 {
                    println!();
                }
                print!("{}", pattern.to_grid());
            }
        }
        if a.emit_stats {
            match find_finite_certificate(&pattern, a.rank, a.budget).map_err(Failure::usage)? {
                lrmc::SearchOutcome::Found(_) => certified += 1,
                lrmc::SearchOutcome::BudgetExhausted => inconclusive += 1,
                lrmc::SearchOutcome::NotFound => {}
            }
            let rep = jacobian_rank_test(&pattern, a.rank, GEN_TRIALS, seed_i, DEFAULT_RANK_TOL).map_err(Failure::usage)?;
            if rep.passed() {
                full_rank += 1;
            }
        }
    }
    if a.emit_stats {
        let stats = json!({
            "count": a.count,
            "finite_certificate_fraction": certified as f64 / a.count as f64,
            "certificate_inconclusive": inconclusive,
            "full_jacobian_rank_fraction": full_rank as f64 / a.count as f64,
        });
        if a.out.is_some() {
            println!("{stats}");
        } else {
            eprintln!("{stats}");
        }
    }
    Ok(EXIT_OK)
}

fn cmd_export_system(values: &Path, rank: usize, out: &Path, basis: Option<&Path>) -> Outcome {
    let obs = parse_values_csv(&read(values)?).map_err(|e| Failure::usage(format!("{}: {e}", values.display())))?;
    let system = export_plucker_system(&obs, rank).map_err(Failure::usage)?;
    let prefix = out.to_string_lossy();
    write(Path::new(&format!("{prefix}.csv")), &system.to_csv())?;
    let map = serde_json::to_string_pretty(&system.index_map_json()).expect("index map serializes");
    write(Path::new(&format!("{prefix}.json")), &map)?;
    println!(
        "{} equations in {} Plücker coordinates (linear part only)",
        system.rows().len(),
        system.index().len()
    );
    if let Some(path) = basis {
        let b = load_basis(path, obs.m(), rank)?;
        let residual = system.residual(&b.plucker()).map_err(Failure::usage)?;
        println!("null-space residual of the basis: {residual:.3e}");
    }
    Ok(EXIT_OK)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Analyze {
            file,
            rank,
            seed,
            budget,
            json,
        } => cmd_analyze(&file, rank, seed, budget, json),
        Command::SlmfCheck { file, rank, method } => cmd_slmf_check(&file, rank, method),
        Command::Complete {
            values,
            rank,
            basis,
            out,
        } => cmd_complete(&values, rank, &basis, &out),
        Command::Gen {
            m,
            n,
            rank,
            per_column,
            seed,
            count,
            emit_stats,
            out,
            budget,
        } => cmd_gen(GenArgs {
            m,
            n,
            rank,
            per_column,
            seed,
            count,
            emit_stats,
            out,
            budget,
        }),
        Command::ExportSystem {
            values,
            rank,
            out,
            basis,
        } => cmd_export_system(&values, rank, &out, basis.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
