use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use prop_homology::cache::write_atomic;
use prop_homology::report::{to_json, write_csv};
use prop_homology::{run_jobs, suite_jobs, Cache, Caps, Claim, Job, Params, Report, Suite};

#[derive(Parser)]
#[command(name = "prop-homology", version, about = "Exact verification of free Lie algebra complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Chevalley complex of the multilinear free Lie algebra on z letters.
    Lemma34(JobArgs),
    /// Associative wedge complex and its isomorphism with the Chevalley complex.
    AssocWedge(JobArgs),
    /// Multilinear Koszul complex on n variables (--n).
    Koszul(JobArgs),
    /// Elementary complex E_{eps,epsp} on degrees pmin..=pmax.
    Elementary(JobArgs),
    /// Graded Poisson complex and the scalars of gr d on p_n.
    PoissonGraded(JobArgs),
    /// PBW filtration behaviour of the elementary differential.
    PbwFiltration(JobArgs),
    /// Chain isomorphism A_{z,N} -> C_{z,N,1}.
    Dynkin(JobArgs),
    /// Decomposition of A_{z,N} into the blocks A_sigma.
    SigmaSplit(JobArgs),
    /// A_sigma as a tensor product of elementary complexes.
    #[command(name = "a-e-factorization")]
    AEFactorization(JobArgs),
    /// Kunneth decomposition of C_{z,N,q}.
    KunnethC(JobArgs),
    /// Acyclicity of C_{z,N,q}.
    CAcyclic(JobArgs),
    /// Acyclicity of A_{z,N}.
    AAcyclic(JobArgs),
    /// Predicted dimensions against constructed bases.
    Dims(JobArgs),
    /// Run a battery of jobs.
    Suite(SuiteArgs),
}

#[derive(Args)]
struct JobArgs {
    #[arg(long)]
    z: Option<usize>,
    #[arg(long = "N")]
    big_n: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    eps: Option<u8>,
    #[arg(long)]
    epsp: Option<u8>,
    #[arg(long)]
    pmin: Option<usize>,
    #[arg(long)]
    pmax: Option<usize>,
    /// Permutation of S_{z+N-1} in cycle notation, e.g. "(1 2)".
    #[arg(long)]
    sigma: Option<String>,
    /// Number of variables (koszul).
    #[arg(long)]
    n: Option<usize>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct SuiteArgs {
    #[arg(value_enum)]
    name: SuiteName,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct CommonArgs {
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Cache directory; PROP_HOMOLOGY_CACHE takes precedence.
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteName {
    Smoke,
    Full,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn job_from(claim: Claim, a: &JobArgs) -> Result<Job, String> {
    let params = Params {
        z: a.z,
        big_n: a.big_n,
        q: a.q,
        eps: a.eps,
        epsp: a.epsp,
        pmin: a.pmin,
        pmax: a.pmax,
        sigma: a.sigma.clone(),
        n: a.n,
    };
    Job::new(claim, params, &Caps::default()).map_err(|e| e.to_string())
}

fn emit(reports: &[Report], single: bool, common: &CommonArgs) -> io::Result<()> {
    let bytes = match common.format {
        Format::Json if single => to_json(&reports[0]).into_bytes(),
        Format::Json => to_json(&reports).into_bytes(),
        Format::Csv => {
            let mut buf = Vec::new();
            write_csv(reports, &mut buf).map_err(io::Error::other)?;
            buf
        }
    };
    match &common.out {
        Some(path) => write_atomic(path, &bytes),
        None => io::stdout().write_all(&bytes),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (jobs, common, single) = match &cli.command {
        Command::Suite(s) => {
            let suite = match s.name {
                SuiteName::Smoke => Suite::Smoke,
                SuiteName::Full => Suite::Full,
            };
            (suite_jobs(suite), &s.common, false)
        }
        other => {
            let (claim, args) = match other {
                Command::Lemma34(a) => (Claim::Lemma34, a),
                Command::AssocWedge(a) => (Claim::AssocWedge, a),
                Command::Koszul(a) => (Claim::Koszul, a),
                Command::Elementary(a) => (Claim::Elementary, a),
                Command::PoissonGraded(a) => (Claim::PoissonGraded, a),
                Command::PbwFiltration(a) => (Claim::PbwFiltration, a),
                Command::Dynkin(a) => (Claim::Dynkin, a),
                Command::SigmaSplit(a) => (Claim::SigmaSplit, a),
                Command::AEFactorization(a) => (Claim::AEFactorization, a),
                Command::KunnethC(a) => (Claim::KunnethC, a),
                Command::CAcyclic(a) => (Claim::CAcyclic, a),
                Command::AAcyclic(a) => (Claim::AAcyclic, a),
                Command::Dims(a) => (Claim::Dims, a),
                Command::Suite(_) => unreachable!(),
            };
            match job_from(claim, args) {
                Ok(j) => (vec![j], &args.common, true),
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
        }
    };
    if let Some(n) = common.jobs {
        if n == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let cache = match Cache::resolve(common.cache.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: cache directory: {e}");
            return ExitCode::from(2);
        }
    };
    let reports = run_jobs(&jobs, cache.as_ref());
    for r in &reports {
        eprintln!("{:<10} {} ({} ms)", r.verdict.word().to_uppercase(), r.job().label(), r.elapsed_ms);
        for c in r.failed_checks() {
            eprintln!("           failed {}: {}", c.name, c.detail);
        }
    }
    if let Err(e) = emit(&reports, single, common) {
        eprintln!("error: writing report: {e}");
        return ExitCode::from(2);
    }
    let failed = reports.iter().filter(|r| !r.verdict.is_pass()).count();
    if !single {
        eprintln!("{} of {} jobs passed", reports.len() - failed, reports.len());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
