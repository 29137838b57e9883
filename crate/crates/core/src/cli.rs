//! Command-line front end. Results go to stdout (or `-o`), warnings and
//! diagnostics to stderr.
//!
//! Exit codes: 0 when the command completed, 1 when a `verify-*` check
//! failed, 2 on usage or input errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::exposed::{antipodally_exposed_points, exposed_diameters};
use crate::geometry::{random_frame, Vector};
use crate::homothety::{detect_homothety, DEFAULT_TOL};
use crate::io;
use crate::paraboloid::ParaboloidSpec;
use crate::polytope::{minkowski_sum, project_polytope, random_polytope, support, Polytope};
use crate::verify::{self, Report, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "convex-homothety", version, about = "Polytope homothety and projection checks")]
struct Cli {
    /// Write the result here instead of stdout.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Sampling {
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Canonical vertex set of the input points.
    Hull { polytope: PathBuf },
    /// Support value and face in a direction.
    Support {
        polytope: PathBuf,
        /// Comma-separated components, e.g. `1,-0.5`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        direction: Vec<f64>,
    },
    /// Orthogonal projection onto a frame.
    Project {
        polytope: PathBuf,
        #[arg(long, conflicts_with = "random_frame")]
        frame: Option<PathBuf>,
        /// Project onto a seeded random frame of this dimension.
        #[arg(long, value_name = "M")]
        random_frame: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Minkowski { first: PathBuf, second: PathBuf },
    /// All exposed diameters.
    Diameters { polytope: PathBuf },
    /// Endpoints of exposed diameters.
    Antipodal { polytope: PathBuf },
    /// Find `z`, `lambda` with `first = z + lambda * second`.
    Homothety {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Homothety of projections onto random m-planes.
    #[command(name = "verify-theorem1")]
    VerifyTheorem1 {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// As verify-theorem1, over m-planes containing a fixed subspace.
    #[command(name = "verify-corollary1")]
    VerifyCorollary1 {
        first: PathBuf,
        second: PathBuf,
        /// Frame of the subspace every sampled plane must contain.
        #[arg(long)]
        frame: PathBuf,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Every vertex is antipodally exposed.
    #[command(name = "verify-theorem2")]
    VerifyTheorem2 { polytope: PathBuf },
    /// No two exposed diameters are parallel.
    #[command(name = "verify-lemma-parallel")]
    VerifyLemmaParallel { polytope: PathBuf },
    /// Exposed diameters map onto exposed diameters under a homothety.
    #[command(name = "verify-transfer")]
    VerifyTransfer { first: PathBuf, second: PathBuf },
    /// Paraboloid pair with homothetic projections; defaults to I vs diag(2, 1).
    #[command(name = "verify-example1")]
    VerifyExample1 {
        #[arg(long, requires = "second")]
        first: Option<PathBuf>,
        #[arg(long, requires = "first")]
        second: Option<PathBuf>,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Seeded random polytope.
    Random {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: EXIT_OK }
    }

    fn report(r: &Report) -> Self {
        let code = if r.verdict == Verdict::Fail { EXIT_CHECK_FAILED } else { EXIT_OK };
        Outcome { text: io::report_to_string(r), code }
    }
}

fn load(path: &Path, err: &mut dyn Write) -> Result<Polytope> {
    let parsed = io::parse_polytope(path)?;
    if parsed.dropped > 0 {
        let _ = writeln!(
            err,
            "warning: {}: dropped {} non-extreme or duplicate point(s)",
            path.display(),
            parsed.dropped
        );
    }
    Ok(parsed.polytope)
}

fn execute(command: Command, err: &mut dyn Write) -> Result<Outcome> {
    Ok(match command {
        Command::Hull { polytope } => Outcome::ok(io::polytope_to_string(&load(&polytope, err)?)),
        Command::Support { polytope, direction } => {
            let p = load(&polytope, err)?;
            let s = support(&p, &Vector::try_new(direction)?)?;
            Outcome::ok(io::support_to_string(&p, &s))
        }
        Command::Project { polytope, frame, random_frame: m, seed } => {
            let p = load(&polytope, err)?;
            let frame = match (frame, m) {
                (Some(path), None) => io::parse_frame(&path)?,
                (None, Some(m)) => random_frame(p.dim(), m, seed)?,
                _ => return Err(Error::Parse("project needs exactly one of --frame or --random-frame".into())),
            };
            Outcome::ok(io::polytope_to_string(&project_polytope(&p, &frame)?))
        }
        Command::Minkowski { first, second } => {
            let sum = minkowski_sum(&load(&first, err)?, &load(&second, err)?)?;
            Outcome::ok(io::polytope_to_string(&sum))
        }
        Command::Diameters { polytope } => {
            Outcome::ok(io::diameters_to_string(&exposed_diameters(&load(&polytope, err)?)?))
        }
        Command::Antipodal { polytope } => {
            let p = load(&polytope, err)?;
            Outcome::ok(io::points_to_string(p.dim(), &antipodally_exposed_points(&p)?))
        }
        Command::Homothety { first, second, tol } => {
            let h = detect_homothety(&load(&first, err)?, &load(&second, err)?, tol)?;
            Outcome::ok(io::homothety_to_string(h.as_ref()))
        }
        Command::VerifyTheorem1 { first, second, m, sampling } => Outcome::report(&verify::verify_theorem1(
            &load(&first, err)?,
            &load(&second, err)?,
            m,
            sampling.samples,
            sampling.seed,
        )?),
        Command::VerifyCorollary1 { first, second, frame, m, sampling } => {
            Outcome::report(&verify::verify_corollary1(
                &load(&first, err)?,
                &load(&second, err)?,
                &io::parse_frame(&frame)?,
                m,
                sampling.samples,
                sampling.seed,
            )?)
        }
        Command::VerifyTheorem2 { polytope } => Outcome::report(&verify::verify_theorem2(&load(&polytope, err)?)?),
        Command::VerifyLemmaParallel { polytope } => {
            Outcome::report(&verify::verify_no_parallel_diameters(&load(&polytope, err)?)?)
        }
        Command::VerifyTransfer { first, second } => {
            Outcome::report(&verify::verify_diameter_transfer(&load(&first, err)?, &load(&second, err)?)?)
        }
        Command::VerifyExample1 { first, second, sampling } => {
            let (s1, s2) = match (first, second) {
                (Some(a), Some(b)) => (io::parse_paraboloid(&a)?, io::parse_paraboloid(&b)?),
                _ => (ParaboloidSpec::identity(), ParaboloidSpec::diagonal(2.0, 1.0)?),
            };
            Outcome::report(&verify::verify_paraboloid_pair(&s1, &s2, sampling.samples, sampling.seed)?)
        }
        Command::Random { dim, count, seed } => Outcome::ok(io::polytope_to_string(&random_polytope(dim, count, seed)?)),
    })
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run_with(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let outcome = match execute(cli.command, err) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &outcome.text).map_err(|e| format!("{}: {e}", path.display())),
        None => out.write_all(outcome.text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write output: {e}");
        return EXIT_USAGE;
    }
    outcome.code
}

pub fn run(argv: &[String]) -> i32 {
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
