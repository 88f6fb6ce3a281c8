//! The `fmm` command line. Every subcommand is a thin wrapper over the
//! library; [`run`] returns the process exit code:
//! 0 on success, 1 when a verification fails, 2 on usage or input errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{kronecker, orient, rotate, transpose_dual};
use crate::bench::run_bench;
use crate::catalog::{
    kron_bound, load_bounds, prop1_bound, render_scheme, save_scheme, BoundsTable, SchemeSpec,
};
use crate::compose::{compose_with, ComposeOptions};
use crate::error::FmmError;
use crate::matrix::Matrix;
use crate::rational::{parse_rational, Rational};
use crate::scheme::{BilinearScheme, Dims};
use crate::verify::{brent_check, evaluate, naive_mult, random_eval_check, BrentReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "fmm",
    version,
    about = "Build, transform, compose and verify bilinear matrix-multiplication schemes"
)]
#[command(
    after_help = "SCHEME arguments are specifiers: strassen, naive:U,V,W, kron:A,B, \
orient:S:U,V,W, rotate:S, transpose:S, fixture:NAME (from $FMM_FIXTURES), or a scheme file path."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Output {
    /// Write the scheme here instead of standard output.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Materialize a scheme specifier as a scheme file.
    Gen {
        scheme: String,
        #[command(flatten)]
        out: Output,
    },
    /// Print shape, rank and operation counts.
    Info { scheme: String },
    /// Check all Brent equations exactly.
    Verify { scheme: String },
    /// <u,v,w> -> <v,w,u>
    Rotate {
        scheme: String,
        #[command(flatten)]
        out: Output,
    },
    /// <u,v,w> -> <w,v,u>
    Transpose {
        scheme: String,
        #[command(flatten)]
        out: Output,
    },
    /// Reorient a scheme to a permutation of its shape.
    Orient {
        scheme: String,
        u: usize,
        v: usize,
        w: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Kronecker product of two schemes.
    Kron {
        first: String,
        second: String,
        #[command(flatten)]
        out: Output,
    },
    /// Build <u+v,u+v,u+v> from <u,u,u>, {u,u,v} and {v,v,u} schemes.
    Compose {
        #[arg(short = 'u')]
        u: usize,
        #[arg(short = 'v')]
        v: usize,
        #[arg(long)]
        uuu: String,
        #[arg(long)]
        uuv: String,
        #[arg(long)]
        vvu: String,
        #[command(flatten)]
        out: Output,
        /// Skip the Brent check of the result.
        #[arg(long)]
        no_verify: bool,
        /// Accept inputs that have not passed Brent verification.
        #[arg(long)]
        allow_unverified: bool,
    },
    /// Evaluate a scheme on given or random operands and compare with the naive product.
    Eval {
        scheme: String,
        /// JSON array of rows of fraction strings.
        #[arg(long, requires = "right")]
        left: Option<PathBuf>,
        #[arg(long, requires = "left")]
        right: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random entries in [-1, 1] evaluated in double precision.
        #[arg(long, conflicts_with = "left")]
        float: bool,
    },
    /// Compare evaluation against the naive product on random integer matrices.
    CheckRandom {
        scheme: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Best known bound for <u,v,w>, optionally derived by composition or Kronecker product.
    Bound {
        u: usize,
        v: usize,
        w: usize,
        /// Derive via the block composition with parameters U V.
        #[arg(long, num_args = 2, value_names = ["U", "V"])]
        prop1: Option<Vec<usize>>,
        /// Derive as the Kronecker product of two shapes, e.g. --kron 3,3,3 3,3,3.
        #[arg(long, num_args = 2, value_names = ["D1", "D2"])]
        kron: Option<Vec<String>>,
        /// Extra bounds file (JSON records of u, v, w, bound, provenance).
        #[arg(long)]
        bounds: Option<PathBuf>,
    },
    /// Time blocked application of a square scheme against the naive product.
    Bench {
        scheme: String,
        #[arg(long)]
        size: Option<usize>,
        #[arg(long, default_value_t = 1)]
        reps: usize,
        #[arg(long)]
        recursive: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<FmmError> for Failure {
    fn from(e: FmmError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Verification) => EXIT_FAILED,
        Err(Failure::Usage(message)) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_USAGE
        }
    }
}

fn load(spec: &str) -> Result<BilinearScheme, Failure> {
    Ok(SchemeSpec::parse(spec)?.build()?)
}

fn emit(scheme: &BilinearScheme, target: &Output, out: &mut dyn Write) -> CmdResult {
    match &target.output {
        Some(path) => {
            save_scheme(scheme, path)?;
            writeln!(
                out,
                "wrote {} {} rank {} to {}",
                scheme.name(),
                scheme.dims(),
                scheme.rank(),
                path.display()
            )?;
        }
        None => write!(out, "{}", render_scheme(scheme))?,
    }
    Ok(())
}

fn print_brent(report: &BrentReport, out: &mut dyn Write) -> std::io::Result<()> {
    if report.passed {
        writeln!(out, "brent: {} equations, PASS", report.total_equations)
    } else {
        writeln!(
            out,
            "brent: {} equations, FAIL ({} violated)",
            report.total_equations, report.failure_count
        )?;
        for failure in &report.first_failures {
            writeln!(out, "  {failure}")?;
        }
        Ok(())
    }
}

fn dims(u: usize, v: usize, w: usize) -> Result<Dims, Failure> {
    Ok(Dims::new(u, v, w)?)
}

fn parse_triple(text: &str) -> Result<Dims, Failure> {
    let parts: Vec<usize> = text
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Usage(format!("malformed triple `{text}`")))?;
    match parts[..] {
        [u, v, w] => dims(u, v, w),
        _ => Err(Failure::Usage(format!("malformed triple `{text}`"))),
    }
}

fn read_matrix(path: &PathBuf) -> Result<Matrix<Rational>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let rows: Vec<Vec<String>> = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let rows = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|q| parse_rational(q))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(rows)?)
}

fn dispatch(command: Command, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Gen {
            scheme,
            out: target,
        } => emit(&load(&scheme)?, &target, out),
        Command::Info { scheme } => {
            let s = load(&scheme)?;
            let c = s.op_counts();
            writeln!(out, "name: {}", s.name())?;
            writeln!(out, "provenance: {}", s.provenance())?;
            writeln!(out, "dims: {}", s.dims())?;
            writeln!(out, "rank: {}", s.rank())?;
            writeln!(out, "naive rank: {}", s.dims().volume())?;
            writeln!(out, "multiplications: {}", c.multiplications)?;
            writeln!(out, "additions: {}", c.additions)?;
            writeln!(out, "scalar multiplications: {}", c.scalar_multiplications)?;
            Ok(())
        }
        Command::Verify { scheme } => {
            let s = load(&scheme)?;
            let report = brent_check(&s);
            writeln!(out, "{} {} rank {}", s.name(), s.dims(), s.rank())?;
            print_brent(&report, out)?;
            if report.passed {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::Rotate {
            scheme,
            out: target,
        } => emit(&rotate(&load(&scheme)?), &target, out),
        Command::Transpose {
            scheme,
            out: target,
        } => emit(&transpose_dual(&load(&scheme)?), &target, out),
        Command::Orient {
            scheme,
            u,
            v,
            w,
            out: target,
        } => emit(&orient(&load(&scheme)?, dims(u, v, w)?)?, &target, out),
        Command::Kron {
            first,
            second,
            out: target,
        } => emit(&kronecker(&load(&first)?, &load(&second)?), &target, out),
        Command::Compose {
            u,
            v,
            uuu,
            uuv,
            vvu,
            out: target,
            no_verify,
            allow_unverified,
        } => {
            let (s_uuu, s_uuv, s_vvu) = (load(&uuu)?, load(&uuv)?, load(&vvu)?);
            let options = ComposeOptions {
                strict: !allow_unverified,
            };
            let (scheme, report) = compose_with(u, v, &s_uuu, &s_uuv, &s_vvu, options)?;
            emit(&scheme, &target, out)?;
            writeln!(out, "{report}")?;
            if no_verify {
                return Ok(());
            }
            let brent = brent_check(&scheme);
            print_brent(&brent, out)?;
            if brent.passed {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::Eval {
            scheme,
            left,
            right,
            seed,
            float,
        } => {
            let s = load(&scheme)?;
            let d = s.dims();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            if float {
                let a = Matrix::random_uniform(d.u(), d.v(), -1.0, 1.0, &mut rng);
                let b = Matrix::random_uniform(d.v(), d.w(), -1.0, 1.0, &mut rng);
                let c = evaluate(&s, &a, &b)?;
                let diff = c.max_abs_diff(&naive_mult(&a, &b)?);
                write!(out, "{c}")?;
                writeln!(out, "max |scheme - naive|: {diff:.3e}")?;
                return Ok(());
            }
            let (a, b) = match (left, right) {
                (Some(l), Some(r)) => (read_matrix(&l)?, read_matrix(&r)?),
                _ => (
                    Matrix::random_int(d.u(), d.v(), -9, 9, &mut rng),
                    Matrix::random_int(d.v(), d.w(), -9, 9, &mut rng),
                ),
            };
            let c = evaluate(&s, &a, &b)?;
            let equal = c == naive_mult(&a, &b)?;
            write!(out, "{c}")?;
            writeln!(
                out,
                "matches naive product: {}",
                if equal { "yes" } else { "no" }
            )?;
            if equal {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::CheckRandom {
            scheme,
            trials,
            seed,
        } => {
            let s = load(&scheme)?;
            let report = random_eval_check(&s, trials, seed)?;
            writeln!(
                out,
                "{} {} rank {}, seed {seed}",
                s.name(),
                s.dims(),
                s.rank()
            )?;
            if report.all_equal {
                writeln!(out, "{} trials, all equal", report.trials)?;
                return Ok(());
            }
            writeln!(out, "mismatch in trial {}", report.trials)?;
            if let Some(m) = report.mismatch_example {
                writeln!(
                    out,
                    "cell {:?}: scheme {} vs naive {}",
                    m.cell, m.scheme_value, m.oracle_value
                )?;
                write!(out, "left:\n{}right:\n{}", m.left, m.right)?;
            }
            Err(Failure::Verification)
        }
        Command::Bound {
            u,
            v,
            w,
            prop1,
            kron,
            bounds,
        } => {
            let target = dims(u, v, w)?;
            let mut table = BoundsTable::seeded();
            if let Some(path) = bounds {
                table.extend(load_bounds(path)?);
            }
            let derivation = match (prop1, kron) {
                (Some(_), Some(_)) => {
                    return Err(Failure::Usage(
                        "use at most one of --prop1 and --kron".into(),
                    ))
                }
                (Some(p), None) => {
                    let (pu, pv) = (p[0], p[1]);
                    let n = pu + pv;
                    if target.as_array() != [n, n, n] {
                        return Err(Failure::Usage(format!(
                            "--prop1 {pu} {pv} yields <{n},{n},{n}>, not {target}"
                        )));
                    }
                    Some(prop1_bound(pu, pv, &table)?)
                }
                (None, Some(k)) => {
                    let (d1, d2) = (parse_triple(&k[0])?, parse_triple(&k[1])?);
                    let product = [d1.u() * d2.u(), d1.v() * d2.v(), d1.w() * d2.w()];
                    if product != target.as_array() {
                        return Err(Failure::Usage(format!(
                            "--kron {d1} x {d2} does not yield {target}"
                        )));
                    }
                    Some(kron_bound(d1, d2, &table))
                }
                (None, None) => None,
            };
            let best = table.query(target);
            match derivation {
                Some(d) => {
                    writeln!(out, "{target} <= {}", d.value)?;
                    write!(out, "{d}")?;
                    writeln!(out, "best known: {best}")?;
                }
                None => {
                    writeln!(out, "{target} <= {}", best.rank_bound)?;
                    writeln!(out, "provenance: {}", best.provenance)?;
                    for other in table.entries_for(target).iter().skip(1) {
                        writeln!(out, "also: {other}")?;
                    }
                }
            }
            Ok(())
        }
        Command::Bench {
            scheme,
            size,
            reps,
            recursive,
            seed,
        } => {
            let s = load(&scheme)?;
            let size = size.unwrap_or(s.dims().u());
            let report = run_bench(&s, size, reps, recursive, seed)?;
            writeln!(out, "{report}")?;
            Ok(())
        }
    }
}
