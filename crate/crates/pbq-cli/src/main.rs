//! `pbq`: quadratize, verify, and minimize pseudo-Boolean polynomials.
//!
//! Exit codes: 0 success/verified, 1 verification failed, 2 parse error,
//! 3 invalid input, 4 enumeration cap exceeded.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pbq_cli::format::{emit_pbf, parse_pbf};
use pbq_cli::star::{parse_edge_list, star_family};
use pbq_core::aggregate::{aggregate_pipeline, PositiveFallback};
use pbq_core::termwise::{quadratize_kzfd, quadratize_termwise, rosenberg_reduce, PositiveMethod};
use pbq_core::verify::{brute_force_min, is_quadratization, is_submodular_second_diff, metrics};
use pbq_core::{flowmin, Error as CoreError, FreshVars, Pbf, QuadMetrics, Quadratization};

#[derive(Parser)]
#[command(name = "pbq", version, about = "Pseudo-Boolean quadratization toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quadratize a polynomial and write the result
    Quadratize {
        /// Reduction rule
        #[arg(long, value_enum)]
        method: MethodArg,
        /// Input .pbf file
        input: PathBuf,
        /// Output .pbf file
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        /// Print size metrics of the result
        #[arg(long)]
        report: bool,
    },
    /// Check that G quadratizes F (exit 0 iff it does)
    Verify {
        /// Source polynomial
        f: PathBuf,
        /// Candidate quadratization
        g: PathBuf,
        /// Number of auxiliary variables: the last K variables of G
        #[arg(long)]
        aux: usize,
    },
    /// Print the exact minimum and a minimizer
    Minimize {
        /// Polynomial to minimize
        g: PathBuf,
        /// brute enumerates; flow needs a submodular quadratic
        #[arg(long, value_enum, default_value_t = EngineArg::Brute)]
        engine: EngineArg,
    },
    /// Print degree, term count, and submodularity
    Stats {
        /// Polynomial to inspect
        f: PathBuf,
    },
    /// Table of every method's metrics on one input
    Compare {
        /// Polynomial to quadratize
        f: PathBuf,
    },
    /// Generate a named instance family
    Gen {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Edge list file (one `i j` pair per line)
        #[arg(long)]
        edges: PathBuf,
        /// Output .pbf file
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Rosenberg,
    Kzfd,
    Chain,
    Ishikawa,
    Rkfj,
    Aggregate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Brute,
    Flow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Star,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let code = match e {
            CoreError::CapExceeded { .. } => 4,
            _ => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::invalid(format!("cannot read {}: {e}", path.display())))
}

fn read_function(path: &Path) -> Result<Pbf, Failure> {
    let text = read_text(path)?;
    let form = parse_pbf(&text).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
    Ok(form.canonicalize())
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text)
        .map_err(|e| Failure::invalid(format!("cannot write {}: {e}", path.display())))
}

fn quadratize_with(f: &Pbf, method: MethodArg) -> Result<Quadratization, Failure> {
    let mut fresh = FreshVars::new(f.n_vars());
    let q = match method {
        MethodArg::Rosenberg => rosenberg_reduce(f, &mut fresh),
        MethodArg::Kzfd => quadratize_kzfd(f, &mut fresh)?,
        MethodArg::Chain => quadratize_termwise(f, PositiveMethod::Chain, &mut fresh),
        MethodArg::Ishikawa => quadratize_termwise(f, PositiveMethod::Ishikawa, &mut fresh),
        MethodArg::Rkfj => quadratize_termwise(f, PositiveMethod::Rkfj, &mut fresh),
        MethodArg::Aggregate => aggregate_pipeline(f, PositiveFallback::Ishikawa, &mut fresh),
    };
    Ok(q)
}

fn report_lines(m: &QuadMetrics) -> String {
    format!(
        "aux {}\nterms {}\npositive-quadratic {}\nmax-abs-coefficient {}\n",
        m.aux_count, m.term_count, m.positive_quadratic_terms, m.max_abs_coefficient
    )
}

fn cmd_quadratize(
    method: MethodArg,
    input: &Path,
    output: &Path,
    report: bool,
) -> Result<u8, Failure> {
    let f = read_function(input)?;
    let q = quadratize_with(&f, method)?;
    write_text(output, &emit_pbf(q.g()))?;
    if report {
        print!("method {}\n{}", q.method(), report_lines(q.metrics()));
    }
    Ok(0)
}

fn cmd_verify(f_path: &Path, g_path: &Path, aux: usize) -> Result<u8, Failure> {
    let f = read_function(f_path)?;
    let g = read_function(g_path)?;
    if g.n_vars() != f.n_vars() + aux {
        return Err(Failure::invalid(format!(
            "G declares {} variables, expected {} originals plus {aux} auxiliaries",
            g.n_vars(),
            f.n_vars()
        )));
    }
    if is_quadratization(&f, &g)? {
        println!("quadratization holds");
        Ok(0)
    } else {
        println!("quadratization fails");
        Ok(1)
    }
}

fn cmd_minimize(g_path: &Path, engine: EngineArg) -> Result<u8, Failure> {
    let g = read_function(g_path)?;
    let result = match engine {
        EngineArg::Brute => brute_force_min(&g)?,
        EngineArg::Flow => flowmin::min_cut_minimize(&g)?,
    };
    let mut line = String::from("argmin");
    for b in result.argmin.bits() {
        let _ = write!(line, " {}", u8::from(*b));
    }
    println!("minimum {}", result.value);
    println!("{line}");
    Ok(0)
}

fn cmd_stats(f_path: &Path) -> Result<u8, Failure> {
    let f = read_function(f_path)?;
    println!("variables {}", f.n_vars());
    println!("degree {}", f.degree());
    println!("terms {}", f.term_count());
    match is_submodular_second_diff(&f) {
        Ok(true) => println!("submodular yes"),
        Ok(false) => println!("submodular no"),
        Err(CoreError::CapExceeded { .. }) => println!("submodular unknown (cap exceeded)"),
        Err(e) => return Err(e.into()),
    }
    Ok(0)
}

fn cmd_compare(f_path: &Path) -> Result<u8, Failure> {
    let f = read_function(f_path)?;
    println!(
        "{:<10} {:>5} {:>6} {:>9} {:>13}",
        "method", "aux", "terms", "pos-quad", "max-abs-coef"
    );
    let all = [
        MethodArg::Kzfd,
        MethodArg::Chain,
        MethodArg::Ishikawa,
        MethodArg::Rkfj,
        MethodArg::Rosenberg,
        MethodArg::Aggregate,
    ];
    for method in all {
        let name = match method {
            MethodArg::Kzfd => "kzfd",
            MethodArg::Chain => "chain",
            MethodArg::Ishikawa => "ishikawa",
            MethodArg::Rkfj => "rkfj",
            MethodArg::Rosenberg => "rosenberg",
            MethodArg::Aggregate => "aggregate",
        };
        match quadratize_with(&f, method) {
            Ok(q) => {
                let m = metrics(&q);
                println!(
                    "{:<10} {:>5} {:>6} {:>9} {:>13}",
                    name,
                    m.aux_count,
                    m.term_count,
                    m.positive_quadratic_terms,
                    m.max_abs_coefficient.to_string()
                );
            }
            Err(_) => {
                println!(
                    "{:<10} {:>5} {:>6} {:>9} {:>13}",
                    name, "n/a", "n/a", "n/a", "n/a"
                );
            }
        }
    }
    Ok(0)
}

fn cmd_gen(family: FamilyArg, edges: &Path, output: &Path) -> Result<u8, Failure> {
    let FamilyArg::Star = family;
    let text = read_text(edges)?;
    let (edge_list, n) =
        parse_edge_list(&text).map_err(|e| Failure::parse(format!("{}: {e}", edges.display())))?;
    let f = star_family(&edge_list, n);
    write_text(output, &emit_pbf(&f))?;
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Quadratize {
            method,
            input,
            output,
            report,
        } => cmd_quadratize(method, &input, &output, report),
        Command::Verify { f, g, aux } => cmd_verify(&f, &g, aux),
        Command::Minimize { g, engine } => cmd_minimize(&g, engine),
        Command::Stats { f } => cmd_stats(&f),
        Command::Compare { f } => cmd_compare(&f),
        Command::Gen {
            family,
            edges,
            output,
        } => cmd_gen(family, &edges, &output),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
