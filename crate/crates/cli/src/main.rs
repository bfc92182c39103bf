use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use casimir_core::builtins::{self, load_algebra, load_chain, load_template};
use casimir_core::contraction::{self, decomposition_report, to_chain_coordinates};
use casimir_core::enveloping::{Enveloping, Limits};
use casimir_core::invariants::{self, charpoly_invariants, count_invariants, racah_number, DEFAULT_MONOMIAL_CAP};
use casimir_core::io;
use casimir_core::mlp::{self, CasimirSource, SolveOptions};
use casimir_core::{check_chain, Error, Poly};

#[derive(Parser)]
#[command(name = "casimir", version, about = "Casimir invariants, contractions and missing label operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Charpoly,
    Pde,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Source {
    Charpoly,
    Pde,
    Files,
}

#[derive(Args)]
struct ChainArgs {
    /// Algebra file or `builtin:<name>`.
    algebra: String,
    /// Chain file or `builtin:<name>`; defaults to the built-in companion.
    #[arg(long)]
    chain: Option<String>,
}

impl ChainArgs {
    fn chain(&self) -> Result<String, Error> {
        match (&self.chain, builtins::companions(&self.algebra)) {
            (Some(c), _) => Ok(c.clone()),
            (None, Some((c, _))) => Ok(c.to_string()),
            (None, None) => Err(Error::InvalidChain("--chain is required for this algebra".into())),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact Jacobi check of the structure constants.
    Validate {
        algebra: String,
        /// Also check that the chain's subalgebra closes.
        #[arg(long)]
        chain: Option<String>,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Polynomial invariants, by characteristic polynomial or degree solver.
    Invariants {
        algebra: String,
        #[arg(long, value_enum, default_value = "charpoly")]
        method: Method,
        /// Only this degree (solver: required unless counting finds all).
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long)]
        template: Option<String>,
        #[arg(long, default_value_t = 6)]
        max_degree: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Label counts for a chain, or pure arithmetic with `--dims`.
    Counts {
        algebra: Option<String>,
        #[arg(long)]
        chain: Option<String>,
        /// Invariants file (original coordinates) used to compute l'.
        #[arg(long)]
        lprime_from: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = invariants::DEFAULT_RETRIES)]
        retries: usize,
        /// `dim_s,N_s,dim_h,N_h,lprime`.
        #[arg(long, value_delimiter = ',')]
        dims: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// The contraction of the algebra along the chain.
    Contract {
        #[command(flatten)]
        target: ChainArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bi-degree decomposition of a Casimir function.
    Decompose {
        #[command(flatten)]
        target: ChainArgs,
        /// Polynomial file in the algebra's original coordinates.
        #[arg(long)]
        casimir: String,
        /// Directory for one polynomial file per component.
        #[arg(long)]
        components: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The full labelling-operator pipeline.
    Mlp {
        #[command(flatten)]
        target: ChainArgs,
        #[arg(long, value_enum, default_value = "charpoly")]
        source: Source,
        #[arg(long)]
        template: Option<String>,
        /// Casimir polynomials for `--source files`.
        #[arg(long)]
        casimirs: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        max_degree: u32,
        /// Certify commutation with the Poisson bracket only.
        #[arg(long)]
        poisson_only: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact commutator of two enveloping-algebra elements.
    Commute {
        a: String,
        b: String,
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Symmetrize a polynomial into the enveloping algebra.
    Symmetrize {
        poly: String,
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 8)]
        max_degree: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a built-in data file.
    Export {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Math(String),
    Input(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e)
        } else {
            Failure::Math(e.to_string())
        }
    }
}

type Outcome = Result<(), Failure>;

fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => io::write_text(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_source(spec: &str) -> Result<String, Error> {
    if spec.starts_with("builtin:") {
        Ok(builtins::data(spec)?.to_string())
    } else {
        io::read_text(Path::new(spec))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Validate { algebra, chain, format } => validate(&algebra, chain.as_deref(), format),
        Command::Invariants { algebra, method, degree, template, max_degree, seed, out } => {
            invariants_cmd(&algebra, method, degree, template.as_deref(), max_degree, seed, out.as_deref())
        }
        Command::Counts { algebra, chain, lprime_from, seed, retries, dims, format } => {
            counts(algebra.as_deref(), chain.as_deref(), lprime_from.as_deref(), seed, retries, dims, format)
        }
        Command::Contract { target, out } => {
            let alg = load_algebra(&target.algebra)?;
            let chain = load_chain(&target.chain()?)?;
            let c = contraction::contract(&alg, &chain)?;
            emit(out.as_deref(), &io::algebra_to_json(&c))?;
            Ok(())
        }
        Command::Decompose { target, casimir, components, out } => decompose(&target, &casimir, components.as_deref(), out.as_deref()),
        Command::Mlp { target, source, template, casimirs, seed, max_degree, poisson_only, out } => {
            let alg = load_algebra(&target.algebra)?;
            let chain = load_chain(&target.chain()?)?;
            let source = match source {
                Source::Charpoly => {
                    let t = match (template, builtins::companions(&target.algebra)) {
                        (Some(t), _) => t,
                        (None, Some((_, t))) => t.to_string(),
                        (None, None) => return Err(Error::Parse("--template is required for --source charpoly".into()).into()),
                    };
                    CasimirSource::Template(load_template(&t)?)
                }
                Source::Pde => CasimirSource::Solver,
                Source::Files => {
                    let path = casimirs.ok_or_else(|| Error::Parse("--casimirs is required for --source files".into()))?;
                    CasimirSource::Polys(io::polys_from_json(&read_source(&path)?)?)
                }
            };
            let options = SolveOptions { seed, max_degree, exact_commutators: !poisson_only, ..SolveOptions::default() };
            let report = mlp::solve(&alg, &chain, &source, &options)?;
            match out {
                Some(p) => {
                    io::write_text(&p, &report.to_json())?;
                    print!("{}", report.summary());
                }
                None => print!("{}", report.to_json()),
            }
            Ok(())
        }
        Command::Commute { a, b, algebra, out } => {
            let alg = load_algebra(&algebra)?;
            let x = io::ue_from_json(&read_source(&a)?)?;
            let y = io::ue_from_json(&read_source(&b)?)?;
            let mut engine = Enveloping::new(&alg);
            let c = engine.commutator(&x, &y)?;
            if c.is_zero() {
                emit(out.as_deref(), "ZERO\n")?;
            } else {
                emit(out.as_deref(), &io::ue_to_json(&c))?;
            }
            Ok(())
        }
        Command::Symmetrize { poly, algebra, max_degree, out } => {
            let alg = load_algebra(&algebra)?;
            let p = io::poly_from_json(&read_source(&poly)?)?;
            let mut engine = Enveloping::with_limits(&alg, Limits { sym_degree_cap: max_degree, ..Limits::default() });
            emit(out.as_deref(), &io::ue_to_json(&engine.symmetrize(&p)?))?;
            Ok(())
        }
        Command::Export { name, out } => {
            emit(out.as_deref(), builtins::data(&name)?)?;
            Ok(())
        }
    }
}

fn validate(algebra: &str, chain: Option<&str>, format: Format) -> Outcome {
    let alg = load_algebra(algebra)?;
    let report = alg.validate_jacobi();
    match format {
        Format::Json => print!("{}", io::to_json(&report)),
        Format::Human => {
            println!("{}: dimension {}, {} nonzero brackets", alg.name(), alg.dim(), alg.constants().len());
            if report.passed() {
                println!("Jacobi identity: exact pass");
            } else {
                println!("Jacobi identity: {} violations", report.violations.len());
                for v in report.violations.iter().take(20) {
                    println!("  ({}, {}, {}) along {}: {}", v.i, v.j, v.k, v.l, v.residual);
                }
            }
        }
    }
    if !report.passed() {
        return Err(Failure::Math("Jacobi identity fails".into()));
    }
    if let Some(c) = chain {
        let rep = check_chain(&alg, &load_chain(c)?)?;
        if format == Format::Human {
            println!("chain: subalgebra of dimension {} closes, complement dimension {}", rep.sub_dim, rep.complement_dim);
        }
    }
    Ok(())
}

fn invariants_cmd(
    algebra: &str,
    method: Method,
    degree: Option<u32>,
    template: Option<&str>,
    max_degree: u32,
    seed: u64,
    out: Option<&Path>,
) -> Outcome {
    let alg = load_algebra(algebra)?;
    let polys: Vec<(String, Poly)> = match method {
        Method::Charpoly => {
            let t = match (template, builtins::companions(algebra)) {
                (Some(t), _) => t.to_string(),
                (None, Some((_, t))) => t.to_string(),
                (None, None) => return Err(Error::Parse("--template is required for --method charpoly".into()).into()),
            };
            let t = load_template(&t)?;
            let degrees = degree.map(|d| vec![d]);
            let found = charpoly_invariants(&t, degrees.as_deref())?;
            for (d, p) in &found {
                if !invariants::is_invariant(&alg, p) {
                    return Err(Failure::Math(format!("charpoly coefficient of degree {d} is not invariant")));
                }
            }
            found.into_iter().map(|(d, p)| (format!("C{d}"), p)).collect()
        }
        Method::Pde => match degree {
            Some(d) => invariants::solve_invariants_degree(&alg, d, DEFAULT_MONOMIAL_CAP)?
                .into_iter()
                .enumerate()
                .map(|(k, p)| (format!("I{d}.{}", k + 1), p))
                .collect(),
            None => {
                let n = count_invariants(&alg, seed, invariants::DEFAULT_RETRIES);
                let found = mlp::solver_casimirs(&alg, n, max_degree, seed)?;
                if found.len() < n {
                    eprintln!("warning: found {} of {n} invariants up to degree {max_degree}", found.len());
                }
                found.into_iter().map(|p| (format!("C{}", p.degree().unwrap_or(0)), p)).collect()
            }
        },
    };
    for (name, p) in &polys {
        eprintln!("{name}: degree {}, {} terms", p.degree().unwrap_or(0), p.term_count());
    }
    emit(out, &io::polys_to_json(&polys))?;
    Ok(())
}

#[derive(Serialize)]
struct CountsOutput {
    format_version: u32,
    #[serde(flatten)]
    counts: contraction::MLPCounts,
    #[serde(skip_serializing_if = "Option::is_none")]
    racah: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_contracted: Option<usize>,
}

fn counts(
    algebra: Option<&str>,
    chain: Option<&str>,
    lprime_from: Option<&str>,
    seed: u64,
    retries: usize,
    dims: Option<Vec<usize>>,
    format: Format,
) -> Outcome {
    let output = match (dims, algebra) {
        (Some(d), _) => {
            if d.len() != 5 {
                return Err(Error::Parse(format!("--dims takes 5 comma-separated values, got {}", d.len())).into());
            }
            let counts = contraction::mlp_counts(d[0], d[1], d[2], d[3], d[4])?;
            CountsOutput { format_version: io::FORMAT_VERSION, counts, racah: None, n_contracted: None }
        }
        (None, Some(a)) => {
            let alg = load_algebra(a)?;
            let chain_name = match (chain, builtins::companions(a)) {
                (Some(c), _) => c.to_string(),
                (None, Some((c, _))) => c.to_string(),
                (None, None) => return Err(Error::InvalidChain("--chain is required".into()).into()),
            };
            let chain = load_chain(&chain_name)?;
            let rep = check_chain(&alg, &chain)?;
            let sub = rep.algebra.restrict(&(0..chain.sub_dim).collect::<Vec<_>>(), "sub")?;
            let n_s = count_invariants(&alg, seed, retries);
            let n_h = count_invariants(&sub, seed, retries);
            let contracted = contraction::contract_in_chain_basis(&rep.algebra, chain.sub_dim);
            let l_prime = match lprime_from {
                Some(f) => {
                    let polys = io::polys_from_json(&read_source(f)?)?;
                    let chain_polys = polys.iter().map(|(_, p)| to_chain_coordinates(p, &chain)).collect::<Result<Vec<_>, _>>()?;
                    contraction::compute_lprime(&chain_polys, chain.sub_dim)
                }
                None => 0,
            };
            let counts = contraction::mlp_counts(alg.dim(), n_s, chain.sub_dim, n_h, l_prime)?;
            CountsOutput {
                format_version: io::FORMAT_VERSION,
                counts,
                racah: racah_number(alg.dim(), n_s).ok(),
                n_contracted: Some(count_invariants(&contracted, seed, retries)),
            }
        }
        (None, None) => return Err(Error::Parse("give an algebra or --dims".into()).into()),
    };
    match format {
        Format::Json => print!("{}", io::to_json(&output)),
        Format::Human => {
            let c = &output.counts;
            println!("dim_s={} N_s={} dim_h={} N_h={} lprime={}", c.dim_s, c.n_s, c.dim_h, c.n_h, c.l_prime);
            println!("n={} m={} total={}", c.needed, c.available, c.total_solutions);
            if let Some(r) = output.racah {
                println!("racah={r}");
            }
            if let Some(n) = output.n_contracted {
                println!("N_contracted={n}");
            }
        }
    }
    Ok(())
}

fn decompose(target: &ChainArgs, casimir: &str, components: Option<&Path>, out: Option<&Path>) -> Outcome {
    let alg = load_algebra(&target.algebra)?;
    let chain = load_chain(&target.chain()?)?;
    let rep = check_chain(&alg, &chain)?;
    let polys = io::polys_from_json(&read_source(casimir)?)?;
    let contracted = contraction::contract_in_chain_basis(&rep.algebra, chain.sub_dim);
    let mut reports = Vec::new();
    for (name, p) in polys {
        if !invariants::is_invariant(&alg, &p) {
            return Err(Failure::Math(format!("{name}: input is not a Casimir function")));
        }
        let q = to_chain_coordinates(&p, &chain)?;
        let d = contraction::decompose_casimir(&rep.algebra, chain.sub_dim, &q)?;
        if let Some(dir) = components {
            std::fs::create_dir_all(dir).map_err(|source| Error::Io { path: dir.display().to_string(), source })?;
            for (b, c) in &d.components {
                let (k, l) = b.paper_style();
                let id = format!("{name}_({k},{l})");
                io::write_text(&dir.join(format!("{name}_{k}_{l}.json")), &io::poly_to_json(c, Some(&id)))?;
            }
        }
        reports.push(decomposition_report(&name, &rep.algebra, &contracted, &d));
    }
    emit(out, &io::to_json(&reports))?;
    Ok(())
}
