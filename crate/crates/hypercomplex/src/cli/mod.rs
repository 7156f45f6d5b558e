//! Command-line front end: algebra resolution, table emission, diagnostics,
//! multiplication with engine choice, the seeded property suite, benchmarks
//! and conjugate-expression evaluation.
//!
//! Exit codes are fixed so scripts can branch on outcomes:
//! 0 success, 1 usage or parse error, 2 math/domain/capacity error,
//! 3 negative diagnostic verdict, 4 property failure.

pub mod suite;

use std::path::Path;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra::{preset, quaternion_tables, AlgebraSignature, MulTables, SignatureSpec};
use crate::conjugate::{diagonal_conjugates, eval_expr, ConjugateExpr};
use crate::diagonal::{build_t, check_diagonal_conditions, mul_diagonal};
use crate::element::{MultiVector, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::rng::{random_multivector, SplitMix64};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_VERDICT: i32 = 3;
pub const EXIT_PROPERTY: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "hxc",
    version,
    about = "Hypercomplex algebras: XOR multiplication tables, Walsh-Hadamard \
             diagonalization and conjugation algebras",
    after_help = "Algebra names: complex, split_complex, dual, bicomplex, cl(a,b), \
                  m(a,b), m(a,b,real|complex), d(n), m(n), quaternion (tables only), \
                  or a path to a JSON spec file \
                  {\"n\":..,\"lambda\":1|-1,\"squares\":[..],\"field\":\"real\"|\"complex\"}. \
                  Vector operations support up to 24 units, dense tables up to 12."
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Naive,
    Diagonal,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the multiplier and index tables of an algebra.
    Tables {
        #[arg(long)]
        algebra: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check the diagonal-basis conditions and print the report.
    Diag {
        #[arg(long)]
        algebra: String,
    },
    /// Multiply two elements; coefficients are comma-separated, `random`
    /// draws them from the seed.
    Mul {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        #[arg(long, value_enum, default_value_t = Engine::Naive)]
        engine: Engine,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample random elements with positive diagonal coordinates.
        #[arg(long)]
        positive: bool,
    },
    /// Run the seeded property suite against an algebra.
    Verify {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Time the naive engine against the diagonal engine.
    Bench {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 10)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate a conjugate expression on an element, or decompose it into
    /// polar factors.
    Conj {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        expr: Option<String>,
        #[arg(long)]
        decompose: bool,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

/// Entry point used by the `hxc` binary; returns the process exit code.
pub fn run_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = err.print();
            return code;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Parse(_) | Error::UnknownAlgebra(_) | Error::InvalidBit(_) => EXIT_USAGE,
        _ => EXIT_DOMAIN,
    }
}

/// Resolves `--algebra`: an existing file path is read as a JSON spec,
/// anything else is a preset name.
pub fn resolve_algebra(source: &str) -> Result<AlgebraSignature> {
    if Path::new(source).is_file() {
        let text = std::fs::read_to_string(source)
            .map_err(|e| Error::Parse(format!("cannot read {source}: {e}")))?;
        let spec: SignatureSpec = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("invalid algebra spec {source}: {e}")))?;
        spec.into_signature()
    } else {
        preset(source)
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Tables { algebra, format } => cmd_tables(&algebra, format),
        Command::Diag { algebra } => cmd_diag(&algebra),
        Command::Mul {
            algebra,
            lhs,
            rhs,
            engine,
            seed,
            positive,
        } => cmd_mul(&algebra, &lhs, &rhs, engine, seed, positive),
        Command::Verify {
            algebra,
            seed,
            cases,
            tol,
        } => cmd_verify(&algebra, seed, cases, tol),
        Command::Bench {
            algebra,
            reps,
            seed,
            format,
        } => cmd_bench(&algebra, reps, seed, format),
        Command::Conj {
            algebra,
            x,
            expr,
            decompose,
            tol,
        } => cmd_conj(&algebra, &x, expr.as_deref(), decompose, tol),
    }
}

fn sign_glyph(s: i8) -> char {
    match s {
        1 => '+',
        -1 => '-',
        _ => '0',
    }
}

fn print_tables(name: &str, tables: &MulTables, format: Format) -> Result<()> {
    match format {
        Format::Text => {
            if tables.dim > 64 {
                return Err(Error::Capacity(format!(
                    "text rendering is limited to n <= 6, table has dimension {}",
                    tables.dim
                )));
            }
            let width = format!("{}", tables.dim - 1).len().max(1);
            println!("s (multiplier), {name}:");
            print!("{:>width$} |", "p\\q");
            for q in 0..tables.dim {
                print!(" {q:>width$}");
            }
            println!();
            for p in 0..tables.dim {
                print!("{p:>width$} |");
                for q in 0..tables.dim {
                    print!(" {:>width$}", sign_glyph(tables.s[p][q]));
                }
                println!();
            }
            println!();
            println!("r (index), {name}:");
            print!("{:>width$} |", "p\\q");
            for q in 0..tables.dim {
                print!(" {q:>width$}");
            }
            println!();
            for p in 0..tables.dim {
                print!("{p:>width$} |");
                for q in 0..tables.dim {
                    print!(" {:>width$}", tables.r[p][q]);
                }
                println!();
            }
        }
        Format::Csv => {
            let header = |out: &mut String| {
                out.push_str("p\\q");
                for q in 0..tables.dim {
                    out.push_str(&format!(",{q}"));
                }
                out.push('\n');
            };
            let mut out = String::new();
            header(&mut out);
            for p in 0..tables.dim {
                out.push_str(&p.to_string());
                for q in 0..tables.dim {
                    out.push_str(&format!(",{}", tables.s[p][q]));
                }
                out.push('\n');
            }
            out.push('\n');
            header(&mut out);
            for p in 0..tables.dim {
                out.push_str(&p.to_string());
                for q in 0..tables.dim {
                    out.push_str(&format!(",{}", tables.r[p][q]));
                }
                out.push('\n');
            }
            print!("{out}");
        }
        Format::Json => {
            let doc = serde_json::json!({
                "algebra": name,
                "dim": tables.dim,
                "s": tables.s,
                "r": tables.r,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
    }
    Ok(())
}

fn cmd_tables(algebra: &str, format: Format) -> Result<i32> {
    if algebra.trim() == "quaternion" {
        let tables = quaternion_tables();
        if format == Format::Text {
            println!(
                "note: no (squares, lambda) signature generates the quaternion table; \
                 this is golden data"
            );
        }
        print_tables("quaternion", &tables, format)?;
        return Ok(EXIT_OK);
    }
    let sig = resolve_algebra(algebra)?;
    let tables = sig.tables()?;
    print_tables(algebra, &tables, format)?;
    Ok(EXIT_OK)
}

fn cmd_diag(algebra: &str) -> Result<i32> {
    let sig = resolve_algebra(algebra)?;
    let report = check_diagonal_conditions(&sig);
    println!(
        "algebra {algebra}: n={}, lambda={}, field={:?}",
        sig.units(),
        sig.lambda(),
        sig.field()
    );
    for (label, ok) in report.conditions.labeled() {
        println!("  [{}] {label}", if ok { "ok" } else { "FAIL" });
    }
    if let Some(w) = &report.witness {
        println!("witness: {w}");
    }
    if let Some(nu) = &report.nu {
        let rendered: Vec<String> = nu.iter().map(|v| v.to_string()).collect();
        println!("nu = ({})", rendered.join(","));
    }
    if report.verdict {
        println!("verdict: diagonal basis exists");
        if sig.units() <= 4 {
            println!("T =");
            for row in build_t(&sig)? {
                let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
                println!("  [{}]", cells.join(", "));
            }
        }
        Ok(EXIT_OK)
    } else {
        println!("verdict: no diagonal basis");
        Ok(EXIT_VERDICT)
    }
}

fn parse_or_random(
    sig: &AlgebraSignature,
    text: &str,
    rng: &mut SplitMix64,
    positive: bool,
) -> Result<MultiVector> {
    if text == "random" {
        if positive {
            check_diagonal_conditions(sig)
                .verdict
                .then_some(())
                .ok_or_else(|| {
                    Error::NotDiagonalizable(
                        "--positive sampling needs a diagonalizable algebra".into(),
                    )
                })?;
        }
        Ok(random_multivector(sig, rng, positive))
    } else {
        MultiVector::parse(sig.clone(), text)
    }
}

fn cmd_mul(
    algebra: &str,
    lhs: &str,
    rhs: &str,
    engine: Engine,
    seed: u64,
    positive: bool,
) -> Result<i32> {
    let sig = resolve_algebra(algebra)?;
    let mut rng = SplitMix64::new(seed);
    let x = parse_or_random(&sig, lhs, &mut rng, positive)?;
    let y = parse_or_random(&sig, rhs, &mut rng, positive)?;
    match engine {
        Engine::Naive => println!("{}", x.mul_naive(&y)?),
        Engine::Diagonal => println!("{}", mul_diagonal(&x, &y)?),
        Engine::Both => {
            let naive = x.mul_naive(&y)?;
            let fast = mul_diagonal(&x, &y)?;
            println!("naive:    {naive}");
            println!("diagonal: {fast}");
            println!("max deviation: {:e}", naive.max_deviation(&fast)?);
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(algebra: &str, seed: u64, cases: usize, tol: f64) -> Result<i32> {
    if cases == 0 {
        return Err(Error::Parse("--cases must be at least 1".into()));
    }
    if tol <= 0.0 {
        return Err(Error::Parse("--tol must be positive".into()));
    }
    let sig = resolve_algebra(algebra)?;
    let results = suite::run_suite(&sig, seed, cases, tol);
    let mut failed = false;
    for r in &results {
        match &r.outcome {
            suite::Outcome::Pass => println!("PASS {}", r.name),
            suite::Outcome::Skip(reason) => println!("SKIP {}: {reason}", r.name),
            suite::Outcome::Fail(detail) => {
                println!("FAIL {}: {detail}", r.name);
                failed = true;
            }
        }
    }
    Ok(if failed { EXIT_PROPERTY } else { EXIT_OK })
}

fn cmd_bench(algebra: &str, reps: usize, seed: u64, format: Format) -> Result<i32> {
    if reps == 0 {
        return Err(Error::Parse("--reps must be at least 1".into()));
    }
    let sig = resolve_algebra(algebra)?;
    if !check_diagonal_conditions(&sig).verdict {
        return Err(Error::NotDiagonalizable(
            "bench compares the two engines, which needs a diagonal basis".into(),
        ));
    }
    let mut rng = SplitMix64::new(seed);
    let pairs: Vec<(MultiVector, MultiVector)> = (0..reps)
        .map(|_| {
            (
                random_multivector(&sig, &mut rng, false),
                random_multivector(&sig, &mut rng, false),
            )
        })
        .collect();

    let start = Instant::now();
    let naive_results: Vec<MultiVector> = pairs
        .iter()
        .map(|(x, y)| x.mul_naive(y).unwrap())
        .collect();
    let naive_ns = start.elapsed().as_nanos() as f64 / reps as f64;

    let start = Instant::now();
    let fast_results: Vec<MultiVector> = pairs
        .iter()
        .map(|(x, y)| mul_diagonal(x, y).unwrap())
        .collect();
    let diagonal_ns = start.elapsed().as_nanos() as f64 / reps as f64;

    let max_dev = naive_results
        .iter()
        .zip(&fast_results)
        .map(|(a, b)| a.max_deviation(b).unwrap())
        .fold(0.0, f64::max);
    let speedup = naive_ns / diagonal_ns;

    match format {
        Format::Text => {
            println!("algebra {algebra}: n={}, dim={}, reps={reps}", sig.units(), sig.dim());
            println!("naive:    {naive_ns:.0} ns/op");
            println!("diagonal: {diagonal_ns:.0} ns/op");
            println!("speedup:  {speedup:.1}x");
            println!("max deviation between engines: {max_dev:e}");
        }
        Format::Csv => {
            println!("algebra,n,dim,reps,naive_ns_per_op,diagonal_ns_per_op,speedup,max_deviation");
            println!(
                "{algebra},{},{},{reps},{naive_ns:.0},{diagonal_ns:.0},{speedup:.3},{max_dev:e}",
                sig.units(),
                sig.dim()
            );
        }
        Format::Json => {
            let doc = serde_json::json!({
                "algebra": algebra,
                "n": sig.units(),
                "dim": sig.dim(),
                "reps": reps,
                "naive_ns_per_op": naive_ns,
                "diagonal_ns_per_op": diagonal_ns,
                "speedup": speedup,
                "max_deviation": max_dev,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
    }
    Ok(EXIT_OK)
}

fn cmd_conj(
    algebra: &str,
    x_text: &str,
    expr: Option<&str>,
    decompose: bool,
    tol: f64,
) -> Result<i32> {
    let sig = resolve_algebra(algebra)?;
    let x = MultiVector::parse(sig.clone(), x_text)?;
    if decompose {
        let factors = crate::conjugate::polar_decompose(&x)?;
        let include_scalar = sig.field() == crate::algebra::Field::Complex;
        let exprs = diagonal_conjugates(sig.units(), include_scalar)?;
        let mut product = MultiVector::one(sig);
        for (expr, factor) in exprs.iter().zip(&factors) {
            println!("x^({expr}) = {factor}");
            product = product.mul_naive(factor)?;
        }
        let dev = product.max_deviation(&x)?;
        println!("product deviation from x: {dev:e}");
        return Ok(if dev <= tol { EXIT_OK } else { EXIT_DOMAIN });
    }
    let Some(expr_text) = expr else {
        return Err(Error::Parse("either --expr or --decompose is required".into()));
    };
    let include_scalar = sig.field() == crate::algebra::Field::Complex;
    let expr = ConjugateExpr::parse(expr_text, sig.units(), include_scalar)?;
    println!("{}", eval_expr(&x, &expr)?);
    Ok(EXIT_OK)
}
