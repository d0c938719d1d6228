//! Command-line front end: counting, enumeration, generation, verification,
//! codec, and state streaming for maximal-order matrices over GF(2).
//!
//! Every subcommand is deterministic given its arguments (including --seed)
//! and exits 0 exactly when no error or failed check was reported.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use gf2max::group::{
    brute_force_census_with_cap, conjugacy_class_with_cap, refdata, verify_centralizer_with_cap,
    CENSUS_CAP, EXHAUSTIVE_CAP,
};
use gf2max::poly::ENUMERATION_CAP;
use gf2max::{
    centralizer_of_cyclic, class_size, enumerate_gl, factor_mersenne, gl_order, sample_conjugates,
    total_max_order_count, Gf2Mat, Gf2Poly, MatCode, StateStream,
};

type CliError = Box<dyn std::error::Error>;

#[derive(Parser)]
#[command(
    name = "gf2max",
    version,
    about = "Generate, count, and verify n x n matrices of maximal order 2^n - 1 over GF(2)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the counting report: |GL_n|, primitive polynomials, class
    /// size, and the total number of maximal-order matrices.
    Count {
        /// Matrix dimension.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Largest n for which 2^n - 1 is factored.
        #[arg(long = "cap-factoring", default_value_t = gf2max::factor::FACTORING_CAP)]
        cap_factoring: u32,
    },
    /// List all primitive polynomials of degree n.
    Polys {
        /// Polynomial degree.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Largest degree the exhaustive scan will attempt.
        #[arg(long = "cap-enumeration", default_value_t = ENUMERATION_CAP)]
        cap_enumeration: u32,
    },
    /// Generate maximal-order matrices with the given characteristic
    /// polynomial, exhaustively (the full conjugacy class, sorted) or by
    /// seeded sampling.
    Gen {
        /// Primitive polynomial, e.g. "x^3+x+1", "11", or "0xb".
        #[arg(long)]
        poly: String,
        /// Matrix dimension; must match the polynomial degree when given.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        /// Number of matrices in sampled mode.
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// RNG seed for sampled mode.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Largest n for exhaustive generation.
        #[arg(long = "cap-exhaustive", default_value_t = EXHAUSTIVE_CAP)]
        cap_exhaustive: usize,
    },
    /// Run the full verification battery for dimension n and report
    /// PASS/FAIL per check; exits nonzero if any check fails.
    Verify {
        /// Matrix dimension.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Largest n for the full code-space census.
        #[arg(long = "cap-census", default_value_t = CENSUS_CAP)]
        cap_census: usize,
        /// Largest n for full GL enumeration.
        #[arg(long = "cap-exhaustive", default_value_t = EXHAUSTIVE_CAP)]
        cap_exhaustive: usize,
    },
    /// Encode a matrix (grid form like "001/101/010", or a code with --n)
    /// to its integer code.
    Encode {
        /// The matrix.
        matrix: String,
        /// Dimension, required when the input is an integer code.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Decode an integer code to the 0/1 grid form.
    Decode {
        /// The integer code, decimal or 0x-hex.
        code: String,
        /// Matrix dimension.
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Iterate the state sequence s, As, A^2 s, ... and print each state.
    Stream {
        /// The matrix (grid form, or a code with --n).
        #[arg(long)]
        matrix: String,
        /// Dimension, required when --matrix is an integer code.
        #[arg(long)]
        n: Option<usize>,
        /// Initial state as a 0/1 string, component 0 leftmost.
        #[arg(long = "seed-state")]
        seed_state: String,
        /// Number of states to emit.
        #[arg(long)]
        steps: u64,
        #[arg(long, value_enum, default_value_t = StreamFormat::Bits)]
        format: StreamFormat,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StreamFormat {
    /// One state per line as a 0/1 string.
    Bits,
    /// Packed hex, after a header line giving n.
    Hex,
    Json,
}

fn main() -> ExitCode {
    // Restore the default SIGPIPE disposition so output piped into a
    // closing reader (e.g. `head`) ends the process quietly.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Count {
            n,
            format,
            cap_factoring,
        } => cmd_count(n, format, cap_factoring),
        Command::Polys {
            n,
            format,
            cap_enumeration,
        } => cmd_polys(n, format, cap_enumeration),
        Command::Gen {
            poly,
            n,
            mode,
            count,
            seed,
            format,
            cap_exhaustive,
        } => cmd_gen(&poly, n, mode, count, seed, format, cap_exhaustive),
        Command::Verify {
            n,
            format,
            cap_census,
            cap_exhaustive,
        } => cmd_verify(n, format, cap_census, cap_exhaustive),
        Command::Encode { matrix, n, format } => cmd_encode(&matrix, n, format),
        Command::Decode { code, n, format } => cmd_decode(&code, n, format),
        Command::Stream {
            matrix,
            n,
            seed_state,
            steps,
            format,
        } => cmd_stream(&matrix, n, &seed_state, steps, format),
    }
}

fn cmd_count(n: u32, format: Format, cap_factoring: u32) -> Result<ExitCode, CliError> {
    let fact = gf2max::factor::factor_mersenne_with_cap(n, cap_factoring)?;
    let primitive = fact.totient() / n as u64;
    let class = class_size(n as usize);
    let total = total_max_order_count(n as usize)?;
    match format {
        Format::Text => {
            println!("n = {n}");
            println!("{fact}");
            println!("|GL_{n}(GF(2))| = {}", gl_order(n as usize));
            println!("primitive polynomials: phi(2^{n} - 1)/{n} = {primitive}");
            println!("class size: prod(2^{n} - 2^i, i = 1..{}) = {class}", n - 1);
            println!("matrices of order 2^{n} - 1: {class} * {primitive} = {total}");
        }
        Format::Json => print_json(&json!({
            "n": n,
            "mersenne": fact.value().to_string(),
            "factorization": fact.to_string(),
            "gl_order": gl_order(n as usize).to_string(),
            "primitive_polynomials": primitive,
            "class_size": class.to_string(),
            "total": total.to_string(),
        })),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_polys(n: u32, format: Format, cap_enumeration: u32) -> Result<ExitCode, CliError> {
    let polys = gf2max::poly::enumerate_primitive_with_cap(n, cap_enumeration)?;
    match format {
        Format::Text => {
            for f in &polys {
                println!("{f} ({})", f.bits());
            }
        }
        Format::Json => {
            let list: Vec<_> = polys
                .iter()
                .map(|f| json!({ "text": f.to_string(), "code": f.bits().to_string() }))
                .collect();
            print_json(&json!({ "n": n, "count": polys.len(), "polynomials": list }));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_gen(
    poly: &str,
    n: Option<u32>,
    mode: Mode,
    count: usize,
    seed: Option<u64>,
    format: Format,
    cap_exhaustive: usize,
) -> Result<ExitCode, CliError> {
    let f: Gf2Poly = poly.parse()?;
    let degree = f
        .degree()
        .filter(|&d| d >= 1)
        .ok_or("polynomial must have degree >= 1")?;
    if let Some(n) = n {
        if n != degree {
            return Err(format!("--n {n} conflicts with degree {degree} of {f}").into());
        }
    }
    let start = Instant::now();
    let report = match mode {
        Mode::Exhaustive => conjugacy_class_with_cap(f, cap_exhaustive)?,
        Mode::Sampled => sample_conjugates(f, count, seed.unwrap_or(0))?,
    };
    let elapsed = start.elapsed();
    let codes: Vec<String> = report.codes().iter().map(MatCode::to_string).collect();
    match format {
        Format::Text => {
            for code in &codes {
                println!("{code}");
            }
        }
        Format::Json => print_json(&json!({
            "n": degree,
            "polynomial": report.polynomial.to_string(),
            "mode": report.mode.to_string(),
            "seed": report.seed,
            "count": codes.len(),
            "codes": codes,
            "timings": { "total_ms": elapsed.as_secs_f64() * 1e3 },
        })),
    }
    Ok(ExitCode::SUCCESS)
}

/// One verification check: name, outcome, supporting detail.
struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn cmd_verify(
    n: u64,
    format: Format,
    cap_census: usize,
    cap_exhaustive: usize,
) -> Result<ExitCode, CliError> {
    let n = n as usize;
    let census = brute_force_census_with_cap(n, cap_census)
        .map_err(|e| format!("{e}; use sampled checks (gen --mode sampled) for larger n"))?;
    let fact = factor_mersenne(n as u32)?;
    let mut checks: Vec<Check> = Vec::new();

    let total = total_max_order_count(n)?;
    checks.push(Check {
        name: "counting formula matches census",
        pass: total == census.total().into(),
        detail: format!("{total} vs {}", census.total()),
    });

    let class = class_size(n);
    let buckets_ok = census.buckets().iter().all(|(f, bucket)| {
        class == (bucket.len() as u64).into() && f.is_primitive(&fact).unwrap_or(false)
    });
    checks.push(Check {
        name: "census buckets equal-sized with primitive keys",
        pass: buckets_ok,
        detail: format!("{} buckets of {class}", census.buckets().len()),
    });

    let gl_formula = gl_order(n);
    let gl_scan = enumerate_gl(n)?.count();
    checks.push(Check {
        name: "gl_order matches enumeration",
        pass: gl_formula == gl_scan.into(),
        detail: format!("{gl_formula} vs {gl_scan}"),
    });

    for (f, bucket) in census.buckets() {
        let a = Gf2Mat::companion(*f)?;
        let verified = verify_centralizer_with_cap(&a, cap_exhaustive)?;
        let size_ok = centralizer_of_cyclic(&a)?.len() as u64 == fact.value();
        checks.push(Check {
            name: "centralizer formula matches commuting-set scan",
            pass: verified && size_ok,
            detail: format!("{f}, |N(A)| = {}", fact.value()),
        });

        let by_cosets: Vec<u64> = conjugacy_class_with_cap(*f, cap_exhaustive)?
            .matrices
            .iter()
            .map(|m| m.code_u64().expect("codes fit u64 below the census cap"))
            .collect();
        checks.push(Check {
            name: "coset-generated class equals census bucket",
            pass: &by_cosets == bucket,
            detail: format!("{f}, {} matrices", bucket.len()),
        });
    }

    if n == 3 {
        let h: Vec<u64> = centralizer_of_cyclic(&MatCode::from_u64(3, 396)?.decode())?
            .elements()
            .iter()
            .map(|m| m.code_u64().unwrap())
            .collect();
        checks.push(Check {
            name: "reference centralizer of 396 reproduced",
            pass: h == refdata::N3_CENTRALIZER_396,
            detail: format!("{h:?}"),
        });
        for (f, expect) in [
            ("x^3+x+1", &refdata::N3_CLASS_X3_X_1),
            ("x^3+x^2+1", &refdata::N3_CLASS_X3_X2_1),
        ] {
            let bucket = &census.buckets()[&f.parse::<Gf2Poly>()?];
            checks.push(Check {
                name: "reference class list reproduced",
                pass: bucket == expect,
                detail: format!("{f}: {} codes", bucket.len()),
            });
        }
    }

    let all_pass = checks.iter().all(|c| c.pass);
    match format {
        Format::Text => {
            for c in &checks {
                println!(
                    "{}: {} ({})",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                );
            }
            println!(
                "{}",
                if all_pass {
                    "all checks passed"
                } else {
                    "some checks FAILED"
                }
            );
        }
        Format::Json => {
            let list: Vec<_> = checks
                .iter()
                .map(|c| json!({ "name": c.name, "pass": c.pass, "detail": c.detail }))
                .collect();
            print_json(&json!({ "n": n, "checks": list, "all_pass": all_pass }));
        }
    }
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn cmd_encode(matrix: &str, n: Option<usize>, format: Format) -> Result<ExitCode, CliError> {
    let m = parse_matrix(matrix, n)?;
    match format {
        Format::Text => println!("{}", m.code()),
        Format::Json => print_json(&json!({
            "n": m.dim(),
            "code": m.code().to_string(),
            "grid": m.to_grid_string().replace('\n', "/"),
        })),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_decode(code: &str, n: usize, format: Format) -> Result<ExitCode, CliError> {
    let m = MatCode::parse(n, code)?.decode();
    match format {
        Format::Text => println!("{m}"),
        Format::Json => print_json(&json!({
            "n": n,
            "code": m.code().to_string(),
            "grid": m.to_grid_string().replace('\n', "/"),
        })),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_stream(
    matrix: &str,
    n: Option<usize>,
    seed_state: &str,
    steps: u64,
    format: StreamFormat,
) -> Result<ExitCode, CliError> {
    let m = parse_matrix(matrix, n)?;
    let dim = m.dim();
    let seed = gf2max::parse_state(dim, seed_state)?;
    let stream = StateStream::new(m, seed)?;
    let states: Vec<u64> = stream.take(steps as usize).collect();
    match format {
        StreamFormat::Bits => {
            for s in &states {
                println!("{}", gf2max::state_to_bits(dim, *s));
            }
        }
        StreamFormat::Hex => {
            println!("n={dim}");
            let width = dim.div_ceil(4);
            for s in &states {
                println!("{s:0width$x}");
            }
        }
        StreamFormat::Json => print_json(&json!({
            "n": dim,
            "seed": seed_state,
            "steps": steps,
            "states": states.iter().map(|&s| gf2max::state_to_bits(dim, s)).collect::<Vec<_>>(),
        })),
    }
    Ok(ExitCode::SUCCESS)
}

/// Accept a matrix as either the 0/1 grid form (contains row separators) or
/// an integer code, which needs an explicit dimension.
fn parse_matrix(text: &str, n: Option<usize>) -> Result<Gf2Mat, CliError> {
    if text.contains(['/', '\n', ',']) {
        let m = Gf2Mat::parse_grid(text)?;
        if let Some(n) = n {
            if n != m.dim() {
                return Err(format!("--n {n} conflicts with {} grid rows", m.dim()).into());
            }
        }
        return Ok(m);
    }
    let n = n.ok_or("--n is required when the matrix is given as an integer code")?;
    Ok(MatCode::parse(n, text)?.decode())
}

fn print_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("json serialization")
    );
}
