//! Command-line front end: construction, verification and classification of
//! multiplicative automatic sequences.
//!
//! Exit codes: 0 for pass/success verdicts, 1 for fail/counterexample
//! verdicts (with the witness in the report), 2 for usage or document
//! errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use autoseq::num_bigint;
use serde_json::json;

use autoseq::analysis;
use autoseq::automata::{kernel_closure, minimize, pump_witness, KernelOptions};
use autoseq::classify::{
    classify_sparse_dense, decompose, dense_product_form_check, CheckOutcome, Classification,
    DecomposeOptions, FitOptions,
};
use autoseq::construct::{is_completely_multiplicative, is_multiplicative, MultCertificate};
use autoseq::doc;
use autoseq::seq::SequenceOracle;
use autoseq::{Dfao, TheoremFormSpec};

#[derive(Parser)]
#[command(name = "autoseq", version, about = "Multiplicative automatic sequences toolkit")]
struct Cli {
    /// Worker pool size for range scans (default: AUTOSEQ_THREADS or all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
    Dot,
}

/// Oracle input: a sequence specification or an automaton document.
#[derive(Args)]
struct InputArgs {
    /// Sequence specification document (JSON)
    #[arg(long, value_name = "FILE")]
    spec: Option<PathBuf>,
    /// DFAO document (JSON)
    #[arg(long, value_name = "FILE")]
    dfao: Option<PathBuf>,
}

enum Input {
    Spec(TheoremFormSpec),
    Dfao(Dfao),
}

impl Input {
    fn load(spec: Option<&Path>, dfao: Option<&Path>) -> Result<Input> {
        match (spec, dfao) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                Ok(Input::Spec(doc::spec_from_json(&text)?))
            }
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                Ok(Input::Dfao(doc::dfao_from_json(&text)?))
            }
            _ => bail!("provide exactly one of --spec or --dfao"),
        }
    }

    fn oracle(&self) -> &dyn SequenceOracle {
        match self {
            Input::Spec(spec) => spec,
            Input::Dfao(d) => d,
        }
    }

    fn default_base(&self) -> u64 {
        match self {
            Input::Spec(spec) => spec.prime(),
            Input::Dfao(d) => d.base() as u64,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the first terms of a sequence
    Gen {
        #[command(flatten)]
        input: InputArgs,
        /// Number of terms
        #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        /// First index
        #[arg(long, default_value_t = 1)]
        start: u64,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Certify multiplicativity on an initial range
    CheckMult {
        #[command(flatten)]
        input: InputArgs,
        /// All pairs with m·n up to this bound are checked
        #[arg(long, default_value_t = 4096, value_parser = clap::value_parser!(u64).range(2..))]
        n: u64,
        /// Drop the coprimality restriction (complete multiplicativity)
        #[arg(long)]
        complete: bool,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Recover the (p, f1, f2) data of a sequence
    Decompose {
        /// Sequence specification document (JSON)
        #[arg(long, value_name = "FILE")]
        spec: Option<PathBuf>,
        /// Use an automaton document as the sequence source
        #[arg(long, value_name = "FILE")]
        spec_from_dfao: Option<PathBuf>,
        /// The prime to decompose along
        #[arg(long)]
        p: u64,
        /// Reconstruction is verified on [1, horizon]
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(16..))]
        horizon: u64,
    },
    /// Decide sparse versus dense and fit (h, λ, χ)
    Classify {
        #[command(flatten)]
        input: InputArgs,
        /// Declared automaticity base (defaults to the input's own base)
        #[arg(long)]
        base: Option<u64>,
        /// Largest modulus tried by the fitter
        #[arg(long, default_value_t = 256, value_parser = clap::value_parser!(u64).range(1..))]
        bound: u64,
        /// Fit verification horizon
        #[arg(long, default_value_t = 4096, value_parser = clap::value_parser!(u64).range(16..))]
        horizon: u64,
        /// Verify the dense product-form identity up to this bound
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        identity_check: u64,
    },
    /// Closed-form mean against the empirical mean
    Mean {
        /// Sequence specification document (JSON)
        #[arg(long, value_name = "FILE")]
        spec: PathBuf,
        /// Empirical horizon
        #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// λ-kernel closure with a class budget
    Kernel {
        #[command(flatten)]
        input: InputArgs,
        /// Base to close in (defaults to the input's own base)
        #[arg(long)]
        base: Option<u64>,
        /// Truncation horizon for class identification
        #[arg(long, default_value_t = 2048, value_parser = clap::value_parser!(u64).range(1..))]
        t: u64,
        /// Class budget
        #[arg(long, default_value_t = 512, value_parser = clap::value_parser!(u64).range(1..))]
        max_states: u64,
    },
    /// Minimize an automaton
    Minimize {
        /// DFAO document (JSON)
        #[arg(long, value_name = "FILE")]
        dfao: PathBuf,
        /// Write the minimized document here instead of stdout
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Extract and validate pumping witnesses at random indices
    Pump {
        /// DFAO document (JSON)
        #[arg(long, value_name = "FILE")]
        dfao: PathBuf,
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Validate cycle counts k = 0..=k_max
        #[arg(long, default_value_t = 8)]
        k_max: u32,
    },
    /// Per-position period check of a theorem-form sequence
    Toeplitz {
        /// Sequence specification document (JSON)
        #[arg(long, value_name = "FILE")]
        spec: PathBuf,
        #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
        s: u64,
    },
    /// Support density per decade
    Density {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(10..))]
        n: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Distinct factors and recurrence gaps of the value word
    Complexity {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u16).range(1..=64))]
        max_len: u16,
        #[arg(long, default_value_t = 100_000)]
        n: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Graphviz rendering of an automaton
    ExportDot {
        /// DFAO document (JSON)
        #[arg(long, value_name = "FILE")]
        dfao: PathBuf,
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli
        .threads
        .or_else(|| std::env::var("AUTOSEQ_THREADS").ok().and_then(|v| v.parse().ok()));
    autoseq::configure_threads(threads);
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn load_spec(path: &Path) -> Result<TheoremFormSpec> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(doc::spec_from_json(&text)?)
}

fn load_dfao(path: &Path) -> Result<Dfao> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(doc::dfao_from_json(&text)?)
}

fn emit(output: Option<&Path>, contents: &str) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, contents)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{contents}"),
    }
    Ok(())
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Gen { input, count, start, format } => {
            let input = Input::load(input.spec.as_deref(), input.dfao.as_deref())?;
            let a = input.oracle();
            let terms: Vec<String> =
                (start..start + count).map(|n| a.value(n).to_string()).collect();
            match format {
                Format::Plain => println!("{}", terms.join(",")),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({"start": start, "terms": terms}))?
                ),
                Format::Csv => {
                    println!("n,value");
                    for (i, t) in terms.iter().enumerate() {
                        println!("{},{}", start + i as u64, t);
                    }
                }
                Format::Dot => bail!("gen has no dot format"),
            }
            Ok(0)
        }

        Command::CheckMult { input, n, complete, format } => {
            let input = Input::load(input.spec.as_deref(), input.dfao.as_deref())?;
            let a = input.oracle();
            let verdict =
                if complete { is_completely_multiplicative(a, n) } else { is_multiplicative(a, n) };
            let (report, code) = match &verdict {
                MultCertificate::Certified { bound } => (
                    json!({"verdict": "certified", "bound": bound}),
                    0,
                ),
                MultCertificate::Counterexample { m, n, found, expected } => (
                    json!({
                        "verdict": "counterexample",
                        "m": m,
                        "n": n,
                        "found": found.to_string(),
                        "expected": expected.to_string(),
                    }),
                    1,
                ),
            };
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
                _ => match &verdict {
                    MultCertificate::Certified { bound } => {
                        println!("certified multiplicative up to {bound}")
                    }
                    MultCertificate::Counterexample { m, n, found, expected } => println!(
                        "counterexample: a({m}·{n}) = {found}, but a({m})·a({n}) = {expected}"
                    ),
                },
            }
            Ok(code)
        }

        Command::Decompose { spec, spec_from_dfao, p, horizon } => {
            let input = Input::load(spec.as_deref(), spec_from_dfao.as_deref())?;
            if !autoseq::arith::is_prime(p) {
                bail!("{p} is not prime");
            }
            let opts = DecomposeOptions { horizon, ..Default::default() };
            match decompose(input.oracle(), p, &opts) {
                Ok(dec) => {
                    let spec_doc: serde_json::Value =
                        serde_json::from_str(&doc::spec_to_json(&dec.spec))?;
                    let report = json!({
                        "spec": spec_doc,
                        "unique": dec.unique,
                        "verified_to": dec.verified_to,
                    });
                    println!("{}", serde_json::to_string_pretty(&report)?);
                    Ok(0)
                }
                Err(err) => {
                    let report = json!({"verdict": "failed", "reason": err.to_string()});
                    println!("{}", serde_json::to_string_pretty(&report)?);
                    Ok(1)
                }
            }
        }

        Command::Classify { input, base, bound, horizon, identity_check } => {
            let input = Input::load(input.spec.as_deref(), input.dfao.as_deref())?;
            let declared_base = base.unwrap_or_else(|| input.default_base());
            let opts = FitOptions { modulus_bound: bound, horizon };
            match classify_sparse_dense(input.oracle(), declared_base, &opts) {
                Ok(Classification::Dense(dense)) => {
                    let identity = dense_product_form_check(input.oracle(), &dense, identity_check);
                    let chi_doc: serde_json::Value =
                        serde_json::from_str(&doc::character_to_json(&dense.chi))?;
                    let report = json!({
                        "verdict": "dense",
                        "h": dense.h,
                        "lambda": dense.lambda,
                        "modulus": dense.modulus(),
                        "character": chi_doc,
                        "pbar": dense.factors.iter().map(|f| json!({
                            "prime": f.prime,
                            "alpha": f.alpha,
                            "pbar": f.pbar,
                        })).collect::<Vec<_>>(),
                        "product_form_identity": match &identity {
                            CheckOutcome::Pass { checked_to } =>
                                json!({"verdict": "pass", "checked_to": checked_to}),
                            CheckOutcome::Fail { witness, found, expected } => json!({
                                "verdict": "fail",
                                "witness": witness,
                                "found": found.to_string(),
                                "expected": expected.to_string(),
                            }),
                        },
                    });
                    println!("{}", serde_json::to_string_pretty(&report)?);
                    Ok(if identity.passed() { 0 } else { 1 })
                }
                Ok(Classification::Sparse(sparse)) => {
                    let report = json!({
                        "verdict": "sparse",
                        "modulus": sparse.modulus,
                        "support_count": sparse.support.len(),
                        "support_head": sparse.support.iter().take(32).collect::<Vec<_>>(),
                        "prime_estimate": sparse.prime_estimate,
                    });
                    println!("{}", serde_json::to_string_pretty(&report)?);
                    Ok(0)
                }
                Err(err) => {
                    let report = json!({"verdict": "failed", "reason": err.to_string()});
                    println!("{}", serde_json::to_string_pretty(&report)?);
                    Ok(1)
                }
            }
        }

        Command::Mean { spec, n, format } => {
            let spec = load_spec(&spec)?;
            let report = analysis::mean_report(&spec, n);
            match format {
                Format::Csv => {
                    let checkpoints: Vec<u64> =
                        (3..=6).map(|j| 10u64.pow(j)).filter(|&c| c <= n).collect();
                    print!("{}", analysis::mean_trace_csv(&spec, &checkpoints));
                }
                _ => {
                    let out = json!({
                        "n": report.n,
                        "formula": {
                            "re": report.formula_complex.0,
                            "im": report.formula_complex.1,
                        },
                        "empirical": {
                            "re": report.empirical_complex.0,
                            "im": report.empirical_complex.1,
                        },
                        "discrepancy": report.discrepancy.to_f64(),
                        "discrepancy_decimal": report.discrepancy.to_decimal_string(),
                    });
                    println!("{}", serde_json::to_string_pretty(&out)?);
                }
            }
            Ok(0)
        }

        Command::Kernel { input, base, t, max_states } => {
            let input = Input::load(input.spec.as_deref(), input.dfao.as_deref())?;
            let base = base.unwrap_or_else(|| input.default_base());
            let opts = KernelOptions { horizon: t as usize, max_states: max_states as usize };
            if base < 2 {
                bail!("base must be at least 2, got {base}");
            }
            match kernel_closure(input.oracle(), base as u32, &opts) {
                Ok(table) => {
                    let report = json!({
                        "verdict": "closed",
                        "base": base,
                        "classes": table.n_classes(),
                        "horizon": table.horizon,
                    });
                    println!("{}", serde_json::to_string_pretty(&report)?);
                    Ok(0)
                }
                Err(err @ autoseq::automata::KernelError::BudgetExceeded { .. }) => {
                    let report = json!({
                        "verdict": "budget_exceeded",
                        "base": base,
                        "reason": err.to_string(),
                    });
                    println!("{}", serde_json::to_string_pretty(&report)?);
                    Ok(1)
                }
                Err(err) => Err(err.into()),
            }
        }

        Command::Minimize { dfao, output } => {
            let d = load_dfao(&dfao)?;
            let m = minimize(&d);
            emit(output.as_deref(), &format!("{}\n", doc::dfao_to_json(&m)))?;
            Ok(0)
        }

        Command::Pump { dfao, count, seed, k_max } => {
            let d = load_dfao(&dfao)?;
            let base = num_bigint_base(&d);
            let threshold = base.pow(d.n_states() as u32);
            let mut state = seed.wrapping_add(0x9e3779b97f4a7c15);
            let mut next = move || {
                // splitmix64
                state = state.wrapping_add(0x9e3779b97f4a7c15);
                let mut z = state;
                z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
                z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
                z ^ (z >> 31)
            };
            let mut rows = Vec::new();
            let mut failures = 0u64;
            for _ in 0..count {
                let n = &threshold + num_bigint::BigUint::from(next());
                let witness = pump_witness(&d, &n)
                    .map_err(|e| anyhow::anyhow!("pump failed at n = {n}: {e}"))?;
                let expected = d.eval_big(&n);
                let valid = (0..=k_max).all(|k| d.eval_big(&witness.pumped(k)) == expected);
                if !valid {
                    failures += 1;
                }
                rows.push(json!({
                    "n": n.to_string(),
                    "x": witness.x.to_string(),
                    "y": witness.y.to_string(),
                    "z": witness.z.to_string(),
                    "l1": witness.l1,
                    "l2": witness.l2,
                    "l3": witness.l3,
                    "valid": valid,
                }));
            }
            let report = json!({
                "verdict": if failures == 0 { "pass" } else { "fail" },
                "count": count,
                "k_max": k_max,
                "failures": failures,
                "witnesses": rows,
            });
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(if failures == 0 { 0 } else { 1 })
        }

        Command::Toeplitz { spec, n, s } => {
            let spec = load_spec(&spec)?;
            match analysis::toeplitz_check(&spec, n, s) {
                CheckOutcome::Pass { checked_to } => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(
                            &json!({"verdict": "pass", "checked_to": checked_to, "s_max": s})
                        )?
                    );
                    Ok(0)
                }
                CheckOutcome::Fail { witness, found, expected } => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({
                            "verdict": "fail",
                            "witness": witness,
                            "found": found.to_string(),
                            "expected": expected.to_string(),
                        }))?
                    );
                    Ok(1)
                }
            }
        }

        Command::Density { input, n, format } => {
            let input = Input::load(input.spec.as_deref(), input.dfao.as_deref())?;
            let report = analysis::support_density(input.oracle(), n);
            match format {
                Format::Json => {
                    let out = json!({
                        "decades": report.decades.iter().map(|d| json!({
                            "upper": d.upper, "count": d.count, "density": d.density,
                        })).collect::<Vec<_>>(),
                        "monotonicity_violations": report.monotonicity_violations,
                    });
                    println!("{}", serde_json::to_string_pretty(&out)?);
                }
                _ => print!("{}", report.to_csv()),
            }
            Ok(0)
        }

        Command::Complexity { input, max_len, n, format } => {
            let input = Input::load(input.spec.as_deref(), input.dfao.as_deref())?;
            let max_len = max_len as usize;
            if (n as usize) < max_len {
                bail!("prefix length {n} is shorter than the longest factor {max_len}");
            }
            let report = analysis::word_complexity(input.oracle(), max_len, n);
            match format {
                Format::Json => {
                    let out = json!({
                        "prefix_len": report.prefix_len,
                        "per_length": report.per_length.iter().map(|s| json!({
                            "len": s.len, "distinct": s.distinct, "max_gap": s.max_gap,
                        })).collect::<Vec<_>>(),
                    });
                    println!("{}", serde_json::to_string_pretty(&out)?);
                }
                _ => print!("{}", report.to_csv()),
            }
            Ok(0)
        }

        Command::ExportDot { dfao, output } => {
            let d = load_dfao(&dfao)?;
            emit(output.as_deref(), &doc::dfao_to_dot(&d))?;
            Ok(0)
        }
    }
}

fn num_bigint_base(d: &Dfao) -> num_bigint::BigUint {
    num_bigint::BigUint::from(d.base())
}
