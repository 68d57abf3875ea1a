//! Command-line surface: norms, embedding constants, certificates, certified
//! series sums, the Gibbs scenario, a Pitt-factorization demonstrator, and
//! seeded verification suites. JSON on stdout, diagnostics on stderr.
//!
//! Exit codes: 0 success, 1 validation or hypothesis failure, 2 divergence.

use std::fs::File;
use std::io::{self, BufReader, Read};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sobseq::demos::{gibbs_demo, pitt_demo, PittDemoConfig};
use sobseq::error::{exit_code, CliError};
use sobseq::jsonl;
use sobseq::schema::{
    parse_weight_cli_spec, CertificateDoc, EmbeddingReportDoc, SpaceSpec, WeightSpec,
};
use sobseq::verify::{run_suite, SuiteKind};
use sobseq_core::{
    certify_theorem1, certify_theorem2, classify_order_pair, ratio_condition_check,
    tail_rank_theorem1, tail_rank_theorem2, theorem2_constant, weight_series_sum_detailed,
    BoundScope, Domain, IndexWindow, SeqVector, SpaceParams,
};

#[derive(Parser)]
#[command(
    name = "sobseq",
    version,
    about = "Weighted Sobolev-type sequence spaces: norms, embedding constants, compactness certificates, certified series sums"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DomainArg {
    Full,
    Half,
}

impl From<DomainArg> for Domain {
    fn from(d: DomainArg) -> Self {
        match d {
            DomainArg::Full => Domain::FullLine,
            DomainArg::Half => Domain::HalfLine,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TheoremArg {
    T1,
    T2,
}

#[derive(Subcommand)]
enum Cmd {
    /// Norm of a JSONL sequence in h^{k,s}_w
    #[command(allow_negative_numbers = true)]
    Norm {
        #[arg(long)]
        k: f64,
        #[arg(long)]
        s: f64,
        /// Weight spec: constant:<c> | poly:<alpha> | gibbs:<beta> | table:<path>
        #[arg(long)]
        weight: String,
        #[arg(long, value_enum, default_value_t = DomainArg::Full)]
        domain: DomainArg,
        /// JSONL input file; "-" reads standard input
        #[arg(long, default_value = "-")]
        input: String,
    },
    /// Inner product of two JSONL sequences (s = 2 spaces only)
    #[command(allow_negative_numbers = true)]
    Inner {
        #[arg(long)]
        k: f64,
        #[arg(long, default_value_t = 2.0)]
        s: f64,
        #[arg(long)]
        weight: String,
        #[arg(long, value_enum, default_value_t = DomainArg::Full)]
        domain: DomainArg,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Classify the inclusion between two orders of the same scale
    #[command(allow_negative_numbers = true)]
    EmbedClassify {
        #[arg(long)]
        k_src: f64,
        #[arg(long)]
        k_tgt: f64,
    },
    /// Tail rank m* of a compactness certificate
    #[command(allow_negative_numbers = true)]
    TailRank(CertifyArgs),
    /// Full compactness certificate as stable JSON
    #[command(allow_negative_numbers = true)]
    Certify(CertifyArgs),
    /// Certified sum of the weight series with an integral-test tail bound
    #[command(allow_negative_numbers = true)]
    SeriesSum {
        #[arg(long)]
        s: f64,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        k: f64,
        #[arg(long, value_enum, default_value_t = DomainArg::Full)]
        domain: DomainArg,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = OutputArg::Json)]
        output: OutputArg,
    },
    /// Two-weight embedding constant c_{k,s,t}
    #[command(allow_negative_numbers = true)]
    T2Constant {
        #[arg(long)]
        s: f64,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        k: f64,
        /// Ratio lower bound; alternatively derive it via --w and --w-hat
        #[arg(long, conflicts_with_all = ["w", "w_hat"])]
        c1: Option<f64>,
        #[arg(long, requires = "w_hat")]
        w: Option<String>,
        #[arg(long, requires = "w")]
        w_hat: Option<String>,
        #[arg(long, default_value_t = 200)]
        ratio_window: u32,
        #[arg(long, value_enum, default_value_t = DomainArg::Full)]
        domain: DomainArg,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = OutputArg::Json)]
        output: OutputArg,
    },
    /// Conjugate a seeded decaying operator through the isometries and
    /// certify its finite-rank approximation
    #[command(allow_negative_numbers = true)]
    PittDemo {
        #[arg(long, default_value_t = 1.0)]
        k: f64,
        #[arg(long, default_value_t = 2.0)]
        s: f64,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long, default_value = "constant:1")]
        weight: String,
        #[arg(long, value_enum, default_value_t = DomainArg::Full)]
        domain: DomainArg,
        #[arg(long, default_value_t = 12)]
        radius: u32,
        #[arg(long, default_value_t = 2.0)]
        gamma: f64,
        #[arg(long, default_value_t = 0.01)]
        epsilon: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include the weighted-side operator section in the report
        #[arg(long)]
        emit_operator: bool,
    },
    /// The Gibbs-weight scenario: ratio condition, embedding constants,
    /// interlacing chain, and a two-weight certificate
    #[command(allow_negative_numbers = true)]
    GibbsDemo {
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        #[arg(long, default_value_t = 1.0)]
        kappa: f64,
    },
    /// Run a seeded invariant suite and report per-property outcomes
    Verify {
        /// One of: norm-axioms, monotonicity, t1b, t2, certificates, isometry
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(clap::Args)]
struct CertifyArgs {
    #[arg(long, value_enum)]
    theorem: TheoremArg,
    #[arg(long)]
    k: f64,
    /// Source order (theorem t1 only)
    #[arg(long)]
    k_prime: Option<f64>,
    #[arg(long)]
    s: f64,
    /// Target summability (theorem t2 only)
    #[arg(long)]
    t: Option<f64>,
    #[arg(long)]
    epsilon: f64,
    #[arg(long)]
    kappa: f64,
    /// Weight spec for theorem t1 (defaults to constant:1)
    #[arg(long, default_value = "constant:1")]
    weight: String,
    /// Ratio lower bound for theorem t2; alternatively --w and --w-hat
    #[arg(long, conflicts_with_all = ["w", "w_hat"])]
    c1: Option<f64>,
    #[arg(long, requires = "w_hat")]
    w: Option<String>,
    #[arg(long, requires = "w")]
    w_hat: Option<String>,
    #[arg(long, default_value_t = 200)]
    ratio_window: u32,
    #[arg(long, value_enum, default_value_t = DomainArg::Full)]
    domain: DomainArg,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli.cmd) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(exit_code(&err));
        }
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<(), CliError> {
    emit(&serde_json::to_string_pretty(value)?);
    Ok(())
}

/// Writes one line to stdout; a closed pipe downstream is a quiet success.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = io::stdout().lock();
    if let Err(e) = writeln!(out, "{text}") {
        if e.kind() == io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

fn read_vector(path: &str) -> Result<SeqVector, CliError> {
    if path == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        jsonl::parse_seq_vector(&text)
    } else {
        jsonl::read_seq_vector(BufReader::new(File::open(path)?))
    }
}

/// Resolves the theorem-2 ratio lower bound: either user-supplied (not
/// rigorous by itself) or derived from a pair of weight specs, rigorous
/// exactly when the check is analytic.
fn resolve_c1(
    c1: Option<f64>,
    w: &Option<String>,
    w_hat: &Option<String>,
    ratio_window: u32,
    s: f64,
    t: f64,
    domain: Domain,
) -> Result<(f64, bool), CliError> {
    if let Some(c1) = c1 {
        return Ok((c1, false));
    }
    match (w, w_hat) {
        (Some(w), Some(w_hat)) => {
            let w = parse_weight_cli_spec(w, domain)?;
            let w_hat = parse_weight_cli_spec(w_hat, domain)?;
            let window = match domain {
                Domain::FullLine => IndexWindow::symmetric(ratio_window),
                Domain::HalfLine => IndexWindow::half_line(ratio_window),
            };
            let bounds = ratio_condition_check(&w, &w_hat, s, t, window)?;
            Ok((bounds.c1, bounds.scope == BoundScope::Analytic))
        }
        _ => Err(CliError::invalid(
            "theorem t2 needs either --c1 or both --w and --w-hat",
        )),
    }
}

fn run(cmd: Cmd) -> Result<i32, CliError> {
    match cmd {
        Cmd::Norm {
            k,
            s,
            weight,
            domain,
            input,
        } => {
            let w = parse_weight_cli_spec(&weight, domain.into())?;
            let sp = SpaceParams::new(k, s, w)?;
            let p = read_vector(&input)?;
            let value = sp.norm(&p)?;
            #[derive(Serialize)]
            struct NormDoc {
                k: f64,
                s: f64,
                weight: WeightSpec,
                support: usize,
                norm: f64,
            }
            print_json(&NormDoc {
                k,
                s,
                weight: WeightSpec::from_family(sp.weight()),
                support: p.support_len(),
                norm: value,
            })?;
            Ok(0)
        }
        Cmd::Inner {
            k,
            s,
            weight,
            domain,
            left,
            right,
        } => {
            let w = parse_weight_cli_spec(&weight, domain.into())?;
            let sp = SpaceParams::new(k, s, w)?;
            let p = read_vector(&left)?;
            let q = read_vector(&right)?;
            let value = sp.inner_product(&p, &q)?;
            #[derive(Serialize)]
            struct InnerDoc {
                k: f64,
                s: f64,
                re: f64,
                im: f64,
            }
            print_json(&InnerDoc {
                k,
                s,
                re: value.re,
                im: value.im,
            })?;
            Ok(0)
        }
        Cmd::EmbedClassify { k_src, k_tgt } => {
            let report = classify_order_pair(k_src, k_tgt);
            print_json(&EmbeddingReportDoc::from_report(&report))?;
            Ok(0)
        }
        Cmd::TailRank(args) => {
            let (m_star, _, _) = certify(&args)?;
            #[derive(Serialize)]
            struct TailRankDoc {
                theorem: String,
                m_star: u64,
            }
            print_json(&TailRankDoc {
                theorem: match args.theorem {
                    TheoremArg::T1 => "T1a".to_string(),
                    TheoremArg::T2 => "T2".to_string(),
                },
                m_star,
            })?;
            Ok(0)
        }
        Cmd::Certify(args) => {
            let (_, doc, _) = certify(&args)?;
            print_json(&doc)?;
            Ok(0)
        }
        Cmd::SeriesSum {
            s,
            t,
            k,
            domain,
            tol,
            output,
        } => {
            let detail = weight_series_sum_detailed(k, s, t, domain.into(), tol)?;
            match output {
                OutputArg::Json => {
                    #[derive(Serialize)]
                    struct SeriesDoc {
                        s: f64,
                        t: f64,
                        k: f64,
                        domain: String,
                        tol: f64,
                        value: f64,
                        horizon: u64,
                        tail_bound: f64,
                    }
                    print_json(&SeriesDoc {
                        s,
                        t,
                        k,
                        domain: domain_name(domain).to_string(),
                        tol,
                        value: detail.value,
                        horizon: detail.horizon,
                        tail_bound: detail.tail_bound,
                    })?;
                }
                OutputArg::Csv => {
                    emit(&format!(
                        "s,t,k,domain,tol,value,horizon,tail_bound\n{},{},{},{},{},{},{},{}",
                        s,
                        t,
                        k,
                        domain_name(domain),
                        tol,
                        detail.value,
                        detail.horizon,
                        detail.tail_bound
                    ));
                }
            }
            Ok(0)
        }
        Cmd::T2Constant {
            s,
            t,
            k,
            c1,
            w,
            w_hat,
            ratio_window,
            domain,
            tol,
            output,
        } => {
            let (c1, rigorous) = resolve_c1(c1, &w, &w_hat, ratio_window, s, t, domain.into())?;
            let constant = theorem2_constant(k, s, t, c1, domain.into(), tol)?;
            match output {
                OutputArg::Json => {
                    #[derive(Serialize)]
                    struct ConstantDoc {
                        s: f64,
                        t: f64,
                        k: f64,
                        c1: f64,
                        domain: String,
                        tol: f64,
                        constant: f64,
                        rigorous: bool,
                    }
                    print_json(&ConstantDoc {
                        s,
                        t,
                        k,
                        c1,
                        domain: domain_name(domain).to_string(),
                        tol,
                        constant,
                        rigorous,
                    })?;
                }
                OutputArg::Csv => {
                    emit(&format!(
                        "s,t,k,c1,domain,tol,constant,rigorous\n{},{},{},{},{},{},{},{}",
                        s,
                        t,
                        k,
                        c1,
                        domain_name(domain),
                        tol,
                        constant,
                        rigorous
                    ));
                }
            }
            Ok(0)
        }
        Cmd::PittDemo {
            k,
            s,
            t,
            weight,
            domain,
            radius,
            gamma,
            epsilon,
            seed,
            emit_operator,
        } => {
            let weight = parse_weight_cli_spec(&weight, domain.into())?;
            let doc = pitt_demo(PittDemoConfig {
                k,
                s,
                t,
                weight,
                radius,
                gamma,
                epsilon,
                seed,
                emit_operator,
            })?;
            print_json(&doc)?;
            Ok(0)
        }
        Cmd::GibbsDemo {
            beta,
            tol,
            epsilon,
            kappa,
        } => {
            let doc = gibbs_demo(beta, tol, epsilon, kappa)?;
            print_json(&doc)?;
            Ok(0)
        }
        Cmd::Verify {
            suite,
            trials,
            seed,
        } => {
            let kind = SuiteKind::parse(&suite).ok_or_else(|| {
                CliError::invalid(format!(
                    "unknown suite {suite:?}; expected one of: {}",
                    SuiteKind::ALL_NAMES
                ))
            })?;
            let report = run_suite(kind, trials, seed)?;
            print_json(&report)?;
            Ok(if report.passed { 0 } else { 1 })
        }
    }
}

fn domain_name(d: DomainArg) -> &'static str {
    match d {
        DomainArg::Full => "full",
        DomainArg::Half => "half",
    }
}

/// Shared path for `tail-rank` and `certify`.
fn certify(args: &CertifyArgs) -> Result<(u64, CertificateDoc, SpaceSpec), CliError> {
    let domain: Domain = args.domain.into();
    match args.theorem {
        TheoremArg::T1 => {
            let k_prime = args
                .k_prime
                .ok_or_else(|| CliError::invalid("theorem t1 needs --k-prime"))?;
            let w = parse_weight_cli_spec(&args.weight, domain)?;
            let m_star = tail_rank_theorem1(args.k, k_prime, args.s, args.epsilon, args.kappa)?;
            let cert =
                certify_theorem1(args.k, k_prime, args.s, &w, args.epsilon, args.kappa)?;
            let doc = CertificateDoc::from_certificate(&cert, Some(1.0), true);
            let space = SpaceSpec {
                k: args.k,
                s: args.s,
                domain: domain.into(),
                weight: WeightSpec::from_family(&w),
            };
            Ok((m_star, doc, space))
        }
        TheoremArg::T2 => {
            let t = args
                .t
                .ok_or_else(|| CliError::invalid("theorem t2 needs --t"))?;
            let (c1, rigorous) = resolve_c1(
                args.c1,
                &args.w,
                &args.w_hat,
                args.ratio_window,
                args.s,
                t,
                domain,
            )?;
            let m_star = tail_rank_theorem2(
                args.k,
                args.s,
                t,
                c1,
                args.epsilon,
                args.kappa,
                domain,
                args.tol,
            )?;
            let cert = certify_theorem2(
                args.k,
                args.s,
                t,
                c1,
                args.epsilon,
                args.kappa,
                domain,
                args.tol,
            )?;
            let constant = theorem2_constant(args.k, args.s, t, c1, domain, args.tol)?;
            let doc = CertificateDoc::from_certificate(&cert, Some(constant), rigorous);
            let space = SpaceSpec {
                k: args.k,
                s: args.s,
                domain: domain.into(),
                weight: WeightSpec::Constant { c: 1.0 },
            };
            Ok((m_star, doc, space))
        }
    }
}
