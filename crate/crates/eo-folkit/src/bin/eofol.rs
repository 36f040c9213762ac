//! Command-line surface: stratum combinatorics, Dieudonne-module reports,
//! canonical-filtration traces, deformation reports, exact counts, the
//! vector-field demo, and the one-shot verification suite.
//!
//! Exit codes: 0 on success, 1 when an internal consistency assertion
//! fails, 2 for usage errors.

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use eo_folkit::counting::{self, GammaInstance, DEFAULT_GUARD};
use eo_folkit::deformation;
use eo_folkit::dieudonne;
use eo_folkit::gf::{self, Gf};
use eo_folkit::report;
use eo_folkit::verify;
use eo_folkit::weyl;
use eo_folkit::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(
    name = "eofol",
    about = "Exact computations for EO stratum combinatorics, Dieudonne modules, deformations, and covering degrees",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// The EO stratum poset of signature (n,m)
    Strata {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Cap on n+m for enumeration
        #[arg(long, default_value_t = weyl::DEFAULT_ENUM_BOUND)]
        max_nm: usize,
        /// Cap on the n!*m! conjugation search
        #[arg(long, default_value_t = weyl::DEFAULT_SEARCH_BOUND)]
        search_bound: u128,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Statistics of a single stratum label
    Stratum {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// One-line notation, e.g. 125634
        #[arg(long)]
        w: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Structure tables, kernels and images of the standard module
    Dieudonne {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Canonical-filtration word trace (requires n < 2m)
    Canfilt {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// First-order deformation: generators, residues, ideal, dimensions
    Deform {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Exact solution counts and the degree table
    Count {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Cap on elementary enumeration checks
        #[arg(long, default_value_t = DEFAULT_GUARD)]
        guard: u64,
        /// Also run the independent subspace oracle
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Check the p-th power of x*d/dx + d/dy against x*d/dx
    DerivationDemo {
        #[arg(long)]
        p: u64,
        /// Monomials up to this total degree (default 2p)
        #[arg(long)]
        degree_bound: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Run every invariant suite
    Verify {
        /// Cap on n+m for combinatorial searches
        #[arg(long)]
        max_nm: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = DEFAULT_GUARD)]
        guard: u64,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

fn emit(out: &Option<std::path::PathBuf>, content: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, content),
        None => std::io::stdout().write_all(content.as_bytes()),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn run() -> Result<(), Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Strata {
            n,
            m,
            format,
            max_nm,
            search_bound,
            out,
        } => {
            let poset = weyl::eo_poset_bounded(n, m, max_nm, search_bound)?;
            let content = match format {
                Format::Dot => report::poset_to_dot(&poset),
                Format::Json => to_json(&report::strata_report(&poset)),
                Format::Text => {
                    let mut s = format!(
                        "EO strata for (n,m) = ({},{}): {} strata, {} covers\n",
                        n,
                        m,
                        poset.nodes.len(),
                        poset.covers.len()
                    );
                    s.push_str("w          len  a_sigma  sharp  fol    ord    fiber\n");
                    for node in &poset.nodes {
                        s.push_str(&format!(
                            "{:<10} {:>3}  {:>7}  {:<5}  {:<5}  {:<5}  {:>5}\n",
                            node.label.one_line(),
                            node.length,
                            node.a_sigma,
                            node.in_s_sharp,
                            node.is_fol,
                            node.is_ordinary,
                            node.fiber_dim
                        ));
                    }
                    s.push_str("covers (larger > smaller):\n");
                    for &(a, b) in &poset.covers {
                        s.push_str(&format!(
                            "  {} > {}\n",
                            poset.nodes[a].label.one_line(),
                            poset.nodes[b].label.one_line()
                        ));
                    }
                    s
                }
            };
            emit(&out, &content).map_err(io_error)
        }
        Command::Stratum { n, m, w, format, out } => {
            let label = weyl::ShuffleLabel::new(weyl::Permutation::parse(&w)?, n, m)?;
            let info = weyl::stratum_info(&label)?;
            let rep = report::StratumReport {
                schema: report::SCHEMA.to_string(),
                n,
                m,
                w: info.label.one_line(),
                length: info.length,
                a_sigma: info.a_sigma,
                in_s_sharp: info.in_s_sharp,
                is_fol: info.is_fol,
                is_ordinary: info.is_ordinary,
                fiber_dim: info.fiber_dim,
            };
            let content = match format {
                Format::Json => to_json(&rep),
                _ => format!(
                    "w = {} in Pi({},{})\n\
                     length (stratum dimension) = {}\n\
                     a_sigma = {}\n\
                     in sharp locus = {}\n\
                     minimal sharp stratum = {}\n\
                     ordinary = {}\n\
                     fiber dimension = {}\n",
                    rep.w,
                    n,
                    m,
                    rep.length,
                    rep.a_sigma,
                    rep.in_s_sharp,
                    rep.is_fol,
                    rep.is_ordinary,
                    rep.fiber_dim
                ),
            };
            emit(&out, &content).map_err(io_error)
        }
        Command::Dieudonne { n, m, p, format, out } => {
            let md = dieudonne::standard_fol_module(n, m, Gf::new(p)?)?;
            let rep = report::dieudonne_report(&md)?;
            let content = match format {
                Format::Json => to_json(&rep),
                _ => {
                    let fmt_span =
                        |s: &report::SpanIndices| format!("e{:?} f{:?}", s.e, s.f);
                    let mut s = format!(
                        "standard module, (n,m) = ({},{}), GF({}^2)\n",
                        n, m, p
                    );
                    s.push_str("nonzero structure entries:\n");
                    for entry in rep.structure.iter().filter(|e| e.dst != "0") {
                        s.push_str(&format!(
                            "  {}({}) = {}\n",
                            entry.map, entry.src, entry.dst
                        ));
                    }
                    s.push_str(&format!("ker F  = {}\n", fmt_span(&rep.kernel_f)));
                    s.push_str(&format!("ker V  = {}\n", fmt_span(&rep.kernel_v)));
                    s.push_str(&format!("im F   = {}\n", fmt_span(&rep.image_f)));
                    s.push_str(&format!("im V   = {}\n", fmt_span(&rep.image_v)));
                    s.push_str(&format!("V(Q)   = {}\n", fmt_span(&rep.vq_image)));
                    s.push_str(&format!(
                        "Hasse matrix ({m}x{m}), zero = {}:\n",
                        rep.hasse_is_zero
                    ));
                    for row in &rep.hasse {
                        s.push_str(&format!("  [{}]\n", row.join(", ")));
                    }
                    s
                }
            };
            emit(&out, &content).map_err(io_error)
        }
        Command::Canfilt { n, m, p, format, out } => {
            let word = dieudonne::canonical_word(n, m, Gf::new(p)?)?;
            let rep = report::canfilt_report(p, n, m, &word);
            let content = match format {
                Format::Json => to_json(&rep),
                _ => {
                    let mut s = format!(
                        "canonical filtration word for (n,m) = ({},{}), r = {}\n",
                        n, m, rep.r
                    );
                    for step in &rep.trace {
                        s.push_str(&format!(
                            "  {:<22} = D({},{})\n",
                            step.word, step.a, step.b
                        ));
                    }
                    s.push_str(&format!(
                        "result: D({},{}) (lattice and matrix engines agree)\n",
                        rep.result_a, rep.result_b
                    ));
                    s
                }
            };
            emit(&out, &content).map_err(io_error)
        }
        Command::Deform { n, m, p, format, out } => {
            let ctx = deformation::deformation_context(n, m, Gf::new(p)?)?;
            let ud = ctx.universal_deformation()?;
            let dims = ctx.tangent_system()?;
            let rep = report::deform_report(&ctx, &ud, &dims)?;
            let content = match format {
                Format::Json => to_json(&rep),
                _ => {
                    let mut s = format!(
                        "first-order deformation at (n,m) = ({},{}), GF({}^2)\n",
                        n, m, p
                    );
                    s.push_str("Sigma generators:\n");
                    for g in &rep.sigma_generators {
                        s.push_str(&format!("  {g}\n"));
                    }
                    s.push_str("Sigma-bar generators:\n");
                    for g in &rep.sigma_bar_generators {
                        s.push_str(&format!("  {g}\n"));
                    }
                    s.push_str("V-image residues modulo the free summand:\n");
                    for (gen, terms) in &rep.residues {
                        s.push_str(&format!("  V({gen}) =\n"));
                        for (basis, coef) in terms {
                            s.push_str(&format!("    {basis}: {coef}\n"));
                        }
                    }
                    s.push_str(&format!(
                        "stratum ideal: {:?} (ambient indices {:?})\n",
                        rep.ideal, rep.ideal_ambient
                    ));
                    s.push_str(&format!(
                        "tangent dimensions: total {} = foliation {} + ideal {}, fiber {}\n",
                        rep.total_dim,
                        rep.foliation_dim,
                        rep.ideal.len(),
                        rep.fiber_dim
                    ));
                    s
                }
            };
            emit(&out, &content).map_err(io_error)
        }
        Command::Count {
            p,
            n,
            m,
            guard,
            oracle,
            format,
            out,
        } => {
            let started = Instant::now();
            let inst = GammaInstance::with_guard(Gf::new(p)?, n, m, guard)?;
            let closed = counting::gamma_count_closed(p, n, m)?;
            let brute = counting::gamma_count_bruteforce(&inst)?;
            let fast = counting::gamma_count_fast(&inst)?;
            if brute != closed.total || fast != closed.total {
                return Err(Error::Inconsistent(format!(
                    "counts disagree: closed {}, brute {brute}, fast {fast}",
                    closed.total
                )));
            }
            let oracle_count = if oracle {
                let c = counting::isotropic_subspace_oracle(&inst)?;
                if c != closed.total {
                    return Err(Error::Inconsistent(format!(
                        "subspace oracle {c} differs from closed form {}",
                        closed.total
                    )));
                }
                Some(c.to_string())
            } else {
                None
            };
            let degrees = counting::degree_table(p, n, m)?;
            let rep = report::count_report(
                p,
                n,
                m,
                &closed,
                Some(brute.to_string()),
                Some(fast.to_string()),
                oracle_count,
                &degrees,
                started.elapsed().as_millis() as u64,
            );
            let content = match format {
                Format::Json => to_json(&rep),
                _ => {
                    let mut s = format!(
                        "solution count over GF({}^2), (n,m) = ({},{})\n",
                        p, n, m
                    );
                    s.push_str(&format!(
                        "closed form p^(2nm-m^2) = {} = {} * {} * {}\n",
                        rep.closed_form,
                        rep.closed_factors[0],
                        rep.closed_factors[1],
                        rep.closed_factors[2]
                    ));
                    s.push_str(&format!(
                        "brute force = {}\nfast path   = {}\n",
                        rep.brute_force.as_deref().unwrap_or("-"),
                        rep.fast_path.as_deref().unwrap_or("-")
                    ));
                    if let Some(o) = &rep.oracle {
                        s.push_str(&format!("subspace oracle = {o}\n"));
                    }
                    s.push_str(&format!(
                        "degrees: rho = {}, rho' = {}, pi_et = {}, theta = {}, theta' = {}\n",
                        rep.degrees.rho,
                        rep.degrees.rho_prime,
                        rep.degrees.pi_et,
                        rep.degrees.theta,
                        rep.degrees.theta_prime
                    ));
                    s.push_str(&format!("elapsed: {} ms\n", rep.elapsed_ms));
                    s
                }
            };
            emit(&out, &content).map_err(io_error)
        }
        Command::DerivationDemo {
            p,
            degree_bound,
            format,
            out,
        } => {
            let bound = degree_bound.unwrap_or(2 * p as u32);
            let check = gf::p_power_of_derivation(p, bound)?;
            let rep = report::derivation_report(&check);
            if !rep.pass {
                return Err(Error::Inconsistent(format!(
                    "p-th power check failed on {:?}",
                    rep.failures
                )));
            }
            let content = match format {
                Format::Json => to_json(&rep),
                _ => format!(
                    "xi = x*d/dx + d/dy over GF({p}): xi^({p}) = x*d/dx on all {} monomials up to degree {}\n",
                    rep.monomials_checked, rep.degree_bound
                ),
            };
            emit(&out, &content).map_err(io_error)
        }
        Command::Verify {
            max_nm,
            p,
            guard,
            out,
        } => {
            let results = verify::run_all(max_nm, p, guard);
            let content = verify::render(&results);
            emit(&out, &content).map_err(io_error)?;
            if results.iter().any(|r| !r.pass) {
                return Err(Error::Inconsistent(
                    "one or more verification suites failed".to_string(),
                ));
            }
            Ok(())
        }
    }
}

fn io_error(e: std::io::Error) -> Error {
    Error::Inconsistent(format!("io error: {e}"))
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_usage() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
