use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use ordertype::arith::{primitive_prime_divisors, render_primes, zsigmondy};
use ordertype::caseverify::{
    full_report, not_exercised_rows, verify_cases, verify_corpus, verify_lie_tables, verify_table4, CheckResult,
    CorpusGroups, ScanLimits, VerificationReport, CASE_GROUPS,
};
use ordertype::frobstruct::{gk_trichotomy, Classification, FrobError};
use ordertype::gkgraph::build_gk;
use ordertype::permgrp::{GroupSpec, PermutationGroup};
use ordertype::simpledb::{corpus_entry, ParamBounds};
use ordertype::spectra::{order_equation, same_order_type, spectrum};

#[derive(Parser)]
#[command(name = "ordertype", version, about = "Order equations, prime graphs and case verification for finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Set of element orders.
    Spectrum { group: String },
    /// `|G| = sum v_n phi(n)`.
    OrderEquation {
        group: String,
        #[arg(long)]
        json: bool,
    },
    /// Whether two groups have the same order type.
    SameType { first: String, second: String },
    /// Gruenberg-Kegel prime graph.
    Gk {
        group: String,
        #[arg(long)]
        dot: bool,
    },
    /// Branch of the prime-graph trichotomy.
    Classify { group: String },
    /// Smallest primitive prime divisor of q^n - 1.
    Zsigmondy { q: u64, n: u32 },
    /// Run one family of checks.
    Verify {
        #[command(subcommand)]
        what: VerifyWhat,
    },
    /// Run every check and write the report.
    Report {
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        bounds: BoundArgs,
    },
}

#[derive(Subcommand)]
enum VerifyWhat {
    /// Torus tables 1-3, or the sporadic table 4.
    Tables {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        table: Option<u8>,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Number-theoretic scans and the exceptional cases.
    Cases,
    /// Property suite over the group corpus.
    Corpus,
}

#[derive(Args, Clone, Copy)]
struct BoundArgs {
    #[arg(long, default_value_t = ParamBounds::default().q_max)]
    qmax: u64,
    #[arg(long, default_value_t = ParamBounds::default().p_max)]
    pmax: u64,
    #[arg(long, default_value_t = ParamBounds::default().n_max)]
    nmax: u64,
}

impl From<BoundArgs> for ParamBounds {
    fn from(b: BoundArgs) -> Self {
        ParamBounds { q_max: b.qmax, p_max: b.pmax, n_max: b.nmax }
    }
}

/// A group file path, or the label of a corpus group.
fn load_group(name: &str) -> Result<PermutationGroup> {
    let text = if Path::new(name).is_file() {
        fs::read_to_string(name).with_context(|| format!("reading {name}"))?
    } else {
        corpus_entry(name).with_context(|| format!("{name} is neither a file nor a corpus group"))?.source.to_string()
    };
    let spec = GroupSpec::parse(&text).with_context(|| format!("parsing {name}"))?;
    Ok(spec.enumerate().with_context(|| format!("enumerating {name}"))?)
}

fn print_checks(checks: &[CheckResult], not_exercised: Vec<String>, bounds: ParamBounds) -> ExitCode {
    let report = VerificationReport::new(bounds, ScanLimits::default(), checks.to_vec(), not_exercised);
    print!("{}", report.to_text());
    exit_for(&report)
}

fn exit_for(report: &VerificationReport) -> ExitCode {
    if report.has_contradiction() {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Spectrum { group } => {
            let g = load_group(&group)?;
            println!("{}", render_primes(&spectrum(&g)));
        }
        Command::OrderEquation { group, json } => {
            let eq = order_equation(&load_group(&group)?);
            if json {
                println!("{}", serde_json::to_string_pretty(&eq)?);
            } else {
                println!("{eq}");
            }
        }
        Command::SameType { first, second } => {
            let (a, b) = (load_group(&first)?, load_group(&second)?);
            println!("{first}: {}", order_equation(&a));
            println!("{second}: {}", order_equation(&b));
            println!("same order type: {}", if same_order_type(&a, &b) { "yes" } else { "no" });
        }
        Command::Gk { group, dot } => {
            let graph = build_gk(&spectrum(&load_group(&group)?))?;
            if dot {
                print!("{}", graph.to_dot());
            } else {
                println!("s = {}", graph.s());
                for (i, c) in graph.components.iter().enumerate() {
                    println!("pi_{} = {}", i + 1, render_primes(c));
                }
                let edges: Vec<String> = graph.edges.iter().map(|(r, s)| format!("{r}-{s}")).collect();
                println!("edges: {}", edges.join(" "));
            }
        }
        Command::Classify { group } => match gk_trichotomy(&load_group(&group)?) {
            Ok(c) => {
                let detail = match &c {
                    Classification::Frobenius(d) => {
                        format!("|K| = {}, |H| = {}", d.kernel.order(), d.complement.order())
                    }
                    Classification::TwoFrobenius(d) => {
                        format!("|A| = {}, |B| = {}, |C| = {}", d.a.order(), d.b_order, d.c_order)
                    }
                    Classification::AlmostSimpleSandwich { m1_order, m2_order } => {
                        format!("|M1| = {m1_order}, |M2| = {m2_order}")
                    }
                    Classification::Unclassifiable => String::new(),
                };
                println!("{} {detail}", c.branch());
            }
            Err(FrobError::Connected) => println!("connected prime graph; no branch applies"),
            Err(e) => return Err(e.into()),
        },
        Command::Zsigmondy { q, n } => {
            match zsigmondy(&q, n)? {
                Some(p) => println!("{p}"),
                None => println!("none"),
            }
            let all: Vec<String> = primitive_prime_divisors(&q, n)?.iter().map(|p| p.to_string()).collect();
            println!("primitive prime divisors: {{{}}}", all.join(","));
        }
        Command::Verify { what } => {
            return Ok(match what {
                VerifyWhat::Tables { table, bounds } => {
                    let b = ParamBounds::from(bounds);
                    match table {
                        Some(4) => {
                            let groups = CorpusGroups::load(&["M11", "M12", "J2"])?;
                            print_checks(&verify_table4(&groups)?, Vec::new(), b)
                        }
                        Some(t) => print_checks(&verify_lie_tables(&[t], &b)?, not_exercised_rows(&[t], &b)?, b),
                        None => {
                            let mut checks = verify_lie_tables(&[1, 2, 3], &b)?;
                            let groups = CorpusGroups::load(&["M11", "M12", "J2"])?;
                            checks.extend(verify_table4(&groups)?);
                            print_checks(&checks, not_exercised_rows(&[1, 2, 3], &b)?, b)
                        }
                    }
                }
                VerifyWhat::Cases => {
                    let groups = CorpusGroups::load(&CASE_GROUPS[..4])?;
                    print_checks(&verify_cases(&ScanLimits::default(), &groups)?, Vec::new(), ParamBounds::default())
                }
                VerifyWhat::Corpus => {
                    let groups = CorpusGroups::load_all()?;
                    print_checks(&verify_corpus(&groups), Vec::new(), ParamBounds::default())
                }
            });
        }
        Command::Report { out, json, bounds } => {
            let report = full_report(&bounds.into())?;
            let body = if json { report.to_json() + "\n" } else { report.to_text() };
            fs::write(&out, body).with_context(|| format!("writing {}", out.display()))?;
            for st in &report.summary.steps {
                println!(
                    "{}: {} checks, {} contradictions, {} discrepancies",
                    st.section.as_str(),
                    st.checks,
                    st.contradictions,
                    st.discrepancies
                );
            }
            return Ok(exit_for(&report));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_valid() {
        Cli::command().debug_assert();
    }

    #[test]
    fn rejects_table_five() {
        assert!(Cli::try_parse_from(["ordertype", "verify", "tables", "--table", "5"]).is_err());
    }

    #[test]
    fn unknown_group_is_an_error() {
        assert!(load_group("no-such-group").is_err());
    }

    #[test]
    fn empty_grid_is_allowed() {
        let cli = Cli::try_parse_from(["ordertype", "verify", "tables", "--qmax", "1"]).unwrap();
        let Command::Verify { what: VerifyWhat::Tables { bounds, .. } } = cli.command else { panic!() };
        assert_eq!(ParamBounds::from(bounds).q_max, 1);
    }
}
