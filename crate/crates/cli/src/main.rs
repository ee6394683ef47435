//! Command-line front end for the decomposition engine: every capability as
//! a subcommand, with deterministic table, JSON, and CSV output.

mod output;
mod surfaces;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hilbmotive::motive::{chow_dims_hilb, hilb_decomposition, hodge_hilb, poincare_hilb};
use hilbmotive::partition::{orbit_bijection_check, Partition};
use hilbmotive::projector::{
    build_block_realization, fiber_action_check, support_ledger, verify_completeness,
    verify_projector_algebra, FiberCase,
};
use hilbmotive::series::{goettsche_series, motivic_monomial_expansion, two_path_check};
use hilbmotive::surface::SurfaceDescriptor;

use output::{input_digest, render, Envelope, Format, Table};

/// Most commands scale comfortably far beyond this; the cap exists so a typo
/// cannot wedge a terminal.
const GENERAL_CAP: usize = 30;
/// The verification suite walks Bell-number-sized sets, so it gets a lower
/// default.
const VERIFY_CAP: usize = 12;

#[derive(Parser)]
#[command(
    name = "hilbmotive",
    version,
    about = "Exact decompositions of Hilbert schemes of points on surfaces"
)]
struct Cli {
    /// Output format for the payload
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,
    /// Override the size guardrail
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Run independent checks on worker threads (output is unchanged)
    #[arg(long, global = true)]
    parallel: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the partitions of n with their combinatorial invariants
    Partitions {
        n: usize,
    },
    /// Print the term-by-term decomposition of the Hilbert scheme of n points
    Decompose {
        n: usize,
    },
    /// Poincaré polynomial of the Hilbert scheme of n points
    Poincare {
        n: usize,
        /// Built-in surface name or path to a descriptor file
        #[arg(long)]
        surface: String,
        /// Also confirm the result against the generating series
        #[arg(long)]
        check: bool,
    },
    /// Hodge numbers of the Hilbert scheme of n points
    Hodge {
        n: usize,
        #[arg(long)]
        surface: String,
        /// Also confirm that collapsing the Hodge table gives the Poincaré polynomial
        #[arg(long)]
        check: bool,
    },
    /// Chow-group ranks of the Hilbert scheme of n points (cellular surfaces)
    Chow {
        n: usize,
        #[arg(long)]
        surface: String,
        /// Also confirm ranks against even Betti numbers
        #[arg(long)]
        check: bool,
    },
    /// Coefficients of the generating series up to q^order
    Series {
        #[arg(long)]
        surface: String,
        #[arg(long)]
        order: usize,
        /// Also check the series against the decomposition, order by order
        #[arg(long)]
        verify: bool,
    },
    /// Run the verification suite at weight n
    Verify {
        n: usize,
        /// Additionally realize the projectors on block matrices over this surface
        #[arg(long)]
        surface: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn guard(what: &str, value: usize, cap_override: Option<usize>, default: usize) -> anyhow::Result<()> {
    let cap = cap_override.unwrap_or(default);
    anyhow::ensure!(
        value <= cap,
        "{what} = {value} exceeds the cap of {cap}; raise it explicitly with --cap"
    );
    Ok(())
}

fn emit(cli: &Cli, echo: &str, surface_json: Option<&str>, table: &Table) {
    let digest = input_digest(echo, surface_json);
    let envelope = Envelope {
        schema_version: "1",
        command: echo,
        engine_version: hilbmotive::ENGINE_VERSION,
        input_digest: &digest,
        format: cli.format.name(),
        payload: table,
    };
    print!("{}", render(cli.format, &envelope));
}

fn canonical_json(surface: &SurfaceDescriptor) -> String {
    serde_json::to_string(surface).expect("descriptors serialize")
}

/// Runs the requested command; `Ok(false)` means a requested check failed.
fn run(cli: &Cli) -> anyhow::Result<bool> {
    match &cli.command {
        Command::Partitions { n } => {
            guard("n", *n, cli.cap, GENERAL_CAP)?;
            let mut table = Table::new(&[
                "parts",
                "length",
                "m",
                "sigma_order",
                "dim_sym_stratum",
                "dim_hilb_stratum",
            ]);
            for nu in Partition::enumerate(*n) {
                let (dim_sym, dim_hilb) = nu.stratum_dims();
                table.push(vec![
                    nu.to_string(),
                    nu.len().to_string(),
                    nu.m_coeff().to_string(),
                    nu.multiplicities().sigma_order().to_string(),
                    dim_sym.to_string(),
                    dim_hilb.to_string(),
                ]);
            }
            emit(cli, &format!("partitions n={n}"), None, &table);
            Ok(true)
        }

        Command::Decompose { n } => {
            guard("n", *n, cli.cap, GENERAL_CAP)?;
            let mut table = Table::new(&["nu", "factors", "twist", "shift"]);
            for term in &hilb_decomposition(*n).terms {
                table.push(vec![
                    term.nu.to_string(),
                    term.factors_display(),
                    term.twist.to_string(),
                    term.shift.to_string(),
                ]);
            }
            emit(cli, &format!("decompose n={n}"), None, &table);
            Ok(true)
        }

        Command::Poincare { n, surface, check } => {
            guard("n", *n, cli.cap, GENERAL_CAP)?;
            let s = surfaces::resolve(surface)?;
            let poly = poincare_hilb(&s, *n);
            let mut table = Table::new(&["degree", "dim"]);
            for (degree, dim) in poly.iter() {
                table.push(vec![degree.to_string(), dim.to_string()]);
            }
            let echo = format!("poincare surface={} n={n}", s.name);
            emit(cli, &echo, Some(&canonical_json(&s)), &table);
            if *check {
                let report = two_path_check(&s, *n);
                if !report.passed {
                    eprintln!(
                        "check failed: series and decomposition disagree: {:?}",
                        report.first_mismatch
                    );
                    return Ok(false);
                }
                eprintln!("check: series agrees with the decomposition up to q^{n}");
            }
            Ok(true)
        }

        Command::Hodge { n, surface, check } => {
            guard("n", *n, cli.cap, GENERAL_CAP)?;
            let s = surfaces::resolve(surface)?;
            let hodge = hodge_hilb(&s, *n)?;
            let mut table = Table::new(&["p", "q", "dim"]);
            for ((p, q), dim) in hodge.iter() {
                table.push(vec![p.to_string(), q.to_string(), dim.to_string()]);
            }
            let echo = format!("hodge surface={} n={n}", s.name);
            emit(cli, &echo, Some(&canonical_json(&s)), &table);
            if *check {
                if hodge.collapse() != poincare_hilb(&s, *n) {
                    eprintln!("check failed: Hodge table does not collapse to the Poincaré polynomial");
                    return Ok(false);
                }
                eprintln!("check: Hodge table collapses to the Poincaré polynomial");
            }
            Ok(true)
        }

        Command::Chow { n, surface, check } => {
            guard("n", *n, cli.cap, GENERAL_CAP)?;
            let s = surfaces::resolve(surface)?;
            let chow = chow_dims_hilb(&s, *n)?;
            let mut table = Table::new(&["dimension", "rank"]);
            for (k, rank) in chow.iter() {
                table.push(vec![k.to_string(), rank.to_string()]);
            }
            let echo = format!("chow surface={} n={n}", s.name);
            emit(cli, &echo, Some(&canonical_json(&s)), &table);
            if *check {
                let poincare = poincare_hilb(&s, *n);
                let ok = (0..=2 * n).all(|k| chow.get(k) == poincare.get(2 * k));
                if !ok {
                    eprintln!("check failed: Chow ranks differ from even Betti numbers");
                    return Ok(false);
                }
                eprintln!("check: Chow ranks equal the even Betti numbers");
            }
            Ok(true)
        }

        Command::Series { surface, order, verify } => {
            guard("order", *order, cli.cap, GENERAL_CAP)?;
            let s = surfaces::resolve(surface)?;
            let series = goettsche_series(&s, *order);
            let mut table = Table::new(&["q_power", "coefficient"]);
            for k in 0..=*order {
                table.push(vec![k.to_string(), series.coeff(k).to_string()]);
            }
            let echo = format!("series surface={} order={order}", s.name);
            emit(cli, &echo, Some(&canonical_json(&s)), &table);
            if *verify {
                let report = two_path_check(&s, *order);
                if !report.passed {
                    eprintln!(
                        "verification failed: series and decomposition disagree: {:?}",
                        report.first_mismatch
                    );
                    return Ok(false);
                }
                let ns: Vec<usize> = (0..=*order).collect();
                let expansion_ok = maybe_parallel(cli.parallel, &ns, |&n| {
                    motivic_monomial_expansion(n).matches_decomposition(&hilb_decomposition(n))
                });
                if let Some(bad) = expansion_ok.iter().position(|ok| !ok) {
                    eprintln!("verification failed: product expansion differs from the decomposition at n={bad}");
                    return Ok(false);
                }
                eprintln!("verify: two-path identity and product expansion hold up to q^{order}");
            }
            Ok(true)
        }

        Command::Verify { n, surface } => {
            guard("n", *n, cli.cap, VERIFY_CAP)?;
            let resolved = surface.as_deref().map(surfaces::resolve).transpose()?;
            let mut table = Table::new(&["check", "scope", "status", "detail"]);
            let mut all_ok = true;
            let push = |table: &mut Table, check: &str, scope: String, ok: bool, detail: String| {
                table.push(vec![
                    check.to_string(),
                    scope,
                    if ok { "pass".into() } else { "FAIL".into() },
                    detail,
                ]);
                ok
            };

            let algebra = verify_projector_algebra(*n);
            all_ok &= push(
                &mut table,
                "projector_algebra",
                format!("n={n}"),
                algebra.passed,
                if algebra.passed {
                    format!("{} identities hold", algebra.checks)
                } else {
                    format!("failed: {}", algebra.failures.join("; "))
                },
            );

            let mus = Partition::enumerate(*n);
            let orbit_reports = maybe_parallel(cli.parallel, &mus, orbit_bijection_check);
            for report in &orbit_reports {
                all_ok &= push(
                    &mut table,
                    "orbit_bijection",
                    format!("mu={}", report.mu),
                    report.holds,
                    format!("{} multipartitions round-trip", report.witnesses.len()),
                );
            }

            let ledger = support_ledger(*n);
            all_ok &= push(
                &mut table,
                "support_ledger",
                format!("n={n}"),
                ledger.consistent && ledger.sign_feasible,
                format!(
                    "{} unknowns, {} constraints, {} free; witness consistent with signs",
                    ledger.unknowns,
                    ledger.constraints.len(),
                    ledger.free_off_diagonal
                ),
            );

            if let Some(s) = &resolved {
                let realization = build_block_realization(s, *n)?;
                let completeness = verify_completeness(&realization);
                all_ok &= push(
                    &mut table,
                    "completeness",
                    format!("surface={} n={n}", s.name),
                    completeness.passed,
                    format!(
                        "dim {} = rank sum {}; graded ranks match",
                        completeness.total_dim, completeness.rank_sum
                    ),
                );

                let pairs: Vec<(Partition, Partition)> = mus
                    .iter()
                    .flat_map(|nu| mus.iter().map(move |mu| (nu.clone(), mu.clone())))
                    .collect();
                let fiber_reports = maybe_parallel(cli.parallel, &pairs, |(nu, mu)| {
                    fiber_action_check(&realization, nu, mu).expect("point classes exist")
                });
                let fiber_ok = fiber_reports.iter().all(|r| r.passed);
                let derived = fiber_reports
                    .iter()
                    .filter(|r| r.case == FiberCase::ModelDerived)
                    .count();
                all_ok &= push(
                    &mut table,
                    "fiber_action",
                    format!("surface={} n={n}", s.name),
                    fiber_ok,
                    format!(
                        "{} ordered pairs ({derived} strict refinements from the model)",
                        fiber_reports.len()
                    ),
                );
            }

            let echo = match &resolved {
                Some(s) => format!("verify n={n} surface={}", s.name),
                None => format!("verify n={n}"),
            };
            let json = resolved.as_ref().map(canonical_json);
            emit(cli, &echo, json.as_deref(), &table);
            Ok(all_ok)
        }
    }
}

/// Maps a checking function over items, on worker threads when asked; the
/// result order always matches the input order.
fn maybe_parallel<T, R, F>(parallel: bool, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    if parallel {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    } else {
        items.iter().map(f).collect()
    }
}
