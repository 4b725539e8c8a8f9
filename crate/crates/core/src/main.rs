use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use newton_spectrum::constructions::{
    extended_family, first_jump_diagram, pkp_family, sigma_convex, small_p_family,
    staircase_brackets, NamedDeformation,
};
use newton_spectrum::dsl::parse_diagram;
use newton_spectrum::io::{
    oracle_envelope, report_envelope, sweep_csv, to_pretty_json, verify_json, SweepRow,
};
use newton_spectrum::oracle::{
    attainable_spectrum, verify, Budget, EnumerationConstraints, OracleError, VerifyStatus,
};
use newton_spectrum::predictor::{predicted_report, Applicability, SqhParams};
use newton_spectrum::{intervals_from_sorted, Diagram, Error};

#[derive(Parser)]
#[command(
    name = "newton-spectrum",
    version,
    about = "Newton numbers, deformation families, and attainable spectra of plane Newton diagrams"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one diagram: canonical form, terms, area, newton number
    Newton {
        /// Vertex list "(0,6) (3,1) (4,0)" or terms "tr(3,5) + tr(1,1) @ (0,6)"
        spec: String,
    },
    /// Predicted attainable spectrum and gaps for deformations of x^p + y^q
    Report {
        p: i64,
        q: i64,
        #[arg(long, conflicts_with = "text")]
        json: bool,
        #[arg(long)]
        text: bool,
    },
    /// Enumerate all deformations of tr(p, q) and the attained newton numbers
    Oracle {
        p: i64,
        q: i64,
        /// Minimum total degree x + y required of every vertex
        #[arg(long = "min-degree", default_value_t = 2)]
        min_degree: i64,
        #[arg(long)]
        json: bool,
    },
    /// Check the prediction against enumeration; exits 1 when it fails
    Verify {
        p: i64,
        q: i64,
        #[arg(long)]
        json: bool,
    },
    /// Print a deformation family catalog
    Family {
        label: FamilyKind,
        p: i64,
        q: i64,
        /// Catalog level for pkp and small-p; all admissible levels if omitted
        #[arg(long)]
        kappa: Option<i64>,
    },
    /// Verify every pair 2 <= p <= pmax, p <= q <= qmax into a CSV
    Sweep {
        #[arg(long)]
        pmax: i64,
        #[arg(long)]
        qmax: i64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    #[value(name = "eq-3.1")]
    FirstJump,
    Staircase,
    Sigma,
    Extended,
    Pkp,
    #[value(name = "small-p")]
    SmallP,
}

fn main() -> ExitCode {
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    env_logger::init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match &e {
                Error::Oracle(OracleError::BudgetExceeded { .. }) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Newton { spec } => cmd_newton(&spec),
        Command::Report { p, q, json, .. } => cmd_report(p, q, json),
        Command::Oracle {
            p,
            q,
            min_degree,
            json,
        } => cmd_oracle(p, q, min_degree, json),
        Command::Verify { p, q, json } => cmd_verify(p, q, json),
        Command::Family { label, p, q, kappa } => cmd_family(label, p, q, kappa),
        Command::Sweep { pmax, qmax, out } => cmd_sweep(pmax, qmax, &out),
    }
}

fn fmt_intervals(intervals: &[(i64, i64)]) -> String {
    if intervals.is_empty() {
        return "(none)".to_string();
    }
    intervals
        .iter()
        .map(|&(lo, hi)| {
            if lo == hi {
                lo.to_string()
            } else {
                format!("{lo}..{hi}")
            }
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn fmt_values(values: &[i64]) -> String {
    if values.is_empty() {
        return "(none)".to_string();
    }
    values
        .iter()
        .map(i64::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn cmd_newton(spec: &str) -> Result<ExitCode, Error> {
    let d = parse_diagram(spec)?;
    println!("diagram: {d}");
    if let Some(terms) = d.term_form() {
        println!("terms: {terms}");
    }
    match d.intercepts() {
        Some((a, b)) => {
            println!("intercepts: a = {a}, b = {b}");
            println!("twice area under: {}", d.twice_area_under()?);
            match d.newton_number() {
                Ok(nu) => println!("newton number: {nu}"),
                Err(_) => println!("newton number: undefined (needs positive intercepts)"),
            }
        }
        None => println!("not convenient: intercepts, area and newton number undefined"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_report(p: i64, q: i64, json: bool) -> Result<ExitCode, Error> {
    let report = predicted_report(p, q)?;
    if json {
        println!("{}", to_pretty_json(&report_envelope(&report)));
        return Ok(ExitCode::SUCCESS);
    }
    let SqhParams { k, r, m, .. } = report.params;
    println!("prediction for deformations of x^{p} + y^{q}");
    println!("params: p = {p}, q = {q}, k = {k}, r = {r}, m = {m}");
    println!("mu = {}, mu_pkp = {}", report.mu, report.mu_pkp);
    println!(
        "applicability: {} (construction backed: {})",
        report.applicability.as_str(),
        if report.construction_backed {
            "yes"
        } else {
            "no"
        }
    );
    if report.applicability == Applicability::OracleOnly {
        println!("no closed-form claims for this pair; run the oracle");
        return Ok(ExitCode::SUCCESS);
    }
    println!(
        "guaranteed attainable: {}",
        fmt_intervals(&report.guaranteed)
    );
    if report.possible_gaps.is_empty() {
        println!("possible gaps: (none)");
    } else {
        println!("possible gaps:");
        for g in &report.possible_gaps {
            println!(
                "  {:>6}  {}{}",
                g.value,
                g.case,
                if g.definitive { " (definitive)" } else { "" }
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle(p: i64, q: i64, min_degree: i64, json: bool) -> Result<ExitCode, Error> {
    let params = SqhParams::new(p, q)?;
    let constraints = EnumerationConstraints {
        min_total_degree: min_degree,
        ..EnumerationConstraints::default()
    };
    let spectrum = attainable_spectrum(p, q, &constraints)?;
    if json {
        println!("{}", to_pretty_json(&oracle_envelope(params, &spectrum)));
        return Ok(ExitCode::SUCCESS);
    }
    let mu = (p - 1) * (q - 1);
    let attained: Vec<i64> = spectrum.attainable.iter().copied().collect();
    let missing: Vec<i64> = (1..=mu)
        .filter(|v| !spectrum.attainable.contains(v))
        .collect();
    println!("enumeration for deformations of x^{p} + y^{q} (min degree {min_degree})");
    println!(
        "attainable: {}",
        fmt_intervals(&intervals_from_sorted(attained))
    );
    println!("gaps below mu = {mu}: {}", fmt_values(&missing));
    println!("witnesses:");
    for (nu, d) in spectrum.witnesses.iter().rev() {
        match d.term_form() {
            Some(t) => println!("  {nu:>6}  {d}  =  {t}"),
            None => println!("  {nu:>6}  {d}"),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(p: i64, q: i64, json: bool) -> Result<ExitCode, Error> {
    let report = verify(p, q)?;
    if json {
        println!("{}", to_pretty_json(&verify_json(&report)));
    } else {
        println!("verification for deformations of x^{p} + y^{q}");
        println!(
            "predicted guaranteed: {}",
            fmt_intervals(&report.predicted.guaranteed)
        );
        let attained: Vec<i64> = report.observed.attainable.iter().copied().collect();
        println!(
            "observed attainable: {}",
            fmt_intervals(&intervals_from_sorted(attained))
        );
        println!(
            "missing guaranteed: {}",
            fmt_values(&report.missing_guaranteed)
        );
        println!("closed gaps: {}", fmt_values(&report.closed_gaps));
        println!("status: {}", report.status.as_str());
    }
    Ok(match report.status {
        VerifyStatus::Pass => ExitCode::SUCCESS,
        VerifyStatus::Fail => ExitCode::from(1),
    })
}

fn print_deformation(item: &NamedDeformation) {
    let nu = item
        .diagram
        .newton_number()
        .map(|v| v.to_string())
        .unwrap_or_else(|_| "undefined".to_string());
    let claim = match item.claimed_nu {
        Some(c) => format!(" (claimed {c})"),
        None => String::new(),
    };
    match item.diagram.term_form() {
        Some(t) => println!(
            "  {}: {}  =  {}  nu = {nu}{claim}",
            item.label, item.diagram, t
        ),
        None => println!("  {}: {}  nu = {nu}{claim}", item.label, item.diagram),
    }
}

fn print_catalog(base: &Diagram, items: &[NamedDeformation]) -> Result<(), Error> {
    println!("base {}: nu = {}", base, base.newton_number()?);
    for item in items {
        print_deformation(item);
    }
    Ok(())
}

fn cmd_family(label: FamilyKind, p: i64, q: i64, kappa: Option<i64>) -> Result<ExitCode, Error> {
    let base = Diagram::segment(p, q)?;
    match label {
        FamilyKind::FirstJump => {
            let params = SqhParams::new(p, q)?;
            print_catalog(&base, &[first_jump_diagram(&params)?])?;
        }
        FamilyKind::Staircase => {
            let params = SqhParams::new(p, q)?;
            print_catalog(&base, &staircase_brackets(&params)?)?;
        }
        FamilyKind::Sigma => {
            let (d, reversed) = sigma_convex(p, q)?;
            println!("base {}: nu = {}", base, base.newton_number()?);
            println!(
                "  sigma[{}]: {}  =  {}  nu = {}",
                if reversed { "reversed" } else { "listed" },
                d,
                d.term_form().unwrap_or_default(),
                d.newton_number()?
            );
        }
        FamilyKind::Extended => {
            let params = SqhParams::new(p, q)?;
            for step in extended_family(&params)? {
                println!("offset {}:", step.offset);
                print_catalog(&step.base, &step.brackets)?;
            }
        }
        FamilyKind::Pkp => {
            let params = SqhParams::new(p, q)?;
            if params.r != 0 {
                return Err(Error::Family(
                    newton_spectrum::constructions::FamilyError::OutOfRange(format!(
                        "the pkp catalog needs q divisible by p, got ({p}, {q})"
                    )),
                ));
            }
            let k = params.k;
            let levels: Vec<i64> = match kappa {
                Some(x) => vec![x],
                None => (1..=k).collect(),
            };
            println!("base {}: nu = {}", base, base.newton_number()?);
            for level in levels {
                println!("kappa = {level}:");
                for item in pkp_family(p, k, level)? {
                    print_deformation(&item);
                }
            }
        }
        FamilyKind::SmallP => {
            let params = SqhParams::new(p, q)?;
            if params.r != 0 {
                return Err(Error::Family(
                    newton_spectrum::constructions::FamilyError::OutOfRange(format!(
                        "the small-p catalog needs q divisible by p, got ({p}, {q})"
                    )),
                ));
            }
            let k = params.k;
            let levels: Vec<i64> = match kappa {
                Some(x) => vec![x],
                None if p == 2 => vec![1],
                None => (2..=k).collect(),
            };
            println!("base {}: nu = {}", base, base.newton_number()?);
            for level in levels {
                if p == 2 {
                    println!("catalog:");
                } else {
                    println!("kappa = {level}:");
                }
                for item in small_p_family(p, k, level)? {
                    print_deformation(&item);
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_sweep(pmax: i64, qmax: i64, out: &PathBuf) -> Result<ExitCode, Error> {
    let budget = Budget::default();
    if pmax > budget.max_x || qmax > budget.max_y {
        return Err(Error::Oracle(OracleError::BudgetExceeded {
            a: pmax,
            b: qmax,
            max_x: budget.max_x,
            max_y: budget.max_y,
        }));
    }
    if pmax < 2 || qmax < pmax {
        return Err(Error::Predictor(
            newton_spectrum::predictor::PredictorError::OutOfRange(pmax, qmax),
        ));
    }
    let pairs: Vec<(i64, i64)> = (2..=pmax)
        .flat_map(|p| (p..=qmax).map(move |q| (p, q)))
        .collect();
    let mut rows: Vec<SweepRow> = pairs
        .par_iter()
        .map(|&(p, q)| -> Result<SweepRow, Error> {
            let start = Instant::now();
            let report = verify(p, q)?;
            let mu = report.predicted.mu;
            let observed_gaps = (1..=mu)
                .filter(|v| !report.observed.attainable.contains(v))
                .count();
            Ok(SweepRow {
                p,
                q,
                mu,
                status: report.status,
                n_gaps_predicted: report.predicted.possible_gaps.len(),
                n_gaps_observed: observed_gaps,
                runtime_ms: start.elapsed().as_millis(),
            })
        })
        .collect::<Result<_, _>>()?;
    rows.sort_by_key(|r| (r.p, r.q));
    let all_pass = rows.iter().all(|r| r.status == VerifyStatus::Pass);
    std::fs::write(out, sweep_csv(&rows))?;
    println!(
        "wrote {} rows to {} ({})",
        rows.len(),
        out.display(),
        if all_pass {
            "all pass"
        } else {
            "FAILURES PRESENT"
        }
    );
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
