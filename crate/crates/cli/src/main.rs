use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lattice_area::combinatorics::g_compositions;
use lattice_area::oracle::brute_force_distribution_square_with_limit;
use lattice_area::spectral::{
    cluster_b_compositions, cluster_b_logseries, general_z, kreft_z, secular_det_coeffs,
    secular_polynomial, trace_identity_check, z_series, RationalFlux, SpectralFunctions,
};
use lattice_area::square::{
    area_distribution_square, count_closed_paths_square, levy_comparison, sup_error,
};
use lattice_area::triangular::triangular_distribution_with_limit;
use lattice_area::Error;
use num_complex::Complex64;
use serde_json::{json, Value};

mod output;
mod verify;

use output::{Format, Meta, Report};

const FORMULA_CAP: u32 = 24;
const WALK_CAP: u32 = 30;
const TRIANGULAR_CAP: u32 = 15;
const CHECK_TOLERANCE: f64 = 1e-9;

const EXIT_VALIDATION: u8 = 1;
const EXIT_NUMERIC: u8 = 2;
const EXIT_USAGE: u8 = 64;

/// Exact counts of closed lattice paths by algebraic area.
#[derive(Debug, Parser)]
#[command(name = "lattice-area", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Debug, Args)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Worker threads for the parallel reductions.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    workers: Option<u32>,
    /// Lift the default length caps.
    #[arg(long, global = true)]
    force: bool,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Square-lattice distribution from the composition formula.
    EnumerateSquare {
        #[arg(long)]
        n: u32,
        /// Report only this area.
        #[arg(long, allow_negative_numbers = true)]
        area: Option<i64>,
    },
    /// Square-lattice distribution from the walk counter.
    OracleSquare {
        #[arg(long)]
        n: u32,
    },
    /// Chiral triangular-lattice distribution from trace extraction.
    EnumerateTriangular {
        #[arg(long)]
        n: u32,
    },
    /// Compositions (or g-compositions) of n with their coefficients.
    Compositions {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        g: u32,
    },
    /// Spectral consistency checks at flux p/q.
    Spectral {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long, value_enum)]
        check: SpectralCheck,
        /// Exclusion order: 2 for the square lattice, 3 for the triangular one.
        #[arg(long, default_value_t = 2)]
        g: u32,
    },
    /// Scaled distribution against the continuum area law.
    Levy {
        #[arg(long)]
        n: u32,
    },
    /// Run invariant suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpectralCheck {
    Kreft,
    Cluster,
    Trace,
    Secular,
}

enum Failure {
    /// Rejected parameter values; exit 1.
    Invalid(String),
    Library(Error),
    /// The report is still emitted, then the process exits with 1.
    Check(Report),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(m) | Error::InvalidInput(m) => Failure::Invalid(m),
            other => Failure::Library(other),
        }
    }
}

fn cap(n: u32, limit: u32, force: bool, what: &str) -> Result<(), Failure> {
    if n > limit && !force {
        return Err(Failure::Library(Error::ResourceLimit(format!(
            "{what} capped at n = {limit} (pass --force to override), asked for {n}"
        ))));
    }
    Ok(())
}

fn status(pass: bool, report: Report) -> Result<Report, Failure> {
    if pass {
        Ok(report)
    } else {
        Err(Failure::Check(report))
    }
}

fn c_json(z: Complex64) -> Value {
    json!({"re": z.re, "im": z.im})
}

fn enumerate_square(n: u32, area: Option<i64>, g: &Global) -> Result<Report, Failure> {
    cap(n, FORMULA_CAP, g.force, "formula evaluation")?;
    let meta = Meta::new(Some(n), "square").flag("force", g.force);
    match area {
        Some(a) => {
            let count = count_closed_paths_square(n, a)?;
            let meta = meta.flag("area", a);
            Ok(Report::new(
                meta,
                json!({"area": a, "count": count.to_string()}),
                &["area", "count"],
                vec![vec![a.to_string(), count.to_string()]],
            ))
        }
        None => Ok(Report::distribution(meta, &area_distribution_square(n)?)),
    }
}

fn oracle_square(n: u32, g: &Global) -> Result<Report, Failure> {
    cap(n, WALK_CAP, g.force, "walk counter")?;
    let dist = brute_force_distribution_square_with_limit(n, n.max(WALK_CAP))?;
    Ok(Report::distribution(Meta::new(Some(n), "square").flag("force", g.force), &dist))
}

fn enumerate_triangular(n: u32, g: &Global) -> Result<Report, Failure> {
    cap(n, TRIANGULAR_CAP, g.force, "triangular enumeration")?;
    let dist = triangular_distribution_with_limit(n, n.max(TRIANGULAR_CAP))?;
    Ok(Report::distribution(Meta::new(Some(n), "triangular").flag("force", g.force), &dist))
}

fn list_compositions(n: u32, excl: u32, g: &Global) -> Result<Report, Failure> {
    if n == 0 || n > 20 {
        return Err(Failure::Invalid(format!("--n must be in 1..=20, got {n}")));
    }
    let stream = g_compositions(n, excl)?;
    if stream.len() > 1 << 20 && !g.force {
        return Err(Failure::Library(Error::ResourceLimit(format!(
            "{} items (pass --force to list them)",
            stream.len()
        ))));
    }
    let items: Vec<(Vec<u32>, String)> =
        stream.map(|c| (c.parts().to_vec(), c.coeff().to_string())).collect();
    let rows = items
        .iter()
        .map(|(p, c)| {
            let parts: Vec<String> = p.iter().map(u32::to_string).collect();
            vec![parts.join(" "), c.clone()]
        })
        .collect();
    let body = json!({
        "g": excl,
        "compositions": items.iter().map(|(p, c)| json!({"parts": p, "coeff": c})).collect::<Vec<_>>(),
    });
    let meta = Meta::new(Some(n), "none").flag("g", excl);
    Ok(Report::new(meta, body, &["parts", "coeff"], rows))
}

fn lattice_tables(flux: RationalFlux, excl: u32) -> Result<(&'static str, SpectralFunctions), Failure> {
    match excl {
        2 => Ok(("square", SpectralFunctions::hofstadter(flux))),
        3 => Ok(("triangular", SpectralFunctions::triangular(flux))),
        other => Err(Failure::Invalid(format!(
            "--g {other}: only 2 (square) and 3 (triangular) have lattice tables"
        ))),
    }
}

fn spectral(p: u32, q: u32, check: SpectralCheck, excl: u32) -> Result<Report, Failure> {
    let flux = RationalFlux::new(p, q)?;
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    let mut pass = true;
    let (lattice, header): (&str, &[&str]) = match check {
        SpectralCheck::Kreft => {
            for (kx, ky) in [(0.0, 0.0), (0.7, 1.3)] {
                let d = secular_det_coeffs(flux, kx, ky);
                for n in 0..=((q - 1) / 2) {
                    let z = kreft_z(n, flux)?;
                    let expected = if n % 2 == 0 { z } else { -z };
                    let coeff = d[2 * n as usize];
                    let gap = (coeff - expected).norm();
                    pass &= gap < CHECK_TOLERANCE;
                    rows.push(vec![kx.to_string(), ky.to_string(), n.to_string(), z.to_string(), coeff.re.to_string(), gap.to_string()]);
                    entries.push(json!({"kx": kx, "ky": ky, "n": n, "z": z, "coefficient": c_json(coeff), "gap": gap}));
                }
            }
            ("square", &["kx", "ky", "n", "z", "coefficient", "gap"])
        }
        SpectralCheck::Cluster => {
            let (lattice, sf) = lattice_tables(flux, excl)?;
            let s = sf.s_table();
            let n_max = ((q + excl - 1) / excl).min(8);
            let z = z_series(n_max, &s, excl)?;
            for n in 1..=n_max {
                let a = cluster_b_logseries(n, &z)?;
                let b = cluster_b_compositions(n, &s, excl)?;
                let rel = (a - b).norm() / a.norm().max(f64::MIN_POSITIVE);
                pass &= rel < 1e-10;
                rows.push(vec![n.to_string(), b.re.to_string(), a.re.to_string(), rel.to_string()]);
                entries.push(json!({"n": n, "b_compositions": c_json(b), "b_logseries": c_json(a), "relative_gap": rel}));
            }
            (lattice, &["n", "b_compositions", "b_logseries", "relative_gap"])
        }
        SpectralCheck::Trace => {
            if q < 3 {
                return Err(Failure::Invalid("trace identity needs q >= 3".into()));
            }
            for n in 1..=((q - 1) / 2) {
                let t = trace_identity_check(n, flux)?;
                pass &= t.gap() < CHECK_TOLERANCE;
                rows.push(vec![n.to_string(), t.lhs.re.to_string(), t.rhs.to_string(), t.gap().to_string()]);
                entries.push(json!({"n": n, "lhs": c_json(t.lhs), "rhs": t.rhs, "gap": t.gap()}));
            }
            ("square", &["n", "lhs", "rhs", "gap"])
        }
        SpectralCheck::Secular => {
            let (lattice, sf) = lattice_tables(flux, excl)?;
            let sf = sf.without_umklapp();
            let det = secular_polynomial(&sf)?;
            let s = sf.s_table();
            for (m, coeff) in det.iter().enumerate() {
                let expected = if m as u32 % excl == 0 {
                    let n = m as u32 / excl;
                    let z = general_z(n, &s, excl)?;
                    if n % 2 == 0 { z } else { -z }
                } else {
                    Complex64::new(0.0, 0.0)
                };
                let gap = (coeff - expected).norm();
                pass &= gap < CHECK_TOLERANCE * expected.norm().max(1.0);
                rows.push(vec![m.to_string(), coeff.re.to_string(), expected.re.to_string(), gap.to_string()]);
                entries.push(json!({"order": m, "coefficient": c_json(*coeff), "expected": c_json(expected), "gap": gap}));
            }
            (lattice, &["order", "coefficient", "expected", "gap"])
        }
    };
    let check_name = format!("{check:?}").to_lowercase();
    let meta = Meta::new(None, lattice)
        .flag("p", p)
        .flag("q", q)
        .flag("g", excl)
        .flag("check", check_name);
    let body = json!({"pass": pass, "rows": entries});
    status(pass, Report::new(meta, body, header, rows))
}

fn levy(n: u32, g: &Global) -> Result<Report, Failure> {
    cap(n, WALK_CAP, g.force, "walk counter")?;
    let dist = if n <= FORMULA_CAP {
        area_distribution_square(n)?
    } else {
        brute_force_distribution_square_with_limit(n, n)?
    };
    let table = levy_comparison(&dist)?;
    let rows = table
        .iter()
        .map(|r| vec![r.area.to_string(), r.scaled.to_string(), r.levy.to_string(), r.abs_error.to_string()])
        .collect();
    let body = json!({
        "sup_error": sup_error(&table),
        "rows": table.iter().map(|r| json!({"area": r.area, "scaled": r.scaled, "levy": r.levy, "abs_error": r.abs_error})).collect::<Vec<_>>(),
    });
    let meta = Meta::new(Some(n), "square").flag("force", g.force);
    Ok(Report::new(meta, body, &["area", "scaled", "levy", "abs_error"], rows))
}

fn verify_suites(suite: &str) -> Result<Report, Failure> {
    let names: Vec<&str> = if suite == "all" { verify::SUITES.to_vec() } else { vec![suite] };
    let mut rows = Vec::new();
    let mut suites = Vec::new();
    let mut all_pass = true;
    for name in names {
        eprintln!("verify: running {name}");
        let checks = verify::run_suite(name)?;
        let pass = checks.iter().all(|c| c.pass);
        all_pass &= pass;
        for c in &checks {
            rows.push(vec![name.to_string(), c.label.clone(), if c.pass { "pass" } else { "fail" }.into()]);
        }
        suites.push(json!({
            "name": name,
            "pass": pass,
            "checks": checks.iter().map(|c| json!({"label": c.label, "pass": c.pass})).collect::<Vec<_>>(),
        }));
    }
    let meta = Meta::new(None, "all").flag("suite", suite);
    let body = json!({"pass": all_pass, "suites": suites});
    status(all_pass, Report::new(meta, body, &["suite", "check", "result"], rows))
}

fn dispatch(cli: &Cli) -> Result<Report, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::EnumerateSquare { n, area } => enumerate_square(*n, *area, g),
        Command::OracleSquare { n } => oracle_square(*n, g),
        Command::EnumerateTriangular { n } => enumerate_triangular(*n, g),
        Command::Compositions { n, g: excl } => list_compositions(*n, *excl, g),
        Command::Spectral { p, q, check, g: excl } => spectral(*p, *q, *check, *excl),
        Command::Levy { n } => levy(*n, g),
        Command::Verify { suite } => verify_suites(suite),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(k) = cli.global.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k as usize).build_global() {
            eprintln!("error: could not start {k} workers: {e}");
            return ExitCode::from(EXIT_NUMERIC);
        }
    }
    let emit = |report: &Report| {
        report.emit(cli.global.format, cli.global.out.as_deref()).map_err(|e| {
            eprintln!("error: writing report: {e}");
        })
    };
    match dispatch(&cli) {
        Ok(report) => match emit(&report) {
            Ok(()) => ExitCode::SUCCESS,
            Err(()) => ExitCode::from(EXIT_NUMERIC),
        },
        Err(Failure::Check(report)) => {
            let _ = emit(&report);
            eprintln!("check failed");
            ExitCode::from(EXIT_VALIDATION)
        }
        Err(Failure::Invalid(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_VALIDATION)
        }
        Err(Failure::Library(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_NUMERIC)
        }
    }
}
