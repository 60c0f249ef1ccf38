//! Command-line front end for the virtual structure constant engine.
//!
//! Subcommands mirror the library pipelines: `hypersurface` prints constant
//! tables computed by recursion and/or iterated residues, `local` prints
//! two-point tables of local bundle geometries over a projective line,
//! `mirror` prints the flat-coordinate map and coupling of a rank-two local
//! geometry, and the two `verify-*` commands re-derive an identity and exit
//! nonzero on any mismatch.
//!
//! Exit codes: 0 success, 1 computation error or verification mismatch,
//! 2 invalid usage or parameters.  All results go to stdout as JSON (or CSV
//! where supported) and are byte-identical across reruns of the same
//! configuration; timings and diagnostics go to stderr.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use vsc_core::gauss_manin::{verify_theorem, GmError};
use vsc_core::hypersurface::{
    recursion_tables, residue_table, HypersurfaceParams, ResidueOrder, VscTable,
};
use vsc_core::local::{local_vsc_table, Bundle, ClassMode, GeometrySpec};
use vsc_core::mirror::{compute_mirror_data, QSeries};
use vsc_core::rational::Rational;
use vsc_core::SparsePoly;

// ---------------------------------------------------------------------------
// Argument definitions.

#[derive(Parser)]
#[command(
    name = "vsc",
    version,
    about = "Exact tables of virtual structure constants, local two-point functions, and mirror maps"
)]
struct Cli {
    /// Number of worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Recursion,
    Residue,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Map,
    Yukawa,
    All,
}

#[derive(Clone)]
struct BundleList(Vec<Bundle>);

#[derive(Clone, Copy)]
struct InsertionPair(u32, u32);

#[derive(Subcommand)]
enum Command {
    /// Tables of virtual structure constants of a degree-k hypersurface.
    Hypersurface {
        /// Ambient projective space is CP^{N-1}.
        #[arg(long = "N")]
        n: u32,
        /// Hypersurface degree.
        #[arg(long)]
        k: u32,
        /// Largest map degree to tabulate.
        #[arg(long)]
        dmax: u32,
        /// Which pipeline to run; `both` cross-checks them.
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
        /// Output format (CSV columns: N,k,d,n,coefficient).
        #[arg(long, value_enum, default_value_t = OutFormat::Json)]
        out: OutFormat,
    },
    /// Two-point tables of a local bundle geometry over CP^{N-1}.
    Local {
        /// Base projective space is CP^{N-1}.
        #[arg(long = "N")]
        n: u32,
        /// Comma-separated bundle list: `k:e` (Euler class), `k:t` (total
        /// Chern class), or `k:t:<param>` (total Chern class weighted by a
        /// named parameter).
        #[arg(long, value_parser = parse_bundles, allow_hyphen_values = true)]
        bundles: BundleList,
        /// Largest map degree to tabulate.
        #[arg(long)]
        dmax: u32,
        /// Single insertion pair `m,n` (defaults to all pairs with
        /// exponents below N).
        #[arg(long, value_parser = parse_insertions)]
        insertions: Option<InsertionPair>,
    },
    /// Flat-coordinate map and coupling of a rank-two local geometry.
    Mirror {
        /// Base projective space is CP^{N-1}; the pipeline requires N = 2.
        #[arg(long = "N")]
        n: u32,
        /// Comma-separated bundle list (same grammar as `local`).
        #[arg(long, value_parser = parse_bundles, allow_hyphen_values = true)]
        bundles: BundleList,
        /// Series truncation order in the degree variable.
        #[arg(long)]
        order: u32,
        /// Which series to print.
        #[arg(long, value_enum, default_value_t = Emit::All)]
        emit: Emit,
    },
    /// Re-derive the recursion/residue equality degree by degree.
    VerifyConjecture {
        /// Ambient projective space is CP^{N-1}.
        #[arg(long = "N")]
        n: u32,
        /// Hypersurface degree.
        #[arg(long)]
        k: u32,
        /// Largest map degree to check.
        #[arg(long)]
        dmax: u32,
    },
    /// Check the ODE-operator identity on formal seed coefficients.
    VerifyTheorem {
        /// Ambient projective space is CP^{N-1}.
        #[arg(long = "N")]
        n: u32,
        /// Hypersurface degree (at most N).
        #[arg(long)]
        k: u32,
        /// Truncation order in the exponential variable.
        #[arg(long = "D")]
        trunc: u32,
    },
}

fn parse_bundles(s: &str) -> Result<BundleList, String> {
    let mut bundles = Vec::new();
    for piece in s.split(',') {
        let fields: Vec<&str> = piece.split(':').collect();
        let (degree_str, mode) = match fields.as_slice() {
            [deg, "e"] => (*deg, ClassMode::Euler),
            [deg, "t"] => (*deg, ClassMode::TotalChern { param: None }),
            [deg, "t", name] => {
                if name.is_empty() {
                    return Err(format!("bad bundle spec '{piece}': empty parameter name"));
                }
                (
                    *deg,
                    ClassMode::TotalChern {
                        param: Some((*name).to_string()),
                    },
                )
            }
            _ => {
                return Err(format!(
                    "bad bundle spec '{piece}': expected k:e, k:t, or k:t:<param>"
                ))
            }
        };
        let degree: i64 = degree_str
            .parse()
            .map_err(|_| format!("bad bundle degree '{degree_str}'"))?;
        bundles.push(Bundle { degree, mode });
    }
    Ok(BundleList(bundles))
}

fn parse_insertions(s: &str) -> Result<InsertionPair, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("bad insertion pair '{s}': expected m,n"));
    }
    let m = parts[0]
        .trim()
        .parse()
        .map_err(|_| format!("bad insertion exponent '{}'", parts[0]))?;
    let n = parts[1]
        .trim()
        .parse()
        .map_err(|_| format!("bad insertion exponent '{}'", parts[1]))?;
    Ok(InsertionPair(m, n))
}

// ---------------------------------------------------------------------------
// Error discipline: usage problems exit 2, computation problems exit 1.

enum CliError {
    Usage(String),
    Run(anyhow::Error),
}

type CliResult<T> = Result<T, CliError>;

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn run_err<E: Into<anyhow::Error>>(e: E) -> CliError {
    CliError::Run(e.into())
}

// ---------------------------------------------------------------------------
// Serialization helpers.

fn rat_strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(Rational::to_string).collect()
}

/// A polynomial in at most one parameter as `[["p/q", exponent], ...]`.
fn poly_pairs(p: &SparsePoly) -> CliResult<Value> {
    if p.is_zero() {
        return Ok(json!([]));
    }
    let vars = p.vars();
    if vars.len() > 1 {
        return Err(CliError::Run(anyhow::anyhow!(
            "table serialization supports at most one parameter, found {vars:?}"
        )));
    }
    if vars.is_empty() {
        let c = p.constant_value().expect("constant polynomial");
        return Ok(json!([[c.to_string(), 0]]));
    }
    let var = vars[0].clone();
    let mut pairs = Vec::new();
    for (e, coeff) in p.by_var_degree(&var).iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        let c = coeff
            .constant_value()
            .expect("single-parameter polynomial has rational coefficients");
        pairs.push(json!([c.to_string(), e]));
    }
    Ok(Value::Array(pairs))
}

#[derive(Serialize)]
struct DegreeOut {
    d: u32,
    poly: Value,
}

/// Series coefficients for degrees 1..=trunc as `{d, poly}` rows.
fn series_degrees(s: &QSeries) -> CliResult<Vec<DegreeOut>> {
    (1..=s.trunc())
        .map(|d| {
            Ok(DegreeOut {
                d,
                poly: poly_pairs(s.coeff(d))?,
            })
        })
        .collect()
}

fn geometry_label(geom: &GeometrySpec) -> String {
    let parts: Vec<String> = geom
        .bundles
        .iter()
        .map(|b| match &b.mode {
            ClassMode::Euler => format!("O({})", b.degree),
            ClassMode::TotalChern { param: None } => format!("O({})[c]", b.degree),
            ClassMode::TotalChern { param: Some(p) } => format!("O({})[c;{p}]", b.degree),
        })
        .collect();
    format!("{} over CP^{}", parts.join("+"), geom.n - 1)
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("output structs serialize")
    );
}

// ---------------------------------------------------------------------------
// Subcommand bodies.

#[derive(Serialize)]
struct TableOut {
    d: u32,
    #[serde(rename = "L")]
    l: Vec<String>,
}

#[derive(Serialize)]
struct HypersurfaceOut {
    command: &'static str,
    #[serde(rename = "N")]
    n: u32,
    k: u32,
    dmax: u32,
    mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    modes_agree: Option<bool>,
    tables: Vec<TableOut>,
}

fn run_hypersurface(n: u32, k: u32, dmax: u32, mode: Mode, out: OutFormat) -> CliResult<ExitCode> {
    if dmax == 0 {
        return Err(usage("--dmax must be at least 1"));
    }
    let p = HypersurfaceParams::new(n, k).map_err(usage)?;

    let recursion: Option<Vec<VscTable>> = match mode {
        Mode::Recursion | Mode::Both => Some(recursion_tables(&p, dmax)),
        Mode::Residue => None,
    };
    let residues: Option<Vec<VscTable>> = match mode {
        Mode::Residue | Mode::Both => Some(
            (1..=dmax)
                .map(|d| residue_table(&p, d, ResidueOrder::Descending))
                .collect::<Result<_, _>>()
                .map_err(run_err)?,
        ),
        Mode::Recursion => None,
    };

    let (mode_name, modes_agree) = match mode {
        Mode::Recursion => ("recursion", None),
        Mode::Residue => ("residue", None),
        Mode::Both => {
            let agree = recursion == residues;
            ("both", Some(agree))
        }
    };
    let tables = recursion.or(residues).expect("one pipeline ran");

    match out {
        OutFormat::Json => {
            let report = HypersurfaceOut {
                command: "hypersurface",
                n,
                k,
                dmax,
                mode: mode_name,
                modes_agree,
                tables: tables
                    .iter()
                    .map(|t| TableOut {
                        d: t.d,
                        l: rat_strings(&t.values),
                    })
                    .collect(),
            };
            print_json(&report);
        }
        OutFormat::Csv => {
            println!("N,k,d,n,coefficient");
            for t in &tables {
                for (idx, v) in t.values.iter().enumerate() {
                    println!("{n},{k},{},{idx},{v}", t.d);
                }
            }
        }
    }

    if modes_agree == Some(false) {
        eprintln!("pipelines disagree: recursion and residue tables differ");
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct EntryOut {
    m: u32,
    n: u32,
    d: u32,
    poly: Value,
}

#[derive(Serialize)]
struct LocalOut {
    command: &'static str,
    #[serde(rename = "N")]
    n: u32,
    bundles: String,
    geometry: String,
    dmax: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    insertions: Option<(u32, u32)>,
    entries: Vec<EntryOut>,
}

/// The table serialization carries a single exponent per term, so at most
/// one bundle may introduce a named parameter.
fn check_single_parameter(geom: &GeometrySpec) -> CliResult<()> {
    let named = geom
        .bundles
        .iter()
        .filter(|b| matches!(&b.mode, ClassMode::TotalChern { param: Some(_) }))
        .count();
    if named > 1 {
        return Err(usage(
            "at most one bundle may carry a named parameter in this output format",
        ));
    }
    Ok(())
}

fn run_local(
    n: u32,
    bundles: BundleList,
    bundles_raw: String,
    dmax: u32,
    insertions: Option<InsertionPair>,
) -> CliResult<ExitCode> {
    if dmax == 0 {
        return Err(usage("--dmax must be at least 1"));
    }
    let geom = GeometrySpec::local(n, bundles.0).map_err(usage)?;
    check_single_parameter(&geom)?;

    let pairs: Option<Vec<(u32, u32)>> = insertions.map(|InsertionPair(m, n)| vec![(m, n)]);
    let table = local_vsc_table(
        &geom,
        dmax,
        pairs.as_deref(),
        ResidueOrder::Descending,
    )
    .map_err(run_err)?;

    let entries = table
        .entries
        .iter()
        .map(|e| {
            Ok(EntryOut {
                m: e.m,
                n: e.n,
                d: e.d,
                poly: poly_pairs(&e.value)?,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let report = LocalOut {
        command: "local",
        n,
        bundles: bundles_raw,
        geometry: geometry_label(&geom),
        dmax,
        insertions: insertions.map(|InsertionPair(m, n)| (m, n)),
        entries,
    };
    print_json(&report);
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct BetaTablesOut {
    beta00: Vec<DegreeOut>,
    beta10: Vec<DegreeOut>,
    beta11: Vec<DegreeOut>,
}

#[derive(Serialize)]
struct MapOut {
    t_minus_x: Vec<DegreeOut>,
    q_in_flat: Vec<DegreeOut>,
}

#[derive(Serialize)]
struct MirrorOut {
    command: &'static str,
    #[serde(rename = "N")]
    n: u32,
    bundles: String,
    geometry: String,
    order: u32,
    emit: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    tables: Option<BetaTablesOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    metric_eta00: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    map: Option<MapOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    yukawa: Option<Vec<DegreeOut>>,
}

fn run_mirror(
    n: u32,
    bundles: BundleList,
    bundles_raw: String,
    order: u32,
    emit: Emit,
) -> CliResult<ExitCode> {
    if order == 0 {
        return Err(usage("--order must be at least 1"));
    }
    let geom = GeometrySpec::local(n, bundles.0).map_err(usage)?;
    check_single_parameter(&geom)?;
    if geom.n != 2 {
        return Err(usage("the mirror pipeline requires --N 2"));
    }

    let data = compute_mirror_data(&geom, order, ResidueOrder::Descending).map_err(run_err)?;

    let (emit_name, tables, eta, map, yukawa) = match emit {
        Emit::Map => (
            "map",
            None,
            None,
            Some(MapOut {
                t_minus_x: series_degrees(&data.map.t_minus_x)?,
                q_in_flat: series_degrees(&data.map.q_in_flat)?,
            }),
            None,
        ),
        Emit::Yukawa => ("yukawa", None, None, None, Some(series_degrees(&data.yukawa)?)),
        Emit::All => (
            "all",
            Some(BetaTablesOut {
                beta00: series_degrees(&data.beta00)?,
                beta10: series_degrees(&data.beta10)?,
                beta11: series_degrees(&data.beta11)?,
            }),
            Some(poly_pairs(&data.eta00)?),
            Some(MapOut {
                t_minus_x: series_degrees(&data.map.t_minus_x)?,
                q_in_flat: series_degrees(&data.map.q_in_flat)?,
            }),
            Some(series_degrees(&data.yukawa)?),
        ),
    };

    let report = MirrorOut {
        command: "mirror",
        n,
        bundles: bundles_raw,
        geometry: geometry_label(&geom),
        order,
        emit: emit_name,
        tables,
        metric_eta00: eta,
        map,
        yukawa,
    };
    print_json(&report);
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ConjRowOut {
    d: u32,
    window: i64,
    matched: bool,
    recursion: Vec<String>,
    residue: Vec<String>,
}

#[derive(Serialize)]
struct ConjOut {
    command: &'static str,
    #[serde(rename = "N")]
    n: u32,
    k: u32,
    dmax: u32,
    rows: Vec<ConjRowOut>,
    all_match: bool,
}

fn run_verify_conjecture(n: u32, k: u32, dmax: u32) -> CliResult<ExitCode> {
    if dmax == 0 {
        return Err(usage("--dmax must be at least 1"));
    }
    let p = HypersurfaceParams::new(n, k).map_err(usage)?;
    let recursion = recursion_tables(&p, dmax);

    let mut rows = Vec::new();
    for d in 1..=dmax {
        let started = Instant::now();
        let residue = residue_table(&p, d, ResidueOrder::Descending).map_err(run_err)?;
        let elapsed = started.elapsed();
        let matched = recursion[d as usize - 1].values == residue.values;
        eprintln!(
            "degree {d}: {} in {:.3}s",
            if matched { "match" } else { "MISMATCH" },
            elapsed.as_secs_f64()
        );
        rows.push(ConjRowOut {
            d,
            window: p.window(d),
            matched,
            recursion: rat_strings(&recursion[d as usize - 1].values),
            residue: rat_strings(&residue.values),
        });
    }

    let all_match = rows.iter().all(|r| r.matched);
    let report = ConjOut {
        command: "verify-conjecture",
        n,
        k,
        dmax,
        rows,
        all_match,
    };
    print_json(&report);
    if all_match {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

#[derive(Serialize)]
struct TheoremOut {
    command: &'static str,
    #[serde(rename = "N")]
    n: u32,
    k: u32,
    #[serde(rename = "D")]
    trunc: u32,
    beta: u32,
    pass: bool,
    mismatched_degrees: Vec<u32>,
}

fn run_verify_theorem(n: u32, k: u32, trunc: u32) -> CliResult<ExitCode> {
    let p = HypersurfaceParams::new(n, k).map_err(usage)?;
    let report = match verify_theorem(&p, trunc) {
        Ok(r) => r,
        Err(e @ GmError::NonNef { .. }) => return Err(usage(e)),
    };
    let out = TheoremOut {
        command: "verify-theorem",
        n,
        k,
        trunc,
        beta: report.beta,
        pass: report.pass,
        mismatched_degrees: report.mismatched_degrees.clone(),
    };
    print_json(&out);
    if report.pass {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

// ---------------------------------------------------------------------------

fn dispatch(cli: Cli) -> CliResult<ExitCode> {
    match cli.command {
        Command::Hypersurface {
            n,
            k,
            dmax,
            mode,
            out,
        } => run_hypersurface(n, k, dmax, mode, out),
        Command::Local {
            n,
            bundles,
            dmax,
            insertions,
        } => {
            let raw = bundles_raw(&bundles);
            run_local(n, bundles, raw, dmax, insertions)
        }
        Command::Mirror {
            n,
            bundles,
            order,
            emit,
        } => {
            let raw = bundles_raw(&bundles);
            run_mirror(n, bundles, raw, order, emit)
        }
        Command::VerifyConjecture { n, k, dmax } => run_verify_conjecture(n, k, dmax),
        Command::VerifyTheorem { n, k, trunc } => run_verify_theorem(n, k, trunc),
    }
}

/// Canonical round-trip of the parsed bundle list, echoed in every report.
fn bundles_raw(bundles: &BundleList) -> String {
    bundles
        .0
        .iter()
        .map(|b| match &b.mode {
            ClassMode::Euler => format!("{}:e", b.degree),
            ClassMode::TotalChern { param: None } => format!("{}:t", b.degree),
            ClassMode::TotalChern { param: Some(p) } => format!("{}:t:{p}", b.degree),
        })
        .collect::<Vec<_>>()
        .join(",")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        // Ignore failure: the global pool can only be set once per process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match dispatch(cli) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Run(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
