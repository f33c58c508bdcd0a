//! Command-line surface for the floor-diagram engine.
//!
//! Subcommands: `diagrams` (tally rows for a class and tangency type),
//! `relative` (relative BPS polynomial plus Welschinger count),
//! `absolute` (absolute BPS polynomial on a blow-up with n <= 6, with
//! optional stable-pairs and higher-genus attachments), and `kkv`
//! (K3 generating-series coefficients and the q = -1 comparison).
//!
//! Output is byte-identical across repeated runs and worker counts; all
//! JSON schemas carry `"format": 1`. Exit code 2 signals a validation
//! problem, 0 success.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use refloor::k3series::{self, EULER_REAL_MATCHING};
use refloor::qlaurent::Sign;
use refloor::{
    abv_absolute, enumerate_diagrams_cached, gw_expansion_absolute, pad_class, pt_series,
    relative_bps_diagrams, tally_diagrams, welschinger_relative, with_thread_limit, BpsResult,
    BpsTarget, CurveClass, DiagramTally, QLaurent, Tangency,
};

const SCHEMA_FORMAT: u32 = 1;

#[derive(Parser)]
#[command(
    name = "refloor",
    version,
    about = "Refined floor-diagram counts and BPS polynomials"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory for cached diagram enumerations.
    #[arg(long, global = true, env = "REFLOOR_CACHE")]
    cache_dir: Option<PathBuf>,
    /// Worker thread count; results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Tally marked floor diagrams: one row per diagram and leg pattern.
    Diagrams {
        /// Curve class as d,a1,...,an.
        #[arg(long)]
        class: String,
        /// Fixed tangency parts, comma separated; omit for none.
        #[arg(long)]
        mu: Option<String>,
        /// Moving tangency parts, comma separated; omit for none.
        #[arg(long)]
        nu: Option<String>,
    },
    /// Relative BPS polynomial and Welschinger count.
    Relative {
        #[arg(long)]
        class: String,
        #[arg(long)]
        mu: Option<String>,
        #[arg(long)]
        nu: Option<String>,
    },
    /// Absolute BPS polynomial of the n-point blow-up (n <= 6).
    Absolute {
        /// Number of blown-up points the class lives on.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        class: String,
        /// Also emit the stable-pairs polynomial, expanding to this order
        /// when the class has no interior point constraints.
        #[arg(long, value_name = "TRUNCATION")]
        pt_series: Option<i64>,
        /// Also emit Gromov-Witten invariants up to this genus.
        #[arg(long, value_name = "G")]
        gw_genus: Option<usize>,
    },
    /// KKV coefficients with the real-K3 column (e_R = -16).
    Kkv {
        #[arg(long)]
        h_max: usize,
        /// Require every q = -1 specialization to match the real count.
        #[arg(long)]
        check: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads;
    match with_thread_limit(threads, || run(&cli)) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<String> {
    match &cli.command {
        Command::Diagrams { class, mu, nu } => {
            let beta: CurveClass = class.parse()?;
            let t = parse_tangency(mu.as_deref(), nu.as_deref())?;
            let diagrams = enumerate_diagrams_cached(beta.d, cli.cache_dir.as_deref())?;
            let rows = tally_diagrams(&diagrams, &beta, &t)?;
            render_diagrams(cli.format, &beta, &t, &rows)
        }
        Command::Relative { class, mu, nu } => {
            let beta: CurveClass = class.parse()?;
            let t = parse_tangency(mu.as_deref(), nu.as_deref())?;
            let diagrams = enumerate_diagrams_cached(beta.d, cli.cache_dir.as_deref())?;
            let poly = relative_bps_diagrams(&diagrams, &beta, &t)?;
            let result = BpsResult {
                gw_at_1: poly.evaluate_at_sign(Sign::Plus)?,
                welschinger_at_minus_1: poly.evaluate_at_sign(Sign::Minus)?,
                class: beta.clone(),
                target: BpsTarget::Relative(t.clone()),
                poly,
            };
            let welschinger = welschinger_relative(&beta, &t)?;
            render_bps(
                cli.format,
                &result,
                Some(welschinger.to_string()),
                None,
                None,
            )
        }
        Command::Absolute {
            n,
            class,
            pt_series: pt,
            gw_genus,
        } => {
            let beta: CurveClass = class.parse()?;
            if *n > 6 {
                anyhow::bail!("absolute invariants are only computed for n <= 6, got {n}");
            }
            if beta.n() > *n {
                anyhow::bail!(
                    "class lists {} exceptional coefficients but --n is {n}",
                    beta.n()
                );
            }
            let reported = pad_class(&beta, *n)?;
            let padded = pad_class(&beta, 6)?;
            let mut result = abv_absolute(&padded)?;
            result.class = reported;
            result.target = BpsTarget::Absolute { surface_n: *n };

            let pt_poly = pt
                .map(|truncation| pt_series(&result.poly, result.class.m_beta(), truncation))
                .transpose()?;
            let gw = gw_genus
                .map(|g_max| gw_expansion_absolute(&result.poly, result.class.m_beta(), g_max))
                .transpose()?
                .map(|values| values.iter().map(|v| v.to_string()).collect::<Vec<_>>());
            render_bps(cli.format, &result, None, pt_poly, gw)
        }
        Command::Kkv { h_max, check } => {
            let coeffs = k3series::kkv_coefficients(*h_max);
            let real = k3series::real_k3_coefficients(*h_max, EULER_REAL_MATCHING)?;
            let output = render_kkv(cli.format, &coeffs, &real, *check)?;
            if *check {
                let failed = k3series::check_k3_welschinger(*h_max)
                    .iter()
                    .any(|c| !c.equal);
                if failed {
                    anyhow::bail!("q = -1 specialization does not match the real counts");
                }
            }
            Ok(output)
        }
    }
}

fn parse_tangency(mu: Option<&str>, nu: Option<&str>) -> anyhow::Result<Tangency> {
    let parse = |s: Option<&str>, name: &str| -> anyhow::Result<Vec<i64>> {
        match s {
            None => Ok(Vec::new()),
            Some(raw) => raw
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse::<i64>()
                        .map_err(|_| anyhow::anyhow!("cannot parse --{name} part {p:?}"))
                })
                .collect(),
        }
    };
    Ok(Tangency::new(parse(mu, "mu")?, parse(nu, "nu")?))
}

fn render_diagrams(
    format: Format,
    beta: &CurveClass,
    t: &Tangency,
    rows: &[DiagramTally],
) -> anyhow::Result<String> {
    match format {
        Format::Json => {
            let value = json!({
                "format": SCHEMA_FORMAT,
                "class": beta,
                "tangency": t,
                "rows": rows,
            });
            Ok(format!("{}\n", serde_json::to_string_pretty(&value)?))
        }
        Format::Csv => {
            let mut out = String::from("canonical_key,marking_count,complex,real,refined\n");
            for row in rows {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    hex::encode(&row.canonical_key),
                    row.marking_count,
                    row.complex,
                    row.real,
                    row.refined
                ));
            }
            Ok(out)
        }
        Format::Text => {
            let mut out = format!(
                "class {beta} type mu=[{}] nu=[{}]: {} diagram rows\n",
                join(&t.mu),
                join(&t.nu),
                rows.len()
            );
            for (i, row) in rows.iter().enumerate() {
                out.push_str(&format!(
                    "{:>3}) markings {:>4}  complex {:>6}  real {:>5}  refined {}\n",
                    i + 1,
                    row.marking_count,
                    row.complex,
                    row.real,
                    row.refined
                ));
            }
            let total = rows
                .iter()
                .fold(QLaurent::zero(), |acc, r| acc.add(&r.refined));
            let complex: num_bigint::BigInt = rows.iter().map(|r| r.complex.clone()).sum();
            let real: num_bigint::BigInt = rows.iter().map(|r| r.real.clone()).sum();
            out.push_str(&format!(
                "total complex {complex} real {real} refined {total}\n"
            ));
            Ok(out)
        }
    }
}

fn render_bps(
    format: Format,
    result: &BpsResult,
    welschinger: Option<String>,
    pt_poly: Option<QLaurent>,
    gw: Option<Vec<String>>,
) -> anyhow::Result<String> {
    match format {
        Format::Json => {
            let mut value = serde_json::to_value(result)?;
            let map = value
                .as_object_mut()
                .expect("BpsResult serializes to an object");
            map.insert("format".into(), json!(SCHEMA_FORMAT));
            if let Some(w) = welschinger {
                map.insert("welschinger".into(), json!(w));
            }
            if let Some(p) = &pt_poly {
                map.insert("pt_series".into(), serde_json::to_value(p)?);
            }
            if let Some(g) = &gw {
                map.insert("gw_genus".into(), json!(g));
            }
            Ok(format!("{}\n", serde_json::to_string_pretty(&value)?))
        }
        Format::Csv => {
            let (kind, detail) = describe_target(result);
            let mut out = String::from("kind,class,detail,poly,q1,qm1\n");
            out.push_str(&format!(
                "{kind},\"{}\",\"{detail}\",{},{},{}\n",
                result.class, result.poly, result.gw_at_1, result.welschinger_at_minus_1
            ));
            Ok(out)
        }
        Format::Text => {
            let (kind, detail) = describe_target(result);
            let mut out = format!(
                "{kind} BPS for class ({}) {detail}\n  poly: {}\n  q=1:  {}\n  q=-1: {}\n",
                result.class, result.poly, result.gw_at_1, result.welschinger_at_minus_1
            );
            if let Some(w) = welschinger {
                out.push_str(&format!("  welschinger: {w}\n"));
            }
            if let Some(p) = pt_poly {
                out.push_str(&format!("  pt-series: {p}\n"));
            }
            if let Some(gw) = gw {
                for (g, v) in gw.iter().enumerate() {
                    out.push_str(&format!("  gw[g={g}]: {v}\n"));
                }
            }
            Ok(out)
        }
    }
}

fn describe_target(result: &BpsResult) -> (&'static str, String) {
    match &result.target {
        BpsTarget::Relative(t) => (
            "relative",
            format!("mu=[{}] nu=[{}]", join(&t.mu), join(&t.nu)),
        ),
        BpsTarget::Absolute { surface_n } => ("absolute", format!("n={surface_n}")),
    }
}

fn render_kkv(
    format: Format,
    coeffs: &[QLaurent],
    real: &[num_bigint::BigInt],
    check: bool,
) -> anyhow::Result<String> {
    let rows: Vec<serde_json::Value> = coeffs
        .iter()
        .zip(real)
        .enumerate()
        .map(|(h, (poly, real_count))| {
            let q1 = poly
                .evaluate_at_sign(Sign::Plus)
                .expect("integral exponents");
            let qm1 = poly
                .evaluate_at_sign(Sign::Minus)
                .expect("integral exponents");
            let equal = qm1 == *real_count;
            json!({
                "h": h,
                "poly": poly,
                "q1": q1.to_string(),
                "qm1": qm1.to_string(),
                "real_k3": real_count.to_string(),
                "equal": equal,
            })
        })
        .collect();
    match format {
        Format::Json => {
            let value = json!({
                "format": SCHEMA_FORMAT,
                "e_r": EULER_REAL_MATCHING,
                "check": check,
                "rows": rows,
            });
            Ok(format!("{}\n", serde_json::to_string_pretty(&value)?))
        }
        Format::Csv => {
            let mut out = String::from("h,poly,q1,qm1,real_k3,equal\n");
            for (h, (poly, real_count)) in coeffs.iter().zip(real).enumerate() {
                let q1 = poly
                    .evaluate_at_sign(Sign::Plus)
                    .expect("integral exponents");
                let qm1 = poly
                    .evaluate_at_sign(Sign::Minus)
                    .expect("integral exponents");
                out.push_str(&format!(
                    "{h},{poly},{q1},{qm1},{real_count},{}\n",
                    qm1 == *real_count
                ));
            }
            Ok(out)
        }
        Format::Text => {
            let mut out = String::new();
            for (h, (poly, real_count)) in coeffs.iter().zip(real).enumerate() {
                let q1 = poly
                    .evaluate_at_sign(Sign::Plus)
                    .expect("integral exponents");
                let qm1 = poly
                    .evaluate_at_sign(Sign::Minus)
                    .expect("integral exponents");
                out.push_str(&format!(
                    "h={h}  poly {poly}  q=1: {q1}  q=-1: {qm1}  real: {real_count}{}\n",
                    if check {
                        if qm1 == *real_count {
                            "  equal"
                        } else {
                            "  MISMATCH"
                        }
                    } else {
                        ""
                    }
                ));
            }
            Ok(out)
        }
    }
}

fn join(parts: &[i64]) -> String {
    parts
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
