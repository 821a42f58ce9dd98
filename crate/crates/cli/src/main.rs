use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use faulhaber::powersum::PowerSumEntry;
use faulhaber::roots::{analyze_with, RootReport, DEFAULT_PRECISION_BITS, MIN_PRECISION_BITS};
use faulhaber::{
    powersum_bernoulli_poly, powersum_faulhaber, BernoulliTable, Identity, Integer, PowerSums,
    Rational, VerificationReport,
};

#[derive(Parser)]
#[command(
    name = "faulhaber",
    version,
    about = "Exact power sums, Bernoulli numbers and their identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Add 1 to B_M before running (sensitivity testing).
    #[arg(long, value_name = "M", global = true, hide = true)]
    perturb_bernoulli: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Recursive,
    Faulhaber,
    BernoulliPoly,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Bernoulli numbers B_0..=B_max_m.
    Bernoulli {
        #[arg(long)]
        max_m: u32,
    },
    /// The polynomial S_p(n) = 1^p + ... + n^p.
    Powersum {
        #[arg(long, conflicts_with = "range", required_unless_present = "range")]
        p: Option<u32>,
        /// Inclusive range of p, written A..B.
        #[arg(long, value_parser = parse_range)]
        range: Option<RangeInclusive<u32>>,
        #[arg(long, value_enum, default_value_t = Method::Recursive)]
        method: Method,
    },
    /// Exact finite-range checks of the identities.
    Verify {
        /// Identity name, or "all".
        identity: String,
        /// Inclusive parameter range A..B (single identity only).
        #[arg(long, value_parser = parse_range)]
        range: Option<RangeInclusive<u32>>,
    },
    /// Root analysis of S_p.
    Roots {
        #[arg(long, conflicts_with = "range", required_unless_present = "range")]
        p: Option<u32>,
        /// Inclusive range of p, written A..B.
        #[arg(long, value_parser = parse_range)]
        range: Option<RangeInclusive<u32>>,
        #[arg(long, default_value_t = DEFAULT_PRECISION_BITS)]
        precision_bits: u32,
    },
    /// Values S_p(1), ..., S_p(n_max).
    Table {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n_max: u32,
    },
}

/// Accepts `A..B` and `A..=B`, both inclusive.
fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let a: u32 = a
        .trim()
        .parse()
        .map_err(|_| format!("bad lower bound in {s:?}"))?;
    let b: u32 = b
        .trim()
        .parse()
        .map_err(|_| format!("bad upper bound in {s:?}"))?;
    if a > b {
        return Err(format!("lower bound exceeds upper bound in {s:?}"));
    }
    Ok(a..=b)
}

/// Rendered output plus whether every requested check passed.
struct Outcome {
    body: String,
    ok: bool,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome { body, ok: true }
    }
}

fn json<T: Serialize + ?Sized>(value: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn csv_rows<I, R>(rows: I) -> anyhow::Result<String>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    for row in rows {
        w.write_record(row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn p_values(p: Option<u32>, range: Option<RangeInclusive<u32>>) -> anyhow::Result<Vec<u32>> {
    let ps: Vec<u32> = match (p, range) {
        (Some(p), _) => vec![p],
        (None, Some(r)) => r.collect(),
        (None, None) => bail!("either --p or --range is required"),
    };
    if ps.contains(&0) {
        bail!("p must be >= 1");
    }
    Ok(ps)
}

fn bernoulli_table(perturb: Option<usize>) -> BernoulliTable {
    let table = BernoulliTable::new();
    match perturb {
        Some(m) => table.perturbed(m, &Rational::one()),
        None => table,
    }
}

fn cmd_bernoulli(max_m: u32, format: Format, table: &BernoulliTable) -> anyhow::Result<Outcome> {
    let values = table.values_to(max_m as usize);
    let body = match format {
        Format::Text => values
            .iter()
            .enumerate()
            .map(|(m, b)| format!("B_{m} = {b}\n"))
            .collect(),
        Format::Csv => csv_rows(
            values
                .iter()
                .enumerate()
                .map(|(m, b)| [m.to_string(), b.numer().to_string(), b.denom().to_string()]),
        )?,
        Format::Json => {
            #[derive(Serialize)]
            struct Row<'a> {
                m: usize,
                value: &'a Rational,
            }
            let rows: Vec<Row> = values
                .iter()
                .enumerate()
                .map(|(m, value)| Row { m, value })
                .collect();
            json(&rows)?
        }
    };
    Ok(Outcome::ok(body))
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Recursive => "recursive",
        Method::Faulhaber => "faulhaber",
        Method::BernoulliPoly => "bernoulli-poly",
        Method::All => "all",
    }
}

fn cmd_powersum(
    ps: &[u32],
    method: Method,
    format: Format,
    sums: &PowerSums,
    table: &BernoulliTable,
) -> anyhow::Result<Outcome> {
    let methods = match method {
        Method::All => vec![Method::Recursive, Method::Faulhaber, Method::BernoulliPoly],
        m => vec![m],
    };
    let build = |m: Method, p: i64| match m {
        Method::Recursive => sums.recursive(p),
        Method::Faulhaber => powersum_faulhaber(p, table),
        _ => powersum_bernoulli_poly(p, table),
    };

    let mut results = Vec::with_capacity(ps.len());
    let mut disagreements = Vec::new();
    for &p in ps {
        let polys = methods
            .iter()
            .map(|&m| build(m, p as i64))
            .collect::<faulhaber::Result<Vec<_>>>()?;
        if polys.windows(2).any(|w| w[0] != w[1]) {
            disagreements.push(p);
        }
        results.push((p, polys));
    }
    let all = method == Method::All;
    let verdict = if disagreements.is_empty() {
        "AGREE".to_string()
    } else {
        format!("DISAGREE at p = {disagreements:?}")
    };

    let body = match format {
        Format::Text => {
            let mut s = String::new();
            for (p, polys) in &results {
                for (m, poly) in methods.iter().zip(polys) {
                    if all {
                        s += &format!("S_{p}(n) [{}] = {poly}\n", method_name(*m));
                    } else {
                        s += &format!("S_{p}(n) = {poly}\n");
                    }
                }
            }
            if all {
                s += &verdict;
                s.push('\n');
            }
            s
        }
        Format::Csv => {
            let mut rows = Vec::new();
            for (p, polys) in &results {
                for (m, poly) in methods.iter().zip(polys) {
                    rows.push([p.to_string(), method_name(*m).to_string(), poly.to_string()]);
                }
                if all {
                    let v = if disagreements.contains(p) {
                        "DISAGREE"
                    } else {
                        "AGREE"
                    };
                    rows.push([p.to_string(), "verdict".to_string(), v.to_string()]);
                }
            }
            csv_rows(rows)?
        }
        Format::Json => {
            let entries: Vec<PowerSumEntry> = results
                .iter()
                .map(|(p, polys)| PowerSumEntry {
                    p: *p as usize,
                    coefficients: polys[0].clone(),
                })
                .collect();
            if all {
                #[derive(Serialize)]
                struct Checked<'a> {
                    verdict: &'a str,
                    disagreements: &'a [u32],
                    entries: Vec<PowerSumEntry>,
                }
                let verdict = if disagreements.is_empty() {
                    "AGREE"
                } else {
                    "DISAGREE"
                };
                json(&Checked {
                    verdict,
                    disagreements: &disagreements,
                    entries,
                })?
            } else {
                json(&entries)?
            }
        }
    };
    Ok(Outcome {
        body,
        ok: disagreements.is_empty(),
    })
}

/// Failure lines shown per report in text mode.
const SHOWN_FAILURES: usize = 10;

fn cmd_verify(
    identity: &str,
    range: Option<RangeInclusive<u32>>,
    format: Format,
    sums: &PowerSums,
    table: &BernoulliTable,
) -> anyhow::Result<Outcome> {
    let single = identity != "all";
    let jobs: Vec<(Identity, RangeInclusive<u32>)> = if single {
        let id = Identity::from_name(identity).with_context(|| {
            let names: Vec<&str> = Identity::ALL.iter().map(|i| i.name()).collect();
            format!(
                "unknown identity {identity:?}; expected one of {} or all",
                names.join(", ")
            )
        })?;
        vec![(id, range.unwrap_or_else(|| id.default_range()))]
    } else {
        if range.is_some() {
            bail!("--range applies to a single identity, not to all");
        }
        Identity::ALL
            .iter()
            .map(|&id| (id, id.default_range()))
            .collect()
    };

    let reports = jobs
        .into_iter()
        .map(|(id, r)| id.check(r, sums, table))
        .collect::<faulhaber::Result<Vec<VerificationReport>>>()?;
    let ok = reports.iter().all(VerificationReport::passed);

    let body = match format {
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                s += &format!("{r}\n");
                for f in r.failures.iter().take(SHOWN_FAILURES) {
                    s += &format!("  {}: {} != {}\n", f.parameters, f.left, f.right);
                }
                if r.failures.len() > SHOWN_FAILURES {
                    s += &format!("  ... {} more\n", r.failures.len() - SHOWN_FAILURES);
                }
            }
            s
        }
        Format::Csv => csv_rows(reports.iter().map(|r| {
            [
                r.identity_name.clone(),
                r.parameter_range.clone(),
                r.checked.to_string(),
                r.failures.len().to_string(),
            ]
        }))?,
        Format::Json if single => json(&reports[0])?,
        Format::Json => json(&reports)?,
    };
    Ok(Outcome { body, ok })
}

fn root_text(r: &RootReport) -> String {
    let digits = faulhaber::roots::ComplexRoot::decimal_digits(r.precision_bits);
    let mut s = format!(
        "S_{}: degree {}, {} distinct real roots, {} rational\n",
        r.p,
        r.degree,
        r.distinct_real_root_count,
        r.rational_roots.len()
    );
    for (value, m) in &r.rational_roots {
        s += &format!("  rational {value} (multiplicity {m})\n");
    }
    for z in &r.complex_roots {
        s += &format!(
            "  numerical {} {} {}i +- {} (multiplicity {})\n",
            z.re_decimal(digits),
            if z.im.is_negative() { "-" } else { "+" },
            z.im.abs().to_decimal(digits),
            z.decimal_error_radius(digits).to_scientific_upper(3),
            z.multiplicity
        );
    }
    let pairs: Vec<String> = r
        .symmetry_pairs
        .iter()
        .map(|(i, j)| format!("({i}, {j})"))
        .collect();
    s += &format!("  pairs under r -> -1 - r: {}\n", pairs.join(" "));
    s
}

fn cmd_roots(
    ps: &[u32],
    precision_bits: u32,
    format: Format,
    sums: &PowerSums,
) -> anyhow::Result<Outcome> {
    if precision_bits < MIN_PRECISION_BITS {
        bail!("--precision-bits must be at least {MIN_PRECISION_BITS}");
    }
    // build the shared cache once so the parallel runs only read it
    let p_max = ps.iter().copied().max().unwrap_or(1);
    sums.recursive(p_max as i64)?;
    let reports = ps
        .par_iter()
        .map(|&p| analyze_with(p as i64, precision_bits, sums))
        .collect::<faulhaber::Result<Vec<RootReport>>>()?;

    let body = match format {
        Format::Text => reports.iter().map(root_text).collect(),
        Format::Csv => csv_rows(reports.iter().map(RootReport::summary_row))?,
        Format::Json if ps.len() == 1 => json(&reports[0].record())?,
        Format::Json => json(&reports.iter().map(RootReport::record).collect::<Vec<_>>())?,
    };
    Ok(Outcome::ok(body))
}

fn cmd_table(p: u32, n_max: u32, format: Format, sums: &PowerSums) -> anyhow::Result<Outcome> {
    let poly = sums.recursive(p as i64)?;
    let mut rows = Vec::with_capacity(n_max as usize);
    let mut running = Integer::from(0);
    for n in 1..=n_max {
        running += num_traits::pow(Integer::from(n), p as usize);
        let value = poly.evaluate(&Rational::from(n as i64));
        if value != Rational::from(running.clone()) {
            bail!("S_{p}({n}) = {value} disagrees with the direct sum {running}");
        }
        rows.push((n, running.clone()));
    }
    let body = match format {
        Format::Text => rows
            .iter()
            .map(|(n, v)| format!("S_{p}({n}) = {v}\n"))
            .collect(),
        Format::Csv => csv_rows(rows.iter().map(|(n, v)| [n.to_string(), v.to_string()]))?,
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                n: u32,
                value: String,
            }
            json(
                &rows
                    .iter()
                    .map(|(n, v)| Row {
                        n: *n,
                        value: v.to_string(),
                    })
                    .collect::<Vec<_>>(),
            )?
        }
    };
    Ok(Outcome::ok(body))
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let format = cli.output.format;
    let table = bernoulli_table(cli.output.perturb_bernoulli);
    let sums = PowerSums::new();
    let outcome = match cli.command {
        Command::Bernoulli { max_m } => cmd_bernoulli(max_m, format, &table)?,
        Command::Powersum { p, range, method } => {
            cmd_powersum(&p_values(p, range)?, method, format, &sums, &table)?
        }
        Command::Verify { identity, range } => cmd_verify(&identity, range, format, &sums, &table)?,
        Command::Roots {
            p,
            range,
            precision_bits,
        } => cmd_roots(&p_values(p, range)?, precision_bits, format, &sums)?,
        Command::Table { p, n_max } => {
            if p == 0 {
                bail!("p must be >= 1");
            }
            cmd_table(p, n_max, format, &sums)?
        }
    };
    match &cli.output.out {
        Some(path) => {
            fs::write(path, &outcome.body).with_context(|| format!("writing {}", path.display()))?
        }
        None => std::io::stdout()
            .lock()
            .write_all(outcome.body.as_bytes())?,
    }
    Ok(outcome.ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
