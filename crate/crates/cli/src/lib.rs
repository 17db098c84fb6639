//! Command-line front end: per-cell queries, grid sweeps and machine-readable reports.
//!
//! Exit codes: 0 on success, 1 on usage or input errors, 2 when a sweep records
//! discrepancies (the report is still written).

pub mod records;
pub mod sweep;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use etaq::dimensions::{dimension_report, quadratic_table_layout, trivial_table_layout};
use etaq::enumeration::{count_cusp_etaquotients, noncusp_etaquotients, weight_admissible};
use etaq::exactmath::require_prime;
use etaq::independence::{all_etaquotients, independence_report};
use etaq::multiplier::{eta_multiplier, verify_transformation, UnimodularMatrix};
use etaq::Error;

use records::{
    CountRecord, DimensionRecord, EtaQuotientRecord, ExpansionRecord, IndependenceRecord,
    TransformRecord,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DISCREPANCY: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "etaq",
    version,
    about = "Eta-quotients of prime level: counts, expansions, dimensions"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Table {
    Trivial,
    Quadratic,
}

#[derive(Debug, Args)]
struct Cell {
    /// Prime level, greater than 3.
    #[arg(short, allow_negative_numbers = true)]
    p: i64,
    /// Weight.
    #[arg(short, allow_negative_numbers = true)]
    k: i64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Number of cusp and non-cusp eta-quotients of weight k on Γ₀(p).
    Count(Cell),
    /// All holomorphic eta-quotients of weight k, cusp forms first.
    List(Cell),
    /// q-expansion of one listed quotient.
    Expand {
        #[command(flatten)]
        cell: Cell,
        /// Position in the `list` output, from 0.
        #[arg(long, default_value_t = 0)]
        index: usize,
        /// Number of integer q-powers to print.
        #[arg(long, default_value_t = 20)]
        prec: i64,
    },
    /// Dimensions of the cusp-form spaces, or a whole formula table.
    Dims {
        #[arg(
            short,
            allow_negative_numbers = true,
            required_unless_present = "table"
        )]
        p: Option<i64>,
        #[arg(
            short,
            allow_negative_numbers = true,
            required_unless_present = "table"
        )]
        k: Option<i64>,
        #[arg(long, value_enum)]
        table: Option<Table>,
    },
    /// Exact rank of the coefficient matrix of all quotients of weight k.
    Verify(Cell),
    /// Full report for every prime up to --max-prime and weight up to --max-weight.
    Sweep {
        #[arg(long)]
        max_prime: u64,
        #[arg(long)]
        max_weight: i64,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long, env = "ETAQ_JOBS")]
        jobs: Option<usize>,
    },
    /// Numerically check η(γz) = ε(γ)(cz+d)^{1/2} η(z).
    TransformCheck {
        /// Matrix entries a,b,c,d.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        matrix: Vec<i64>,
        /// Point x,y with y > 0.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        z: Vec<f64>,
        /// Precision in 24ths of a q-power.
        #[arg(long, default_value_t = 24 * 60)]
        prec24: i64,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn prime_arg(p: i64) -> std::result::Result<u64, Failure> {
    require_prime(p).map_err(|e| Failure::Usage(format!("-p: {e}")))
}

fn json_line<T: Serialize>(out: &mut dyn Write, value: &T) -> Outcome {
    let s = serde_json::to_string(value).map_err(|e| Failure::Io(e.into()))?;
    writeln!(out, "{s}")?;
    Ok(EXIT_OK)
}

fn csv_rows(out: &mut dyn Write, rows: &[Vec<String>]) -> Outcome {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for row in rows {
        w.write_record(row)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Io(e.into_error()))?;
    out.write_all(&bytes)?;
    Ok(EXIT_OK)
}

fn strings<const N: usize>(xs: [&dyn ToString; N]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn quotient_header() -> Vec<String> {
    [
        "level",
        "weight",
        "r_1",
        "r_p",
        "v_infinity",
        "v_zero",
        "character_discriminant",
        "is_cusp",
    ]
    .map(String::from)
    .to_vec()
}

fn fraction(r: &records::RationalRecord) -> String {
    if r.den == 1 {
        r.num.to_string()
    } else {
        format!("{}/{}", r.num, r.den)
    }
}

fn quotient_row(r: &EtaQuotientRecord) -> Vec<String> {
    let exp = |delta: u64| {
        r.exponents
            .iter()
            .find(|e| e.delta == delta)
            .map(|e| {
                fraction(&records::RationalRecord {
                    num: e.num,
                    den: e.den,
                })
            })
            .unwrap_or_else(|| "0".into())
    };
    vec![
        r.level.to_string(),
        fraction(&r.weight),
        exp(1),
        exp(r.level),
        fraction(&r.v_infinity),
        fraction(&r.v_zero),
        r.character_discriminant.to_string(),
        r.is_cusp.to_string(),
    ]
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    match &cli.command {
        Command::Count(c) => count(cli.format, c, out),
        Command::List(c) => list(cli.format, c, out),
        Command::Expand { cell, index, prec } => expand(cli.format, cell, *index, *prec, out),
        Command::Dims { p, k, table } => dims(cli.format, *p, *k, *table, out),
        Command::Verify(c) => verify(cli.format, c, out),
        Command::Sweep {
            max_prime,
            max_weight,
            jobs,
        } => {
            let jobs =
                jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            sweep(cli.format, *max_prime, *max_weight, jobs, out)
        }
        Command::TransformCheck { matrix, z, prec24 } => {
            transform_check(cli.format, matrix, z, *prec24, out)
        }
    }
}

fn count(format: Format, c: &Cell, out: &mut dyn Write) -> Outcome {
    let p = prime_arg(c.p)?;
    let adm = weight_admissible(p, c.k)?;
    let report = adm
        .admissible
        .then(|| count_cusp_etaquotients(p, c.k))
        .transpose()?;
    let rec = CountRecord {
        p,
        k: c.k,
        h: adm.h,
        cusp_count: report.map_or(0, |r| r.count),
        noncusp_count: noncusp_etaquotients(p, c.k)?.len() as u64,
    };
    match format {
        Format::Json => json_line(out, &rec),
        Format::Csv => csv_rows(
            out,
            &[
                ["p", "k", "h", "cusp_count", "noncusp_count"]
                    .map(String::from)
                    .to_vec(),
                strings([&rec.p, &rec.k, &rec.h, &rec.cusp_count, &rec.noncusp_count]),
            ],
        ),
        Format::Text => {
            let case = report
                .and_then(|r| r.case_tag)
                .map_or("none", |t| t.as_str());
            let adm_note = if adm.admissible {
                ""
            } else {
                " (weight not divisible by h)"
            };
            writeln!(
                out,
                "p={} k={} h={} cusp_count={} noncusp_count={} case={case}{adm_note}",
                rec.p, rec.k, rec.h, rec.cusp_count, rec.noncusp_count
            )?;
            Ok(EXIT_OK)
        }
    }
}

fn quotient_records(p: u64, k: i64) -> std::result::Result<Vec<EtaQuotientRecord>, Failure> {
    let fs = if weight_admissible(p, k)?.admissible {
        all_etaquotients(p, k)?
    } else {
        Vec::new()
    };
    Ok(fs
        .iter()
        .map(EtaQuotientRecord::from_quotient)
        .collect::<etaq::Result<_>>()?)
}

fn list(format: Format, c: &Cell, out: &mut dyn Write) -> Outcome {
    let p = prime_arg(c.p)?;
    let recs = quotient_records(p, c.k)?;
    match format {
        Format::Json => json_line(out, &recs),
        Format::Csv => {
            let mut rows = vec![quotient_header()];
            rows.extend(recs.iter().map(quotient_row));
            csv_rows(out, &rows)
        }
        Format::Text => {
            let fs = if recs.is_empty() {
                Vec::new()
            } else {
                all_etaquotients(p, c.k)?
            };
            for (f, r) in fs.iter().zip(&recs) {
                writeln!(
                    out,
                    "{f}  v_infinity={} v_zero={} D={} {}",
                    fraction(&r.v_infinity),
                    fraction(&r.v_zero),
                    r.character_discriminant,
                    if r.is_cusp { "cusp" } else { "non-cusp" }
                )?;
            }
            if fs.is_empty() {
                writeln!(out, "no eta-quotients of weight {} on Γ₀({p})", c.k)?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn expand(format: Format, c: &Cell, index: usize, terms: i64, out: &mut dyn Write) -> Outcome {
    let p = prime_arg(c.p)?;
    if terms < 1 {
        return Err(Failure::Usage("--prec: must be at least 1".into()));
    }
    let fs = if weight_admissible(p, c.k)?.admissible {
        all_etaquotients(p, c.k)?
    } else {
        Vec::new()
    };
    let f = fs.get(index).ok_or_else(|| {
        Failure::Usage(format!(
            "--index: {index} out of range, {} quotients listed",
            fs.len()
        ))
    })?;
    let series = f.q_expansion(24 * terms)?;
    let rec = ExpansionRecord::new(EtaQuotientRecord::from_quotient(f)?, &series, terms);
    match format {
        Format::Json => json_line(out, &rec),
        Format::Csv => {
            let mut rows = vec![vec!["n".to_string(), "coefficient".to_string()]];
            rows.extend(
                rec.coefficients
                    .iter()
                    .enumerate()
                    .map(|(n, c)| vec![n.to_string(), c.clone()]),
            );
            csv_rows(out, &rows)
        }
        Format::Text => {
            writeln!(out, "{f} = {series}")?;
            Ok(EXIT_OK)
        }
    }
}

fn dims(
    format: Format,
    p: Option<i64>,
    k: Option<i64>,
    table: Option<Table>,
    out: &mut dyn Write,
) -> Outcome {
    if let Some(t) = table {
        let rows = match t {
            Table::Trivial => trivial_table_layout(),
            Table::Quadratic => quadratic_table_layout(),
        };
        return match format {
            Format::Json => json_line(out, &rows),
            Format::Csv => csv_rows(out, &rows),
            Format::Text => {
                for row in rows {
                    writeln!(out, "{}", row.join(" | "))?;
                }
                Ok(EXIT_OK)
            }
        };
    }
    let (p, k) = (p.expect("required"), k.expect("required"));
    let rec: DimensionRecord = dimension_report(prime_arg(p)?, k)?.into();
    match format {
        Format::Json => json_line(out, &rec),
        Format::Csv => csv_rows(
            out,
            &[
                [
                    "p",
                    "k",
                    "dim_cusp_trivial",
                    "dim_cusp_quadratic",
                    "quadratic_diagnostic",
                    "dim_eisenstein_trivial",
                    "genus",
                    "mu2",
                    "mu3",
                ]
                .map(String::from)
                .to_vec(),
                strings([
                    &rec.p,
                    &rec.k,
                    &opt(&rec.dim_cusp_trivial),
                    &opt(&rec.dim_cusp_quadratic),
                    &opt(&rec.quadratic_diagnostic),
                    &rec.dim_eisenstein_trivial,
                    &rec.genus,
                    &rec.mu2,
                    &rec.mu3,
                ]),
            ],
        ),
        Format::Text => {
            let undefined = || "undefined".to_string();
            writeln!(
                out,
                "p={} k={} genus={} mu2={} mu3={}",
                rec.p, rec.k, rec.genus, rec.mu2, rec.mu3
            )?;
            writeln!(
                out,
                "dim S_k trivial character: {}",
                rec.dim_cusp_trivial
                    .map_or_else(undefined, |d| d.to_string())
            )?;
            writeln!(
                out,
                "dim S_k quadratic character: {}",
                rec.dim_cusp_quadratic
                    .map_or_else(undefined, |d| d.to_string())
            )?;
            if let Some(d) = &rec.quadratic_diagnostic {
                writeln!(out, "  {d}")?;
            }
            writeln!(
                out,
                "dim E_k trivial character: {}",
                rec.dim_eisenstein_trivial
            )?;
            Ok(EXIT_OK)
        }
    }
}

fn verify(format: Format, c: &Cell, out: &mut dyn Write) -> Outcome {
    let p = prime_arg(c.p)?;
    let r = independence_report(p, c.k)?;
    let rec = IndependenceRecord::from(&r);
    match format {
        Format::Json => json_line(out, &rec),
        Format::Csv => csv_rows(
            out,
            &[
                [
                    "p",
                    "k",
                    "quotient_count",
                    "sturm_bound",
                    "full_bound",
                    "rank_at_sturm",
                    "rank_at_full",
                    "leading_exponents_distinct",
                    "independent",
                ]
                .map(String::from)
                .to_vec(),
                strings([
                    &rec.p,
                    &rec.k,
                    &rec.quotient_count,
                    &rec.sturm_bound,
                    &rec.full_bound,
                    &rec.rank_at_sturm,
                    &rec.rank_at_full,
                    &rec.leading_exponents_distinct,
                    &rec.independent,
                ]),
            ],
        ),
        Format::Text => {
            let verdict = if rec.independent {
                "INDEPENDENT"
            } else {
                "DEPENDENT"
            };
            writeln!(
                out,
                "rank {} / {}: {verdict}",
                rec.rank_at_full, rec.quotient_count
            )?;
            if rec.rank_at_sturm != rec.rank_at_full {
                writeln!(
                    out,
                    "note: rank {} using coefficients up to q^{}, full rank needs q^{}",
                    rec.rank_at_sturm, rec.sturm_bound, rec.full_bound
                )?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn sweep(
    format: Format,
    max_prime: u64,
    max_weight: i64,
    jobs: usize,
    out: &mut dyn Write,
) -> Outcome {
    let reports = sweep::sweep(max_prime, max_weight, jobs)?;
    let discrepant = reports.iter().any(|r| !r.discrepancies.is_empty());
    match format {
        Format::Json => {
            json_line(out, &reports)?;
        }
        Format::Csv => {
            let mut rows = vec![[
                "p",
                "k",
                "h",
                "admissible",
                "cusp_count",
                "noncusp_count",
                "dim_cusp_trivial",
                "dim_cusp_quadratic",
                "independence_verified",
                "oracle_agrees",
                "discrepancies",
            ]
            .map(String::from)
            .to_vec()];
            for r in &reports {
                let tags: Vec<&str> = r.discrepancies.iter().map(|d| d.tag.as_str()).collect();
                rows.push(strings([
                    &r.p,
                    &r.k,
                    &r.h,
                    &r.admissible,
                    &r.cusp_count,
                    &r.noncusp_count,
                    &opt(&r.dims.dim_cusp_trivial),
                    &opt(&r.dims.dim_cusp_quadratic),
                    &r.independence_verified,
                    &r.oracle_agrees,
                    &tags.join(";"),
                ]));
            }
            csv_rows(out, &rows)?;
        }
        Format::Text => {
            for r in &reports {
                let tags: Vec<&str> = r.discrepancies.iter().map(|d| d.tag.as_str()).collect();
                writeln!(
                    out,
                    "p={} k={} cusp={} noncusp={} independent={} oracle={} discrepancies={}",
                    r.p,
                    r.k,
                    r.cusp_count,
                    r.noncusp_count,
                    r.independence_verified,
                    if r.oracle_agrees {
                        "agrees"
                    } else {
                        "DISAGREES"
                    },
                    if tags.is_empty() {
                        "none".to_string()
                    } else {
                        tags.join(";")
                    }
                )?;
            }
        }
    }
    Ok(if discrepant {
        EXIT_DISCREPANCY
    } else {
        EXIT_OK
    })
}

fn transform_check(
    format: Format,
    m: &[i64],
    z: &[f64],
    prec24: i64,
    out: &mut dyn Write,
) -> Outcome {
    if m.len() != 4 {
        return Err(Failure::Usage(format!(
            "--matrix: expected 4 entries a,b,c,d, got {}",
            m.len()
        )));
    }
    if z.len() != 2 {
        return Err(Failure::Usage(format!(
            "--z: expected x,y, got {} values",
            z.len()
        )));
    }
    let g = UnimodularMatrix::new(m[0], m[1], m[2], m[3])
        .map_err(|e| Failure::Usage(format!("--matrix: {e}")))?;
    let point = Complex64::new(z[0], z[1]);
    let residual = verify_transformation(&g, point, prec24)
        .map_err(|e| Failure::Usage(format!("--z: {e}")))?;
    let rec = TransformRecord {
        matrix: [m[0], m[1], m[2], m[3]],
        z: [z[0], z[1]],
        exponent24: eta_multiplier(&g).exponent24(),
        residual,
    };
    match format {
        Format::Json => json_line(out, &rec),
        Format::Csv => csv_rows(
            out,
            &[
                ["a", "b", "c", "d", "x", "y", "exponent24", "residual"]
                    .map(String::from)
                    .to_vec(),
                strings([
                    &m[0],
                    &m[1],
                    &m[2],
                    &m[3],
                    &z[0],
                    &z[1],
                    &rec.exponent24,
                    &format!("{residual:e}"),
                ]),
            ],
        ),
        Format::Text => {
            writeln!(
                out,
                "epsilon{g} = exp(2 pi i * {}/24), residual {residual:.3e}",
                rec.exponent24
            )?;
            Ok(EXIT_OK)
        }
    }
}
