//! Command-line interface: datum input files, exact value / factorization /
//! homotopy-order queries, and numeric verifiers.
//!
//! Exit codes: 0 success, 1 usage error, 2 malformed input file or datum
//! validation failure, 3 out-of-range query.

mod format;
mod input;

use clap::{Parser, Subcommand, ValueEnum};
use format::{parse_complex, parse_degree_range};
use kuzeta::ku::KTheoryDatum;
use kuzeta::zeta::{
    self, factorization, functional_equation_residual, homotopy_group_order,
    provisional_limit_numeric, zeta_ku_special_value, FuncEqKind, LimitTermKind,
};
use kuzeta::C64;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "kuzeta",
    about = "Exact and numeric KU-local zeta functions of finite CW-complexes",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format for results.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Echo the datum, its weight bounds, and the zeta factorization.
    Describe { file: String },
    /// Exact special value of the zeta function at an integer argument.
    Value {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        at: i64,
    },
    /// Numeric limit at an argument where zero and pole factors cancel.
    Limit {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        at: i64,
    },
    /// Table of homotopy-group orders of the KU-local dual over a degree range.
    Orders {
        file: String,
        #[arg(long, value_parser = parse_degree_range_arg, allow_hyphen_values = true)]
        degrees: (i64, i64),
    },
    /// Numeric verification commands.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Truncated Euler product against the factorized numeric value.
    Euler {
        file: String,
        #[arg(long, value_parser = parse_complex_arg, allow_hyphen_values = true)]
        s: C64,
        #[arg(long, default_value_t = 100_000)]
        bound: u64,
    },
    /// Completed functional equation residual with sign and root numbers.
    Funceq {
        file: String,
        #[arg(long, value_parser = parse_complex_arg, allow_hyphen_values = true)]
        s: C64,
    },
}

fn parse_complex_arg(text: &str) -> Result<C64, String> {
    parse_complex(text)
}

fn parse_degree_range_arg(text: &str) -> Result<(i64, i64), String> {
    parse_degree_range(text)
}

struct AppError {
    code: u8,
    message: String,
}

fn input_error(e: input::InputError) -> AppError {
    AppError { code: 2, message: e.0 }
}

fn kuzeta_error(e: kuzeta::Error) -> AppError {
    use kuzeta::Error::*;
    let code = match e {
        MissingTwo | EvenTorsion { .. } | TorsionNotSquareFree { .. } | EmptyDatum
        | OddSuspension(_) | DualOfTorsion | WedgeTorsionCollision { .. }
        | ExcludedPrimesMismatch | InvalidParameter(_) | NotEvenConcentrated(_) => 2,
        _ => 3,
    };
    AppError { code, message: e.to_string() }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<(), AppError> {
    match cli.command {
        Command::Describe { file } => {
            let datum = input::load_datum(&file).map_err(input_error)?;
            cmd_describe(&datum, cli.format)
        }
        Command::Value { file, at } => {
            let datum = input::load_datum(&file).map_err(input_error)?;
            cmd_value(&datum, at, cli.format)
        }
        Command::Limit { file, at } => {
            let datum = input::load_datum(&file).map_err(input_error)?;
            cmd_limit(&datum, at, cli.format)
        }
        Command::Orders { file, degrees } => {
            let datum = input::load_datum(&file).map_err(input_error)?;
            cmd_orders(&datum, degrees, cli.format)
        }
        Command::Verify(VerifyCommand::Euler { file, s, bound }) => {
            let datum = input::load_datum(&file).map_err(input_error)?;
            cmd_verify_euler(&datum, s, bound, cli.format)
        }
        Command::Verify(VerifyCommand::Funceq { file, s }) => {
            let datum = input::load_datum(&file).map_err(input_error)?;
            cmd_verify_funceq(&datum, s, cli.format)
        }
    }
}

fn zeta_factor_strings(shape: &zeta::ZetaFactorization) -> (Vec<String>, Vec<String>) {
    let provisional = shape
        .provisional
        .iter()
        .map(|(w, e)| {
            if *w == 0 {
                format!("zeta(s)^{e}")
            } else if *w < 0 {
                format!("zeta(s+{})^{e}", -w)
            } else {
                format!("zeta(s-{w})^{e}")
            }
        })
        .collect();
    let torsion = shape
        .torsion
        .iter()
        .map(|b| {
            format!(
                "weight {}, ell {}: {} characters of order {}, conductor {}",
                b.weight,
                b.ell,
                b.characters.len(),
                b.ell,
                b.ell * b.ell
            )
        })
        .collect();
    (provisional, torsion)
}

fn cmd_describe(datum: &KTheoryDatum, fmt: OutputFormat) -> Result<(), AppError> {
    let bounds = datum.validate().map_err(kuzeta_error)?;
    let shape = factorization(datum).map_err(kuzeta_error)?;
    let (prov, tors) = zeta_factor_strings(&shape);
    match fmt {
        OutputFormat::Text => {
            println!("name: {}", datum.name);
            println!("weight bounds: a = {}, b = {}", bounds.a, bounds.b);
            println!(
                "excluded primes: {{{}}}",
                datum
                    .excluded_primes
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            let splitting = match datum.skeletal_splitting {
                kuzeta::ku::SkeletalSplitting::Complete => "complete",
                kuzeta::ku::SkeletalSplitting::Unknown => "unknown",
            };
            println!("skeletal splitting: {splitting}");
            println!("cells:");
            for (w, c) in datum.cells() {
                println!(
                    "  weight {w}: beta_even {}, beta_odd {}, torsion_order {}",
                    c.beta_even, c.beta_odd, c.torsion_order
                );
            }
            if prov.is_empty() {
                println!("zeta factors: (none)");
            } else {
                println!("zeta factors: {}", prov.join(" * "));
            }
            if tors.is_empty() {
                println!("torsion factors: (none)");
            } else {
                println!("torsion factors:");
                for t in &tors {
                    println!("  {t}");
                }
            }
        }
        OutputFormat::Structured => {
            let mut value = input::datum_to_explicit_toml(datum);
            let table = value.as_table_mut().unwrap();
            let mut report = toml::Table::new();
            report.insert("a".into(), toml::Value::Integer(bounds.a));
            report.insert("b".into(), toml::Value::Integer(bounds.b));
            report.insert(
                "zeta_factors".into(),
                toml::Value::Array(prov.into_iter().map(toml::Value::String).collect()),
            );
            report.insert(
                "torsion_factors".into(),
                toml::Value::Array(tors.into_iter().map(toml::Value::String).collect()),
            );
            table.insert("report".into(), toml::Value::Table(report));
            print!("{}", toml::to_string(&value).expect("serializable"));
        }
    }
    Ok(())
}

fn cmd_value(datum: &KTheoryDatum, at: i64, fmt: OutputFormat) -> Result<(), AppError> {
    let bounds = datum.validate().map_err(kuzeta_error)?;
    let report = zeta_ku_special_value(datum, at).map_err(kuzeta_error)?;
    let total_str = format::total_value(&report.total);
    match fmt {
        OutputFormat::Text => {
            println!("datum: {} (a={}, b={})", report.name, bounds.a, bounds.b);
            println!("argument: {}", report.argument);
            for f in &report.provisional {
                let mut line = format!(
                    "weight {}: zeta({})^{} = {}",
                    f.weight,
                    f.argument,
                    f.exponent,
                    format::factor_value(&f.value)
                );
                if let Some(d) = &f.denominator {
                    line.push_str(&format!(", denominator {}", format::with_factorization(d)));
                }
                println!("{line}");
            }
            for t in &report.torsion {
                println!(
                    "torsion weight {}, ell {} ({} characters): L({}) = {} = {}, denominator {}",
                    t.weight,
                    t.ell,
                    t.characters,
                    t.argument,
                    format::fraction(&t.value),
                    format::fraction_factored(&t.value),
                    format::with_factorization(&t.denominator)
                );
            }
            println!("total: {total_str}");
            if let Some(q) = report.total.exact() {
                println!("total (factored): {}", format::fraction_factored(q));
            }
            if let Some(d) = report.total_denominator() {
                println!("denominator(total): {}", format::with_factorization(&d));
            }
            println!(
                "per-factor denominator product: {}",
                format::with_factorization(&report.per_factor_denominator_product)
            );
        }
        OutputFormat::Structured => {
            let mut table = toml::Table::new();
            table.insert("datum".into(), toml::Value::String(report.name.clone()));
            table.insert("argument".into(), toml::Value::Integer(report.argument));
            table.insert("total".into(), toml::Value::String(total_str));
            if let Some(q) = report.total.exact() {
                table.insert(
                    "total_factored".into(),
                    toml::Value::String(format::fraction_factored(q)),
                );
            }
            if let Some(d) = report.total_denominator() {
                table.insert(
                    "total_denominator".into(),
                    toml::Value::String(d.to_string()),
                );
            }
            table.insert(
                "per_factor_denominator_product".into(),
                toml::Value::String(report.per_factor_denominator_product.to_string()),
            );
            let prov: Vec<toml::Value> = report
                .provisional
                .iter()
                .map(|f| {
                    let mut t = toml::Table::new();
                    t.insert("weight".into(), toml::Value::Integer(f.weight));
                    t.insert("exponent".into(), toml::Value::Integer(f.exponent));
                    t.insert("argument".into(), toml::Value::Integer(f.argument));
                    t.insert(
                        "value".into(),
                        toml::Value::String(format::factor_value(&f.value)),
                    );
                    if let Some(d) = &f.denominator {
                        t.insert("denominator".into(), toml::Value::String(d.to_string()));
                    }
                    toml::Value::Table(t)
                })
                .collect();
            let tors: Vec<toml::Value> = report
                .torsion
                .iter()
                .map(|f| {
                    let mut t = toml::Table::new();
                    t.insert("weight".into(), toml::Value::Integer(f.weight));
                    t.insert("ell".into(), toml::Value::Integer(f.ell as i64));
                    t.insert("argument".into(), toml::Value::Integer(f.argument));
                    t.insert("characters".into(), toml::Value::Integer(f.characters as i64));
                    t.insert(
                        "value".into(),
                        toml::Value::String(format::fraction(&f.value)),
                    );
                    t.insert(
                        "value_factored".into(),
                        toml::Value::String(format::fraction_factored(&f.value)),
                    );
                    t.insert(
                        "denominator".into(),
                        toml::Value::String(f.denominator.to_string()),
                    );
                    toml::Value::Table(t)
                })
                .collect();
            table.insert("provisional".into(), toml::Value::Array(prov));
            table.insert("torsion".into(), toml::Value::Array(tors));
            print!("{}", toml::to_string(&table).expect("serializable"));
        }
    }
    Ok(())
}

fn cmd_limit(datum: &KTheoryDatum, at: i64, fmt: OutputFormat) -> Result<(), AppError> {
    let report = provisional_limit_numeric(datum, at).map_err(kuzeta_error)?;
    let term_lines: Vec<String> = report
        .terms
        .iter()
        .map(|t| {
            let what = match t.kind {
                LimitTermKind::Pole => "simple pole, residue 1".to_string(),
                LimitTermKind::TrivialZero => {
                    format!("trivial zero, leading coefficient {:.12e}", t.leading)
                }
                LimitTermKind::Plain => format!("value {:.12}", t.leading),
            };
            format!(
                "weight {}: zeta({})^{} -> {what}",
                t.weight, t.argument, t.exponent
            )
        })
        .collect();
    match fmt {
        OutputFormat::Text => {
            println!("datum: {}", datum.name);
            println!("argument: {}", report.argument);
            println!("first-order expansion of each factor:");
            for line in &term_lines {
                println!("  {line}");
            }
            println!("limit: {}", format::complex(report.value));
        }
        OutputFormat::Structured => {
            let mut table = toml::Table::new();
            table.insert("datum".into(), toml::Value::String(datum.name.clone()));
            table.insert("argument".into(), toml::Value::Integer(report.argument));
            table.insert(
                "limit".into(),
                toml::Value::String(format::complex(report.value)),
            );
            table.insert(
                "terms".into(),
                toml::Value::Array(term_lines.into_iter().map(toml::Value::String).collect()),
            );
            print!("{}", toml::to_string(&table).expect("serializable"));
        }
    }
    Ok(())
}

fn cmd_orders(datum: &KTheoryDatum, degrees: (i64, i64), fmt: OutputFormat) -> Result<(), AppError> {
    datum.validate().map_err(kuzeta_error)?;
    let modulo = datum
        .excluded_primes
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(", ");
    let mut rows: Vec<(i64, String, toml::Table)> = Vec::new();
    for d in degrees.0..=degrees.1 {
        let mut table = toml::Table::new();
        table.insert("degree".into(), toml::Value::Integer(d));
        match homotopy_group_order(datum, d) {
            Ok(h) => {
                let line = if let Some(note) = &h.note {
                    format!("{d}: {} ({note})", h.order)
                } else {
                    let branch = match h.branch {
                        zeta::Branch::Right => "right",
                        zeta::Branch::Left => "left",
                    };
                    format!("{d}: {} (modulo primes {{{modulo}}}) [{branch} branch]", h.order)
                };
                table.insert("order".into(), toml::Value::String(h.order.to_string()));
                table.insert(
                    "order_factored".into(),
                    toml::Value::String(format::factored(&h.order)),
                );
                if let Some(note) = &h.note {
                    table.insert("note".into(), toml::Value::String(note.clone()));
                }
                rows.push((d, line, table));
            }
            Err(kuzeta::Error::MiddleBandDegree { .. }) => {
                table.insert(
                    "note".into(),
                    toml::Value::String("outside theorem range".into()),
                );
                rows.push((d, format!("{d}: outside theorem range"), table));
            }
            Err(e) => return Err(kuzeta_error(e)),
        }
    }
    match fmt {
        OutputFormat::Text => {
            println!(
                "datum: {}; orders of pi_d of the KU-local Spanier-Whitehead dual",
                datum.name
            );
            for (_, line, _) in &rows {
                println!("{line}");
            }
        }
        OutputFormat::Structured => {
            let mut table = toml::Table::new();
            table.insert("datum".into(), toml::Value::String(datum.name.clone()));
            table.insert(
                "modulo_primes".into(),
                toml::Value::Array(
                    datum
                        .excluded_primes
                        .iter()
                        .map(|p| toml::Value::Integer(*p as i64))
                        .collect(),
                ),
            );
            table.insert(
                "orders".into(),
                toml::Value::Array(rows.into_iter().map(|(_, _, t)| toml::Value::Table(t)).collect()),
            );
            print!("{}", toml::to_string(&table).expect("serializable"));
        }
    }
    Ok(())
}

fn cmd_verify_euler(
    datum: &KTheoryDatum,
    s: C64,
    bound: u64,
    fmt: OutputFormat,
) -> Result<(), AppError> {
    let truncated = zeta::euler_product_truncated(datum, s, bound).map_err(kuzeta_error)?;
    let reference = zeta::factorized_numeric_value(datum, s).map_err(kuzeta_error)?;
    let difference = (truncated - reference).norm();
    match fmt {
        OutputFormat::Text => {
            println!("datum: {}", datum.name);
            println!("s = {}, bound = {bound}", format::complex(s));
            println!("truncated Euler product: {}", format::complex(truncated));
            println!("factorized value:        {}", format::complex(reference));
            println!("|difference| = {difference:.3e}");
        }
        OutputFormat::Structured => {
            let mut table = toml::Table::new();
            table.insert("datum".into(), toml::Value::String(datum.name.clone()));
            table.insert("s".into(), toml::Value::String(format::complex(s)));
            table.insert("bound".into(), toml::Value::Integer(bound as i64));
            table.insert(
                "truncated".into(),
                toml::Value::String(format::complex(truncated)),
            );
            table.insert(
                "factorized".into(),
                toml::Value::String(format::complex(reference)),
            );
            table.insert(
                "difference".into(),
                toml::Value::Float(difference),
            );
            print!("{}", toml::to_string(&table).expect("serializable"));
        }
    }
    Ok(())
}

fn cmd_verify_funceq(datum: &KTheoryDatum, s: C64, fmt: OutputFormat) -> Result<(), AppError> {
    let report = functional_equation_residual(datum, s).map_err(kuzeta_error)?;
    let kind = match report.kind {
        FuncEqKind::Provisional => "provisional (completed, against the dual at 1-s)",
        FuncEqKind::Torsion => "torsion (completed, against the reflected datum at 1-s)",
    };
    match fmt {
        OutputFormat::Text => {
            println!("datum: {}", datum.name);
            println!("s = {}", format::complex(s));
            println!("kind: {kind}");
            println!("lhs = {}", format::complex(report.lhs));
            println!("rhs = {}", format::complex(report.rhs));
            println!("sign: {:+}", report.sign as i32);
            println!("residual = {:.3e}", report.residual);
            if let Some(w) = report.root_number_product {
                println!("root-number product = {}", format::complex(w));
            }
        }
        OutputFormat::Structured => {
            let mut table = toml::Table::new();
            table.insert("datum".into(), toml::Value::String(datum.name.clone()));
            table.insert("s".into(), toml::Value::String(format::complex(s)));
            table.insert("kind".into(), toml::Value::String(kind.into()));
            table.insert("lhs".into(), toml::Value::String(format::complex(report.lhs)));
            table.insert("rhs".into(), toml::Value::String(format::complex(report.rhs)));
            table.insert("sign".into(), toml::Value::Integer(report.sign as i64));
            table.insert("residual".into(), toml::Value::Float(report.residual));
            if let Some(w) = report.root_number_product {
                table.insert(
                    "root_number_product".into(),
                    toml::Value::String(format::complex(w)),
                );
            }
            print!("{}", toml::to_string(&table).expect("serializable"));
        }
    }
    Ok(())
}
