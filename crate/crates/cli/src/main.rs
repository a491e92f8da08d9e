use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{SystemTime, UNIX_EPOCH};

use cayley_core::counting::tables::{galois_sweep, to_csv, zn_sweep, TableRow};
use cayley_core::counting::{
    closed_form_galois, closed_form_zn_composite, gauss_sum, jacobi_sum, oracle_counts, Character, Counts,
};
use cayley_core::loops::norm_census;
use cayley_core::magma::corpus::run_corpus;
use cayley_core::magma::{classify_with_cap, MagmaTable};
use cayley_core::{CdAlgebra, Ring, RingSpec, RunConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

const EXIT_USAGE: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

#[derive(Parser)]
#[command(name = "cayley", version, about = "Cayley-Dickson towers over finite rings")]
struct Cli {
    /// Largest number of items an exhaustive scan may visit.
    #[arg(long, global = true, env = "CAYLEY_CAP")]
    cap: Option<u64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Count units, unimodulars or norm residues of one algebra.
    Count(CountArgs),
    /// Sweep both cardinality tables and compare closed forms with enumeration.
    VerifyTables(VerifyArgs),
    /// Evaluate a Gauss or Jacobi sum.
    Charsum(CharsumArgs),
    /// Classify finite magmas.
    #[command(subcommand)]
    Magma(MagmaCommand),
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "ring")]
struct RingArgs {
    /// Galois field of this order.
    #[arg(long)]
    gf: Option<u64>,
    /// Integers modulo n.
    #[arg(long)]
    zn: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    Units,
    Unimodulars,
    Residues,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    ClosedForm,
    Enumerate,
    Oracle,
    All,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    ring: RingArgs,
    #[arg(long)]
    level: Option<usize>,
    /// Comma-separated doubling constants; field elements by index, residues as integers.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    constants: Vec<i64>,
    #[arg(long, value_enum, default_value_t = What::Units)]
    what: What,
    #[arg(long, value_enum, default_value_t = Method::ClosedForm)]
    method: Method,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    max_q: Option<u64>,
    #[arg(long)]
    max_n: Option<u64>,
    #[arg(long, default_value_t = 2)]
    levels: usize,
}

#[derive(Args)]
struct CharsumArgs {
    #[arg(long)]
    gf: u64,
    #[command(subcommand)]
    sum: Sum,
}

#[derive(Subcommand)]
enum Sum {
    Gauss {
        /// Exponent of the character relative to the field's multiplicative generator.
        #[arg(long)]
        chi: i64,
        /// Field element by index.
        #[arg(long)]
        alpha: u64,
    },
    Jacobi {
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        chis: Vec<i64>,
        /// Sum over tuples adding up to zero instead of one.
        #[arg(long)]
        zero: bool,
    },
}

#[derive(Subcommand)]
enum MagmaCommand {
    Classify {
        #[arg(long)]
        table: PathBuf,
    },
    Corpus,
}

enum Failure {
    Usage(String),
    Mismatch(String),
}

impl From<cayley_core::Error> for Failure {
    fn from(e: cayley_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// What a command prints: a short human line and the structured result.
struct Output {
    text: String,
    json: Value,
    csv: Option<String>,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut cfg = RunConfig::default();
    if let Some(c) = cli.cap {
        cfg = cfg.with_cap(c);
    }
    if let Some(s) = cli.seed {
        cfg = cfg.with_seed(s);
    }
    if let Some(s) = cli.samples {
        cfg = cfg.with_samples(s);
    }
    if let Some(w) = cli.workers {
        cfg = cfg.with_workers(w);
    }
    let (name, result) = match &cli.command {
        Command::Count(a) => ("count", count(a, &cfg)),
        Command::VerifyTables(a) => ("verify-tables", verify_tables(a, &cfg)),
        Command::Charsum(a) => ("charsum", charsum(a, &cfg)),
        Command::Magma(MagmaCommand::Classify { table }) => ("magma classify", magma_classify(table, &cfg)),
        Command::Magma(MagmaCommand::Corpus) => ("magma corpus", magma_corpus()),
    };
    match result {
        Ok(out) => {
            emit(cli.format, name, &cfg, &out);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_MISMATCH)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("mismatch: {msg}");
            ExitCode::from(EXIT_MISMATCH)
        }
    }
}

fn emit(format: Format, command: &str, cfg: &RunConfig, out: &Output) {
    match format {
        Format::Text => println!("{}", out.text),
        Format::Csv => match &out.csv {
            Some(csv) => print!("{csv}"),
            None => println!("{}", out.text),
        },
        Format::Json => {
            let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
            let doc = json!({
                "schema": "1",
                "command": command,
                "seed": cfg.seed,
                "cap": cfg.cap,
                "timestamp": timestamp,
                "ok": out.ok,
                "result": out.json,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("json values serialize"));
        }
    }
}

fn pick(c: &Counts, what: What) -> u128 {
    match what {
        What::Units => c.units,
        What::Unimodulars => c.unimodulars,
        What::Residues => c.residues(),
    }
}

fn count(a: &CountArgs, cfg: &RunConfig) -> Result<Output, Failure> {
    let level = a.level.unwrap_or(a.constants.len());
    let constants = if a.constants.is_empty() { vec![1; level] } else { a.constants.clone() };
    if constants.len() != level {
        return Err(Failure::Usage(format!("--level {level} needs {level} constants, got {}", constants.len())));
    }
    let (spec, label) = match (a.ring.gf, a.ring.zn) {
        (Some(q), _) => (RingSpec::gf_order(q, cfg.cap.max(q))?, format!("GF({q})")),
        (_, Some(n)) => (RingSpec::zn(n), format!("Z/{n}")),
        _ => unreachable!("clap requires one ring"),
    };
    let alg = CdAlgebra::from_spec(spec, &constants)?;
    let ring = alg.ring();
    let closed = || -> Result<Counts, Failure> {
        match a.ring.zn {
            Some(n) => Ok(closed_form_zn_composite(n, &constants)?),
            None => Ok(closed_form_galois(ring, alg.constants())?),
        }
    };
    let enumerated = || -> Result<Counts, Failure> {
        let c = norm_census(&alg, cfg)?;
        Ok(Counts { units: c.units(ring) as u128, unimodulars: c.unimodulars(ring) as u128 })
    };
    let oracle = || -> Result<Counts, Failure> { Ok(oracle_counts(ring, alg.constants())?) };

    let mut values = serde_json::Map::new();
    let value = match a.method {
        Method::ClosedForm => pick(&closed()?, a.what),
        Method::Enumerate => pick(&enumerated()?, a.what),
        Method::Oracle => pick(&oracle()?, a.what),
        Method::All => {
            let c = pick(&closed()?, a.what);
            let o = pick(&oracle()?, a.what);
            values.insert("closed-form".into(), json!(c as u64));
            values.insert("oracle".into(), json!(o as u64));
            let e = if alg.size() <= cfg.cap as u128 { Some(pick(&enumerated()?, a.what)) } else { None };
            values.insert("enumerate".into(), e.map_or(Value::Null, |e| json!(e as u64)));
            if c != o || e.is_some_and(|e| e != c) {
                return Err(Failure::Mismatch(format!("{label} {constants:?}: {}", Value::Object(values))));
            }
            c
        }
    };
    let what = match a.what {
        What::Units => "units",
        What::Unimodulars => "unimodulars",
        What::Residues => "residues",
    };
    Ok(Output {
        text: value.to_string(),
        json: json!({
            "ring": label,
            "level": level,
            "constants": constants,
            "what": what,
            "value": value as u64,
            "methods": values,
        }),
        csv: None,
        ok: true,
    })
}

fn verify_tables(a: &VerifyArgs, cfg: &RunConfig) -> Result<Output, Failure> {
    if a.max_q.is_none() && a.max_n.is_none() {
        return Err(Failure::Usage("give --max-q, --max-n or both".into()));
    }
    if a.levels > 3 {
        return Err(Failure::Usage("--levels is at most 3".into()));
    }
    let mut rows: Vec<TableRow> = Vec::new();
    if let Some(q) = a.max_q {
        rows.extend(galois_sweep(q, a.levels, cfg)?);
    }
    if let Some(n) = a.max_n {
        rows.extend(zn_sweep(n, a.levels, cfg)?);
    }
    let failed: Vec<&TableRow> = rows.iter().filter(|r| !r.pass).collect();
    let mut text = format!("{}/{} rows pass", rows.len() - failed.len(), rows.len());
    for r in &failed {
        text.push_str(&format!(
            "\nFAIL {} {} level {} [{}]: units {} vs {}, unimodulars {} vs {}",
            r.table, r.ring, r.level, r.constants, r.units_closed, r.units_counted, r.unimodulars_closed,
            r.unimodulars_counted
        ));
    }
    Ok(Output {
        text,
        json: json!({ "rows": rows, "failures": failed.len() }),
        csv: Some(to_csv(&rows)?),
        ok: failed.is_empty(),
    })
}

fn fmt_part(x: f64) -> String {
    if (x - x.round()).abs() < 1e-9 {
        format!("{}", x.round() as i64)
    } else {
        format!("{x:.12}")
    }
}

fn charsum(a: &CharsumArgs, cfg: &RunConfig) -> Result<Output, Failure> {
    let field = Arc::new(Ring::new(RingSpec::gf_order(a.gf, cfg.cap.max(a.gf))?)?);
    if !field.is_field() {
        return Err(Failure::Usage(format!("{} is not a field order", a.gf)));
    }
    let (z, what) = match &a.sum {
        Sum::Gauss { chi, alpha } => {
            let c = Character::new(&field, *chi)?;
            (gauss_sum(&c, field.element(*alpha)?)?, json!({"sum": "gauss", "chi": chi, "alpha": alpha}))
        }
        Sum::Jacobi { chis, zero } => {
            let cs = chis.iter().map(|&e| Character::new(&field, e)).collect::<Result<Vec<_>, _>>()?;
            (jacobi_sum(&cs, *zero, cfg.cap)?, json!({"sum": "jacobi", "chis": chis, "zero": zero}))
        }
    };
    let (re, im) = (fmt_part(z.re), fmt_part(z.im));
    let text = if im == "0" && !re.contains('.') {
        re
    } else if im.starts_with('-') {
        format!("{re}{im}i")
    } else {
        format!("{re}+{im}i")
    };
    Ok(Output { text: text.clone(), json: json!({"q": a.gf, "query": what, "re": z.re, "im": z.im, "value": text}), csv: None, ok: true })
}

fn magma_classify(path: &PathBuf, cfg: &RunConfig) -> Result<Output, Failure> {
    let raw = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let table: MagmaTable =
        serde_json::from_str(&raw).map_err(|e| Failure::Usage(format!("malformed table: {e}")))?;
    let report = classify_with_cap(&table, cfg.cap)?;
    let mut text = format!("{} elements", report.size);
    for (flag, holds) in report.flags() {
        text.push_str(&format!("\n{flag}: {holds}"));
    }
    Ok(Output {
        text,
        json: serde_json::to_value(&report).expect("report serializes"),
        csv: None,
        ok: true,
    })
}

fn magma_corpus() -> Result<Output, Failure> {
    let outcomes = run_corpus()?;
    let passed = outcomes.iter().filter(|o| o.pass).count();
    let mut text = format!("{passed}/{} fixtures match", outcomes.len());
    for o in outcomes.iter().filter(|o| !o.pass) {
        text.push_str(&format!("\nFAIL {}: {}", o.name, o.mismatches.join("; ")));
    }
    Ok(Output {
        text,
        json: serde_json::to_value(&outcomes).expect("outcomes serialize"),
        csv: None,
        ok: passed == outcomes.len(),
    })
}
