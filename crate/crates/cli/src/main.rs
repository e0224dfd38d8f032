//! `formsplit`: decide whether a form is a direct sum and print a certified
//! decomposition.

mod report;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use formsplit::decomposition::{decompose_once, verify_split};
use formsplit::{
    apolarity, classify, factor_form, parse_form, parse_form_infer, print_form, Error, Field, Form, Options, Scalar,
    Side,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Command {
    /// Full report: gates, associated form, factors, splits, fiber, criteria.
    Analyze,
    /// The associated form, normalized.
    Assocform,
    /// Irreducible factorization of the input.
    Factor,
    /// Decision procedure only.
    Decompose,
    /// Check a split witness against the input.
    Verify,
}

#[derive(Debug, Parser)]
#[command(name = "formsplit", version, about = "Direct-sum decomposition of homogeneous forms")]
struct Cli {
    /// What to run.
    #[arg(long, value_enum, default_value = "analyze")]
    command: Command,

    /// Input file; `-` or nothing reads standard input.
    input: Option<PathBuf>,

    /// Inline input instead of a file.
    #[arg(long, short = 'e', conflicts_with = "input")]
    expr: Option<String>,

    /// Number of variables (default: largest index in the input).
    #[arg(long)]
    n: Option<usize>,

    /// `q` or `fp:<p>`.
    #[arg(long, default_value = "q")]
    field: String,

    #[arg(long, default_value_t = formsplit::options::DEFAULT_SEED)]
    seed: u64,

    /// Largest graded piece the linear algebra may build.
    #[arg(long, default_value_t = 100_000)]
    max_ambient_dim: usize,

    /// Witness JSON for `--command verify`: a split object or a full report.
    #[arg(long)]
    witness: Option<PathBuf>,

    /// Compact JSON output.
    #[arg(long, conflicts_with = "pretty")]
    json: bool,

    /// Indented JSON output.
    #[arg(long)]
    pretty: bool,

    /// Include wall-clock timings in the report.
    #[arg(long)]
    timings: bool,

    /// Worker threads for the linear algebra (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
}

enum Failure {
    Input(Value),
    Guard(Value),
    Internal(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let v = json!({ "error": e.kind(), "message": e.to_string() });
        if e.is_guard() {
            Failure::Guard(v)
        } else if e.is_input_error() || matches!(e, Error::NotSmooth | Error::AssumptionViolated { .. }) {
            Failure::Input(v)
        } else {
            Failure::Internal(v)
        }
    }
}

fn input_error(kind: &str, message: impl Into<String>) -> Failure {
    Failure::Input(json!({ "error": kind, "message": message.into() }))
}

struct Output {
    value: Value,
    text: String,
    passed: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("formsplit: cannot configure thread pool: {e}");
        }
    }
    match run(&cli) {
        Ok(out) => {
            emit(&cli, &out.value, &out.text);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            let (v, code) = match f {
                Failure::Input(v) => (v, 2),
                Failure::Guard(v) => (v, 3),
                Failure::Internal(v) => (v, 4),
            };
            eprintln!("formsplit: {}", v["message"].as_str().unwrap_or("error"));
            if cli.json || cli.pretty {
                emit(&cli, &v, "");
            }
            ExitCode::from(code)
        }
    }
}

fn emit(cli: &Cli, value: &Value, text: &str) {
    if cli.pretty {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
    } else if cli.json {
        println!("{}", value);
    } else {
        print!("{text}");
    }
}

fn read_source(cli: &Cli) -> Result<String, Failure> {
    if let Some(e) = &cli.expr {
        return Ok(e.clone());
    }
    match &cli.input {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| input_error("io_error", format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| input_error("io_error", format!("cannot read standard input: {e}")))?;
            Ok(s)
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let field: Field = cli.field.parse()?;
    let opts = Options { max_ambient_dim: cli.max_ambient_dim, seed: cli.seed, ..Options::default() };
    let text = read_source(cli)?;
    let f = parse_form_infer(&text, cli.n, Side::S, field)?;
    if f.is_zero() {
        return Err(Error::ZeroForm.into());
    }
    field.check_guard(f.n(), f.degree())?;
    let start = Instant::now();
    let mut out = match cli.command {
        Command::Analyze => analyze(&f, &opts)?,
        Command::Decompose => decompose(&f, &opts)?,
        Command::Assocform => assocform(&f, &opts)?,
        Command::Factor => factor(&f, &opts)?,
        Command::Verify => verify(cli, &f)?,
    };
    if let Some(obj) = out.value.as_object_mut() {
        let timings = cli.timings.then(|| json!({ "total": start.elapsed().as_secs_f64() * 1e3 }));
        if obj.contains_key("timings_ms") || cli.timings {
            obj.insert("timings_ms".into(), timings.unwrap_or(Value::Null));
        }
        obj.insert("seed".into(), json!(cli.seed));
    }
    Ok(out)
}

fn rows_text(v: &Value) -> String {
    v.as_array()
        .map(|rows| {
            rows.iter()
                .map(|r| {
                    let cells: Vec<&str> = r.as_array().into_iter().flatten().filter_map(|c| c.as_str()).collect();
                    format!("[{}]", cells.join(", "))
                })
                .collect::<Vec<_>>()
                .join(" ")
        })
        .unwrap_or_default()
}

fn summary(v: &Value) -> String {
    let mut s = format!("verdict: {}\n", v["verdict"].as_str().unwrap_or("?"));
    s += &format!("n = {}, degree = {}, field = {}\n", v["n"], v["degree"], v["field"].as_str().unwrap_or("?"));
    for key in ["concise", "smooth", "fiber_dimension"] {
        if !v[key].is_null() {
            s += &format!("{}: {}\n", key.replace('_', " "), v[key]);
        }
    }
    if let Some(a) = v["associated_form"].as_str() {
        s += &format!("associated form: {a}\n");
    }
    for f in v["factors"].as_array().into_iter().flatten() {
        s += &format!(
            "  factor ({})^{}  essential dim {}\n",
            f["poly"].as_str().unwrap_or(""),
            f["multiplicity"],
            f["essential_dim"]
        );
    }
    for (i, w) in v["splits"].as_array().into_iter().flatten().enumerate() {
        s += &format!("split {}: basis {}\n", i + 1, rows_text(&w["basis"]));
        s += &format!("  f1 = {}\n  f2 = {}\n", w["f1"].as_str().unwrap_or(""), w["f2"].as_str().unwrap_or(""));
    }
    if let Some(mf) = v["maximally_fine"].as_object() {
        s += &format!("maximally fine basis {}\n", rows_text(&mf["basis"]));
        for sm in mf["summands"].as_array().into_iter().flatten() {
            s += &format!("  {} * ({})\n", sm["scalar"].as_str().unwrap_or(""), sm["form"].as_str().unwrap_or(""));
        }
    }
    if let Some(b) = v["benson"].as_object() {
        s += &format!("jordan test: {}\n", b["outcome"].as_str().unwrap_or(""));
    }
    if let Some(c) = v["criteria"].as_object() {
        for key in ["mt3", "mt4"] {
            s += &format!(
                "{key}: {} ({})\n",
                c[key]["result"].as_str().unwrap_or(""),
                c[key]["reason"].as_str().unwrap_or("")
            );
        }
    }
    if let Some(note) = v["field_note"].as_str() {
        s += &format!("note: {note}\n");
    }
    s
}

fn analyze(f: &Form, opts: &Options) -> Result<Output, Failure> {
    let r = classify(f, opts)?;
    let value = report::report(f, &r, opts.seed, None);
    Ok(Output { text: summary(&value), value, passed: true })
}

fn decompose(f: &Form, opts: &Options) -> Result<Output, Failure> {
    let r = match decompose_once(f, opts) {
        Err(Error::AssumptionViolated { .. }) => {
            let mut r = classify(f, opts)?;
            r.criteria = None;
            r
        }
        other => other?,
    };
    let value = report::report(f, &r, opts.seed, None);
    Ok(Output { text: summary(&value), value, passed: true })
}

fn assocform(f: &Form, opts: &Options) -> Result<Output, Failure> {
    apolarity::require_s_side(f)?;
    let a = apolarity::associated_form(f, opts)?;
    let text = print_form(&a.normalized().1);
    let value = json!({ "input": print_form(f), "associated_form": text });
    Ok(Output { text: format!("{text}\n"), value, passed: true })
}

fn factor(f: &Form, opts: &Options) -> Result<Output, Failure> {
    let fl = factor_form(f, opts)?;
    let mut text = format!("unit: {}\n", fl.unit);
    for fa in &fl.factors {
        text += &format!("({})^{}\n", print_form(&fa.form), fa.multiplicity);
    }
    let value = json!({ "input": print_form(f), "unit": fl.unit.to_string(), "factors": report::factors(&fl) });
    Ok(Output { text, value, passed: true })
}

fn schema(field: &str, message: impl Into<String>) -> Failure {
    Failure::Input(json!({ "error": "schema", "field": field, "message": message.into() }))
}

fn parse_basis(v: &Value, field: Field) -> Result<Vec<Vec<Scalar>>, Failure> {
    let rows = v.as_array().ok_or_else(|| schema("basis", "expected an array of rows"))?;
    rows.iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| schema("basis", "each row must be an array"))?
                .iter()
                .map(|c| {
                    let s = match c {
                        Value::String(s) => s.clone(),
                        Value::Number(n) => n.to_string(),
                        _ => return Err(schema("basis", "entries must be rational strings")),
                    };
                    field.parse_scalar(&s).map_err(|e| schema("basis", e.to_string()))
                })
                .collect()
        })
        .collect()
}

fn parse_summand(w: &Value, key: &str, n: usize, field: Field) -> Result<Form, Failure> {
    let s = w[key].as_str().ok_or_else(|| schema(key, "expected a polynomial string"))?;
    parse_form(s, n, Side::S, field).map_err(|e| schema(key, e.to_string()))
}

fn verify(cli: &Cli, f: &Form) -> Result<Output, Failure> {
    let path = cli.witness.as_ref().ok_or_else(|| input_error("missing_witness", "--witness is required"))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| input_error("io_error", format!("cannot read {}: {e}", path.display())))?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| schema("witness", e.to_string()))?;
    let witnesses: Vec<&Value> = match doc.get("splits") {
        Some(Value::Array(ws)) => ws.iter().collect(),
        Some(_) => return Err(schema("splits", "expected an array")),
        None => vec![&doc],
    };
    if witnesses.is_empty() {
        return Err(input_error("no_witness", "the report contains no splits"));
    }
    let mut checks = Vec::new();
    let mut text = String::new();
    let mut all = true;
    for (i, w) in witnesses.iter().enumerate() {
        let basis = parse_basis(&w["basis"], f.field())?;
        let f1 = parse_summand(w, "f1", f.n(), f.field())?;
        let f2 = parse_summand(w, "f2", f.n(), f.field())?;
        let c = verify_split(f, &basis, &f1, &f2)?;
        all &= c.passed;
        text += &match &c.failure {
            None => format!("split {}: pass\n", i + 1),
            Some(why) => format!("split {}: fail: {why}\n", i + 1),
        };
        checks.push(json!({ "passed": c.passed, "failure": c.failure }));
    }
    let value = json!({ "input": print_form(f), "passed": all, "checks": checks });
    Ok(Output { value, text, passed: all })
}
