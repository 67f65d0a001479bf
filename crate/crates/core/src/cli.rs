//! The `dyckstat` command line.
//!
//! Exit codes: 0 success, 1 a verification suite found a failure, 2 usage,
//! domain or invariant errors, 3 the brute-force work cap was exceeded, 4 an
//! I/O error. Big integers are always printed as decimal strings in JSON.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::bijection::{self, PathPair};
use crate::error::Error;
use crate::formulas::CountId;
use crate::path::{enumerate, LatticePath, PathKind};
use crate::stats::{MarkedPath, Statistic};
use crate::svg::Diagram;
use crate::tables::Table;
use crate::verify::{self, evaluate, Method, Suite};

#[derive(Parser, Debug)]
#[command(name = "dyckstat", version, about = "Symmetric and asymmetric peaks and valleys in Dyck paths")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List paths of one kind in lexicographic order (u before d).
    Enumerate(EnumerateArgs),
    /// Evaluate one count.
    Count(CountArgs),
    /// Print one of the triangles.
    Table(TableArgs),
    /// Apply or invert a bijection.
    Bijection(BijectionArgs),
    /// Run self-check suites.
    Verify(VerifyArgs),
    /// Draw a path, a marked path or a pair as SVG.
    Diagram(DiagramArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Lines,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Dyck,
    Partial,
    Free,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Formula,
    Series,
    Brute,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Formula => Method::Formula,
            MethodArg::Series => Method::Series,
            MethodArg::Brute => Method::Brute,
        }
    }
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Semilength; partial paths have length 2n - end_level.
    #[arg(long)]
    n: usize,
    #[arg(long)]
    end_level: Option<usize>,
    #[arg(long, value_enum, default_value = "lines")]
    format: Format,
}

#[derive(Args, Debug)]
struct CountArgs {
    /// Count identifier, e.g. S, V_L, SP_TOTAL, LP_PARTIAL.
    #[arg(long)]
    id: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, value_enum, default_value = "formula")]
    method: MethodArg,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct TableArgs {
    /// 1.1, 2.1 to 2.5, or 3.1 to 3.3.
    #[arg(long)]
    id: String,
    /// Rows to print; defaults to the printed size.
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long, value_enum, default_value = "formula")]
    method: MethodArg,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MapName {
    Pyramid,
    Phi,
    #[value(name = "phi_prime", alias = "phi-prime")]
    PhiPrime,
    Theta,
    Rho,
    Eta,
    #[value(name = "valley_shift", alias = "valley-shift")]
    ValleyShift,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Direction {
    Apply,
    Invert,
}

#[derive(Args, Debug)]
struct BijectionArgs {
    #[arg(value_enum)]
    name: MapName,
    #[arg(value_enum)]
    direction: Direction,
    /// A path (with --mark) or the two components of a pair.
    #[arg(required = true, num_args = 1..=2)]
    input: Vec<String>,
    /// Index of the marked peak or valley, counted from the left from 0.
    #[arg(long)]
    mark: Option<usize>,
    /// Pyramid height.
    #[arg(long, default_value_t = 1)]
    j: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Tables,
    Bijections,
    Series,
    Sequences,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Tables => Suite::Tables,
            SuiteArg::Bijections => Suite::Bijections,
            SuiteArg::Series => Suite::Series,
            SuiteArg::Sequences => Suite::Sequences,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: SuiteArg,
    #[arg(long, default_value_t = 7)]
    max_n: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct DiagramArgs {
    /// One path, or the two components of a pair.
    #[arg(required = true, num_args = 1..=2)]
    input: Vec<String>,
    /// Index of the peak (or, with --valley, valley) to shade.
    #[arg(long)]
    mark: Option<usize>,
    #[arg(long)]
    valley: bool,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Usage(String),
    Io(io::Error),
    /// A verification suite reported failures; the report was printed.
    Checks,
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Checks => 1,
            Failure::Lib(Error::Resource { .. }) => 3,
            Failure::Lib(_) | Failure::Usage(_) => 2,
            Failure::Io(_) => 4,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Parses `args` (program name first) and runs the command, writing to the
/// given streams. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Enumerate(a) => cmd_enumerate(a, out),
        Command::Count(a) => cmd_count(a, out),
        Command::Table(a) => cmd_table(a, out),
        Command::Bijection(a) => cmd_bijection(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Diagram(a) => cmd_diagram(a, out),
    };
    let result = result.and_then(|()| out.flush().map_err(Failure::Io));
    match result {
        Ok(()) => 0,
        Err(f) => {
            let message = match &f {
                Failure::Lib(e) => format!("error: {e}"),
                Failure::Usage(m) => format!("error: {m}"),
                Failure::Io(e) => format!("error: {e}"),
                Failure::Checks => "error: verification failed".to_string(),
            };
            let _ = writeln!(err, "{message}");
            f.exit_code()
        }
    }
}

fn write_json(out: &mut dyn Write, value: &impl Serialize) -> Outcome {
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| Failure::Io(e.into()))?;
    writeln!(out)?;
    Ok(())
}

fn reject_format(command: &str, format: Format) -> Failure {
    Failure::Usage(format!("{command} does not support --format {format:?}").to_lowercase())
}

fn cmd_enumerate(a: EnumerateArgs, out: &mut dyn Write) -> Outcome {
    let (kind, length) = match (a.kind, a.end_level) {
        (Kind::Partial, level) => {
            let level = level.unwrap_or(0);
            if level > a.n {
                return Err(Failure::Usage(format!("--end-level {level} exceeds --n {}", a.n)));
            }
            (PathKind::PartialDyck(level as u32), 2 * a.n - level)
        }
        (_, Some(_)) => return Err(Failure::Usage("--end-level only applies to --kind partial".into())),
        (Kind::Dyck, None) => (PathKind::Dyck, 2 * a.n),
        (Kind::Free, None) => (PathKind::FreeDyck, 2 * a.n),
    };
    let paths = enumerate(kind, length)?;
    match a.format {
        Format::Lines => {
            for p in paths {
                writeln!(out, "{p}")?;
            }
        }
        Format::Json => {
            let list: Vec<String> = paths.map(|p| p.to_string()).collect();
            write_json(out, &list)?;
        }
        Format::Csv => return Err(reject_format("enumerate", a.format)),
    }
    Ok(())
}

fn cmd_count(a: CountArgs, out: &mut dyn Write) -> Outcome {
    let id: CountId = a.id.parse()?;
    if id.arity() < 2 && a.k.is_some() {
        return Err(Failure::Usage(format!("{id} takes no --k")));
    }
    if id.arity() < 3 && a.r.is_some() {
        return Err(Failure::Usage(format!("{id} takes no --r")));
    }
    let (k, r) = (a.k.unwrap_or(0), a.r.unwrap_or(0));
    let method = Method::from(a.method);
    let value = evaluate(method, id, a.n, k, r)?;
    match a.format {
        Format::Lines => writeln!(out, "{value}")?,
        Format::Json => {
            let mut obj = Map::new();
            obj.insert("id".into(), json!(id.name()));
            obj.insert("n".into(), json!(a.n));
            if id.arity() >= 2 {
                obj.insert("k".into(), json!(k));
            }
            if id.arity() >= 3 {
                obj.insert("r".into(), json!(r));
            }
            obj.insert("method".into(), json!(method.to_string()));
            obj.insert("value".into(), json!(value.to_string()));
            write_json(out, &Value::Object(obj))?;
        }
        Format::Csv => return Err(reject_format("count", a.format)),
    }
    Ok(())
}

fn cmd_table(a: TableArgs, out: &mut dyn Write) -> Outcome {
    let table = Table::get(&a.id)?;
    let rows = a.rows.unwrap_or(table.printed.len());
    if rows == 0 {
        return Err(Failure::Usage("--rows must be at least 1".into()));
    }
    let method = Method::from(a.method);
    let values = table.compute(rows, method)?;
    let width = table.row_width(rows - 1) + 1;
    let cell = |row: &Vec<BigInt>, k: usize| row.get(k).map(|v| v.to_string());
    match a.format {
        Format::Json => {
            let matrix: Vec<Vec<Option<String>>> =
                values.iter().map(|row| (0..width).map(|k| cell(row, k)).collect()).collect();
            let doc = json!({
                "id": table.id,
                "count": table.count.name(),
                "method": method.to_string(),
                "rows": matrix,
            });
            write_json(out, &doc)?;
        }
        Format::Csv => {
            let header: Vec<String> = std::iter::once("n".to_string()).chain((0..width).map(|k| k.to_string())).collect();
            writeln!(out, "{}", header.join(","))?;
            for (n, row) in values.iter().enumerate() {
                let cells: Vec<String> = (0..width).map(|k| cell(row, k).unwrap_or_default()).collect();
                writeln!(out, "{n},{}", cells.join(","))?;
            }
        }
        Format::Lines => {
            let pad = values.iter().flatten().map(|v| v.to_string().len()).max().unwrap_or(1);
            for row in &values {
                let mut line = String::new();
                for v in row {
                    let _ = write!(line, "{v:>pad$} ");
                }
                writeln!(out, "{}", line.trim_end())?;
            }
        }
    }
    Ok(())
}

fn mark_json(m: &MarkedPath) -> Value {
    let r = m.record();
    json!({
        "statistic": m.statistic(),
        "index": m.index(),
        "class": r.class(),
        "weight": r.weight(),
    })
}

fn parse_path(s: &str) -> Result<LatticePath, Failure> {
    Ok(s.parse::<LatticePath>()?)
}

fn marked_input(a: &BijectionArgs, statistic: Statistic) -> Result<MarkedPath, Failure> {
    if a.input.len() != 1 {
        return Err(Failure::Usage("this direction takes one path and --mark".into()));
    }
    let mark = a.mark.ok_or_else(|| Failure::Usage("--mark is required for a path input".into()))?;
    Ok(MarkedPath::new(parse_path(&a.input[0])?, statistic, mark)?)
}

fn pair_input(a: &BijectionArgs) -> Result<PathPair, Failure> {
    if a.input.len() != 2 || a.mark.is_some() {
        return Err(Failure::Usage("this direction takes two paths (first, second) and no --mark".into()));
    }
    Ok(PathPair::new(parse_path(&a.input[0])?, parse_path(&a.input[1])?))
}

fn pair_json(pair: &PathPair) -> Value {
    json!({ "first": pair.first.to_string(), "second": pair.second.to_string() })
}

fn cmd_bijection(a: BijectionArgs, out: &mut dyn Write) -> Outcome {
    use Statistic::{Peak, Valley};
    type PathToPair = fn(&MarkedPath) -> crate::Result<PathPair>;
    type PairToPath = fn(&PathPair) -> crate::Result<MarkedPath>;
    if a.j == 0 {
        return Err(Failure::Usage("--j must be positive".into()));
    }
    let to_pair: Option<(Statistic, PathToPair, PairToPath)> = match a.name {
        MapName::Phi => Some((Peak, bijection::phi, bijection::phi_inv)),
        MapName::PhiPrime => Some((Peak, bijection::phi_prime, bijection::phi_prime_inv)),
        MapName::Theta => Some((Valley, bijection::theta, bijection::theta_inv)),
        MapName::Rho => Some((Valley, bijection::rho, bijection::rho_inv)),
        _ => None,
    };
    let doc = if let Some((stat, fwd, inv)) = to_pair {
        match a.direction {
            Direction::Apply => {
                let m = marked_input(&a, stat)?;
                let pair = fwd(&m)?;
                json!({ "input": m.path().to_string(), "output": pair_json(&pair), "mark": mark_json(&m) })
            }
            Direction::Invert => {
                let pair = pair_input(&a)?;
                let m = inv(&pair)?;
                json!({ "input": pair_json(&pair), "output": m.path().to_string(), "mark": mark_json(&m) })
            }
        }
    } else {
        let (input_stat, result) = match (a.name, a.direction) {
            (MapName::Pyramid, Direction::Apply) => {
                let m = marked_input(&a, Peak)?;
                (m.clone(), bijection::pyramid_lift(&m, a.j)?)
            }
            (MapName::Pyramid, Direction::Invert) => {
                let m = marked_input(&a, Peak)?;
                (m.clone(), bijection::pyramid_drop(&m, a.j)?)
            }
            (MapName::Eta, Direction::Apply) => {
                let m = marked_input(&a, Peak)?;
                (m.clone(), bijection::eta(&m)?)
            }
            (MapName::Eta, Direction::Invert) => {
                let m = marked_input(&a, Valley)?;
                (m.clone(), bijection::eta_inv(&m)?)
            }
            (MapName::ValleyShift, Direction::Apply) => {
                let m = marked_input(&a, Valley)?;
                (m.clone(), bijection::valley_shift(&m)?)
            }
            (MapName::ValleyShift, Direction::Invert) => {
                let m = marked_input(&a, Valley)?;
                (m.clone(), bijection::valley_shift_inv(&m)?)
            }
            _ => unreachable!("pair maps handled above"),
        };
        json!({
            "input": input_stat.path().to_string(),
            "input_mark": mark_json(&input_stat),
            "output": result.path().to_string(),
            "mark": mark_json(&result),
        })
    };
    match a.format {
        Format::Json => write_json(out, &doc),
        Format::Lines => {
            let show = |v: &Value| match v {
                Value::String(s) => s.clone(),
                other => format!("{} {}", other["first"].as_str().unwrap_or(""), other["second"].as_str().unwrap_or("")),
            };
            writeln!(out, "{}", show(&doc["output"]))?;
            Ok(())
        }
        Format::Csv => Err(reject_format("bijection", a.format)),
    }
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Outcome {
    let report = verify::run_suite(a.suite.into(), a.max_n);
    match a.format {
        Format::Json => write_json(out, &report)?,
        Format::Lines => writeln!(out, "{report}")?,
        Format::Csv => return Err(reject_format("verify", a.format)),
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn cmd_diagram(a: DiagramArgs, out: &mut dyn Write) -> Outcome {
    let svg = match a.input.as_slice() {
        [one] => {
            let path = parse_path(one)?;
            match a.mark {
                Some(i) => {
                    let stat = if a.valley { Statistic::Valley } else { Statistic::Peak };
                    Diagram::new().marked(&MarkedPath::new(path, stat, i)?).render()
                }
                None => Diagram::new().path(&path).render(),
            }
        }
        [first, second] => {
            if a.mark.is_some() {
                return Err(Failure::Usage("--mark applies to a single path".into()));
            }
            Diagram::new().pair(&PathPair::new(parse_path(first)?, parse_path(second)?)).render()
        }
        _ => return Err(Failure::Usage("diagram takes one or two paths".into())),
    };
    match a.out {
        Some(file) => std::fs::write(&file, svg)
            .map_err(|e| Failure::Io(io::Error::new(e.kind(), format!("{}: {e}", file.display()))))?,
        None => out.write_all(svg.as_bytes())?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("dyckstat").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["count", "--id", "S", "--n", "5", "--k", "1"]).0, 0);
        assert_eq!(call(&["count", "--id", "NOPE", "--n", "5"]).0, 2);
        assert_eq!(call(&["count", "--id", "SP_TOTAL", "--n", "5", "--k", "1"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn bijection_usage_errors() {
        let (code, _, err) = call(&["bijection", "phi", "apply", "uudd"]);
        assert_eq!(code, 2);
        assert!(err.contains("--mark"));
        let (code, _, err) = call(&["bijection", "phi", "apply", "uudd", "--mark", "0"]);
        assert_eq!(code, 2);
        assert!(err.contains("invariant"), "{err}");
        assert_eq!(call(&["bijection", "phi", "invert", "uudd"]).0, 2);
    }
}
