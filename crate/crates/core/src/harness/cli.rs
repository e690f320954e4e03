//! The `cck` command line.
//!
//! Exit codes: 0 success, 1 fixture or oracle mismatch, 2 unreadable or
//! malformed input, 3 invariant violation.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::algebra::{TropicalElement, TropicalSemifield};
use crate::arcs::{crossing_band, enumerate_paths, Arc};
use crate::expansion::{chi_table, expand_principal, expand_with_coefficients, f_polynomial, g_vector};
use crate::harness::corpus::{annulus_corpus, compare, polygon_corpus};
use crate::harness::fixtures::selftest;
use crate::harness::io::{parse_coefficients, parse_surface, InputError, SurfaceFile};
use crate::harness::oracle::{oracle_expand, OracleConfig};
use crate::Error;

const FORMAT_TAG: &str = "cck/1";

#[derive(Debug, Parser)]
#[command(name = "cck", version, about = "Cluster variables of unpunctured surfaces from complete paths")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Laurent expansion with principal coefficients (or those of --coeffs).
    Expand(Common),
    /// F-polynomial.
    Fpoly(Common),
    /// g-vector with its index multisets.
    Gvector(Common),
    /// Path counts by γ-oriented multiplicity.
    Chi(Common),
    /// Cluster variable by seed mutation, or a corpus comparison with --compare.
    Oracle(OracleArgs),
    /// Checks the built-in fixtures.
    Selftest,
}

#[derive(Debug, Args)]
struct Common {
    /// Surface file.
    #[arg(long)]
    surface: PathBuf,
    /// Arc spec; overrides the file's `arc` line.
    #[arg(long)]
    arc: Option<String>,
    /// Coefficient file.
    #[arg(long)]
    coeffs: Option<PathBuf>,
    /// Triangulations examined per fallback search of the oracle.
    #[arg(long)]
    budget: Option<usize>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long, required_unless_present = "compare")]
    surface: Option<PathBuf>,
    #[arg(long)]
    arc: Option<String>,
    #[arg(long)]
    coeffs: Option<PathBuf>,
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long)]
    jobs: Option<usize>,
    /// Compare path expansions with the oracle over a generated corpus.
    #[arg(long)]
    compare: bool,
    /// Largest polygon in the corpus.
    #[arg(long, default_value_t = 10)]
    max_polygon: usize,
    /// Largest p + q for annuli in the corpus.
    #[arg(long, default_value_t = 6)]
    max_annulus: usize,
    /// Largest |winding| of annulus arcs.
    #[arg(long, default_value_t = 2)]
    max_winding: i64,
    /// Flip distance from the staircase triangulation of each annulus.
    #[arg(long, default_value_t = 1)]
    flip_depth: usize,
}

#[derive(Serialize)]
struct GVectorRecord<'a> {
    g: &'a [i64],
    #[serde(rename = "I+")]
    plus: &'a [usize],
    #[serde(rename = "I-")]
    minus: &'a [usize],
}

#[derive(Serialize)]
struct ChiEntry<'a> {
    e: &'a [u32],
    chi: u64,
}

#[derive(Serialize)]
struct ChiRecord<'a> {
    euler_characteristic: bool,
    paths: u64,
    table: Vec<ChiEntry<'a>>,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Io(_) => 2,
            Error::Input(InputError::Syntax { .. }) => 2,
            _ => 3,
        };
        Self { code, message: e.to_string() }
    }
}

fn fail<E: Into<Error>>(e: E) -> Failure {
    Failure::from(e.into())
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure { code: 2, message: format!("{}: {e}", path.display()) })
}

fn load(path: &PathBuf, arc: Option<&String>) -> Result<(SurfaceFile, Arc), Failure> {
    let file = parse_surface(&read(path)?).map_err(|e| Failure { code: e_code(&e), message: format!("{}: {e}", path.display()) })?;
    let arc = match arc {
        Some(spec) => spec.parse::<Arc>().map_err(|e| Failure { code: 2, message: format!("--arc: {e}") })?,
        None => file.arc.clone().ok_or(Failure { code: 2, message: "no arc given (use --arc or an `arc` line)".into() })?,
    };
    let arc = file.resolve_arc(&arc);
    Ok((file, arc))
}

fn e_code(e: &InputError) -> i32 {
    match e {
        InputError::Syntax { .. } => 2,
        InputError::Invalid { .. } => 3,
    }
}

fn coefficient_rows(path: Option<&PathBuf>, n: usize) -> Result<Option<Vec<Vec<i64>>>, Failure> {
    match path {
        None => Ok(None),
        Some(p) => parse_coefficients(&read(p)?, n)
            .map(Some)
            .map_err(|e| Failure { code: e_code(&e), message: format!("{}: {e}", p.display()) }),
    }
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    match jobs {
        None => Ok(f()),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| Failure { code: 2, message: format!("--jobs: {e}") }),
    }
}

fn run_common(cmd: &Command, c: &Common) -> Result<(String, i32), Failure> {
    let (file, arc) = load(&c.surface, c.arc.as_ref())?;
    let t = &file.triangulation;
    let mut out = format!("{FORMAT_TAG}\n");
    match cmd {
        Command::Expand(_) => match coefficient_rows(c.coeffs.as_ref(), t.rank())? {
            None => out += &format!("{}\n", expand_principal(t, &arc).map_err(fail)?),
            Some(rows) => {
                let sf = TropicalSemifield::new(rows.first().map_or(0, Vec::len));
                let yhat: Vec<TropicalElement> = rows.into_iter().map(TropicalElement::new).collect();
                out += &format!("{}\n", expand_with_coefficients(t, &arc, &sf, &yhat).map_err(fail)?.render('u'));
            }
        },
        Command::Fpoly(_) => out += &format!("{}\n", f_polynomial(t, &arc).map_err(fail)?),
        Command::Gvector(_) => {
            let g = g_vector(t, &arc).map_err(fail)?;
            let rec = GVectorRecord { g: &g.entries, plus: &g.plus, minus: &g.minus };
            out += &serde_json::to_string(&rec).expect("serializable");
            out.push('\n');
        }
        Command::Chi(_) => {
            let chi = chi_table(t, &arc).map_err(fail)?;
            let paths = enumerate_paths(&crossing_band(t, &arc).map_err(fail)?).len() as u64;
            let rec = ChiRecord {
                euler_characteristic: chi.euler_characteristic,
                paths,
                table: chi.entries.iter().map(|(e, &n)| ChiEntry { e, chi: n }).collect(),
            };
            out += &serde_json::to_string(&rec).expect("serializable");
            out.push('\n');
        }
        _ => unreachable!("handled elsewhere"),
    }
    Ok((out, 0))
}

fn run_oracle(o: &OracleArgs) -> Result<(String, i32), Failure> {
    let mut out = format!("{FORMAT_TAG}\n");
    if o.compare {
        let mut corpus = polygon_corpus(o.max_polygon);
        corpus.extend(annulus_corpus(o.max_annulus, o.flip_depth, o.max_winding));
        let config = OracleConfig { budget: o.budget, coefficients: None };
        let cmp = with_jobs(o.jobs, || compare(&corpus, &config))?;
        if cmp.is_equal() {
            out += &format!("EQUAL n_cases={} fallbacks={}\n", cmp.cases, cmp.fallbacks);
            return Ok((out, 0));
        }
        out += &format!("MISMATCH n_cases={} n_mismatches={}\n", cmp.cases, cmp.mismatches.len());
        for m in &cmp.mismatches {
            out += &format!("{m}\n");
        }
        return Ok((out, 1));
    }
    let surface = o.surface.as_ref().expect("required by clap");
    let (file, arc) = load(surface, o.arc.as_ref())?;
    let t = &file.triangulation;
    let config = OracleConfig { budget: o.budget, coefficients: coefficient_rows(o.coeffs.as_ref(), t.rank())? };
    let r = oracle_expand(t, &arc, &config).map_err(fail)?;
    let flips: Vec<String> = r.flip_sequence.iter().map(usize::to_string).collect();
    out += &format!("{}\nflips {}\nseeds_visited {}\n", r.value, flips.join(" "), r.seeds_visited);
    Ok((out, 0))
}

fn run_selftest() -> Result<(String, i32), Failure> {
    let checks = selftest().map_err(Failure::from)?;
    let mut out = format!("{FORMAT_TAG}\n");
    let mut failed = 0;
    for c in &checks {
        if c.passed() {
            out += &format!("PASS {}\n", c.name);
        } else {
            failed += 1;
            out += &format!("FAIL {}: expected {} got {}\n", c.name, c.expected, c.got);
        }
    }
    out += &format!("{} of {} checks passed\n", checks.len() - failed, checks.len());
    Ok((out, if failed == 0 { 0 } else { 1 }))
}

/// Runs the CLI on `args` (including the program name), writing to the
/// given streams, and returns the exit code.
pub fn run<I, S>(args: I, stdout: &mut impl Write, stderr: &mut impl Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(stdout, "{text}") } else { write!(stderr, "{text}") };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Selftest => run_selftest(),
        Command::Oracle(o) => run_oracle(o),
        cmd @ (Command::Expand(c) | Command::Fpoly(c) | Command::Gvector(c) | Command::Chi(c)) => {
            with_jobs(c.jobs, || run_common(cmd, c)).and_then(|r| r)
        }
    };
    match result {
        Ok((text, code)) => {
            let _ = write!(stdout, "{text}");
            code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::fixtures::OCTAGON_EXPANSION;

    fn fixture(name: &str) -> String {
        format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
    }

    fn scratch(name: &str, text: &str) -> String {
        let path = std::env::temp_dir().join(format!("cck-cli-{}-{name}", std::process::id()));
        std::fs::write(&path, text).unwrap();
        path.to_string_lossy().into_owned()
    }

    fn cck(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("cck").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn expand_and_fpoly() {
        let oct = fixture("octagon.cck");
        let (code, out, _) = cck(&["expand", "--surface", &oct]);
        assert_eq!(code, 0);
        assert_eq!(out, format!("cck/1\n{OCTAGON_EXPANSION}\n"));
        let (code, out, _) = cck(&["fpoly", "--surface", &oct, "--jobs", "1"]);
        assert_eq!(code, 0);
        assert_eq!(out, "cck/1\n1 + y3 + y3 * y5 + y1 * y3 + y1 * y3 * y5\n");
        let (_, out, _) = cck(&["expand", "--surface", &oct, "--arc", "edge 3"]);
        assert_eq!(out, "cck/1\nx3\n");
    }

    #[test]
    fn expand_with_coefficient_file() {
        let oct = fixture("octagon.cck");
        let coeffs = scratch("coeffs", "cck/1\n1\n0\n0\n1\n0\n1\n");
        let (code, out, err) = cck(&["expand", "--surface", &oct, "--coeffs", &coeffs]);
        assert_eq!(code, 0, "{err}");
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "cck/1");
        assert!(lines[1].contains("u1^2 * x1^-1 * x3 * x5^-1"), "{out}");
        let short = scratch("short", "cck/1\n1\n0\n");
        assert_eq!(cck(&["expand", "--surface", &oct, "--coeffs", &short]).0, 2);
    }

    #[test]
    fn gvector_and_chi_are_json() {
        let ann = fixture("annulus.cck");
        let (code, out, _) = cck(&["gvector", "--surface", &ann]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(out.lines().nth(1).unwrap()).unwrap();
        assert_eq!(v["g"], serde_json::json!([0, -1, 1, -1]));
        assert_eq!(v["I-"], serde_json::json!([2, 4]));
        let (code, out, _) = cck(&["chi", "--surface", &ann]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(out.lines().nth(1).unwrap()).unwrap();
        assert_eq!(v["paths"], 13);
        assert_eq!(v["euler_characteristic"], true);
        let table = v["table"].as_array().unwrap();
        let two = table.iter().find(|r| r["e"] == serde_json::json!([1, 1, 1, 1])).unwrap();
        assert_eq!(two["chi"], 2);
    }

    #[test]
    fn oracle_single_and_compare() {
        let oct = fixture("octagon.cck");
        let (code, out, _) = cck(&["oracle", "--surface", &oct]);
        assert_eq!(code, 0);
        assert_eq!(out, format!("cck/1\n{OCTAGON_EXPANSION}\nflips 5 3 1\nseeds_visited 4\n"));
        let (code, out, _) = cck(&["oracle", "--compare", "--max-polygon", "6", "--max-annulus", "3", "--jobs", "2"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("cck/1\nEQUAL n_cases="), "{out}");
    }

    #[test]
    fn selftest_reports_the_failing_literal() {
        let (code, out, _) = cck(&["selftest"]);
        assert_eq!(code, 1);
        assert!(out.starts_with("cck/1\nPASS octagon path count\n"));
        assert!(out.contains("FAIL octagon I+: expected [7, 12] got [7, 11]"));
        assert!(out.ends_with("10 of 11 checks passed\n"));
    }

    #[test]
    fn exit_codes() {
        let oct = fixture("octagon.cck");
        assert_eq!(cck(&["--help"]).0, 0);
        assert_eq!(cck(&["expand"]).0, 2);
        assert_eq!(cck(&["expand", "--surface", "/nonexistent/file"]).0, 2);
        assert_eq!(cck(&["expand", "--surface", &oct, "--arc", "chord x"]).0, 2);
        let syntax = scratch("syntax", "cck/1\npolygon 5\ndiag 1 x\n");
        let (code, _, err) = cck(&["expand", "--surface", &syntax]);
        assert_eq!(code, 2);
        assert!(err.contains("line 3"));
        let crossing = scratch("crossing", "cck/1\npolygon 4\ndiag 1 3\ndiag 2 4\narc edge 1\n");
        assert_eq!(cck(&["expand", "--surface", &crossing]).0, 3);
        assert_eq!(cck(&["expand", "--surface", &oct, "--arc", "chord 1 2"]).0, 3);
        let no_arc = scratch("no-arc", "cck/1\npolygon 5\ndiag 1 3\ndiag 1 4\n");
        assert_eq!(cck(&["expand", "--surface", &no_arc]).0, 2);
    }
}
