//! The `chord-euler` command-line tool. [`run`] takes the argument list and
//! output streams and returns the process exit code:
//! 0 pass, 1 property failure, 2 input error, 3 cap exceeded, 4 generator
//! failure.

pub mod files;
pub mod svg;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use chord_euler::catalan::d_closed;
use chord_euler::chords::{diagonals, epigonals};
use chord_euler::classes::{classify, verify_theorem1};
use chord_euler::generators::{class_exemplar, convex_ngon, random_simple_polygon, zigzag_chi_target};
use chord_euler::geometry::{is_convex, reflex_vertices, Polygon};
use chord_euler::nc_euler::{chi, chord_f_vector, FVector};
use chord_euler::Error;
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use files::{parse_polygon, parse_sidecar, print_polygon, print_sidecar, Sidecar};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_GENERATOR: i32 = 4;

/// Environment variable capping the worker threads of `verify`.
pub const THREADS_VAR: &str = "CHORD_EULER_THREADS";

#[derive(Parser, Debug)]
#[command(name = "chord-euler", version, about = "Euler characteristics of non-crossing chord families")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Report chord counts, f-vectors, Euler characteristics and classes.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        fvector: bool,
        #[arg(long)]
        chi: bool,
        #[arg(long)]
        classes: bool,
        /// Restrict the class report to one vertex.
        #[arg(long)]
        vertex: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification campaign.
    Verify {
        target: Target,
        /// Polygon sizes (or Catalan n), e.g. `5..9`.
        #[arg(long, allow_hyphen_values = true)]
        n: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        l: Option<String>,
        /// Number of random polygons.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write a generated polygon as JSON.
    Generate {
        kind: Kind,
        #[arg(long)]
        n: Option<usize>,
        /// Vertex the class refers to.
        #[arg(long, default_value_t = 0)]
        i: usize,
        /// Class 2: vertex count of the removed convex region.
        #[arg(long)]
        inner: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        l: Option<i64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where the zigzag chord sidecar goes; defaults next to `--out`.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Draw a polygon and optional chords as SVG.
    Render {
        file: PathBuf,
        #[arg(long)]
        chords: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print d_k(n, a).
    Catalan {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        a: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Target {
    Theorem1,
    Theorem2,
    Theorem3,
    Lemmae,
    Catalan,
    Zigzag,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Convex,
    Class1,
    Class2,
    Class3,
    Class4,
    Class5,
    Class6,
    Zigzag,
    Random,
}

/// A failure carrying its exit code.
#[derive(Debug)]
struct Exit(i32, String);

impl Exit {
    fn input(msg: impl ToString) -> Exit {
        Exit(EXIT_INPUT, msg.to_string())
    }
}

impl From<Error> for Exit {
    fn from(e: Error) -> Exit {
        let code = match e {
            Error::TooLarge { .. } => EXIT_CAP,
            Error::Generator(_) => EXIT_GENERATOR,
            _ => EXIT_FAILURE,
        };
        Exit(code, e.to_string())
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match dispatch(cli.cmd, out, err) {
        Ok(code) => code,
        Err(Exit(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn dispatch(cmd: Cmd, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Exit> {
    match cmd {
        Cmd::Analyze { file, fvector, chi, classes, vertex, json } => {
            analyze(&file, fvector, chi, classes, vertex, json, out)
        }
        Cmd::Verify { target, n, a, l, random, seed } => verify(target, n, a, l, random, seed, out),
        Cmd::Generate { kind, n, i, inner, l, seed, out: path, sidecar } => {
            generate(kind, n, i, inner, l, seed, path, sidecar, out, err)
        }
        Cmd::Render { file, chords, out: path } => render(&file, chords.as_deref(), path.as_deref(), out),
        Cmd::Catalan { n, k, a } => {
            let v = d_closed(n, k, a)?;
            emit(out, &format!("{v}\n"))?;
            Ok(EXIT_OK)
        }
    }
}

fn emit(out: &mut dyn Write, s: &str) -> Result<(), Exit> {
    out.write_all(s.as_bytes()).map_err(|e| Exit(EXIT_FAILURE, e.to_string()))
}

fn read(path: &Path) -> Result<String, Exit> {
    std::fs::read_to_string(path).map_err(|e| Exit::input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, s: &str) -> Result<(), Exit> {
    std::fs::write(path, s).map_err(|e| Exit(EXIT_FAILURE, format!("{}: {e}", path.display())))
}

fn load_polygon(path: &Path) -> Result<Polygon, Exit> {
    parse_polygon(&read(path)?).map_err(Exit::input)
}

/// Exact integers as JSON numbers when they fit, strings otherwise.
fn big(v: &BigInt) -> Value {
    i64::try_from(v).map(Value::from).unwrap_or_else(|_| Value::from(v.to_string()))
}

fn fvec(f: &FVector) -> Value {
    Value::Array(f.counts().iter().map(big).collect())
}

#[allow(clippy::too_many_arguments)]
fn analyze(
    file: &Path,
    fvector: bool,
    with_chi: bool,
    classes: bool,
    vertex: Option<usize>,
    as_json: bool,
    out: &mut dyn Write,
) -> Result<i32, Exit> {
    let p = load_polygon(file)?;
    let (md, me) = (diagonals(&p), epigonals(&p));
    let mut report = serde_json::Map::new();
    let mut text = Vec::new();
    report.insert("n".into(), json!(p.n()));
    report.insert("convex".into(), json!(is_convex(&p)));
    report.insert("reflex".into(), json!(reflex_vertices(&p)));
    report.insert("diagonals".into(), json!(md.len()));
    report.insert("epigonals".into(), json!(me.len()));
    text.push(("n".to_string(), p.n().to_string()));
    text.push(("convex".into(), is_convex(&p).to_string()));
    text.push(("reflex".into(), format!("{:?}", reflex_vertices(&p))));
    text.push(("|M_d|".into(), md.len().to_string()));
    text.push(("|M_e|".into(), me.len().to_string()));
    if fvector {
        let (fd, fe) = (chord_f_vector(&p, &md)?, chord_f_vector(&p, &me)?);
        report.insert("d_fvector".into(), fvec(&fd));
        report.insert("e_fvector".into(), fvec(&fe));
        text.push(("f(M_d)".into(), fd.to_string()));
        text.push(("f(M_e)".into(), fe.to_string()));
        let t1 = verify_theorem1(&p)?;
        report.insert(
            "theorem1".into(),
            json!({"d_sum": big(&t1.d_sum), "e_sum": big(&t1.e_sum), "passed": t1.passed}),
        );
        text.push(("theorem1".into(), format!("d_sum={} e_sum={} passed={}", t1.d_sum, t1.e_sum, t1.passed)));
    }
    if with_chi {
        let (cd, ce) = (chi(&p, &md)?, chi(&p, &me)?);
        report.insert("chi_d".into(), big(&cd));
        report.insert("chi_e".into(), big(&ce));
        text.push(("chi(M_d)".into(), cd.to_string()));
        text.push(("chi(M_e)".into(), ce.to_string()));
    }
    if classes || vertex.is_some() {
        let vs: Vec<usize> = match vertex {
            Some(v) => vec![v],
            None => (0..p.n()).collect(),
        };
        let mut rows = Vec::new();
        for v in vs {
            let r = classify(&p, v).map_err(Exit::input)?;
            let names: Vec<String> = r.memberships.iter().map(|c| c.to_string()).collect();
            text.push((format!("classes@{v}"), names.join(" ")));
            rows.push(json!({"vertex": v, "memberships": names}));
        }
        report.insert("classes".into(), Value::Array(rows));
    }
    if as_json {
        let s = serde_json::to_string_pretty(&Value::Object(report)).expect("plain data");
        emit(out, &format!("{s}\n"))?;
    } else {
        let w = text.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in text {
            emit(out, &format!("{k:<w$}  {v}\n"))?;
        }
    }
    Ok(EXIT_OK)
}

/// Parses `a..b` (inclusive) or a single value.
fn parse_range<T: std::str::FromStr + Copy + PartialOrd>(s: &str) -> Result<(T, T), Exit> {
    let bad = || Exit::input(format!("bad range {s:?}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn capped(what: &str, value: u64, cap: u64) -> Result<(), Exit> {
    if value > cap {
        return Err(Exit(EXIT_CAP, format!("{what} {value} exceeds the cap {cap}")));
    }
    Ok(())
}

fn sizes(spec: Option<String>, default: &str, min: usize, cap: usize) -> Result<Vec<usize>, Exit> {
    let (lo, hi) = parse_range::<usize>(spec.as_deref().unwrap_or(default))?;
    if lo < min {
        return Err(Exit::input(format!("sizes start at {min}")));
    }
    capped("size", hi as u64, cap as u64)?;
    Ok((lo..=hi).collect())
}

/// Random-campaign caps.
pub const MAX_RANDOM: usize = 1_000_000;
pub const MAX_THEOREM_N: usize = 12;
pub const MAX_SUBSET_N: usize = 10;
pub const MAX_CATALAN_N: u64 = 64;
pub const MAX_CATALAN_A: u64 = 8;
pub const MAX_ZIGZAG_L: i64 = 12;

fn pool() -> Result<rayon::ThreadPool, Exit> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_VAR) {
        let t: usize = v.parse().map_err(|_| Exit::input(format!("{THREADS_VAR} must be a number")))?;
        b = b.num_threads(t);
    }
    b.build().map_err(|e| Exit(EXIT_FAILURE, e.to_string()))
}

fn verify(
    target: Target,
    n: Option<String>,
    a: Option<String>,
    l: Option<String>,
    random: Option<usize>,
    seed: u64,
    out: &mut dyn Write,
) -> Result<i32, Exit> {
    let random_or = |d: usize| -> Result<usize, Exit> {
        let r = random.unwrap_or(d);
        capped("random count", r as u64, MAX_RANDOM as u64)?;
        Ok(r)
    };
    let pool = pool()?;
    let (name, outcome) = match target {
        Target::Theorem1 => {
            let ns = sizes(n, "3..9", 3, MAX_THEOREM_N)?;
            let r = random_or(100)?;
            ("theorem1", pool.install(|| verify::theorem1(&ns, r, seed))?)
        }
        Target::Theorem2 => {
            let ns = sizes(n, "4..7", 4, MAX_SUBSET_N)?;
            let r = random_or(10)?;
            ("theorem2", pool.install(|| verify::theorem2(&ns, r, seed))?)
        }
        Target::Theorem3 => {
            let ns = sizes(n, "5..9", 5, MAX_THEOREM_N)?;
            let r = random_or(100)?;
            ("theorem3", pool.install(|| verify::theorem3(&ns, r, seed))?)
        }
        Target::Lemmae => {
            let ns = sizes(n, "4..8", 4, MAX_SUBSET_N)?;
            let r = random_or(50)?;
            ("lemmae", pool.install(|| verify::lemmae(&ns, r, seed))?)
        }
        Target::Catalan => {
            let (n0, n1) = parse_range::<u64>(n.as_deref().unwrap_or("1..8"))?;
            let (a0, a1) = parse_range::<u64>(a.as_deref().unwrap_or("1..4"))?;
            if n0 == 0 || a0 == 0 {
                return Err(Exit::input("catalan ranges start at 1"));
            }
            capped("n", n1, MAX_CATALAN_N)?;
            capped("a", a1, MAX_CATALAN_A)?;
            let ns: Vec<u64> = (n0..=n1).collect();
            let as_: Vec<u64> = (a0..=a1).collect();
            ("catalan", pool.install(|| verify::catalan(&ns, &as_))?)
        }
        Target::Zigzag => {
            let (l0, l1) = parse_range::<i64>(l.as_deref().unwrap_or("-5..5"))?;
            capped("|l|", l0.unsigned_abs().max(l1.unsigned_abs()), MAX_ZIGZAG_L as u64)?;
            let ls: Vec<i64> = (l0..=l1).collect();
            ("zigzag", pool.install(|| verify::zigzag(&ls))?)
        }
    };
    report(name, &outcome, out)
}

fn report(name: &str, outcome: &verify::Outcome, out: &mut dyn Write) -> Result<i32, Exit> {
    for f in &outcome.failures {
        emit(out, &format!("FAIL {f}\n"))?;
    }
    emit(out, &format!("{name}: {} checked, {} failures\n", outcome.checked, outcome.failures.len()))?;
    Ok(if outcome.failures.is_empty() { EXIT_OK } else { EXIT_FAILURE })
}

#[allow(clippy::too_many_arguments)]
fn generate(
    kind: Kind,
    n: Option<usize>,
    i: usize,
    inner: Option<usize>,
    l: Option<i64>,
    seed: u64,
    path: Option<PathBuf>,
    sidecar: Option<PathBuf>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Exit> {
    let need_n = |d: usize| n.unwrap_or(d);
    let gen_err = |e: Error| match e {
        Error::TooLarge { .. } => Exit(EXIT_CAP, e.to_string()),
        e => Exit(EXIT_GENERATOR, e.to_string()),
    };
    let class = |k: u8, n: usize| class_exemplar(k, i, n).map_err(gen_err);
    let mut side = None;
    let p = match kind {
        Kind::Convex => convex_ngon(need_n(6)).map_err(gen_err)?,
        Kind::Class1 => class(1, need_n(6))?,
        Kind::Class2 => class(2, inner.map_or(need_n(6), |k| k + 1))?,
        Kind::Class3 => class(3, need_n(6))?,
        Kind::Class4 => class(4, need_n(6))?,
        Kind::Class5 => class(5, need_n(6))?,
        Kind::Class6 => class(6, need_n(6))?,
        Kind::Random => random_simple_polygon(need_n(8), seed).map_err(gen_err)?,
        Kind::Zigzag => {
            let l = l.ok_or_else(|| Exit::input("zigzag needs --l"))?;
            capped("|l|", l.unsigned_abs(), MAX_ZIGZAG_L as u64)?;
            let z = zigzag_chi_target(l).map_err(gen_err)?;
            side = Some(Sidecar::new(&z.j, &z.labels));
            z.polygon
        }
    };
    let text = print_polygon(&p);
    match &path {
        Some(f) => write_file(f, &text)?,
        None => emit(out, &text)?,
    }
    if let Some(s) = side {
        match sidecar.or_else(|| path.as_ref().map(|f| f.with_extension("chords.json"))) {
            Some(f) => write_file(&f, &print_sidecar(&s))?,
            None => {
                let _ = writeln!(err, "note: no --out or --sidecar given, chord sidecar not written");
            }
        }
    }
    Ok(EXIT_OK)
}

fn render(file: &Path, chords: Option<&Path>, path: Option<&Path>, out: &mut dyn Write) -> Result<i32, Exit> {
    let p = load_polygon(file)?;
    let cs = match chords {
        Some(c) => {
            let list = parse_sidecar(&read(c)?).and_then(|s| s.chords()).map_err(Exit::input)?;
            // Reject anything that is not a chord of this polygon.
            p.chords().set(list.iter().copied()).map_err(Exit::input)?;
            list
        }
        None => Vec::new(),
    };
    let s = svg::render(&p, &cs);
    match path {
        Some(f) => write_file(f, &s)?,
        None => emit(out, &s)?,
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failures_exit_one() {
        let mut buf = Vec::new();
        let o = verify::Outcome { checked: 3, failures: vec!["theorem1 n=5 seed=9".into()] };
        assert_eq!(report("theorem1", &o, &mut buf).unwrap(), EXIT_FAILURE);
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "FAIL theorem1 n=5 seed=9\ntheorem1: 3 checked, 1 failures\n");
    }
}
