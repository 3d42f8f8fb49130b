//! Command-line front end. Each subcommand reads JSON files, calls one
//! library operation and prints JSON.
//!
//! Exit codes: 0 when the operation succeeds or the property holds, 1 when
//! the property fails (the witness is printed), 2 for invalid input (a JSON
//! diagnostic goes to standard error).

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::catalog;
use crate::error::{Error, Result};
use crate::extension::{tietze_extend, ExtensionStatus};
use crate::functions::{canonical_development, FnOverSpace};
use crate::interpolation::{kt_direct, kt_staged, StageReport, Status};
use crate::io;
use crate::maps::{is_closed_expansive, is_contraction_map, is_open_expansive};
use crate::oracle::{HullSide, Oracle};
use crate::pointset::PointSet;
use crate::separation::{
    certify, contraction_to_scale, frame_condition2, frame_condition3, is_gamma_separated_direct,
    is_normal, is_normal_sampled, scale_to_contraction, separation_degree, urysohn_oriented,
    verify_normal_scale, FrameVerdict, Orientation, UrysohnOutcome,
};
use crate::space::FiniteSpace;
use crate::value::ExtValue;

/// Above this size `normality` needs `--exhaustive` or `--sample`.
pub const EXHAUSTIVE_GATE: usize = 10;

#[derive(Parser, Debug)]
#[command(name = "approach", version, about = "Normality of finite approach spaces")]
struct Cli {
    /// Worker threads for parallel enumeration.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct PairArgs {
    /// Comma-separated point names.
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrientationArg {
    GammaOnA,
    ZeroOnA,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Predicate {
    Contraction,
    Closed,
    Open,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Side {
    Lower,
    Upper,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a space file.
    Validate { space: PathBuf },
    /// δ(x, A).
    Distance {
        space: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        set: String,
    },
    /// A^(ε).
    Enlarge {
        space: PathBuf,
        #[arg(long)]
        set: String,
        #[arg(long)]
        eps: ExtValue,
    },
    /// Separation degree, and γ-separation when --gamma is given.
    Separation {
        space: PathBuf,
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        gamma: Option<ExtValue>,
    },
    /// A contraction equal to γ on one closure and 0 on the other.
    Urysohn {
        space: PathBuf,
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        gamma: ExtValue,
        #[arg(long, value_enum, default_value = "gamma-on-a")]
        orientation: OrientationArg,
    },
    /// Contractive scales and their contractions.
    #[command(subcommand)]
    Scale(ScaleCmd),
    /// Decide normality, with a witness pair when it fails.
    Normality {
        space: PathBuf,
        /// Allow the exhaustive check above the size gate.
        #[arg(long)]
        exhaustive: bool,
        /// Check this many random pairs instead.
        #[arg(long)]
        sample: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Attach a certificate for the given pair (needs --a and --b).
        #[arg(long, requires_all = ["a", "b"])]
        certify: bool,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
    },
    /// Frame-normality conditions (2) and (3).
    #[command(subcommand)]
    Frame(FrameCmd),
    /// Find a contraction between an upper and a lower regular function.
    Interpolate {
        space: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        h: PathBuf,
        /// Run the staged construction up to this N.
        #[arg(long)]
        staged: Option<u32>,
        #[arg(long)]
        omega: Option<ExtValue>,
    },
    /// Extend a contraction from a subspace.
    Extend {
        space: PathBuf,
        /// Comma-separated point names of Y.
        #[arg(long)]
        subspace: String,
        /// Function file over the subspace.
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        gamma: ExtValue,
        #[arg(long, conflicts_with = "dev_canonical")]
        dev: Option<PathBuf>,
        #[arg(long)]
        dev_canonical: Option<ExtValue>,
    },
    /// Check a map for contraction, closed or open expansiveness.
    CheckMap {
        map: PathBuf,
        #[arg(long, value_enum)]
        predicate: Predicate,
    },
    /// Built-in example spaces.
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Brute-force cross-checks on small instances.
    #[command(subcommand)]
    Oracle(OracleCmd),
}

#[derive(Subcommand, Debug)]
enum ScaleCmd {
    /// Scale of a contraction.
    FromFn {
        space: PathBuf,
        #[arg(long)]
        f: PathBuf,
    },
    /// Contraction of a scale.
    ToFn {
        space: PathBuf,
        #[arg(long)]
        scale: PathBuf,
    },
    /// Check the normal-scale conditions for a pair.
    Verify {
        space: PathBuf,
        #[arg(long)]
        scale: PathBuf,
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        gamma: ExtValue,
    },
}

#[derive(Subcommand, Debug)]
enum FrameCmd {
    Cond2 { space: PathBuf },
    Cond3 { space: PathBuf },
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    /// Entries with their parameters and defaults.
    List,
    /// Print a space file; parameters are key=value.
    Emit { name: String, params: Vec<String> },
}

#[derive(Args, Debug)]
struct OracleOpts {
    #[arg(long, default_value_t = crate::oracle::DEFAULT_LIMIT)]
    limit: usize,
}

#[derive(Subcommand, Debug)]
enum OracleCmd {
    Urysohn {
        space: PathBuf,
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        gamma: ExtValue,
        #[command(flatten)]
        opts: OracleOpts,
    },
    Hull {
        space: PathBuf,
        #[arg(long)]
        mu: PathBuf,
        #[arg(long, value_enum)]
        side: Side,
        #[command(flatten)]
        opts: OracleOpts,
    },
    Kt {
        space: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        h: PathBuf,
        #[command(flatten)]
        opts: OracleOpts,
    },
    CheckMap {
        map: PathBuf,
        #[arg(long, value_enum)]
        predicate: Predicate,
        #[command(flatten)]
        opts: OracleOpts,
    },
    Normality {
        space: PathBuf,
        #[command(flatten)]
        opts: OracleOpts,
    },
}

/// JSON output and exit code of a successful run.
struct Outcome {
    code: i32,
    body: Value,
}

fn holds(ok: bool, body: Value) -> Outcome {
    Outcome { code: if ok { 0 } else { 1 }, body }
}

fn set_arg(s: &FiniteSpace, list: &str) -> Result<PointSet> {
    let names: Vec<&str> = list.split(',').map(str::trim).filter(|p| !p.is_empty()).collect();
    s.set_of(&names)
}

fn load(path: &Path) -> Result<FiniteSpace> {
    io::read_space(path)
}

fn frame_json(s: &FiniteSpace, v: &FrameVerdict) -> Value {
    let witness = v.witness.as_ref().map(|w| {
        json!({ "A": io::set_json(s, w.a), "B": io::set_json(s, w.b), "level": io::value_json(w.level) })
    });
    json!({ "holds": v.holds, "witness": witness })
}

fn stages_json(s: &FiniteSpace, stages: &Option<Vec<StageReport>>) -> Value {
    match stages {
        None => Value::Null,
        Some(rs) => Value::Array(
            rs.iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "f_n": io::function_json(s, &r.f_n),
                        "lower_ok": r.lower_ok,
                        "upper_ok": r.upper_ok,
                        "excess": io::value_json(r.excess),
                    })
                })
                .collect(),
        ),
    }
}

fn opt_fn(s: &FiniteSpace, f: &Option<FnOverSpace>) -> Value {
    f.as_ref().map(|f| io::function_json(s, f)).unwrap_or(Value::Null)
}

fn execute(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Validate { space } => {
            let s = load(&space)?;
            Ok(holds(true, json!({ "valid": true, "points": s.points(), "symmetric": s.is_symmetric() })))
        }
        Command::Distance { space, x, set } => {
            let s = load(&space)?;
            let d = s.distance(s.index_of(&x)?, set_arg(&s, &set)?);
            Ok(holds(true, json!({ "distance": io::value_json(d) })))
        }
        Command::Enlarge { space, set, eps } => {
            let s = load(&space)?;
            let e = s.enlargement(set_arg(&s, &set)?, eps);
            Ok(holds(true, json!({ "set": io::set_json(&s, e) })))
        }
        Command::Separation { space, pair, gamma } => {
            let s = load(&space)?;
            let (a, b) = (set_arg(&s, &pair.a)?, set_arg(&s, &pair.b)?);
            let degree = separation_degree(&s, a, b)?;
            let mut body = json!({ "degree": io::value_json(degree) });
            let mut code = 0;
            if let Some(g) = gamma {
                let sep = is_gamma_separated_direct(&s, a, b, g)?;
                body["gamma"] = io::value_json(g);
                body["separated"] = json!(sep);
                code = if sep { 0 } else { 1 };
            }
            Ok(Outcome { code, body })
        }
        Command::Urysohn { space, pair, gamma, orientation } => {
            let s = load(&space)?;
            let (a, b) = (set_arg(&s, &pair.a)?, set_arg(&s, &pair.b)?);
            let o = match orientation {
                OrientationArg::GammaOnA => Orientation::GammaOnA,
                OrientationArg::ZeroOnA => Orientation::ZeroOnA,
            };
            Ok(match urysohn_oriented(&s, a, b, gamma, o)? {
                UrysohnOutcome::Found(f) => {
                    holds(true, json!({ "status": "found", "values": io::function_json(&s, &f) }))
                }
                UrysohnOutcome::NoWitness { shortfall } => holds(
                    false,
                    json!({ "status": "no-witness", "shortfall": io::value_json(shortfall) }),
                ),
            })
        }
        Command::Scale(ScaleCmd::FromFn { space, f }) => {
            let s = load(&space)?;
            let f = io::read_function(&s, &f)?;
            Ok(holds(true, io::scale_json(&s, &contraction_to_scale(&s, &f)?)))
        }
        Command::Scale(ScaleCmd::ToFn { space, scale }) => {
            let s = load(&space)?;
            let sc = io::read_scale(&s, &scale)?;
            Ok(holds(true, json!({ "values": io::function_json(&s, &scale_to_contraction(&s, &sc)?) })))
        }
        Command::Scale(ScaleCmd::Verify { space, scale, pair, gamma }) => {
            let s = load(&space)?;
            let sc = io::read_scale(&s, &scale)?;
            let (a, b) = (set_arg(&s, &pair.a)?, set_arg(&s, &pair.b)?);
            let ok = verify_normal_scale(&s, &sc, a, b, gamma);
            Ok(holds(ok, json!({ "normal_scale": ok })))
        }
        Command::Normality { space, exhaustive, sample, seed, certify: want, a, b } => {
            let s = load(&space)?;
            let verdict = match sample {
                Some(k) => is_normal_sampled(&s, k, seed)?,
                None if s.len() > EXHAUSTIVE_GATE && !exhaustive => {
                    return Err(Error::InstanceTooLarge { size: s.len(), limit: EXHAUSTIVE_GATE })
                }
                None => is_normal(&s)?,
            };
            let witness = verdict.witness.as_ref().map(|w| {
                json!({
                    "A": io::set_json(&s, w.a),
                    "B": io::set_json(&s, w.b),
                    "gamma": io::value_json(w.gamma),
                    "shortfall": io::value_json(w.shortfall),
                })
            });
            let mut body = json!({
                "normal": verdict.normal,
                "exhaustive": verdict.exhaustive,
                "pairs_checked": verdict.pairs_checked,
                "witness": witness,
            });
            if want {
                let (a, b) = (set_arg(&s, a.as_deref().unwrap())?, set_arg(&s, b.as_deref().unwrap())?);
                let c = certify(&s, a, b, None)?;
                body["certificate"] = json!({
                    "A": io::set_json(&s, c.a),
                    "B": io::set_json(&s, c.b),
                    "gamma": io::value_json(c.gamma),
                    "function": io::function_json(&s, &c.function),
                    "scale": io::scale_json(&s, &c.scale),
                });
            }
            Ok(holds(verdict.normal, body))
        }
        Command::Frame(FrameCmd::Cond2 { space }) => {
            let s = load(&space)?;
            let v = frame_condition2(&s);
            Ok(holds(v.holds, frame_json(&s, &v)))
        }
        Command::Frame(FrameCmd::Cond3 { space }) => {
            let s = load(&space)?;
            let v = frame_condition3(&s);
            Ok(holds(v.holds, frame_json(&s, &v)))
        }
        Command::Interpolate { space, g, h, staged, omega } => {
            let s = load(&space)?;
            let (g, h) = (io::read_function(&s, &g)?, io::read_function(&s, &h)?);
            let r = match staged {
                Some(n) => kt_staged(&s, &g, &h, n, omega)?,
                None => kt_direct(&s, &g, &h)?,
            };
            let mut body = json!({
                "staged": stages_json(&s, &r.staged),
                "dual_staged": stages_json(&s, &r.dual_staged),
            });
            let found = match &r.status {
                Status::Found(f) => {
                    body["status"] = json!("found");
                    body["interpolant"] = io::function_json(&s, f);
                    true
                }
                Status::NoInterpolant { point, gap } => {
                    body["status"] = json!("no-interpolant");
                    body["point"] = json!(s.name(*point));
                    body["gap"] = io::value_json(*gap);
                    false
                }
            };
            Ok(holds(found, body))
        }
        Command::Extend { space, subspace, f, gamma, dev, dev_canonical } => {
            let s = load(&space)?;
            let ys = set_arg(&s, &subspace)?;
            let sub = s.subspace(ys)?;
            let f = io::read_function(&sub, &f)?;
            let dev = match (dev, dev_canonical) {
                (Some(p), _) => io::read_development(&sub, &p)?,
                (None, Some(eps)) => canonical_development(&f, eps)?,
                (None, None) => {
                    return Err(Error::InvalidParameter("give --dev or --dev-canonical".into()))
                }
            };
            let r = tietze_extend(&s, ys, &f, gamma, &dev)?;
            let mut body = json!({
                "development": io::development_json(&sub, &dev),
                "mu_hat": io::function_json(&s, &r.mu_hat),
                "mu_check": io::function_json(&s, &r.mu_check),
                "lower_of_hat": opt_fn(&s, &r.lower_of_hat),
                "upper_of_check": opt_fn(&s, &r.upper_of_check),
            });
            let ok = match &r.status {
                ExtensionStatus::Extended(g) => {
                    body["status"] = json!("extended");
                    body["extension"] = io::function_json(&s, g);
                    true
                }
                ExtensionStatus::ConditionFailed(v) => {
                    body["status"] = json!("condition-failed");
                    body["violation"] = json!({
                        "x": s.name(v.x),
                        "l": v.l,
                        "k": v.k,
                        "epsilon": io::value_json(v.epsilon),
                    });
                    false
                }
                ExtensionStatus::NoExtension { point, gap } => {
                    body["status"] = json!("no-extension");
                    body["point"] = json!(s.name(*point));
                    body["gap"] = io::value_json(*gap);
                    false
                }
            };
            Ok(holds(ok, body))
        }
        Command::CheckMap { map, predicate } => {
            let m = io::read_map(&map)?;
            let ok = match predicate {
                Predicate::Contraction => is_contraction_map(&m),
                Predicate::Closed => is_closed_expansive(&m),
                Predicate::Open => is_open_expansive(&m),
            };
            Ok(holds(ok, json!({ "holds": ok })))
        }
        Command::Catalog(CatalogCmd::List) => {
            let entries: Vec<Value> = catalog::list()
                .iter()
                .map(|e| {
                    let params: Map<String, Value> =
                        e.params.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
                    json!({ "name": e.name, "params": params, "note": e.note })
                })
                .collect();
            Ok(holds(true, Value::Array(entries)))
        }
        Command::Catalog(CatalogCmd::Emit { name, params }) => {
            let refs: Vec<&str> = params.iter().map(String::as_str).collect();
            let entry = catalog::get(&name, &refs)?;
            Ok(holds(true, io::space_json(&entry.space)))
        }
        Command::Oracle(cmd) => oracle(cmd),
    }
}

fn oracle(cmd: OracleCmd) -> Result<Outcome> {
    match cmd {
        OracleCmd::Urysohn { space, pair, gamma, opts } => {
            let s = load(&space)?;
            let (a, b) = (set_arg(&s, &pair.a)?, set_arg(&s, &pair.b)?);
            let w = Oracle { limit: opts.limit }.urysohn_witness(&s, a, b, gamma, None)?;
            Ok(holds(w.is_some(), json!({ "exists": w.is_some(), "witness": opt_fn(&s, &w) })))
        }
        OracleCmd::Hull { space, mu, side, opts } => {
            let s = load(&space)?;
            let mu = io::read_function(&s, &mu)?;
            let side = match side {
                Side::Lower => HullSide::Lower,
                Side::Upper => HullSide::Upper,
            };
            let h = Oracle { limit: opts.limit }.hull(&s, &mu, side, None)?;
            Ok(holds(true, json!({ "hull": io::function_json(&s, &h) })))
        }
        OracleCmd::Kt { space, g, h, opts } => {
            let s = load(&space)?;
            let (g, h) = (io::read_function(&s, &g)?, io::read_function(&s, &h)?);
            let w = Oracle { limit: opts.limit }.kt_witness(&s, &g, &h, None)?;
            Ok(holds(w.is_some(), json!({ "exists": w.is_some(), "witness": opt_fn(&s, &w) })))
        }
        OracleCmd::CheckMap { map, predicate, opts } => {
            let m = io::read_map(&map)?;
            let o = Oracle { limit: opts.limit };
            let violation = match predicate {
                Predicate::Contraction => {
                    return Err(Error::InvalidParameter("the oracle covers closed and open only".into()))
                }
                Predicate::Closed => o.closed_expansive_violation(&m, None)?,
                Predicate::Open => o.open_expansive_violation(&m, None)?,
            };
            let ok = violation.is_none();
            Ok(holds(ok, json!({ "holds": ok, "violation": opt_fn(&m.domain, &violation) })))
        }
        OracleCmd::Normality { space, opts } => {
            let s = load(&space)?;
            let ok = Oracle { limit: opts.limit }.is_normal(&s)?;
            Ok(holds(ok, json!({ "normal": ok })))
        }
    }
}

/// Variant name of an error, used as the diagnostic kind.
fn kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
}

fn diagnostic(kind: &str, message: &str) -> String {
    json!({ "error": kind, "message": message }).to_string()
}

/// Runs the CLI on `argv` (including the program name), writing to the
/// given streams, and returns the exit code.
pub fn run_with(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let _ = writeln!(err, "{}", diagnostic("Usage", &e.to_string()));
            return 2;
        }
    };
    let result = match cli.jobs {
        Some(0) => Err(Error::InvalidParameter("--jobs must be positive".into())),
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
            Ok(pool) => pool.install(|| execute(cli.command)),
            Err(e) => Err(Error::InvalidParameter(e.to_string())),
        },
        None => execute(cli.command),
    };
    match result {
        Ok(o) => {
            let text = serde_json::to_string_pretty(&o.body).expect("serializable");
            let _ = writeln!(out, "{text}");
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "{}", diagnostic(&kind(&e), &e.to_string()));
            2
        }
    }
}

pub fn run(argv: &[String]) -> i32 {
    let (stdout, stderr) = (std::io::stdout(), std::io::stderr());
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
