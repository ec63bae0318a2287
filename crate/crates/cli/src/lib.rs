//! The `moduli` command line.
//!
//! Exit codes: 0 success, 1 usage, 2 domain error, 3 resource limit, 4 I/O.

pub mod cache;
pub mod json;
pub mod plot;

use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use moduli_core::arith::{parse_rational, qapprox};
use moduli_core::boundary::{sample_curves, SemistableStatus};
use moduli_core::chern::{euler_form, slope_disc};
use moduli_core::exceptional::Dyadic;
use moduli_core::kronecker::{
    self, candidate_walls, check_ff_with_budget, coprime_fine, family_invariants, moduli_dim, module_from_json,
    search_destabilizer_q, FamilyKind, FieldKind, KroneckerShape, DEFAULT_SUBSPACE_BUDGET,
};
use moduli_core::{ChernData, Classification, Error, ExceptionalBundle, ExceptionalTree, Rational};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "moduli", version, about = "Exceptional bundles, existence curves and Kronecker modules on the projective plane")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Neither read nor write the exceptional-tree cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structure of the generic prioritary sheaf with invariants (r, c1, c2).
    Classify {
        #[arg(allow_hyphen_values = true)]
        rank: String,
        #[arg(allow_hyphen_values = true)]
        c1: String,
        #[arg(allow_hyphen_values = true)]
        c2: String,
    },
    /// Exceptional-bundle lookups.
    #[command(subcommand)]
    Exceptional(ExceptionalCommand),
    /// Left exceptional series of the bundle with the given slope.
    Series {
        #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
        slope: Rational,
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// The curve δ(μ).
    Delta {
        #[arg(allow_hyphen_values = true, value_parser = rational_arg)]
        mu: Rational,
    },
    /// The curve δ′(μ), exactly and as a decimal.
    DeltaPrime {
        #[arg(allow_hyphen_values = true, value_parser = rational_arg)]
        mu: Rational,
    },
    /// χ(E, F) for Chern data given as `r,c1,c2`.
    Chi {
        #[arg(allow_hyphen_values = true, value_parser = chern_arg)]
        e: ChernData,
        #[arg(allow_hyphen_values = true, value_parser = chern_arg)]
        f: ChernData,
    },
    /// Sample δ and δ′ over a slope range as CSV or SVG.
    Curves(CurvesArgs),
    /// Kronecker-module numerology and stability.
    #[command(subcommand)]
    Kronecker(KroneckerCommand),
}

#[derive(Subcommand, Debug)]
enum ExceptionalCommand {
    /// The exceptional bundle whose interval contains μ.
    Locate {
        #[arg(allow_hyphen_values = true, value_parser = rational_arg)]
        mu: Rational,
    },
    /// The exceptional bundle ε(p/2^q).
    Eps {
        #[arg(allow_hyphen_values = true, value_parser = dyadic_arg)]
        x: Dyadic,
    },
}

#[derive(Args, Debug)]
struct CurvesArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
    min: Rational,
    #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
    max: Rational,
    #[arg(long, default_value_t = 101)]
    steps: usize,
    #[arg(long, value_enum, default_value_t = CurveFormat::Csv)]
    format: CurveFormat,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 800)]
    width: u32,
    #[arg(long, default_value_t = 500)]
    height: u32,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CurveFormat {
    Csv,
    Svg,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FamilyArg {
    IdealLength,
    RankN2,
}

#[derive(Subcommand, Debug)]
enum KroneckerCommand {
    /// dim N(q, m, n) = qmn − m² − n² + 1.
    Dim { q: usize, m: usize, n: usize },
    /// Stability of a module read from a JSON file.
    Check {
        #[arg(long)]
        file: PathBuf,
        /// Random subspaces tried over the rationals.
        #[arg(long, default_value_t = 200)]
        effort: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Maximum number of subspaces enumerated over a prime field.
        #[arg(long, default_value_t = DEFAULT_SUBSPACE_BUDGET)]
        budget: u128,
    },
    /// Numerical wall candidates for O(−3)^m → A^n ⊕ B^p.
    Walls {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
    },
    /// Invariants of a worked family of Kronecker modules.
    Family {
        #[arg(long, value_enum)]
        kind: FamilyArg,
        #[arg(long)]
        n: usize,
    },
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn dyadic_arg(s: &str) -> Result<Dyadic, String> {
    Dyadic::parse(s).map_err(|e| e.to_string())
}

fn chern_arg(s: &str) -> Result<ChernData, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [r, c1, c2] = parts.as_slice() else {
        return Err(format!("expected r,c1,c2, got {s:?}"));
    };
    let num = |t: &str| t.parse::<moduli_core::BigInt>().map_err(|_| format!("{t:?} is not an integer"));
    Ok(ChernData::new(num(r)?, num(c1)?, num(c2)?))
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Core(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) | Failure::Core(Error::Parse(_)) => EXIT_USAGE,
            Failure::Core(e) if e.is_resource_limit() => EXIT_RESOURCE,
            Failure::Core(_) => EXIT_DOMAIN,
            Failure::Io(_) => EXIT_IO,
        }
    }
}

impl Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Io(m) => write!(f, "{m}"),
            Failure::Core(e) => write!(f, "{e}"),
        }
    }
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure::Io(e.to_string())
}

/// Output of one command: JSON, or text lines.
enum Output {
    Json(Value),
    Text(String),
}

fn bundle_text(b: &ExceptionalBundle) -> String {
    let mut s = format!(
        "slope {}\nrank {}\nchern {}\ndelta {}\n",
        b.slope, b.rank, b.chern, b.delta
    );
    if let Some(a) = b.address {
        s.push_str(&format!("address {a}\n"));
    }
    s
}

fn classification_text(c: &Classification) -> String {
    let mut s = format!("{}\n", c.variant_name());
    let body = match c {
        Classification::NotPrioritary { .. } => String::new(),
        Classification::SemistableExists { status, .. } => match status {
            SemistableStatus::PositiveDim => "moduli of positive dimension\n".into(),
            SemistableStatus::ExceptionalPoint { bundle, multiplicity } => {
                format!("exceptional point {} with multiplicity {multiplicity}\n", bundle.slope)
            }
            SemistableStatus::Empty => String::new(),
        },
        Classification::Rigid { triad, m, n, p, .. } => format!(
            "E {} rank {} x {m}\nF {} rank {} x {n}\nG {} rank {} x {p}\ntriad {:?}\n",
            triad.e.slope, triad.e.rank, triad.f.slope, triad.f.rank, triad.g.slope, triad.g.rank, triad.address
        ),
        Classification::ExceptionalPlus { f, p, residual, side, center, .. } => format!(
            "F {} rank {} x {p}\nresidual {residual}\nside {}{}\n",
            f.slope,
            f.rank,
            if matches!(side, moduli_core::classifier::Side::Left) { "left" } else { "right" },
            if *center { " (center)" } else { "" }
        ),
        Classification::Special01 { rank, .. } => format!("O x {}\nV_x x 1\n", rank - 2),
        Classification::PureExceptional { f, k, .. } => format!("F {} rank {} x {k}\n", f.slope, f.rank),
    };
    s.push_str(&body);
    s.push_str(&format!("twist {}\n", c.twist()));
    s
}

fn integer_arg(s: &str) -> Result<moduli_core::BigInt, Failure> {
    s.trim().parse().map_err(|_| Failure::Usage(format!("{s:?} is not an integer")))
}

fn classify_cmd(rank: &str, c1: &str, c2: &str, as_json: bool) -> Result<Output, Failure> {
    let x = ChernData::new(integer_arg(rank)?, integer_arg(c1)?, integer_arg(c2)?);
    let c = moduli_core::classify(&x)?;
    Ok(if as_json { Output::Json(json::classification(&c)) } else { Output::Text(classification_text(&c)) })
}

fn bundle_out(b: &ExceptionalBundle, as_json: bool) -> Output {
    if as_json {
        Output::Json(json::bundle(b))
    } else {
        Output::Text(bundle_text(b))
    }
}

fn series_cmd(tree: &ExceptionalTree, slope: &Rational, count: usize, as_json: bool) -> Result<Output, Failure> {
    let f = tree.locate(slope)?;
    if &f.slope != slope {
        return Err(Error::NotExceptional(slope.to_string()).into());
    }
    let series = tree.left_series(&f, count)?;
    Ok(if as_json {
        Output::Json(json!({ "f": json::bundle(&f), "series": series.iter().map(json::bundle).collect::<Vec<_>>() }))
    } else {
        let lines: Vec<String> = series.iter().map(|g| format!("{} rank {} chern {}", g.slope, g.rank, g.chern)).collect();
        Output::Text(lines.join("\n") + "\n")
    })
}

fn curves_cmd(a: &CurvesArgs) -> Result<Output, Failure> {
    if a.min >= a.max {
        return Err(Failure::Usage(format!("empty slope range [{}, {}]", a.min, a.max)));
    }
    if !(2..=100_000).contains(&a.steps) {
        return Err(Failure::Usage("--steps must be between 2 and 100000".into()));
    }
    if a.width == 0 || a.height == 0 {
        return Err(Failure::Usage("--width and --height must be positive".into()));
    }
    let rows = sample_curves(&a.min, &a.max, a.steps)?;
    let body = match a.format {
        CurveFormat::Csv => plot::csv(&rows),
        CurveFormat::Svg => plot::svg(
            &rows,
            &plot::Frame { mu_min: a.min.clone(), mu_max: a.max.clone(), width: a.width, height: a.height },
        ),
    };
    match &a.out {
        Some(path) => {
            std::fs::write(path, body).map_err(io_failure)?;
            Ok(Output::Text(String::new()))
        }
        None => Ok(Output::Text(body)),
    }
}

fn kronecker_cmd(cmd: &KroneckerCommand, as_json: bool) -> Result<Output, Failure> {
    match cmd {
        KroneckerCommand::Dim { q, m, n } => {
            let s = KroneckerShape::new(*q, *m, *n)?;
            let dim = moduli_dim(&s);
            Ok(if as_json {
                Output::Json(json!({ "shape": [q, m, n], "moduli_dim": dim, "coprime_fine": coprime_fine(&s) }))
            } else {
                Output::Text(format!("{dim}\n"))
            })
        }
        KroneckerCommand::Check { file, effort, seed, budget } => {
            let text = std::fs::read_to_string(file).map_err(io_failure)?;
            let module = module_from_json(&text)?;
            let verdict = match module.field {
                FieldKind::Prime(_) => check_ff_with_budget(&module, *budget)?,
                FieldKind::Rationals => search_destabilizer_q(&module, *effort, *seed)?,
            };
            if let Some(c) = &verdict.certificate {
                debug_assert!(kronecker::verify_certificate(&module, c).unwrap_or(false));
            }
            let v = json::verdict(&verdict);
            Ok(if as_json {
                Output::Json(v)
            } else {
                let mut s = format!("{}\n", v["status"].as_str().unwrap_or_default());
                if let Some(c) = &verdict.certificate {
                    s.push_str(&format!("subspace dim {} image dim {}\n", c.subspace_dim, c.image_dim));
                    for row in &c.basis {
                        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                        s.push_str(&format!("basis [{}]\n", cells.join(", ")));
                    }
                }
                if let Some(note) = &verdict.note {
                    s.push_str(&format!("note {note}\n"));
                }
                Output::Text(s)
            })
        }
        KroneckerCommand::Walls { m, n, p } => {
            let walls = candidate_walls(*m, *n, *p)?;
            Ok(if as_json {
                Output::Json(Value::Array(walls.iter().map(json::wall).collect()))
            } else {
                let lines: Vec<String> = walls
                    .iter()
                    .map(|w| format!("({}, {}, {}) lambda {} rho {}", w.triple.0, w.triple.1, w.triple.2, w.lambda, w.rho))
                    .collect();
                Output::Text(lines.iter().map(|l| format!("{l}\n")).collect())
            })
        }
        KroneckerCommand::Family { kind, n } => {
            let kind = match kind {
                FamilyArg::IdealLength => FamilyKind::IdealLength,
                FamilyArg::RankN2 => FamilyKind::RankN2,
            };
            let f = family_invariants(kind, *n)?;
            let s = f.shape;
            Ok(if as_json {
                Output::Json(json!({
                    "shape": [s.q, s.m, s.n],
                    "cokernel": json::chern(&f.cokernel),
                    "moduli_dim": f.moduli_dim,
                    "sheaf_dim": json::int(&f.sheaf_dim),
                    "dim_match": f.dim_match,
                }))
            } else {
                Output::Text(format!(
                    "shape ({}, {}, {})\ncokernel {}\nmoduli dim {}\nsheaf dim {}\ndim match {}\n",
                    s.q, s.m, s.n, f.cokernel, f.moduli_dim, f.sheaf_dim, f.dim_match
                ))
            })
        }
    }
}

fn dispatch(cli: &Cli, tree: &ExceptionalTree) -> Result<Output, Failure> {
    let as_json = cli.json;
    match &cli.command {
        Command::Classify { rank, c1, c2 } => classify_cmd(rank, c1, c2, as_json),
        Command::Exceptional(ExceptionalCommand::Locate { mu }) => Ok(bundle_out(&tree.locate(mu)?, as_json)),
        Command::Exceptional(ExceptionalCommand::Eps { x }) => Ok(bundle_out(&tree.epsilon(x.num, x.exp)?, as_json)),
        Command::Series { slope, count } => series_cmd(tree, slope, *count, as_json),
        Command::Delta { mu } => {
            let d = moduli_core::delta(mu)?;
            Ok(if as_json { Output::Json(json!({ "mu": json::rational(mu), "delta": json::rational(&d) })) } else { Output::Text(format!("{d}\n")) })
        }
        Command::DeltaPrime { mu } => {
            let d = moduli_core::delta_prime(mu)?;
            Ok(if as_json {
                Output::Json(json!({ "mu": json::rational(mu), "delta_prime": json::quad(&d) }))
            } else {
                Output::Text(format!("{d}\n{}\n", qapprox(&d, json::APPROX_DIGITS)))
            })
        }
        Command::Chi { e, f } => {
            let chi = euler_form(e, f);
            // Both slope forms are only defined for positive ranks; this also
            // surfaces zero ranks as domain errors rather than silent values.
            slope_disc(e)?;
            slope_disc(f)?;
            Ok(if as_json { Output::Json(json!({ "chi": json::int(&chi) })) } else { Output::Text(format!("{chi}\n")) })
        }
        Command::Curves(a) => curves_cmd(a),
        Command::Kronecker(k) => kronecker_cmd(k, as_json),
    }
}

/// Runs the command line, writing results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{text}");
                EXIT_OK
            } else {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            };
        }
    };

    let tree = ExceptionalTree::global();
    let cache_path = if cli.no_cache { None } else { cache::default_path() };
    if let Some(path) = &cache_path {
        cache::load(tree, path);
    }
    let before = tree.cached_len();

    let code = match dispatch(&cli, tree) {
        Ok(Output::Json(v)) => {
            let text = serde_json::to_string_pretty(&v).expect("JSON values serialize");
            match writeln!(out, "{text}") {
                Ok(()) => EXIT_OK,
                Err(e) => report(err, &io_failure(e)),
            }
        }
        Ok(Output::Text(t)) => match out.write_all(t.as_bytes()) {
            Ok(()) => EXIT_OK,
            Err(e) => report(err, &io_failure(e)),
        },
        Err(f) => report(err, &f),
    };

    if let Some(path) = &cache_path {
        if tree.cached_len() > before {
            if let Err(e) = cache::store(tree, path) {
                let _ = writeln!(err, "warning: could not write cache {}: {e}", path.display());
            }
        }
    }
    code
}

fn report(err: &mut dyn Write, f: &Failure) -> i32 {
    let _ = writeln!(err, "error: {f}");
    f.code()
}
