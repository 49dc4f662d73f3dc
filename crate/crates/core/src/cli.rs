//! Command-line front end.
//!
//! Exit codes: 0 success, 2 invalid input, 3 formula/oracle disagreement,
//! 4 I/O failure, 5 verification suite failure.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::curves::{
    j_const, k_const, l_const, prop11_residual, prop11_roots, tau0_residual, CaseAConstants,
    CaseBConstants, CaseCConstants,
};
use crate::error::Error;
use crate::extreme::{
    extreme_points, verify_midpoint_extremality, verify_supporting_plane, CheckMethod,
};
use crate::format::{envelope, Cell, Table};
use crate::norms::NormContext;
use crate::oracle::{edge_norm, grid_norm};
use crate::sphere::{in_pi, SphereChart};
use crate::trinomial::{ParityCase, Trinomial, TrinomialParams};
use crate::verify::{run_suites, SuiteConfig};

pub const EXIT_INVALID: i32 = 2;
pub const EXIT_DISAGREE: i32 = 3;
pub const EXIT_IO: i32 = 4;
pub const EXIT_SUITE: i32 = 5;

/// Tolerances settable with `--tol.<name> VALUE`.
pub const TOLERANCES: [(&str, f64); 7] = [
    ("oracle", 1e-9),
    ("identity", 1e-11),
    ("homogeneity", 1e-13),
    ("triangle", 1e-11),
    ("mesh", 1e-9),
    ("eps", 1e-3),
    ("midpoint", 1e-10),
];

#[derive(Debug, Parser)]
#[command(
    name = "trinorm",
    version,
    about = "Sup-norms and unit balls of homogeneous trinomials on [-1,1]^2"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Closed,
    Edge,
    Grid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CurveKind {
    Lambda,
    Gamma,
    Upsilon,
    F,
    G,
}

#[derive(Debug, Clone, Args)]
struct Common {
    /// Total degree m.
    #[arg(short = 'm')]
    m: u32,
    /// Exponent n of y in the middle term.
    #[arg(short = 'n')]
    n: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Norm of one trinomial.
    Norm {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
        /// Samples per edge for the grid method.
        #[arg(long, default_value_t = 100_001)]
        samples: usize,
        /// Coefficients a b c.
        #[arg(num_args = 3, allow_negative_numbers = true, required = true)]
        coeffs: Vec<f64>,
    },
    /// Named constants of the pair.
    Constants {
        #[command(flatten)]
        common: Common,
    },
    /// Uniform samples of one curve.
    Curve {
        #[arg(value_enum)]
        which: CurveKind,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 101)]
        samples: usize,
    },
    /// Both sheets of the unit sphere over a lattice of the hexagon.
    Sphere {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 200)]
        grid: usize,
    },
    /// Extreme points with extremality checks.
    Extreme {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Sphere lattice used by the supporting-plane checks.
        #[arg(long, default_value_t = 100)]
        grid: usize,
        /// Directions tried by the perturbation check.
        #[arg(long, default_value_t = 82)]
        directions: usize,
    },
    /// Randomized consistency suites.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
    },
    /// Lattice membership of the hexagon |a|, |c|, |a+c| <= 1.
    Projection {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 200)]
        grid: usize,
    },
}

/// Failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
    broken_pipe: bool,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
            broken_pipe: false,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NoSignChange { .. } | Error::NoConvergence { .. } => EXIT_DISAGREE,
            _ => EXIT_INVALID,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            broken_pipe: e.kind() == io::ErrorKind::BrokenPipe,
            ..Failure::new(EXIT_IO, e.to_string())
        }
    }
}

/// Validated settings shared by every subcommand.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: TrinomialParams,
    pub tolerances: BTreeMap<String, f64>,
    pub seed: u64,
    pub json: bool,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn tol(&self, name: &str) -> f64 {
        self.tolerances[name]
    }

    fn case(&self) -> &'static str {
        self.params.parity().letter()
    }
}

/// Splits `--tol.<name> V` / `--tol.<name>=V` out of `args`.
pub fn extract_tolerances(
    args: Vec<String>,
) -> Result<(Vec<String>, BTreeMap<String, f64>), Failure> {
    let mut tolerances: BTreeMap<String, f64> = TOLERANCES
        .iter()
        .map(|(k, v)| (k.to_string(), *v))
        .collect();
    let mut rest = Vec::with_capacity(args.len());
    let mut it = args.into_iter();
    while let Some(arg) = it.next() {
        if arg == "--" {
            rest.push(arg);
            rest.extend(it.by_ref());
            break;
        }
        let Some(flag) = arg.strip_prefix("--tol.") else {
            rest.push(arg);
            continue;
        };
        let (name, value) = match flag.split_once('=') {
            Some((name, value)) => (name.to_string(), value.to_string()),
            None => {
                let value = it.next().ok_or_else(|| {
                    Failure::new(EXIT_INVALID, format!("--tol.{flag} needs a value"))
                })?;
                (flag.to_string(), value)
            }
        };
        if !tolerances.contains_key(&name) {
            let known: Vec<&str> = TOLERANCES.iter().map(|(k, _)| *k).collect();
            return Err(Failure::new(
                EXIT_INVALID,
                format!("unknown tolerance '{name}' (known: {})", known.join(", ")),
            ));
        }
        let v: f64 = value.parse().map_err(|_| {
            Failure::new(
                EXIT_INVALID,
                format!("--tol.{name}: '{value}' is not a number"),
            )
        })?;
        if !(v > 0.0 && v.is_finite()) {
            return Err(Failure::new(
                EXIT_INVALID,
                format!("--tol.{name} must be positive"),
            ));
        }
        tolerances.insert(name, v);
    }
    Ok((rest, tolerances))
}

fn config(common: &Common, tolerances: &BTreeMap<String, f64>) -> Result<RunConfig, Failure> {
    Ok(RunConfig {
        params: TrinomialParams::new(common.m, common.n)?,
        tolerances: tolerances.clone(),
        seed: common.seed,
        json: common.format == OutputFormat::Json,
        out: common.out.clone(),
    })
}

/// What a command produces, before serialization.
enum Output {
    Table(Table),
    Json(Value),
}

fn emit(cfg: &RunConfig, table: Table) -> Output {
    if cfg.json {
        let data = Value::Array(table.json_rows());
        Output::Json(envelope(cfg.params.m(), cfg.params.n(), cfg.case(), data))
    } else {
        Output::Table(table)
    }
}

fn write_output(cfg: &RunConfig, out: &Output, stdout: &mut dyn Write) -> Result<(), Failure> {
    let mut file;
    let w: &mut dyn Write = match &cfg.out {
        Some(path) => {
            file = BufWriter::new(
                File::create(path)
                    .map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display())))?,
            );
            &mut file
        }
        None => stdout,
    };
    match out {
        Output::Table(t) => t.write_csv(w)?,
        Output::Json(v) => {
            serde_json::to_writer_pretty(&mut *w, v).map_err(io::Error::from)?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn cmd_norm(
    cfg: &RunConfig,
    method: Method,
    samples: usize,
    coeffs: &[f64],
) -> Result<(Output, Option<Failure>), Failure> {
    let p = Trinomial::new(coeffs[0], coeffs[1], coeffs[2], cfg.params)?;
    let ctx = NormContext::new(cfg.params)?;
    let (closed, branch) = ctx.norm_with_branch(p.a, p.b, p.c);
    let oracle = edge_norm(&p);
    let (value, label, reference) = match method {
        Method::Closed => (closed, branch.label().to_string(), oracle),
        Method::Edge => (oracle, "edge oracle".to_string(), closed),
        Method::Grid => {
            if samples < 2 {
                return Err(Failure::new(
                    EXIT_INVALID,
                    "grid method needs --samples >= 2",
                ));
            }
            (grid_norm(&p, samples), format!("grid {samples}"), oracle)
        }
    };
    let delta = (value - reference).abs();
    let mut t = Table::new(vec![
        "m",
        "n",
        "case",
        "a",
        "b",
        "c",
        "method",
        "norm",
        "branch",
        "reference",
        "delta",
    ]);
    t.push(vec![
        Cell::Int(cfg.params.m().into()),
        Cell::Int(cfg.params.n().into()),
        cfg.case().into(),
        p.a.into(),
        p.b.into(),
        p.c.into(),
        format!("{method:?}").to_lowercase().into(),
        value.into(),
        label.into(),
        reference.into(),
        delta.into(),
    ]);
    let tol = cfg.tol("oracle") * oracle.max(1.0);
    let failure = (method != Method::Grid && delta > tol).then(|| {
        Failure::new(
            EXIT_DISAGREE,
            format!("closed form {closed} and edge oracle {oracle} differ by {delta}"),
        )
    });
    Ok((emit(cfg, t), failure))
}

fn constants_table(cfg: &RunConfig) -> Result<Table, Failure> {
    let (m, n) = (cfg.params.m(), cfg.params.n());
    let mut t = Table::new(vec!["name", "value", "residual"]);
    let mut row = |name: &str, value: f64, residual: Option<f64>| {
        t.push(vec![name.to_string().into(), value.into(), residual.into()]);
    };
    let reduce = match cfg.params.parity() {
        ParityCase::AOddM => n % 2 == 1,
        ParityCase::CEvenMOddN => m < 2 * n,
        ParityCase::BBothEven => false,
    };
    let rn = if reduce { m - n } else { n };
    if reduce {
        row("reduced_n", f64::from(rn), None);
    }
    match cfg.params.parity() {
        ParityCase::CEvenMOddN => {
            let k = CaseCConstants::new(m, rn)?;
            row("K", k.k_mn, None);
            row("K_m_mn", k.k_m_mn, None);
            row("J", k.j_mn, None);
            row("J_m_mn", k.j_m_mn, None);
            row("L", l_const(m, rn), None);
            row("lambda0", k.lambda0, None);
            row("tau0", k.tau0, Some(tau0_residual(m, rn, k.tau0)));
            row("b_max", k.b_max, None);
            row("a0", k.a0, None);
            row("c0", k.c0, None);
            row("a1", k.a1, Some(k.gamma_residual(k.a1, k.c1)));
            row("c1", k.c1, None);
        }
        ParityCase::AOddM => {
            let k = CaseAConstants::new(m, rn)?;
            row("K", k.k_mn, None);
            row("L", k.l_mn, None);
            row("J", j_const(m, rn), None);
            row("mu0", k.mu0, Some(prop11_residual(m, m - rn, k.mu0)));
            row("eta1", k.eta1, None);
            row("eta2", k.eta2, None);
            row("a0_A", k.a0_a, None);
        }
        ParityCase::BBothEven => {
            let k = CaseBConstants::new(m, n)?;
            row("K", k_const(m, n), None);
            row("L", k.l_mn, None);
            row("L_m_mn", k.l_m_mn, None);
            row("lambda0_B", k.lambda0_b, None);
            row("R", k.r_mn, None);
            row("R_m_mn", k.r_m_mn, None);
        }
    }
    let (l0, l1) = prop11_roots(m, rn)?;
    row("prop11_lambda0", l0, Some(prop11_residual(m, rn, l0)));
    row("prop11_lambda1", l1, Some(prop11_residual(m, rn, l1)));
    Ok(t)
}

fn uniform_nodes(lo: f64, hi: f64, k: usize) -> impl Iterator<Item = f64> {
    (0..k).map(move |i| {
        if i + 1 == k {
            hi
        } else {
            lo + (hi - lo) * i as f64 / (k - 1) as f64
        }
    })
}

fn curve_table(cfg: &RunConfig, which: CurveKind, samples: usize) -> Result<Table, Failure> {
    if samples < 2 {
        return Err(Failure::new(EXIT_INVALID, "--samples must be at least 2"));
    }
    let k = CaseCConstants::new(cfg.params.m(), cfg.params.n())?;
    let mut t = Table::new(vec!["input", "output", "residual"]);
    match which {
        CurveKind::Lambda => {
            for b in uniform_nodes(0.0, k.b_max, samples) {
                let s = k.lambda(b)?;
                t.push(vec![b.into(), s.output.into(), s.residual.into()]);
            }
        }
        CurveKind::Gamma => {
            for a in uniform_nodes(k.a0, k.a1, samples) {
                let s = k.gamma(a)?;
                t.push(vec![a.into(), s.output.into(), s.residual.into()]);
            }
        }
        CurveKind::Upsilon => {
            for a in uniform_nodes(0.0, 1.0, samples) {
                // The curve tends to 0 as a -> 0.
                let v = if a == 0.0 { 0.0 } else { k.upsilon(a)? };
                t.push(vec![a.into(), v.into(), 0.0.into()]);
            }
        }
        CurveKind::F => {
            for b in uniform_nodes(0.0, k.b_max, samples) {
                t.push(vec![b.into(), k.f(b)?.into(), 0.0.into()]);
            }
        }
        CurveKind::G => {
            for tt in uniform_nodes(-1.0, 0.0, samples) {
                t.push(vec![tt.into(), k.g(tt)?.into(), 0.0.into()]);
            }
        }
    }
    Ok(t)
}

fn cmd_sphere(cfg: &RunConfig, grid: usize) -> Result<(Output, Option<Failure>), Failure> {
    let chart = SphereChart::new(cfg.params)?;
    let mesh = chart.mesh(grid)?;
    let tol = cfg.tol("mesh");
    let mut worst = 0.0f64;
    for s in &mesh {
        let e = edge_norm(&Trinomial::new(s.a, s.b, s.c, cfg.params)?);
        worst = worst.max((e - 1.0).abs());
    }
    let failure = (worst > tol).then(|| {
        Failure::new(
            EXIT_DISAGREE,
            format!("mesh point off the sphere by {worst}"),
        )
    });
    let out = if cfg.json {
        let mut groups: BTreeMap<&str, Vec<Value>> = BTreeMap::new();
        for s in &mesh {
            groups.entry(s.region.label()).or_default().push(json!({
                "a": s.a, "b": s.b, "c": s.c, "branch": s.branch.label()
            }));
        }
        let data = groups
            .into_iter()
            .map(|(region, samples)| json!({ "region": region, "samples": samples }))
            .collect();
        Output::Json(envelope(
            cfg.params.m(),
            cfg.params.n(),
            cfg.case(),
            Value::Array(data),
        ))
    } else {
        let mut t = Table::new(vec!["a", "b", "c", "region", "branch"]);
        for s in &mesh {
            t.push(vec![
                s.a.into(),
                s.b.into(),
                s.c.into(),
                s.region.label().into(),
                s.branch.label().into(),
            ]);
        }
        Output::Table(t)
    };
    Ok((out, failure))
}

fn extreme_table(
    cfg: &RunConfig,
    samples: usize,
    grid: usize,
    directions: usize,
) -> Result<Table, Failure> {
    let pts = extreme_points(cfg.params, samples)?;
    let mesh = if cfg.params.parity() == ParityCase::CEvenMOddN {
        SphereChart::new(cfg.params)?.mesh(grid)?
    } else {
        Vec::new()
    };
    let mut t = Table::new(vec![
        "family",
        "parameter",
        "a",
        "b",
        "c",
        "norm",
        "method",
        "passed",
        "margin",
    ]);
    for s in &pts {
        let norm = edge_norm(&Trinomial::new(
            s.point[0], s.point[1], s.point[2], cfg.params,
        )?);
        let plane = matches!(
            s.family,
            crate::extreme::ExtremeFamily::VertexP1 | crate::extreme::ExtremeFamily::VertexP2
        );
        let report = if plane {
            verify_supporting_plane(cfg.params, s, &mesh)?
        } else {
            verify_midpoint_extremality(
                cfg.params,
                s.point,
                cfg.tol("eps"),
                directions,
                cfg.tol("midpoint"),
            )
        };
        let method = match report.method {
            CheckMethod::SupportingPlane => "supporting_plane",
            CheckMethod::MidpointPerturbation => "midpoint",
        };
        t.push(vec![
            s.family.label().into(),
            s.parameter.into(),
            s.point[0].into(),
            s.point[1].into(),
            s.point[2].into(),
            norm.into(),
            method.into(),
            report.passed.into(),
            report.margin.into(),
        ]);
    }
    Ok(t)
}

fn cmd_verify(cfg: &RunConfig, trials: usize) -> Result<(Output, Option<Failure>), Failure> {
    let suite_cfg = SuiteConfig {
        trials,
        seed: cfg.seed,
        oracle: cfg.tol("oracle"),
        identity: cfg.tol("identity"),
        homogeneity: cfg.tol("homogeneity"),
        triangle: cfg.tol("triangle"),
    };
    let results = run_suites(cfg.params, &suite_cfg)?;
    let mut t = Table::new(vec!["suite", "passed", "max_error", "tolerance", "trials"]);
    let mut failed = Vec::new();
    for r in &results {
        if !r.passed {
            failed.push(r.name);
        }
        t.push(vec![
            r.name.into(),
            r.passed.into(),
            r.max_error.into(),
            r.tolerance.into(),
            Cell::Int(r.trials as i64),
        ]);
    }
    let failure = (!failed.is_empty())
        .then(|| Failure::new(EXIT_SUITE, format!("failed suites: {}", failed.join(", "))));
    Ok((emit(cfg, t), failure))
}

fn projection_table(cfg: &RunConfig, grid: usize) -> Result<Table, Failure> {
    if grid < 2 {
        return Err(Failure::new(EXIT_INVALID, "--grid must be at least 2"));
    }
    let chart = match cfg.params.parity() {
        ParityCase::CEvenMOddN => Some(SphereChart::new(cfg.params)?),
        _ => None,
    };
    let mut t = Table::new(vec!["a", "c", "in_pi", "height"]);
    for a in uniform_nodes(-1.0, 1.0, grid + 1) {
        for c in uniform_nodes(-1.0, 1.0, grid + 1) {
            let inside = in_pi(a, c);
            let height = match &chart {
                Some(ch) if inside => Some(ch.height(a, c)?.0),
                _ => None,
            };
            t.push(vec![a.into(), c.into(), inside.into(), height.into()]);
        }
    }
    Ok(t)
}

/// Runs the CLI on `args` (including the program name), writing data to
/// `stdout` and diagnostics to `stderr`. Returns the exit code.
pub fn run(args: Vec<String>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let (args, tolerances) = match extract_tolerances(args) {
        Ok(v) => v,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            return f.code;
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{rendered}");
            } else {
                let _ = write!(stderr, "{rendered}");
            }
            return code;
        }
    };
    match dispatch(cli, &tolerances, stdout) {
        Ok(None) => 0,
        Err(f) if f.broken_pipe => 0,
        Ok(Some(f)) | Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(
    cli: Cli,
    tol: &BTreeMap<String, f64>,
    stdout: &mut dyn Write,
) -> Result<Option<Failure>, Failure> {
    let (cfg, output, failure) = match cli.command {
        Command::Norm {
            common,
            method,
            samples,
            coeffs,
        } => {
            let cfg = config(&common, tol)?;
            let (o, f) = cmd_norm(&cfg, method, samples, &coeffs)?;
            (cfg, o, f)
        }
        Command::Constants { common } => {
            let cfg = config(&common, tol)?;
            let t = constants_table(&cfg)?;
            let o = emit(&cfg, t);
            (cfg, o, None)
        }
        Command::Curve {
            which,
            common,
            samples,
        } => {
            let cfg = config(&common, tol)?;
            let t = curve_table(&cfg, which, samples)?;
            let o = emit(&cfg, t);
            (cfg, o, None)
        }
        Command::Sphere { common, grid } => {
            let cfg = config(&common, tol)?;
            let (o, f) = cmd_sphere(&cfg, grid)?;
            (cfg, o, f)
        }
        Command::Extreme {
            common,
            samples,
            grid,
            directions,
        } => {
            let cfg = config(&common, tol)?;
            let t = extreme_table(&cfg, samples, grid, directions)?;
            let o = emit(&cfg, t);
            (cfg, o, None)
        }
        Command::Verify { common, trials } => {
            let cfg = config(&common, tol)?;
            let (o, f) = cmd_verify(&cfg, trials)?;
            (cfg, o, f)
        }
        Command::Projection { common, grid } => {
            let cfg = config(&common, tol)?;
            let t = projection_table(&cfg, grid)?;
            let o = emit(&cfg, t);
            (cfg, o, None)
        }
    };
    write_output(&cfg, &output, stdout)?;
    Ok(failure)
}
