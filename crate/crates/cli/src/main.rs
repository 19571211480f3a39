//! `revcarleson`: norms, reverse Carleson scans and certificates from the
//! command line.

mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use revcarleson::ball::{
    ball_directions, ball_kernel_norm, ball_kernel_ratios, ball_region_mass, ball_w_grid, BallMeasure, BallPoint,
    NonIsotropicBall, UniformCap, DIM,
};
use revcarleson::carleson::{
    balayage_decay, beta_rcm_test, besov_blaschke_certificate, bloch_nonexistence_witness, default_power,
    equivalence_report, phi_h, phi_h_gap_bound, q_less_p_certificate, triebel_q_certificate, triebel_s_certificate,
    window_gap, Certificate, DEFAULT_LAMBDA_DEPTH,
};
use revcarleson::corpus;
use revcarleson::disc::{Arc, CarlesonWindow, DiscPoint, MAX_DYADIC_LEVEL};
use revcarleson::funcs::HoloFunction;
use revcarleson::measures::{BoundaryDensity, Measure};
use revcarleson::quad::QuadConfig;
use revcarleson::spaces::{norm, norm_with_refinement, q_variation, NormPart, SpaceKind, SpaceSpec};
use revcarleson::verify::{run_criterion, title, CriterionOutcome, CRITERIA};
use revcarleson::{Error, Result};

use output::{Report, Row};

#[derive(Debug, Parser)]
#[command(name = "revcarleson", version, about = "Reverse Carleson measures: norms, scans and certificates")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Circle nodes (power of two, ≥ 16).
    #[arg(long, global = true, default_value_t = QuadConfig::default().n_circle)]
    n_circle: usize,
    /// Geometric radial panels.
    #[arg(long, global = true, default_value_t = QuadConfig::default().l_radial)]
    l_radial: usize,
    /// Gauss nodes per radial panel.
    #[arg(long, global = true, default_value_t = QuadConfig::default().k_panel)]
    k_panel: usize,
    /// Monte-Carlo samples on the sphere.
    #[arg(long, global = true, default_value_t = QuadConfig::default().n_mc)]
    n_mc: usize,
    #[arg(long, global = true, default_value_t = QuadConfig::default().seed)]
    seed: u64,
    /// Omit wall-clock timings so repeated runs give identical reports.
    #[arg(long, global = true)]
    deterministic: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Finest dyadic arc level for arc scans.
    #[arg(long, global = true, default_value_t = 12)]
    level: u32,
    /// Number of rings in the kernel-test λ grid.
    #[arg(long, global = true, default_value_t = DEFAULT_LAMBDA_DEPTH)]
    depth: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a (quasi)norm.
    Norm {
        #[arg(long)]
        function: String,
        /// hardy, bloch, bmoa, triebel or besov.
        #[arg(long, default_value = "hardy")]
        space: String,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        /// Inner exponent; `inf` for the supremum versions.
        #[arg(long, default_value_t = 2.0)]
        q: f64,
        #[arg(long, default_value_t = 0.0)]
        s: f64,
        /// Derivative order (defaults to floor(s) + 1).
        #[arg(long)]
        m: Option<usize>,
        /// Drop the Taylor head and report the seminorm.
        #[arg(long)]
        seminorm: bool,
        /// Repeat at doubled resolution and report both.
        #[arg(long)]
        refine: bool,
    },
    /// Partial radial q-variation of f at one angle.
    Qvar {
        #[arg(long)]
        function: String,
        #[arg(long)]
        q: f64,
        /// Angle in turns.
        #[arg(long)]
        t: f64,
        #[arg(long)]
        r_max: f64,
    },
    /// Geometric, kernel and direct constants of a measure, with a verdict.
    Equiv {
        /// Measure file or corpus name.
        #[arg(long)]
        measure: String,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        /// Kernel power (defaults to floor(1/p) + 1).
        #[arg(long)]
        l: Option<u32>,
    },
    /// Window averages Φ_h(z) over a sweep of depths h.
    Phih {
        /// Point as `re,im`.
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Arc as `start,length` in turns.
        #[arg(long, default_value = "0,0.25", allow_hyphen_values = true)]
        arc: String,
        #[arg(long, value_delimiter = ',', default_value = "0.125,0.0625,0.03125")]
        h: Vec<f64>,
        #[arg(long, default_value_t = 2.0)]
        q: f64,
    },
    /// Interior integrals of |z^N f|^q against a measure.
    Balayage {
        #[arg(long)]
        measure: String,
        #[arg(long, default_value_t = 2.0)]
        q: f64,
        #[arg(long, value_delimiter = ',', default_value = "0,5,10,20,40")]
        n: Vec<u32>,
        #[arg(long, default_value = "poly:1")]
        function: String,
    },
    /// The (p,q) criterion for a boundary density.
    BetaTest {
        /// Measure file or corpus name whose density is tested.
        #[arg(long, conflicts_with = "power")]
        measure: Option<String>,
        /// Test the density |t − 1/2|^a instead.
        #[arg(long)]
        power: Option<f64>,
        #[arg(long, default_value_t = 1 << 16)]
        n_grid: usize,
        /// Midpoint samples per cell when discretizing `--power`.
        #[arg(long, default_value_t = 8)]
        sub: usize,
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        #[arg(long, default_value_t = 2.0)]
        q: f64,
    },
    /// Mass lower bounds forced when q < p.
    Qlessp {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: f64,
        #[arg(long, value_delimiter = ',', default_value = "0.1,0.01,0.001,0.0001")]
        eps: Vec<f64>,
    },
    /// Nonexistence certificates.
    #[command(subcommand)]
    Certificate(CertificateCommand),
    /// Run the acceptance suite.
    Verify {
        /// Only these criteria (default: all).
        #[arg(long, value_delimiter = ',')]
        criterion: Vec<u32>,
    },
    /// Unit ball of ℂ².
    #[command(subcommand)]
    Ball(BallCommand),
}

#[derive(Debug, Subcommand)]
enum CertificateCommand {
    Bloch {
        #[arg(long)]
        measure: String,
        #[arg(long, value_delimiter = ',', default_value = "64,256,1024,4096")]
        n: Vec<u32>,
        /// Phase of the Fejér polynomials, in turns.
        #[arg(long, default_value_t = 0.75)]
        phi: f64,
    },
    TriebelS {
        #[arg(long, value_delimiter = ',', default_value = "10,100,1000,10000")]
        n: Vec<u64>,
        #[arg(long, default_value_t = 0.5)]
        s: f64,
    },
    TriebelQ {
        #[arg(long, default_value_t = 1.5)]
        q: f64,
        #[arg(long, default_value_t = 0.137)]
        t: f64,
        #[arg(long, value_delimiter = ',', default_value = "6,8,10,12,14")]
        n: Vec<u32>,
    },
    BesovBlaschke {
        #[arg(long, value_delimiter = ',', default_value = "4,8,16")]
        n: Vec<u32>,
    },
}

#[derive(Debug, Subcommand)]
enum BallCommand {
    /// μ(Q) (or μ(S_Q)) against σ(Q).
    Mass {
        /// Ball measure file, `uniform` or `half-cap`.
        #[arg(long)]
        measure: String,
        /// Center as `re1,im1,re2,im2`.
        #[arg(long, default_value = "1,0,0,0", allow_hyphen_values = true)]
        center: String,
        #[arg(long)]
        delta: f64,
        /// Count interior mass in the window S_Q.
        #[arg(long)]
        window: bool,
    },
    KernelNorm {
        /// Point as `re1,im1,re2,im2`.
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long, default_value_t = 1)]
        l: u32,
    },
    KernelTest {
        #[arg(long)]
        measure: String,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long, default_value_t = 1)]
        l: u32,
        /// Radii of the w grid; each is paired with eight fixed directions.
        #[arg(long, value_delimiter = ',', default_value = "0.5,0.9")]
        radii: Vec<f64>,
    },
}

/// Everything that shapes a run, echoed in every report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub quad: QuadConfig,
    pub level_max: u32,
    pub lambda_depth: u32,
    pub deterministic: bool,
    format: Format,
}

impl RunConfig {
    fn from_args(g: &GlobalArgs) -> Result<Self> {
        let quad = QuadConfig {
            n_circle: g.n_circle,
            l_radial: g.l_radial,
            k_panel: g.k_panel,
            n_mc: g.n_mc,
            seed: g.seed,
        };
        quad.validate()?;
        if !(1..=MAX_DYADIC_LEVEL).contains(&g.level) {
            return Err(Error::Parameter(format!("--level {} outside [1, {MAX_DYADIC_LEVEL}]", g.level)));
        }
        if !(1..=20).contains(&g.depth) {
            return Err(Error::Parameter(format!("--depth {} outside [1, 20]", g.depth)));
        }
        Ok(RunConfig {
            quad,
            level_max: g.level,
            lambda_depth: g.depth,
            deterministic: g.deterministic,
            format: g.format,
        })
    }
}

/// Failure modes of a run, with their exit codes.
enum Failure {
    Input(String),
    Evaluation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_evaluation() {
            Failure::Evaluation(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Evaluation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> std::result::Result<u8, Failure> {
    let config = RunConfig::from_args(&cli.global)?;
    let start = Instant::now();
    let (name, result, rows, code) = dispatch(&cli.command, &config)?;
    let report = Report {
        command: name,
        config,
        elapsed_seconds: (!config.deterministic).then(|| start.elapsed().as_secs_f64()),
        result,
        rows,
    };
    let text = match config.format {
        Format::Json => output::to_json(&report),
        Format::Csv => output::to_csv(&report.rows).map_err(|e| Failure::Evaluation(format!("CSV output: {e}")))?,
    };
    match &cli.global.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(code)
}

type Dispatched = (String, Value, Vec<Row>, u8);

fn dispatch(command: &Command, config: &RunConfig) -> Result<Dispatched> {
    let cfg = &config.quad;
    let done = |name: &str, result: Value, rows: Vec<Row>| Ok((name.to_string(), result, rows, 0));
    match command {
        Command::Norm {
            function,
            space,
            p,
            q,
            s,
            m,
            seminorm,
            refine,
        } => {
            let f: HoloFunction = function.parse()?;
            let kind: SpaceKind = space.parse()?;
            let spec = SpaceSpec::new(kind, *s, *p, *q, *m)?;
            let part = if *seminorm { NormPart::Seminorm } else { NormPart::Full };
            let result = if *refine {
                norm_with_refinement(&f, &spec, part, config.level_max, cfg)?
            } else {
                norm(&f, &spec, part, config.level_max, cfg)?
            };
            let rows = result
                .diagnostics
                .iter()
                .map(|d| Row::new(d.n_circle.to_string(), d.value, None))
                .collect();
            let value = json!({
                "function": f.to_string(),
                "space": spec,
                "part": part,
                "value": result.value,
                "lower_bound_certified": result.lower_bound_certified,
                "refinement_change": result.refinement_change(),
                "diagnostics": result.diagnostics,
            });
            done("norm", value, rows)
        }
        Command::Qvar { function, q, t, r_max } => {
            let f: HoloFunction = function.parse()?;
            let v = q_variation(&f, *q, *t, *r_max, cfg)?;
            let value = json!({ "function": f.to_string(), "q": q, "t": t, "r_max": r_max, "value": v });
            done("qvar", value, vec![Row::new(r_max.to_string(), v, None)])
        }
        Command::Equiv { measure, p, l } => {
            let mu = load_measure(measure)?;
            let l = match l {
                Some(l) => *l,
                None => default_power(*p)?,
            };
            let r = equivalence_report(&mu, *p, l, config.level_max, config.lambda_depth, cfg)?;
            let rows = vec![
                Row::new("geometric", r.geometric_constant, Some(r.thresholds.geometric)),
                Row::new("kernel", r.kernel_constant, Some(r.thresholds.kernel)),
                Row::new("direct", r.direct_constant, None),
            ];
            done("equiv", json!({ "measure": measure, "report": r }), rows)
        }
        Command::Phih { z, arc, h, q } => {
            let [re, im] = parse_reals::<2>("z", z)?;
            let z = DiscPoint::new(re, im)?;
            let [start, length] = parse_reals::<2>("arc", arc)?;
            let arc = Arc::new(start, length)?;
            let mut rows = Vec::with_capacity(h.len());
            let mut values = Vec::with_capacity(h.len());
            for &h in h {
                let window = CarlesonWindow::new(arc, h)?;
                let v = phi_h(z, &arc, h, *q, cfg)?;
                let gap = window_gap(z, &window);
                let bound = phi_h_gap_bound(gap, &arc, h, *q);
                values.push(json!({ "h": h, "value": v, "gap": gap, "gap_bound": finite_or_null(bound) }));
                rows.push(Row::new(h.to_string(), v, Some(bound)));
            }
            let value = json!({ "z": [re, im], "arc": arc, "q": q, "values": values });
            done("phih", value, rows)
        }
        Command::Balayage { measure, q, n, function } => {
            let mu = load_measure(measure)?;
            let f: HoloFunction = function.parse()?;
            let result = balayage_decay(&mu, &f, *q, n, cfg)?;
            let rows = result
                .iter()
                .map(|r| Row::new(r.n.to_string(), r.value, Some(r.envelope)))
                .collect();
            let value = json!({ "measure": measure, "function": f.to_string(), "q": q, "rows": result });
            done("balayage", value, rows)
        }
        Command::BetaTest {
            measure,
            power,
            n_grid,
            sub,
            p,
            q,
        } => {
            let (source, density) = match (measure, power) {
                (Some(m), None) => {
                    let mu = load_measure(m)?;
                    let density = mu
                        .density()
                        .cloned()
                        .ok_or_else(|| Error::Parameter(format!("measure `{m}` has no boundary density")))?;
                    (m.clone(), density)
                }
                (None, Some(a)) => {
                    let a = *a;
                    let density = BoundaryDensity::discretize(*n_grid, *sub, move |t| (t - 0.5f64).abs().powf(a))?;
                    (format!("|t-1/2|^{a}"), density)
                }
                _ => return Err(Error::Parameter("beta-test needs --measure or --power".into())),
            };
            let r = beta_rcm_test(&density, *p, *q)?;
            let rows = r
                .ladder
                .iter()
                .map(|s| Row::new(s.n_grid.to_string(), s.sum, None))
                .collect();
            done("beta-test", json!({ "density": source, "p": p, "q": q, "test": r }), rows)
        }
        Command::Qlessp { p, q, eps } => {
            let cert = q_less_p_certificate(*p, *q, eps)?;
            done("qlessp", json!(cert), certificate_rows(&cert))
        }
        Command::Certificate(c) => {
            let cert = match c {
                CertificateCommand::Bloch { measure, n, phi } => {
                    bloch_nonexistence_witness(&load_measure(measure)?, n, *phi, cfg)?
                }
                CertificateCommand::TriebelS { n, s } => triebel_s_certificate(n, *s, cfg)?,
                CertificateCommand::TriebelQ { q, t, n } => triebel_q_certificate(*q, *t, n, cfg)?,
                CertificateCommand::BesovBlaschke { n } => besov_blaschke_certificate(n, cfg)?,
            };
            let rows = certificate_rows(&cert);
            done(&format!("certificate {}", cert.kind), json!(cert), rows)
        }
        Command::Verify { criterion } => {
            let ids: Vec<u32> = if criterion.is_empty() {
                (1..=CRITERIA).collect()
            } else {
                criterion.clone()
            };
            let mut outcomes = Vec::with_capacity(ids.len());
            for id in ids {
                let mut outcome = run_criterion(id).or_else(|e| match e {
                    Error::Parameter(_) => Err(e),
                    other => Ok(CriterionOutcome {
                        id,
                        title: title(id).to_string(),
                        passed: false,
                        detail: format!("error: {other}"),
                        seconds: 0.0,
                        runtime_limit: None,
                    }),
                })?;
                eprintln!("{outcome}");
                if config.deterministic {
                    outcome.seconds = 0.0;
                }
                outcomes.push(outcome);
            }
            let passed = outcomes.iter().filter(|o| o.passed).count();
            let rows = outcomes
                .iter()
                .map(|o| Row::new(o.id.to_string(), if o.passed { 1.0 } else { 0.0 }, o.runtime_limit))
                .collect();
            let code = if passed == outcomes.len() { 0 } else { 2 };
            let value = json!({ "passed": passed, "total": outcomes.len(), "criteria": outcomes });
            Ok(("verify".to_string(), value, rows, code))
        }
        Command::Ball(b) => ball(b, cfg),
    }
}

fn ball(command: &BallCommand, cfg: &QuadConfig) -> Result<Dispatched> {
    let (name, value, rows) = match command {
        BallCommand::Mass {
            measure,
            center,
            delta,
            window,
        } => {
            let mu = load_ball_measure(measure)?;
            let [a, b, c, d] = parse_reals::<4>("center", center)?;
            let center = BallPoint::on_sphere(Complex64::new(a, b), Complex64::new(c, d))?;
            let q = NonIsotropicBall::new(center, *delta)?;
            let r = ball_region_mass(&mu, &q, *window, cfg)?;
            let rows = vec![Row::new(delta.to_string(), r.mass, Some(r.sigma.estimate))];
            let value = json!({ "measure": measure, "ball": q, "window": window, "mass": r, "ratio": finite_or_null(r.ratio()) });
            ("ball mass", value, rows)
        }
        BallCommand::KernelNorm { w, p, l } => {
            let [a, b, c, d] = parse_reals::<4>("w", w)?;
            let w = BallPoint::new(Complex64::new(a, b), Complex64::new(c, d))?;
            let r = ball_kernel_norm(&w, *l, *p, cfg)?;
            if let Some(warning) = &r.warning {
                eprintln!("warning: {warning}");
            }
            let exponent = p * (l * DIM) as f64;
            let reference = (1.0 - w.norm().powi(2)).powf((DIM as f64 - exponent) / p);
            let rows = vec![Row::new(w.norm().to_string(), r.norm, Some(reference))];
            ("ball kernel-norm", json!({ "w": w, "p": p, "l": l, "norm": r, "reference": reference }), rows)
        }
        BallCommand::KernelTest { measure, p, l, radii } => {
            let mu = load_ball_measure(measure)?;
            let grid = ball_w_grid(radii, &ball_directions())?;
            let ratios = ball_kernel_ratios(&mu, *p, *l, &grid, cfg)?;
            let best = ratios
                .iter()
                .min_by(|a, b| a.ratio.total_cmp(&b.ratio))
                .ok_or_else(|| Error::Parameter("empty w grid".into()))?;
            let rows = ratios
                .iter()
                .map(|r| Row::new(format!("{}", r.w.norm()), r.ratio, None))
                .collect();
            let value = json!({
                "measure": measure,
                "p": p,
                "l": l,
                "constant": best.ratio,
                "std_error": best.std_error,
                "argmin": best.w,
                "ratios": ratios,
            });
            ("ball kernel-test", value, rows)
        }
    };
    Ok((name.to_string(), value, rows, 0))
}

fn certificate_rows(cert: &Certificate) -> Vec<Row> {
    cert.rows
        .iter()
        .map(|r| Row::new(r.parameter.to_string(), r.left_side, Some(r.right_side)))
        .collect()
}

fn finite_or_null(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::Null
    }
}

/// A measure file if `spec` names an existing path, otherwise a corpus member.
fn load_measure(spec: &str) -> Result<Measure> {
    if Path::new(spec).is_file() {
        Measure::load(spec)
    } else {
        corpus::builtin(spec.trim_end_matches(".json"))
    }
}

fn load_ball_measure(spec: &str) -> Result<BallMeasure> {
    if Path::new(spec).is_file() {
        return BallMeasure::load(spec);
    }
    match spec {
        "uniform" => BallMeasure::uniform(1.0),
        "half-cap" | "half_cap" => {
            let e1 = BallPoint::on_sphere(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))?;
            let cap = UniformCap {
                center: e1,
                min_re: 0.0,
                density: 2.0,
            };
            BallMeasure::new(Vec::new(), Vec::new(), 0.0, Some(cap))
        }
        other => Err(Error::Parameter(format!(
            "`{other}` is neither a ball measure file nor a built-in (uniform, half-cap)"
        ))),
    }
}

fn parse_reals<const N: usize>(name: &str, text: &str) -> Result<[f64; N]> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(Error::Parameter(format!("--{name} expects {N} comma-separated numbers, got `{text}`")));
    }
    let mut out = [0.0; N];
    for (slot, part) in out.iter_mut().zip(parts) {
        *slot = part
            .parse()
            .map_err(|_| Error::Parameter(format!("--{name}: `{part}` is not a number")))?;
    }
    Ok(out)
}
