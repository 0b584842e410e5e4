mod output;
mod verify;

use clap::{Parser, Subcommand, ValueEnum};
use latdet::asympt::{self, SweepOptions, SweepReport, SweepTarget};
use latdet::exact::{self, GraphKind, MAX_EXACT_VERTICES};
use latdet::specfun::{catalan_constant, QuadratureSpec};
use latdet::spectra::{self, LatticeSpec, OrthotopeSpec};
use latdet::zetadet::{self, TorusRoute, ZetaConvention};
use latdet::{Error, Exec, PrecisionMode};
use output::{exact as exact_value, fmt17, num, print_json, tagged, Format};
use serde_json::{Map, Value};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "latdet", version, about = "Spanning trees, forests and regularised determinants on lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format (default: text for tau and verify, json otherwise).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Absolute quadrature tolerance.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tolerance: f64,
    /// Working precision; defaults to $LATDET_PRECISION, then standard.
    #[arg(long, global = true, value_enum)]
    precision: Option<PrecisionArg>,
    /// Disable data parallelism.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum PrecisionArg {
    Standard,
    Extended,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Grid,
    Torus,
    Qad,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepArg {
    Theorem1,
    Theorem3,
}

#[derive(Clone, Copy, ValueEnum)]
enum DomainArg {
    Interval,
    Orthotope,
    Torus,
    Triangle,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    A,
    B,
}

impl From<ConventionArg> for ZetaConvention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::A => ZetaConvention::A,
            ConventionArg::B => ZetaConvention::B,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Spanning-tree count (exact when small enough, else its logarithm).
    Tau {
        #[arg(value_enum)]
        kind: KindArg,
        /// Grid sides, torus half-sides, or the QAD order.
        #[arg(required = true)]
        sizes: Vec<usize>,
    },
    /// Lattice constants of dimension d.
    Constants {
        #[arg(long)]
        d: u32,
    },
    /// Run a built-in verification suite.
    Verify {
        #[arg(value_enum)]
        target: verify::Target,
    },
    /// Residuals of an asymptotic expansion over a list of n.
    Sweep {
        #[arg(value_enum)]
        target: SweepArg,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Orthotope side ratios (theorem1).
        #[arg(long, value_delimiter = ',')]
        alphas: Vec<u32>,
        #[arg(long, value_enum, default_value = "a", ignore_case = true)]
        convention: ConventionArg,
    },
    /// Heat trace of a grid or torus.
    Theta {
        #[arg(value_enum)]
        kind: KindArg,
        #[arg(required = true)]
        sizes: Vec<usize>,
        #[arg(long)]
        t: f64,
        /// Also check both decompositions (grid only).
        #[arg(long)]
        decomposition: bool,
    },
    /// ζ'(0) and the regularised determinant of a continuum domain.
    Zeta {
        #[arg(value_enum)]
        domain: DomainArg,
        lengths: Vec<f64>,
        #[arg(long, value_enum, default_value = "a", ignore_case = true)]
        convention: ConventionArg,
    },
}

struct Ctx {
    format: Option<Format>,
    quad: QuadratureSpec,
    precision: PrecisionMode,
    exec: Exec,
}

impl Ctx {
    fn format(&self, default: Format, allowed: &[Format]) -> latdet::Result<Format> {
        let f = self.format.unwrap_or(default);
        if !allowed.contains(&f) {
            return Err(Error::Parameter(format!("format {f:?} is not available for this command")));
        }
        Ok(f)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::NonConvergence { .. } => 3,
                _ => 2,
            })
        }
    }
}

fn run(cli: Cli) -> latdet::Result<ExitCode> {
    let precision = match cli.precision {
        Some(PrecisionArg::Standard) => PrecisionMode::Standard,
        Some(PrecisionArg::Extended) => PrecisionMode::Extended,
        None => PrecisionMode::from_env()?,
    };
    let ctx = Ctx {
        format: cli.format,
        quad: QuadratureSpec::with_tolerance(cli.tolerance),
        precision,
        exec: if cli.sequential { Exec::Sequential } else { Exec::default() },
    };
    ctx.quad.validate()?;
    match cli.command {
        Command::Tau { kind, sizes } => tau(&ctx, kind, &sizes),
        Command::Constants { d } => constants(&ctx, d),
        Command::Verify { target } => verify_cmd(&ctx, target),
        Command::Sweep { target, n, alphas, convention } => sweep(&ctx, target, &n, &alphas, convention.into()),
        Command::Theta { kind, sizes, t, decomposition } => theta(&ctx, kind, &sizes, t, decomposition),
        Command::Zeta { domain, lengths, convention } => zeta(&ctx, domain, &lengths, convention.into()),
    }
}

fn kind_name(kind: KindArg) -> &'static str {
    match kind {
        KindArg::Grid => "grid",
        KindArg::Torus => "torus",
        KindArg::Qad => "qad",
    }
}

fn tau(ctx: &Ctx, kind: KindArg, sizes: &[usize]) -> latdet::Result<ExitCode> {
    let format = ctx.format(Format::Text, &[Format::Text, Format::Json])?;
    let graph_kind = match kind {
        KindArg::Grid => GraphKind::Grid,
        KindArg::Torus => GraphKind::Torus,
        KindArg::Qad => GraphKind::Qad,
    };
    let exact_count = match exact::build_graph(graph_kind, sizes) {
        Ok(g) => Some(exact::matrix_tree(&g)?),
        Err(Error::Size(_)) => None,
        Err(e) => return Err(e),
    };
    let mut out = Map::new();
    out.insert("command".into(), "tau".into());
    out.insert("kind".into(), kind_name(kind).into());
    out.insert("sizes".into(), sizes.into());
    match exact_count {
        Some(count) => {
            if format == Format::Text {
                out!("{count}");
                return Ok(ExitCode::SUCCESS);
            }
            out.insert("tau".into(), exact_value(count.to_string()));
        }
        None => {
            let (value, digits) = log_tau(ctx, kind, sizes)?;
            if format == Format::Text {
                out!("log_tau {}", digits.as_deref().unwrap_or(&fmt17(value)));
                return Ok(ExitCode::SUCCESS);
            }
            out.insert("log_tau".into(), tagged(value, None, "series"));
            if let Some(d) = digits {
                out.insert("log_tau_digits".into(), d.into());
            }
            out.insert("exact_limit_vertices".into(), MAX_EXACT_VERTICES.into());
        }
    }
    out.insert("precision".into(), ctx.precision.to_string().into());
    print_json(&Value::Object(out));
    Ok(ExitCode::SUCCESS)
}

fn log_tau(ctx: &Ctx, kind: KindArg, sizes: &[usize]) -> latdet::Result<(f64, Option<String>)> {
    let spec = match kind {
        KindArg::Qad => {
            let [n] = sizes else {
                return Err(Error::Parameter("qad takes exactly one order".into()));
            };
            let v = exact::tau_qad_product(*n, ctx.precision, ctx.exec)?;
            return Ok((v.value, v.digits));
        }
        KindArg::Grid => LatticeSpec::grid(sizes)?,
        KindArg::Torus => LatticeSpec::torus(sizes)?,
    };
    let log_n = (spec.vertex_count() as f64).ln();
    Ok(match ctx.precision {
        PrecisionMode::Standard => (spectra::log_det_star_with(&spec, ctx.exec) - log_n, None),
        PrecisionMode::Extended => {
            let (v, _) = spectra::log_det_star_extended(&spec, ctx.exec);
            (v - log_n, None)
        }
    })
}

fn constants(ctx: &Ctx, d: u32) -> latdet::Result<ExitCode> {
    ctx.format(Format::Json, &[Format::Json])?;
    if !(1..=4).contains(&d) {
        return Err(Error::Parameter(format!("constants are reported for 1 <= d <= 4, got {d}")));
    }
    let q = &ctx.quad;
    let mut out = Map::new();
    out.insert("command".into(), "constants".into());
    out.insert("d".into(), d.into());
    out.insert("tolerance".into(), num(q.abs_tol));
    let c = asympt::lattice_constant(d, q)?;
    out.insert("c_d".into(), tagged(c.value, Some(c.error), "quadrature"));
    let g = catalan_constant();
    out.insert("catalan".into(), tagged(g, None, "series"));
    if d == 2 {
        let closed = asympt::lattice_constant_2d_closed();
        out.insert("c_d_closed_form".into(), tagged(closed, None, "series"));
        out.insert("c_d_closed_form_gap".into(), num((c.value - closed).abs()));
    }
    if d >= 3 {
        let w = asympt::watson(d, q)?;
        out.insert("watson".into(), tagged(w.value, Some(w.error), "quadrature"));
        if d == 3 {
            let closed = asympt::watson3_closed();
            out.insert("watson_closed_form".into(), tagged(closed, None, "series"));
            out.insert("watson_closed_form_gap".into(), num((w.value - closed).abs()));
        }
    }
    let mut boundary = Map::new();
    for m in 1..d {
        let b = asympt::boundary_coeff(d, m, q)?;
        boundary.insert(format!("m{m}"), tagged(b.value, Some(b.error), "quadrature"));
    }
    if d >= 2 {
        boundary.insert("m1_closed_form".into(), tagged(asympt::boundary_coeff_m1_closed(d)?, None, "exact"));
        out.insert("boundary".into(), Value::Object(boundary));
    }
    if d == 3 {
        let v = asympt::boundary_verdict_3_1(1e-9, q)?;
        out.insert("boundary_verdict_3_1".into(), verdict_json(&v));
    }
    if d <= 3 {
        let unit = OrthotopeSpec::new(vec![1; d as usize])?;
        let mut consts = Map::new();
        for conv in ZetaConvention::ALL {
            let v = asympt::face_determinant_sum(&unit, conv)? + asympt::lattice_log_constant(d);
            consts.insert(conv.to_string(), tagged(v, None, "series"));
        }
        out.insert("determinant_constant_unit_orthotope".into(), Value::Object(consts));
    }
    print_json(&Value::Object(out));
    Ok(ExitCode::SUCCESS)
}

fn verdict_json(v: &asympt::BoundaryVerdict) -> Value {
    obj! {
        "quadrature" => tagged(v.quadrature, Some(v.quadrature_error), "quadrature"),
        "printed_candidate" => tagged(v.printed_candidate, None, "exact"),
        "corrected_candidate" => tagged(v.corrected_candidate, None, "exact"),
        "matches" => match v.matches {
            asympt::BoundaryCandidate::Printed => "printed",
            asympt::BoundaryCandidate::Corrected => "corrected",
            asympt::BoundaryCandidate::Neither => "neither",
        },
        "sign_agrees" => v.sign_agrees,
    }
}

fn verify_cmd(ctx: &Ctx, target: verify::Target) -> latdet::Result<ExitCode> {
    let format = ctx.format(Format::Text, &[Format::Text, Format::Json])?;
    let cases = verify::run(target, ctx.exec)?;
    let passed = cases.iter().all(|c| c.passed);
    let name = target.to_possible_value().expect("named").get_name().to_string();
    match format {
        Format::Json => print_json(&obj! {
            "command" => "verify",
            "target" => name,
            "passed" => passed,
            "cases" => cases.iter().map(|c| obj! {
                "case" => c.name.clone(),
                "passed" => c.passed,
                "witness" => c.witness.clone(),
            }).collect::<Vec<_>>(),
        }),
        _ => {
            for c in &cases {
                let status = if c.passed { "PASS" } else { "FAIL" };
                out!("{status} {} {}", c.name, c.witness);
            }
            let failed = cases.iter().filter(|c| !c.passed).count();
            out!("{} {name}: {} cases, {failed} failed", if passed { "PASS" } else { "FAIL" }, cases.len());
        }
    }
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn sweep(ctx: &Ctx, target: SweepArg, n: &[usize], alphas: &[u32], convention: ZetaConvention) -> latdet::Result<ExitCode> {
    let format = ctx.format(Format::Json, &[Format::Json, Format::Csv])?;
    let target = match target {
        SweepArg::Theorem1 => {
            if alphas.is_empty() {
                return Err(Error::Parameter("theorem1 needs --alphas".into()));
            }
            SweepTarget::Theorem1(OrthotopeSpec::new(alphas.to_vec())?)
        }
        SweepArg::Theorem3 => {
            if !alphas.is_empty() {
                return Err(Error::Parameter("theorem3 takes no --alphas".into()));
            }
            SweepTarget::Theorem3
        }
    };
    let opts = SweepOptions { convention, precision: ctx.precision, exec: ctx.exec, quadrature: ctx.quad };
    let report = asympt::residual_sweep(&target, n, &opts)?;
    match format {
        Format::Csv => {
            out!("n,lhs,rhs_partial,residual,residual_delta");
            for r in &report.records {
                let delta = r.residual_delta.map(fmt17).unwrap_or_default();
                out!("{},{},{},{},{}", r.n, fmt17(r.lhs), fmt17(r.rhs_partial), fmt17(r.residual), delta);
            }
        }
        _ => print_json(&sweep_json(&target, &report, ctx)),
    }
    Ok(ExitCode::SUCCESS)
}

fn sweep_json(target: &SweepTarget, report: &SweepReport, ctx: &Ctx) -> Value {
    let (name, alphas) = match target {
        SweepTarget::Theorem1(a) => ("theorem1", Value::from(a.alphas().to_vec())),
        SweepTarget::Theorem3 => ("theorem3", Value::Null),
    };
    let lhs_method = "series";
    let rhs = &report.rhs;
    let mut out = obj! {
        "command" => "sweep",
        "target" => name,
        "alphas" => alphas,
        "convention" => rhs.convention.to_string(),
        "precision" => ctx.precision.to_string(),
        "rhs" => obj! {
            "terms" => rhs.terms.iter().map(|&(p, c)| obj! {
                "power" => p,
                "coefficient" => tagged(c, None, "quadrature"),
            }).collect::<Vec<_>>(),
            "log_coeff" => tagged(rhs.log_coeff, None, "exact"),
            "constant" => tagged(rhs.constant, None, "series"),
        },
        "records" => report.records.iter().map(|r| obj! {
            "n" => r.n,
            "lhs" => tagged(r.lhs, None, lhs_method),
            "rhs_partial" => tagged(r.rhs_partial, None, "quadrature"),
            "residual" => num(r.residual),
            "residual_delta" => r.residual_delta.map(num).unwrap_or(Value::Null),
        }).collect::<Vec<_>>(),
        "candidates" => report.candidates.iter().map(|c| obj! {
            "label" => c.label.clone(),
            "value" => tagged(c.value, None, "series"),
            "gap" => num(c.gap),
        }).collect::<Vec<_>>(),
    };
    if let (Some(v), Value::Object(m)) = (&report.boundary_verdict, &mut out) {
        m.insert("boundary_verdict_3_1".into(), verdict_json(v));
    }
    out
}

fn theta(ctx: &Ctx, kind: KindArg, sizes: &[usize], t: f64, decomposition: bool) -> latdet::Result<ExitCode> {
    ctx.format(Format::Json, &[Format::Json])?;
    let spec = match kind {
        KindArg::Grid => LatticeSpec::grid(sizes)?,
        KindArg::Torus => LatticeSpec::torus(sizes)?,
        KindArg::Qad => return Err(Error::Unsupported("theta is defined for grids and tori".into())),
    };
    let mut out = obj! {
        "command" => "theta",
        "kind" => kind_name(kind),
        "sizes" => sizes,
        "t" => num(t),
        "theta" => tagged(spectra::theta_with(&spec, t, ctx.exec)?, None, "series"),
    };
    if decomposition {
        if !matches!(kind, KindArg::Grid) {
            return Err(Error::Parameter("--decomposition applies to grids".into()));
        }
        let r = spectra::check_theta_decomposition(sizes, t)?;
        if let Value::Object(m) = &mut out {
            m.insert("residual_star".into(), num(r.residual_star));
            m.insert("residual_torus".into(), num(r.residual_torus));
        }
    }
    print_json(&out);
    Ok(ExitCode::SUCCESS)
}

fn zeta(ctx: &Ctx, domain: DomainArg, lengths: &[f64], conv: ZetaConvention) -> latdet::Result<ExitCode> {
    ctx.format(Format::Json, &[Format::Json])?;
    let (name, zp, method, oracle) = match domain {
        DomainArg::Interval => {
            let [a] = lengths else {
                return Err(Error::Parameter("interval takes exactly one length".into()));
            };
            ("interval", zetadet::zeta_prime0_interval(*a, conv)?, "exact", None)
        }
        DomainArg::Orthotope => {
            let v = zetadet::zeta_prime0_orthotope(lengths, conv)?;
            let oracle = if lengths.len() == 2 {
                Some(zetadet::zeta_prime0_orthotope_via(lengths, conv, TorusRoute::Eta)?)
            } else {
                None
            };
            ("orthotope", v, if lengths.len() == 1 { "exact" } else { "series" }, oracle)
        }
        DomainArg::Torus => {
            let v = zetadet::epstein_zeta_prime0(lengths)?;
            let oracle = if lengths.len() == 2 { Some(zetadet::eta_zeta_prime0(lengths)?) } else { None };
            ("torus", v, "series", oracle)
        }
        DomainArg::Triangle => {
            if !lengths.is_empty() {
                return Err(Error::Parameter("the triangle takes no lengths".into()));
            }
            ("triangle", zetadet::zeta_prime0_triangle(conv)?, "series", None)
        }
    };
    let mut out = obj! {
        "command" => "zeta",
        "domain" => name,
        "lengths" => lengths.iter().map(|&l| num(l)).collect::<Vec<_>>(),
        "convention" => conv.to_string(),
        "zeta_prime0" => tagged(zp, None, method),
        "det_star" => tagged((-zp).exp(), None, method),
    };
    if let (Some(o), Value::Object(m)) = (oracle, &mut out) {
        m.insert("zeta_prime0_eta_oracle".into(), tagged(o, Some((o - zp).abs()), "eta-oracle"));
    }
    print_json(&out);
    Ok(ExitCode::SUCCESS)
}
