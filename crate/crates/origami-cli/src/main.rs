//! Command-line front end. Every number printed here is derived from an
//! exact element: decimals come from certified intervals, never from
//! floating point, so identical invocations print identical bytes.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use origami_core::axioms::{Axiom, Trace};
use origami_core::classify::{classify_minimal_polynomial, classify_trace};
use origami_core::constructions::{archimedes_demo, heptagon, pentagon};
use origami_core::cubic::{discriminant_cubic, solve_totally_real_cubic, trisect_cos};
use origami_core::alhazen::{pencil_data, solve_alhazen, verify_equation1, AlhazenInstance};
use origami_core::geometry::{dist_sq, reflect_point, Point};
use origami_core::poly::RatPoly;
use origami_core::rational::{parse_rational, pow10, rat, ratio, to_decimal_string};
use origami_core::tower::DEFAULT_DEPTH_CAP;
use origami_core::{Algebraic, Tower};

use origami_cli::render::render_svg;
use origami_cli::scenes;

#[derive(Parser)]
#[command(name = "origami", version, about = "Exact folding constructions")]
struct Cli {
    /// Significant digits for decimal renderings.
    #[arg(long, global = true, default_value_t = 30)]
    precision: usize,

    /// Print the full JSON document instead of a one-line summary.
    #[arg(long, global = true)]
    json: bool,

    /// Write the construction trace as JSON (construct only).
    #[arg(long, global = true, value_name = "PATH")]
    emit_trace: Option<PathBuf>,

    /// Write an SVG rendering (construct and render).
    #[arg(long, global = true, value_name = "PATH")]
    emit_svg: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named construction and verify its invariants.
    Construct {
        /// pentagon, heptagon, perp-bisector, or archimedes.
        name: String,
    },
    /// Split an angle, given as its cosine, into three exact parts.
    Trisect {
        /// Cosine of the full angle, a fraction or decimal strictly inside (-1, 1).
        #[arg(long, allow_hyphen_values = true)]
        u: String,
    },
    /// Solve t^3 + p*t + q when all roots are real.
    Cubic {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// Classify a minimal polynomial or a recorded trace.
    Classify {
        /// Comma-separated rational coefficients, highest degree first.
        #[arg(long, conflicts_with = "trace", allow_hyphen_values = true)]
        minpoly: Option<String>,
        /// Path to a trace JSON file.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Reflect light between two points off the unit circle.
    Alhazen {
        /// First point as RE,IM; must lie outside the unit circle.
        #[arg(long, allow_hyphen_values = true, value_name = "RE,IM")]
        a: String,
        /// Second point as RE,IM; must lie outside the unit circle.
        #[arg(long, allow_hyphen_values = true, value_name = "RE,IM")]
        b: String,
    },
    /// Draw a named figure as SVG (requires --emit-svg).
    Render {
        #[arg(value_enum)]
        figure: Figure,
    },
    /// Validate or re-export a trace JSON file.
    Trace {
        #[arg(value_enum)]
        action: TraceAction,
        input: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Figure {
    /// Marked-ruler trisection on the unit circle.
    Fig1,
    /// Perpendicular bisector fold between two points.
    Fig2,
    /// Two-point fold with its three solution lines.
    Fig3,
    /// Circular billiard with the bisection locus and chords.
    Fig4,
}

impl Figure {
    fn name(self) -> &'static str {
        match self {
            Figure::Fig1 => "fig1",
            Figure::Fig2 => "fig2",
            Figure::Fig3 => "fig3",
            Figure::Fig4 => "fig4",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TraceAction {
    /// Parse, replay, and report the trace.
    Validate,
    /// Parse and print the canonical JSON form.
    Reexport,
}

#[derive(Debug)]
struct Failure {
    exit: u8,
    code: String,
    message: String,
}

impl From<origami_core::Error> for Failure {
    fn from(e: origami_core::Error) -> Failure {
        Failure {
            exit: 1,
            code: e.code().to_string(),
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure {
            exit: 1,
            code: "IoError".to_string(),
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        exit: 2,
        code: "Usage".to_string(),
        message: message.into(),
    }
}

struct CommandOutput {
    summary: String,
    document: Value,
    raw_stdout: Option<String>,
    failing: bool,
}

impl CommandOutput {
    fn new(summary: String, document: Value) -> CommandOutput {
        CommandOutput {
            summary,
            document,
            raw_stdout: None,
            failing: false,
        }
    }
}

fn diag(code: &str, message: &str) {
    let line = json!({"level": "error", "code": code, "message": message});
    eprintln!("{line}");
}

/// Writes to stdout, treating a closed pipe as a request to stop rather
/// than an error.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        diag("IoError", &e.to_string());
        std::process::exit(1);
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                emit(&e.to_string());
                return ExitCode::SUCCESS;
            }
            diag("Usage", &e.to_string());
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(out) => {
            if let Some(raw) = &out.raw_stdout {
                emit(raw);
            } else if cli.json {
                let text =
                    serde_json::to_string_pretty(&out.document).expect("documents serialize");
                emit(&(text + "\n"));
            } else {
                emit(&(out.summary.clone() + "\n"));
            }
            if out.failing {
                diag("InvariantViolation", "one or more checks failed");
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => {
            diag(&f.code, &f.message);
            ExitCode::from(f.exit)
        }
    }
}

fn run(cli: &Cli) -> Result<CommandOutput, Failure> {
    if cli.emit_trace.is_some() && !matches!(cli.command, Command::Construct { .. }) {
        return Err(usage("--emit-trace applies to the construct command only"));
    }
    if cli.emit_svg.is_some()
        && !matches!(cli.command, Command::Construct { .. } | Command::Render { .. })
    {
        return Err(usage("--emit-svg applies to the construct and render commands"));
    }
    match &cli.command {
        Command::Construct { name } => cmd_construct(cli, name),
        Command::Trisect { u } => cmd_trisect(cli, u),
        Command::Cubic { p, q } => cmd_cubic(cli, p, q),
        Command::Classify { minpoly, trace } => cmd_classify(cli, minpoly.as_deref(), trace.as_deref()),
        Command::Alhazen { a, b } => cmd_alhazen(cli, a, b),
        Command::Render { figure } => cmd_render(cli, *figure),
        Command::Trace { action, input } => cmd_trace(*action, input),
    }
}

fn parse_rat(text: &str) -> Result<BigRational, Failure> {
    parse_rational(text).map_err(|e| usage(format!("invalid rational {text:?}: {e}")))
}

fn parse_pair(text: &str) -> Result<(BigRational, BigRational), Failure> {
    let mut parts = text.split(',');
    let (Some(re), Some(im), None) = (parts.next(), parts.next(), parts.next()) else {
        return Err(usage(format!("expected RE,IM but got {text:?}")));
    };
    Ok((parse_rat(re)?, parse_rat(im)?))
}

fn parse_minpoly(text: &str) -> Result<RatPoly, Failure> {
    let mut descending = Vec::new();
    for part in text.split(',') {
        descending.push(parse_rat(part.trim())?);
    }
    descending.reverse();
    Ok(RatPoly::new(descending))
}

/// Decimal rendering of an exact element at `sig` significant digits,
/// taken from a certified interval several digits tighter.
fn decimal_of(x: &Algebraic, sig: usize) -> String {
    if let Some(r) = x.to_rational() {
        return to_decimal_string(&r, sig);
    }
    let eps = pow10(-(sig as i32) - 6);
    to_decimal_string(&x.principal_interval(&eps).mid(), sig)
}

fn number_json(x: &Algebraic, sig: usize) -> Value {
    json!({
        "decimal": decimal_of(x, sig),
        "exact": serde_json::to_value(x.describe()).expect("descriptors serialize"),
    })
}

fn profile_letters(profile: &BTreeSet<Axiom>) -> String {
    profile.iter().map(|a| a.letter()).collect()
}

fn is_2a3b(mut n: usize) -> bool {
    if n == 0 {
        return false;
    }
    while n % 2 == 0 {
        n /= 2;
    }
    while n % 3 == 0 {
        n /= 3;
    }
    n == 1
}

fn write_svg(cli: &Cli, scene: &origami_cli::render::RenderScene) -> Result<(), Failure> {
    if let Some(path) = &cli.emit_svg {
        std::fs::write(path, render_svg(scene))?;
    }
    Ok(())
}

fn write_trace(cli: &Cli, trace: &Trace) -> Result<(), Failure> {
    if let Some(path) = &cli.emit_trace {
        std::fs::write(path, trace.export_json() + "\n")?;
    }
    Ok(())
}

fn on_unit_circle(p: &Point) -> Result<bool, Failure> {
    Ok(p.x.square().checked_add(&p.y.square()).map_err(Failure::from)?.is_one())
}

fn check(checks: &mut Vec<(String, bool)>, label: &str, pass: bool) {
    checks.push((label.to_string(), pass));
}

fn cmd_construct(cli: &Cli, name: &str) -> Result<CommandOutput, Failure> {
    let mut checks: Vec<(String, bool)> = Vec::new();
    let (profile, declared, within_declared, object_count);
    match name {
        "pentagon" => {
            let p = pentagon().map_err(Failure::from)?;
            check(
                &mut checks,
                "cosine satisfies its quadratic",
                p.cos.minimal_polynomial() == RatPoly::from_descending_ints(&[4, 2, -1]),
            );
            check(&mut checks, "five vertices", p.vertices.len() == 5);
            let mut on_circle = true;
            for v in &p.vertices {
                on_circle &= on_unit_circle(v)?;
            }
            check(&mut checks, "vertices on the unit circle", on_circle);
            declared = BTreeSet::from([Axiom::L, Axiom::P, Axiom::B]);
            profile = p.recipe.trace.axiom_profile();
            check(&mut checks, "profile within {L, P, B}", profile.is_subset(&declared));
            within_declared = p.recipe.profile_within_declared();
            check(&mut checks, "profile within declaration", within_declared);
            object_count = p.recipe.trace.object_count();
            write_trace(cli, &p.recipe.trace)?;
            write_svg(cli, &scenes::polygon_scene(&p.vertices))?;
        }
        "heptagon" => {
            let h = heptagon().map_err(Failure::from)?;
            check(
                &mut checks,
                "cosine satisfies its cubic",
                h.cos.minimal_polynomial() == RatPoly::from_descending_ints(&[8, 4, -4, -1]),
            );
            let lhs = h.sin.square().scale(&rat(4));
            let rhs = h
                .cos_pi_over_7
                .square()
                .scale(&rat(3))
                .checked_add(&h.cos_3pi_over_7.pow(4).scale(&rat(4)))
                .map_err(Failure::from)?;
            check(
                &mut checks,
                "sine identity across the three angles",
                lhs.checked_sub(&rhs).map_err(Failure::from)?.is_zero(),
            );
            check(&mut checks, "seven vertices", h.vertices.len() == 7);
            let mut on_circle = true;
            for v in &h.vertices {
                on_circle &= on_unit_circle(v)?;
            }
            check(&mut checks, "vertices on the unit circle", on_circle);
            declared = BTreeSet::from([Axiom::L, Axiom::P, Axiom::B, Axiom::T]);
            profile = h.recipe.trace.axiom_profile();
            check(&mut checks, "profile within {L, P, B, T}", profile.is_subset(&declared));
            within_declared = h.recipe.profile_within_declared();
            check(&mut checks, "profile within declaration", within_declared);
            object_count = h.recipe.trace.object_count();
            write_trace(cli, &h.recipe.trace)?;
            write_svg(cli, &scenes::polygon_scene(&h.vertices))?;
        }
        "perp-bisector" => {
            let (trace, a, b, fold) = scenes::perp_bisector_parts().map_err(Failure::from)?;
            let pa = trace.point(a).map_err(Failure::from)?;
            let pb = trace.point(b).map_err(Failure::from)?;
            let l = trace.line(fold).map_err(Failure::from)?;
            let reflected = reflect_point(&pa, &l).map_err(Failure::from)?;
            let swaps = reflected.x.checked_sub(&pb.x).map_err(Failure::from)?.is_zero()
                && reflected.y.checked_sub(&pb.y).map_err(Failure::from)?.is_zero();
            check(&mut checks, "fold carries one endpoint to the other", swaps);
            let mid = Point::midpoint(&pa, &pb).map_err(Failure::from)?;
            check(
                &mut checks,
                "midpoint lies on the fold",
                l.contains(&mid).map_err(Failure::from)?,
            );
            declared = BTreeSet::from([Axiom::L, Axiom::P, Axiom::B]);
            profile = trace.axiom_profile();
            check(&mut checks, "profile within {L, P, B}", profile.is_subset(&declared));
            within_declared = profile.is_subset(&declared);
            object_count = trace.object_count();
            write_trace(cli, &trace)?;
            write_svg(cli, &scenes::perp_bisector_scene().map_err(Failure::from)?)?;
        }
        "archimedes" => {
            let base = Tower::rationals();
            let p = Point::new(
                base.from_rational(ratio(3, 5)),
                base.from_rational(ratio(4, 5)),
            );
            let rep = archimedes_demo(&p).map_err(Failure::from)?;
            check(
                &mut checks,
                "sliding segment has unit length",
                dist_sq(&rep.c, &rep.d).map_err(Failure::from)?.is_one(),
            );
            check(&mut checks, "inner endpoint on the unit circle", on_unit_circle(&rep.c)?);
            let ux = rep.c.x.checked_sub(&p.x).map_err(Failure::from)?;
            let uy = rep.c.y.checked_sub(&p.y).map_err(Failure::from)?;
            let vx = rep.d.x.checked_sub(&p.x).map_err(Failure::from)?;
            let vy = rep.d.y.checked_sub(&p.y).map_err(Failure::from)?;
            let det = ux
                .checked_mul(&vy)
                .map_err(Failure::from)?
                .checked_sub(&uy.checked_mul(&vx).map_err(Failure::from)?)
                .map_err(Failure::from)?;
            check(&mut checks, "ruler passes through all three points", det.is_zero());
            let t = &rep.cos_trisected;
            let triple = t
                .pow(3)
                .scale(&rat(4))
                .checked_sub(&t.scale(&rat(3)))
                .map_err(Failure::from)?
                .checked_sub(&rep.cos_angle)
                .map_err(Failure::from)?;
            check(&mut checks, "trisected cosine satisfies the triple-angle identity", triple.is_zero());
            check(
                &mut checks,
                "full angle is the marked one",
                rep.cos_angle.to_rational() == Some(ratio(3, 5)),
            );
            let mut replay = Trace::new();
            let pid = replay.mark_point(p).map_err(Failure::from)?;
            replay.mark_point(rep.c.clone()).map_err(Failure::from)?;
            let did = replay.mark_point(rep.d.clone()).map_err(Failure::from)?;
            replay.fold_l(pid, did).map_err(Failure::from)?;
            profile = replay.axiom_profile();
            declared = BTreeSet::from([Axiom::L, Axiom::P]);
            check(&mut checks, "replay stays within {L, P}", profile.is_subset(&declared));
            within_declared = profile.is_subset(&declared);
            object_count = replay.object_count();
            write_trace(cli, &replay)?;
            write_svg(cli, &scenes::archimedes_scene().map_err(Failure::from)?)?;
        }
        other => {
            return Err(Failure {
                exit: 2,
                code: "UnknownRecipe".to_string(),
                message: format!(
                    "unknown construction {other:?}; expected pentagon, heptagon, perp-bisector, or archimedes"
                ),
            });
        }
    }
    let all_pass = checks.iter().all(|(_, pass)| *pass);
    let passed = checks.iter().filter(|(_, pass)| *pass).count();
    let letters = profile_letters(&profile);
    let document = json!({
        "schema": "origami/construct/v1",
        "name": name,
        "axiom_profile": letters,
        "declared": profile_letters(&declared),
        "within_declared": within_declared,
        "object_count": object_count,
        "checks": checks
            .iter()
            .map(|(name, pass)| json!({"name": name, "pass": pass}))
            .collect::<Vec<_>>(),
        "all_pass": all_pass,
    });
    Ok(CommandOutput {
        summary: format!(
            "{name}: {passed}/{} checks passed; axiom profile {{{letters}}}",
            checks.len()
        ),
        document,
        raw_stdout: None,
        failing: !all_pass,
    })
}

fn cmd_trisect(cli: &Cli, u_text: &str) -> Result<CommandOutput, Failure> {
    let u = parse_rat(u_text)?;
    let base = Tower::rationals();
    let (tower, principal) = trisect_cos(&base.from_rational(u.clone())).map_err(Failure::from)?;
    let disc = tower
        .one()
        .checked_sub(&principal.square())
        .map_err(Failure::from)?
        .scale(&rat(3));
    let (extended, s) = tower.adjoin_sqrt(&disc).map_err(Failure::from)?;
    let half = ratio(1, 2);
    let second = principal
        .neg()
        .checked_add(&s)
        .map_err(Failure::from)?
        .scale(&half);
    let third = principal
        .neg()
        .checked_sub(&s)
        .map_err(Failure::from)?
        .scale(&half);
    let roots = [principal, second, third];
    let sum = roots[0]
        .checked_add(&roots[1])
        .map_err(Failure::from)?
        .checked_add(&roots[2])
        .map_err(Failure::from)?;
    let pairs = roots[0]
        .checked_mul(&roots[1])
        .map_err(Failure::from)?
        .checked_add(&roots[0].checked_mul(&roots[2]).map_err(Failure::from)?)
        .map_err(Failure::from)?
        .checked_add(&roots[1].checked_mul(&roots[2]).map_err(Failure::from)?)
        .map_err(Failure::from)?;
    let product = roots[0]
        .checked_mul(&roots[1])
        .map_err(Failure::from)?
        .checked_mul(&roots[2])
        .map_err(Failure::from)?;
    let quarter_u = u.clone() * ratio(1, 4);
    let document = json!({
        "schema": "origami/trisect/v1",
        "u": u.to_string(),
        "roots": roots.iter().map(|r| number_json(r, cli.precision)).collect::<Vec<_>>(),
        "sum_is_zero": sum.is_zero(),
        "pair_sum_is_minus_three_quarters": pairs.add_rational(&ratio(3, 4)).is_zero(),
        "product_is_quarter_u": product.add_rational(&(-quarter_u)).is_zero(),
        "tower_degree": extended.degree(),
    });
    Ok(CommandOutput::new(
        format!(
            "cos of the trisected angle: {} (tower degree {})",
            decimal_of(&roots[0], cli.precision),
            extended.degree()
        ),
        document,
    ))
}

fn cmd_cubic(cli: &Cli, p_text: &str, q_text: &str) -> Result<CommandOutput, Failure> {
    let p = parse_rat(p_text)?;
    let q = parse_rat(q_text)?;
    let base = Tower::rationals();
    let pa = base.from_rational(p.clone());
    let qa = base.from_rational(q.clone());
    let disc = discriminant_cubic(&pa, &qa).map_err(Failure::from)?;
    let solution = solve_totally_real_cubic(&pa, &qa).map_err(Failure::from)?;
    let mut residuals_zero = true;
    let mut totally_real = true;
    let mut roots_json = Vec::new();
    for (root, mult) in solution.roots.iter().zip(solution.multiplicity.iter()) {
        let residual = root
            .pow(3)
            .checked_add(&root.scale(&p))
            .map_err(Failure::from)?
            .add_rational(&q);
        residuals_zero &= residual.is_zero();
        totally_real &= root.is_totally_real();
        let mut entry = number_json(root, cli.precision);
        entry["multiplicity"] = json!(mult);
        roots_json.push(entry);
    }
    let document = json!({
        "schema": "origami/cubic/v1",
        "p": p.to_string(),
        "q": q.to_string(),
        "discriminant": number_json(&disc, cli.precision),
        "roots": roots_json,
        "residuals_zero": residuals_zero,
        "totally_real": totally_real,
    });
    let decimals: Vec<String> = solution
        .roots
        .iter()
        .map(|r| decimal_of(r, cli.precision))
        .collect();
    Ok(CommandOutput::new(
        format!("roots: {}", decimals.join(", ")),
        document,
    ))
}

fn cmd_classify(
    _cli: &Cli,
    minpoly: Option<&str>,
    trace: Option<&std::path::Path>,
) -> Result<CommandOutput, Failure> {
    if let Some(text) = minpoly {
        let poly = parse_minpoly(text)?;
        let degree = poly.degree();
        let report = classify_minimal_polynomial(&poly).map_err(Failure::from)?;
        let degree_condition = degree.is_some_and(is_2a3b);
        let document = json!({
            "schema": "origami/classify/v1",
            "source": "minimal_polynomial",
            "degree": degree,
            "degree_condition": degree_condition,
            "report": serde_json::to_value(&report).expect("reports serialize"),
        });
        return Ok(CommandOutput::new(
            format!(
                "degree {}; power-of-2-and-3 condition {}; class {}",
                degree.map_or_else(|| "none".to_string(), |d| d.to_string()),
                degree_condition,
                report.class.symbol()
            ),
            document,
        ));
    }
    let Some(path) = trace else {
        return Err(usage("classify needs either --minpoly or --trace"));
    };
    let text = std::fs::read_to_string(path)?;
    let replay = Trace::import_json(&text, DEFAULT_DEPTH_CAP).map_err(Failure::from)?;
    let class = classify_trace(&replay);
    let letters = profile_letters(&replay.axiom_profile());
    let document = json!({
        "schema": "origami/classify/v1",
        "source": "trace",
        "objects": replay.object_count(),
        "steps": replay.steps().len(),
        "axiom_profile": letters,
        "class": serde_json::to_value(class).expect("classes serialize"),
        "symbol": class.symbol(),
    });
    Ok(CommandOutput::new(
        format!("class {} from profile {{{letters}}}", class.symbol()),
        document,
    ))
}

fn cmd_alhazen(cli: &Cli, a_text: &str, b_text: &str) -> Result<CommandOutput, Failure> {
    let (a_re, a_im) = parse_pair(a_text)?;
    let (b_re, b_im) = parse_pair(b_text)?;
    let inst = AlhazenInstance::new(a_re.clone(), a_im.clone(), b_re.clone(), b_im.clone())
        .map_err(Failure::from)?;
    let data = pencil_data(&inst).map_err(Failure::from)?;
    let constant = data.cubic_constant().map_err(Failure::from)?;
    let solution = solve_alhazen(&inst).map_err(Failure::from)?;
    let sig = cli.precision;
    let mut points = Vec::new();
    for (i, z) in solution.points.iter().enumerate() {
        let satisfied = verify_equation1(&inst, z).map_err(Failure::from)?;
        points.push(json!({
            "x": number_json(&z.re, sig),
            "y": number_json(&z.im, sig),
            "equation1": satisfied,
            "lines": solution.incidence[i],
        }));
    }
    let lines: Vec<Value> = solution
        .lines
        .iter()
        .map(|l| {
            json!({
                "a": number_json(l.a(), sig),
                "b": number_json(l.b(), sig),
                "c": number_json(l.c(), sig),
            })
        })
        .collect();
    let document = json!({
        "schema": "origami/alhazen/v1",
        "a": [a_re.to_string(), a_im.to_string()],
        "b": [b_re.to_string(), b_im.to_string()],
        "pencil": {
            "q": number_json(&data.q, sig),
            "r": number_json(&data.r, sig),
            "s": number_json(&data.s, sig),
            "tau": number_json(&data.tau, sig),
            "k": number_json(&constant, sig),
            "lambda": solution
                .lambdas
                .iter()
                .map(|l| number_json(l, sig))
                .collect::<Vec<_>>(),
        },
        "solutions": solution.points.len(),
        "points": points,
        "lines": lines,
    });
    Ok(CommandOutput::new(
        format!(
            "{} reflection points on {} chord lines",
            solution.points.len(),
            solution.lines.len()
        ),
        document,
    ))
}

fn cmd_render(cli: &Cli, figure: Figure) -> Result<CommandOutput, Failure> {
    let path = cli
        .emit_svg
        .as_ref()
        .ok_or_else(|| usage("render requires --emit-svg PATH"))?;
    let scene = match figure {
        Figure::Fig1 => scenes::archimedes_scene(),
        Figure::Fig2 => scenes::perp_bisector_scene(),
        Figure::Fig3 => scenes::two_point_fold_scene(),
        Figure::Fig4 => scenes::billiard_scene(),
    }
    .map_err(Failure::from)?;
    std::fs::write(path, render_svg(&scene))?;
    let document = json!({
        "schema": "origami/render/v1",
        "figure": figure.name(),
        "path": path.display().to_string(),
        "shapes": scene.shapes.len(),
    });
    Ok(CommandOutput::new(
        format!("wrote {}: {} shapes", path.display(), scene.shapes.len()),
        document,
    ))
}

fn cmd_trace(action: TraceAction, input: &std::path::Path) -> Result<CommandOutput, Failure> {
    let text = std::fs::read_to_string(input)?;
    let replay = Trace::import_json(&text, DEFAULT_DEPTH_CAP).map_err(Failure::from)?;
    match action {
        TraceAction::Validate => {
            let letters = profile_letters(&replay.axiom_profile());
            let document = json!({
                "schema": "origami/trace-report/v1",
                "valid": true,
                "objects": replay.object_count(),
                "steps": replay.steps().len(),
                "axiom_profile": letters,
            });
            Ok(CommandOutput::new(
                format!(
                    "valid: {} objects, {} steps, profile {{{letters}}}",
                    replay.object_count(),
                    replay.steps().len()
                ),
                document,
            ))
        }
        TraceAction::Reexport => {
            let mut out = CommandOutput::new(String::new(), Value::Null);
            out.raw_stdout = Some(replay.export_json() + "\n");
            Ok(out)
        }
    }
}
