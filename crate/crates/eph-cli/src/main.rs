use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use eph::cayley::{cayley_cycle, cayley_point, cayley_point_inverse, cayley_sl2, in_unit_disk, CayleyKind};
use eph::cycles::{center, det_cycle, focus, sl2_transform};
use eph::metric::{distance_sq, length_from_centre_sq, length_from_focus_sq, perpendicular_direction, LengthKind};
use eph::moebius::moebius_apply;
use eph::relations::{
    f_ghost_cycle, f_inversion_point, f_orthogonal, f_trace, ghost_cycle, inversion_point, orthogonal,
    orthogonality_form, Branch,
};
use eph::{CliffNum, Cycle, CycleContext, ExtendedPoint, Rational, Scalar, Sign};
use eph_cli::figures::{render_figure, FIGURES};
use eph_cli::input::{self, format_cycle, format_point, Format, InputError};
use eph_cli::verify::{group_ids, run_group, verify_suite, VerifyOptions, VerifyReport};
use serde_json::{json, Map, Value};

/// Möbius geometry of cycles in the elliptic, parabolic and hyperbolic planes.
///
/// Numbers are read as rationals ("3/4") or decimals; lists are comma separated.
#[derive(Parser, Debug)]
#[command(name = "eph", version)]
struct Cli {
    /// Point space signature σ
    #[arg(long, global = true, default_value_t = -1, allow_negative_numbers = true, value_parser = sign_value)]
    sigma: i64,
    /// Cycle space signature σ̆ (defaults to σ)
    #[arg(long = "sigma-breve", global = true, allow_negative_numbers = true, value_parser = sign_value)]
    sigma_breve: Option<i64>,
    /// FSC multiplier s
    #[arg(long, global = true, default_value_t = 1, allow_negative_numbers = true, value_parser = sign_value)]
    s: i64,
    /// Centre or focus flavour ς (defaults to σ̆)
    #[arg(long, global = true, allow_negative_numbers = true, value_parser = sign_value)]
    varsigma: Option<i64>,
    #[arg(long, global = true, value_enum, default_value_t = Backend::Exact)]
    backend: Backend,
    /// Random seed; the EPH_SEED environment variable takes precedence
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Print JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Read missing arguments from a JSON object on stdin
    #[arg(long, global = true)]
    stdin: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Backend {
    Exact,
    Float,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply g ∈ SL(2,R) to a cycle or a point
    Transform(TransformArgs),
    /// Orthogonality, f-orthogonality, ghosts and inversions of two cycles
    Relate(RelateArgs),
    /// Lengths between two points
    Measure(MeasureArgs),
    /// Cayley transform of a point, a cycle or a matrix
    Cayley(CayleyArgs),
    /// Render a named figure as SVG
    Figure(FigureArgs),
    /// Re-check the kernel's identities on random instances
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct TransformArgs {
    /// a,b,c,d with ad − bc = 1
    #[arg(long)]
    g: Option<String>,
    /// k,l,n,m
    #[arg(long)]
    cycle: Option<String>,
    /// u,v
    #[arg(long)]
    point: Option<String>,
}

#[derive(Args, Debug)]
struct RelateArgs {
    #[arg(long)]
    c1: Option<String>,
    #[arg(long)]
    c2: Option<String>,
    /// Point to invert in c1
    #[arg(long)]
    point: Option<String>,
}

#[derive(Args, Debug)]
struct MeasureArgs {
    #[arg(long)]
    p1: Option<String>,
    #[arg(long)]
    p2: Option<String>,
}

#[derive(Args, Debug)]
struct CayleyArgs {
    /// elliptic, hyperbolic, parabolic-e, parabolic-p or parabolic-h
    #[arg(long)]
    kind: Option<String>,
    #[arg(long)]
    point: Option<String>,
    #[arg(long)]
    cycle: Option<String>,
    #[arg(long)]
    g: Option<String>,
    /// Apply the inverse transform to the point
    #[arg(long)]
    inverse: bool,
}

#[derive(Args, Debug)]
struct FigureArgs {
    /// Figure name; see --list
    name: Option<String>,
    /// Output file (stdout when omitted)
    #[arg(long, short)]
    out: Option<std::path::PathBuf>,
    #[arg(long)]
    list: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Instances per parameter combination
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Run only these groups
    #[arg(long)]
    group: Vec<String>,
    #[arg(long)]
    list: bool,
}

fn sign_value(s: &str) -> Result<i64, String> {
    match s.trim() {
        "-1" => Ok(-1),
        "0" => Ok(0),
        "1" | "+1" => Ok(1),
        other => Err(format!("expected -1, 0 or 1, got {other:?}")),
    }
}

fn sign(v: i64) -> Sign {
    Sign::from_value(v).expect("validated by the parser")
}

/// Failures of a command, with their exit code.
enum Failure {
    Usage(String),
    Verification,
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Usage(e.0)
    }
}

impl From<eph::EphError> for Failure {
    fn from(e: eph::EphError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<Value, Failure>;

struct Env {
    ctx: CycleContext,
    seed: u64,
    stdin: Map<String, Value>,
}

impl Env {
    /// A flag value, falling back to the stdin object.
    fn text(&self, flag: &Option<String>, key: &str) -> Result<Option<String>, Failure> {
        if let Some(v) = flag {
            return Ok(Some(v.clone()));
        }
        self.stdin.get(key).map(input::json_text).transpose().map_err(Failure::from)
    }

    fn need(&self, flag: &Option<String>, key: &str) -> Result<String, Failure> {
        self.text(flag, key)?.ok_or_else(|| Failure::Usage(format!("missing --{key}")))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let sigma = sign(cli.sigma);
    let sb = cli.sigma_breve.map(sign).unwrap_or(sigma);
    let vs = cli.varsigma.map(sign).unwrap_or(sb);
    let seed = match std::env::var("EPH_SEED") {
        Ok(v) => match v.trim().parse() {
            Ok(s) => s,
            Err(_) => {
                eprintln!("error: EPH_SEED is not an integer: {v:?}");
                return ExitCode::from(2);
            }
        },
        Err(_) => cli.seed,
    };
    let stdin = if cli.stdin { read_stdin() } else { Ok(Map::new()) };
    let stdin = match stdin {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let env = Env { ctx: CycleContext::new(sigma, sb, sign(cli.s), vs), seed, stdin };
    let result = match &cli.command {
        Command::Figure(a) => return figure(a, &env),
        Command::Verify(a) => verify(a, &env, cli.json),
        cmd => match cli.backend {
            Backend::Exact => dispatch::<Rational>(cmd, &env),
            Backend::Float => dispatch::<f64>(cmd, &env),
        },
    };
    match result {
        Ok(v) => {
            if !v.is_null() {
                print_value(&v, cli.json);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification) => ExitCode::from(1),
    }
}

fn read_stdin() -> Result<Map<String, Value>, String> {
    let mut buf = String::new();
    std::io::stdin().read_to_string(&mut buf).map_err(|e| e.to_string())?;
    match serde_json::from_str(&buf).map_err(|e| e.to_string())? {
        Value::Object(m) => Ok(m),
        _ => Err("stdin must hold a JSON object".into()),
    }
}

fn print_value(v: &Value, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(v).unwrap());
        return;
    }
    if let Value::Object(m) = v {
        for (k, x) in m {
            println!("{k}: {}", plain(x));
        }
    } else {
        println!("{}", plain(v));
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) => format!("({})", xs.iter().map(plain).collect::<Vec<_>>().join(", ")),
        Value::Object(m) => m.iter().map(|(k, x)| format!("{k}={}", plain(x))).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn dispatch<T: Scalar + Format>(cmd: &Command, env: &Env) -> Outcome {
    match cmd {
        Command::Transform(a) => transform::<T>(a, env),
        Command::Relate(a) => relate::<T>(a, env),
        Command::Measure(a) => measure::<T>(a, env),
        Command::Cayley(a) => cayley::<T>(a, env),
        Command::Figure(_) | Command::Verify(_) => unreachable!("handled before dispatch"),
    }
}

fn ext_point<T: Scalar + Format>(p: &ExtendedPoint<T>) -> Value {
    match p {
        ExtendedPoint::Finite { u, v } => format_point(&(u.clone(), v.clone())),
        ExtendedPoint::Ideal { l, n, m } => json!({ "ideal": [l.format(), n.format(), m.format()] }),
    }
}

fn fin<T: Scalar>(p: &(T, T)) -> ExtendedPoint<T> {
    ExtendedPoint::finite(p.0.clone(), p.1.clone())
}

fn transform<T: Scalar + Format>(a: &TransformArgs, env: &Env) -> Outcome {
    let g = input::sl2::<T>(&env.need(&a.g, "g")?)?;
    let mut out = Map::new();
    if let Some(c) = env.text(&a.cycle, "cycle")? {
        let c = input::cycle::<T>(&c)?;
        let img = sl2_transform(&c, &g, &env.ctx);
        out.insert("cycle".into(), format_cycle(&img));
        out.insert("det".into(), det_cycle(&img, &env.ctx).format().into());
    }
    if let Some(p) = env.text(&a.point, "point")? {
        let p = input::point::<T>(&p)?;
        out.insert("point".into(), ext_point(&moebius_apply(&g, &fin(&p), env.ctx.sigma)));
    }
    if out.is_empty() {
        return Err(Failure::Usage("give --cycle or --point".into()));
    }
    Ok(Value::Object(out))
}

fn relate<T: Scalar + Format>(a: &RelateArgs, env: &Env) -> Outcome {
    let c1 = input::cycle::<T>(&env.need(&a.c1, "c1")?)?;
    let c2 = input::cycle::<T>(&env.need(&a.c2, "c2")?)?;
    let ctx = &env.ctx;
    let mut out = Map::new();
    out.insert("orthogonality_form".into(), orthogonality_form(&c1, &c2, ctx).format().into());
    out.insert("orthogonal".into(), orthogonal(&c1, &c2, ctx).into());
    out.insert("f_trace".into(), f_trace(&c1, &c2, ctx).format().into());
    out.insert("f_orthogonal".into(), f_orthogonal(&c1, &c2, ctx).into());
    out.insert("f_orthogonal_reverse".into(), f_orthogonal(&c2, &c1, ctx).into());
    let opt = |r: eph::Result<Cycle<T>>| r.map(|c| format_cycle(&c)).unwrap_or_else(|e| e.to_string().into());
    out.insert("ghost".into(), opt(ghost_cycle(&c1, ctx)));
    out.insert("f_ghost".into(), opt(f_ghost_cycle(&c1, ctx)));
    if let Some(p) = env.text(&a.point, "point")? {
        let p = fin(&input::point::<T>(&p)?);
        out.insert("inversion".into(), ext_point(&inversion_point(&c1, &p, ctx)));
        let fi = f_inversion_point(&c1, &p, ctx).map(|q| ext_point(&q)).unwrap_or_else(|e| e.to_string().into());
        out.insert("f_inversion".into(), fi);
    }
    Ok(Value::Object(out))
}

fn measure<T: Scalar + Format>(a: &MeasureArgs, env: &Env) -> Outcome {
    let p1 = input::point::<T>(&env.need(&a.p1, "p1")?)?;
    let p2 = input::point::<T>(&env.need(&a.p2, "p2")?)?;
    let (s, sb, vs) = (env.ctx.sigma, env.ctx.sigma_breve, env.ctx.varsigma);
    let show = |r: eph::Result<T>| r.map(|x| Value::from(x.format())).unwrap_or_else(|e| e.to_string().into());
    let mut out = Map::new();
    out.insert("distance_sq".into(), show(distance_sq(&p1, &p2, s, sb)));
    out.insert("from_centre_sq".into(), show(length_from_centre_sq(&p1, &p2, s, sb, vs)));
    for (name, br) in [("from_focus_sq_plus", Branch::Plus), ("from_focus_sq_minus", Branch::Minus)] {
        out.insert(name.into(), show(length_from_focus_sq(&p1, &p2, s, sb, vs, br).map(|x| x.0)));
    }
    let perp = perpendicular_direction(LengthKind::Distance, &p1, &p2, s, sb);
    out.insert("perpendicular".into(), perp.map(|d| format_point(&d)).unwrap_or_else(|e| e.to_string().into()));
    Ok(Value::Object(out))
}

fn cayley<T: Scalar + Format>(a: &CayleyArgs, env: &Env) -> Outcome {
    let name = env.need(&a.kind, "kind")?;
    let kind = CayleyKind::from_name(&name)
        .ok_or_else(|| Failure::Usage(format!("unknown kind {name:?}; use elliptic, parabolic-e, parabolic-p, parabolic-h or hyperbolic")))?;
    let mut out = Map::new();
    if let Some(p) = env.text(&a.point, "point")? {
        let p = input::point::<T>(&p)?;
        let img = if a.inverse { cayley_point_inverse(kind, &fin(&p)) } else { cayley_point(kind, &fin(&p)) };
        if let Some(w) = img.as_finite() {
            out.insert("in_unit_disk".into(), in_unit_disk(kind, &w).into());
        }
        out.insert("point".into(), ext_point(&img));
    }
    if let Some(c) = env.text(&a.cycle, "cycle")? {
        let img = cayley_cycle(&input::cycle::<T>(&c)?, kind);
        out.insert("cycle".into(), format_cycle(&img.cycle));
        if let Some(f) = img.fit_agrees {
            out.insert("fit_agrees".into(), f.into());
        }
        if let Some(note) = img.note {
            out.insert("note".into(), note.to_string().into());
        }
        if let Ok((f, _)) = focus(&img.cycle, kind.sigma) {
            out.insert("focus".into(), format_point(&f));
        }
        out.insert("centre".into(), ext_point(&center(&img.cycle, kind.sigma)));
    }
    if let Some(g) = env.text(&a.g, "g")? {
        let m = cayley_sl2(&input::sl2::<T>(&g)?, kind)?;
        let entry = |x: &CliffNum<T>| Value::from(x.coeffs().iter().map(|c| c.format()).collect::<Vec<_>>());
        out.insert("matrix".into(), json!([[entry(&m.m[0][0]), entry(&m.m[0][1])], [entry(&m.m[1][0]), entry(&m.m[1][1])]]));
    }
    if out.is_empty() {
        return Err(Failure::Usage("give --point, --cycle or --g".into()));
    }
    Ok(Value::Object(out))
}

fn figure(a: &FigureArgs, env: &Env) -> ExitCode {
    if a.list {
        for name in FIGURES {
            println!("{name}");
        }
        return ExitCode::SUCCESS;
    }
    let name = match env.text(&a.name, "name") {
        Ok(Some(n)) => n,
        _ => {
            eprintln!("error: missing figure name; known: {}", FIGURES.join(", "));
            return ExitCode::from(2);
        }
    };
    let svg = match render_figure(&name) {
        Ok(svg) => svg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match &a.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, svg) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{svg}"),
    }
    ExitCode::SUCCESS
}

fn verify(a: &VerifyArgs, env: &Env, json: bool) -> Outcome {
    if a.list {
        if json {
            return Ok(Value::from(group_ids()));
        }
        for id in group_ids() {
            println!("{id}");
        }
        return Ok(Value::Null);
    }
    let trials = match env.stdin.get("trials").and_then(Value::as_u64) {
        Some(t) => t as usize,
        None => a.trials,
    };
    let opts = VerifyOptions::new(env.seed, trials);
    let report = if a.group.is_empty() {
        verify_suite(&opts)
    } else {
        let mut groups = Vec::new();
        for id in &a.group {
            groups.push(run_group(id, &opts).ok_or_else(|| Failure::Usage(format!("unknown group {id:?}")))?);
        }
        groups.sort_by(|x, y| x.id.cmp(&y.id));
        VerifyReport { seed: opts.seed, trials, groups }
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        for g in &report.groups {
            let status = if g.ok() { "ok" } else { "FAIL" };
            println!("{status:4} {:40} {:>6} tested {:>4} failed", g.id, g.tested, g.failures);
            if let Some(c) = &g.counterexample {
                println!("     counterexample: {c}");
            }
            for n in &g.notes {
                println!("     note: {n}");
            }
        }
        println!("{} groups, {} failures", report.groups.len(), report.failures());
    }
    if report.ok() {
        Ok(Value::Null)
    } else {
        Err(Failure::Verification)
    }
}
