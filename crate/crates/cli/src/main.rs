mod cache;
mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::Zero;

use logct_core::ct::{
    dyson_problem, e_problem, eval_problem, f_problem, gtilde_problem, interpolation_strategy,
    log_dyson_cyclic_problem, log_dyson_vandermonde_problem,
};
use logct_core::exact::{rat_int, Rat};
use logct_core::identities::{self, Status, Verdict};
use logct_core::spectrum;
use logct_core::virasoro;
use logct_core::{CTProblem, Limits, TMode, Value, ENGINE_VERSION};

use report::{rat_str, value_json, Format, Report};

const EXIT_REFUTED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(name = "logct", version, about = "Exact constant-term identity engine")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a residue or constant-term quantity exactly
    Compute {
        #[arg(value_enum)]
        target: ComputeTarget,
        #[command(flatten)]
        opts: Opts,
    },
    /// Verify an identity or conjecture and report a verdict
    Verify {
        #[arg(value_enum)]
        identity: Identity,
        #[command(flatten)]
        opts: Opts,
    },
    /// Print spectrum tables
    Table {
        #[arg(value_enum)]
        which: TableKind,
        #[command(flatten)]
        opts: Opts,
    },
    /// Print the degree-5 singular vector and check singularity
    Virasoro {
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ComputeTarget {
    F,
    E,
    Gtilde,
    Dyson,
    Logdyson,
    LogdysonCyclic,
}

#[derive(Clone, Copy, ValueEnum)]
enum Identity {
    Conjm1,
    ConjG,
    EConj,
    LogDyson,
    LogDysonCyclic,
    ChuFu,
    Ck,
    Vanishing,
    ZhuW,
    ZhuSinglet,
    Fusion,
    Singular,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    H,
    Modules,
    Counts,
    Zhu,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyOpt {
    Symbolic,
    Interpolate,
    Both,
}

#[derive(Args)]
struct Opts {
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
    /// Row index or inclusive range like 1..3
    #[arg(long)]
    r: Option<String>,
    /// Column index or inclusive range like 1..3
    #[arg(long)]
    s: Option<String>,
    /// Rational evaluation point, e.g. 5 or -3/2; omit for symbolic t
    #[arg(long)]
    t: Option<String>,
    #[arg(long, value_enum, default_value_t = StrategyOpt::Symbolic)]
    strategy: StrategyOpt,
    #[arg(long)]
    threads: Option<usize>,
    /// Wall-clock limit in seconds
    #[arg(long)]
    timeout: Option<u64>,
    #[arg(long, default_value_t = 50_000_000)]
    max_terms: usize,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Accept verified-up-to-sign verdicts as success
    #[arg(long)]
    allow_sign: bool,
}

impl Opts {
    fn limits(&self) -> Limits {
        Limits {
            max_terms: self.max_terms,
            timeout: self.timeout.map(Duration::from_secs),
        }
    }

    fn params(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        let mut put = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                m.insert(k.to_string(), v);
            }
        };
        put("p", self.p.map(|v| v.to_string()));
        put("k", self.k.map(|v| v.to_string()));
        put("m", self.m.map(|v| v.to_string()));
        put("n", self.n.map(|v| v.to_string()));
        put("r", self.r.clone());
        put("s", self.s.clone());
        put("t", self.t.clone());
        m.insert(
            "strategy".into(),
            match self.strategy {
                StrategyOpt::Symbolic => "symbolic",
                StrategyOpt::Interpolate => "interpolate",
                StrategyOpt::Both => "both",
            }
            .into(),
        );
        m
    }
}

struct Failure {
    message: String,
    code: u8,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        message: msg.into(),
        code: EXIT_USAGE,
    }
}

fn map_err(e: logct_core::error::CtError) -> Failure {
    use logct_core::error::CtError;
    let code = match &e {
        CtError::TermLimit { .. } | CtError::Timeout { .. } => EXIT_RESOURCE,
        _ => EXIT_USAGE,
    };
    Failure {
        message: e.to_string(),
        code,
    }
}

fn parse_rat(s: &str) -> Result<Rat, Failure> {
    let parse_int = |x: &str| {
        x.trim()
            .parse::<num::BigInt>()
            .map_err(|_| usage(format!("not an integer: {}", x)))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(usage("zero denominator"));
            }
            Ok(Rat::new(parse_int(n)?, den))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

fn parse_range(s: &str) -> Result<(i64, i64), Failure> {
    match s.split_once("..") {
        Some((a, b)) => {
            let lo = a
                .trim()
                .parse::<i64>()
                .map_err(|_| usage(format!("bad range start: {}", a)))?;
            let hi = b
                .trim()
                .parse::<i64>()
                .map_err(|_| usage(format!("bad range end: {}", b)))?;
            if lo > hi {
                return Err(usage("empty range"));
            }
            Ok((lo, hi))
        }
        None => {
            let v = s
                .trim()
                .parse::<i64>()
                .map_err(|_| usage(format!("bad index: {}", s)))?;
            Ok((v, v))
        }
    }
}

fn need<T: Copy>(v: Option<T>, name: &str) -> Result<T, Failure> {
    v.ok_or_else(|| usage(format!("missing required flag --{}", name)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = match &cli.cmd {
        Cmd::Compute { opts, .. }
        | Cmd::Verify { opts, .. }
        | Cmd::Table { opts, .. }
        | Cmd::Virasoro { opts } => opts,
    };
    if let Some(threads) = opts.threads {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .is_err()
        {
            eprintln!("warning: thread pool already initialized");
        }
    }
    let format = opts.format;
    let start = Instant::now();
    let outcome = match &cli.cmd {
        Cmd::Compute { target, opts } => run_compute(*target, opts),
        Cmd::Verify { identity, opts } => run_verify(*identity, opts),
        Cmd::Table { which, opts } => run_table(*which, opts),
        Cmd::Virasoro { opts } => run_virasoro(opts),
    };
    match outcome {
        Ok((mut report, code)) => {
            report.finish(start.elapsed());
            print!("{}", report.render(format));
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn t_mode(opts: &Opts) -> Result<TMode, Failure> {
    match &opts.t {
        Some(s) => Ok(TMode::At(parse_rat(s)?)),
        None => Ok(TMode::Symbolic),
    }
}

fn build_problem(target: ComputeTarget, opts: &Opts) -> Result<CTProblem, Failure> {
    match target {
        ComputeTarget::F => f_problem(need(opts.p, "p")?, t_mode(opts)?).map_err(map_err),
        ComputeTarget::E => {
            e_problem(need(opts.k, "k")?, need(opts.p, "p")?, t_mode(opts)?).map_err(map_err)
        }
        ComputeTarget::Gtilde => {
            gtilde_problem(need(opts.p, "p")?, t_mode(opts)?).map_err(map_err)
        }
        ComputeTarget::Dyson => {
            dyson_problem(need(opts.n, "n")?, need(opts.m, "m")?).map_err(map_err)
        }
        ComputeTarget::Logdyson => {
            log_dyson_vandermonde_problem(need(opts.k, "k")?, need(opts.m, "m")?).map_err(map_err)
        }
        ComputeTarget::LogdysonCyclic => {
            log_dyson_cyclic_problem(need(opts.p, "p")?).map_err(map_err)
        }
    }
}

fn evaluate(problem: &CTProblem, opts: &Opts) -> Result<(Value, &'static str), Failure> {
    let limits = opts.limits();
    let symbolic_mode = matches!(problem.t_mode, TMode::Symbolic);
    match opts.strategy {
        StrategyOpt::Symbolic => Ok((eval_problem(problem, &limits).map_err(map_err)?, "symbolic")),
        StrategyOpt::Interpolate => {
            if symbolic_mode {
                Ok((
                    Value::Poly(interpolation_strategy(problem, &limits).map_err(map_err)?),
                    "interpolate",
                ))
            } else {
                Ok((
                    eval_problem(problem, &limits).map_err(map_err)?,
                    "interpolate",
                ))
            }
        }
        StrategyOpt::Both => {
            let a = eval_problem(problem, &limits).map_err(map_err)?;
            let b = if symbolic_mode {
                Value::Poly(interpolation_strategy(problem, &limits).map_err(map_err)?)
            } else {
                eval_problem(problem, &limits).map_err(map_err)?
            };
            if a != b {
                return Err(Failure {
                    message: format!(
                        "strategy disagreement: symbolic gave {}, interpolation gave {}",
                        a, b
                    ),
                    code: EXIT_REFUTED,
                });
            }
            Ok((a, "both"))
        }
    }
}

fn run_compute(target: ComputeTarget, opts: &Opts) -> Result<(Report, u8), Failure> {
    let problem = build_problem(target, opts)?;
    let key = problem.hash(ENGINE_VERSION);
    let mut report = Report::new(
        &format!(
            "compute {}",
            match target {
                ComputeTarget::F => "f",
                ComputeTarget::E => "e",
                ComputeTarget::Gtilde => "gtilde",
                ComputeTarget::Dyson => "dyson",
                ComputeTarget::Logdyson => "logdyson",
                ComputeTarget::LogdysonCyclic => "logdyson-cyclic",
            }
        ),
        opts.params(),
    );
    report.problem_hash = Some(key.clone());
    report.strategy = Some(
        match opts.strategy {
            StrategyOpt::Symbolic => "symbolic",
            StrategyOpt::Interpolate => "interpolate",
            StrategyOpt::Both => "both",
        }
        .to_string(),
    );
    let cached = opts
        .cache_dir
        .as_deref()
        .and_then(|dir| cache::lookup(dir, &key));
    let value = match cached {
        Some(v) => v,
        None => {
            let (v, _) = evaluate(&problem, opts)?;
            if let Some(dir) = opts.cache_dir.as_deref() {
                cache::store(dir, &key, &problem.canonical_string(), &v);
            }
            v
        }
    };
    report.status = "computed".into();
    report.value = value_json(&value);
    Ok((report, 0))
}

fn verdict_exit(v: &Verdict, allow_sign: bool) -> u8 {
    match v.status {
        Status::Verified => 0,
        Status::VerifiedUpToSign => {
            if allow_sign {
                0
            } else {
                EXIT_REFUTED
            }
        }
        Status::Refuted => EXIT_REFUTED,
        Status::Inconclusive => EXIT_RESOURCE,
    }
}

fn verdict_report(command: &str, opts: &Opts, v: Verdict) -> (Report, u8) {
    let mut report = Report::new(command, opts.params());
    report.status = v.status.as_str().to_string();
    let mut body = serde_json::Map::new();
    body.insert("lhs".into(), serde_json::Value::String(v.lhs.clone()));
    body.insert("rhs".into(), serde_json::Value::String(v.rhs.clone()));
    if let Some(w) = &v.witness {
        body.insert("witness".into(), serde_json::Value::String(w.clone()));
    }
    report.value = serde_json::Value::Object(body);
    report.fitted_constant = v.fitted_constant.as_ref().map(rat_str);
    report.sign_note = v.sign_note.clone();
    let code = verdict_exit(&v, opts.allow_sign);
    (report, code)
}

fn run_verify(identity: Identity, opts: &Opts) -> Result<(Report, u8), Failure> {
    let limits = opts.limits();
    let (name, verdict): (&str, Verdict) = match identity {
        Identity::Conjm1 => (
            "verify conjm1",
            identities::verify_conjm1(need(opts.p, "p")?, &limits).map_err(map_err)?,
        ),
        Identity::ConjG => (
            "verify conj-g",
            identities::verify_conj_g(need(opts.p, "p")?, &limits).map_err(map_err)?,
        ),
        Identity::EConj => (
            "verify e-conj",
            identities::verify_e_conjecture(need(opts.k, "k")?, need(opts.p, "p")?, &limits)
                .map_err(map_err)?,
        ),
        Identity::LogDyson => (
            "verify log-dyson",
            identities::verify_log_dyson(need(opts.k, "k")?, need(opts.m, "m")?, &limits)
                .map_err(map_err)?,
        ),
        Identity::LogDysonCyclic => (
            "verify log-dyson-cyclic",
            identities::verify_log_dyson_cyclic(need(opts.p, "p")?, &limits).map_err(map_err)?,
        ),
        Identity::ChuFu => {
            let (_, _, v) = identities::chu_fu(need(opts.m, "m")?);
            ("verify chu-fu", v)
        }
        Identity::Ck => {
            let (_, _, v) = identities::harmonic_ck(need(opts.p, "p")?, need(opts.k, "k")?);
            ("verify ck", v)
        }
        Identity::Vanishing => (
            "verify vanishing",
            identities::verify_vanishing(need(opts.p, "p")?, &limits).map_err(map_err)?,
        ),
        Identity::ZhuW => (
            "verify zhu-w",
            identities::verify_zhu_w(need(opts.p, "p")?).map_err(map_err)?,
        ),
        Identity::ZhuSinglet => (
            "verify zhu-singlet",
            identities::verify_zhu_singlet(need(opts.p, "p")?).map_err(map_err)?,
        ),
        Identity::Fusion => (
            "verify fusion",
            identities::verify_fusion(need(opts.p, "p")?, need(opts.n, "n")?).map_err(map_err)?,
        ),
        Identity::Singular => (
            "verify singular",
            identities::verify_singular(&rat_int(need(opts.p, "p")? as i64)),
        ),
    };
    Ok(verdict_report(name, opts, verdict))
}

fn run_table(which: TableKind, opts: &Opts) -> Result<(Report, u8), Failure> {
    let p = need(opts.p, "p")?;
    let mut report = Report::new(
        &format!(
            "table {}",
            match which {
                TableKind::H => "h",
                TableKind::Modules => "modules",
                TableKind::Counts => "counts",
                TableKind::Zhu => "zhu",
            }
        ),
        opts.params(),
    );
    report.status = "computed".into();
    report.value = match which {
        TableKind::H => {
            let (rlo, rhi) = parse_range(opts.r.as_deref().unwrap_or("1..3"))?;
            let (slo, shi) = parse_range(opts.s.as_deref().unwrap_or("1..3"))?;
            let mut rows = Vec::new();
            for r in rlo..=rhi {
                for s in slo..=shi {
                    let mut row = serde_json::Map::new();
                    row.insert("r".into(), serde_json::Value::String(r.to_string()));
                    row.insert("s".into(), serde_json::Value::String(s.to_string()));
                    row.insert(
                        "h".into(),
                        serde_json::Value::String(rat_str(&spectrum::h_rs(p, r, s))),
                    );
                    rows.push(serde_json::Value::Object(row));
                }
            }
            serde_json::Value::Array(rows)
        }
        TableKind::Modules => {
            let table = spectrum::module_table(p).map_err(map_err)?;
            if p > 3 {
                report.sign_note = Some(
                    "top dimensions for p > 3 extrapolate the p = 3 column rule (provisional)"
                        .into(),
                );
            }
            let rows = table
                .entries
                .iter()
                .map(|e| {
                    let mut row = serde_json::Map::new();
                    row.insert("label".into(), serde_json::Value::String(e.label.clone()));
                    row.insert(
                        "lowest_weight".into(),
                        serde_json::Value::String(rat_str(&e.lowest_weight)),
                    );
                    row.insert(
                        "top_dimension".into(),
                        serde_json::Value::String(e.top_dimension.to_string()),
                    );
                    row.insert(
                        "origin".into(),
                        serde_json::Value::String(
                            match e.origin {
                                spectrum::ModuleOrigin::MinimalModel => "minimal-model",
                                spectrum::ModuleOrigin::WModule => "w-module",
                            }
                            .into(),
                        ),
                    );
                    serde_json::Value::Object(row)
                })
                .collect();
            serde_json::Value::Array(rows)
        }
        TableKind::Counts => {
            let (irr, dim) = spectrum::counts(p).map_err(map_err)?;
            serde_json::json!({
                "irreducibles": irr.to_string(),
                "character_dim": dim.to_string(),
            })
        }
        TableKind::Zhu => {
            let f = spectrum::zhu_poly_w(p).map_err(map_err)?;
            let g = spectrum::zhu_poly_singlet(p).map_err(map_err)?;
            let roots_json = |fp: &spectrum::FactoredPoly| {
                serde_json::Value::Array(
                    fp.roots()
                        .map(|(r, m)| {
                            serde_json::json!({
                                "root": rat_str(r),
                                "multiplicity": m.to_string(),
                            })
                        })
                        .collect(),
                )
            };
            serde_json::json!({
                "w_algebra": { "degree": f.degree().to_string(), "roots": roots_json(&f) },
                "singlet": { "degree": g.degree().to_string(), "roots": roots_json(&g) },
            })
        }
    };
    Ok((report, 0))
}

fn run_virasoro(opts: &Opts) -> Result<(Report, u8), Failure> {
    let p = need(opts.p, "p")?;
    let sv = virasoro::singular_vector_degree5(&rat_int(p as i64));
    let singular = virasoro::is_singular(&sv);
    let mut report = Report::new("virasoro", opts.params());
    report.status = if singular {
        "verified".into()
    } else {
        "refuted".into()
    };
    let terms: Vec<serde_json::Value> = sv
        .terms()
        .map(|(w, c)| {
            serde_json::json!({
                "partition": w.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(","),
                "coefficient": rat_str(c),
            })
        })
        .collect();
    report.value = serde_json::json!({
        "c": rat_str(&sv.c),
        "h": rat_str(&sv.h),
        "terms": terms,
        "singular": singular,
    });
    Ok((report, if singular { 0 } else { EXIT_REFUTED }))
}
