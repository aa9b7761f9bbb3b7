//! Residue and constant-term evaluation.
//!
//! A [`CTProblem`] describes an integrand as a factor list; evaluation
//! expands the series factors under exponent-feasibility pruning and then
//! folds the `(1 + x_i)^t` factors directly into the target coefficient:
//! a term with exponent e contributes its coefficient times
//! `prod_i C(t, target_i - e_i)`, which keeps the heavy multivariate part
//! of the computation independent of t.

mod quantities;

pub use quantities::*;

use std::time::{Duration, Instant};

use num::{Signed, Zero};
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::error::CtError;
use crate::exact::{binom_rat, binom_tpoly, lagrange_interpolate, rat_int, Rat, TPoly};
use crate::laurent::{
    expand_factor, ExpVec, FactorSpec, SparseLaurent, TExponent, Window, MAX_VARS,
};

/// Whether the t parameter stays symbolic or is fixed to a rational value.
#[derive(Clone, PartialEq, Debug)]
pub enum TMode {
    Symbolic,
    At(Rat),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    Symbolic,
    Interpolate,
}

impl Strategy {
    pub fn as_str(&self) -> &'static str {
        match self {
            Strategy::Symbolic => "symbolic",
            Strategy::Interpolate => "interpolate",
        }
    }
}

/// Resource ceiling for a single evaluation. Exceeding either bound aborts
/// with a distinct error instead of silently degrading.
#[derive(Clone, Debug)]
pub struct Limits {
    pub max_terms: usize,
    pub timeout: Option<Duration>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_terms: 50_000_000,
            timeout: None,
        }
    }
}

/// An exact evaluation result: a rational in evaluated mode, a polynomial
/// in t in symbolic mode.
#[derive(Clone, PartialEq, Debug)]
pub enum Value {
    Rat(Rat),
    Poly(TPoly),
}

impl Value {
    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            Value::Rat(r) => Some(r),
            Value::Poly(_) => None,
        }
    }

    pub fn as_poly(&self) -> Option<&TPoly> {
        match self {
            Value::Poly(p) => Some(p),
            Value::Rat(_) => None,
        }
    }

    pub fn into_poly(self) -> Option<TPoly> {
        match self {
            Value::Poly(p) => Some(p),
            Value::Rat(_) => None,
        }
    }
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Value::Rat(r) => write!(f, "{}", r),
            Value::Poly(p) => write!(f, "{}", p),
        }
    }
}

/// Declarative residue/constant-term computation: factor list, target
/// exponents, t-mode and the a-priori bound on the t-degree of the result.
#[derive(Clone, PartialEq, Debug)]
pub struct CTProblem {
    pub nvars: usize,
    pub factors: Vec<FactorSpec>,
    pub target: ExpVec,
    pub t_mode: TMode,
    pub degree_bound: usize,
}

impl CTProblem {
    /// Canonical serialization; the cache key is a digest of this string
    /// together with the engine version.
    pub fn canonical_string(&self) -> String {
        let tm = match &self.t_mode {
            TMode::Symbolic => "t".to_string(),
            TMode::At(v) => v.to_string(),
        };
        let fs: Vec<String> = self.factors.iter().map(|f| f.canonical_string()).collect();
        format!(
            "ct{{nvars={};target={};tmode={};deg={};factors=[{}]}}",
            self.nvars,
            self.target,
            tm,
            self.degree_bound,
            fs.join(";")
        )
    }

    pub fn hash(&self, engine_version: &str) -> String {
        let mut h = Sha256::new();
        h.update(engine_version.as_bytes());
        h.update(b"|");
        h.update(self.canonical_string().as_bytes());
        let digest = h.finalize();
        digest.iter().map(|b| format!("{:02x}", b)).collect()
    }

    fn with_t(&self, v: Rat) -> CTProblem {
        let mut p = self.clone();
        p.t_mode = TMode::At(v);
        p
    }
}

/// Result of one evaluation together with provenance metadata.
#[derive(Clone, Debug)]
pub struct CTResult {
    pub value: Value,
    pub strategy: Strategy,
    pub elapsed: Duration,
    pub problem_hash: String,
}

struct Deadline {
    start: Instant,
    timeout: Option<Duration>,
}

impl Deadline {
    fn new(limits: &Limits) -> Self {
        Deadline {
            start: Instant::now(),
            timeout: limits.timeout,
        }
    }

    fn check(&self) -> Result<(), CtError> {
        if let Some(t) = self.timeout {
            if self.start.elapsed() > t {
                return Err(CtError::Timeout(t.as_secs()));
            }
        }
        Ok(())
    }
}

/// Splits the factor list into the t-independent series part and the
/// per-variable `(1 + x_i)^t` data, folding global monomials into the
/// target and lowering the Vandermonde power to pairwise differences.
fn normalize(
    problem: &CTProblem,
) -> Result<(ExpVec, Vec<FactorSpec>, Vec<Option<(TExponent, u32)>>), CtError> {
    let n = problem.nvars;
    if n == 0 || n > MAX_VARS {
        return Err(CtError::InvalidParameter(format!(
            "variable count {} out of range 1..={}",
            n, MAX_VARS
        )));
    }
    if problem.target.len() != n {
        return Err(CtError::InvalidParameter(
            "target length differs from nvars".into(),
        ));
    }
    let mut target = problem.target;
    let mut series: Vec<FactorSpec> = Vec::new();
    let mut one_plus: Vec<Option<(TExponent, u32)>> = vec![None; n];
    for f in &problem.factors {
        f.validate(n)?;
        match f {
            FactorSpec::GlobalMonomial { exps } => {
                for (i, &e) in exps.iter().enumerate() {
                    target.set(i, target.get(i) - e as i32);
                }
            }
            FactorSpec::VandermondePower { e } => {
                for i in 0..n {
                    for j in (i + 1)..n {
                        series.push(FactorSpec::DifferencePower { i, j, e: *e });
                    }
                }
            }
            FactorSpec::OnePlusPower { i, exponent, trunc } => {
                if one_plus[*i].is_some() {
                    return Err(CtError::InvalidParameter(format!(
                        "multiple (1+x)^t factors on variable {}",
                        i
                    )));
                }
                one_plus[*i] = Some((exponent.clone(), *trunc));
            }
            other => series.push(other.clone()),
        }
    }
    // Stable evaluation order: log factors first (their windows are the
    // tightest), then ratio differences, then plain differences.
    let rank = |f: &FactorSpec| match f {
        FactorSpec::LogRatio { i, j, .. } => (0usize, *i, *j),
        FactorSpec::RatioDifferencePower { i, j, .. } => (1, *i, *j),
        FactorSpec::DifferencePower { i, j, .. } => (2, *i, *j),
        _ => (3, 0, 0),
    };
    series.sort_by_key(rank);
    Ok((target, series, one_plus))
}

/// Derives truncation orders for `LogRatio` and `OnePlusPower` factors of a
/// problem from exponent-window analysis: a series order is useful only if
/// the remaining factors can still pull the exponent back to the target.
/// Truncations already set (nonzero) are kept.
pub fn resolve_truncations(problem: &CTProblem) -> Result<CTProblem, CtError> {
    let n = problem.nvars;
    let (target, series, one_plus) = normalize(problem)?;
    // minimal contribution of every non-log factor per variable
    let mut base_min = vec![0i64; n];
    for f in &series {
        if matches!(f, FactorSpec::LogRatio { .. }) {
            continue;
        }
        let env = f.envelope(n);
        for v in 0..n {
            base_min[v] += env.lo(v);
        }
    }
    let log_numerators: Vec<usize> = series
        .iter()
        .filter_map(|f| match f {
            FactorSpec::LogRatio { j, .. } => Some(*j),
            _ => None,
        })
        .collect();
    let resolve_log = |j: usize| -> Result<u32, CtError> {
        // x_j receives +m from its own log; every other factor contributes
        // at least base_min[j] (other logs' numerator side at least +1).
        let others: i64 = log_numerators.iter().filter(|&&v| v == j).count() as i64 - 1;
        let m = target.get(j) as i64 - base_min[j] - others;
        if m < 1 {
            return Err(CtError::InvalidParameter(format!(
                "log factor on variable {} admits no series term under the target",
                j
            )));
        }
        Ok(m as u32)
    };
    let mut log_min = vec![0i64; n]; // resolved minimal log contributions
    let mut resolved: Vec<FactorSpec> = Vec::new();
    for f in &problem.factors {
        match f {
            FactorSpec::LogRatio { i, j, trunc } => {
                let m = if *trunc > 0 { *trunc } else { resolve_log(*j)? };
                log_min[*i] -= m as i64;
                resolved.push(FactorSpec::LogRatio {
                    i: *i,
                    j: *j,
                    trunc: m,
                });
            }
            other => resolved.push(other.clone()),
        }
    }
    for v in 0..n {
        if one_plus[v].is_none() {
            continue;
        }
        // max useful series order of (1 + x_v)^t
        let m = target.get(v) as i64 - (base_min[v] + log_min[v]);
        if m < 0 {
            return Err(CtError::InvalidParameter(format!(
                "(1+x)^t factor on variable {} cannot reach the target",
                v
            )));
        }
        for f in resolved.iter_mut() {
            if let FactorSpec::OnePlusPower { i, trunc, .. } = f {
                if *i == v && *trunc == 0 {
                    *trunc = m as u32;
                }
            }
        }
    }
    let mut out = problem.clone();
    out.factors = resolved;
    Ok(out)
}

/// Multiplies out the t-independent series factors under pruning.
fn series_product(
    nvars: usize,
    target: &ExpVec,
    series: &[FactorSpec],
    one_plus_env: &Window,
    limits: &Limits,
    deadline: &Deadline,
) -> Result<SparseLaurent<Rat>, CtError> {
    let mut acc: SparseLaurent<Rat> = SparseLaurent::one(nvars);
    for (k, f) in series.iter().enumerate() {
        let mut rest = one_plus_env.clone();
        for later in &series[k + 1..] {
            rest = rest.sum(&later.envelope(nvars));
        }
        let reach = rest.reachable_from(target);
        let expanded: SparseLaurent<Rat> = expand_factor(f, nvars, &Window::wide(nvars))?;
        acc = acc.mul_pruned(&expanded, &reach)?;
        if acc.num_terms() > limits.max_terms {
            return Err(CtError::TermLimit {
                terms: acc.num_terms(),
                limit: limits.max_terms,
            });
        }
        deadline.check()?;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// Evaluates a problem by direct expansion (symbolic in t when the problem
/// is in symbolic mode).
pub fn eval_problem(problem: &CTProblem, limits: &Limits) -> Result<Value, CtError> {
    let deadline = Deadline::new(limits);
    let problem = resolve_truncations(problem)?;
    let n = problem.nvars;
    let (target, series, one_plus) = normalize(&problem)?;

    // envelope of the (1+x)^t factors for pruning
    let mut op_env = Window::zero(n);
    for (v, slot) in one_plus.iter().enumerate() {
        if let Some((exponent, trunc)) = slot {
            let mut hi = *trunc as i64;
            if let TExponent::Value(x) = exponent {
                if x.is_integer() && !x.is_negative() {
                    hi = hi.min(x.to_integer().try_into().unwrap_or(i64::MAX));
                }
            }
            op_env.set(v, 0, hi);
        }
    }

    let prod = series_product(n, &target, &series, &op_env, limits, &deadline)?;

    // fold the binomial coefficients of the (1+x)^t factors
    let mut max_order = vec![0i64; n];
    for (e, _) in prod.terms() {
        for v in 0..n {
            max_order[v] = max_order[v].max(target.get(v) as i64 - e.get(v) as i64);
        }
    }
    let symbolic = matches!(problem.t_mode, TMode::Symbolic);
    let reduce_rat = |tv: &Rat| -> Rat {
        let tables: Vec<Vec<Rat>> = (0..n)
            .map(|v| {
                (0..=max_order[v].max(0))
                    .map(|m| binom_rat(tv, m))
                    .collect()
            })
            .collect();
        let terms: Vec<(&ExpVec, &Rat)> = prod.terms().collect();
        terms
            .par_iter()
            .map(|(e, c)| {
                let mut acc = (*c).clone();
                for v in 0..n {
                    let m = target.get(v) as i64 - e.get(v) as i64;
                    match &one_plus[v] {
                        Some(_) => {
                            if m < 0 {
                                return Rat::zero();
                            }
                            acc *= &tables[v][m as usize];
                            if acc.is_zero() {
                                return acc;
                            }
                        }
                        None => {
                            if m != 0 {
                                return Rat::zero();
                            }
                        }
                    }
                }
                acc
            })
            .reduce(Rat::zero, |a, b| a + b)
    };
    let value = if symbolic {
        let shift = Rat::zero();
        let table: Vec<TPoly> = (0..=max_order.iter().copied().max().unwrap_or(0).max(0))
            .map(|m| binom_tpoly(&shift, m))
            .collect();
        let terms: Vec<(&ExpVec, &Rat)> = prod.terms().collect();
        let poly = terms
            .par_iter()
            .map(|(e, c)| {
                let mut acc = TPoly::constant((*c).clone());
                for v in 0..n {
                    let m = target.get(v) as i64 - e.get(v) as i64;
                    match &one_plus[v] {
                        Some(_) => {
                            if m < 0 {
                                return TPoly::zero();
                            }
                            acc = acc.mul(&table[m as usize]);
                        }
                        None => {
                            if m != 0 {
                                return TPoly::zero();
                            }
                        }
                    }
                }
                acc
            })
            .reduce(TPoly::zero, |a, b| a.add(&b));
        if poly.degree().unwrap_or(0) > problem.degree_bound {
            return Err(CtError::InvalidParameter(format!(
                "computed degree {} exceeds the stated bound {}",
                poly.degree().unwrap_or(0),
                problem.degree_bound
            )));
        }
        Value::Poly(poly)
    } else {
        let tv = match &problem.t_mode {
            TMode::At(v) => v.clone(),
            TMode::Symbolic => unreachable!(),
        };
        Value::Rat(reduce_rat(&tv))
    };
    deadline.check()?;
    Ok(value)
}

/// Second evaluation strategy: evaluates a symbolic problem at the
/// consecutive integers t = 0, 1, ..., degree_bound (where `(1+x)^t` is a
/// finite binomial) and interpolates. Known vanishing at small integers is
/// retained as data, not shortcut.
pub fn interpolation_strategy(problem: &CTProblem, limits: &Limits) -> Result<TPoly, CtError> {
    if !matches!(problem.t_mode, TMode::Symbolic) {
        return Err(CtError::InvalidParameter(
            "interpolation strategy requires symbolic t-mode".into(),
        ));
    }
    let bound = problem.degree_bound;
    let points: Result<Vec<(Rat, Rat)>, CtError> = (0..=bound as i64)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&t| {
            let v = eval_problem(&problem.with_t(rat_int(t)), limits)?;
            match v {
                Value::Rat(r) => Ok((rat_int(t), r)),
                Value::Poly(_) => unreachable!(),
            }
        })
        .collect();
    Ok(lagrange_interpolate(&points?, bound)?)
}

/// Runs the requested strategy and packages the result.
pub fn run_problem(
    problem: &CTProblem,
    strategy: Strategy,
    limits: &Limits,
    engine_version: &str,
) -> Result<CTResult, CtError> {
    let start = Instant::now();
    let value = match strategy {
        Strategy::Symbolic => eval_problem(problem, limits)?,
        Strategy::Interpolate => {
            if matches!(problem.t_mode, TMode::Symbolic) {
                Value::Poly(interpolation_strategy(problem, limits)?)
            } else {
                // nothing to interpolate at a fixed t
                eval_problem(problem, limits)?
            }
        }
    };
    Ok(CTResult {
        value,
        strategy,
        elapsed: start.elapsed(),
        problem_hash: problem.hash(engine_version),
    })
}

/// Engine version string baked into problem hashes and reports.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
