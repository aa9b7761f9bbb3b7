//! The named residue and constant-term quantities: F(p,t), E_{k,p}(t), the
//! five-variable G~_p(t), the classical Dyson constant term and both
//! logarithmically disturbed Dyson forms, plus the binomial-sum oracles.

use num::Zero;

use super::{eval_problem, CTProblem, Limits, TMode, Value};
use crate::error::CtError;
use crate::exact::{binom_int, binom_rat, binom_tpoly, rat_int, Rat, TPoly};
use crate::laurent::{ExpVec, FactorSpec, TExponent, MAX_VARS};

fn require_odd_p(p: u64) -> Result<(), CtError> {
    if p < 1 || p % 2 == 0 {
        return Err(CtError::InvalidParameter(format!(
            "p must be odd and >= 1, got {}",
            p
        )));
    }
    Ok(())
}

fn t_exponent(t_mode: &TMode) -> TExponent {
    match t_mode {
        TMode::Symbolic => TExponent::SymbolicT,
        TMode::At(v) => TExponent::Value(v.clone()),
    }
}

/// The (2k+1)-variable residue problem behind E_{k,p}(t): Vandermonde to
/// the p-th power over (x_1 ... x_{2k+1})^{(2k+1)p}, one log factor per
/// consecutive variable pair, and a (1+x_i)^t factor per variable.
pub fn e_problem(k: u64, p: u64, t_mode: TMode) -> Result<CTProblem, CtError> {
    require_odd_p(p)?;
    let n = (2 * k + 1) as usize;
    if n > MAX_VARS {
        return Err(CtError::InvalidParameter(format!(
            "k = {} needs {} variables, engine limit is {}",
            k, n, MAX_VARS
        )));
    }
    let mut factors = Vec::new();
    for i in 0..k as usize {
        factors.push(FactorSpec::LogRatio {
            i: 2 * i,
            j: 2 * i + 1,
            trunc: 0, // derived from the exponent windows
        });
    }
    factors.push(FactorSpec::VandermondePower { e: p as u32 });
    factors.push(FactorSpec::GlobalMonomial {
        exps: vec![-((n as i64) * p as i64); n],
    });
    let texp = t_exponent(&t_mode);
    for i in 0..n {
        factors.push(FactorSpec::OnePlusPower {
            i,
            exponent: texp.clone(),
            trunc: 0,
        });
    }
    let degree_bound = n * ((k as usize + 1) * p as usize - 1);
    Ok(CTProblem {
        nvars: n,
        factors,
        target: ExpVec::from_slice(&vec![-1i32; n]).map_err(CtError::Laurent)?,
        t_mode,
        degree_bound,
    })
}

/// The triple residue defining F(p,t); the k = 1 member of the E family.
pub fn f_problem(p: u64, t_mode: TMode) -> Result<CTProblem, CtError> {
    e_problem(1, p, t_mode)
}

/// The five-variable residue G~_p(t); the k = 2 member of the E family.
pub fn gtilde_problem(p: u64, t_mode: TMode) -> Result<CTProblem, CtError> {
    e_problem(2, p, t_mode)
}

pub fn residue_e(k: u64, p: u64, t_mode: TMode, limits: &Limits) -> Result<Value, CtError> {
    eval_problem(&e_problem(k, p, t_mode)?, limits)
}

pub fn residue_f(p: u64, t_mode: TMode, limits: &Limits) -> Result<Value, CtError> {
    residue_e(1, p, t_mode, limits)
}

pub fn residue_gtilde(p: u64, t_mode: TMode, limits: &Limits) -> Result<Value, CtError> {
    residue_e(2, p, t_mode, limits)
}

/// Classical Dyson constant term: CT of Delta^{2m} / (x_1...x_n)^{m(n-1)}.
pub fn dyson_problem(n: u64, m: u64) -> Result<CTProblem, CtError> {
    if n < 2 || m < 1 {
        return Err(CtError::InvalidParameter(format!(
            "dyson requires n >= 2 and m >= 1, got n = {}, m = {}",
            n, m
        )));
    }
    let nv = n as usize;
    if nv > MAX_VARS {
        return Err(CtError::InvalidParameter(format!(
            "n = {} exceeds engine limit {}",
            n, MAX_VARS
        )));
    }
    Ok(CTProblem {
        nvars: nv,
        factors: vec![
            FactorSpec::VandermondePower { e: 2 * m as u32 },
            FactorSpec::GlobalMonomial {
                exps: vec![-(m as i64) * (n as i64 - 1); nv],
            },
        ],
        target: ExpVec::zeros(nv),
        t_mode: TMode::At(Rat::zero()),
        degree_bound: 0,
    })
}

pub fn dyson_ct(n: u64, m: u64, limits: &Limits) -> Result<Rat, CtError> {
    match eval_problem(&dyson_problem(n, m)?, limits)? {
        Value::Rat(r) => Ok(r),
        Value::Poly(_) => unreachable!(),
    }
}

/// The cyclic three-variable log-disturbed constant term:
/// CT ln(1 - x_2/x_1) (1 - x_2/x_1)^p (1 - x_3/x_2)^p (1 - x_1/x_3)^p.
pub fn log_dyson_cyclic_problem(p: u64) -> Result<CTProblem, CtError> {
    require_odd_p(p)?;
    let e = p as u32;
    Ok(CTProblem {
        nvars: 3,
        factors: vec![
            FactorSpec::LogRatio {
                i: 0,
                j: 1,
                trunc: 0,
            },
            FactorSpec::RatioDifferencePower { i: 0, j: 1, e },
            FactorSpec::RatioDifferencePower { i: 1, j: 2, e },
            FactorSpec::RatioDifferencePower { i: 2, j: 0, e },
        ],
        target: ExpVec::zeros(3),
        t_mode: TMode::At(Rat::zero()),
        degree_bound: 0,
    })
}

pub fn log_dyson_cyclic(p: u64, limits: &Limits) -> Result<Rat, CtError> {
    match eval_problem(&log_dyson_cyclic_problem(p)?, limits)? {
        Value::Rat(r) => Ok(r),
        Value::Poly(_) => unreachable!(),
    }
}

/// The odd-Vandermonde log-disturbed constant term over 2k+1 variables:
/// CT prod ln(1 - x_{2i}/x_{2i-1}) Delta^{2m+1} / (x_1...x_{2k+1})^{(2m+1)k}.
/// m = 0 is admitted as a degenerate smoke test.
pub fn log_dyson_vandermonde_problem(k: u64, m: u64) -> Result<CTProblem, CtError> {
    if k < 1 {
        return Err(CtError::InvalidParameter("k must be >= 1".into()));
    }
    let n = (2 * k + 1) as usize;
    if n > MAX_VARS {
        return Err(CtError::InvalidParameter(format!(
            "k = {} needs {} variables, engine limit is {}",
            k, n, MAX_VARS
        )));
    }
    let mut factors = Vec::new();
    for i in 0..k as usize {
        factors.push(FactorSpec::LogRatio {
            i: 2 * i,
            j: 2 * i + 1,
            trunc: 0,
        });
    }
    factors.push(FactorSpec::VandermondePower {
        e: (2 * m + 1) as u32,
    });
    factors.push(FactorSpec::GlobalMonomial {
        exps: vec![-((2 * m as i64 + 1) * k as i64); n],
    });
    Ok(CTProblem {
        nvars: n,
        factors,
        target: ExpVec::zeros(n),
        t_mode: TMode::At(Rat::zero()),
        degree_bound: 0,
    })
}

pub fn log_dyson_vandermonde(k: u64, m: u64, limits: &Limits) -> Result<Rat, CtError> {
    match eval_problem(&log_dyson_vandermonde_problem(k, m)?, limits)? {
        Value::Rat(r) => Ok(r),
        Value::Poly(_) => unreachable!(),
    }
}

/// Quadruple binomial sum expansion of F(p,t): an oracle for `residue_f`
/// that never touches the Laurent machinery. Binomials with negative lower
/// index vanish, which bounds the m-summation.
pub fn f_binomial_sum(p: u64, t_mode: TMode) -> Result<Value, CtError> {
    require_odd_p(p)?;
    let pi = p as i64;
    let symbolic = matches!(t_mode, TMode::Symbolic);
    let mut poly_acc = TPoly::zero();
    let mut rat_acc = Rat::zero();
    for i in 0..=pi {
        for j in 0..=pi {
            for k in 0..=pi {
                let m_hi = 2 * pi - 1 + i - k;
                for m in 1..=m_hi {
                    let n1 = m + 3 * pi - 1 - i - j;
                    let n2 = 2 * pi - m - 1 + i - k;
                    let n3 = pi - 1 + j + k;
                    if n1 < 0 || n2 < 0 || n3 < 0 {
                        continue;
                    }
                    let mut c = Rat::from_integer(
                        binom_int(p, i as u64) * binom_int(p, j as u64) * binom_int(p, k as u64),
                    ) / rat_int(m);
                    if (i + j + k) % 2 == 1 {
                        c = -c;
                    }
                    match &t_mode {
                        TMode::Symbolic => {
                            let term = binom_tpoly(&Rat::zero(), n1)
                                .mul(&binom_tpoly(&Rat::zero(), n2))
                                .mul(&binom_tpoly(&Rat::zero(), n3))
                                .scale(&c);
                            poly_acc.add_assign(&term);
                        }
                        TMode::At(t) => {
                            rat_acc +=
                                c * binom_rat(t, n1) * binom_rat(t, n2) * binom_rat(t, n3);
                        }
                    }
                }
            }
        }
    }
    Ok(if symbolic {
        Value::Poly(poly_acc)
    } else {
        Value::Rat(rat_acc)
    })
}

/// The double sum printed for F(p, 2p-1):
/// sum_{m=1}^{p} sum_{k=0}^{p} (-1)^{m+k} (1/m) C(p,k)^2 C(p,m+k),
/// exactly as printed. Reports compare it against `residue_f(p, 2p-1)`
/// and record the sign relation.
pub fn f_at_2pm1_paper_sum(p: u64) -> Result<Rat, CtError> {
    require_odd_p(p)?;
    let mut acc = Rat::zero();
    for m in 1..=p {
        for k in 0..=p {
            let mut c = Rat::from_integer(
                binom_int(p, k) * binom_int(p, k) * binom_int(p, m + k),
            ) / rat_int(m as i64);
            if (m + k) % 2 == 1 {
                c = -c;
            }
            acc += c;
        }
    }
    Ok(acc)
}
