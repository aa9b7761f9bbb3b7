
use super::{ExpVec, Ring, SparseLaurent, TExponent, Window};
use crate::error::LaurentError;
use crate::exact::{binom_int, rat_int, Rat};

/// One multiplicative factor of a residue/constant-term integrand.
/// Variable indices are 0-based.
#[derive(Clone, PartialEq, Debug)]
pub enum FactorSpec {
    /// (x_i - x_j)^e
    DifferencePower { i: usize, j: usize, e: u32 },
    /// (1 - x_j/x_i)^e
    RatioDifferencePower { i: usize, j: usize, e: u32 },
    /// ln(1 - x_j/x_i) truncated at order `trunc`
    LogRatio { i: usize, j: usize, trunc: u32 },
    /// (1 + x_i)^t truncated at order `trunc`
    OnePlusPower {
        i: usize,
        exponent: TExponent,
        trunc: u32,
    },
    /// x_1^{e_1} ... x_n^{e_n}
    GlobalMonomial { exps: Vec<i64> },
    /// prod_{i<j} (x_i - x_j)^e over all ambient variables
    VandermondePower { e: u32 },
}

impl FactorSpec {
    pub fn validate(&self, nvars: usize) -> Result<(), LaurentError> {
        match self {
            FactorSpec::DifferencePower { i, j, .. }
            | FactorSpec::RatioDifferencePower { i, j, .. }
            | FactorSpec::LogRatio { i, j, .. } => {
                if i == j || *i >= nvars || *j >= nvars {
                    return Err(LaurentError::BadFactorIndex {
                        i: *i,
                        j: *j,
                        nvars,
                    });
                }
            }
            FactorSpec::OnePlusPower { i, trunc, .. } => {
                if *i >= nvars {
                    return Err(LaurentError::BadFactorIndex {
                        i: *i,
                        j: *i,
                        nvars,
                    });
                }
                // trunc = 0 admits only the constant term 1, which is legal
                let _ = trunc;
            }
            FactorSpec::GlobalMonomial { exps } => {
                if exps.len() != nvars {
                    return Err(LaurentError::VarCountMismatch(exps.len(), nvars));
                }
            }
            FactorSpec::VandermondePower { .. } => {}
        }
        Ok(())
    }

    /// Per-variable interval of exponents this factor can contribute.
    pub fn envelope(&self, nvars: usize) -> Window {
        let mut w = Window::zero(nvars);
        match self {
            FactorSpec::DifferencePower { i, j, e } => {
                w.set(*i, 0, *e as i64);
                w.set(*j, 0, *e as i64);
            }
            FactorSpec::RatioDifferencePower { i, j, e } => {
                w.set(*i, -(*e as i64), 0);
                w.set(*j, 0, *e as i64);
            }
            FactorSpec::LogRatio { i, j, trunc } => {
                w.set(*i, -(*trunc as i64), -1);
                w.set(*j, 1, *trunc as i64);
            }
            FactorSpec::OnePlusPower { i, trunc, .. } => {
                w.set(*i, 0, *trunc as i64);
            }
            FactorSpec::GlobalMonomial { exps } => {
                for (k, &e) in exps.iter().enumerate() {
                    w.set(k, e, e);
                }
            }
            FactorSpec::VandermondePower { e } => {
                let top = *e as i64 * (nvars as i64 - 1);
                for k in 0..nvars {
                    w.set(k, 0, top);
                }
            }
        }
        w
    }

    /// Canonical textual form, used in content-addressed problem hashes.
    pub fn canonical_string(&self) -> String {
        match self {
            FactorSpec::DifferencePower { i, j, e } => format!("diff({i},{j},{e})"),
            FactorSpec::RatioDifferencePower { i, j, e } => format!("ratio({i},{j},{e})"),
            FactorSpec::LogRatio { i, j, trunc } => format!("log({i},{j},{trunc})"),
            FactorSpec::OnePlusPower { i, exponent, trunc } => {
                let t = match exponent {
                    TExponent::SymbolicT => "t".to_string(),
                    TExponent::Value(v) => v.to_string(),
                };
                format!("onep({i},{t},{trunc})")
            }
            FactorSpec::GlobalMonomial { exps } => {
                let s: Vec<String> = exps.iter().map(|e| e.to_string()).collect();
                format!("mono({})", s.join(","))
            }
            FactorSpec::VandermondePower { e } => format!("vdm({e})"),
        }
    }
}

/// Expands a factor into its exact (truncated, where applicable) Laurent
/// series, dropping every term outside `window`. An empty result is legal.
pub fn expand_factor<C: Ring>(
    f: &FactorSpec,
    nvars: usize,
    window: &Window,
) -> Result<SparseLaurent<C>, LaurentError> {
    f.validate(nvars)?;
    let mut out = SparseLaurent::zero(nvars);
    match f {
        FactorSpec::DifferencePower { i, j, e } => {
            for m in 0..=*e {
                let mut ev = ExpVec::zeros(nvars);
                ev.set(*i, (*e - m) as i32);
                ev.set(*j, m as i32);
                if !window.contains(&ev) {
                    continue;
                }
                let mut c = Rat::from_integer(binom_int(*e as u64, m as u64));
                if m % 2 == 1 {
                    c = -c;
                }
                out.insert_add(ev, C::from_rat(c));
            }
        }
        FactorSpec::RatioDifferencePower { i, j, e } => {
            for m in 0..=*e {
                let mut ev = ExpVec::zeros(nvars);
                ev.set(*i, -(m as i32));
                ev.set(*j, m as i32);
                if !window.contains(&ev) {
                    continue;
                }
                let mut c = Rat::from_integer(binom_int(*e as u64, m as u64));
                if m % 2 == 1 {
                    c = -c;
                }
                out.insert_add(ev, C::from_rat(c));
            }
        }
        FactorSpec::LogRatio { i, j, trunc } => {
            if *trunc < 1 {
                return Err(LaurentError::BadTruncation);
            }
            for m in 1..=*trunc {
                let mut ev = ExpVec::zeros(nvars);
                ev.set(*i, -(m as i32));
                ev.set(*j, m as i32);
                if !window.contains(&ev) {
                    continue;
                }
                out.insert_add(ev, C::from_rat(-rat_int(1) / rat_int(m as i64)));
            }
        }
        FactorSpec::OnePlusPower { i, exponent, trunc } => {
            for m in 0..=*trunc {
                let mut ev = ExpVec::zeros(nvars);
                ev.set(*i, m as i32);
                if !window.contains(&ev) {
                    continue;
                }
                let c = C::binom_of_t(exponent, m as i64)
                    .ok_or(LaurentError::SymbolicInRationalRing)?;
                out.insert_add(ev, c);
            }
        }
        FactorSpec::GlobalMonomial { exps } => {
            let exps32: Vec<i32> = exps.iter().map(|&e| e as i32).collect();
            let ev = ExpVec::from_slice(&exps32)?;
            if window.contains(&ev) {
                out.insert_add(ev, C::ring_one());
            }
        }
        FactorSpec::VandermondePower { e } => {
            let pairs: Vec<FactorSpec> = (0..nvars)
                .flat_map(|i| {
                    ((i + 1)..nvars).map(move |j| FactorSpec::DifferencePower { i, j, e: *e })
                })
                .collect();
            let mut acc: SparseLaurent<C> = SparseLaurent::one(nvars);
            for (k, pair) in pairs.iter().enumerate() {
                // envelope of pairs not yet multiplied
                let mut rest = Window::zero(nvars);
                for later in &pairs[k + 1..] {
                    rest = rest.sum(&later.envelope(nvars));
                }
                // admissible partial exponents: window minus what the rest can add
                let mut reach = Window::wide(nvars);
                for v in 0..nvars {
                    reach.set(
                        v,
                        window.lo(v).saturating_sub(rest.hi(v)),
                        window.hi(v).saturating_sub(rest.lo(v)),
                    );
                }
                let expanded = expand_factor::<C>(pair, nvars, &Window::wide(nvars))?;
                acc = acc.mul_pruned(&expanded, &reach)?;
            }
            return Ok(acc);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, TPoly};

    fn ev(e: &[i32]) -> ExpVec {
        ExpVec::from_slice(e).unwrap()
    }

    #[test]
    fn log_ratio_series() {
        let f = FactorSpec::LogRatio {
            i: 0,
            j: 1,
            trunc: 2,
        };
        let p: SparseLaurent<Rat> = expand_factor(&f, 2, &Window::wide(2)).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.extract_coeff(&ev(&[-1, 1])), rat(-1, 1));
        assert_eq!(p.extract_coeff(&ev(&[-2, 2])), rat(-1, 2));
    }

    #[test]
    fn log_ratio_deep_coefficient() {
        let f = FactorSpec::LogRatio {
            i: 0,
            j: 1,
            trunc: 5,
        };
        let p: SparseLaurent<Rat> = expand_factor(&f, 2, &Window::wide(2)).unwrap();
        assert_eq!(p.extract_coeff(&ev(&[-3, 3])), rat(-1, 3));
    }

    #[test]
    fn difference_square() {
        let f = FactorSpec::DifferencePower { i: 0, j: 1, e: 2 };
        let p: SparseLaurent<Rat> = expand_factor(&f, 2, &Window::wide(2)).unwrap();
        assert_eq!(p.extract_coeff(&ev(&[2, 0])), rat(1, 1));
        assert_eq!(p.extract_coeff(&ev(&[1, 1])), rat(-2, 1));
        assert_eq!(p.extract_coeff(&ev(&[0, 2])), rat(1, 1));
    }

    #[test]
    fn one_plus_power_symbolic() {
        let f = FactorSpec::OnePlusPower {
            i: 0,
            exponent: TExponent::SymbolicT,
            trunc: 2,
        };
        let p: SparseLaurent<TPoly> = expand_factor(&f, 1, &Window::wide(1)).unwrap();
        assert_eq!(p.extract_coeff(&ev(&[0])), TPoly::one());
        assert_eq!(p.extract_coeff(&ev(&[1])), TPoly::var());
        // (t^2 - t)/2
        assert_eq!(
            p.extract_coeff(&ev(&[2])),
            TPoly::from_coeffs(vec![rat(0, 1), rat(-1, 2), rat(1, 2)])
        );
    }

    #[test]
    fn symbolic_in_rational_ring_fails() {
        let f = FactorSpec::OnePlusPower {
            i: 0,
            exponent: TExponent::SymbolicT,
            trunc: 2,
        };
        let r: Result<SparseLaurent<Rat>, _> = expand_factor(&f, 1, &Window::wide(1));
        assert!(matches!(r, Err(LaurentError::SymbolicInRationalRing)));
    }

    #[test]
    fn window_respected() {
        let f = FactorSpec::DifferencePower { i: 0, j: 1, e: 3 };
        let mut w = Window::wide(2);
        w.set(1, 1, 2);
        let p: SparseLaurent<Rat> = expand_factor(&f, 2, &w).unwrap();
        for (e, _) in p.terms() {
            assert!(w.contains(e));
        }
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn vandermonde_degree_and_alternation() {
        // n = 3, e = 1: total degree 3, swapping two variables negates it
        let f = FactorSpec::VandermondePower { e: 1 };
        let p: SparseLaurent<Rat> = expand_factor(&f, 3, &Window::wide(3)).unwrap();
        for (e, _) in p.terms() {
            let total: i32 = e.as_slice().iter().sum();
            assert_eq!(total, 3);
        }
        // swap x_0 <-> x_1
        for (e, c) in p.terms() {
            let swapped = ev(&[e.get(1), e.get(0), e.get(2)]);
            assert_eq!(p.extract_coeff(&swapped), -c.clone());
        }
    }

    #[test]
    fn bad_indices() {
        let f = FactorSpec::LogRatio {
            i: 1,
            j: 1,
            trunc: 3,
        };
        assert!(f.validate(2).is_err());
        let g = FactorSpec::DifferencePower { i: 0, j: 5, e: 1 };
        assert!(g.validate(2).is_err());
    }
}
