//! Sparse multivariate Laurent polynomials over exact coefficients.
//!
//! Terms are kept in a canonically ordered map so results serialize
//! deterministically regardless of the multiplication schedule. The
//! coefficient ring is either `Rat` or `TPoly` (polynomials in the formal
//! parameter t), selected per instance through the [`Ring`] trait.

mod factor;

pub use factor::{expand_factor, FactorSpec};

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use rayon::prelude::*;

use crate::error::LaurentError;
use crate::exact::{binom_rat, binom_tpoly, Rat, TPoly};

/// Engine limit on the ambient variable count (exponent vectors are stored
/// inline).
pub const MAX_VARS: usize = 8;

/// Exponent of the formal parameter in a `(1 + x_i)^t` factor: either the
/// symbolic variable t itself or a fixed rational value.
#[derive(Clone, PartialEq, Debug)]
pub enum TExponent {
    SymbolicT,
    Value(Rat),
}

/// Exponent vector of a Laurent monomial x_1^{e_1} ... x_n^{e_n}.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ExpVec {
    len: u8,
    exps: [i32; MAX_VARS],
}

impl ExpVec {
    pub fn zeros(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS);
        ExpVec {
            len: nvars as u8,
            exps: [0; MAX_VARS],
        }
    }

    pub fn from_slice(exps: &[i32]) -> Result<Self, LaurentError> {
        if exps.len() > MAX_VARS {
            return Err(LaurentError::TooManyVars(exps.len(), MAX_VARS));
        }
        let mut v = ExpVec::zeros(exps.len());
        v.exps[..exps.len()].copy_from_slice(exps);
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> i32 {
        debug_assert!(i < self.len());
        self.exps[i]
    }

    pub fn set(&mut self, i: usize, e: i32) {
        debug_assert!(i < self.len());
        self.exps[i] = e;
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.exps[..self.len()]
    }

    pub fn add(&self, other: &ExpVec) -> ExpVec {
        debug_assert_eq!(self.len, other.len);
        let mut out = *self;
        for i in 0..self.len() {
            out.exps[i] += other.exps[i];
        }
        out
    }
}

impl fmt::Display for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.as_slice().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e)?;
        }
        write!(f, ")")
    }
}

/// Per-variable closed interval of admissible exponents; the pruning
/// metadata of windowed multiplication.
#[derive(Clone, PartialEq, Debug)]
pub struct Window {
    bounds: Vec<(i64, i64)>,
}

/// Half-width of the unconstrained window; generous enough that sums of
/// envelopes never saturate.
const WIDE: i64 = i64::MAX / 8;

impl Window {
    pub fn new(bounds: Vec<(i64, i64)>) -> Result<Self, LaurentError> {
        for &(lo, hi) in &bounds {
            if lo > hi {
                return Err(LaurentError::BadTruncation);
            }
        }
        Ok(Window { bounds })
    }

    /// The all-admitting window over `nvars` variables.
    pub fn wide(nvars: usize) -> Self {
        Window {
            bounds: vec![(-WIDE, WIDE); nvars],
        }
    }

    /// The zero-contribution window (used when accumulating envelopes).
    pub fn zero(nvars: usize) -> Self {
        Window {
            bounds: vec![(0, 0); nvars],
        }
    }

    pub fn nvars(&self) -> usize {
        self.bounds.len()
    }

    pub fn lo(&self, i: usize) -> i64 {
        self.bounds[i].0
    }

    pub fn hi(&self, i: usize) -> i64 {
        self.bounds[i].1
    }

    pub fn set(&mut self, i: usize, lo: i64, hi: i64) {
        self.bounds[i] = (lo, hi);
    }

    pub fn contains(&self, e: &ExpVec) -> bool {
        e.as_slice()
            .iter()
            .zip(&self.bounds)
            .all(|(&x, &(lo, hi))| lo <= x as i64 && x as i64 <= hi)
    }

    /// Minkowski sum of two windows (sum of the per-variable intervals).
    pub fn sum(&self, other: &Window) -> Window {
        Window {
            bounds: self
                .bounds
                .iter()
                .zip(&other.bounds)
                .map(|(&(a, b), &(c, d))| (a.saturating_add(c), b.saturating_add(d)))
                .collect(),
        }
    }

    /// The window of partial exponents that can still reach `target` given
    /// this window as the envelope of the not-yet-multiplied factors.
    pub fn reachable_from(&self, target: &ExpVec) -> Window {
        Window {
            bounds: self
                .bounds
                .iter()
                .enumerate()
                .map(|(i, &(lo, hi))| {
                    let t = target.get(i) as i64;
                    (t.saturating_sub(hi), t.saturating_sub(lo))
                })
                .collect(),
        }
    }

    pub fn is_disjoint_from(&self, other: &Window) -> bool {
        self.bounds
            .iter()
            .zip(&other.bounds)
            .any(|(&(a, b), &(c, d))| b < c || d < a)
    }
}

/// Coefficient ring of a sparse Laurent polynomial. Implemented for `Rat`
/// (evaluated mode) and `TPoly` (symbolic-t mode).
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn ring_is_zero(&self) -> bool;
    fn ring_add_assign(&mut self, rhs: &Self);
    fn ring_mul(&self, rhs: &Self) -> Self;
    fn ring_neg(&self) -> Self;
    fn from_rat(r: Rat) -> Self;
    /// The coefficient C(texp, m) of the binomial series of (1 + x)^texp.
    /// Unavailable (None) when the ring cannot house the symbolic t.
    fn binom_of_t(texp: &TExponent, m: i64) -> Option<Self>;
}

impl Ring for Rat {
    fn ring_zero() -> Self {
        Rat::zero()
    }
    fn ring_one() -> Self {
        Rat::one()
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_add_assign(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn from_rat(r: Rat) -> Self {
        r
    }
    fn binom_of_t(texp: &TExponent, m: i64) -> Option<Self> {
        match texp {
            TExponent::SymbolicT => None,
            TExponent::Value(v) => Some(binom_rat(v, m)),
        }
    }
}

impl Ring for TPoly {
    fn ring_zero() -> Self {
        TPoly::zero()
    }
    fn ring_one() -> Self {
        TPoly::one()
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_add_assign(&mut self, rhs: &Self) {
        self.add_assign(rhs);
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
    fn from_rat(r: Rat) -> Self {
        TPoly::constant(r)
    }
    fn binom_of_t(texp: &TExponent, m: i64) -> Option<Self> {
        match texp {
            TExponent::SymbolicT => Some(binom_tpoly(&Rat::zero(), m)),
            TExponent::Value(v) => Some(TPoly::constant(binom_rat(v, m))),
        }
    }
}

/// Sparse multivariate Laurent polynomial: a finite, canonically ordered
/// association of exponent vectors to nonzero coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct SparseLaurent<C: Ring> {
    nvars: usize,
    terms: BTreeMap<ExpVec, C>,
}

impl<C: Ring> SparseLaurent<C> {
    pub fn zero(nvars: usize) -> Self {
        SparseLaurent {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        let mut p = SparseLaurent::zero(nvars);
        p.insert_add(ExpVec::zeros(nvars), C::ring_one());
        p
    }

    pub fn monomial(nvars: usize, exps: ExpVec, coeff: C) -> Self {
        let mut p = SparseLaurent::zero(nvars);
        p.insert_add(exps, coeff);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &C)> {
        self.terms.iter()
    }

    pub fn insert_add(&mut self, exps: ExpVec, coeff: C) {
        debug_assert_eq!(exps.len(), self.nvars);
        if coeff.ring_is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                e.get_mut().ring_add_assign(&coeff);
                if e.get().ring_is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Coefficient of the target monomial; zero if absent.
    pub fn extract_coeff(&self, target: &ExpVec) -> C {
        self.terms
            .get(target)
            .cloned()
            .unwrap_or_else(C::ring_zero)
    }

    /// Plain exact product (no pruning).
    pub fn mul(&self, other: &SparseLaurent<C>) -> Result<SparseLaurent<C>, LaurentError> {
        self.mul_pruned(other, &Window::wide(self.nvars))
    }

    /// Exact product restricted to terms whose exponent vectors lie inside
    /// `reachable`. The result is independent of the internal partitioning
    /// schedule: partial maps merge by exact addition.
    pub fn mul_pruned(
        &self,
        other: &SparseLaurent<C>,
        reachable: &Window,
    ) -> Result<SparseLaurent<C>, LaurentError> {
        if self.nvars != other.nvars {
            return Err(LaurentError::VarCountMismatch(self.nvars, other.nvars));
        }
        let nvars = self.nvars;
        let pairs = self.terms.len().saturating_mul(other.terms.len());
        let merge = |mut a: BTreeMap<ExpVec, C>, b: BTreeMap<ExpVec, C>| {
            for (e, c) in b {
                use std::collections::btree_map::Entry;
                match a.entry(e) {
                    Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    Entry::Occupied(mut o) => {
                        o.get_mut().ring_add_assign(&c);
                        if o.get().ring_is_zero() {
                            o.remove();
                        }
                    }
                }
            }
            a
        };
        let block = |chunk: &[(&ExpVec, &C)]| {
            let mut out: BTreeMap<ExpVec, C> = BTreeMap::new();
            for &(ea, ca) in chunk {
                for (eb, cb) in &other.terms {
                    let e = ea.add(eb);
                    if !reachable.contains(&e) {
                        continue;
                    }
                    let c = ca.ring_mul(cb);
                    if c.ring_is_zero() {
                        continue;
                    }
                    use std::collections::btree_map::Entry;
                    match out.entry(e) {
                        Entry::Vacant(v) => {
                            v.insert(c);
                        }
                        Entry::Occupied(mut o) => {
                            o.get_mut().ring_add_assign(&c);
                            if o.get().ring_is_zero() {
                                o.remove();
                            }
                        }
                    }
                }
            }
            out
        };
        let a_terms: Vec<(&ExpVec, &C)> = self.terms.iter().collect();
        let terms = if pairs >= 1 << 14 && a_terms.len() > 1 {
            let chunk = (a_terms.len() / (4 * rayon::current_num_threads().max(1))).max(16);
            a_terms
                .par_chunks(chunk)
                .map(block)
                .reduce(BTreeMap::new, merge)
        } else {
            block(&a_terms)
        };
        Ok(SparseLaurent { nvars, terms })
    }
}

impl<C: Ring + fmt::Display> fmt::Display for SparseLaurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})*x^{}", c, e)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;

    fn ev(e: &[i32]) -> ExpVec {
        ExpVec::from_slice(e).unwrap()
    }

    fn binomial2(i: usize, j: usize, sign: i64) -> SparseLaurent<Rat> {
        // x_i + sign * x_j over 2 vars
        let mut p = SparseLaurent::zero(2);
        let mut a = ExpVec::zeros(2);
        a.set(i, 1);
        p.insert_add(a, rat_int(1));
        let mut b = ExpVec::zeros(2);
        b.set(j, 1);
        p.insert_add(b, rat_int(sign));
        p
    }

    #[test]
    fn difference_of_squares() {
        let a = binomial2(0, 1, -1);
        let b = binomial2(0, 1, 1);
        let p = a.mul(&b).unwrap();
        assert_eq!(p.extract_coeff(&ev(&[2, 0])), rat_int(1));
        assert_eq!(p.extract_coeff(&ev(&[0, 2])), rat_int(-1));
        assert_eq!(p.extract_coeff(&ev(&[1, 1])), rat_int(0));
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn pruned_middle_term() {
        // (x1 - x2)^2 with x1-exponent pinned to 1 keeps only -2 x1 x2
        let a = binomial2(0, 1, -1);
        let mut w = Window::wide(2);
        w.set(0, 1, 1);
        let p = a.mul_pruned(&a, &w).unwrap();
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.extract_coeff(&ev(&[1, 1])), rat_int(-2));
    }

    #[test]
    fn disjoint_window_is_zero() {
        let a = binomial2(0, 1, -1);
        let mut w = Window::wide(2);
        w.set(0, 100, 200);
        assert!(a.mul_pruned(&a, &w).unwrap().is_zero());
    }

    #[test]
    fn ring_mismatch() {
        let a: SparseLaurent<Rat> = SparseLaurent::one(2);
        let b: SparseLaurent<Rat> = SparseLaurent::one(3);
        assert!(a.mul(&b).is_err());
    }
}
