use std::fmt;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{rat_int, Rat};

/// Univariate polynomial in the formal parameter `t` over exact rationals.
/// Coefficients are stored densely by power of `t`; the leading coefficient
/// is nonzero unless the polynomial is zero.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct TPoly {
    coeffs: Vec<Rat>,
}

impl TPoly {
    pub fn zero() -> Self {
        TPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        TPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        TPoly::from_coeffs(vec![c])
    }

    /// The polynomial `t`.
    pub fn var() -> Self {
        TPoly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    /// Builds from a coefficient list (index = power of t), trimming
    /// trailing zeros.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = TPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> Rat {
        self.coeffs.get(power).cloned().unwrap_or_else(Rat::zero)
    }

    /// True if the polynomial is a (possibly zero) constant.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.coeffs.len() {
            0 => Some(Rat::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn add(&self, other: &TPoly) -> TPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        TPoly::from_coeffs(out)
    }

    pub fn add_assign(&mut self, other: &TPoly) {
        if other.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), Rat::zero());
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            self.coeffs[i] += c;
        }
        self.trim();
    }

    pub fn sub(&self, other: &TPoly) -> TPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TPoly {
        TPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, k: &Rat) -> TPoly {
        if k.is_zero() {
            return TPoly::zero();
        }
        TPoly {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn mul(&self, other: &TPoly) -> TPoly {
        if self.is_zero() || other.is_zero() {
            return TPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        TPoly::from_coeffs(out)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> TPoly {
        if self.coeffs.len() <= 1 {
            return TPoly::zero();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * rat_int(i as i64))
            .collect();
        TPoly::from_coeffs(out)
    }

    /// Substitutes t := a*t + b.
    pub fn substitute_linear(&self, a: &Rat, b: &Rat) -> TPoly {
        let arg = TPoly::from_coeffs(vec![b.clone(), a.clone()]);
        let mut acc = TPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&arg).add(&TPoly::constant(c.clone()));
        }
        acc
    }

    /// Exact euclidean division: self = q * d + r with deg r < deg d.
    ///
    /// Panics if `d` is zero.
    pub fn div_rem(&self, d: &TPoly) -> (TPoly, TPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.coeffs.len() - 1;
        let lead = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let rdeg = rem.len() - 1;
            let c = rem[rdeg].clone() / &lead;
            if !c.is_zero() {
                let shift = rdeg - dd;
                quot[shift] = c.clone();
                for (i, dc) in d.coeffs.iter().enumerate() {
                    rem[shift + i] -= &c * dc;
                }
            }
            rem.pop();
            while rem.last().is_some_and(|x| x.is_zero()) {
                rem.pop();
            }
        }
        (TPoly::from_coeffs(quot), TPoly::from_coeffs(rem))
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn mul_and_eval() {
        // (t+1)(t-1) = t^2 - 1
        let a = TPoly::from_coeffs(vec![rat_int(1), rat_int(1)]);
        let b = TPoly::from_coeffs(vec![rat_int(-1), rat_int(1)]);
        let p = a.mul(&b);
        assert_eq!(p, TPoly::from_coeffs(vec![rat_int(-1), Rat::zero(), rat_int(1)]));
        assert_eq!(p.eval(&rat_int(3)), rat_int(8));
        assert_eq!(p.eval(&rat(1, 2)), rat(-3, 4));
    }

    #[test]
    fn div_rem_exact_and_inexact() {
        let num = TPoly::from_coeffs(vec![Rat::zero(), rat(1, 6), rat(1, 2), rat(1, 3)]);
        let d = TPoly::var();
        let (q, r) = num.div_rem(&d);
        assert!(r.is_zero());
        assert_eq!(q, TPoly::from_coeffs(vec![rat(1, 6), rat(1, 2), rat(1, 3)]));

        let (_, r2) = TPoly::from_coeffs(vec![rat_int(1), rat_int(1)]).div_rem(&d);
        assert_eq!(r2, TPoly::one());
    }

    #[test]
    fn substitute_linear_reflection() {
        // p(t) = t^2 + t, p(-t-1) = t^2 + t
        let p = TPoly::from_coeffs(vec![Rat::zero(), rat_int(1), rat_int(1)]);
        assert_eq!(p.substitute_linear(&rat_int(-1), &rat_int(-1)), p);
    }

    #[test]
    fn derivative_basic() {
        let p = TPoly::from_coeffs(vec![rat_int(5), rat_int(3), rat_int(2)]);
        assert_eq!(
            p.derivative(),
            TPoly::from_coeffs(vec![rat_int(3), rat_int(4)])
        );
    }
}
