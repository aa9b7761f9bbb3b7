//! Exact rational scalars and the special functions the identities need:
//! factorials, odd double factorials, harmonic numbers and generalized
//! binomial coefficients, both with rational and with symbolic-`t` top entry.

mod interp;
mod tpoly;

pub use interp::lagrange_interpolate;
pub use tpoly::TPoly;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::ExactError;

/// Arbitrary-precision integer, the coefficient substrate.
pub type Int = BigInt;
/// Arbitrary-precision rational in lowest terms with positive denominator.
/// The only ground ring of the engine; no rounding ever happens.
pub type Rat = BigRational;

/// Shorthand for a rational from small numerator and denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn factorial(n: u64) -> Int {
    let mut acc = Int::one();
    for i in 2..=n {
        acc *= Int::from(i);
    }
    acc
}

/// Odd double factorial n!! = n(n-2)...3*1.
///
/// Even or nonpositive input is rejected: the identities only ever use odd
/// arguments and a silent 0!!-style extension would hide call-site bugs.
pub fn double_factorial(n: i64) -> Result<Int, ExactError> {
    if n < 1 || n % 2 == 0 {
        return Err(ExactError::EvenDoubleFactorial(n));
    }
    let mut acc = Int::one();
    let mut i = n;
    while i > 1 {
        acc *= Int::from(i);
        i -= 2;
    }
    Ok(acc)
}

/// n-th harmonic number H_n = sum_{i=1}^n 1/i, with H_0 = 0.
pub fn harmonic(n: u64) -> Rat {
    let mut acc = Rat::zero();
    for i in 1..=n {
        acc += Rat::new(Int::one(), Int::from(i));
    }
    acc
}

/// Integer binomial coefficient C(n, k), zero for k > n.
pub fn binom_int(n: u64, k: u64) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut acc = Int::one();
    for i in 0..k {
        acc = acc * Int::from(n - i) / Int::from(i + 1);
    }
    acc
}

/// Generalized binomial C(x, n) = x(x-1)...(x-n+1)/n! with rational top
/// entry. Negative lower index yields zero; this convention bounds the
/// summation ranges of the binomial-sum oracles.
pub fn binom_rat(x: &Rat, n: i64) -> Rat {
    if n < 0 {
        return Rat::zero();
    }
    let mut acc = Rat::one();
    for i in 0..n {
        acc *= x - rat_int(i);
    }
    acc / Rat::from_integer(factorial(n as u64))
}

/// The degree-n polynomial (t+shift)(t+shift-1)...(t+shift-n+1)/n!,
/// i.e. C(t + shift, n) in the symbolic variable t. Zero for n < 0.
pub fn binom_tpoly(shift: &Rat, n: i64) -> TPoly {
    if n < 0 {
        return TPoly::zero();
    }
    let mut acc = TPoly::one();
    for i in 0..n {
        // factor (t + shift - i)
        acc = acc.mul(&TPoly::from_coeffs(vec![shift - rat_int(i), Rat::one()]));
    }
    acc.scale(&Rat::new(Int::one(), factorial(n as u64)))
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign_of(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binom_rat_examples() {
        assert_eq!(binom_rat(&rat(3, 2), 1), rat(3, 2));
        assert_eq!(binom_rat(&rat_int(2), 3), Rat::zero());
        // (13/2 choose 5) = (13*11*9*7*5)/(2^5 * 120)
        assert_eq!(binom_rat(&rat(13, 2), 5), rat(3003, 256));
        assert_eq!(binom_rat(&rat(7, 3), 0), Rat::one());
        assert_eq!(binom_rat(&rat_int(5), -1), Rat::zero());
    }

    #[test]
    fn binom_rat_integer_top() {
        // 0 <= m < n gives 0; m >= n gives m!/(n!(m-n)!)
        for m in 0..4i64 {
            assert_eq!(binom_rat(&rat_int(m), 4), Rat::zero());
        }
        assert_eq!(binom_rat(&rat_int(6), 4), rat_int(15));
    }

    #[test]
    fn double_factorial_examples() {
        assert_eq!(double_factorial(1).unwrap(), Int::from(1));
        assert_eq!(double_factorial(3).unwrap(), Int::from(3));
        assert_eq!(double_factorial(9).unwrap(), Int::from(945));
        assert!(double_factorial(4).is_err());
        assert!(double_factorial(0).is_err());
        assert!(double_factorial(-3).is_err());
    }

    #[test]
    fn harmonic_examples() {
        assert_eq!(harmonic(0), Rat::zero());
        assert_eq!(harmonic(2), rat(3, 2));
        assert_eq!(harmonic(3), rat(11, 6));
    }

    #[test]
    fn harmonic_difference() {
        for n in 1..40u64 {
            assert_eq!(harmonic(n) - harmonic(n - 1), rat(1, n as i64));
        }
    }

    #[test]
    fn binom_tpoly_examples() {
        assert_eq!(binom_tpoly(&Rat::zero(), 1), TPoly::var());
        let half = binom_tpoly(&Rat::zero(), 2);
        assert_eq!(
            half,
            TPoly::from_coeffs(vec![Rat::zero(), rat(-1, 2), rat(1, 2)])
        );
        assert_eq!(
            binom_tpoly(&rat(1, 2), 1),
            TPoly::from_coeffs(vec![rat(1, 2), Rat::one()])
        );
        assert_eq!(binom_tpoly(&Rat::zero(), -2), TPoly::zero());
    }

    #[test]
    fn binom_tpoly_degree() {
        for n in 0..8i64 {
            assert_eq!(binom_tpoly(&rat(5, 3), n).degree(), Some(n as usize));
        }
    }
}
