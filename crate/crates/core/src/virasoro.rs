//! Virasoro Verma-module arithmetic over exact rationals: normal ordering,
//! positive-mode (raising) action, the degree-5 singular vector of the
//! c_{2,p} family, and the fusion indicial polynomial it induces.

use num::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::exact::{rat, rat_int, Rat, TPoly};
use crate::spectrum::h_rs;

/// A basis monomial L(-a_1)...L(-a_k)|h> with a_1 >= ... >= a_k >= 1,
/// recorded as the partition (a_1, ..., a_k).
pub type Partition = Vec<u32>;

fn degree(word: &[u32]) -> u64 {
    word.iter().map(|&a| a as u64).sum()
}

fn add_into(map: &mut BTreeMap<Partition, Rat>, key: Partition, val: Rat) {
    if val.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += val;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(val);
        }
    }
}

/// Rewrites a word of lowering modes L(-w_0)...L(-w_k) in the canonical
/// non-increasing basis using [L(-a), L(-b)] = (b - a) L(-a-b).
fn normal_order(word: &[u32]) -> BTreeMap<Partition, Rat> {
    let mut out = BTreeMap::new();
    match word.windows(2).position(|p| p[0] < p[1]) {
        None => {
            out.insert(word.to_vec(), Rat::one());
        }
        Some(i) => {
            let (a, b) = (word[i], word[i + 1]);
            let mut swapped = word.to_vec();
            swapped.swap(i, i + 1);
            let mut merged = word.to_vec();
            merged[i] = a + b;
            merged.remove(i + 1);
            let k = rat_int(b as i64 - a as i64);
            for (p, v) in normal_order(&swapped) {
                add_into(&mut out, p, v);
            }
            for (p, v) in normal_order(&merged) {
                add_into(&mut out, p, v * &k);
            }
        }
    }
    out
}

/// Applies the raising mode L(m), m >= 1, to a basis monomial in the Verma
/// module of central charge c and lowest weight h, using
/// [L(m), L(-n)] = (m + n) L(m - n) + delta_{m,n} (m^3 - m) c / 12 and
/// L(m)|h> = 0.
fn apply_mode(m: u32, word: &[u32], c: &Rat, h: &Rat) -> BTreeMap<Partition, Rat> {
    let mut out = BTreeMap::new();
    if word.is_empty() {
        return out;
    }
    let n1 = word[0];
    let rest = &word[1..];
    // L(-n1) applied to L(m) acting on the tail
    for (mu, k) in apply_mode(m, rest, c, h) {
        let mut w = Vec::with_capacity(mu.len() + 1);
        w.push(n1);
        w.extend_from_slice(&mu);
        for (nu, k2) in normal_order(&w) {
            add_into(&mut out, nu, &k * &k2);
        }
    }
    // the commutator [L(m), L(-n1)] acting on the tail
    let factor = rat_int(m as i64 + n1 as i64);
    if m == n1 {
        let mi = m as i64;
        let central = rat(mi * mi * mi - mi, 12) * c;
        let l0 = &factor * (h + rat_int(degree(rest) as i64));
        add_into(&mut out, rest.to_vec(), central + l0);
    } else if m > n1 {
        for (mu, k) in apply_mode(m - n1, rest, c, h) {
            add_into(&mut out, mu, k * &factor);
        }
    } else {
        let mut w = Vec::with_capacity(rest.len() + 1);
        w.push(n1 - m);
        w.extend_from_slice(rest);
        for (nu, k2) in normal_order(&w) {
            add_into(&mut out, nu, k2 * &factor);
        }
    }
    out
}

/// An element of the Verma module V(c, h), stored on the canonical
/// partition basis.
#[derive(Clone, PartialEq, Debug)]
pub struct VermaElement {
    pub c: Rat,
    pub h: Rat,
    terms: BTreeMap<Partition, Rat>,
}

impl VermaElement {
    pub fn zero(c: Rat, h: Rat) -> Self {
        VermaElement {
            c,
            h,
            terms: BTreeMap::new(),
        }
    }

    /// The partition must be non-increasing with positive parts.
    pub fn add_term(&mut self, partition: Partition, coeff: Rat) {
        assert!(partition.windows(2).all(|p| p[0] >= p[1]));
        assert!(partition.iter().all(|&a| a >= 1));
        add_into(&mut self.terms, partition, coeff);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, partition: &[u32]) -> Rat {
        self.terms.get(partition).cloned().unwrap_or_else(Rat::zero)
    }

    /// L(m) for m >= 1 applied to the whole element.
    pub fn apply_raising(&self, m: u32) -> VermaElement {
        assert!(m >= 1);
        let mut out = VermaElement::zero(self.c.clone(), self.h.clone());
        for (word, k) in &self.terms {
            for (mu, k2) in apply_mode(m, word, &self.c, &self.h) {
                add_into(&mut out.terms, mu, k * &k2);
            }
        }
        out
    }
}

impl fmt::Display for VermaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (word, k) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", k)?;
            for a in word {
                write!(f, " L(-{})", a)?;
            }
        }
        Ok(())
    }
}

/// The degree-5 singular vector of V(c, h) at c = 1 - 3(p-2)^2/p and
/// h = 3p - 2, normalized so that L(-1)^5 has coefficient 1. The parameter
/// p may be any rational except 0.
pub fn singular_vector_degree5(p: &Rat) -> VermaElement {
    assert!(!p.is_zero());
    let p2 = p * p;
    let p3 = &p2 * p;
    let p4 = &p3 * p;
    let c = Rat::one() - rat_int(3) * (p - rat_int(2)) * (p - rat_int(2)) / p;
    let h = rat_int(3) * p - rat_int(2);
    let mut v = VermaElement::zero(c, h);
    v.add_term(vec![1, 1, 1, 1, 1], Rat::one());
    v.add_term(vec![2, 1, 1, 1], rat_int(-10) * p);
    v.add_term(vec![3, 1, 1], rat_int(21) * &p2 - rat_int(15) * p);
    v.add_term(vec![2, 2, 1], rat_int(16) * &p2);
    v.add_term(
        vec![4, 1],
        rat_int(42) * &p2 - rat_int(18) * p - rat_int(36) * &p3,
    );
    v.add_term(vec![3, 2], rat_int(-24) * &p3 + rat_int(16) * &p2);
    v.add_term(
        vec![5],
        rat_int(36) * &p4 - rat_int(66) * &p3 + rat_int(46) * &p2 - rat_int(12) * p,
    );
    v
}

/// True iff L(1) and L(2) both annihilate the element, which for a
/// homogeneous element is equivalent to being singular.
pub fn is_singular(v: &VermaElement) -> bool {
    v.apply_raising(1).is_zero() && v.apply_raising(2).is_zero()
}

/// Which lowest weight enters the first-order fusion action of a lowering
/// mode: the weight of the module carrying the singular vector, or the
/// weight of the third module in the triple.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WeightRole {
    SingularModule,
    ThirdModule,
}

/// One of the four sign/weight conventions for the induced action
/// L(-k): x^a -> sign * (a - (k - 1) h_w) x^{a-k}.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FusionConvention {
    pub negate: bool,
    pub role: WeightRole,
}

impl FusionConvention {
    pub fn all() -> [FusionConvention; 4] {
        [
            FusionConvention {
                negate: false,
                role: WeightRole::SingularModule,
            },
            FusionConvention {
                negate: false,
                role: WeightRole::ThirdModule,
            },
            FusionConvention {
                negate: true,
                role: WeightRole::SingularModule,
            },
            FusionConvention {
                negate: true,
                role: WeightRole::ThirdModule,
            },
        ]
    }

    pub fn label(&self) -> String {
        format!(
            "sign={}, weight={}",
            if self.negate { "-1" } else { "+1" },
            match self.role {
                WeightRole::SingularModule => "singular-module",
                WeightRole::ThirdModule => "third-module",
            }
        )
    }
}

/// The indicial polynomial in the intermediate lowest weight h obtained by
/// pushing the degree-5 singular vector through the fusion of the weight
/// h_{5,1} module with the weight h_{2n+3,1} module: each monomial
/// L(-a_1)...L(-a_k) acts on x^s, s = h - h_{5,1} - h_{2n+3,1}, by the
/// first-order rule of the chosen convention, rightmost mode first.
pub fn fusion_indicial_polynomial(p: u64, n: u64, conv: FusionConvention) -> TPoly {
    let sv = singular_vector_degree5(&rat_int(p as i64));
    let h1 = h_rs(p, 5, 1);
    let h2 = h_rs(p, 2 * n as i64 + 3, 1);
    let hw = match conv.role {
        WeightRole::SingularModule => h1.clone(),
        WeightRole::ThirdModule => h2.clone(),
    };
    let s0 = -(&h1 + &h2); // exponent starts at h + s0
    let mut total = TPoly::zero();
    for (word, coeff) in sv.terms() {
        let mut a = TPoly::from_coeffs(vec![s0.clone(), Rat::one()]);
        let mut fac = TPoly::one();
        for &k in word.iter().rev() {
            let mut step = a.sub(&TPoly::constant(rat_int(k as i64 - 1) * &hw));
            if conv.negate {
                step = step.neg();
            }
            fac = fac.mul(&step);
            a = a.sub(&TPoly::constant(rat_int(k as i64)));
        }
        total.add_assign(&fac.scale(coeff));
    }
    total
}

/// The five weights h_{2j+1,1}, j = n-1 .. n+3, that the fusion of the
/// h_{5,1} and h_{2n+3,1} modules is expected to select.
pub fn fusion_expected_weights(p: u64, n: u64) -> Vec<Rat> {
    assert!(n >= 1);
    ((n - 1)..=(n + 3))
        .map(|j| h_rs(p, 2 * j as i64 + 1, 1))
        .collect()
}

/// True iff the indicial polynomial has degree 5 and vanishes at every
/// expected weight (the weights are pairwise distinct, so this pins the
/// polynomial up to a constant).
pub fn fusion_roots_match(p: u64, n: u64, conv: FusionConvention) -> bool {
    let poly = fusion_indicial_polynomial(p, n, conv);
    if poly.degree() != Some(5) {
        return false;
    }
    fusion_expected_weights(p, n)
        .iter()
        .all(|w| poly.eval(w).is_zero())
}

/// Runs the convention grid over p in {3, 5} and n in {1, 2, 3} and
/// returns the conventions whose indicial polynomial matches the expected
/// weights in every case.
pub fn surviving_conventions() -> Vec<FusionConvention> {
    FusionConvention::all()
        .into_iter()
        .filter(|&conv| {
            [3u64, 5]
                .iter()
                .all(|&p| (1u64..=3).all(|n| fusion_roots_match(p, n, conv)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_order_swap() {
        // L(-1) L(-2) = L(-2) L(-1) + 1 * L(-3)
        let r = normal_order(&[1, 2]);
        assert_eq!(r.len(), 2);
        assert_eq!(r[&vec![2, 1]], Rat::one());
        assert_eq!(r[&vec![3]], Rat::one());
    }

    #[test]
    fn level_one_raising() {
        // L(1) L(-1)|h> = 2h |h>
        let mut v = VermaElement::zero(rat_int(0), rat(3, 2));
        v.add_term(vec![1], Rat::one());
        let r = v.apply_raising(1);
        assert_eq!(r.coeff(&[]), rat_int(3));
    }

    #[test]
    fn central_term() {
        // L(2) L(-2)|h> = (4h + c/2)|h>
        let mut v = VermaElement::zero(rat_int(7), rat_int(2));
        v.add_term(vec![2], Rat::one());
        let r = v.apply_raising(2);
        assert_eq!(r.coeff(&[]), rat(8 * 2 + 7, 2));
    }

    #[test]
    fn bracket_consistency() {
        // [L(1), L(2)] = -L(3) on a sample element
        let mut v = VermaElement::zero(rat(-22, 5), rat(1, 5));
        v.add_term(vec![3, 2, 1], rat(2, 3));
        v.add_term(vec![4, 1], rat_int(-1));
        v.add_term(vec![5], rat(1, 7));
        let lhs_a = v.apply_raising(2).apply_raising(1);
        let lhs_b = v.apply_raising(1).apply_raising(2);
        let rhs = v.apply_raising(3);
        for (word, k) in rhs.terms() {
            assert_eq!(lhs_a.coeff(word) - lhs_b.coeff(word), -k.clone());
        }
        for (word, _) in lhs_a.terms() {
            assert_eq!(
                lhs_a.coeff(word) - lhs_b.coeff(word),
                -rhs.coeff(word),
                "word {:?}",
                word
            );
        }
    }

    #[test]
    fn degree5_vector_is_singular() {
        for p in [3i64, 5, 7] {
            let v = singular_vector_degree5(&rat_int(p));
            assert!(is_singular(&v), "p = {}", p);
        }
    }

    #[test]
    fn degree5_vector_detects_perturbation() {
        let mut v = singular_vector_degree5(&rat_int(3));
        v.add_term(vec![5], rat(1, 1000));
        assert!(!is_singular(&v));
    }

    #[test]
    fn fusion_unique_convention() {
        let survivors = surviving_conventions();
        assert_eq!(survivors.len(), 1);
        assert_eq!(
            survivors[0],
            FusionConvention {
                negate: true,
                role: WeightRole::ThirdModule
            }
        );
    }

    #[test]
    fn fusion_roots_p3_n1() {
        let w = fusion_expected_weights(3, 1);
        let expect: Vec<Rat> = [0, 2, 7, 15, 26].iter().map(|&x| rat_int(x)).collect();
        assert_eq!(w, expect);
        let conv = FusionConvention {
            negate: true,
            role: WeightRole::ThirdModule,
        };
        let poly = fusion_indicial_polynomial(3, 1, conv);
        assert_eq!(poly.degree(), Some(5));
        for r in &expect {
            assert!(poly.eval(r).is_zero(), "root {}", r);
        }
        // a non-root must not vanish
        assert!(!poly.eval(&rat_int(1)).is_zero());
    }
}
