//! Coarse Hilbert series in the canonical form `P(T) / (1 - T)^m`, with
//! exact coefficient extraction, a terminating non-negativity decision and
//! the Hilbert depth scan `max { r : (1 - T)^r H(T) is non-negative }`.

use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactalg::{binom, factorial, IntPolynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series has no pole at T = 1; its expansion is a polynomial")]
    NoPole,
    #[error("the zero series has no Hilbert depth")]
    ZeroSeries,
    #[error("series has a negative coefficient, so it is not a Hilbert series")]
    NotNonnegative,
}

/// `numer(T) / (1 - T)^den_pow` with `numer(1) != 0` unless the series is zero
/// (in which case `den_pow == 0`). Canonical forms compare syntactically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunctionSeries {
    numer: IntPolynomial,
    den_pow: u32,
}

impl RationalFunctionSeries {
    /// Cancels every removable `(1 - T)` factor between numerator and
    /// denominator.
    pub fn canonicalize(mut numer: IntPolynomial, mut den_pow: u32) -> Self {
        if numer.is_zero() {
            return Self::zero();
        }
        while den_pow > 0 {
            match numer.div_one_minus_t() {
                Some(q) => {
                    numer = q;
                    den_pow -= 1;
                }
                None => break,
            }
        }
        RationalFunctionSeries { numer, den_pow }
    }

    pub fn zero() -> Self {
        RationalFunctionSeries {
            numer: IntPolynomial::zero(),
            den_pow: 0,
        }
    }

    pub fn polynomial(p: IntPolynomial) -> Self {
        Self::canonicalize(p, 0)
    }

    /// `1 / (1 - T)^n`, the series of a free module of rank one.
    pub fn free(n: u32) -> Self {
        RationalFunctionSeries {
            numer: IntPolynomial::one(),
            den_pow: n,
        }
    }

    pub fn numer(&self) -> &IntPolynomial {
        &self.numer
    }

    pub fn den_pow(&self) -> u32 {
        self.den_pow
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    /// `(1 - T)^r H(T)` in canonical form; `r` may be negative.
    pub fn mul_power_one_minus_t(&self, r: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let m = self.den_pow as i64;
        if r <= m {
            let den_pow = u32::try_from(m - r).expect("denominator exponent overflow");
            RationalFunctionSeries {
                numer: self.numer.clone(),
                den_pow,
            }
        } else {
            let surplus = u32::try_from(r - m).expect("exponent overflow");
            RationalFunctionSeries {
                numer: &self.numer * &IntPolynomial::one_minus_t_pow(surplus),
                den_pow: 0,
            }
        }
    }

    /// Coefficient of `T^k`: `sum_j P_j C(m-1+k-j, m-1)` for `m >= 1`,
    /// `P_k` for `m = 0`.
    pub fn coefficient(&self, k: usize) -> BigInt {
        if self.den_pow == 0 {
            return self.numer.coeff(k);
        }
        let m = self.den_pow as i64;
        self.numer
            .coeffs()
            .iter()
            .enumerate()
            .take(k + 1)
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| c * binom(m - 1 + k as i64 - j as i64, m - 1))
            .sum()
    }

    /// Coefficients of `T^0 ..= T^upto`.
    pub fn coefficients(&self, upto: usize) -> Vec<BigInt> {
        (0..=upto).map(|k| self.coefficient(k)).collect()
    }

    /// Closed form of `coefficient(k)` valid for every `k >= deg numer`.
    pub fn eventual_polynomial(&self) -> Result<EventualPolynomial, SeriesError> {
        if self.den_pow == 0 {
            return Err(SeriesError::NoPole);
        }
        let m = self.den_pow as i64;
        // C(m-1+k-j, m-1) = (k-j+1)(k-j+2)...(k-j+m-1) / (m-1)!
        let mut scaled = IntPolynomial::zero();
        for (j, c) in self.numer.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let j = j as i64;
            let mut term = IntPolynomial::constant(c.clone());
            for i in 1..m {
                term = &term * &IntPolynomial::new(vec![BigInt::from(i - j), BigInt::one()]);
            }
            scaled = &scaled + &term;
        }
        Ok(EventualPolynomial {
            threshold: self.numer.degree().unwrap_or(0),
            scaled,
            denom: factorial((m - 1) as u64),
        })
    }

    /// Decides whether every power-series coefficient is `>= 0`.
    pub fn is_nonnegative(&self) -> bool {
        let threshold = self.numer.degree().unwrap_or(0);
        if (0..=threshold).any(|k| self.coefficient(k).is_negative()) {
            return false;
        }
        if self.den_pow == 0 {
            return true;
        }
        self.tail_differences_nonnegative(threshold) || self.tail_within_root_bound(threshold)
    }

    /// Checks `q(k) >= 0` for `threshold < k <= B`, with `B` a bound on the
    /// roots of the eventual polynomial `q`; past `B`, `q` has the sign of its
    /// leading coefficient.
    fn tail_within_root_bound(&self, threshold: usize) -> bool {
        let q = self
            .eventual_polynomial()
            .expect("den_pow >= 1 has an eventual polynomial");
        let Some(lead) = q.scaled.leading_coefficient() else {
            return true;
        };
        if lead.is_negative() {
            return false;
        }
        let bound = fujiwara_bound(&q.scaled);
        let start = BigInt::from(threshold as u64 + 1);
        let mut k = start;
        while k <= bound {
            if q.scaled.eval(&k).is_negative() {
                return false;
            }
            k += 1;
        }
        true
    }

    /// Sufficient test for the tail: with `c_k` the coefficients, Newton's
    /// forward formula gives `c_{D+j} = sum_i C(j, i) diff^i c_D` for `j >= 0`,
    /// so non-negative differences `diff^0 .. diff^{m-1}` at `D` settle it.
    fn tail_differences_nonnegative(&self, threshold: usize) -> bool {
        let mut row: Vec<BigInt> = (threshold..threshold + self.den_pow as usize)
            .map(|k| self.coefficient(k))
            .collect();
        while let Some(first) = row.first() {
            if first.is_negative() {
                return false;
            }
            row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        true
    }

    /// Largest `r` such that `(1 - T)^r H(T)` is non-negative.
    ///
    /// For `r > den_pow` the product is a nonzero polynomial whose
    /// coefficients sum to zero, so it has a negative coefficient; the scan
    /// therefore stops at `den_pow`.
    pub fn hilbert_depth(&self) -> Result<u32, SeriesError> {
        if self.is_zero() {
            return Err(SeriesError::ZeroSeries);
        }
        if !self.is_nonnegative() {
            return Err(SeriesError::NotNonnegative);
        }
        let mut depth = 0;
        for r in 1..=self.den_pow {
            if !self.mul_power_one_minus_t(r as i64).is_nonnegative() {
                break;
            }
            depth = r;
        }
        Ok(depth)
    }

    fn lift(&self, den_pow: u32) -> IntPolynomial {
        &self.numer * &IntPolynomial::one_minus_t_pow(den_pow - self.den_pow)
    }
}

/// Upper bound on the modulus of every complex root of `p`:
/// `2 max_i |a_{d-i} / a_d|^{1/i}`, with every term rounded up to an integer.
fn fujiwara_bound(p: &IntPolynomial) -> BigInt {
    let Some(deg) = p.degree() else {
        return BigInt::zero();
    };
    let lead = p.coeff(deg).abs();
    let mut best = BigInt::zero();
    for i in 1..=deg {
        let a = p.coeff(deg - i).abs();
        if a.is_zero() {
            continue;
        }
        let ratio = a.div_ceil(&lead);
        let mut root = ratio.nth_root(i as u32);
        if root.pow(i as u32) < ratio {
            root += 1;
        }
        best = best.max(root);
    }
    best * 2
}

impl fmt::Debug for RationalFunctionSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunctionSeries({self})")
    }
}

impl fmt::Display for RationalFunctionSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.den_pow {
            0 => write!(f, "{}", self.numer),
            1 => write!(f, "({}) / (1 - T)", self.numer),
            m => write!(f, "({}) / (1 - T)^{m}", self.numer),
        }
    }
}

impl Add for &RationalFunctionSeries {
    type Output = RationalFunctionSeries;

    fn add(self, rhs: &RationalFunctionSeries) -> RationalFunctionSeries {
        let m = self.den_pow.max(rhs.den_pow);
        RationalFunctionSeries::canonicalize(&self.lift(m) + &rhs.lift(m), m)
    }
}

impl Sub for &RationalFunctionSeries {
    type Output = RationalFunctionSeries;

    fn sub(self, rhs: &RationalFunctionSeries) -> RationalFunctionSeries {
        let m = self.den_pow.max(rhs.den_pow);
        RationalFunctionSeries::canonicalize(&self.lift(m) - &rhs.lift(m), m)
    }
}

/// Polynomial `q` with `q(k) = coefficient(k)` for every `k >= threshold`.
/// Stored as an integer polynomial over a common denominator `(m-1)!`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventualPolynomial {
    threshold: usize,
    scaled: IntPolynomial,
    denom: BigInt,
}

impl EventualPolynomial {
    pub fn threshold(&self) -> usize {
        self.threshold
    }

    /// Coefficients of `q` in increasing powers of `k`, reduced.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.scaled
            .coeffs()
            .iter()
            .map(|c| Rational::new(c.clone(), self.denom.clone()))
            .collect()
    }

    pub fn degree(&self) -> Option<usize> {
        self.scaled.degree()
    }

    pub fn leading_coefficient(&self) -> Option<Rational> {
        self.scaled
            .leading_coefficient()
            .map(|c| Rational::new(c.clone(), self.denom.clone()))
    }

    pub fn eval(&self, k: i64) -> Rational {
        Rational::new(self.scaled.eval(&BigInt::from(k)), self.denom.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn series(c: &[i64], m: u32) -> RationalFunctionSeries {
        RationalFunctionSeries::canonicalize(poly(c), m)
    }

    /// Expansion by `m`-fold iterated prefix sums of the numerator.
    fn prefix_sum_oracle(h: &RationalFunctionSeries, len: usize) -> Vec<BigInt> {
        let mut seq: Vec<BigInt> = (0..len).map(|i| h.numer().coeff(i)).collect();
        for _ in 0..h.den_pow() {
            seq = IntPolynomial::new(seq.clone()).prefix_sums(len);
        }
        seq
    }

    fn veronese_3_2() -> RationalFunctionSeries {
        series(&[0, 0, 3, -2], 3)
    }

    #[test]
    fn canonicalize_examples() {
        let h = series(&[1, -1], 2);
        assert_eq!((h.numer().clone(), h.den_pow()), (poly(&[1]), 1));
        let h = series(&[0, 1, -1], 3);
        assert_eq!((h.numer().clone(), h.den_pow()), (poly(&[0, 1]), 2));
        let numer = &IntPolynomial::one() - &(&poly(&[1, 3]) * &IntPolynomial::one_minus_t_pow(3));
        let h = RationalFunctionSeries::canonicalize(numer, 3);
        assert_eq!((h.numer().clone(), h.den_pow()), (poly(&[0, 0, 6, -8, 3]), 3));
    }

    #[test]
    fn canonicalize_keeps_excess_factors_in_numerator() {
        let h = series(&[1, -2, 1], 1);
        assert_eq!((h.numer().clone(), h.den_pow()), (poly(&[1, -1]), 0));
        assert_eq!(series(&[0, 0], 4), RationalFunctionSeries::zero());
    }

    #[test]
    fn mul_power_examples() {
        let h = veronese_3_2();
        assert_eq!(h.mul_power_one_minus_t(2), series(&[0, 0, 3, -2], 1));
        assert_eq!(h.mul_power_one_minus_t(3), series(&[0, 0, 3, -2], 0));
        assert_eq!(h.mul_power_one_minus_t(-1), series(&[0, 0, 3, -2], 4));
        assert_eq!(h.mul_power_one_minus_t(4), series(&[0, 0, 3, -5, 2], 0));
    }

    #[test]
    fn coefficient_examples() {
        let h = veronese_3_2();
        assert_eq!(h.coefficient(3), big(7));
        assert_eq!(h.coefficient(4), big(12));
        assert_eq!(h.coefficients(5), [0, 0, 3, 7, 12, 18].map(big).to_vec());
        for n in 1..8u32 {
            let free = RationalFunctionSeries::free(n);
            for k in 0..15 {
                assert_eq!(free.coefficient(k), binom(n as i64 + k as i64 - 1, k as i64));
            }
        }
    }

    #[test]
    fn eventual_polynomial_examples() {
        let q = veronese_3_2().eventual_polynomial().unwrap();
        assert_eq!(q.threshold(), 3);
        // (k - 1)(k + 4) / 2 = (k^2 + 3k - 4) / 2
        let half = |v: i64| Rational::new(big(v), big(2));
        assert_eq!(q.coeffs(), vec![half(-4), half(3), half(1)]);
        assert_eq!(q.eval(4), Rational::from_integer(big(12)));
        assert_eq!(q.leading_coefficient(), Some(half(1)));

        let q = RationalFunctionSeries::free(1).eventual_polynomial().unwrap();
        assert_eq!(q.threshold(), 0);
        assert_eq!(q.coeffs(), vec![Rational::one()]);

        let q = series(&[0, 0, 1], 2).eventual_polynomial().unwrap();
        assert_eq!(q.threshold(), 2);
        assert_eq!(q.coeffs(), vec![Rational::from_integer(big(-1)), Rational::one()]);

        assert_eq!(
            series(&[1, 2], 0).eventual_polynomial(),
            Err(SeriesError::NoPole)
        );
    }

    #[test]
    fn nonnegativity_examples() {
        assert!(!series(&[0, 0, 3, -2], 0).is_nonnegative());
        assert!(series(&[0, 0, 3, -2], 2).is_nonnegative());
        assert!(series(&[0, 0, 3, -2], 1).is_nonnegative());
        assert!(RationalFunctionSeries::zero().is_nonnegative());
    }

    #[test]
    fn nonnegativity_catches_late_negative_tail() {
        // Head coefficient -1, tail constant 1.
        assert!(!series(&[-1, 2], 1).is_nonnegative());
        // (1 - 3T + 3T^2)/(1-T)^3 has coefficients 1, 0, 1, 3, ... -> the
        // eventual polynomial (k^2 - k + 2)/2 > 0.
        assert!(series(&[1, -3, 3], 3).is_nonnegative());
        // Coefficients (k - 4)(k - 6): 24, 15, 8, 3, 0, -1, 0, 3, ...; the only
        // negative one lies past deg numer = 2, and the difference test at
        // k = 2 is inconclusive.
        let h = series(&[24, -57, 35], 3);
        assert_eq!(h.coefficient(5), big(-1));
        assert!((0..=2).all(|k| h.coefficient(k).is_positive()));
        assert!(!h.is_nonnegative());
        // Coefficients (k - 4)^2: touches zero but never goes below.
        let h = series(&[16, -39, 25], 3);
        assert_eq!(h.coefficient(4), big(0));
        assert!(!h.tail_differences_nonnegative(2));
        assert!(h.is_nonnegative());
    }

    #[test]
    fn depth_examples() {
        for n in 1..10 {
            assert_eq!(RationalFunctionSeries::free(n).hilbert_depth(), Ok(n));
        }
        assert_eq!(series(&[0, 0, 6, -8, 3], 3).hilbert_depth(), Ok(1));
        assert_eq!(veronese_3_2().hilbert_depth(), Ok(2));
        assert_eq!(
            RationalFunctionSeries::zero().hilbert_depth(),
            Err(SeriesError::ZeroSeries)
        );
        assert_eq!(
            series(&[1, -2], 0).hilbert_depth(),
            Err(SeriesError::NotNonnegative)
        );
    }

    #[test]
    fn equality_examples() {
        let h = veronese_3_2();
        assert_eq!(h, h.clone());
        assert_ne!(RationalFunctionSeries::free(1), RationalFunctionSeries::free(2));
    }

    #[test]
    fn both_tail_tests_agree_on_family_series() {
        use crate::ideals::{max_power_series, veronese_series};
        for n in 1..=14 {
            for p in 1..=n {
                for h in [veronese_series(n, p).unwrap(), max_power_series(n, p).unwrap()] {
                    for r in 0..=h.den_pow() as i64 {
                        let g = h.mul_power_one_minus_t(r);
                        let d = g.numer().degree().unwrap_or(0);
                        let head = (0..=d).all(|k| !g.coefficient(k).is_negative());
                        let by_bound = head && (g.den_pow() == 0 || g.tail_within_root_bound(d));
                        assert_eq!(g.is_nonnegative(), by_bound, "n={n} p={p} r={r}");
                    }
                }
            }
        }
    }

    #[test]
    fn fujiwara_bound_covers_roots() {
        // (k - 5)(k + 7) = k^2 + 2k - 35
        let b = fujiwara_bound(&poly(&[-35, 2, 1]));
        assert!(b >= big(7), "{b}");
    }

    fn arb_series() -> impl Strategy<Value = RationalFunctionSeries> {
        (prop::collection::vec(-20i64..20, 0..8), 0u32..7)
            .prop_map(|(c, m)| RationalFunctionSeries::canonicalize(IntPolynomial::from_i64s(&c), m))
    }

    proptest! {
        #[test]
        fn expansion_matches_prefix_sums(h in arb_series()) {
            prop_assert_eq!(h.coefficients(50), prefix_sum_oracle(&h, 51));
        }

        #[test]
        fn eventual_polynomial_agrees(h in arb_series()) {
            prop_assume!(h.den_pow() >= 1);
            let q = h.eventual_polynomial().unwrap();
            for k in q.threshold()..=q.threshold() + 20 {
                prop_assert_eq!(q.eval(k as i64), Rational::from_integer(h.coefficient(k)));
            }
            if let Some(lead) = q.leading_coefficient() {
                prop_assert_eq!(q.degree(), Some(h.den_pow() as usize - 1));
                let expected = Rational::new(
                    h.numer().eval_at_one(),
                    factorial(h.den_pow() as u64 - 1),
                );
                prop_assert_eq!(lead, expected);
            }
        }

        #[test]
        fn canonicalize_idempotent(c in prop::collection::vec(-20i64..20, 0..8), m in 0u32..7) {
            let once = RationalFunctionSeries::canonicalize(IntPolynomial::from_i64s(&c), m);
            let twice = RationalFunctionSeries::canonicalize(once.numer().clone(), once.den_pow());
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn addition_is_coefficientwise(a in arb_series(), b in arb_series()) {
            let sum = &a + &b;
            let diff = &a - &b;
            for k in 0..30 {
                prop_assert_eq!(sum.coefficient(k), a.coefficient(k) + b.coefficient(k));
                prop_assert_eq!(diff.coefficient(k), a.coefficient(k) - b.coefficient(k));
            }
        }

        #[test]
        fn nonnegativity_agrees_with_long_prefix(h in arb_series()) {
            // A long window of coefficients cannot contradict a `true` verdict.
            if h.is_nonnegative() {
                prop_assert!(h.coefficients(200).iter().all(|c| !c.is_negative()));
            }
        }

        #[test]
        fn difference_test_never_contradicts_root_bound(h in arb_series()) {
            prop_assume!(h.den_pow() >= 1);
            let d = h.numer().degree().unwrap_or(0);
            if h.tail_differences_nonnegative(d) {
                prop_assert!(h.tail_within_root_bound(d));
            }
        }

        #[test]
        fn nonnegativity_monotone_in_r(h in arb_series(), r in 1i64..8) {
            if h.mul_power_one_minus_t(r).is_nonnegative() {
                prop_assert!(h.mul_power_one_minus_t(r - 1).is_nonnegative());
            }
        }
    }
}
