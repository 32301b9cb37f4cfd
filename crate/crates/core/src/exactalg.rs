//! Exact integer arithmetic: generalized binomial coefficients and dense
//! integer polynomials in one formal variable `T`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Integer = BigInt;
pub type Rational = num_rational::BigRational;

/// Generalized binomial coefficient `a (a-1) ... (a-b+1) / b!`.
///
/// Defined for every integer `a`, so negative upper arguments follow
/// `C(-a, b) = (-1)^b C(a+b-1, b)` without special-casing.
pub fn binomial(a: &BigInt, b: u64) -> BigInt {
    if b == 0 {
        return BigInt::one();
    }
    if !a.is_negative() && *a < BigInt::from(b) {
        return BigInt::zero();
    }
    // For a >= b use the shorter of the two symmetric products.
    let b = if !a.is_negative() {
        let other = a - BigInt::from(b);
        if other < BigInt::from(b) {
            u64::try_from(&other).unwrap_or(b)
        } else {
            b
        }
    } else {
        b
    };
    let mut acc = BigInt::one();
    for i in 0..b {
        // acc == C(a, i) here; the division below is exact.
        acc *= a - BigInt::from(i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

type BinomialMemo = RwLock<HashMap<(i64, u64), BigInt>>;

fn memo() -> &'static BinomialMemo {
    static MEMO: OnceLock<BinomialMemo> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Memoized [`binomial`] on machine integers. A negative lower argument
/// yields 0, which keeps index arithmetic in summations simple.
pub fn binom(a: i64, b: i64) -> BigInt {
    if b < 0 {
        return BigInt::zero();
    }
    let key = (a, b as u64);
    if let Some(v) = memo().read().expect("binomial memo poisoned").get(&key) {
        return v.clone();
    }
    let v = binomial(&BigInt::from(a), b as u64);
    memo()
        .write()
        .expect("binomial memo poisoned")
        .insert(key, v.clone());
    v
}

/// `n!` for a machine integer `n`.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Polynomial with integer coefficients, stored densely by exponent.
/// Trailing zeros are always trimmed, so the zero polynomial has no
/// coefficients and no degree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c T^exp`
    pub fn monomial(c: BigInt, exp: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); exp + 1];
        coeffs[exp] = c;
        Self::new(coeffs)
    }

    /// `(1 - T)^e`
    pub fn one_minus_t_pow(e: u32) -> Self {
        Self::new(
            (0..=e as i64)
                .map(|j| {
                    let c = binom(e as i64, j);
                    if j % 2 == 0 {
                        c
                    } else {
                        -c
                    }
                })
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `T^i`, zero outside the support.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Sum of all coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Horner evaluation at an integer point.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `T^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    /// Divide by `T^k`, or `None` if some coefficient below `T^k` is nonzero.
    pub fn unshift(&self, k: usize) -> Option<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(self.coeffs.iter().skip(k).cloned().collect()))
    }

    /// Exact quotient by `(1 - T)`, or `None` when `T = 1` is not a root.
    pub fn div_one_minus_t(&self) -> Option<Self> {
        if !self.eval_at_one().is_zero() {
            return None;
        }
        // P = (1 - T) Q makes Q the prefix sums of P; the last sum is P(1) = 0.
        let mut acc = BigInt::zero();
        let mut q = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            acc += c;
            q.push(acc.clone());
        }
        q.pop();
        Some(Self::new(q))
    }

    /// First `len` entries of the prefix-sum sequence, i.e. the expansion of
    /// `P(T) / (1 - T)` truncated to `len` terms.
    pub fn prefix_sums(&self, len: usize) -> Vec<BigInt> {
        let mut acc = BigInt::zero();
        (0..len)
            .map(|i| {
                acc += self.coeff(i);
                acc.clone()
            })
            .collect()
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    write!(f, "T")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $method(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&IntPolynomial> for IntPolynomial {
            type Output = IntPolynomial;
            fn $method(self, rhs: &IntPolynomial) -> IntPolynomial {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        -&self
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

    /// Pascal's triangle built with additions only.
    fn pascal_row(n: usize) -> Vec<BigInt> {
        let mut row = vec![BigInt::one()];
        for _ in 0..n {
            let mut next = vec![BigInt::one(); row.len() + 1];
            for i in 1..row.len() {
                next[i] = &row[i - 1] + &row[i];
            }
            row = next;
        }
        row
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(&big(5), 2), big(10));
        for a in [-7, -1, 0, 3, 100] {
            assert_eq!(binomial(&big(a), 0), big(1));
        }
        assert_eq!(binomial(&big(-3), 1), big(-3));
        assert_eq!(binomial(&big(-3), 1), -binomial(&big(3), 1));
        assert_eq!(binomial(&big(3), 5), big(0));
        assert_eq!(binomial(&big(0), 1), big(0));
    }

    #[test]
    fn binomial_matches_pascal_triangle_up_to_128() {
        let row = pascal_row(128);
        for (k, expected) in row.iter().enumerate() {
            assert_eq!(&binomial(&big(128), k as u64), expected, "C(128,{k})");
            assert_eq!(&binom(128, k as i64), expected);
        }
    }

    #[test]
    fn binom_negative_lower_is_zero() {
        assert_eq!(binom(5, -1), big(0));
    }

    #[test]
    fn pascal_recurrence_on_grid() {
        for a in -50..=50i64 {
            for b in 1..=50i64 {
                assert_eq!(
                    binom(a, b),
                    binom(a - 1, b - 1) + binom(a - 1, b),
                    "a={a} b={b}"
                );
            }
        }
    }

    #[test]
    fn sign_law_on_grid() {
        for a in 1..=40i64 {
            for b in 0..=40i64 {
                let sign = if b % 2 == 0 { big(1) } else { big(-1) };
                assert_eq!(binom(-a, b), sign * binom(a + b - 1, b), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn poly_mul_examples() {
        let p = poly(&[1, 3]);
        let cube = IntPolynomial::one_minus_t_pow(3);
        assert_eq!(cube, poly(&[1, -3, 3, -1]));
        assert_eq!(&p * &cube, poly(&[1, 0, -6, 8, -3]));
        assert_eq!(&p * &IntPolynomial::one(), p);
        assert!((&p * &IntPolynomial::zero()).is_zero());
    }

    #[test]
    fn eval_at_one_examples() {
        assert_eq!(poly(&[0, 0, 3, -2]).eval_at_one(), big(1));
        assert_eq!(IntPolynomial::one_minus_t_pow(3).eval_at_one(), big(0));
        assert_eq!(IntPolynomial::zero().eval_at_one(), big(0));
    }

    #[test]
    fn trimming_and_degree() {
        let p = poly(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(poly(&[0, 0]).degree(), None);
        assert!(poly(&[0]).is_zero());
    }

    #[test]
    fn division_by_one_minus_t() {
        let p = poly(&[0, 1, -1]);
        assert_eq!(p.div_one_minus_t(), Some(poly(&[0, 1])));
        assert_eq!(poly(&[1, 1]).div_one_minus_t(), None);
        assert_eq!(IntPolynomial::zero().div_one_minus_t(), Some(IntPolynomial::zero()));
    }

    #[test]
    fn shifts() {
        let p = poly(&[1, 2]);
        assert_eq!(p.shift(2), poly(&[0, 0, 1, 2]));
        assert_eq!(p.shift(2).unshift(2), Some(p.clone()));
        assert_eq!(p.unshift(1), None);
    }

    #[test]
    fn display() {
        assert_eq!(poly(&[0, 0, 3, -2]).to_string(), "3T^2 - 2T^3");
        assert_eq!(poly(&[-1, 1]).to_string(), "-1 + T");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    fn arb_poly() -> impl Strategy<Value = IntPolynomial> {
        prop::collection::vec(-1000i64..1000, 0..12).prop_map(|c| IntPolynomial::from_i64s(&c))
    }

    proptest! {
        #[test]
        fn mul_commutative_and_associative(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        }

        #[test]
        fn eval_at_one_is_multiplicative(p in arb_poly(), q in arb_poly()) {
            prop_assert_eq!((&p * &q).eval_at_one(), p.eval_at_one() * q.eval_at_one());
        }

        #[test]
        fn one_minus_t_division_inverts_multiplication(p in arb_poly()) {
            let prod = &p * &IntPolynomial::one_minus_t_pow(1);
            prop_assert_eq!(prod.div_one_minus_t(), Some(p));
        }
    }
}
