//! Fine (multigraded) Hilbert series truncated to an exponent box, and the
//! brute-force membership oracles they are checked against.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactalg::binom;
use crate::ideals::{IdealError, IdealSpec};

/// Largest number of variables a box expansion accepts.
pub const MAX_BOX_VARS: usize = 5;
/// Largest per-variable exponent bound a box expansion accepts.
pub const MAX_BOX_BOUND: u32 = 6;
/// Largest number of monomials the Hilbert function oracle will enumerate.
pub const MAX_ENUMERATION: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultigradeError {
    #[error("exponent vector has {got} entries, ideal lives in {expected} variables")]
    LengthMismatch { expected: usize, got: usize },
    #[error("box of {vars} variables with bound {bound} exceeds {MAX_BOX_VARS} variables / bound {MAX_BOX_BOUND}")]
    BoxTooLarge { vars: usize, bound: u32 },
    #[error("enumerating {count} monomials exceeds the limit of {MAX_ENUMERATION}")]
    EnumerationTooLarge { count: BigInt },
    #[error("series shapes differ")]
    ShapeMismatch,
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(pub Vec<u32>);

impl ExponentVector {
    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&a| a as u64).sum()
    }

    pub fn support_size(&self) -> usize {
        self.0.iter().filter(|&&a| a > 0).count()
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Compositions of `total` into `parts` non-negative parts, in increasing
/// lexicographic order.
#[derive(Debug, Clone)]
pub struct Compositions {
    current: Option<Vec<u32>>,
}

impl Compositions {
    pub fn new(parts: usize, total: u32) -> Self {
        let current = if parts == 0 {
            (total == 0).then(Vec::new)
        } else {
            let mut first = vec![0; parts];
            first[parts - 1] = total;
            Some(first)
        };
        Compositions { current }
    }
}

impl Iterator for Compositions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.take()?;
        let last_nonzero = out.iter().rposition(|&a| a > 0);
        if let Some(j) = last_nonzero.filter(|&j| j > 0) {
            let mut next = out.clone();
            let rest = next[j];
            next[j] = 0;
            next[j - 1] += 1;
            let len = next.len();
            next[len - 1] = rest - 1;
            self.current = Some(next);
        }
        Some(out)
    }
}

/// Whether `x^alpha` lies in the ideal.
pub fn membership(spec: &IdealSpec, alpha: &ExponentVector) -> Result<bool, MultigradeError> {
    spec.validate()?;
    let expected = spec.ambient_vars() as usize;
    if alpha.0.len() != expected {
        return Err(MultigradeError::LengthMismatch {
            expected,
            got: alpha.0.len(),
        });
    }
    Ok(match *spec {
        IdealSpec::Veronese { d, .. } => alpha.support_size() >= d as usize,
        IdealSpec::MaxPower { s, .. } | IdealSpec::HatPower { s, .. } => {
            alpha.total_degree() >= s as u64
        }
        IdealSpec::GeneratedHatPower { n, t, s } => {
            let head = (n - t + 1) as usize;
            alpha.0[..head].iter().map(|&a| a as u64).sum::<u64>() >= s as u64
        }
    })
}

/// Number of degree-`k` monomials in the ideal, by enumerating every
/// composition of `k`.
pub fn hilbert_function_oracle(spec: &IdealSpec, k: u32) -> Result<BigInt, MultigradeError> {
    spec.validate()?;
    let vars = spec.ambient_vars() as usize;
    let count = binom(k as i64 + vars as i64 - 1, vars as i64 - 1);
    if count > BigInt::from(MAX_ENUMERATION) {
        return Err(MultigradeError::EnumerationTooLarge { count });
    }
    let mut hits = 0u64;
    for alpha in Compositions::new(vars, k) {
        if membership(spec, &ExponentVector(alpha))? {
            hits += 1;
        }
    }
    Ok(BigInt::from(hits))
}

/// Dense multivariate series truncated to the box `[0, bound]^num_vars`,
/// stored in lexicographic order of exponent vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiSeries {
    num_vars: usize,
    bound: u32,
    coeffs: Vec<BigInt>,
}

impl MultiSeries {
    pub fn zero(num_vars: usize, bound: u32) -> Self {
        let len = (bound as usize + 1).pow(num_vars as u32);
        MultiSeries {
            num_vars,
            bound,
            coeffs: vec![BigInt::zero(); len],
        }
    }

    pub fn one(num_vars: usize, bound: u32) -> Self {
        let mut s = Self::zero(num_vars, bound);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// `T^alpha`, or zero when `alpha` leaves the box.
    pub fn monomial(num_vars: usize, bound: u32, alpha: &[u32]) -> Self {
        let mut s = Self::zero(num_vars, bound);
        if let Some(i) = s.index(alpha) {
            s.coeffs[i] = BigInt::one();
        }
        s
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    fn stride(&self, var: usize) -> usize {
        (self.bound as usize + 1).pow((self.num_vars - 1 - var) as u32)
    }

    fn index(&self, alpha: &[u32]) -> Option<usize> {
        if alpha.len() != self.num_vars || alpha.iter().any(|&a| a > self.bound) {
            return None;
        }
        let base = self.bound as usize + 1;
        Some(alpha.iter().fold(0, |acc, &a| acc * base + a as usize))
    }

    fn exponent(&self, mut index: usize) -> Vec<u32> {
        let base = self.bound as usize + 1;
        let mut alpha = vec![0; self.num_vars];
        for slot in alpha.iter_mut().rev() {
            *slot = (index % base) as u32;
            index /= base;
        }
        alpha
    }

    /// Coefficient at `alpha`; zero outside the box.
    pub fn get(&self, alpha: &[u32]) -> BigInt {
        self.index(alpha)
            .map(|i| self.coeffs[i].clone())
            .unwrap_or_default()
    }

    /// Every `(alpha, coefficient)` pair in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (ExponentVector, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (ExponentVector(self.exponent(i)), c))
    }

    /// Multiplies by `1 - T_var`.
    pub fn mul_one_minus(&self, var: usize) -> Self {
        let stride = self.stride(var);
        let mut out = self.clone();
        for i in 0..self.coeffs.len() {
            if !(i / stride).is_multiple_of(self.bound as usize + 1) {
                out.coeffs[i] -= &self.coeffs[i - stride];
            }
        }
        out
    }

    /// Multiplies by `T_var`, dropping what leaves the box.
    pub fn mul_var(&self, var: usize) -> Self {
        let stride = self.stride(var);
        let mut out = Self::zero(self.num_vars, self.bound);
        for i in 0..self.coeffs.len() {
            if !(i / stride).is_multiple_of(self.bound as usize + 1) {
                out.coeffs[i] = self.coeffs[i - stride].clone();
            }
        }
        out
    }

    /// Multiplies by `(1 - T_var)^{-1}`: prefix sums along one axis, which is
    /// exact modulo `T_var^{bound+1}`.
    pub fn mul_geometric(&self, var: usize) -> Self {
        let stride = self.stride(var);
        let mut out = self.clone();
        for i in 0..self.coeffs.len() {
            if !(i / stride).is_multiple_of(self.bound as usize + 1) {
                let prev = out.coeffs[i - stride].clone();
                out.coeffs[i] += prev;
            }
        }
        out
    }

    /// Truncated product.
    pub fn mul(&self, rhs: &MultiSeries) -> Result<Self, MultigradeError> {
        self.check_shape(rhs)?;
        let mut out = Self::zero(self.num_vars, self.bound);
        let nonzero: Vec<(Vec<u32>, &BigInt)> = rhs
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (rhs.exponent(i), c))
            .collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let alpha = self.exponent(i);
            for (beta, b) in &nonzero {
                let sum: Vec<u32> = alpha.iter().zip(beta).map(|(x, y)| x + y).collect();
                if let Some(j) = out.index(&sum) {
                    out.coeffs[j] += a * *b;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &MultiSeries) -> Result<Self, MultigradeError> {
        self.check_shape(rhs)?;
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        Ok(MultiSeries { coeffs, ..*self })
    }

    pub fn sub(&self, rhs: &MultiSeries) -> Result<Self, MultigradeError> {
        self.check_shape(rhs)?;
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        Ok(MultiSeries { coeffs, ..*self })
    }

    /// Regards the series as one in `num_vars >= self.num_vars` variables,
    /// the existing ones first.
    pub fn embed(&self, num_vars: usize) -> Self {
        assert!(num_vars >= self.num_vars, "cannot embed into fewer variables");
        let mut out = Self::zero(num_vars, self.bound);
        let pad = vec![0; num_vars - self.num_vars];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut alpha = self.exponent(i);
            alpha.extend_from_slice(&pad);
            let j = out.index(&alpha).expect("embedded exponent stays in box");
            out.coeffs[j] = c.clone();
        }
        out
    }

    /// Sum of coefficients of total degree `k`: the coarse coefficient after
    /// setting every `T_i = T`. Complete only for `k <= bound`.
    pub fn total_degree_sum(&self, k: u64) -> BigInt {
        self.iter()
            .filter(|(alpha, _)| alpha.total_degree() == k)
            .map(|(_, c)| c.clone())
            .sum()
    }

    fn check_shape(&self, rhs: &MultiSeries) -> Result<(), MultigradeError> {
        if self.num_vars != rhs.num_vars || self.bound != rhs.bound {
            return Err(MultigradeError::ShapeMismatch);
        }
        Ok(())
    }
}

impl fmt::Debug for MultiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut map = f.debug_map();
        for (alpha, c) in self.iter().filter(|(_, c)| !c.is_zero()) {
            map.entry(&alpha.to_string(), &c.to_string());
        }
        map.finish()
    }
}

fn check_box(spec: &IdealSpec, bound: u32) -> Result<usize, MultigradeError> {
    spec.validate()?;
    let vars = spec.ambient_vars() as usize;
    if vars > MAX_BOX_VARS || bound > MAX_BOX_BOUND {
        return Err(MultigradeError::BoxTooLarge { vars, bound });
    }
    Ok(vars)
}

/// `prod_i (1 - T_i)^{-1}` over the box.
fn all_monomials(num_vars: usize, bound: u32) -> MultiSeries {
    (0..num_vars).fold(MultiSeries::one(num_vars, bound), |acc, i| acc.mul_geometric(i))
}

/// `prod_i (1-T_i)^{-1} - sum_{|alpha| < s} T^alpha`
fn max_power_fine(num_vars: usize, bound: u32, s: u32) -> MultiSeries {
    let mut out = all_monomials(num_vars, bound);
    for k in 0..s {
        for alpha in Compositions::new(num_vars, k) {
            if let Some(i) = out.index(&alpha) {
                out.coeffs[i] -= 1;
            }
        }
    }
    out
}

/// Expands the closed-form fine Hilbert series of the ideal over the box.
pub fn fine_series_formula(spec: &IdealSpec, bound: u32) -> Result<MultiSeries, MultigradeError> {
    let vars = check_box(spec, bound)?;
    Ok(match *spec {
        IdealSpec::Veronese { n, d } => {
            let n = n as usize;
            // sum over S with |S| >= d of T^S (1-T)^{S^c}
            let mut numer = MultiSeries::zero(n, bound);
            for mask in 0u32..(1 << n) {
                if (mask.count_ones() as usize) < d as usize {
                    continue;
                }
                let mut term = MultiSeries::one(n, bound);
                for i in 0..n {
                    term = if mask & (1 << i) != 0 {
                        term.mul_var(i)
                    } else {
                        term.mul_one_minus(i)
                    };
                }
                numer = numer.add(&term)?;
            }
            (0..n).fold(numer, |acc, i| acc.mul_geometric(i))
        }
        IdealSpec::MaxPower { s, .. } | IdealSpec::HatPower { s, .. } => {
            max_power_fine(vars, bound, s)
        }
        IdealSpec::GeneratedHatPower { n, t, s } => {
            let head = (n - t + 1) as usize;
            let hat = max_power_fine(head, bound, s).embed(n as usize);
            (head..n as usize).fold(hat, |acc, i| acc.mul_geometric(i))
        }
    })
}

/// Membership evaluated at every point of the box.
pub fn fine_series_oracle(spec: &IdealSpec, bound: u32) -> Result<MultiSeries, MultigradeError> {
    let vars = check_box(spec, bound)?;
    let mut out = MultiSeries::zero(vars, bound);
    for i in 0..out.coeffs.len() {
        let alpha = ExponentVector(out.exponent(i));
        if membership(spec, &alpha)? {
            out.coeffs[i] = BigInt::one();
        }
    }
    Ok(out)
}
