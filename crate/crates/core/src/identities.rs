//! Mechanical verifiers for the binomial identities, series identities and
//! depth theorems relating squarefree Veronese ideals to powers of the
//! maximal ideal.
//!
//! Each verifier evaluates both sides of an identity through separate
//! pipelines and reports the lexicographically first failing case with the
//! exact values of both sides. Every verifier also has a `_perturbed`
//! variant taking a hook that adds an offset to the right-hand side of
//! chosen cases, used to exercise the failure path.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::exactalg::{binom, IntPolynomial};
use crate::ideals::{
    closed_depth_max_power, hat_power_series, max_power_series, veronese_depth_forms,
    veronese_series, veronese_series_alt,
};
use crate::series::RationalFunctionSeries;

/// Offset added to the right-hand side of the case with the given parameter
/// values (in the order the verifier names them).
pub type Perturb<'a> = &'a (dyn Fn(&[i64]) -> i64 + Sync);

fn unperturbed(_: &[i64]) -> i64 {
    0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    Lemma2_2,
    Prop2_3,
    Lemma4_1,
    EqChain,
    Theorem1_4,
    Theorem1_3,
}

impl IdentityId {
    pub const ALL: [IdentityId; 6] = [
        IdentityId::Lemma2_2,
        IdentityId::Prop2_3,
        IdentityId::Lemma4_1,
        IdentityId::EqChain,
        IdentityId::Theorem1_4,
        IdentityId::Theorem1_3,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            IdentityId::Lemma2_2 => "lemma-2.2",
            IdentityId::Prop2_3 => "prop-2.3",
            IdentityId::Lemma4_1 => "lemma-4.1",
            IdentityId::EqChain => "eq-chain",
            IdentityId::Theorem1_4 => "theorem-1.4",
            IdentityId::Theorem1_3 => "theorem-1.3",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<_> = IdentityId::ALL.iter().map(|id| id.as_str()).collect();
                format!("unknown identity `{s}`, expected one of {}", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// Named parameters of the failing case.
    pub case: Vec<(&'static str, i64)>,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, v)) in self.case.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{name}={v}")?;
        }
        write!(f, ": lhs={} rhs={}", self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationResult {
    pub identity: IdentityId,
    /// Human-readable description of the range covered.
    pub params: String,
    /// Number of individual equalities checked.
    pub cases: u64,
    pub counterexample: Option<Counterexample>,
}

impl VerificationResult {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    /// Concatenates results checked in lexicographic case order, keeping the
    /// first counterexample.
    fn merge(identity: IdentityId, params: String, parts: Vec<VerificationResult>) -> Self {
        let cases = parts.iter().map(|r| r.cases).sum();
        let counterexample = parts.into_iter().find_map(|r| r.counterexample);
        VerificationResult {
            identity,
            params,
            cases,
            counterexample,
        }
    }
}

struct Checker<'a> {
    perturb: Perturb<'a>,
    cases: u64,
    counterexample: Option<Counterexample>,
}

impl<'a> Checker<'a> {
    fn new(perturb: Perturb<'a>) -> Self {
        Checker {
            perturb,
            cases: 0,
            counterexample: None,
        }
    }

    fn offset(&self, case: &[(&'static str, i64)]) -> i64 {
        let values: Vec<i64> = case.iter().map(|&(_, v)| v).collect();
        (self.perturb)(&values)
    }

    fn fail(&mut self, case: Vec<(&'static str, i64)>, lhs: BigInt, rhs: BigInt) {
        if self.counterexample.is_none() {
            self.counterexample = Some(Counterexample { case, lhs, rhs });
        }
    }

    fn int(&mut self, case: Vec<(&'static str, i64)>, lhs: BigInt, rhs: BigInt) {
        self.cases += 1;
        let rhs = rhs + self.offset(&case);
        if lhs != rhs {
            self.fail(case, lhs, rhs);
        }
    }

    /// Polynomial equality; a failure reports the first differing
    /// coefficient as case parameter `k`.
    fn poly(&mut self, mut case: Vec<(&'static str, i64)>, lhs: &IntPolynomial, rhs: IntPolynomial) {
        self.cases += 1;
        let rhs = perturb_constant(rhs, self.offset(&case));
        if *lhs != rhs {
            let len = lhs.coeffs().len().max(rhs.coeffs().len());
            let k = (0..len)
                .find(|&k| lhs.coeff(k) != rhs.coeff(k))
                .expect("unequal polynomials differ somewhere");
            case.push(("k", k as i64));
            self.fail(case, lhs.coeff(k), rhs.coeff(k));
        }
    }

    /// Series equality; `rhs` is given before canonicalization so the
    /// perturbation lands on its numerator.
    fn series(
        &mut self,
        mut case: Vec<(&'static str, i64)>,
        lhs: &RationalFunctionSeries,
        rhs_numer: IntPolynomial,
        rhs_den_pow: u32,
    ) {
        self.cases += 1;
        let rhs_numer = perturb_constant(rhs_numer, self.offset(&case));
        let rhs = RationalFunctionSeries::canonicalize(rhs_numer, rhs_den_pow);
        if let Some(k) = first_difference(lhs, &rhs) {
            case.push(("k", k as i64));
            self.fail(case, lhs.coefficient(k), rhs.coefficient(k));
        }
    }

    fn finish(self, identity: IdentityId, params: String) -> VerificationResult {
        VerificationResult {
            identity,
            params,
            cases: self.cases,
            counterexample: self.counterexample,
        }
    }
}

fn perturb_constant(p: IntPolynomial, delta: i64) -> IntPolynomial {
    if delta == 0 {
        p
    } else {
        &p + &IntPolynomial::from_i64s(&[delta])
    }
}

/// Index of the first differing power-series coefficient, or `None` when
/// the series are equal.
pub fn first_difference(a: &RationalFunctionSeries, b: &RationalFunctionSeries) -> Option<usize> {
    if a == b {
        return None;
    }
    // The difference is Q/(1-T)^m with Q != 0; its first deg Q + 1
    // coefficients determine Q, so one of them is nonzero.
    let diff = a - b;
    let reach = diff.numer().degree().unwrap_or(0);
    (0..=reach).find(|&k| a.coefficient(k) != b.coefficient(k))
}

fn check_veronese_params(n: u32, d: u32) {
    assert!(d >= 1 && d <= n, "need 1 <= d <= n, got n={n}, d={d}");
}

/// `C(i+d-1, i) = sum_{l=0}^{i} C(n, i-l) (-1)^l C(n-d-i+l, l)` for
/// `0 <= i <= n-d`. Cases are `(n, d, i)`.
pub fn verify_lemma_2_2(n: u32, d: u32) -> VerificationResult {
    verify_lemma_2_2_perturbed(n, d, &unperturbed)
}

pub fn verify_lemma_2_2_perturbed(n: u32, d: u32, perturb: Perturb) -> VerificationResult {
    check_veronese_params(n, d);
    let (n, d) = (n as i64, d as i64);
    let mut check = Checker::new(perturb);
    for i in 0..=n - d {
        let lhs = binom(i + d - 1, i);
        let rhs: BigInt = (0..=i)
            .map(|l| {
                let term = binom(n, i - l) * binom(n - d - i + l, l);
                if l % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum();
        check.int(vec![("n", n), ("d", d), ("i", i)], lhs, rhs);
    }
    check.finish(IdentityId::Lemma2_2, format!("n={n}, d={d}, i=0..{}", n - d))
}

/// Both presentations of the squarefree Veronese series coincide, and the
/// reduced polynomial identity
/// `sum_{k=0}^{n-d} C(n,k+d) T^k (1-T)^{n-k-d} = sum_{i=0}^{n-d} C(i+d-1,d-1) (1-T)^i`
/// holds. Cases are `(n, d, eq)` with `eq = 1` for the series equality and
/// `eq = 2` for the reduced identity.
pub fn verify_prop_2_3(n: u32, d: u32) -> VerificationResult {
    verify_prop_2_3_perturbed(n, d, &unperturbed)
}

pub fn verify_prop_2_3_perturbed(n: u32, d: u32, perturb: Perturb) -> VerificationResult {
    check_veronese_params(n, d);
    let mut check = Checker::new(perturb);
    let case = |eq: i64| vec![("n", n as i64), ("d", d as i64), ("eq", eq)];

    let lhs = veronese_series(n, d).expect("validated parameters");
    let alt = veronese_series_alt(n, d).expect("validated parameters");
    check.series(case(1), &lhs, alt.numer().clone(), alt.den_pow());

    let reduced_lhs = (0..=n - d).fold(IntPolynomial::zero(), |acc, k| {
        let term = IntPolynomial::one_minus_t_pow(n - k - d)
            .shift(k as usize)
            .scale(&binom(n as i64, (k + d) as i64));
        &acc + &term
    });
    let reduced_rhs = (0..=n - d).fold(IntPolynomial::zero(), |acc, i| {
        let term = IntPolynomial::one_minus_t_pow(i)
            .scale(&binom((i + d - 1) as i64, d as i64 - 1));
        &acc + &term
    });
    check.poly(case(2), &reduced_lhs, reduced_rhs);

    check.finish(IdentityId::Prop2_3, format!("n={n}, d={d}"))
}

/// `C(n+k, k+d) = sum_{i=d-1}^{n-1} C(i,d-1) C(n-i+k-1, k)` for
/// `k = 0..=k_max`. Cases are `(n, d, k)`.
pub fn verify_lemma_4_1(n: u32, d: u32, k_max: u32) -> VerificationResult {
    verify_lemma_4_1_perturbed(n, d, k_max, &unperturbed)
}

pub fn verify_lemma_4_1_perturbed(
    n: u32,
    d: u32,
    k_max: u32,
    perturb: Perturb,
) -> VerificationResult {
    check_veronese_params(n, d);
    let (n, d) = (n as i64, d as i64);
    let mut check = Checker::new(perturb);
    for k in 0..=k_max as i64 {
        let lhs = binom(n + k, k + d);
        let rhs: BigInt = (d - 1..n)
            .map(|i| binom(i, d - 1) * binom(n - i + k - 1, k))
            .sum();
        check.int(vec![("n", n), ("d", d), ("k", k)], lhs, rhs);
    }
    check.finish(IdentityId::Lemma4_1, format!("n={n}, d={d}, k=0..{k_max}"))
}

/// The chain of equalities reducing the Veronese/hat-power series identity
/// to the binomial identity of [`verify_lemma_4_1`]:
///
/// - `eq = 2`: `sum_{k=d}^{n} C(n,k) T^k/(1-T)^k = (1-T)^{-n} - (1-T)^{-(d-1)} sum_{k<d} C(n-d+k,k) T^k`
/// - `eq = 3`: `sum_{i=d-1}^{n-1} C(i,d-1) T^d (1-T)^{i-d+1} = 1 - (1-T)^{n-d+1} sum_{k<d} C(n-d+k,k) T^k`
/// - `eq = 4`: coefficient `k` of `sum_i C(i,d-1) T^d (1-T)^{i-n}` equals `C(n-d+k,k)` for `k >= d`, else 0
/// - `eq = 5`: coefficient `k` of `sum_i C(i,d-1) (1-T)^{i-n}` equals `C(n+k,k+d)`
///
/// The last two are infinite series, checked for `k = 0..=k_max`. Cases are
/// `(n, d, eq)` for exact equalities and `(n, d, eq, k)` coefficientwise.
pub fn verify_eq_chain(n: u32, d: u32, k_max: u32) -> VerificationResult {
    verify_eq_chain_perturbed(n, d, k_max, &unperturbed)
}

pub fn verify_eq_chain_perturbed(
    n: u32,
    d: u32,
    k_max: u32,
    perturb: Perturb,
) -> VerificationResult {
    check_veronese_params(n, d);
    let mut check = Checker::new(perturb);
    let (ni, di) = (n as i64, d as i64);
    let low = IntPolynomial::new((0..di).map(|k| binom(ni - di + k, k)).collect());

    // (4.2) as a sum of canonical series against a difference of series.
    let lhs = (d..=n).fold(RationalFunctionSeries::zero(), |acc, k| {
        let term = RationalFunctionSeries::canonicalize(
            IntPolynomial::monomial(binom(ni, k as i64), k as usize),
            k,
        );
        &acc + &term
    });
    let rhs_numer = &IntPolynomial::one() - &(&IntPolynomial::one_minus_t_pow(n - d + 1) * &low);
    check.series(vec![("n", ni), ("d", di), ("eq", 2)], &lhs, rhs_numer.clone(), n);

    // (4.3) as a polynomial identity.
    let lhs = (d - 1..n).fold(IntPolynomial::zero(), |acc, i| {
        let term = IntPolynomial::one_minus_t_pow(i + 1 - d)
            .shift(d as usize)
            .scale(&binom(i as i64, di - 1));
        &acc + &term
    });
    check.poly(vec![("n", ni), ("d", di), ("eq", 3)], &lhs, rhs_numer);

    // (4.4) and (4.5): left sides through series expansion, right sides in
    // closed form.
    let shifted = (d - 1..n).fold(RationalFunctionSeries::zero(), |acc, i| {
        let term = RationalFunctionSeries::canonicalize(
            IntPolynomial::monomial(binom(i as i64, di - 1), d as usize),
            n - i,
        );
        &acc + &term
    });
    let unshifted = (d - 1..n).fold(RationalFunctionSeries::zero(), |acc, i| {
        let term = RationalFunctionSeries::canonicalize(
            IntPolynomial::constant(binom(i as i64, di - 1)),
            n - i,
        );
        &acc + &term
    });
    for k in 0..=k_max as i64 {
        let rhs = if k >= di { binom(ni - di + k, k) } else { BigInt::from(0) };
        check.int(
            vec![("n", ni), ("d", di), ("eq", 4), ("k", k)],
            shifted.coefficient(k as usize),
            rhs,
        );
    }
    for k in 0..=k_max as i64 {
        check.int(
            vec![("n", ni), ("d", di), ("eq", 5), ("k", k)],
            unshifted.coefficient(k as usize),
            binom(ni + k, k + di),
        );
    }
    check.finish(IdentityId::EqChain, format!("n={n}, d={d}, k=0..{k_max}"))
}

/// Series-level identity `H_{I_{n,d}} = (1-T)^{-(d-1)} H_{hat m^d}` (`part = 1`)
/// and the depth relation `depth(I_{n,d}) = depth(hat m^d) + d - 1`
/// (`part = 2`). Cases are `(n, d, part)`.
pub fn verify_theorem_1_4(n: u32, d: u32) -> VerificationResult {
    verify_theorem_1_4_perturbed(n, d, &unperturbed)
}

pub fn verify_theorem_1_4_perturbed(n: u32, d: u32, perturb: Perturb) -> VerificationResult {
    check_veronese_params(n, d);
    let mut check = Checker::new(perturb);
    let case = |part: i64| vec![("n", n as i64), ("d", d as i64), ("part", part)];

    let veronese = veronese_series(n, d).expect("validated parameters");
    let hat = hat_power_series(n, d, d).expect("validated parameters");
    let lifted = hat.mul_power_one_minus_t(-(d as i64 - 1));
    check.series(case(1), &veronese, lifted.numer().clone(), lifted.den_pow());

    let veronese_depth = veronese.hilbert_depth().expect("Hilbert series");
    let hat_depth = hat.hilbert_depth().expect("Hilbert series");
    check.int(
        case(2),
        BigInt::from(veronese_depth),
        BigInt::from(hat_depth + d - 1),
    );
    check.finish(IdentityId::Theorem1_4, format!("n={n}, d={d}"))
}

/// Depth formulas for all `1 <= p <= n` with `n` in the range. Cases are
/// `(n, p, family)`:
///
/// - `family = 0`: scanned depth of `m^p` vs `ceil(n/(p+1))`
/// - `family = 1`: scanned depth of `I_{n,p}` vs `p-1 + ceil((n-p+1)/(p+1))`
/// - `family = 2`: `p + floor((n-p)/(p+1))` vs the ceiling form
/// - `family = 3`: `p + floor(C(n,p+1)/C(n,p))` vs the ceiling form
/// - `family = 4`: Veronese closed form at `(n+p-1, p)` vs `p-1 + ceil(n/(p+1))`
pub fn verify_theorem_1_3(n_max: u32) -> VerificationResult {
    verify_theorem_1_3_range(1, n_max, &unperturbed)
}

pub fn verify_theorem_1_3_perturbed(n_max: u32, perturb: Perturb) -> VerificationResult {
    verify_theorem_1_3_range(1, n_max, perturb)
}

fn theorem_1_3_cell(n: u32, p: u32, perturb: Perturb) -> VerificationResult {
    let mut check = Checker::new(perturb);
    let case = |family: i64| vec![("n", n as i64), ("p", p as i64), ("family", family)];
    let big = |v: u32| BigInt::from(v);

    let max_depth = max_power_series(n, p)
        .expect("valid")
        .hilbert_depth()
        .expect("Hilbert series");
    check.int(case(0), big(max_depth), big(n.div_ceil(p + 1)));

    let [ceiling, floor, ratio] = veronese_depth_forms(n, p);
    let veronese_depth = veronese_series(n, p)
        .expect("valid")
        .hilbert_depth()
        .expect("Hilbert series");
    check.int(case(1), big(veronese_depth), big(ceiling));
    check.int(case(2), big(floor), big(ceiling));
    check.int(case(3), big(ratio), big(ceiling));

    let [substituted, _, _] = veronese_depth_forms(n + p - 1, p);
    let predicted = p - 1 + closed_depth_max_power(n, p).expect("valid");
    check.int(case(4), big(substituted), big(predicted));

    check.finish(IdentityId::Theorem1_3, format!("n={n}, p={p}"))
}

fn verify_theorem_1_3_range(n_lo: u32, n_hi: u32, perturb: Perturb) -> VerificationResult {
    assert!(n_lo >= 1, "need n >= 1");
    let cells: Vec<(u32, u32)> = (n_lo..=n_hi)
        .flat_map(|n| (1..=n).map(move |p| (n, p)))
        .collect();
    let parts = cells
        .par_iter()
        .map(|&(n, p)| theorem_1_3_cell(n, p, perturb))
        .collect();
    VerificationResult::merge(
        IdentityId::Theorem1_3,
        format!("n={n_lo}..{n_hi}, p=1..n"),
        parts,
    )
}

/// Parameter grid for [`verify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyRange {
    /// Inclusive range of `n`.
    pub n: (u32, u32),
    /// Inclusive range of the second parameter, clipped to `1..=n` per `n`.
    /// `None` means the full valid range.
    pub d: Option<(u32, u32)>,
    /// Truncation order for coefficientwise checks; `None` means `n + 10`.
    pub k_max: Option<u32>,
}

impl VerifyRange {
    pub fn up_to(n_max: u32) -> Self {
        VerifyRange {
            n: (1, n_max),
            d: None,
            k_max: None,
        }
    }

    fn cells(&self) -> Vec<(u32, u32)> {
        let (lo, hi) = self.n;
        (lo.max(1)..=hi)
            .flat_map(|n| {
                let (dlo, dhi) = self.d.unwrap_or((1, n));
                (dlo.max(1)..=dhi.min(n)).map(move |d| (n, d))
            })
            .collect()
    }

    fn k_max_for(&self, n: u32) -> u32 {
        self.k_max.unwrap_or(n + 10)
    }

    fn describe(&self) -> String {
        let d = match self.d {
            Some((lo, hi)) => format!("{lo}..{hi} (clipped to 1..n)"),
            None => "1..n".to_string(),
        };
        format!("n={}..{}, d={d}", self.n.0, self.n.1)
    }
}

/// Runs one verifier over a parameter grid. Cells are checked in parallel
/// and merged in lexicographic order.
pub fn verify(id: IdentityId, range: &VerifyRange) -> VerificationResult {
    verify_perturbed(id, range, &unperturbed)
}

pub fn verify_perturbed(id: IdentityId, range: &VerifyRange, perturb: Perturb) -> VerificationResult {
    if id == IdentityId::Theorem1_3 {
        let mut result = verify_theorem_1_3_range(range.n.0.max(1), range.n.1, perturb);
        if range.d.is_some() {
            // The second parameter always sweeps 1..=n here.
            result.params.push_str(" (d range ignored)");
        }
        return result;
    }
    let parts = range
        .cells()
        .par_iter()
        .map(|&(n, d)| match id {
            IdentityId::Lemma2_2 => verify_lemma_2_2_perturbed(n, d, perturb),
            IdentityId::Prop2_3 => verify_prop_2_3_perturbed(n, d, perturb),
            IdentityId::Lemma4_1 => verify_lemma_4_1_perturbed(n, d, range.k_max_for(n), perturb),
            IdentityId::EqChain => verify_eq_chain_perturbed(n, d, range.k_max_for(n), perturb),
            IdentityId::Theorem1_4 => verify_theorem_1_4_perturbed(n, d, perturb),
            IdentityId::Theorem1_3 => unreachable!(),
        })
        .collect();
    let mut params = range.describe();
    if matches!(id, IdentityId::Lemma4_1 | IdentityId::EqChain) {
        match range.k_max {
            Some(k) => params.push_str(&format!(", k=0..{k}")),
            None => params.push_str(", k=0..n+10"),
        }
    }
    VerificationResult::merge(id, params, parts)
}
