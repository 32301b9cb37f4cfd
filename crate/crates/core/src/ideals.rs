//! The four ideal families and their coarse Hilbert series, plus the
//! closed-form Hilbert depth formulas.
//!
//! Every constructor assembles an exact numerator over `(1 - T)^m` and then
//! canonicalizes, so two presentations of the same series compare equal.

use std::fmt;

use thiserror::Error;

use crate::exactalg::{binom, IntPolynomial};
use crate::series::{RationalFunctionSeries, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("need n >= 1, got n = {0}")]
    NoVariables(u32),
    #[error("squarefree Veronese ideal needs 1 <= d <= n, got n = {n}, d = {d}")]
    VeroneseDegree { n: u32, d: u32 },
    #[error("power must be positive, got s = {0}")]
    ZeroPower(u32),
    #[error("cut parameter needs 1 <= t <= n, got n = {n}, t = {t}")]
    Cut { n: u32, t: u32 },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// One member of the four ideal families.
///
/// `HatPower` is the `s`-th power of the maximal ideal of the subring in the
/// first `n - t + 1` variables, viewed in that subring. `GeneratedHatPower`
/// is the ideal it generates in all `n` variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdealSpec {
    Veronese { n: u32, d: u32 },
    MaxPower { n: u32, s: u32 },
    HatPower { n: u32, t: u32, s: u32 },
    GeneratedHatPower { n: u32, t: u32, s: u32 },
}

impl IdealSpec {
    pub fn validate(&self) -> Result<(), IdealError> {
        let n = self.n();
        if n == 0 {
            return Err(IdealError::NoVariables(n));
        }
        match *self {
            IdealSpec::Veronese { n, d } => {
                if d == 0 || d > n {
                    return Err(IdealError::VeroneseDegree { n, d });
                }
            }
            IdealSpec::MaxPower { s, .. } => {
                if s == 0 {
                    return Err(IdealError::ZeroPower(s));
                }
            }
            IdealSpec::HatPower { n, t, s } | IdealSpec::GeneratedHatPower { n, t, s } => {
                if t == 0 || t > n {
                    return Err(IdealError::Cut { n, t });
                }
                if s == 0 {
                    return Err(IdealError::ZeroPower(s));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> u32 {
        match *self {
            IdealSpec::Veronese { n, .. }
            | IdealSpec::MaxPower { n, .. }
            | IdealSpec::HatPower { n, .. }
            | IdealSpec::GeneratedHatPower { n, .. } => n,
        }
    }

    /// Number of variables of the ring the ideal lives in.
    pub fn ambient_vars(&self) -> u32 {
        match *self {
            IdealSpec::HatPower { n, t, .. } => n - t + 1,
            _ => self.n(),
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            IdealSpec::Veronese { .. } => "veronese",
            IdealSpec::MaxPower { .. } => "max-power",
            IdealSpec::HatPower { .. } => "hat-power",
            IdealSpec::GeneratedHatPower { .. } => "generated-hat-power",
        }
    }

    /// Canonical coarse Hilbert series.
    pub fn series(&self) -> Result<RationalFunctionSeries, IdealError> {
        match *self {
            IdealSpec::Veronese { n, d } => veronese_series(n, d),
            IdealSpec::MaxPower { n, s } => max_power_series(n, s),
            IdealSpec::HatPower { n, t, s } => hat_power_series(n, t, s),
            IdealSpec::GeneratedHatPower { n, t, s } => generated_hat_power_series(n, t, s),
        }
    }

    /// Hilbert depth predicted by the closed-form formulas.
    ///
    /// The hat families follow from the max-power formula in `n - t + 1`
    /// variables; the generated ideal adds `t - 1` free variables.
    pub fn closed_form_depth(&self) -> Result<u32, IdealError> {
        self.validate()?;
        Ok(match *self {
            IdealSpec::Veronese { n, d } => closed_depth_veronese(n, d)?,
            IdealSpec::MaxPower { n, s } => closed_depth_max_power(n, s)?,
            IdealSpec::HatPower { n, t, s } => closed_depth_max_power(n - t + 1, s)?,
            IdealSpec::GeneratedHatPower { n, t, s } => {
                closed_depth_max_power(n - t + 1, s)? + t - 1
            }
        })
    }

    /// Computes the depth by scanning the series and pairs it with the
    /// closed form.
    pub fn depth_report(&self) -> Result<DepthReport, IdealError> {
        let series = self.series()?;
        let computed_depth = series.hilbert_depth()?;
        let closed_form_depth = self.closed_form_depth()?;
        Ok(DepthReport {
            spec: *self,
            series,
            computed_depth,
            closed_form_depth,
            agree: computed_depth == closed_form_depth,
        })
    }
}

impl fmt::Display for IdealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            IdealSpec::Veronese { n, d } => write!(f, "veronese(n={n}, d={d})"),
            IdealSpec::MaxPower { n, s } => write!(f, "max-power(n={n}, s={s})"),
            IdealSpec::HatPower { n, t, s } => write!(f, "hat-power(n={n}, t={t}, s={s})"),
            IdealSpec::GeneratedHatPower { n, t, s } => {
                write!(f, "generated-hat-power(n={n}, t={t}, s={s})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthReport {
    pub spec: IdealSpec,
    pub series: RationalFunctionSeries,
    pub computed_depth: u32,
    pub closed_form_depth: u32,
    pub agree: bool,
}

/// `sum_{k=d}^{n} C(n,k) T^k (1-T)^{n-k}` over `(1-T)^n`.
pub fn veronese_series(n: u32, d: u32) -> Result<RationalFunctionSeries, IdealError> {
    IdealSpec::Veronese { n, d }.validate()?;
    let numer = (d..=n).fold(IntPolynomial::zero(), |acc, k| {
        let term = IntPolynomial::one_minus_t_pow(n - k)
            .shift(k as usize)
            .scale(&binom(n as i64, k as i64));
        &acc + &term
    });
    Ok(RationalFunctionSeries::canonicalize(numer, n))
}

/// `sum_{i=d-1}^{n-1} C(i,d-1) T^d (1-T)^{i-d+1}` over `(1-T)^n`.
pub fn veronese_series_alt(n: u32, d: u32) -> Result<RationalFunctionSeries, IdealError> {
    IdealSpec::Veronese { n, d }.validate()?;
    let numer = (d - 1..n).fold(IntPolynomial::zero(), |acc, i| {
        let term = IntPolynomial::one_minus_t_pow(i + 1 - d)
            .shift(d as usize)
            .scale(&binom(i as i64, d as i64 - 1));
        &acc + &term
    });
    Ok(RationalFunctionSeries::canonicalize(numer, n))
}

/// `sum_{k=0}^{s-1} C(vars-1+k, k) T^k`: the monomials of degree below `s`.
fn low_degree_count(vars: u32, s: u32) -> IntPolynomial {
    IntPolynomial::new(
        (0..s as i64)
            .map(|k| binom(vars as i64 - 1 + k, k))
            .collect(),
    )
}

/// `(1-T)^{-n} - sum_{k<s} C(n+k-1,k) T^k`.
pub fn max_power_series(n: u32, s: u32) -> Result<RationalFunctionSeries, IdealError> {
    IdealSpec::MaxPower { n, s }.validate()?;
    let numer =
        &IntPolynomial::one() - &(&IntPolynomial::one_minus_t_pow(n) * &low_degree_count(n, s));
    Ok(RationalFunctionSeries::canonicalize(numer, n))
}

/// `(1-T)^{-n+t-1} - sum_{k<s} C(n-t+k,k) T^k`, the series of the hat power
/// inside its own `n - t + 1` variables.
pub fn hat_power_series(n: u32, t: u32, s: u32) -> Result<RationalFunctionSeries, IdealError> {
    IdealSpec::HatPower { n, t, s }.validate()?;
    let vars = n - t + 1;
    let numer = &IntPolynomial::one()
        - &(&IntPolynomial::one_minus_t_pow(vars) * &low_degree_count(vars, s));
    Ok(RationalFunctionSeries::canonicalize(numer, vars))
}

/// `(1-T)^{-n} - (1-T)^{-t+1} sum_{k<s} C(n-t+k,k) T^k`.
pub fn generated_hat_power_series(
    n: u32,
    t: u32,
    s: u32,
) -> Result<RationalFunctionSeries, IdealError> {
    IdealSpec::GeneratedHatPower { n, t, s }.validate()?;
    let free = RationalFunctionSeries::free(n);
    let subtracted = RationalFunctionSeries::canonicalize(low_degree_count(n - t + 1, s), t - 1);
    Ok(&free - &subtracted)
}

/// Hilbert depth of the squarefree Veronese ideal from its three equivalent
/// closed forms. Panics if they disagree.
pub fn closed_depth_veronese(n: u32, d: u32) -> Result<u32, IdealError> {
    IdealSpec::Veronese { n, d }.validate()?;
    let forms = veronese_depth_forms(n, d);
    assert!(
        forms.iter().all(|&f| f == forms[0]),
        "closed forms disagree for n={n}, d={d}: {forms:?}"
    );
    Ok(forms[0])
}

/// `[d-1 + ceil((n-d+1)/(d+1)), d + floor((n-d)/(d+1)), d + floor(C(n,d+1)/C(n,d))]`
pub fn veronese_depth_forms(n: u32, d: u32) -> [u32; 3] {
    let ceiling = d - 1 + (n - d + 1).div_ceil(d + 1);
    let floor = d + (n - d) / (d + 1);
    let ratio = binom(n as i64, d as i64 + 1) / binom(n as i64, d as i64);
    let binomial = d + u32::try_from(ratio).expect("C(n,d+1)/C(n,d) < n");
    [ceiling, floor, binomial]
}

/// `ceil(n / (s+1))`
pub fn closed_depth_max_power(n: u32, s: u32) -> Result<u32, IdealError> {
    IdealSpec::MaxPower { n, s }.validate()?;
    Ok(n.div_ceil(s + 1))
}
