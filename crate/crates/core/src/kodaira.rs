//! Curve genus, plurigenera, Riemann–Roch and a finite-sample Kodaira
//! dimension estimator.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::lattice::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KodairaError {
    #[error("need at least two samples with P_m > 0, or all samples zero")]
    InsufficientSamples,
    #[error("sample list is empty")]
    EmptySamples,
    #[error("sample m values must be positive and strictly increasing (index {index})")]
    UnorderedSamples { index: usize },
    #[error("coefficient {index} is negative")]
    NegativeCoefficient { index: usize },
    #[error("coefficient {index} lies outside [0, 1]")]
    CoefficientOutOfRange { index: usize },
    #[error("degree must be positive")]
    ZeroDegree,
}

/// Kodaira dimension: `-inf` or a nonnegative integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kappa {
    NegInfinity,
    Finite(u32),
}

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kappa::NegInfinity => write!(f, "-inf"),
            Kappa::Finite(k) => write!(f, "{k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KappaEstimate {
    pub value: Kappa,
    pub note: String,
}

/// `(m, P_m)` pairs, strictly increasing in `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlurigenusSample {
    samples: Vec<(u64, BigUint)>,
}

impl PlurigenusSample {
    pub fn new(samples: Vec<(u64, BigUint)>) -> Result<Self, KodairaError> {
        if samples.is_empty() {
            return Err(KodairaError::EmptySamples);
        }
        for (index, w) in samples.windows(2).enumerate() {
            if w[0].0 >= w[1].0 {
                return Err(KodairaError::UnorderedSamples { index: index + 1 });
            }
        }
        if samples[0].0 == 0 {
            return Err(KodairaError::UnorderedSamples { index: 0 });
        }
        Ok(Self { samples })
    }

    pub fn from_u64(samples: &[(u64, u64)]) -> Result<Self, KodairaError> {
        Self::new(
            samples
                .iter()
                .map(|&(m, p)| (m, BigUint::from(p)))
                .collect(),
        )
    }

    pub fn samples(&self) -> &[(u64, BigUint)] {
        &self.samples
    }

    /// Subsample at the multiples of `l`.
    pub fn multiples_of(&self, l: u64) -> Option<Self> {
        let kept: Vec<_> = self
            .samples
            .iter()
            .filter(|(m, _)| m % l == 0)
            .cloned()
            .collect();
        (!kept.is_empty()).then_some(Self { samples: kept })
    }
}

/// Genus `(d-1)(d-2)/2` of a smooth plane curve of degree `d >= 1`.
pub fn plane_curve_genus(degree: u32) -> Result<u64, KodairaError> {
    if degree == 0 {
        return Err(KodairaError::ZeroDegree);
    }
    let d = u64::from(degree);
    Ok((d - 1) * d.saturating_sub(2) / 2)
}

/// `-inf` for `P^1`, `0` for elliptic curves, `1` for general type.
pub fn curve_kappa(genus: u64) -> KappaEstimate {
    let (value, note) = match genus {
        0 => (Kappa::NegInfinity, "genus 0: deg K = -2 < 0"),
        1 => (Kappa::Finite(0), "genus 1: K is trivial"),
        _ => (Kappa::Finite(1), "genus >= 2: general type"),
    };
    KappaEstimate {
        value,
        note: note.to_string(),
    }
}

/// `P_m = h^0(mK)` of a smooth curve of genus `g`.
pub fn curve_plurigenus(genus: u64, m: u64) -> BigUint {
    match (genus, m) {
        (0, _) => BigUint::zero(),
        (1, _) => BigUint::one(),
        (g, 1) => BigUint::from(g),
        // deg mK > 2g - 2, so h^1 vanishes and Riemann–Roch is exact
        (g, m) => BigUint::from(2 * u128::from(m) - 1) * BigUint::from(g - 1),
    }
}

/// `chi(O(D)) = 1 + deg D - g` on a curve.
pub fn riemann_roch_curve(degree: &BigInt, genus: &BigInt) -> BigInt {
    BigInt::one() + degree - genus
}

/// Estimates `limsup log P_m / log m` from finitely many plurigenera.
///
/// All zero gives `-inf`. If the positive `P_m` in the upper half of the
/// sampled range are all equal the answer is `0` (this tolerates periodic
/// vanishing such as `P_m = 0` for odd `m`). Otherwise it is the log-slope
/// between the two largest `m` with `P_m > 0`, rounded and capped at
/// `max_dim`.
pub fn estimate_kappa(
    samples: &PlurigenusSample,
    max_dim: Option<u32>,
) -> Result<KappaEstimate, KodairaError> {
    let s = &samples.samples;
    if s.iter().all(|(_, p)| p.is_zero()) {
        return Ok(KappaEstimate {
            value: Kappa::NegInfinity,
            note: format!("P_m = 0 for all {} sampled m", s.len()),
        });
    }
    let positive: Vec<&(u64, BigUint)> = s.iter().filter(|(_, p)| !p.is_zero()).collect();
    if positive.len() < 2 {
        return Err(KodairaError::InsufficientSamples);
    }
    // positive samples in the upper half of the m-range, at least two of them
    let m_mid = s[s.len() / 2].0;
    let mut top: Vec<&(u64, BigUint)> = positive
        .iter()
        .copied()
        .filter(|(m, _)| *m >= m_mid)
        .collect();
    if top.len() < 2 {
        top = positive[positive.len() - 2..].to_vec();
    }
    if top.iter().all(|(_, p)| p == &top[0].1) {
        return Ok(KappaEstimate {
            value: Kappa::Finite(0),
            note: format!(
                "P_m constant on the positive samples with m = {}..{}",
                top[0].0,
                top[top.len() - 1].0
            ),
        });
    }
    let (m1, p1) = positive[positive.len() - 2];
    let (m2, p2) = positive[positive.len() - 1];
    let ratio = (p2.to_f64().unwrap_or(f64::MAX) / p1.to_f64().unwrap_or(f64::MAX)).ln();
    let slope = ratio / (*m2 as f64 / *m1 as f64).ln();
    let rounded = slope.round().max(0.0);
    let mut k = if rounded >= f64::from(u32::MAX) {
        u32::MAX
    } else {
        rounded as u32
    };
    let clamp_note = match max_dim {
        Some(d) => {
            k = k.min(d);
            format!("capped at {d}")
        }
        None => "unclamped: no dimension supplied".to_string(),
    };
    Ok(KappaEstimate {
        value: Kappa::Finite(k),
        note: format!("log-slope over m = {m1}..{m2}; {clamp_note}"),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurvePairClass {
    CanonicalOrTerminal,
    Klt,
    Lc,
    NotLc,
}

impl CurvePairClass {
    pub fn name(self) -> &'static str {
        match self {
            Self::CanonicalOrTerminal => "CanonicalOrTerminal",
            Self::Klt => "Klt",
            Self::Lc => "Lc",
            Self::NotLc => "NotLc",
        }
    }
}

/// Singularities of a pair `(X, B)` with `X` a smooth curve; only the
/// boundary coefficients matter.
pub fn classify_pair_on_curve(coeffs: &[Rational]) -> Result<CurvePairClass, KodairaError> {
    if let Some(index) = coeffs.iter().position(Signed::is_negative) {
        return Err(KodairaError::NegativeCoefficient { index });
    }
    let one = Rational::one();
    Ok(if coeffs.iter().all(Zero::is_zero) {
        CurvePairClass::CanonicalOrTerminal
    } else if coeffs.iter().all(|c| c < &one) {
        CurvePairClass::Klt
    } else if coeffs.iter().all(|c| c <= &one) {
        CurvePairClass::Lc
    } else {
        CurvePairClass::NotLc
    })
}

/// `-(K + B)` is ample on `P^1` iff `deg B < 2`.
pub fn fano_pair_on_p1_check(coeffs: &[Rational]) -> Result<bool, KodairaError> {
    let one = Rational::one();
    if let Some(index) = coeffs.iter().position(|c| c.is_negative() || c > &one) {
        return Err(KodairaError::CoefficientOutOfRange { index });
    }
    let total = coeffs.iter().fold(Rational::zero(), |a, c| a + c);
    Ok(total < Rational::from_integer(BigInt::from(2)))
}
