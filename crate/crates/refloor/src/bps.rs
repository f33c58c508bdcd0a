//! Relative and absolute BPS polynomials and their specializations.
//!
//! The relative polynomial of a class and tangency type is the refined
//! count of marked floor diagrams. Absolute polynomials for the six-point
//! blow-up come from the refined Abramovich-Bertram-Vakil formula, a
//! binomial-weighted sum of relative polynomials along `beta - k*conic`.
//! Specializations: `q = 1` gives genus-zero Gromov-Witten counts,
//! `q = -1` (with the real tangency factor) gives Welschinger counts,
//! `-q(1-q)^(m-1)` packaging gives the stable-pairs series, and the
//! `q = exp(iu)` expansion recovers the higher-genus invariants.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::enumerate::{self, CurveClass, EnumerateError, Tangency};
use crate::qlaurent::{QError, QLaurent, Rational, Sign};
use crate::series::TruncatedSeries;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BpsError {
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error(transparent)]
    Exponents(#[from] QError),
    #[error("cannot pad a class of {current} exceptional classes down to {target}")]
    PadBelowCurrent { current: usize, target: usize },
    #[error("point-constraint count m_beta = {0} is negative")]
    NegativeMarks(i64),
    #[error("conic contact beta.conic = {0} is negative")]
    NegativeContact(i64),
    #[error("absolute polynomials require the full six-point blow-up, got n = {0}")]
    SurfaceNotSix(usize),
    #[error("expansion input must be palindromic")]
    NotPalindromic,
}

/// A BPS polynomial together with its two distinguished specializations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BpsResult {
    pub class: CurveClass,
    pub target: BpsTarget,
    pub poly: QLaurent,
    pub gw_at_1: BigInt,
    pub welschinger_at_minus_1: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BpsTarget {
    /// Relative to the conic, with tangency type `(mu, nu)`.
    Relative(Tangency),
    /// Absolute invariant of the `n`-point blow-up.
    Absolute { surface_n: usize },
}

impl BpsResult {
    fn new(class: CurveClass, target: BpsTarget, poly: QLaurent) -> Result<Self, BpsError> {
        let gw_at_1 = poly.evaluate_at_sign(Sign::Plus)?;
        let welschinger_at_minus_1 = poly.evaluate_at_sign(Sign::Minus)?;
        Ok(BpsResult {
            class,
            target,
            poly,
            gw_at_1,
            welschinger_at_minus_1,
        })
    }
}

impl Serialize for BpsResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("BpsResult", 5)?;
        s.serialize_field("class", &self.class)?;
        match &self.target {
            BpsTarget::Relative(t) => s.serialize_field("tangency", t)?,
            BpsTarget::Absolute { surface_n } => s.serialize_field("surface_n", surface_n)?,
        }
        s.serialize_field("poly", &self.poly)?;
        s.serialize_field("q1", &self.gw_at_1.to_string())?;
        s.serialize_field("qm1", &self.welschinger_at_minus_1.to_string())?;
        s.end()
    }
}

/// Relative BPS polynomial: the sum of refined tally contributions.
pub fn relative_bps(beta: &CurveClass, t: &Tangency) -> Result<QLaurent, BpsError> {
    let diagrams = enumerate::enumerate_diagrams(beta.d)?;
    relative_bps_diagrams(&diagrams, beta, t)
}

/// Relative BPS polynomial over a pre-enumerated diagram list.
pub fn relative_bps_diagrams(
    diagrams: &[crate::FloorDiagram],
    beta: &CurveClass,
    t: &Tangency,
) -> Result<QLaurent, BpsError> {
    let rows = enumerate::tally_diagrams(diagrams, beta, t)?;
    Ok(rows
        .iter()
        .fold(QLaurent::zero(), |acc, row| acc.add(&row.refined)))
}

/// Relative BpsResult wrapper around [`relative_bps`].
pub fn relative_bps_result(beta: &CurveClass, t: &Tangency) -> Result<BpsResult, BpsError> {
    let poly = relative_bps(beta, t)?;
    BpsResult::new(beta.clone(), BpsTarget::Relative(t.clone()), poly)
}

/// Welschinger count of the relative problem:
/// `BPS(-1) * prod_j [nu_j]_R / nu_j`.
pub fn welschinger_relative(beta: &CurveClass, t: &Tangency) -> Result<Rational, BpsError> {
    let bps = relative_bps(beta, t)?;
    let at_minus_one = bps.evaluate_at_sign(Sign::Minus)?;
    let mut w = Rational::from_integer(at_minus_one);
    for &v in &t.nu {
        let real = if v % 2 == 0 { 2 } else { 1 };
        w *= Rational::new(BigInt::from(real), BigInt::from(v));
    }
    Ok(w)
}

/// Extends the exceptional part of a class with zeros; the invariants are
/// unchanged under this padding (blow-up invariance).
pub fn pad_class(beta: &CurveClass, n_target: usize) -> Result<CurveClass, BpsError> {
    if n_target < beta.n() {
        return Err(BpsError::PadBelowCurrent {
            current: beta.n(),
            target: n_target,
        });
    }
    let mut a = beta.a.clone();
    a.resize(n_target, 0);
    Ok(CurveClass::new(beta.d, a))
}

/// Largest `k` with `d - 2k >= 1` and every `a_i - k >= 0`; summands
/// beyond it vanish because the shifted class admits no markings.
fn abv_k_bound(beta: &CurveClass) -> i64 {
    let by_degree = (beta.d - 1) / 2;
    match beta.a.iter().min() {
        Some(&min_a) => by_degree.min(min_a),
        None => by_degree,
    }
}

/// Absolute BPS polynomial of the six-point blow-up via the refined
/// Abramovich-Bertram-Vakil formula:
/// `BPS_beta = sum_k C(beta.conic + 2k, k) * relative(beta - k*conic, (empty, 1^(beta.conic + 2k)))`.
pub fn abv_absolute(beta: &CurveClass) -> Result<BpsResult, BpsError> {
    if beta.n() != 6 {
        return Err(BpsError::SurfaceNotSix(beta.n()));
    }
    let m_beta = beta.m_beta();
    if m_beta < 0 {
        return Err(BpsError::NegativeMarks(m_beta));
    }
    let contact = beta.conic_contact();
    if contact < 0 {
        return Err(BpsError::NegativeContact(contact));
    }
    for (index, &value) in beta.a.iter().enumerate() {
        if value < 0 {
            return Err(EnumerateError::NegativeMultiplicity { index, value }.into());
        }
    }

    let terms: Vec<Result<QLaurent, BpsError>> =
        crate::par::map_vec((0..=abv_k_bound(beta)).collect::<Vec<_>>(), |k| {
            let shifted = CurveClass::new(beta.d - 2 * k, beta.a.iter().map(|a| a - k).collect());
            let nu = vec![1i64; (contact + 2 * k) as usize];
            let coefficient = binomial(BigInt::from(contact + 2 * k), BigInt::from(k));
            let relative = relative_bps(&shifted, &Tangency::new(vec![], nu))?;
            Ok(relative.scale(coefficient))
        });
    let mut poly = QLaurent::zero();
    for term in terms {
        poly = poly.add(&term?);
    }

    assert!(
        poly.is_palindromic(),
        "absolute BPS polynomials are symmetric"
    );
    assert!(poly.has_integral_exponents());
    BpsResult::new(beta.clone(), BpsTarget::Absolute { surface_n: 6 }, poly)
}

/// Stable-pairs generating polynomial `-q (1-q)^(m_beta - 1) * bps`.
/// For `m_beta = 0` the factor `(1-q)^(-1)` is expanded as a geometric
/// series and the result truncated at `q^truncation`.
pub fn pt_series(bps: &QLaurent, m_beta: i64, truncation: i64) -> Result<QLaurent, BpsError> {
    if m_beta < 0 {
        return Err(BpsError::NegativeMarks(m_beta));
    }
    if !bps.has_integral_exponents() {
        if let Some(e2) = bps.terms().map(|(e, _)| e).find(|e| e % 2 != 0) {
            return Err(QError::HalfIntegerExponent(e2).into());
        }
    }
    let minus_q = QLaurent::monomial(2, -1);
    if m_beta >= 1 {
        let one_minus_q = QLaurent::from_terms([(0i64, 1i64), (2, -1)]);
        let mut out = minus_q.mul(bps);
        for _ in 0..(m_beta - 1) {
            out = out.mul(&one_minus_q);
        }
        return Ok(out);
    }
    // m_beta = 0: multiply by the truncated geometric series for (1-q)^(-1)
    let min_half = bps.min_e2().unwrap_or(0) / 2;
    let reach = (truncation - 1 - min_half).max(0);
    let geometric = QLaurent::from_terms((0..=reach).map(|k| (2 * k, 1)));
    let product = minus_q.mul(bps).mul(&geometric);
    Ok(QLaurent::from_terms(
        product
            .terms()
            .filter(|(e2, _)| *e2 <= 2 * truncation)
            .map(|(e2, c)| (e2, c.clone())),
    ))
}

/// Expands `prod_k (1/k) 2 sin(k u/2) * bps(e^(iu))` as an exact rational
/// series in `u` and reads off the coefficients of `u^(2g + shift)` for
/// `g = 0..=g_max`. Palindromy of `bps` keeps the expansion real.
pub fn gw_expansion(
    bps: &QLaurent,
    sin_factors: &[i64],
    shift: i64,
    g_max: usize,
) -> Result<Vec<Rational>, BpsError> {
    if !bps.is_palindromic() {
        return Err(BpsError::NotPalindromic);
    }
    let order_i64 = 2 * g_max as i64 + shift;
    if order_i64 < 0 {
        return Ok(vec![Rational::zero(); g_max + 1]);
    }
    let order = order_i64 as usize;

    // bps(e^{iu}) = c_0 + sum_{e2 > 0} c_{e2} * 2 cos((e2/2) u)
    let mut series = TruncatedSeries::<Rational>::zero(order);
    series.set_coeff(0, Rational::from_integer(bps.coeff(0)));
    for (e2, c) in bps.terms() {
        if e2 <= 0 {
            continue;
        }
        // 2 cos(a u) with a = e2/2: coefficient of u^(2m) is
        // 2 (-1)^m a^(2m) / (2m)!
        let a_sq = Rational::new(BigInt::from(e2 * e2), BigInt::from(4));
        let mut term = Rational::from_integer(2.into());
        let mut m = 0usize;
        loop {
            let k = 2 * m;
            if k > order {
                break;
            }
            let contribution = &term * Rational::from_integer(c.clone());
            let updated = series.coeff(k) + &contribution;
            series.set_coeff(k, updated);
            // advance: term *= -a^2 / ((2m+1)(2m+2))
            term = term
                * &a_sq
                * Rational::new(
                    BigInt::from(-1),
                    BigInt::from((k as i64 + 1) * (k as i64 + 2)),
                );
            m += 1;
        }
    }

    for &k in sin_factors {
        if k < 1 {
            return Err(EnumerateError::NonPositivePart(k).into());
        }
        // (1/k) 2 sin(k u / 2): coefficient of u^(2m+1) is
        // (-1)^m k^(2m) / (4^m (2m+1)!)
        let mut factor = TruncatedSeries::<Rational>::zero(order);
        let k_sq_over_4 = Rational::new(BigInt::from(k * k), BigInt::from(4));
        let mut term = Rational::one();
        let mut m = 0usize;
        loop {
            let power = 2 * m + 1;
            if power > order {
                break;
            }
            factor.set_coeff(power, term.clone());
            term = term
                * &k_sq_over_4
                * Rational::new(
                    BigInt::from(-1),
                    BigInt::from((power as i64 + 1) * (power as i64 + 2)),
                );
            m += 1;
        }
        series = series.mul(&factor);
    }

    Ok((0..=g_max)
        .map(|g| {
            let k = 2 * g as i64 + shift;
            if k < 0 {
                Rational::zero()
            } else {
                series.coeff(k as usize).clone()
            }
        })
        .collect())
}

/// Higher-genus expansion in the absolute normalization: `m_beta - 1`
/// factors of `2 sin(u/2)` and matching at `u^(2g + m_beta - 1)`.
pub fn gw_expansion_absolute(
    bps: &QLaurent,
    m_beta: i64,
    g_max: usize,
) -> Result<Vec<Rational>, BpsError> {
    if m_beta < 1 {
        return Err(BpsError::NegativeMarks(m_beta));
    }
    let factors = vec![1i64; (m_beta - 1) as usize];
    gw_expansion(bps, &factors, m_beta - 1, g_max)
}
