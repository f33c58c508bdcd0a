//! K3 generating series: the KKV product with refined coefficients and the
//! real-count product, plus the `q = -1` comparison between them.
//!
//! Both products are truncated at `n = h_max`: a factor indexed by `n`
//! only contributes above order `h_max` for `n > h_max`, so coefficients
//! of `u^0 .. u^h_max` are exact.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::qlaurent::{QLaurent, Sign};
use crate::series::{Coeff, TruncatedSeries};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum K3Error {
    #[error("e_C + e_R = {0} must be even to split the product exponents")]
    OddParity(i64),
}

/// Topological Euler characteristic of a complex K3 surface.
pub const EULER_COMPLEX: i64 = 24;

/// Euler characteristic of the real locus for which the q = -1
/// specialization of the KKV series reproduces the real counts.
pub const EULER_REAL_MATCHING: i64 = -16;

/// Coefficients of `u^0..u^h_max` of
/// `prod_{n>=1} (1-u^n)^-20 (1-q u^n)^-2 (1-q^-1 u^n)^-2`.
///
/// The `u^h` coefficient is the BPS polynomial of a primitive class of
/// square `2h - 2`.
pub fn kkv_coefficients(h_max: usize) -> Vec<QLaurent> {
    let mut series = TruncatedSeries::<QLaurent>::one(h_max);
    for n in 1..=h_max {
        series = series.mul(&geometric_factor(h_max, n, &QLaurent::one(), 20));
        series = series.mul(&geometric_factor(h_max, n, &QLaurent::monomial(2, 1), 2));
        series = series.mul(&geometric_factor(h_max, n, &QLaurent::monomial(-2, 1), 2));
    }
    series.coeffs().to_vec()
}

/// `(1 - c u^n)^(-a)` truncated at `order`, for `a >= 1`.
fn geometric_factor(order: usize, n: usize, c: &QLaurent, a: u64) -> TruncatedSeries<QLaurent> {
    let mut factor = TruncatedSeries::<QLaurent>::zero(order);
    let mut c_power = QLaurent::one();
    let mut k = 0u64;
    while (k as usize) * n <= order {
        let coefficient = binomial(BigInt::from(a - 1 + k), BigInt::from(k));
        factor.set_coeff(k as usize * n, c_power.scale(coefficient));
        c_power = c_power.mul(c);
        k += 1;
    }
    factor
}

/// Coefficients of `u^0..u^h_max` of
/// `prod_{n>=1} (1+u^n)^-((24+e_R)/2) (1-u^n)^-((24-e_R)/2)`.
///
/// The `u^h` coefficient is the signed count of real rational curves in a
/// primitive class of square `2h - 2` on a real K3 surface with real-locus
/// Euler characteristic `e_R`.
pub fn real_k3_coefficients(h_max: usize, e_r: i64) -> Result<Vec<BigInt>, K3Error> {
    if (EULER_COMPLEX + e_r) % 2 != 0 {
        return Err(K3Error::OddParity(EULER_COMPLEX + e_r));
    }
    let plus_exponent = -(EULER_COMPLEX + e_r) / 2;
    let minus_exponent = -(EULER_COMPLEX - e_r) / 2;
    let mut series = TruncatedSeries::<BigInt>::one(h_max);
    for n in 1..=h_max {
        series = series.mul(&integer_factor(h_max, n, 1, plus_exponent));
        series = series.mul(&integer_factor(h_max, n, -1, minus_exponent));
    }
    Ok(series.coeffs().to_vec())
}

/// `(1 + sign u^n)^exponent` truncated at `order`, any integer exponent.
fn integer_factor(order: usize, n: usize, sign: i64, exponent: i64) -> TruncatedSeries<BigInt> {
    let mut factor = TruncatedSeries::<BigInt>::zero(order);
    let mut k = 0i64;
    while (k as usize) * n <= order {
        let c = if exponent >= 0 {
            if k > exponent {
                BigInt::from(0)
            } else {
                binomial(BigInt::from(exponent), BigInt::from(k)) * sign_power(sign, k)
            }
        } else {
            // (1 + s u^n)^(-a) = sum_k C(a-1+k, k) (-s)^k u^(nk)
            binomial(BigInt::from(-exponent - 1 + k), BigInt::from(k)) * sign_power(-sign, k)
        };
        factor.set_coeff(k as usize * n, c);
        k += 1;
    }
    factor
}

fn sign_power(sign: i64, k: i64) -> BigInt {
    if sign < 0 && k % 2 == 1 {
        BigInt::from(-1)
    } else {
        BigInt::from(1)
    }
}

/// One line of the `q = -1` comparison at genus parameter `h`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct K3Check {
    pub h: usize,
    pub kkv_at_minus_1: String,
    pub real_count: String,
    pub equal: bool,
}

/// Compares the KKV coefficients at `q = -1` against the real-count
/// coefficients with `e_R = -16`, for every `h <= h_max`.
pub fn check_k3_welschinger(h_max: usize) -> Vec<K3Check> {
    let kkv = kkv_coefficients(h_max);
    let real = real_k3_coefficients(h_max, EULER_REAL_MATCHING)
        .expect("e_R = -16 has even parity with e_C = 24");
    kkv.iter()
        .zip(real)
        .enumerate()
        .map(|(h, (poly, real_count))| {
            let at_minus_1 = poly
                .evaluate_at_sign(Sign::Minus)
                .expect("KKV coefficients have integral exponents");
            K3Check {
                h,
                equal: at_minus_1 == real_count,
                kkv_at_minus_1: at_minus_1.to_string(),
                real_count: real_count.to_string(),
            }
        })
        .collect()
}

impl Coeff for BigInt {
    fn zero() -> Self {
        BigInt::from(0)
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}
