//! Exact Laurent polynomials in `q^(1/2)` with big-integer coefficients.
//!
//! Exponents are stored doubled: the key `e2` represents the monomial
//! `q^(e2/2)`, so every symmetric q-integer has integer keys and no
//! half-integer bookkeeping leaks into the arithmetic. The map never holds
//! zero coefficients and iterates in strictly increasing `e2`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Arbitrary-precision rational, always kept reduced with positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QError {
    /// `[m]_q` is only defined for positive `m`.
    #[error("q-integer requires a positive argument, got {0}")]
    NonPositiveQInteger(i64),
    /// Specialization at `q = ±1` needs integer exponents: `q^(1/2)` at
    /// `q = -1` is ambiguous.
    #[error("half-integer exponent q^({0}/2) cannot be specialized at q = ±1")]
    HalfIntegerExponent(i64),
}

/// The two specialization points of a refined count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    /// `q = 1`, the complex (Gromov-Witten) side.
    Plus,
    /// `q = -1`, the real (Welschinger) side.
    Minus,
}

/// Laurent polynomial in `q^(1/2)` over the integers.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash, PartialOrd, Ord)]
pub struct QLaurent {
    terms: BTreeMap<i64, BigInt>,
}

impl QLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    /// The single term `coeff * q^(e2/2)`.
    pub fn monomial(e2: i64, coeff: impl Into<BigInt>) -> Self {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(e2, coeff);
        }
        QLaurent { terms }
    }

    /// Builds from `(e2, coeff)` pairs, summing duplicates and dropping zeros.
    pub fn from_terms<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut terms: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e2, c) in pairs {
            let c = c.into();
            if c.is_zero() {
                continue;
            }
            let entry = terms.entry(e2).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(&e2);
            }
        }
        QLaurent { terms }
    }

    /// The symmetric q-integer `[m]_q = q^(-(m-1)/2) * (1 + q + ... + q^(m-1))`.
    ///
    /// Has exactly `m` terms and is palindromic; `[m]_q(1) = m` and
    /// `[m]_q(-1)` is `0` for even `m`, `1` for odd `m`.
    pub fn q_int(m: i64) -> Result<Self, QError> {
        if m <= 0 {
            return Err(QError::NonPositiveQInteger(m));
        }
        // exponents (doubled): 2j - (m-1) for j = 0..m-1
        Ok(Self::from_terms((0..m).map(|j| (2 * j - (m - 1), 1))))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates `(e2, coeff)` in strictly increasing `e2`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e2: i64) -> BigInt {
        self.terms.get(&e2).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn min_e2(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_e2(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.terms.clone();
        for (e2, c) in &other.terms {
            let entry = out.entry(*e2).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                out.remove(e2);
            }
        }
        QLaurent { terms: out }
    }

    pub fn neg(&self) -> Self {
        QLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let entry = out.entry(ea + eb).or_insert_with(BigInt::zero);
                *entry += ca * cb;
            }
        }
        out.retain(|_, c| !c.is_zero());
        QLaurent { terms: out }
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        if k.is_zero() {
            return Self::zero();
        }
        QLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e, c * &k)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// True iff every stored exponent `e2` is even, i.e. the polynomial lies
    /// in `Z[q, q^-1]`.
    pub fn has_integral_exponents(&self) -> bool {
        self.terms.keys().all(|e2| e2 % 2 == 0)
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Specializes at `q = 1` or `q = -1`. Requires integer exponents.
    pub fn evaluate_at_sign(&self, q0: Sign) -> Result<BigInt, QError> {
        let mut total = BigInt::zero();
        for (e2, c) in &self.terms {
            if e2 % 2 != 0 {
                return Err(QError::HalfIntegerExponent(*e2));
            }
            let negate = matches!(q0, Sign::Minus) && (e2 / 2).rem_euclid(2) == 1;
            if negate {
                total -= c;
            } else {
                total += c;
            }
        }
        Ok(total)
    }

    /// True iff the coefficient of `q^(e2/2)` equals that of `q^(-e2/2)` for
    /// every exponent.
    pub fn is_palindromic(&self) -> bool {
        self.terms
            .iter()
            .all(|(e2, c)| self.terms.get(&-e2) == Some(c))
    }

    /// Substitutes `q -> q^-1`.
    pub fn reciprocal(&self) -> Self {
        QLaurent {
            terms: self.terms.iter().map(|(e, c)| (-*e, c.clone())).collect(),
        }
    }

    /// Serialization form: sorted `(e2, decimal coefficient)` pairs.
    pub fn to_pairs(&self) -> Vec<(i64, String)> {
        self.terms
            .iter()
            .map(|(e, c)| (*e, c.to_string()))
            .collect()
    }

    pub fn from_pairs(pairs: &[(i64, String)]) -> Result<Self, num_bigint::ParseBigIntError> {
        let mut parsed = Vec::with_capacity(pairs.len());
        for (e2, c) in pairs {
            parsed.push((*e2, c.parse::<BigInt>()?));
        }
        Ok(Self::from_terms(parsed))
    }
}

impl fmt::Display for QLaurent {
    /// Renders as `c*q^(e)` terms in increasing exponent, e.g.
    /// `1*q^(-3)+13*q^(-2)+94*q^(-1)+400+94*q^(1)+13*q^(2)+1*q^(3)`;
    /// half-integer exponents print as `q^(e2/2)` with odd `e2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e2, c)) in self.terms.iter().enumerate() {
            if i > 0 && !c.is_negative() {
                write!(f, "+")?;
            }
            if *e2 == 0 {
                write!(f, "{c}")?;
            } else if e2 % 2 == 0 {
                write!(f, "{c}*q^({})", e2 / 2)?;
            } else {
                write!(f, "{c}*q^({e2}/2)")?;
            }
        }
        Ok(())
    }
}

impl Serialize for QLaurent {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_pairs().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QLaurent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs = Vec::<(i64, String)>::deserialize(deserializer)?;
        QLaurent::from_pairs(&pairs).map_err(D::Error::custom)
    }
}

impl std::ops::Add<&QLaurent> for &QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: &QLaurent) -> QLaurent {
        QLaurent::add(self, rhs)
    }
}

impl std::ops::Mul<&QLaurent> for &QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: &QLaurent) -> QLaurent {
        QLaurent::mul(self, rhs)
    }
}
