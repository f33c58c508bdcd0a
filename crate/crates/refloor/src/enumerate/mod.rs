//! Exhaustive enumeration of floor diagrams and of their markings.
//!
//! [`enumerate_diagrams`] generates every isomorphism class of genus-zero
//! floor diagrams of a given degree. [`tally`] then counts marking classes
//! per (diagram, leg-role pattern) and attaches the refined, complex, and
//! real multiplicities. One tally row corresponds to one pictured diagram
//! of the reference tables: the same underlying tree can occur several
//! times with different tangency-leg placements.

mod generate;
mod markings;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::diagram::FloorDiagram;
use crate::qlaurent::{QLaurent, Sign};
use crate::MAX_DEGREE;

pub use generate::{enumerate_diagrams, enumerate_diagrams_cached, CACHE_FORMAT};
pub use markings::count_markings;

/// Surface class `dH - sum a_i E_i` on the blow-up of the plane at `n`
/// points; `n` is the length of `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveClass {
    pub d: i64,
    pub a: Vec<i64>,
}

impl CurveClass {
    pub fn new(d: i64, a: Vec<i64>) -> Self {
        CurveClass { d, a }
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// Intersection with the conic strict transform: `2d - sum a_i`.
    pub fn conic_contact(&self) -> i64 {
        2 * self.d - self.a.iter().sum::<i64>()
    }

    /// Number of interior point constraints: `3d - sum a_i - 1`.
    pub fn m_beta(&self) -> i64 {
        3 * self.d - self.a.iter().sum::<i64>() - 1
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.d)?;
        for a in &self.a {
            write!(f, ",{a}")?;
        }
        Ok(())
    }
}

impl FromStr for CurveClass {
    type Err = EnumerateError;

    /// Parses the comma form `d,a1,...,an`; `n` is inferred from the length.
    fn from_str(s: &str) -> Result<Self, EnumerateError> {
        let mut parts = s.split(',');
        let d = parts
            .next()
            .and_then(|p| p.trim().parse::<i64>().ok())
            .ok_or_else(|| EnumerateError::ClassParse(s.to_string()))?;
        let mut a = Vec::new();
        for p in parts {
            a.push(
                p.trim()
                    .parse::<i64>()
                    .map_err(|_| EnumerateError::ClassParse(s.to_string()))?,
            );
        }
        Ok(CurveClass { d, a })
    }
}

/// Ordered tangency partitions `(mu, nu)`: contact orders along the conic
/// at fixed and moving points. Their total must equal the conic contact of
/// the paired class.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tangency {
    pub mu: Vec<i64>,
    pub nu: Vec<i64>,
}

impl Tangency {
    pub fn new(mu: Vec<i64>, nu: Vec<i64>) -> Self {
        Tangency { mu, nu }
    }

    pub fn contact_total(&self) -> i64 {
        self.mu.iter().sum::<i64>() + self.nu.iter().sum::<i64>()
    }

    /// Marks available for the increasing bijection: `d - 1 + l(nu)`.
    pub fn marks(&self, class: &CurveClass) -> i64 {
        class.d - 1 + self.nu.len() as i64
    }

    /// Product of the real q-integer substitutes `[nu_j]_R`
    /// (1 for odd parts, 2 for even parts).
    pub fn real_nu_factor(&self) -> i64 {
        self.nu
            .iter()
            .map(|&v| if v % 2 == 0 { 2 } else { 1 })
            .product()
    }

    pub fn nu_product(&self) -> i64 {
        self.nu.iter().product()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("degree {0} out of range 1..={1}")]
    DegreeOutOfRange(i64, i64),
    #[error("cannot parse curve class spec {0:?} (expected d,a1,...,an)")]
    ClassParse(String),
    #[error("exceptional multiplicity a_{index} = {value} is negative")]
    NegativeMultiplicity { index: usize, value: i64 },
    #[error("contact budget 2d - sum(a) = {0} is negative")]
    NegativeContactBudget(i64),
    #[error("tangency parts must be positive, got {0}")]
    NonPositivePart(i64),
    #[error("tangency total {got} does not match conic contact {expected}")]
    TangencyMismatch { expected: i64, got: i64 },
    #[error("diagram degree {diagram} does not match class degree {class}")]
    ClassDegreeMismatch { diagram: i64, class: i64 },
    #[error("diagram fails validation: {0:?}")]
    InvalidDiagram(Vec<crate::diagram::Violation>),
    #[error("cache i/o failure at {path}: {message}")]
    Cache { path: String, message: String },
}

/// Checks the shared preconditions of marking counts and tallies.
pub(crate) fn check_inputs(beta: &CurveClass, t: &Tangency) -> Result<(), EnumerateError> {
    if beta.d < 1 {
        return Err(EnumerateError::DegreeOutOfRange(beta.d, MAX_DEGREE));
    }
    for (index, &value) in beta.a.iter().enumerate() {
        if value < 0 {
            return Err(EnumerateError::NegativeMultiplicity { index, value });
        }
    }
    let contact = beta.conic_contact();
    if contact < 0 {
        return Err(EnumerateError::NegativeContactBudget(contact));
    }
    for &p in t.mu.iter().chain(&t.nu) {
        if p < 1 {
            return Err(EnumerateError::NonPositivePart(p));
        }
    }
    if t.contact_total() != contact {
        return Err(EnumerateError::TangencyMismatch {
            expected: contact,
            got: t.contact_total(),
        });
    }
    Ok(())
}

/// Role of a leg in a marking: tangency at a fixed point (`Mu`), tangency at
/// a moving point (`Nu`), or intersection with an exceptional curve (`Red`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Mu,
    Nu,
    Red,
}

impl Role {
    pub(crate) fn color_byte(self) -> u8 {
        match self {
            Role::Mu => 1,
            Role::Nu => 2,
            Role::Red => 3,
        }
    }
}

/// One row of a tally: a diagram together with a leg-role pattern, the
/// number of marking classes realizing it, and its multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramTally {
    /// Canonically labeled diagram.
    pub diagram: FloorDiagram,
    /// Role of each leg, aligned with `diagram.legs()`.
    pub leg_roles: Vec<Role>,
    /// Canonical key of the role-colored diagram; unique per row.
    pub canonical_key: Vec<u8>,
    /// Isomorphism classes of markings with this role pattern.
    pub marking_count: u64,
    /// `marking_count * prod(nu_j) * prod_e [w_e]_q^2`.
    pub refined: QLaurent,
    /// `refined` at `q = 1`.
    pub complex: BigInt,
    /// 0 if any edge weight is even, else `marking_count * prod [nu_j]_R`.
    pub real: BigInt,
}

impl Serialize for DiagramTally {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("DiagramTally", 7)?;
        s.serialize_field("canonical_key", &hex::encode(&self.canonical_key))?;
        s.serialize_field("diagram", &self.diagram)?;
        s.serialize_field("leg_roles", &self.leg_roles)?;
        s.serialize_field("marking_count", &self.marking_count)?;
        s.serialize_field("refined", &self.refined)?;
        s.serialize_field("complex", &self.complex.to_string())?;
        s.serialize_field("real", &self.real.to_string())?;
        s.end()
    }
}

/// Refined multiplicity of a diagram for tangency `t`:
/// `prod(nu_j) * prod_e [w_e]_q^2`.
pub fn refined_multiplicity(g: &FloorDiagram, t: &Tangency) -> QLaurent {
    let mut m = QLaurent::one().scale(t.nu_product());
    for e in g.edges() {
        let w = QLaurent::q_int(e.weight).expect("edge weights are positive");
        m = m.mul(&w).mul(&w);
    }
    m
}

/// Tallies every diagram of degree `beta.d`, one row per (diagram, role
/// pattern) with a positive marking count, ordered by canonical key. The
/// output is independent of thread count and enumeration order.
pub fn tally(beta: &CurveClass, t: &Tangency) -> Result<Vec<DiagramTally>, EnumerateError> {
    let diagrams = enumerate_diagrams(beta.d)?;
    tally_diagrams(&diagrams, beta, t)
}

/// Same as [`tally`] but over an already-enumerated diagram list
/// (e.g. loaded from the on-disk cache).
pub fn tally_diagrams(
    diagrams: &[FloorDiagram],
    beta: &CurveClass,
    t: &Tangency,
) -> Result<Vec<DiagramTally>, EnumerateError> {
    check_inputs(beta, t)?;
    let mut rows: Vec<DiagramTally> = crate::par::map_vec(diagrams.to_vec(), |g| {
        debug_assert_eq!(g.degree(), beta.d);
        tally_one(&g, beta, t)
    })
    .into_iter()
    .flatten()
    .collect();
    rows.sort_by(|a, b| a.canonical_key.cmp(&b.canonical_key));
    Ok(rows)
}

fn tally_one(g: &FloorDiagram, beta: &CurveClass, t: &Tangency) -> Vec<DiagramTally> {
    let multiplicity = refined_multiplicity(g, t);
    let has_even_edge = g.edges().iter().any(|e| e.weight % 2 == 0);
    let mut rows = Vec::new();
    for (roles, marking_count) in markings::markings_by_role_pattern(g, beta, t) {
        if marking_count == 0 {
            continue;
        }
        let refined = multiplicity.scale(BigInt::from(marking_count));
        let complex = refined
            .evaluate_at_sign(Sign::Plus)
            .expect("refined counts have integral exponents");
        let real = if has_even_edge {
            BigInt::zero()
        } else {
            BigInt::from(marking_count) * BigInt::from(t.real_nu_factor())
        };
        let color_bytes: Vec<u8> = roles.iter().map(|r| r.color_byte()).collect();
        let (diagram, canon_colors) = g.to_canonical_colored(Some(&color_bytes));
        let canonical_key = g.canonical_key_colored(&color_bytes);
        let leg_roles = canon_colors
            .iter()
            .map(|&b| match b {
                1 => Role::Mu,
                2 => Role::Nu,
                3 => Role::Red,
                other => unreachable!("unexpected color byte {other}"),
            })
            .collect();
        rows.push(DiagramTally {
            diagram,
            leg_roles,
            canonical_key,
            marking_count,
            refined,
            complex,
            real,
        });
    }
    rows
}
