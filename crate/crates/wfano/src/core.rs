//! Ambient data for weighted projective 4-space: weight vectors, exponent
//! vectors, exact rationals, and named comparison checks.
//!
//! Everything downstream runs in exact arithmetic. Weights and exponents
//! are machine integers; every genuinely rational quantity lives in
//! [`Rat`], an arbitrary-precision rational with a lossless JSON form.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Errors raised by ambient-level constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    /// Weights must be strictly positive.
    #[error("weight w{index} is zero; weights must be positive")]
    ZeroWeight { index: usize },
    /// Anticanonical quantities are only defined for positive index.
    #[error("index {index} is not positive")]
    NonFanoIndex { index: i64 },
}

/// The five positive weights of an ambient weighted projective 4-space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct WeightVector([u64; 5]);

impl WeightVector {
    /// Builds a weight vector, rejecting zero entries.
    pub fn new(weights: [u64; 5]) -> Result<Self, CoreError> {
        if let Some(index) = weights.iter().position(|&w| w == 0) {
            return Err(CoreError::ZeroWeight { index });
        }
        Ok(Self(weights))
    }

    /// The raw weights.
    pub fn weights(&self) -> [u64; 5] {
        self.0
    }

    /// The weight of the i-th coordinate.
    pub fn weight(&self, i: usize) -> u64 {
        self.0[i]
    }

    /// Sum of all five weights.
    pub fn sum(&self) -> u64 {
        let s: u128 = self.0.iter().map(|&w| u128::from(w)).sum();
        u64::try_from(s).expect("weight sum overflows u64")
    }

    /// Largest weight.
    pub fn max(&self) -> u64 {
        *self.0.iter().max().expect("five weights")
    }

    /// Product of all five weights.
    pub fn product(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |p, &w| p * BigInt::from(w))
    }

    /// Smallest product w_i * w_j over index pairs i < j.
    pub fn min_pair_product(&self) -> u128 {
        min_pair_product(&self.0)
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|w| w.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Smallest product of two distinct entries of `ws`.
pub fn min_pair_product(ws: &[u64]) -> u128 {
    let mut sorted = ws.to_vec();
    sorted.sort_unstable();
    u128::from(sorted[0]) * u128::from(sorted[1])
}

/// Largest product of two distinct entries of `ws`.
pub fn max_pair_product(ws: &[u64]) -> u128 {
    let mut sorted = ws.to_vec();
    sorted.sort_unstable();
    let n = sorted.len();
    u128::from(sorted[n - 1]) * u128::from(sorted[n - 2])
}

/// Fano index sum(w) - d of a degree-d hypersurface in P(w).
pub fn fano_index(w: &WeightVector, degree: u64) -> i64 {
    let s: i128 = w.0.iter().map(|&x| i128::from(x)).sum();
    i64::try_from(s - i128::from(degree)).expect("index overflows i64")
}

/// Returns the first gcd over four of the five weights that exceeds 1,
/// if any. `None` means the ambient space is well formed.
pub fn ambient_gcd_violation(w: &WeightVector) -> Option<u64> {
    (0..5).find_map(|omit| {
        let g = w
            .0
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != omit)
            .fold(0u64, |acc, (_, &x)| acc.gcd(&x));
        (g != 1).then_some(g)
    })
}

/// Whether P(w) is well formed: every four of the five weights are coprime.
pub fn is_ambient_well_formed(w: &WeightVector) -> bool {
    ambient_gcd_violation(w).is_none()
}

/// Returns the first gcd over three weights that fails to divide `degree`,
/// if any. This is the extra condition, beyond ambient well-formedness,
/// for a general degree-d hypersurface to be well formed.
pub fn hypersurface_gcd_violation(w: &WeightVector, degree: u64) -> Option<u64> {
    for i in 0..5 {
        for j in (i + 1)..5 {
            for k in (j + 1)..5 {
                let g = w.0[i].gcd(&w.0[j]).gcd(&w.0[k]);
                if degree % g != 0 {
                    return Some(g);
                }
            }
        }
    }
    None
}

/// Whether a general degree-d hypersurface in P(w) is well formed: the
/// ambient space is well formed and every three weights have gcd dividing d.
pub fn is_hypersurface_well_formed(w: &WeightVector, degree: u64) -> bool {
    is_ambient_well_formed(w) && hypersurface_gcd_violation(w, degree).is_none()
}

/// Degree of the anticanonical cycle of a degree-d hypersurface in P(w),
/// the exact rational I * d / (w0 w1 w2 w3 w4) where I is the Fano index.
pub fn anticanonical_cycle_degree(w: &WeightVector, degree: u64) -> Result<Rat, CoreError> {
    let index = fano_index(w, degree);
    if index <= 0 {
        return Err(CoreError::NonFanoIndex { index });
    }
    Ok(Rat::ratio(BigInt::from(index) * BigInt::from(degree), w.product()))
}

/// Exponent vector of a monomial in the five homogeneous coordinates.
///
/// The ordering ranks z0-heavy monomials first, the customary listing
/// order for section bases of these hypersurfaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial([u64; 5]);

impl Monomial {
    /// Wraps an exponent vector.
    pub const fn new(exponents: [u64; 5]) -> Self {
        Self(exponents)
    }

    /// The raw exponents.
    pub fn exponents(&self) -> [u64; 5] {
        self.0
    }

    /// The exponent of the i-th variable.
    pub fn exponent(&self, i: usize) -> u64 {
        self.0[i]
    }

    /// Indices of the variables that appear.
    pub fn support(&self) -> Vec<usize> {
        (0..5).filter(|&i| self.0[i] > 0).collect()
    }

    /// True when every variable that appears lies in `vars`.
    pub fn supported_within(&self, vars: &[usize]) -> bool {
        (0..5).all(|i| self.0[i] == 0 || vars.contains(&i))
    }

    /// True when the monomial is z_i^k for some k >= 1.
    pub fn is_pure_power_of(&self, i: usize) -> bool {
        self.0[i] >= 1 && (0..5).all(|j| j == i || self.0[j] == 0)
    }

    /// Total weighted degree under `w`.
    pub fn degree(&self, w: &WeightVector) -> u64 {
        let d: u128 = (0..5)
            .map(|i| u128::from(self.0[i]) * u128::from(w.weight(i)))
            .sum();
        u64::try_from(d).expect("monomial degree overflows u64")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("z{i}")),
                _ => parts.push(format!("z{i}^{e}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(5))?;
        for e in &self.0 {
            seq.serialize_element(e)?;
        }
        seq.end()
    }
}

/// Arbitrary-precision rational with a lossless `{"num","den"}` JSON form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rat(BigRational);

impl Rat {
    /// The rational 0.
    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    /// The rational 1.
    pub fn one() -> Self {
        Self(BigRational::one())
    }

    /// An integer as a rational.
    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(n.into()))
    }

    /// The reduced fraction num/den. Panics when `den` is zero.
    pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Self(BigRational::new(num.into(), den.into()))
    }

    /// Numerator of the reduced fraction (sign lives here).
    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Denominator of the reduced fraction (always positive).
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// The wrapped value.
    pub fn inner(&self) -> &BigRational {
        &self.0
    }

    /// Strictly positive?
    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }
}

impl From<BigRational> for Rat {
    fn from(r: BigRational) -> Self {
        Self(r)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<u64> for Rat {
    fn from(n: u64) -> Self {
        Self::from_integer(n)
    }
}

impl From<u128> for Rat {
    fn from(n: u128) -> Self {
        Self::from_integer(n)
    }
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, rhs: Rat) -> Rat {
        Rat(self.0 + rhs.0)
    }
}

impl Sub for Rat {
    type Output = Rat;
    fn sub(self, rhs: Rat) -> Rat {
        Rat(self.0 - rhs.0)
    }
}

impl Mul for Rat {
    type Output = Rat;
    fn mul(self, rhs: Rat) -> Rat {
        Rat(self.0 * rhs.0)
    }
}

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        Rat(self.0 / rhs.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Rat", 2)?;
        s.serialize_field("num", &self.0.numer().to_string())?;
        s.serialize_field("den", &self.0.denom().to_string())?;
        s.end()
    }
}

/// A single named exact comparison recorded inside a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    /// Human-readable name of the inequality.
    pub name: String,
    /// Exact left-hand side.
    pub lhs: Rat,
    /// One of "<", ">", ">=", "=", "divides".
    pub relation: String,
    /// Exact right-hand side.
    pub rhs: Rat,
    /// Whether the comparison holds.
    pub holds: bool,
}

impl Check {
    /// lhs < rhs.
    pub fn less(name: impl Into<String>, lhs: Rat, rhs: Rat) -> Self {
        let holds = lhs < rhs;
        Self { name: name.into(), lhs, relation: "<".into(), rhs, holds }
    }

    /// lhs > rhs.
    pub fn greater(name: impl Into<String>, lhs: Rat, rhs: Rat) -> Self {
        let holds = lhs > rhs;
        Self { name: name.into(), lhs, relation: ">".into(), rhs, holds }
    }

    /// lhs >= rhs.
    pub fn at_least(name: impl Into<String>, lhs: Rat, rhs: Rat) -> Self {
        let holds = lhs >= rhs;
        Self { name: name.into(), lhs, relation: ">=".into(), rhs, holds }
    }

    /// lhs = rhs.
    pub fn equals(name: impl Into<String>, lhs: Rat, rhs: Rat) -> Self {
        let holds = lhs == rhs;
        Self { name: name.into(), lhs, relation: "=".into(), rhs, holds }
    }

    /// lhs divides rhs (as positive integers).
    pub fn divides(name: impl Into<String>, lhs: u64, rhs: u64) -> Self {
        let holds = lhs != 0 && rhs % lhs == 0;
        Self {
            name: name.into(),
            lhs: Rat::from(lhs),
            relation: "divides".into(),
            rhs: Rat::from(rhs),
            holds,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} {} {} [{}]",
            self.name,
            self.lhs,
            self.relation,
            self.rhs,
            if self.holds { "ok" } else { "FAIL" }
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wv(w: [u64; 5]) -> WeightVector {
        WeightVector::new(w).unwrap()
    }

    #[test]
    fn rejects_zero_weights() {
        assert_eq!(
            WeightVector::new([1, 0, 1, 1, 1]),
            Err(CoreError::ZeroWeight { index: 1 })
        );
    }

    #[test]
    fn index_examples() {
        assert_eq!(fano_index(&wv([66, 231, 185, 259, 481]), 1221), 1);
        assert_eq!(fano_index(&wv([118, 118, 35, 185, 135]), 590), 1);
        assert_eq!(fano_index(&wv([82, 82, 35, 125, 95]), 410), 9);
        assert_eq!(fano_index(&wv([1, 1, 1, 1, 1]), 6), -1);
    }

    #[test]
    fn pair_products() {
        let w = wv([66, 231, 185, 259, 481]);
        assert_eq!(w.min_pair_product(), 66 * 185);
        assert_eq!(max_pair_product(&[33, 5, 7, 13]), 33 * 13);
        assert_eq!(min_pair_product(&[35, 118, 118, 185, 135]), 35 * 118);
    }

    #[test]
    fn ambient_well_formedness() {
        assert!(is_ambient_well_formed(&wv([1, 1, 1, 1, 1])));
        assert!(is_ambient_well_formed(&wv([66, 231, 185, 259, 481])));
        // Four of these share the factor 2, so the ambient space is not
        // well formed even though the structural conditions decompose it.
        let w = wv([26, 13, 30, 24, 18]);
        assert_eq!(ambient_gcd_violation(&w), Some(2));
        assert!(!is_ambient_well_formed(&w));
    }

    #[test]
    fn hypersurface_well_formedness() {
        assert!(is_hypersurface_well_formed(&wv([118, 118, 35, 185, 135]), 590));
        assert!(is_hypersurface_well_formed(&wv([82, 82, 35, 125, 95]), 410));
        // Ambient is well formed but the last three weights share a factor
        // 2 that does not divide the degree.
        let w = wv([1, 1, 2, 2, 2]);
        assert!(is_ambient_well_formed(&w));
        assert_eq!(hypersurface_gcd_violation(&w, 5), Some(2));
        assert!(!is_hypersurface_well_formed(&w, 5));
    }

    #[test]
    fn anticanonical_degree_values() {
        let d = anticanonical_cycle_degree(&wv([118, 118, 35, 185, 135]), 590).unwrap();
        assert_eq!(d, Rat::ratio(1, 20_629_350));
        let d = anticanonical_cycle_degree(&wv([82, 82, 35, 125, 95]), 410).unwrap();
        assert_eq!(d, Rat::ratio(9, 6_816_250));
        assert_eq!(
            anticanonical_cycle_degree(&wv([1, 1, 1, 1, 1]), 6),
            Err(CoreError::NonFanoIndex { index: -1 })
        );
    }

    #[test]
    fn monomial_ordering_is_z0_heavy_first() {
        let mut ms = vec![
            Monomial::new([0, 0, 1, 4, 0]),
            Monomial::new([1, 5, 0, 0, 0]),
            Monomial::new([15, 1, 0, 0, 0]),
            Monomial::new([0, 0, 0, 1, 2]),
            Monomial::new([8, 3, 0, 0, 0]),
            Monomial::new([0, 0, 4, 0, 1]),
        ];
        ms.sort();
        let order: Vec<[u64; 5]> = ms.iter().map(|m| m.exponents()).collect();
        assert_eq!(
            order,
            vec![
                [15, 1, 0, 0, 0],
                [8, 3, 0, 0, 0],
                [1, 5, 0, 0, 0],
                [0, 0, 4, 0, 1],
                [0, 0, 1, 4, 0],
                [0, 0, 0, 1, 2],
            ]
        );
    }

    #[test]
    fn monomial_display_and_degree() {
        let m = Monomial::new([15, 1, 0, 0, 0]);
        assert_eq!(m.to_string(), "z0^15 z1");
        assert_eq!(m.degree(&wv([66, 231, 185, 259, 481])), 1221);
        assert_eq!(Monomial::new([0, 0, 0, 0, 0]).to_string(), "1");
        assert!(Monomial::new([3, 0, 0, 0, 0]).is_pure_power_of(0));
        assert!(!Monomial::new([3, 1, 0, 0, 0]).is_pure_power_of(0));
        assert!(Monomial::new([3, 1, 0, 0, 0]).supported_within(&[0, 1]));
        assert!(!Monomial::new([3, 1, 0, 0, 0]).supported_within(&[0, 2]));
    }

    #[test]
    fn rat_display_and_json() {
        let r = Rat::ratio(6, 4);
        assert_eq!(r.to_string(), "3/2");
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"num":"3","den":"2"}"#);
        assert_eq!(Rat::from(7u64).to_string(), "7");
        assert_eq!(Rat::ratio(-1, 2).to_string(), "-1/2");
    }

    #[test]
    fn check_constructors() {
        let c = Check::less("a < b", Rat::from(1u64), Rat::from(2u64));
        assert!(c.holds);
        assert_eq!(c.to_string(), "a < b: 1 < 2 [ok]");
        let c = Check::divides("e divides m3", 3, 33);
        assert!(c.holds);
        let c = Check::divides("e divides m3", 4, 33);
        assert!(!c.holds);
        assert_eq!(c.to_string(), "e divides m3: 4 divides 33 [FAIL]");
    }
}
