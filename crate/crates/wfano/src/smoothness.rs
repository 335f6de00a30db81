//! Quasismoothness of support sets and construction of perturbed families.
//!
//! A hypersurface family is described by its support: the set of monomials
//! allowed to appear with general coefficients. [`is_quasismooth`] decides
//! whether the general member is quasismooth by the classical three
//! coordinate-stratum conditions. [`make_perturbation`] replaces the head
//! of a structured system by a two-monomial head that breaks
//! quasismoothness while keeping the cycle intact.

use serde::Serialize;
use thiserror::Error;

use crate::core::{fano_index, Check, Monomial, Rat, WeightVector};
use crate::sections::MonomialBasis;
use crate::structure::{HeadType, StructuredWeights};

/// Errors from quasismoothness tests and perturbation building.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SmoothnessError {
    /// Every support monomial must have the stated degree.
    #[error("support monomial {monomial} has degree {found}, expected {expected}")]
    DegreeMismatch { monomial: Monomial, found: u64, expected: u64 },
    /// The coordinate-stratum analysis needs d strictly above every weight.
    #[error("degree {degree} does not exceed the largest weight {max_weight}")]
    DegreeTooSmall { degree: u64, max_weight: u64 },
    /// An empty support has no general member.
    #[error("support is empty")]
    EmptySupport,
    /// The estimate requires positive index.
    #[error("index {index} is not positive")]
    NonFanoIndex { index: i64 },
    /// The perturbation exponents violate the required shape.
    #[error("perturbation shape invalid: {reason}")]
    InvalidShape { reason: String },
    /// Both head monomials must be sections of the right degree.
    #[error("head monomial {monomial} is not in the degree-{degree} basis")]
    HeadNotInBasis { monomial: Monomial, degree: u64 },
    /// The perturbed support turned out to be quasismooth.
    #[error("perturbed support is quasismooth")]
    QuasismoothSupport,
}

/// One failed quasismoothness condition, with the coordinate indices
/// where it fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionFailure {
    /// Which of the three conditions failed (1, 2 or 3).
    pub condition: u8,
    /// The coordinate index (condition 1) or index pair (conditions 2, 3).
    pub indices: Vec<usize>,
}

/// Outcome of the quasismoothness test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuasismoothReport {
    /// Whether the general member is quasismooth.
    pub quasismooth: bool,
    /// Every condition failure found.
    pub failures: Vec<ConditionFailure>,
}

/// Decides quasismoothness of the general member of the linear system
/// spanned by `support` in degree `degree`.
///
/// The three conditions, for a degree d above every weight:
/// 1. for each i there is a monomial z_i^a or z_i^a z_j with the bare
///    variable z_j appearing to the first power;
/// 2. for each pair i < j there is a monomial in z_i, z_j alone, or two
///    monomials z_i^a z_j^b z_k and z_i^c z_j^e z_l with k, l distinct
///    indices outside {i, j}, each appearing to the first power;
/// 3. for each pair i < j there is a monomial avoiding both z_i and z_j.
pub fn is_quasismooth(
    w: &WeightVector,
    degree: u64,
    support: &[Monomial],
) -> Result<QuasismoothReport, SmoothnessError> {
    if support.is_empty() {
        return Err(SmoothnessError::EmptySupport);
    }
    for m in support {
        let found = m.degree(w);
        if found != degree {
            return Err(SmoothnessError::DegreeMismatch { monomial: *m, found, expected: degree });
        }
    }
    if degree <= w.max() {
        return Err(SmoothnessError::DegreeTooSmall { degree, max_weight: w.max() });
    }
    let mut failures = Vec::new();
    for i in 0..5 {
        let ok = support.iter().any(|m| {
            m.is_pure_power_of(i)
                || (0..5).any(|j| j != i && m.exponent(j) == 1 && m.supported_within(&[i, j]))
        });
        if !ok {
            failures.push(ConditionFailure { condition: 1, indices: vec![i] });
        }
    }
    for i in 0..5 {
        for j in (i + 1)..5 {
            let direct = support.iter().any(|m| m.supported_within(&[i, j]));
            let ok = direct || {
                let outside: Vec<usize> = (0..5)
                    .filter(|&k| {
                        k != i
                            && k != j
                            && support
                                .iter()
                                .any(|m| m.exponent(k) == 1 && m.supported_within(&[i, j, k]))
                    })
                    .collect();
                outside.len() >= 2
            };
            if !ok {
                failures.push(ConditionFailure { condition: 2, indices: vec![i, j] });
            }
        }
    }
    for i in 0..5 {
        for j in (i + 1)..5 {
            let ok = support.iter().any(|m| m.exponent(i) == 0 && m.exponent(j) == 0);
            if !ok {
                failures.push(ConditionFailure { condition: 3, indices: vec![i, j] });
            }
        }
    }
    Ok(QuasismoothReport { quasismooth: failures.is_empty(), failures })
}

/// The invertible reference support of a structured system: the two
/// effective head monomials plus the cycle.
pub fn reference_support(s: &StructuredWeights, head: &HeadType) -> Vec<Monomial> {
    let mut support = head.monomials().to_vec();
    support.extend(s.cycle_monomials());
    support.sort();
    support
}

/// Outcome of the numerical Kähler-Einstein estimate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KeEstimate {
    /// The comparison d * index < (4/3) * min pair product.
    pub comparison: Check,
    /// Whether the estimate holds.
    pub holds: bool,
}

/// The sufficient numerical estimate for a Kähler-Einstein metric on a
/// quasismooth member: d * I < (4/3) min_{i<j} w_i w_j.
pub fn ke_estimate(w: &WeightVector, degree: u64) -> Result<KeEstimate, SmoothnessError> {
    let index = fano_index(w, degree);
    if index <= 0 {
        return Err(SmoothnessError::NonFanoIndex { index });
    }
    let lhs = Rat::from(degree) * Rat::from(index);
    let rhs = Rat::ratio(4, 3) * Rat::from(w.min_pair_product());
    let comparison = Check::less("d * index < (4/3) min pair product", lhs, rhs);
    let holds = comparison.holds;
    Ok(KeEstimate { comparison, holds })
}

/// A two-monomial head replacing the invertible reference head.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Perturbation {
    /// Head z0^a0 + z0^beta0 z1^beta1 with beta0 >= 2.
    #[serde(rename = "A")]
    A { a0: u64, beta0: u64, beta1: u64 },
    /// Head z0^alpha0 z1^alpha1 + z0^beta0 z1^beta1 with
    /// alpha0 > beta0 >= 1 and alpha1 >= 1.
    #[serde(rename = "B")]
    B { alpha0: u64, alpha1: u64, beta0: u64, beta1: u64 },
}

impl Perturbation {
    /// The two head monomials.
    pub fn head_monomials(&self) -> [Monomial; 2] {
        match *self {
            Perturbation::A { a0, beta0, beta1 } => [
                Monomial::new([a0, 0, 0, 0, 0]),
                Monomial::new([beta0, beta1, 0, 0, 0]),
            ],
            Perturbation::B { alpha0, alpha1, beta0, beta1 } => [
                Monomial::new([alpha0, alpha1, 0, 0, 0]),
                Monomial::new([beta0, beta1, 0, 0, 0]),
            ],
        }
    }

    /// The z0-exponent of the lower head monomial.
    pub fn beta0(&self) -> u64 {
        match *self {
            Perturbation::A { beta0, .. } | Perturbation::B { beta0, .. } => beta0,
        }
    }

    fn validate_shape(&self) -> Result<(), SmoothnessError> {
        let fail = |reason: String| Err(SmoothnessError::InvalidShape { reason });
        match *self {
            Perturbation::A { a0, beta0, beta1 } => {
                if a0 < 1 {
                    return fail(format!("kind A needs a0 >= 1, got a0 = {a0}"));
                }
                if beta0 < 2 {
                    return fail(format!("kind A needs beta0 >= 2, got beta0 = {beta0}"));
                }
                if beta1 < 1 {
                    return fail(format!("kind A needs beta1 >= 1, got beta1 = {beta1}"));
                }
            }
            Perturbation::B { alpha0, alpha1, beta0, beta1 } => {
                if beta0 < 1 || alpha0 <= beta0 {
                    return fail(format!(
                        "kind B needs alpha0 > beta0 >= 1, got alpha0 = {alpha0}, beta0 = {beta0}"
                    ));
                }
                if alpha1 < 1 {
                    return fail(format!("kind B needs alpha1 >= 1, got alpha1 = {alpha1}"));
                }
                if beta1 < 1 {
                    return fail(format!("kind B needs beta1 >= 1, got beta1 = {beta1}"));
                }
            }
        }
        Ok(())
    }
}

impl std::fmt::Display for Perturbation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Perturbation::A { a0, beta0, beta1 } => {
                write!(f, "A(a0={a0}, beta=({beta0},{beta1}))")
            }
            Perturbation::B { alpha0, alpha1, beta0, beta1 } => {
                write!(f, "B(alpha=({alpha0},{alpha1}), beta=({beta0},{beta1}))")
            }
        }
    }
}

/// A structured system with a perturbed head: the support is the two
/// head monomials plus the three cycle monomials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypersurfaceFamily {
    /// The underlying structured weight system.
    pub structure: StructuredWeights,
    /// The head perturbation.
    pub perturbation: Perturbation,
    /// The full support in canonical order.
    pub support: Vec<Monomial>,
}

/// Builds the perturbed family, verifying the shape, membership of both
/// head monomials in `basis`, and failure of quasismoothness.
pub fn make_perturbation(
    s: &StructuredWeights,
    basis: &MonomialBasis,
    perturbation: Perturbation,
) -> Result<HypersurfaceFamily, SmoothnessError> {
    perturbation.validate_shape()?;
    let heads = perturbation.head_monomials();
    for m in heads {
        if !basis.contains(&m) {
            return Err(SmoothnessError::HeadNotInBasis { monomial: m, degree: s.degree });
        }
    }
    let mut support = heads.to_vec();
    support.extend(s.cycle_monomials());
    support.sort();
    support.dedup();
    let report = is_quasismooth(&s.weights, s.degree, &support)?;
    if report.quasismooth {
        return Err(SmoothnessError::QuasismoothSupport);
    }
    Ok(HypersurfaceFamily { structure: *s, perturbation, support })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sections::monomials_of_degree;
    use crate::structure::{classify_heads, decompose};

    fn wv(w: [u64; 5]) -> WeightVector {
        WeightVector::new(w).unwrap()
    }

    #[test]
    fn fermat_quintic_is_quasismooth() {
        let w = wv([1, 1, 1, 1, 1]);
        let support: Vec<Monomial> = (0..5)
            .map(|i| {
                let mut e = [0u64; 5];
                e[i] = 5;
                Monomial::new(e)
            })
            .collect();
        let report = is_quasismooth(&w, 5, &support).unwrap();
        assert!(report.quasismooth);
    }

    #[test]
    fn reference_members_are_quasismooth() {
        for (w, d) in [
            ([66u64, 231, 185, 259, 481], 1221u64),
            ([118, 118, 35, 185, 135], 590),
            ([82, 82, 35, 125, 95], 410),
        ] {
            let w = wv(w);
            let s = decompose(&w, d).unwrap();
            let head = classify_heads(&w, d).effective.unwrap();
            let support = reference_support(&s, &head);
            let report = is_quasismooth(&w, d, &support).unwrap();
            assert!(report.quasismooth, "reference member of {w} should be quasismooth");
        }
    }

    #[test]
    fn perturbed_heads_break_condition_one() {
        // Type III system with mixed heads z0^8 z1^3 and z0 z1^5: no
        // monomial serves coordinate 0.
        let w = wv([66, 231, 185, 259, 481]);
        let s = decompose(&w, 1221).unwrap();
        let mut support = vec![
            Monomial::new([8, 3, 0, 0, 0]),
            Monomial::new([1, 5, 0, 0, 0]),
        ];
        support.extend(s.cycle_monomials());
        let report = is_quasismooth(&w, 1221, &support).unwrap();
        assert!(!report.quasismooth);
        assert!(report
            .failures
            .contains(&ConditionFailure { condition: 1, indices: vec![0] }));

        // Type I system with heads z0^5 and z0^2 z1^3: coordinate 1 fails.
        let w = wv([118, 118, 35, 185, 135]);
        let s = decompose(&w, 590).unwrap();
        let mut support = vec![
            Monomial::new([5, 0, 0, 0, 0]),
            Monomial::new([2, 3, 0, 0, 0]),
        ];
        support.extend(s.cycle_monomials());
        let report = is_quasismooth(&w, 590, &support).unwrap();
        assert!(!report.quasismooth);
        assert!(report
            .failures
            .contains(&ConditionFailure { condition: 1, indices: vec![1] }));
    }

    #[test]
    fn degree_preconditions() {
        let w = wv([1, 1, 1, 1, 1]);
        assert_eq!(
            is_quasismooth(&w, 5, &[Monomial::new([1, 1, 1, 1, 0])]),
            Err(SmoothnessError::DegreeMismatch {
                monomial: Monomial::new([1, 1, 1, 1, 0]),
                found: 4,
                expected: 5,
            })
        );
        let w = wv([2, 2, 1, 1, 1]);
        assert_eq!(
            is_quasismooth(&w, 2, &[Monomial::new([1, 0, 0, 0, 0])]),
            Err(SmoothnessError::DegreeTooSmall { degree: 2, max_weight: 2 })
        );
        assert_eq!(is_quasismooth(&w, 2, &[]), Err(SmoothnessError::EmptySupport));
    }

    #[test]
    fn ke_estimate_values() {
        let est = ke_estimate(&wv([82, 82, 35, 125, 95]), 410).unwrap();
        assert!(est.holds);
        assert_eq!(est.comparison.lhs, Rat::from(3690u64));
        assert_eq!(est.comparison.rhs, Rat::ratio(11480, 3));

        let est = ke_estimate(&wv([66, 231, 185, 259, 481]), 1221).unwrap();
        assert!(est.holds);

        // Fails for the quartic threefold: 4 > 4/3.
        let est = ke_estimate(&wv([1, 1, 1, 1, 1]), 4).unwrap();
        assert!(!est.holds);

        assert_eq!(
            ke_estimate(&wv([1, 1, 1, 1, 1]), 6),
            Err(SmoothnessError::NonFanoIndex { index: -1 })
        );
    }

    #[test]
    fn make_perturbation_kind_a() {
        let w = wv([118, 118, 35, 185, 135]);
        let s = decompose(&w, 590).unwrap();
        let basis = monomials_of_degree(&w, 590);
        // Any kind A head breaks quasismoothness, including beta = (4, 1).
        for (beta0, beta1) in [(2u64, 3u64), (3, 2), (4, 1)] {
            let fam = make_perturbation(&s, &basis, Perturbation::A { a0: 5, beta0, beta1 })
                .unwrap();
            assert_eq!(fam.support.len(), 5);
            let report = is_quasismooth(&w, 590, &fam.support).unwrap();
            assert!(!report.quasismooth);
        }
    }

    #[test]
    fn make_perturbation_rejects_quasismooth_support() {
        // Mixed heads with both bare variables present reproduce an
        // invertible (hence quasismooth) support.
        let w = wv([118, 118, 35, 185, 135]);
        let s = decompose(&w, 590).unwrap();
        let basis = monomials_of_degree(&w, 590);
        let p = Perturbation::B { alpha0: 4, alpha1: 1, beta0: 1, beta1: 4 };
        assert_eq!(
            make_perturbation(&s, &basis, p),
            Err(SmoothnessError::QuasismoothSupport)
        );
    }

    #[test]
    fn make_perturbation_rejects_bad_input() {
        let w = wv([118, 118, 35, 185, 135]);
        let s = decompose(&w, 590).unwrap();
        let basis = monomials_of_degree(&w, 590);
        assert!(matches!(
            make_perturbation(&s, &basis, Perturbation::A { a0: 5, beta0: 1, beta1: 4 }),
            Err(SmoothnessError::InvalidShape { .. })
        ));
        assert!(matches!(
            make_perturbation(&s, &basis, Perturbation::B { alpha0: 2, alpha1: 1, beta0: 2, beta1: 1 }),
            Err(SmoothnessError::InvalidShape { .. })
        ));
        // z0^6 is not a section of degree 590.
        assert!(matches!(
            make_perturbation(&s, &basis, Perturbation::A { a0: 6, beta0: 2, beta1: 3 }),
            Err(SmoothnessError::HeadNotInBasis { .. })
        ));
    }
}
