//! Decomposition of a weight system into head and cycle structure.
//!
//! The weight systems treated here factor as
//! `w = (m3 v0, m3 v1, m2 v2, m2 v3, m2 v4)` with degree `d = m2 m3`,
//! where the last three coordinates support the cycle
//! `z4 z2^a2 + z2 z3^a3 + z3 z4^a4` and the first two carry the head
//! monomials. [`decompose`] recovers all of this data from `(w, d)` or
//! reports precisely which structural condition fails.

use num::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::core::{fano_index, Monomial, WeightVector};

/// Why a weight system fails to decompose.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    /// The degree must be positive.
    #[error("degree must be positive")]
    ZeroDegree,
    /// m3 = gcd(w0, w1) must divide the degree.
    #[error("m3 = gcd(w0, w1) = {m3} does not divide d = {degree}")]
    HeadFactorDoesNotDivideDegree { m3: u64, degree: u64 },
    /// The two degree factors must be coprime.
    #[error("m2 = {m2} and m3 = {m3} are not coprime")]
    FactorsNotCoprime { m2: u64, m3: u64 },
    /// Each cycle weight must be an m2-multiple.
    #[error("m2 = {m2} does not divide w{index} = {weight}")]
    CycleWeightNotDivisible { m2: u64, index: usize, weight: u64 },
    /// The reduced cycle weights must be pairwise coprime.
    #[error("v{i} = {vi} and v{j} = {vj} are not coprime")]
    CycleWeightsNotCoprime { i: usize, j: usize, vi: u64, vj: u64 },
    /// Each cycle exponent must be a positive integer.
    #[error("cycle exponent a{index} = ({degree} - {prev_weight}) / {weight} is not a positive integer")]
    CycleExponentInvalid { index: usize, degree: u64, prev_weight: u64, weight: u64 },
    /// The cycle determinant must reproduce m3.
    #[error("cycle determinant a2 a3 a4 + 1 = {determinant} does not equal m3 = {m3}")]
    DeterminantMismatch { determinant: u64, m3: u64 },
}

/// A weight system split into head factors and cycle data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StructuredWeights {
    /// The ambient weights.
    pub weights: WeightVector,
    /// Hypersurface degree d = m2 * m3.
    pub degree: u64,
    /// Common factor of the cycle weights.
    pub m2: u64,
    /// Common factor of the head weights, equal to a2 a3 a4 + 1.
    pub m3: u64,
    /// Reduced weights: w = (m3 v0, m3 v1, m2 v2, m2 v3, m2 v4).
    pub v: [u64; 5],
    /// Cycle exponents (a2, a3, a4).
    pub a: [u64; 3],
    /// Fano index sum(w) - d.
    pub index: i64,
}

impl StructuredWeights {
    /// The three cycle monomials z4 z2^a2, z2 z3^a3, z3 z4^a4.
    pub fn cycle_monomials(&self) -> [Monomial; 3] {
        [
            Monomial::new([0, 0, self.a[0], 0, 1]),
            Monomial::new([0, 0, 1, self.a[1], 0]),
            Monomial::new([0, 0, 0, 1, self.a[2]]),
        ]
    }

    /// Cycle vertex weights (t2, t3, t4) = tilde_weights(a, m2).
    pub fn cycle_vertex_weights(&self) -> [u64; 3] {
        tilde_weights(self.a, self.m2)
    }
}

/// The cycle determinant a2 a3 a4 + 1.
pub fn cycle_determinant(a: [u64; 3]) -> u64 {
    let det = u128::from(a[0]) * u128::from(a[1]) * u128::from(a[2]) + 1;
    u64::try_from(det).expect("cycle determinant overflows u64")
}

/// Weights of the three cycle vertices:
/// t2 = m2 (a3 a4 - a4 + 1), t3 = m2 (a2 a4 - a2 + 1), t4 = m2 (a2 a3 - a3 + 1).
///
/// They satisfy a2 t2 + t3 = a3 t3 + t4 = a4 t4 + t2 = m2 (a2 a3 a4 + 1)
/// and t2 + t3 + t4 = w2 + w3 + w4.
pub fn tilde_weights(a: [u64; 3], m2: u64) -> [u64; 3] {
    let [a2, a3, a4] = a.map(u128::from);
    let m2 = u128::from(m2);
    let t2 = m2 * (a3 * a4 - a4 + 1);
    let t3 = m2 * (a2 * a4 - a2 + 1);
    let t4 = m2 * (a2 * a3 - a3 + 1);
    [t2, t3, t4].map(|t| u64::try_from(t).expect("cycle vertex weight overflows u64"))
}

/// Reduced cycle weights determined by the exponents:
/// v2 = a3 a4 - a3 + 1, v3 = a2 a4 - a4 + 1, v4 = a2 a3 - a2 + 1.
///
/// They satisfy a2 v2 + v4 = a3 v3 + v2 = a4 v4 + v3 = a2 a3 a4 + 1.
pub fn cycle_reduced_weights(a: [u64; 3]) -> [u64; 3] {
    let [a2, a3, a4] = a.map(u128::from);
    let v2 = a3 * a4 - a3 + 1;
    let v3 = a2 * a4 - a4 + 1;
    let v4 = a2 * a3 - a2 + 1;
    [v2, v3, v4].map(|v| u64::try_from(v).expect("reduced cycle weight overflows u64"))
}

/// Recovers the head/cycle structure of `(w, d)`, or reports the first
/// structural condition that fails.
pub fn decompose(w: &WeightVector, degree: u64) -> Result<StructuredWeights, StructureError> {
    if degree == 0 {
        return Err(StructureError::ZeroDegree);
    }
    let ws = w.weights();
    let m3 = ws[0].gcd(&ws[1]);
    if degree % m3 != 0 {
        return Err(StructureError::HeadFactorDoesNotDivideDegree { m3, degree });
    }
    let m2 = degree / m3;
    if m2.gcd(&m3) != 1 {
        return Err(StructureError::FactorsNotCoprime { m2, m3 });
    }
    let mut v = [0u64; 5];
    v[0] = ws[0] / m3;
    v[1] = ws[1] / m3;
    for i in 2..5 {
        if ws[i] % m2 != 0 {
            return Err(StructureError::CycleWeightNotDivisible { m2, index: i, weight: ws[i] });
        }
        v[i] = ws[i] / m2;
    }
    for i in 2..5 {
        for j in (i + 1)..5 {
            if v[i].gcd(&v[j]) != 1 {
                return Err(StructureError::CycleWeightsNotCoprime { i, j, vi: v[i], vj: v[j] });
            }
        }
    }
    // Cycle exponents: a2 w2 + w4 = a3 w3 + w2 = a4 w4 + w3 = d.
    let mut a = [0u64; 3];
    for (slot, (i, prev)) in [(2usize, 4usize), (3, 2), (4, 3)].iter().enumerate() {
        let (i, prev) = (*i, *prev);
        let num = i128::from(degree) - i128::from(ws[prev]);
        let den = i128::from(ws[i]);
        if num <= 0 || num % den != 0 {
            return Err(StructureError::CycleExponentInvalid {
                index: i,
                degree,
                prev_weight: ws[prev],
                weight: ws[i],
            });
        }
        a[slot] = u64::try_from(num / den).expect("cycle exponent overflows u64");
    }
    let determinant = cycle_determinant(a);
    if determinant != m3 {
        return Err(StructureError::DeterminantMismatch { determinant, m3 });
    }
    Ok(StructuredWeights {
        weights: *w,
        degree,
        m2,
        m3,
        v,
        a,
        index: fano_index(w, degree),
    })
}

/// The three admissible head shapes on the first two coordinates, in
/// decreasing order of strength.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HeadKind {
    /// Both z0^a0 and z1^a1 have degree d.
    I,
    /// z0^a0 has degree d and z0 z1^a1 has degree d.
    II,
    /// z1 z0^a0 and z0 z1^a1 have degree d, with no pure power.
    III,
}

impl std::fmt::Display for HeadKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HeadKind::I => write!(f, "I"),
            HeadKind::II => write!(f, "II"),
            HeadKind::III => write!(f, "III"),
        }
    }
}

/// A head type together with its defining exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HeadType {
    /// The shape.
    pub kind: HeadKind,
    /// Exponent of z0 in the first head monomial.
    pub a0: u64,
    /// Exponent of z1 in the second head monomial.
    pub a1: u64,
}

impl HeadType {
    /// The two distinguished head monomials.
    pub fn monomials(&self) -> [Monomial; 2] {
        match self.kind {
            HeadKind::I => [
                Monomial::new([self.a0, 0, 0, 0, 0]),
                Monomial::new([0, self.a1, 0, 0, 0]),
            ],
            HeadKind::II => [
                Monomial::new([self.a0, 0, 0, 0, 0]),
                Monomial::new([1, self.a1, 0, 0, 0]),
            ],
            HeadKind::III => [
                Monomial::new([self.a0, 1, 0, 0, 0]),
                Monomial::new([1, self.a1, 0, 0, 0]),
            ],
        }
    }
}

impl std::fmt::Display for HeadType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}(a0={}, a1={})", self.kind, self.a0, self.a1)
    }
}

/// Admissible and effective head types of `(w, d)`.
#[derive(Debug, Clone, Serialize)]
pub struct HeadClassification {
    /// All admissible types, strongest first.
    pub admissible: Vec<HeadType>,
    /// The strongest admissible type, if any.
    pub effective: Option<HeadType>,
}

/// Classifies the head monomials available in degree d on the first two
/// coordinates. The order of w0 and w1 matters: no sorting is performed.
pub fn classify_heads(w: &WeightVector, degree: u64) -> HeadClassification {
    let (w0, w1) = (w.weight(0), w.weight(1));
    let mut admissible = Vec::new();
    if degree % w0 == 0 && degree % w1 == 0 {
        admissible.push(HeadType { kind: HeadKind::I, a0: degree / w0, a1: degree / w1 });
    }
    if degree % w0 == 0 && degree > w0 && (degree - w0) % w1 == 0 {
        admissible.push(HeadType {
            kind: HeadKind::II,
            a0: degree / w0,
            a1: (degree - w0) / w1,
        });
    }
    if degree > w1 && (degree - w1) % w0 == 0 && degree > w0 && (degree - w0) % w1 == 0 {
        admissible.push(HeadType {
            kind: HeadKind::III,
            a0: (degree - w1) / w0,
            a1: (degree - w0) / w1,
        });
    }
    let effective = admissible.first().copied();
    HeadClassification { admissible, effective }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wv(w: [u64; 5]) -> WeightVector {
        WeightVector::new(w).unwrap()
    }

    #[test]
    fn decompose_type_iii_example() {
        let s = decompose(&wv([66, 231, 185, 259, 481]), 1221).unwrap();
        assert_eq!(s.m2, 37);
        assert_eq!(s.m3, 33);
        assert_eq!(s.v, [2, 7, 5, 7, 13]);
        assert_eq!(s.a, [4, 4, 2]);
        assert_eq!(s.index, 1);
    }

    #[test]
    fn decompose_type_i_examples() {
        let s = decompose(&wv([118, 118, 35, 185, 135]), 590).unwrap();
        assert_eq!((s.m2, s.m3), (5, 118));
        assert_eq!(s.v, [1, 1, 7, 37, 27]);
        assert_eq!(s.a, [13, 3, 3]);
        assert_eq!(s.index, 1);

        let s = decompose(&wv([82, 82, 35, 125, 95]), 410).unwrap();
        assert_eq!((s.m2, s.m3), (5, 82));
        assert_eq!(s.v, [1, 1, 7, 25, 19]);
        assert_eq!(s.a, [9, 3, 3]);
        assert_eq!(s.index, 9);
    }

    #[test]
    fn decompose_failures() {
        // Quintic in ordinary projective space: m3 = 1, m2 = 5 must divide
        // every cycle weight and does not.
        assert_eq!(
            decompose(&wv([1, 1, 1, 1, 1]), 5),
            Err(StructureError::CycleWeightNotDivisible { m2: 5, index: 2, weight: 1 })
        );
        assert_eq!(decompose(&wv([2, 2, 1, 1, 1]), 0), Err(StructureError::ZeroDegree));
        // gcd(w0, w1) = 4 does not divide 6.
        assert_eq!(
            decompose(&wv([4, 4, 1, 1, 1]), 6),
            Err(StructureError::HeadFactorDoesNotDivideDegree { m3: 4, degree: 6 })
        );
        // m2 = 2 and m3 = 2 share a factor.
        assert_eq!(
            decompose(&wv([2, 2, 1, 1, 1]), 4),
            Err(StructureError::FactorsNotCoprime { m2: 2, m3: 2 })
        );
    }

    #[test]
    fn decompose_rejects_bad_cycle() {
        // Weights divide correctly but the cycle exponent a2 is not integral:
        // (d - w4) / w2 = (34 - 10) / 6 = 4 exactly; pick w4 so it fails.
        let w = wv([17, 17, 6, 2, 9]);
        let err = decompose(&w, 34).unwrap_err();
        assert!(matches!(
            err,
            StructureError::CycleWeightNotDivisible { .. }
                | StructureError::CycleExponentInvalid { .. }
                | StructureError::CycleWeightsNotCoprime { .. }
                | StructureError::DeterminantMismatch { .. }
        ));
    }

    #[test]
    fn cycle_determinant_values() {
        assert_eq!(cycle_determinant([4, 4, 2]), 33);
        assert_eq!(cycle_determinant([3, 3, 5]), 46);
        assert_eq!(cycle_determinant([1, 1, 1]), 2);
        assert_eq!(cycle_determinant([9, 3, 3]), 82);
        assert_eq!(cycle_determinant([3, 3, 13]), 118);
    }

    #[test]
    fn tilde_weight_values_and_identities() {
        assert_eq!(tilde_weights([13, 3, 3], 5), [35, 135, 185]);
        assert_eq!(tilde_weights([4, 4, 2], 37), [259, 185, 481]);
        assert_eq!(tilde_weights([1, 1, 1], 1), [1, 1, 1]);
        for (a, m2) in [([4u64, 4, 2], 37u64), ([13, 3, 3], 5), ([2, 5, 7], 3)] {
            let [t2, t3, t4] = tilde_weights(a, m2);
            let d = m2 * cycle_determinant(a);
            assert_eq!(a[0] * t2 + t3, d);
            assert_eq!(a[1] * t3 + t4, d);
            assert_eq!(a[2] * t4 + t2, d);
            let [v2, v3, v4] = cycle_reduced_weights(a);
            assert_eq!(t2 + t3 + t4, m2 * (v2 + v3 + v4));
        }
    }

    #[test]
    fn reduced_cycle_weight_values() {
        assert_eq!(cycle_reduced_weights([4, 4, 2]), [5, 7, 13]);
        assert_eq!(cycle_reduced_weights([13, 3, 3]), [7, 37, 27]);
        assert_eq!(cycle_reduced_weights([9, 3, 3]), [7, 25, 19]);
    }

    #[test]
    fn cycle_monomials_have_degree_d() {
        let s = decompose(&wv([66, 231, 185, 259, 481]), 1221).unwrap();
        for m in s.cycle_monomials() {
            assert_eq!(m.degree(&s.weights), s.degree);
        }
        assert_eq!(
            s.cycle_monomials().map(|m| m.exponents()),
            [[0, 0, 4, 0, 1], [0, 0, 1, 4, 0], [0, 0, 0, 1, 2]]
        );
    }

    #[test]
    fn classify_heads_examples() {
        // Both pure powers exist: types I, II, III are all admissible and
        // I is effective.
        let c = classify_heads(&wv([118, 118, 35, 185, 135]), 590);
        assert_eq!(
            c.admissible,
            vec![
                HeadType { kind: HeadKind::I, a0: 5, a1: 5 },
                HeadType { kind: HeadKind::II, a0: 5, a1: 4 },
                HeadType { kind: HeadKind::III, a0: 4, a1: 4 },
            ]
        );
        assert_eq!(c.effective, Some(HeadType { kind: HeadKind::I, a0: 5, a1: 5 }));

        // No pure power: only type III.
        let c = classify_heads(&wv([66, 231, 185, 259, 481]), 1221);
        assert_eq!(c.admissible, vec![HeadType { kind: HeadKind::III, a0: 15, a1: 5 }]);
        assert_eq!(c.effective.unwrap().kind, HeadKind::III);

        // Heads can be empty.
        let c = classify_heads(&wv([4, 9, 1, 1, 1]), 6);
        assert!(c.admissible.is_empty());
        assert!(c.effective.is_none());
    }

    #[test]
    fn classification_is_positional() {
        // Swapping w0 and w1 changes the admissible exponents.
        let c = classify_heads(&wv([231, 66, 185, 259, 481]), 1221);
        assert_eq!(c.admissible, vec![HeadType { kind: HeadKind::III, a0: 5, a1: 15 }]);
    }

    #[test]
    fn head_monomials_by_kind() {
        let t = HeadType { kind: HeadKind::III, a0: 15, a1: 5 };
        assert_eq!(t.monomials().map(|m| m.exponents()), [[15, 1, 0, 0, 0], [1, 5, 0, 0, 0]]);
        let t = HeadType { kind: HeadKind::II, a0: 5, a1: 4 };
        assert_eq!(t.monomials().map(|m| m.exponents()), [[5, 0, 0, 0, 0], [1, 4, 0, 0, 0]]);
        let t = HeadType { kind: HeadKind::I, a0: 5, a1: 5 };
        assert_eq!(t.monomials().map(|m| m.exponents()), [[5, 0, 0, 0, 0], [0, 5, 0, 0, 0]]);
    }
}
