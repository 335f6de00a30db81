//! Monomial bases of a fixed weighted degree.
//!
//! [`monomials_of_degree`] enumerates every exponent vector of a given
//! degree directly and serves as the independent oracle. For structured
//! weight systems with an effective head type the basis also has a closed
//! form, produced by [`closed_form_basis`]: a ladder of head monomials on
//! the first two coordinates plus exactly the three cycle monomials.

use serde::Serialize;
use thiserror::Error;

use crate::core::{Monomial, WeightVector};
use crate::structure::{HeadKind, HeadType, StructuredWeights};

/// A sorted, deduplicated list of monomials of one weighted degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct MonomialBasis(Vec<Monomial>);

impl MonomialBasis {
    /// Sorts and deduplicates the given monomials.
    pub fn from_monomials(mut monomials: Vec<Monomial>) -> Self {
        monomials.sort();
        monomials.dedup();
        Self(monomials)
    }

    /// The monomials in canonical order.
    pub fn monomials(&self) -> &[Monomial] {
        &self.0
    }

    /// Number of monomials.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// True when no monomial has the requested degree.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Membership test.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.0.binary_search(m).is_ok()
    }

    /// Iterates in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = &Monomial> {
        self.0.iter()
    }
}

/// Enumerates all monomials of weighted degree `degree` under `w`.
pub fn monomials_of_degree(w: &WeightVector, degree: u64) -> MonomialBasis {
    let ws = w.weights();
    let mut out = Vec::new();
    let mut e = [0u64; 5];
    enumerate_from(&ws, degree, 0, &mut e, &mut out);
    MonomialBasis::from_monomials(out)
}

fn enumerate_from(ws: &[u64; 5], remaining: u64, i: usize, e: &mut [u64; 5], out: &mut Vec<Monomial>) {
    if i == 4 {
        if remaining % ws[4] == 0 {
            e[4] = remaining / ws[4];
            out.push(Monomial::new(*e));
        }
        return;
    }
    for k in 0..=(remaining / ws[i]) {
        e[i] = k;
        enumerate_from(ws, remaining - k * ws[i], i + 1, e, out);
    }
    e[i] = 0;
}

/// Why the closed form does not apply.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SectionsError {
    /// The cycle part is exactly three monomials only when every cycle
    /// exponent is at least 2.
    #[error("closed form requires every cycle exponent to be at least 2, but a{index} = {value}")]
    CycleExponentTooSmall { index: usize, value: u64 },
    /// The head ladder formula for this kind needs extra conditions on
    /// (v0, v1).
    #[error("closed form for head type {kind} requires {requirement}, got v0 = {v0}, v1 = {v1}")]
    HeadSideCondition { kind: HeadKind, requirement: &'static str, v0: u64, v1: u64 },
    /// The head type does not belong to this weight system.
    #[error("head monomial {monomial} has degree {found}, expected {expected}")]
    HeadDegreeMismatch { monomial: Monomial, found: u64, expected: u64 },
}

/// Closed-form basis for a structured system with the given head type:
/// the full head ladder plus the three cycle monomials.
///
/// Side conditions: all cycle exponents at least 2; for type I heads
/// v0 = v1 = 1, for type II heads v0 = 1, and for type III heads v0 >= 2
/// (so that the ladder formula is exhaustive).
pub fn closed_form_basis(
    s: &StructuredWeights,
    head: &HeadType,
) -> Result<MonomialBasis, SectionsError> {
    for (i, &ai) in s.a.iter().enumerate() {
        if ai < 2 {
            return Err(SectionsError::CycleExponentTooSmall { index: i + 2, value: ai });
        }
    }
    for m in head.monomials() {
        let found = m.degree(&s.weights);
        if found != s.degree {
            return Err(SectionsError::HeadDegreeMismatch {
                monomial: m,
                found,
                expected: s.degree,
            });
        }
    }
    let (v0, v1) = (s.v[0], s.v[1]);
    let mut monomials: Vec<Monomial> = match head.kind {
        HeadKind::I => {
            if v0 != 1 || v1 != 1 {
                return Err(SectionsError::HeadSideCondition {
                    kind: head.kind,
                    requirement: "v0 = v1 = 1",
                    v0,
                    v1,
                });
            }
            (0..=s.m2).map(|k| Monomial::new([s.m2 - k, k, 0, 0, 0])).collect()
        }
        HeadKind::II => {
            if v0 != 1 {
                return Err(SectionsError::HeadSideCondition {
                    kind: head.kind,
                    requirement: "v0 = 1",
                    v0,
                    v1,
                });
            }
            (0..=(s.m2 / v1)).map(|k| Monomial::new([s.m2 - k * v1, k, 0, 0, 0])).collect()
        }
        HeadKind::III => {
            if v0 < 2 {
                return Err(SectionsError::HeadSideCondition {
                    kind: head.kind,
                    requirement: "v0 >= 2",
                    v0,
                    v1,
                });
            }
            (0..=(s.m2 / (v0 * v1)))
                .map(|k| Monomial::new([head.a0 - k * v1, 1 + k * v0, 0, 0, 0]))
                .collect()
        }
    };
    monomials.extend(s.cycle_monomials());
    Ok(MonomialBasis::from_monomials(monomials))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{classify_heads, decompose};

    fn wv(w: [u64; 5]) -> WeightVector {
        WeightVector::new(w).unwrap()
    }

    #[test]
    fn basis_type_iii_example() {
        let w = wv([66, 231, 185, 259, 481]);
        let basis = monomials_of_degree(&w, 1221);
        let expected: Vec<[u64; 5]> = vec![
            [15, 1, 0, 0, 0],
            [8, 3, 0, 0, 0],
            [1, 5, 0, 0, 0],
            [0, 0, 4, 0, 1],
            [0, 0, 1, 4, 0],
            [0, 0, 0, 1, 2],
        ];
        assert_eq!(
            basis.iter().map(|m| m.exponents()).collect::<Vec<_>>(),
            expected
        );
    }

    #[test]
    fn basis_type_i_example() {
        let w = wv([118, 118, 35, 185, 135]);
        let basis = monomials_of_degree(&w, 590);
        let expected: Vec<[u64; 5]> = vec![
            [5, 0, 0, 0, 0],
            [4, 1, 0, 0, 0],
            [3, 2, 0, 0, 0],
            [2, 3, 0, 0, 0],
            [1, 4, 0, 0, 0],
            [0, 5, 0, 0, 0],
            [0, 0, 13, 0, 1],
            [0, 0, 1, 3, 0],
            [0, 0, 0, 1, 3],
        ];
        assert_eq!(
            basis.iter().map(|m| m.exponents()).collect::<Vec<_>>(),
            expected
        );
        assert_eq!(basis.len(), 9);
    }

    #[test]
    fn closed_form_matches_enumeration_on_reference_systems() {
        for (w, d) in [
            ([66u64, 231, 185, 259, 481], 1221u64),
            ([118, 118, 35, 185, 135], 590),
            ([82, 82, 35, 125, 95], 410),
            ([46, 46, 65, 55, 35], 230),
        ] {
            let w = wv(w);
            let s = decompose(&w, d).unwrap();
            let head = classify_heads(&w, d).effective.unwrap();
            let closed = closed_form_basis(&s, &head).unwrap();
            let oracle = monomials_of_degree(&w, d);
            assert_eq!(closed, oracle);
        }
    }

    #[test]
    fn closed_form_small_degree_ladder() {
        // m2 = 1 with unit head weights: the ladder is just {z0, z1}.
        let w = wv([13, 13, 5, 4, 3]);
        let s = decompose(&w, 13).unwrap();
        let head = classify_heads(&w, 13).effective.unwrap();
        assert_eq!(head.kind, HeadKind::I);
        let basis = closed_form_basis(&s, &head).unwrap();
        assert_eq!(
            basis.iter().map(|m| m.exponents()).collect::<Vec<_>>(),
            vec![
                [1, 0, 0, 0, 0],
                [0, 1, 0, 0, 0],
                [0, 0, 2, 0, 1],
                [0, 0, 1, 2, 0],
                [0, 0, 0, 1, 3],
            ]
        );
        assert_eq!(basis, monomials_of_degree(&w, 13));
    }

    #[test]
    fn closed_form_rejects_small_cycle_exponents() {
        // a = (1, 1, 1) admits extra cycle monomials, so the closed form
        // must refuse.
        let w = wv([2, 2, 1, 1, 1]);
        let s = decompose(&w, 2).unwrap();
        assert_eq!(s.a, [1, 1, 1]);
        let head = classify_heads(&w, 2).effective.unwrap();
        assert_eq!(
            closed_form_basis(&s, &head),
            Err(SectionsError::CycleExponentTooSmall { index: 2, value: 1 })
        );
        // The enumeration shows why: six cycle monomials, not three.
        let cycle_count = monomials_of_degree(&w, 2)
            .iter()
            .filter(|m| m.supported_within(&[2, 3, 4]))
            .count();
        assert_eq!(cycle_count, 6);
    }

    #[test]
    fn closed_form_rejects_wrong_head() {
        let w = wv([118, 118, 35, 185, 135]);
        let s = decompose(&w, 590).unwrap();
        let bad = HeadType { kind: HeadKind::I, a0: 4, a1: 5 };
        assert!(matches!(
            closed_form_basis(&s, &bad),
            Err(SectionsError::HeadDegreeMismatch { .. })
        ));
    }

    #[test]
    fn empty_basis_is_allowed() {
        let basis = monomials_of_degree(&wv([4, 9, 10, 11, 12]), 6);
        assert!(basis.is_empty());
    }
}
