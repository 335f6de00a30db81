//! Bundled reference systems with frozen expected outcomes.
//!
//! Each fixture pins a structured weight system, its basis size and head
//! type, and the certified verdicts of selected head perturbations. The
//! [`verify_case`] routine recomputes everything from scratch and reports
//! the first mismatch, so a fixture run is an end-to-end regression test
//! of the whole pipeline.

use serde::Serialize;

use crate::core::{Rat, WeightVector};
use crate::exceptional::{certify_exceptional, Mode, ModeVerdict};
use crate::newton::KltVerdict;
use crate::sections::{closed_form_basis, monomials_of_degree};
use crate::smoothness::{make_perturbation, Perturbation};
use crate::structure::{decompose, HeadKind};

/// One expected perturbation outcome within a fixture.
#[derive(Debug, Clone, Serialize)]
pub struct FixturePerturbation {
    /// Display label of the family.
    pub label: String,
    /// The perturbation.
    pub perturbation: Perturbation,
    /// Expected klt verdict.
    pub klt: KltVerdict,
    /// Expected paper-convention verdict.
    pub paper: ModeVerdict,
    /// Whether the strict convention is expected to agree.
    pub strict_agrees: bool,
    /// Expected paper-convention tilt bound.
    pub epsilon_paper: Rat,
}

/// One pinned structured weight system with expected invariants.
#[derive(Debug, Clone, Serialize)]
pub struct FixtureCase {
    /// Display label of the case.
    pub label: String,
    /// Ambient weights.
    pub weights: [u64; 5],
    /// Hypersurface degree.
    pub degree: u64,
    /// Expected cycle cofactor.
    pub m2: u64,
    /// Expected head factor.
    pub m3: u64,
    /// Expected cycle exponents.
    pub a: [u64; 3],
    /// Expected reduced weights.
    pub v: [u64; 5],
    /// Expected Fano index.
    pub index: i64,
    /// Expected number of degree-d monomials.
    pub basis_size: usize,
    /// Expected effective head kind.
    pub effective_head: HeadKind,
    /// Expected perturbation outcomes.
    pub perturbations: Vec<FixturePerturbation>,
}

fn pert(
    label: &str,
    perturbation: Perturbation,
    strict_agrees: bool,
    epsilon_paper: Rat,
) -> FixturePerturbation {
    FixturePerturbation {
        label: label.to_string(),
        perturbation,
        klt: KltVerdict::Klt,
        paper: ModeVerdict::Exceptional,
        strict_agrees,
        epsilon_paper,
    }
}

fn case_4_1_1() -> FixtureCase {
    FixtureCase {
        label: "4.1.1".to_string(),
        weights: [66, 231, 185, 259, 481],
        degree: 1221,
        m2: 37,
        m3: 33,
        a: [4, 4, 2],
        v: [2, 7, 5, 7, 13],
        index: 1,
        basis_size: 6,
        effective_head: HeadKind::III,
        perturbations: vec![pert(
            "X0",
            Perturbation::B { alpha0: 8, alpha1: 3, beta0: 1, beta1: 5 },
            true,
            Rat::from(10u64),
        )],
    }
}

fn case_4_1_2() -> FixtureCase {
    FixtureCase {
        label: "4.1.2".to_string(),
        weights: [118, 118, 35, 185, 135],
        degree: 590,
        m2: 5,
        m3: 118,
        a: [13, 3, 3],
        v: [1, 1, 7, 37, 27],
        index: 1,
        basis_size: 9,
        effective_head: HeadKind::I,
        perturbations: vec![
            pert("X0", Perturbation::A { a0: 5, beta0: 2, beta1: 3 }, true, Rat::from(7u64)),
            pert(
                "X1",
                Perturbation::B { alpha0: 3, alpha1: 2, beta0: 2, beta1: 3 },
                true,
                Rat::from(7u64),
            ),
        ],
    }
}

fn case_4_2() -> FixtureCase {
    FixtureCase {
        label: "4.2".to_string(),
        weights: [82, 82, 35, 125, 95],
        degree: 410,
        m2: 5,
        m3: 82,
        a: [9, 3, 3],
        v: [1, 1, 7, 25, 19],
        index: 9,
        basis_size: 9,
        effective_head: HeadKind::I,
        perturbations: vec![
            pert("X0", Perturbation::A { a0: 5, beta0: 2, beta1: 3 }, false, Rat::from(7u64)),
            pert(
                "X1",
                Perturbation::B { alpha0: 4, alpha1: 1, beta0: 2, beta1: 3 },
                false,
                Rat::from(7u64),
            ),
        ],
    }
}

fn epsilon_4_3(k: u64) -> Rat {
    match k {
        5 => Rat::ratio(1925, 391),
        7 => Rat::ratio(2625, 416),
        _ => Rat::from(7u64),
    }
}

fn case_4_3(k: u64) -> FixtureCase {
    let m3 = 9 * k + 1;
    let agrees = k == 13;
    let eps = epsilon_4_3(k);
    FixtureCase {
        label: format!("4.3 k={k}"),
        weights: [m3, m3, 5 * (3 * k - 2), 5 * (2 * k + 1), 35],
        degree: 5 * m3,
        m2: 5,
        m3,
        a: [3, 3, k],
        v: [1, 1, 3 * k - 2, 2 * k + 1, 7],
        index: 27 - 2 * i64::try_from(k).expect("small k"),
        basis_size: 9,
        effective_head: HeadKind::I,
        perturbations: vec![
            pert("X0", Perturbation::A { a0: 5, beta0: 2, beta1: 3 }, agrees, eps.clone()),
            pert(
                "X1",
                Perturbation::B { alpha0: 4, alpha1: 1, beta0: 2, beta1: 3 },
                agrees,
                eps.clone(),
            ),
            pert(
                "X2",
                Perturbation::B { alpha0: 3, alpha1: 2, beta0: 2, beta1: 3 },
                agrees,
                eps,
            ),
        ],
    }
}

/// The available fixture identifiers.
pub fn fixture_ids() -> Vec<&'static str> {
    vec!["4.1.1", "4.1.2", "4.2", "4.3"]
}

/// Looks up a fixture by identifier. "4.3" is a four-case series.
pub fn fixture(id: &str) -> Option<Vec<FixtureCase>> {
    match id {
        "4.1.1" => Some(vec![case_4_1_1()]),
        "4.1.2" => Some(vec![case_4_1_2()]),
        "4.2" => Some(vec![case_4_2()]),
        "4.3" => Some([5, 7, 9, 13].into_iter().map(case_4_3).collect()),
        _ => None,
    }
}

/// Recomputes every pinned invariant of a fixture case and reports the
/// first mismatch.
pub fn verify_case(case: &FixtureCase) -> Result<(), String> {
    let label = &case.label;
    let err = |msg: String| Err(format!("{label}: {msg}"));
    let w = match WeightVector::new(case.weights) {
        Ok(w) => w,
        Err(e) => return err(format!("invalid weights: {e}")),
    };
    let s = match decompose(&w, case.degree) {
        Ok(s) => s,
        Err(e) => return err(format!("decompose failed: {e}")),
    };
    if s.m2 != case.m2 {
        return err(format!("m2 = {}, expected {}", s.m2, case.m2));
    }
    if s.m3 != case.m3 {
        return err(format!("m3 = {}, expected {}", s.m3, case.m3));
    }
    if s.a != case.a {
        return err(format!("a = {:?}, expected {:?}", s.a, case.a));
    }
    if s.v != case.v {
        return err(format!("v = {:?}, expected {:?}", s.v, case.v));
    }
    if s.index != case.index {
        return err(format!("index = {}, expected {}", s.index, case.index));
    }
    let basis = monomials_of_degree(&w, case.degree);
    if basis.len() != case.basis_size {
        return err(format!("basis size = {}, expected {}", basis.len(), case.basis_size));
    }
    let head = classify(&s);
    let Some(effective) = head else {
        return err("no effective head type".to_string());
    };
    if effective.kind != case.effective_head {
        return err(format!(
            "effective head = {}, expected {}",
            effective.kind, case.effective_head
        ));
    }
    match closed_form_basis(&s, &effective) {
        Ok(closed) => {
            if closed != basis {
                return err("closed-form basis differs from enumeration".to_string());
            }
        }
        Err(e) => return err(format!("closed-form basis failed: {e}")),
    }
    for expected in &case.perturbations {
        let plabel = &expected.label;
        let family = match make_perturbation(&s, &basis, expected.perturbation) {
            Ok(f) => f,
            Err(e) => return err(format!("{plabel}: make_perturbation failed: {e}")),
        };
        let cert = certify_exceptional(&family, Mode::Paper);
        if cert.klt.verdict != expected.klt {
            return err(format!(
                "{plabel}: klt = {}, expected {}",
                cert.klt.verdict, expected.klt
            ));
        }
        if cert.verdict_paper != expected.paper {
            return err(format!(
                "{plabel}: paper verdict = {}, expected {}",
                cert.verdict_paper, expected.paper
            ));
        }
        if cert.modes_agree != expected.strict_agrees {
            let detail = if cert.modes_agree { "agree" } else { "disagree" };
            return err(format!(
                "{plabel}: conventions {detail}, expected {}",
                if expected.strict_agrees { "agreement" } else { "disagreement" }
            ));
        }
        match &cert.epsilon_paper {
            Some(eps) if *eps == expected.epsilon_paper => {}
            Some(eps) => {
                return err(format!(
                    "{plabel}: epsilon = {}, expected {}",
                    eps, expected.epsilon_paper
                ));
            }
            None => return err(format!("{plabel}: epsilon undefined")),
        }
    }
    Ok(())
}

fn classify(s: &crate::structure::StructuredWeights) -> Option<crate::structure::HeadType> {
    crate::structure::classify_heads(&s.weights, s.degree).effective
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_resolve() {
        for id in fixture_ids() {
            assert!(fixture(id).is_some());
        }
        assert!(fixture("nope").is_none());
        assert_eq!(fixture("4.3").unwrap().len(), 4);
    }

    #[test]
    fn every_case_verifies() {
        for id in fixture_ids() {
            for case in fixture(id).unwrap() {
                verify_case(&case).unwrap();
            }
        }
    }

    #[test]
    fn series_weights_are_structured() {
        let cases = fixture("4.3").unwrap();
        let weights: Vec<[u64; 5]> = cases.iter().map(|c| c.weights).collect();
        assert_eq!(
            weights,
            vec![
                [46, 46, 65, 55, 35],
                [64, 64, 95, 75, 35],
                [82, 82, 125, 95, 35],
                [118, 118, 185, 135, 35],
            ]
        );
    }
}
