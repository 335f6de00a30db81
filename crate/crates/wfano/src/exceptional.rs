//! Exceptionality certificates via weighted tangent cones.
//!
//! A perturbed family with klt head points is exceptional when the alpha
//! invariant of a general member exceeds 1. The certificate bounds the
//! invariant from below by a tilt bound epsilon: the minimum of a
//! smooth-point bound min(w_i w_j) / (I d) and, at every singular head
//! point, an orbifold-index bound and a multiplicity bound read off from
//! the weighted tangent cone of the dehomogenized equation. Exceptionality
//! is certified when epsilon > 1.
//!
//! Two conventions for the smooth-point bound are in circulation. The
//! strict one divides by I d; the published one divides by d only, which is
//! the same thing for index 1 but weaker otherwise. Certificates always
//! evaluate both and flag any disagreement instead of silently picking a
//! side.

use num::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::core::{
    ambient_gcd_violation, hypersurface_gcd_violation, max_pair_product, Check, Rat, WeightVector,
};
use crate::newton::{affine_support, certify_klt, chart_exponents, Chart, KltCertificate, KltVerdict};
use crate::smoothness::{HypersurfaceFamily, Perturbation};

/// Errors from bound computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExceptionalError {
    /// The Fano index is not positive, so no bound divides by it.
    #[error("index {index} is not positive")]
    NonFanoIndex { index: i64 },
}

/// Which smooth-point bound convention a certificate is asked to decide
/// with. Both are always computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Mode {
    /// Smooth-point bound min(w_i w_j) / (I d).
    #[serde(rename = "strict")]
    Strict,
    /// Smooth-point bound min(w_i w_j) / d.
    #[serde(rename = "paper")]
    Paper,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Strict => write!(f, "strict"),
            Mode::Paper => write!(f, "paper"),
        }
    }
}

/// The outcome under one fixed convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ModeVerdict {
    /// All hypotheses hold and the tilt bound exceeds 1.
    #[serde(rename = "exceptional")]
    Exceptional,
    /// Some hypothesis or bound fails.
    #[serde(rename = "hypothesis-not-met")]
    HypothesisNotMet,
}

impl std::fmt::Display for ModeVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ModeVerdict::Exceptional => write!(f, "exceptional"),
            ModeVerdict::HypothesisNotMet => write!(f, "hypothesis-not-met"),
        }
    }
}

/// The final verdict of a certificate: the common verdict when both
/// conventions agree, otherwise either flagged or resolved in favor of
/// the published convention, depending on the requested mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// Certified exceptional.
    #[serde(rename = "exceptional")]
    Exceptional,
    /// Not certified.
    #[serde(rename = "hypothesis-not-met")]
    HypothesisNotMet,
    /// The two conventions disagree and the strict one was requested.
    #[serde(rename = "discrepancy-flagged")]
    DiscrepancyFlagged,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Exceptional => write!(f, "exceptional"),
            Verdict::HypothesisNotMet => write!(f, "hypothesis-not-met"),
            Verdict::DiscrepancyFlagged => write!(f, "discrepancy-flagged"),
        }
    }
}

/// The weighted tangent cone at a singular head point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeData {
    /// The chart of the head point.
    pub chart: Chart,
    /// The head exponent e controlling the chart.
    pub head_exponent: u64,
    /// The residual weight r = m3 / e of the chart coordinate.
    pub residual: u64,
    /// The cone weights (r, v2, v3, v4).
    pub weights: [u64; 4],
    /// The minimal weighted degree over the affine support.
    pub degree: u64,
    /// The support points attaining the minimal degree, sorted.
    pub support: Vec<[u64; 4]>,
    /// The index of the cone hypersurface, r + v2 + v3 + v4 - degree.
    pub index: i64,
}

/// Computes the weighted valuation of a set of affine exponent vectors:
/// the minimal weighted degree and the points attaining it.
pub fn weighted_tangent_cone(points: &[[u64; 4]], weights: [u64; 4]) -> (u128, Vec<[u64; 4]>) {
    let degree_of = |p: &[u64; 4]| -> u128 {
        p.iter().zip(weights.iter()).map(|(&e, &w)| u128::from(e) * u128::from(w)).sum()
    };
    let degree = points.iter().map(degree_of).min().expect("nonempty support");
    let mut support: Vec<[u64; 4]> = points.iter().copied().filter(|p| degree_of(p) == degree).collect();
    support.sort_unstable();
    (degree, support)
}

/// The smooth-point tilt bound min(w_i w_j) / (I d).
pub fn smooth_point_bound(w: &WeightVector, degree: u64) -> Result<Rat, ExceptionalError> {
    let index = crate::core::fano_index(w, degree);
    if index <= 0 {
        return Err(ExceptionalError::NonFanoIndex { index });
    }
    Ok(Rat::from(w.min_pair_product()) / (Rat::from(index) * Rat::from(degree)))
}

fn head_weight(w: &WeightVector, chart: Chart) -> u64 {
    match chart {
        Chart::Z1 => w.weight(0),
        Chart::Z0 => w.weight(1),
    }
}

/// The orbifold-index tilt bound at a cone point,
/// I^c w_head m2^2 / (I r).
pub fn cone_index_bound(
    cone: &ConeData,
    w: &WeightVector,
    m2: u64,
    index: i64,
) -> Result<Rat, ExceptionalError> {
    if index <= 0 {
        return Err(ExceptionalError::NonFanoIndex { index });
    }
    let numerator = Rat::from(cone.index)
        * Rat::from(head_weight(w, cone.chart))
        * Rat::from(u128::from(m2) * u128::from(m2));
    Ok(numerator / (Rat::from(index) * Rat::from(cone.residual)))
}

/// The multiplicity tilt bound at a cone point,
/// w_head w2 w3 w4 / (I d max(cone pair products)).
pub fn cone_multiplicity_bound(
    cone: &ConeData,
    w: &WeightVector,
    degree: u64,
    index: i64,
) -> Result<Rat, ExceptionalError> {
    if index <= 0 {
        return Err(ExceptionalError::NonFanoIndex { index });
    }
    let cycle_product =
        u128::from(w.weight(2)) * u128::from(w.weight(3)) * u128::from(w.weight(4));
    let numerator = Rat::from(head_weight(w, cone.chart)) * Rat::from(cycle_product);
    let denominator =
        Rat::from(index) * Rat::from(degree) * Rat::from(max_pair_product(&cone.weights));
    Ok(numerator / denominator)
}

/// One analyzed cone with its invariant checks and tilt bounds.
#[derive(Debug, Clone, Serialize)]
pub struct ConeAnalysis {
    /// The cone itself.
    pub cone: ConeData,
    /// Invariant checks: positive cone index, well-formed cone weights,
    /// cone degree equal to m3.
    pub checks: Vec<Check>,
    /// The orbifold-index bound.
    pub index_bound: Rat,
    /// The multiplicity bound.
    pub multiplicity_bound: Rat,
}

/// A full exceptionality certificate.
#[derive(Debug, Clone, Serialize)]
pub struct ExceptionalityCertificate {
    /// The convention the verdict was requested under.
    pub mode: Mode,
    /// Named hypothesis checks: well-formedness, index window,
    /// divisibility and interval bounds for every head exponent.
    pub hypotheses: Vec<Check>,
    /// The klt certificate for the head points.
    pub klt: KltCertificate,
    /// Analyzed cones, one per singular chart.
    pub cones: Vec<ConeAnalysis>,
    /// The strict headline comparison I d < min(w_i w_j).
    pub headline_strict: Check,
    /// The paper-mode headline comparison d < min(w_i w_j).
    pub headline_paper: Check,
    /// min(w_i w_j) / (I d), when the index is positive.
    pub smooth_bound_strict: Option<Rat>,
    /// min(w_i w_j) / d.
    pub smooth_bound_paper: Option<Rat>,
    /// The strict tilt bound, when every required cone was built.
    pub epsilon_strict: Option<Rat>,
    /// The paper-mode tilt bound, when every required cone was built.
    pub epsilon_paper: Option<Rat>,
    /// The verdict under the strict convention.
    pub verdict_strict: ModeVerdict,
    /// The verdict under the published convention.
    pub verdict_paper: ModeVerdict,
    /// Whether the two conventions agree.
    pub modes_agree: bool,
    /// The final verdict for the requested mode.
    pub verdict: Verdict,
}

impl ExceptionalityCertificate {
    /// The tilt bound for the requested mode.
    pub fn epsilon(&self) -> Option<&Rat> {
        match self.mode {
            Mode::Strict => self.epsilon_strict.as_ref(),
            Mode::Paper => self.epsilon_paper.as_ref(),
        }
    }
}

fn worst_triple_gcd(ws: &[u64; 4]) -> u64 {
    let mut worst = 1;
    for i in 0..4 {
        for j in (i + 1)..4 {
            for k in (j + 1)..4 {
                worst = worst.max(ws[i].gcd(&ws[j]).gcd(&ws[k]));
            }
        }
    }
    worst
}

/// Head exponents whose divisibility and interval hypotheses are checked:
/// beta0 against v0 for both kinds, and alpha1 against v1 for kind B.
fn hypothesis_exponents(p: &Perturbation) -> Vec<(&'static str, u64, usize)> {
    match *p {
        Perturbation::A { beta0, .. } => vec![("beta0", beta0, 0)],
        Perturbation::B { alpha1, beta0, .. } => {
            vec![("beta0", beta0, 0), ("alpha1", alpha1, 1)]
        }
    }
}

/// Certifies exceptionality of a perturbed family under the requested
/// convention, always computing both conventions and reporting whether
/// they agree.
pub fn certify_exceptional(family: &HypersurfaceFamily, mode: Mode) -> ExceptionalityCertificate {
    let s = &family.structure;
    let w = &s.weights;
    let d = s.degree;
    let index = s.index;
    let m2 = s.m2;
    let m3 = s.m3;
    let head_sum = u128::from(w.weight(0)) + u128::from(w.weight(1));

    let mut hypotheses = Vec::new();
    hypotheses.push(Check::equals(
        "ambient well formed (largest gcd over four weights = 1)",
        Rat::from(ambient_gcd_violation(w).unwrap_or(1)),
        Rat::one(),
    ));
    hypotheses.push(Check::divides(
        "hypersurface well formed (every triple gcd divides d)",
        hypersurface_gcd_violation(w, d).unwrap_or(1),
        d,
    ));
    hypotheses.push(Check::at_least("index >= 1", Rat::from(index), Rat::one()));
    hypotheses.push(Check::less("index < w0 + w1", Rat::from(index), Rat::from(head_sum)));
    let gap_positive = Rat::from(index) < Rat::from(head_sum);

    for (label, e, v_pos) in hypothesis_exponents(&family.perturbation) {
        hypotheses.push(Check::divides(format!("{label} divides m3"), e, m3));
        let lower = Rat::from(index)
            / Rat::from(u128::from(s.v[v_pos]) * u128::from(m2) * u128::from(m2));
        hypotheses.push(Check::greater(
            format!("{label} > index / (v{v_pos} m2^2)"),
            Rat::from(e),
            lower,
        ));
        if gap_positive {
            let upper = Rat::from(d) / (Rat::from(head_sum) - Rat::from(index));
            hypotheses.push(Check::less(
                format!("{label} < d / (w0 + w1 - index)"),
                Rat::from(e),
                upper,
            ));
        }
    }

    let klt = certify_klt(family);

    let mut cones = Vec::new();
    let mut cones_complete = index >= 1;
    if index >= 1 {
        for (chart, e) in chart_exponents(&family.perturbation) {
            if e == 0 || m3 % e != 0 {
                cones_complete = false;
                continue;
            }
            let support = affine_support(family, chart);
            let residual = m3 / e;
            let weights = [residual, s.v[2], s.v[3], s.v[4]];
            let (degree_raw, cone_support) = weighted_tangent_cone(&support.points, weights);
            let degree = u64::try_from(degree_raw).expect("cone degree fits u64");
            let cone_index = i64::try_from(
                i128::from(residual) + i128::from(s.v[2]) + i128::from(s.v[3])
                    + i128::from(s.v[4])
                    - i128::from(degree),
            )
            .expect("cone index fits i64");
            let cone = ConeData {
                chart,
                head_exponent: e,
                residual,
                weights,
                degree,
                support: cone_support,
                index: cone_index,
            };
            let checks = vec![
                Check::at_least("cone index >= 1", Rat::from(cone_index), Rat::one()),
                Check::equals(
                    "cone well formed (largest gcd over three cone weights = 1)",
                    Rat::from(worst_triple_gcd(&weights)),
                    Rat::one(),
                ),
                Check::equals("cone degree = m3", Rat::from(degree), Rat::from(m3)),
            ];
            let index_bound = cone_index_bound(&cone, w, m2, index).expect("index checked");
            let multiplicity_bound =
                cone_multiplicity_bound(&cone, w, d, index).expect("index checked");
            cones.push(ConeAnalysis { cone, checks, index_bound, multiplicity_bound });
        }
    }

    let min_pair = Rat::from(w.min_pair_product());
    let headline_strict = Check::less(
        "index * d < min pair product",
        Rat::from(index) * Rat::from(d),
        min_pair.clone(),
    );
    let headline_paper = Check::less("d < min pair product", Rat::from(d), min_pair.clone());
    let smooth_bound_strict =
        (index >= 1).then(|| min_pair.clone() / (Rat::from(index) * Rat::from(d)));
    let smooth_bound_paper = Some(min_pair / Rat::from(d));

    let cone_minimum = cones
        .iter()
        .flat_map(|c| [c.index_bound.clone(), c.multiplicity_bound.clone()])
        .min();
    let epsilon_of = |smooth: &Option<Rat>| -> Option<Rat> {
        if !cones_complete || cones.is_empty() {
            return None;
        }
        let smooth = smooth.clone()?;
        Some(match &cone_minimum {
            Some(c) => smooth.min(c.clone()),
            None => smooth,
        })
    };
    let epsilon_strict = epsilon_of(&smooth_bound_strict);
    let epsilon_paper = epsilon_of(&smooth_bound_paper);

    let base_ok = hypotheses.iter().all(|c| c.holds)
        && klt.verdict == KltVerdict::Klt
        && cones_complete
        && !cones.is_empty()
        && cones.iter().all(|c| c.checks.iter().all(|ck| ck.holds));
    let verdict_of = |headline: &Check, epsilon: &Option<Rat>| -> ModeVerdict {
        let tilted = epsilon.as_ref().map_or(false, |e| *e > Rat::one());
        if base_ok && headline.holds && tilted {
            ModeVerdict::Exceptional
        } else {
            ModeVerdict::HypothesisNotMet
        }
    };
    let verdict_strict = verdict_of(&headline_strict, &epsilon_strict);
    let verdict_paper = verdict_of(&headline_paper, &epsilon_paper);
    let modes_agree = verdict_strict == verdict_paper;
    let verdict = if modes_agree {
        match verdict_paper {
            ModeVerdict::Exceptional => Verdict::Exceptional,
            ModeVerdict::HypothesisNotMet => Verdict::HypothesisNotMet,
        }
    } else {
        match mode {
            Mode::Strict => Verdict::DiscrepancyFlagged,
            Mode::Paper => match verdict_paper {
                ModeVerdict::Exceptional => Verdict::Exceptional,
                ModeVerdict::HypothesisNotMet => Verdict::HypothesisNotMet,
            },
        }
    };

    ExceptionalityCertificate {
        mode,
        hypotheses,
        klt,
        cones,
        headline_strict,
        headline_paper,
        smooth_bound_strict,
        smooth_bound_paper,
        epsilon_strict,
        epsilon_paper,
        verdict_strict,
        verdict_paper,
        modes_agree,
        verdict,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::WeightVector;
    use crate::sections::monomials_of_degree;
    use crate::smoothness::make_perturbation;
    use crate::structure::decompose;

    fn wv(w: [u64; 5]) -> WeightVector {
        WeightVector::new(w).unwrap()
    }

    fn family(
        w: [u64; 5],
        degree: u64,
        perturbation: Perturbation,
    ) -> HypersurfaceFamily {
        let w = wv(w);
        let s = decompose(&w, degree).unwrap();
        let basis = monomials_of_degree(&w, degree);
        make_perturbation(&s, &basis, perturbation).unwrap()
    }

    #[test]
    fn tangent_cone_drops_high_head_power() {
        let points = [
            [0, 0, 1, 3],
            [0, 1, 3, 0],
            [0, 13, 0, 1],
            [2, 0, 0, 0],
            [5, 0, 0, 0],
        ];
        let (degree, support) = weighted_tangent_cone(&points, [59, 7, 37, 27]);
        assert_eq!(degree, 118);
        assert_eq!(support, vec![[0, 0, 1, 3], [0, 1, 3, 0], [0, 13, 0, 1], [2, 0, 0, 0]]);
    }

    #[test]
    fn smooth_point_bound_examples() {
        let fermat = wv([1, 1, 1, 1, 1]);
        assert_eq!(smooth_point_bound(&fermat, 4).unwrap(), Rat::ratio(1, 4));
        assert_eq!(
            smooth_point_bound(&fermat, 6).unwrap_err(),
            ExceptionalError::NonFanoIndex { index: -1 }
        );
        let w = wv([118, 118, 35, 185, 135]);
        assert_eq!(smooth_point_bound(&w, 590).unwrap(), Rat::from(7u64));
        let w = wv([66, 231, 185, 259, 481]);
        assert_eq!(smooth_point_bound(&w, 1221).unwrap(), Rat::from(10u64));
    }

    #[test]
    fn degenerate_cone_index_bound() {
        // m2 = 1 head: the bound shrinks by the large index.
        let cone = ConeData {
            chart: Chart::Z1,
            head_exponent: 1,
            residual: 13,
            weights: [13, 5, 4, 3],
            degree: 13,
            support: vec![],
            index: 12,
        };
        let w = wv([13, 13, 5, 4, 3]);
        let bound = cone_index_bound(&cone, &w, 1, 25).unwrap();
        assert_eq!(bound, Rat::ratio(12, 25));
    }

    #[test]
    fn certificate_type_i_example() {
        let fam = family([118, 118, 35, 185, 135], 590, Perturbation::A {
            a0: 5,
            beta0: 2,
            beta1: 3,
        });
        let cert = certify_exceptional(&fam, Mode::Strict);
        assert!(cert.hypotheses.iter().all(|c| c.holds));
        assert_eq!(cert.klt.verdict, KltVerdict::Klt);
        assert_eq!(cert.cones.len(), 1);
        let cone = &cert.cones[0];
        assert_eq!(cone.cone.residual, 59);
        assert_eq!(cone.cone.weights, [59, 7, 37, 27]);
        assert_eq!(cone.cone.degree, 118);
        assert_eq!(cone.cone.index, 12);
        assert!(cone.checks.iter().all(|c| c.holds));
        assert_eq!(cone.index_bound, Rat::from(600u64));
        assert_eq!(cone.multiplicity_bound, Rat::ratio(4725, 59));
        assert_eq!(cert.smooth_bound_strict, Some(Rat::from(7u64)));
        assert_eq!(cert.epsilon_strict, Some(Rat::from(7u64)));
        assert_eq!(cert.epsilon_paper, Some(Rat::from(7u64)));
        assert!(cert.modes_agree);
        assert_eq!(cert.verdict, Verdict::Exceptional);
    }

    #[test]
    fn certificate_two_charts() {
        let fam = family([66, 231, 185, 259, 481], 1221, Perturbation::B {
            alpha0: 8,
            alpha1: 3,
            beta0: 1,
            beta1: 5,
        });
        let cert = certify_exceptional(&fam, Mode::Strict);
        assert!(cert.hypotheses.iter().all(|c| c.holds));
        assert_eq!(cert.cones.len(), 2);
        let z1 = &cert.cones[0];
        assert_eq!(z1.cone.chart, Chart::Z1);
        assert_eq!(z1.cone.weights, [33, 5, 7, 13]);
        assert_eq!(z1.cone.index, 25);
        assert_eq!(z1.index_bound, Rat::from(68450u64));
        assert_eq!(z1.multiplicity_bound, Rat::ratio(95830, 33));
        let z0 = &cert.cones[1];
        assert_eq!(z0.cone.chart, Chart::Z0);
        assert_eq!(z0.cone.weights, [11, 5, 7, 13]);
        assert_eq!(z0.cone.index, 3);
        assert_eq!(z0.index_bound, Rat::from(86247u64));
        assert_eq!(z0.multiplicity_bound, Rat::ratio(335405, 11));
        assert_eq!(cert.epsilon_strict, Some(Rat::from(10u64)));
        assert!(cert.modes_agree);
        assert_eq!(cert.verdict, Verdict::Exceptional);
    }

    #[test]
    fn discrepancy_is_flagged_under_strict_mode() {
        let fam = family([82, 82, 35, 125, 95], 410, Perturbation::A {
            a0: 5,
            beta0: 2,
            beta1: 3,
        });
        let strict = certify_exceptional(&fam, Mode::Strict);
        assert!(!strict.headline_strict.holds);
        assert_eq!(strict.headline_strict.lhs, Rat::from(3690u64));
        assert_eq!(strict.headline_strict.rhs, Rat::from(2870u64));
        assert!(strict.headline_paper.holds);
        assert_eq!(strict.cones.len(), 1);
        assert_eq!(strict.cones[0].cone.weights, [41, 7, 25, 19]);
        assert_eq!(strict.cones[0].cone.index, 10);
        assert_eq!(strict.cones[0].index_bound, Rat::ratio(20500, 369));
        assert_eq!(strict.cones[0].multiplicity_bound, Rat::ratio(3325, 369));
        assert_eq!(strict.epsilon_paper, Some(Rat::from(7u64)));
        assert_eq!(strict.verdict_strict, ModeVerdict::HypothesisNotMet);
        assert_eq!(strict.verdict_paper, ModeVerdict::Exceptional);
        assert!(!strict.modes_agree);
        assert_eq!(strict.verdict, Verdict::DiscrepancyFlagged);

        let paper = certify_exceptional(&fam, Mode::Paper);
        assert!(!paper.modes_agree);
        assert_eq!(paper.verdict, Verdict::Exceptional);
    }

    #[test]
    fn divisibility_failure_blocks_the_cone() {
        // beta0 = 3 does not divide m3 = 46.
        let fam = family([46, 46, 65, 55, 35], 230, Perturbation::B {
            alpha0: 4,
            alpha1: 1,
            beta0: 3,
            beta1: 2,
        });
        let cert = certify_exceptional(&fam, Mode::Paper);
        assert!(cert.hypotheses.iter().any(|c| !c.holds && c.relation == "divides"));
        assert!(cert.cones.is_empty());
        assert_eq!(cert.epsilon_paper, None);
        assert_eq!(cert.verdict, Verdict::HypothesisNotMet);
    }

    #[test]
    fn kind_b_with_unit_alpha1_needs_only_one_cone() {
        let fam = family([46, 46, 65, 55, 35], 230, Perturbation::B {
            alpha0: 4,
            alpha1: 1,
            beta0: 2,
            beta1: 3,
        });
        let cert = certify_exceptional(&fam, Mode::Paper);
        assert!(cert.hypotheses.iter().all(|c| c.holds));
        assert_eq!(cert.cones.len(), 1);
        let cone = &cert.cones[0];
        assert_eq!(cone.cone.weights, [23, 13, 11, 7]);
        assert_eq!(cone.cone.index, 8);
        assert_eq!(cone.index_bound, Rat::ratio(400, 17));
        assert_eq!(cone.multiplicity_bound, Rat::ratio(1925, 391));
        assert_eq!(cert.epsilon_paper, Some(Rat::ratio(1925, 391)));
        assert_eq!(cert.verdict_paper, ModeVerdict::Exceptional);
        assert_eq!(cert.verdict_strict, ModeVerdict::HypothesisNotMet);
        assert_eq!(cert.verdict, Verdict::Exceptional);
    }
}
