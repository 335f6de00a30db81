//! Enumeration and analysis of structured weight systems.
//!
//! The search walks cycle exponents (a2, a3, a4), cycle cofactor m2 and
//! head multiplicities (v0, v1) in ascending lexicographic order, builds
//! the structured weight system of each admissible tuple, and analyzes
//! every head perturbation supported by its monomial basis. Records come
//! back in enumeration order regardless of how many threads run the
//! analyses, so output files are reproducible byte for byte.

use num::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::core::{
    anticanonical_cycle_degree, is_ambient_well_formed, is_hypersurface_well_formed, Monomial,
    Rat, WeightVector,
};
use crate::exceptional::{certify_exceptional, Mode, ModeVerdict};
use crate::newton::KltVerdict;
use crate::sections::monomials_of_degree;
use crate::smoothness::{
    is_quasismooth, ke_estimate, make_perturbation, reference_support, KeEstimate, Perturbation,
    SmoothnessError,
};
use crate::structure::{
    classify_heads, cycle_reduced_weights, decompose, HeadClassification, StructuredWeights,
};

/// Bounds and filters for a search run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    /// Upper bounds for the cycle exponents (a2, a3, a4).
    pub max_a: [u64; 3],
    /// Upper bound for the cycle cofactor m2.
    pub max_m2: u64,
    /// Upper bound for the head multiplicities v0 and v1.
    pub max_v: u64,
    /// Upper bound for the hypersurface degree d = m2 m3.
    pub max_degree: u64,
    /// Keep only records whose ambient space and hypersurface are well
    /// formed.
    pub require_well_formed: bool,
    /// Keep only records whose quasismooth reference member satisfies the
    /// Kähler-Einstein estimate.
    pub require_ke: bool,
    /// Keep only records with at least one perturbation certified
    /// exceptional under the published convention.
    pub require_exceptional: bool,
}

/// The analysis of one head perturbation of a record.
#[derive(Debug, Clone, Serialize)]
pub struct PerturbationOutcome {
    /// The perturbation.
    pub perturbation: Perturbation,
    /// The klt verdict for its head points.
    pub klt: KltVerdict,
    /// The exceptionality verdict under the strict convention.
    pub exceptional_strict: ModeVerdict,
    /// The exceptionality verdict under the published convention.
    pub exceptional_paper: ModeVerdict,
    /// The strict tilt bound, when defined.
    pub epsilon_strict: Option<Rat>,
    /// The paper-mode tilt bound, when defined.
    pub epsilon_paper: Option<Rat>,
    /// Whether the two conventions agree.
    pub modes_agree: bool,
}

/// One analyzed structured weight system.
#[derive(Debug, Clone, Serialize)]
pub struct SearchRecord {
    /// Version tag of this record layout.
    pub schema_version: String,
    /// The ambient weights.
    pub weights: WeightVector,
    /// The hypersurface degree.
    pub degree: u64,
    /// The head/cycle structure.
    pub structure: StructuredWeights,
    /// Whether the ambient space is well formed.
    pub ambient_well_formed: bool,
    /// Whether a general hypersurface is well formed.
    pub hypersurface_well_formed: bool,
    /// The admissible and effective head types.
    pub head: HeadClassification,
    /// Number of degree-d monomials.
    pub basis_size: usize,
    /// Support of the reference member (effective head plus cycle), empty
    /// when no head type is admissible.
    pub reference_support: Vec<Monomial>,
    /// Whether the reference member is quasismooth, when it exists and
    /// the analysis applies.
    pub reference_quasismooth: Option<bool>,
    /// The Kähler-Einstein estimate for the reference member, when the
    /// index is positive.
    pub ke: Option<KeEstimate>,
    /// The anticanonical degree (-K)^3 = I^3 d / (w0 w1 w2 w3 w4), with
    /// the linear index convention I d / prod(w), when the index is
    /// positive.
    pub anticanonical_degree: Option<Rat>,
    /// All analyzed head perturbations, in basis order.
    pub perturbations: Vec<PerturbationOutcome>,
}

/// Enumerates the structured weight systems within the bounds, in
/// ascending lexicographic order of (a2, a3, a4, m2, v0, v1).
pub fn enumerate_structured(bounds: &SearchBounds) -> Vec<StructuredWeights> {
    let mut out = Vec::new();
    for a2 in 1..=bounds.max_a[0] {
        for a3 in 1..=bounds.max_a[1] {
            for a4 in 1..=bounds.max_a[2] {
                let Some(product) = a2.checked_mul(a3).and_then(|p| p.checked_mul(a4)) else {
                    continue;
                };
                let m3 = product + 1;
                let v_cycle = cycle_reduced_weights([a2, a3, a4]);
                let coprime_cycle = v_cycle[0].gcd(&v_cycle[1]) == 1
                    && v_cycle[0].gcd(&v_cycle[2]) == 1
                    && v_cycle[1].gcd(&v_cycle[2]) == 1;
                if !coprime_cycle {
                    continue;
                }
                for m2 in 1..=bounds.max_m2 {
                    if m2.gcd(&m3) != 1 {
                        continue;
                    }
                    let Some(degree) = m2.checked_mul(m3) else { continue };
                    if degree > bounds.max_degree {
                        continue;
                    }
                    for v0 in 1..=bounds.max_v {
                        for v1 in 1..=bounds.max_v {
                            if v0.gcd(&v1) != 1 {
                                continue;
                            }
                            let head = [m3.checked_mul(v0), m3.checked_mul(v1)];
                            let cycle = v_cycle.map(|v| m2.checked_mul(v));
                            let (Some(w0), Some(w1)) = (head[0], head[1]) else { continue };
                            let (Some(w2), Some(w3), Some(w4)) = (cycle[0], cycle[1], cycle[2])
                            else {
                                continue;
                            };
                            let w = WeightVector::new([w0, w1, w2, w3, w4])
                                .expect("constructed weights are positive");
                            let s = decompose(&w, degree)
                                .expect("constructed weights satisfy the structure conditions");
                            out.push(s);
                        }
                    }
                }
            }
        }
    }
    out
}

/// The head perturbations supported by the basis: every pure z0 power
/// paired with every mixed head of z0 exponent at least 2 (kind A), and
/// every ordered pair of mixed heads (kind B).
fn candidates(basis: &[Monomial]) -> Vec<Perturbation> {
    let mut pure = Vec::new();
    let mut mixed = Vec::new();
    for m in basis {
        if m.supported_within(&[0, 1]) && m.exponent(0) >= 1 {
            if m.exponent(1) == 0 {
                pure.push(m.exponent(0));
            } else {
                mixed.push((m.exponent(0), m.exponent(1)));
            }
        }
    }
    // Basis order is z0-heavy first, so mixed z0 exponents strictly
    // decrease and every ordered pair has alpha0 > beta0.
    let mut out = Vec::new();
    for &a0 in &pure {
        for &(beta0, beta1) in &mixed {
            if beta0 >= 2 {
                out.push(Perturbation::A { a0, beta0, beta1 });
            }
        }
    }
    for i in 0..mixed.len() {
        for j in (i + 1)..mixed.len() {
            let (alpha0, alpha1) = mixed[i];
            let (beta0, beta1) = mixed[j];
            out.push(Perturbation::B { alpha0, alpha1, beta0, beta1 });
        }
    }
    out
}

/// Analyzes one structured weight system: well-formedness, head types,
/// reference member, Kähler-Einstein estimate, and every supported head
/// perturbation. Candidates whose support is quasismooth carry no head
/// singularity to certify and are skipped.
pub fn analyze(s: &StructuredWeights) -> SearchRecord {
    let w = s.weights;
    let degree = s.degree;
    let basis = monomials_of_degree(&w, degree);
    let head = classify_heads(&w, degree);
    let (reference, reference_quasismooth) = match &head.effective {
        Some(h) => {
            let support = reference_support(s, h);
            let qs = is_quasismooth(&w, degree, &support).ok().map(|r| r.quasismooth);
            (support, qs)
        }
        None => (Vec::new(), None),
    };
    let mut perturbations = Vec::new();
    for candidate in candidates(basis.monomials()) {
        let family = match make_perturbation(s, &basis, candidate) {
            Ok(f) => f,
            Err(SmoothnessError::QuasismoothSupport) => continue,
            Err(_) => continue,
        };
        let cert = certify_exceptional(&family, Mode::Paper);
        perturbations.push(PerturbationOutcome {
            perturbation: family.perturbation,
            klt: cert.klt.verdict,
            exceptional_strict: cert.verdict_strict,
            exceptional_paper: cert.verdict_paper,
            epsilon_strict: cert.epsilon_strict,
            epsilon_paper: cert.epsilon_paper,
            modes_agree: cert.modes_agree,
        });
    }
    SearchRecord {
        schema_version: "1".to_string(),
        weights: w,
        degree,
        structure: *s,
        ambient_well_formed: is_ambient_well_formed(&w),
        hypersurface_well_formed: is_hypersurface_well_formed(&w, degree),
        head,
        basis_size: basis.len(),
        reference_support: reference,
        reference_quasismooth,
        ke: ke_estimate(&w, degree).ok(),
        anticanonical_degree: anticanonical_cycle_degree(&w, degree).ok(),
        perturbations,
    }
}

fn keep(record: &SearchRecord, bounds: &SearchBounds) -> bool {
    if bounds.require_well_formed
        && !(record.ambient_well_formed && record.hypersurface_well_formed)
    {
        return false;
    }
    if bounds.require_ke && !record.ke.as_ref().map_or(false, |k| k.holds) {
        return false;
    }
    if bounds.require_exceptional
        && !record
            .perturbations
            .iter()
            .any(|p| p.exceptional_paper == ModeVerdict::Exceptional)
    {
        return false;
    }
    true
}

/// Runs the search: enumerate, analyze in parallel, filter. The record
/// order is the enumeration order.
pub fn run(bounds: &SearchBounds) -> Vec<SearchRecord> {
    let systems = enumerate_structured(bounds);
    let mut records: Vec<SearchRecord> = systems.par_iter().map(analyze).collect();
    records.retain(|r| keep(r, bounds));
    records
}
