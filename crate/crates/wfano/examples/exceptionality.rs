//! Builds full exceptionality certificates, including a case where the
//! two bound conventions disagree.
//!
//! The certificate combines the klt step with weighted tangent cones at
//! the head points: each cone yields an orbifold-index bound and a
//! multiplicity bound, and together with a bound at smooth points they
//! give a tilt bound epsilon. The family is certified exceptional when
//! every hypothesis holds and epsilon exceeds 1. The smooth-point bound
//! is computed under two conventions, dividing the minimal pair product
//! of the weights by I d (strict) or by d (paper); when the two disagree
//! the strict run flags a discrepancy instead of deciding. Run with:
//!
//! ```text
//! cargo run --example exceptionality
//! ```

use wfano::core::WeightVector;
use wfano::exceptional::{certify_exceptional, Mode};
use wfano::sections::monomials_of_degree;
use wfano::smoothness::{make_perturbation, Perturbation};
use wfano::structure::decompose;

fn certify(weights: [u64; 5], degree: u64, p: Perturbation, mode: Mode) {
    let w = WeightVector::new(weights).expect("positive weights");
    let s = decompose(&w, degree).expect("structured weights");
    let basis = monomials_of_degree(&w, degree);
    let family = make_perturbation(&s, &basis, p).expect("non-quasismooth degeneration");
    let cert = certify_exceptional(&family, mode);

    println!("weights {w}, degree {degree}, perturbation {p}, mode {mode}");
    for cone in &cert.cones {
        println!(
            "  cone at chart {}: weights ({}, {}, {}, {}), index {}",
            cone.cone.chart,
            cone.cone.weights[0],
            cone.cone.weights[1],
            cone.cone.weights[2],
            cone.cone.weights[3],
            cone.cone.index
        );
        println!("    index bound {}, multiplicity bound {}", cone.index_bound, cone.multiplicity_bound);
    }
    println!("  klt: {}", cert.klt.verdict);
    println!("  headline strict: {}", cert.headline_strict);
    println!("  headline paper: {}", cert.headline_paper);
    let show = |e: &Option<wfano::core::Rat>| match e {
        Some(v) => v.to_string(),
        None => "undefined".to_string(),
    };
    println!(
        "  epsilon: strict {}, paper {}",
        show(&cert.epsilon_strict),
        show(&cert.epsilon_paper)
    );
    println!(
        "  verdicts: strict {}, paper {}, final {}",
        cert.verdict_strict, cert.verdict_paper, cert.verdict
    );
    println!();
}

fn main() {
    // Both conventions agree: certified exceptional with epsilon = 10.
    certify(
        [66, 231, 185, 259, 481],
        1221,
        Perturbation::B { alpha0: 8, alpha1: 3, beta0: 1, beta1: 5 },
        Mode::Strict,
    );

    // The conventions disagree (index 9 tightens the strict headline):
    // the strict run flags the discrepancy, the paper-mode run certifies.
    let p = Perturbation::A { a0: 5, beta0: 2, beta1: 3 };
    certify([82, 82, 35, 125, 95], 410, p, Mode::Strict);
    certify([82, 82, 35, 125, 95], 410, p, Mode::Paper);
}
