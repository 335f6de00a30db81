//! Tests quasismoothness of support sets and builds non-quasismooth head
//! perturbations.
//!
//! The reference member of a structured system (effective head plus
//! cycle) is quasismooth. Replacing the head by two monomials of the
//! right shape breaks quasismoothness while the cycle keeps the
//! singularities mild; [`wfano::smoothness::make_perturbation`] builds
//! exactly these degenerations and rejects supports that stay
//! quasismooth. Run with:
//!
//! ```text
//! cargo run --example quasismooth
//! ```

use wfano::core::WeightVector;
use wfano::sections::monomials_of_degree;
use wfano::smoothness::{is_quasismooth, make_perturbation, reference_support, Perturbation};
use wfano::structure::{classify_heads, decompose};

fn main() {
    let w = WeightVector::new([118, 118, 35, 185, 135]).expect("positive weights");
    let degree = 590;
    let s = decompose(&w, degree).expect("structured weights");
    let head = classify_heads(&w, degree).effective.expect("an effective head type");

    let reference = reference_support(&s, &head);
    let report = is_quasismooth(&w, degree, &reference).expect("valid support");
    let names: Vec<String> = reference.iter().map(|m| m.to_string()).collect();
    println!("weights {w}, degree {degree}");
    println!("reference member {}", names.join(" + "));
    println!("  quasismooth: {}", report.quasismooth);
    println!();

    let basis = monomials_of_degree(&w, degree);
    let degenerations = [
        Perturbation::A { a0: 5, beta0: 2, beta1: 3 },
        Perturbation::B { alpha0: 3, alpha1: 2, beta0: 2, beta1: 3 },
    ];
    for p in degenerations {
        let family = make_perturbation(&s, &basis, p).expect("non-quasismooth degeneration");
        let report = is_quasismooth(&w, degree, &family.support).expect("valid support");
        let names: Vec<String> = family.support.iter().map(|m| m.to_string()).collect();
        println!("perturbation {p}");
        println!("  support {}", names.join(" + "));
        println!("  quasismooth: {}", report.quasismooth);
        for failure in &report.failures {
            println!(
                "  condition {} fails at coordinates {:?}",
                failure.condition, failure.indices
            );
        }
        println!();
    }

    // A head pair that keeps the general member quasismooth is rejected:
    // there is no singularity left to certify.
    let p = Perturbation::B { alpha0: 4, alpha1: 1, beta0: 1, beta1: 4 };
    match make_perturbation(&s, &basis, p) {
        Ok(_) => unreachable!("this support is quasismooth"),
        Err(e) => println!("perturbation {p}: rejected ({e})"),
    }
}
