//! Certifies that a perturbed family has klt singularities at its head
//! points, by two independent routes.
//!
//! At a head point the family is a cone over the cycle; the singularity
//! is klt exactly when the all-ones point lies in the interior of the
//! Newton polyhedron of the dehomogenized support. The certificate
//! carries a closed-form convex combination built from the cycle vertex
//! weights, and an exact linear program that re-derives an interior
//! witness from scratch. Both routes must agree. Run with:
//!
//! ```text
//! cargo run --example klt_certificate
//! ```

use wfano::core::WeightVector;
use wfano::newton::certify_klt;
use wfano::sections::monomials_of_degree;
use wfano::smoothness::{make_perturbation, Perturbation};
use wfano::structure::decompose;

fn main() {
    let w = WeightVector::new([66, 231, 185, 259, 481]).expect("positive weights");
    let degree = 1221;
    let s = decompose(&w, degree).expect("structured weights");
    let basis = monomials_of_degree(&w, degree);
    let p = Perturbation::B { alpha0: 8, alpha1: 3, beta0: 1, beta1: 5 };
    let family = make_perturbation(&s, &basis, p).expect("non-quasismooth degeneration");

    println!("weights {w}, degree {degree}, perturbation {p}");
    let cert = certify_klt(&family);
    println!("hypotheses:");
    for check in &cert.hypotheses {
        println!("  {check}");
    }
    for chart in &cert.charts {
        println!("chart {} (head exponent {}):", chart.chart, chart.head_exponent);
        println!("  dehomogenized support:");
        for point in &chart.support.points {
            println!("    {point:?}");
        }
        println!("  closed-form witness:");
        for entry in &chart.explicit.combination {
            println!("    {} at {:?}", entry.coefficient, entry.point);
        }
        println!("  closed-form max ratio: {}", chart.explicit.max_ratio);
        match &chart.lp {
            Some(lp) => println!("  linear-program max ratio: {}", lp.max_ratio),
            None => println!("  linear program found no witness"),
        }
    }
    println!("verdict: {}", cert.verdict);
}
