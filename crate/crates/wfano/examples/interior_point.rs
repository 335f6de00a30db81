//! Decides interiority of a point in a Newton polyhedron by exact linear
//! programming.
//!
//! Given support points S in the nonnegative orthant, the Newton
//! polyhedron is conv(S) + R_{>=0}^n, and a target t is interior exactly
//! when some convex combination of S lies strictly below t in every
//! coordinate. [`wfano::newton::interior_test`] minimizes the largest
//! ratio over square subsystems in exact rational arithmetic and returns
//! a reusable witness when the optimum is below 1. Run with:
//!
//! ```text
//! cargo run --example interior_point
//! ```

use wfano::core::Rat;
use wfano::newton::interior_test;

fn show(name: &str, points: &[Vec<u64>], target: &[Rat]) {
    let labels: Vec<String> = points.iter().map(|p| format!("{p:?}")).collect();
    println!("{name}: points {}", labels.join(", "));
    match interior_test(points, target) {
        Some(witness) => {
            println!("  interior, max ratio {}", witness.max_ratio);
            for entry in &witness.combination {
                println!("    {} at {:?}", entry.coefficient, entry.point);
            }
            assert!(witness.dominates(target));
        }
        None => println!("  not interior"),
    }
    println!();
}

fn main() {
    let ones: Vec<Rat> = vec![Rat::one(); 2];

    // The origin puts every target in the interior.
    show("origin", &[vec![0, 0]], &ones);

    // (1,1) lies on the boundary of conv{(2,0),(0,2)} + R^2: rejected.
    show("diagonal boundary", &[vec![2, 0], vec![0, 2]], &ones);

    // Pulling one generator inwards opens the interior.
    show("diagonal interior", &[vec![1, 0], vec![0, 2]], &ones);

    // A four-dimensional chart support from a certified family: the
    // all-ones point is interior, so the head singularity is klt.
    let ones4: Vec<Rat> = vec![Rat::one(); 4];
    let chart = vec![
        vec![1u64, 0, 0, 0],
        vec![0, 4, 0, 1],
        vec![0, 1, 4, 0],
        vec![0, 0, 1, 2],
    ];
    show("head chart of a structured system", &chart, &ones4);
}
