//! Recovers the head/cycle structure of the bundled weight systems.
//!
//! A structured weight vector splits as (m3 v0, m3 v1, m2 v2, m2 v3, m2 v4)
//! with coprime cofactors m2 and m3, degree d = m2 m3, and a three-term
//! cycle z4 z2^a2 + z2 z3^a3 + z3 z4^a4 of determinant m3 = a2 a3 a4 + 1.
//! Run with:
//!
//! ```text
//! cargo run --example decompose
//! ```

use wfano::core::WeightVector;
use wfano::structure::{classify_heads, decompose};

fn main() {
    let cases: [([u64; 5], u64); 4] = [
        ([66, 231, 185, 259, 481], 1221),
        ([118, 118, 35, 185, 135], 590),
        ([82, 82, 35, 125, 95], 410),
        ([46, 46, 65, 55, 35], 230),
    ];
    for (weights, degree) in cases {
        let w = WeightVector::new(weights).expect("positive weights");
        let s = decompose(&w, degree).expect("structured weights");
        println!("weights {w}, degree {degree}");
        println!("  m2 = {}, m3 = {}", s.m2, s.m3);
        println!("  cycle exponents a = ({}, {}, {})", s.a[0], s.a[1], s.a[2]);
        println!(
            "  reduced weights v = ({}, {}, {}, {}, {})",
            s.v[0], s.v[1], s.v[2], s.v[3], s.v[4]
        );
        println!("  Fano index I = {}", s.index);
        let cycle: Vec<String> = s.cycle_monomials().iter().map(|m| m.to_string()).collect();
        println!("  cycle: {}", cycle.join(" + "));
        match classify_heads(&w, degree).effective {
            Some(head) => println!("  effective head type: {head}"),
            None => println!("  effective head type: none"),
        }
        println!();
    }

    // Weight vectors without the structure are rejected with a reason.
    let w = WeightVector::new([1, 2, 3, 4, 5]).expect("positive weights");
    match decompose(&w, 7) {
        Ok(_) => unreachable!("(1,2,3,4,5) is not structured"),
        Err(e) => println!("weights {w}, degree 7: rejected ({e})"),
    }
}
