//! Enumerates the monomial basis of degree-d sections and checks it
//! against the closed form attached to the effective head type.
//!
//! For a structured system the degree-d monomials are the head ladder
//! z0^e0 z1^e1 (a ladder of head exponents depending on the head type)
//! together with the three cycle monomials. The closed form writes this
//! list down directly; the enumeration recurses over all five exponents.
//! Run with:
//!
//! ```text
//! cargo run --example basis
//! ```

use wfano::core::WeightVector;
use wfano::sections::{closed_form_basis, monomials_of_degree};
use wfano::structure::{classify_heads, decompose};

fn main() {
    let cases: [([u64; 5], u64); 3] = [
        ([66, 231, 185, 259, 481], 1221),
        ([118, 118, 35, 185, 135], 590),
        ([82, 82, 35, 125, 95], 410),
    ];
    for (weights, degree) in cases {
        let w = WeightVector::new(weights).expect("positive weights");
        let s = decompose(&w, degree).expect("structured weights");
        let head = classify_heads(&w, degree).effective.expect("an effective head type");
        let enumerated = monomials_of_degree(&w, degree);
        let closed = closed_form_basis(&s, &head).expect("closed form applies");

        println!("weights {w}, degree {degree}, head type {head}");
        println!("  {} monomials:", enumerated.len());
        for m in enumerated.iter() {
            println!("    {m}");
        }
        println!(
            "  closed form {} the enumeration",
            if closed == enumerated { "matches" } else { "DOES NOT match" }
        );
        println!();
    }
}
