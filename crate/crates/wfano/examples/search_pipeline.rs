//! Runs the bounded search for structured systems carrying certified
//! exceptional degenerations.
//!
//! The search enumerates cycle exponents, cycle cofactor and head
//! multiplicities in ascending lexicographic order, analyzes every
//! supported head perturbation of each system, and keeps the records
//! passing the requested filters. Record order is the enumeration order
//! regardless of thread count. Run with:
//!
//! ```text
//! cargo run --release --example search_pipeline
//! ```

use wfano::exceptional::ModeVerdict;
use wfano::search::{run, SearchBounds};

fn main() {
    let bounds = SearchBounds {
        max_a: [3, 3, 13],
        max_m2: 5,
        max_v: 1,
        max_degree: 590,
        require_well_formed: false,
        require_ke: false,
        require_exceptional: true,
    };
    println!(
        "searching a <= ({}, {}, {}), m2 <= {}, v <= {}, d <= {}",
        bounds.max_a[0],
        bounds.max_a[1],
        bounds.max_a[2],
        bounds.max_m2,
        bounds.max_v,
        bounds.max_degree
    );
    let records = run(&bounds);
    println!("{} records with a certified exceptional degeneration\n", records.len());
    for r in &records {
        println!("weights {}, degree {}", r.weights, r.degree);
        println!(
            "  index {}, basis size {}, quasismooth reference: {}",
            r.structure.index,
            r.basis_size,
            match r.reference_quasismooth {
                Some(true) => "yes",
                Some(false) => "no",
                None => "n/a",
            }
        );
        if let Some(ke) = &r.ke {
            println!("  KE estimate holds: {}", ke.holds);
        }
        for o in &r.perturbations {
            let eps = o
                .epsilon_paper
                .as_ref()
                .map(|e| e.to_string())
                .unwrap_or_else(|| "undefined".to_string());
            println!(
                "  {}: paper {}, strict {}, epsilon {}{}",
                o.perturbation,
                o.exceptional_paper,
                o.exceptional_strict,
                eps,
                if o.modes_agree { "" } else { "  (conventions disagree)" }
            );
        }
        println!();
    }
    let certified = records
        .iter()
        .flat_map(|r| &r.perturbations)
        .filter(|o| o.exceptional_paper == ModeVerdict::Exceptional)
        .count();
    println!("{certified} certified families in total");
}
