//! Recomputes every bundled reference system and compares the results
//! with their pinned outcomes.
//!
//! Each fixture freezes a structured weight system together with its
//! decomposition, basis size, head type, and the certified verdicts and
//! tilt bounds of selected degenerations. [`wfano::fixtures::verify_case`]
//! recomputes all of it from scratch, so this run is an end-to-end check
//! of the whole pipeline. Run with:
//!
//! ```text
//! cargo run --example reproduce
//! ```

use wfano::fixtures::{fixture, fixture_ids, verify_case};

fn main() {
    let mut failures = 0usize;
    for id in fixture_ids() {
        for case in fixture(id).expect("listed fixtures resolve") {
            match verify_case(&case) {
                Ok(()) => println!("{}: ok", case.label),
                Err(detail) => {
                    failures += 1;
                    println!("{}: MISMATCH: {detail}", case.label);
                }
            }
        }
    }
    if failures == 0 {
        println!("all fixtures reproduce");
    } else {
        println!("{failures} fixture(s) failed to reproduce");
        std::process::exit(1);
    }
}
