//! Run the miniversal deformation of a codifferential on 0|3 and print it.
//!
//! cargo run --example miniversal -- "phi[101]_1 + phi[101]_2 + phi[011]_2"

use linfty::algebra::ParamSpace;
use linfty::deform::{miniversal, verify_miniversal, DeformOptions};
use linfty::superspace::GradedSpace;
use linfty::text::parse_cochain;

fn main() {
    let text = std::env::args().nth(1).unwrap_or_else(|| "0".into());
    let d = parse_cochain(&text, GradedSpace::odd(3), ParamSpace::default(), None).expect("cochain");
    let r = miniversal(&d, &DeformOptions::default()).expect("deformation");
    for p in &r.state.parameters {
        println!("{}: {}", p.parameter, p.representative);
    }
    for (k, h) in r.state.history.iter().enumerate() {
        println!("order {}: {}", k + 1, h);
    }
    println!("terminated: {} at {:?}", r.terminated, r.termination_order);
    for g in r.relations.generators() {
        if !g.is_zero() {
            println!("  {g}");
        }
    }
    println!("verified: {}", verify_miniversal(&r));
}
