//! Parsing, checking and pretty-printing specifications.

use zonomon::lang::{self, evaluation_order};
use zonomon::specs;

pub fn run_example() -> usize {
    let spec = lang::parse(specs::OMNI_ROBOT).expect("bundled spec is well-formed");
    println!("{spec}");

    let order = evaluation_order(&spec).unwrap();
    let names: Vec<&str> = order.iter().map(|&i| spec.outputs[i].name.as_str()).collect();
    println!("evaluation order: {}", names.join(", "));
    println!("carried between steps: {}", spec.delayed_streams().join(", "));

    let broken = [
        "input v: Float\noutput y := z + 1.0",
        "output b := c + 1.0\noutput c := b * 2.0",
        "input x: Float\noutput y := x.offset(by: -2).defaults(to: 0.0)",
    ];
    let mut reported = 0;
    for src in broken {
        match lang::parse(src) {
            Ok(_) => println!("accepted"),
            Err(diags) => {
                println!("rejected:\n{diags}\n");
                reported += diags.len();
            }
        }
    }
    reported
}

fn main() {
    run_example();
}
