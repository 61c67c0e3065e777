//! Order reduction of a small zonotope with each method.

use zonomon::affine::{SymbolKind, SymbolSource};
use zonomon::zonotope::{mean_hull_error, reduce, Generator, Method, ReductionOptions, Zonotope};

pub fn run_example() -> zonomon::Result<Vec<(Method, usize, f64)>> {
    let mut symbols = SymbolSource::new();
    let columns = [
        [0.08, 0.08],
        [0.016, 0.176],
        [0.0032, 0.0352],
        [0.0496, 0.1456],
        [0.3, -0.1],
        [-0.05, 0.2],
    ];
    let generators = columns
        .iter()
        .map(|c| Generator {
            tag: symbols.fresh(SymbolKind::Measurement),
            column: c.to_vec(),
        })
        .collect();
    let z = Zonotope::new(vec![1.392, 2.512], generators)?;
    println!("original: {} generators, hull {:?}", z.size(), z.interval_hull());

    let mut out = Vec::new();
    for method in Method::ALL {
        let r = reduce(&z, 3, method, ReductionOptions::default(), &mut symbols)?;
        let err = mean_hull_error(&z, &r)?;
        println!("{method:>9}: {} generators, hull error {err:.3e}", r.size());
        for g in r.generators() {
            println!("           {} {:?}", g.tag, g.column);
        }
        out.push((method, r.size(), err));
    }

    let dir = [1.0, -1.0];
    let reduced = reduce(&z, 2, Method::Girard, ReductionOptions::default(), &mut symbols)?;
    println!(
        "\nsupport along {dir:?}: original {:.4}, reduced {:.4}",
        z.support(&dir),
        reduced.support(&dir)
    );
    Ok(out)
}

fn main() -> zonomon::Result<()> {
    run_example()?;
    Ok(())
}
