//! Correlated uncertainty: affine forms cancel where intervals cannot.

use zonomon::affine::{AffineForm, SymbolKind, SymbolSource};

pub fn run_example() -> zonomon::Result<(f64, f64)> {
    let mut symbols = SymbolSource::new();
    let e1 = symbols.fresh(SymbolKind::Measurement);
    let e2 = symbols.fresh(SymbolKind::Measurement);

    // x in [2, 6]
    let x = AffineForm::from_terms(4.0, [(e1, 2.0)])?;
    let diff = x.sub(&x)?;
    println!("x = {x}, bounds {:?}", x.interval());
    println!("x - x = {diff}, bounds {:?} (intervals give [-4, 4])", diff.interval());

    let y = AffineForm::from_terms(1.0, [(e1, 0.5), (e2, 1.0)])?;
    let sum = x.add(&y)?;
    let prod = x.mul(&y, &mut symbols)?;
    println!("x + y = {sum}, bounds {:?}", sum.interval());
    println!("x * y = {prod}, bounds {:?}", prod.interval());

    let scaled = x.scale(0.25)?.shift(-1.0)?;
    println!("0.25x - 1 = {scaled}");
    Ok(diff.interval())
}

fn main() -> zonomon::Result<()> {
    run_example()?;
    Ok(())
}
