//! Zonotopes `Z(c, G) = { c + G·ε | ε ∈ [-1, 1]^k }` with tagged generator
//! columns, conversion to and from resolved stores, and order reduction.

mod linalg;
mod reduce;

pub use reduce::{reduce, Method, ReductionOptions};

use std::collections::BTreeMap;

use crate::affine::{AffineForm, SymbolId};
use crate::error::{Error, Result};
use crate::store::{ResolvedStore, StreamOrder, Value};

/// One generator column, tagged with the noise symbol it scales.
#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    pub tag: SymbolId,
    pub column: Vec<f64>,
}

impl Generator {
    pub fn is_zero(&self) -> bool {
        self.column.iter().all(|&x| x == 0.0)
    }

    pub fn norm1(&self) -> f64 {
        self.column.iter().map(|x| x.abs()).sum()
    }

    pub fn norm2(&self) -> f64 {
        self.column.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn norm_inf(&self) -> f64 {
        self.column.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Zonotope {
    center: Vec<f64>,
    generators: Vec<Generator>,
}

impl Zonotope {
    /// Builds a zonotope, dropping all-zero columns.
    pub fn new(center: Vec<f64>, generators: Vec<Generator>) -> Result<Self> {
        for g in &generators {
            if g.column.len() != center.len() {
                return Err(Error::DimensionMismatch {
                    expected: center.len(),
                    found: g.column.len(),
                });
            }
        }
        Ok(Zonotope {
            center,
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    /// Number of (non-zero) generator columns.
    pub fn size(&self) -> usize {
        self.generators.len()
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// `max { l·x | x ∈ Z }`, i.e. `l·c + Σ |l·gᵢ|`.
    pub fn support(&self, dir: &[f64]) -> f64 {
        assert_eq!(dir.len(), self.dim(), "direction has the wrong dimension");
        let dot = |v: &[f64]| v.iter().zip(dir).map(|(a, b)| a * b).sum::<f64>();
        dot(&self.center)
            + self
                .generators
                .iter()
                .map(|g| dot(&g.column).abs())
                .sum::<f64>()
    }

    /// Per-dimension `(lo, hi)` of the smallest enclosing box.
    pub fn interval_hull(&self) -> Vec<(f64, f64)> {
        (0..self.dim())
            .map(|i| {
                let r: f64 = self.generators.iter().map(|g| g.column[i].abs()).sum();
                (self.center[i] - r, self.center[i] + r)
            })
            .collect()
    }
}

/// Maps each slot of `order` to a row: centers to `c`, coefficients to `G`.
/// Columns come out in canonical symbol order.
pub fn to_zonotope(store: &ResolvedStore, order: &StreamOrder) -> Result<Zonotope> {
    let forms: Vec<&AffineForm> = order
        .iter()
        .map(|slot| match store.get(slot) {
            Some(Value::Real(a)) => Ok(a),
            _ => Err(Error::NotResolved(slot.to_string())),
        })
        .collect::<Result<_>>()?;
    let d = forms.len();
    let mut columns: BTreeMap<SymbolId, Vec<f64>> = BTreeMap::new();
    for (row, form) in forms.iter().enumerate() {
        for &(id, c) in form.terms() {
            columns.entry(id).or_insert_with(|| vec![0.0; d])[row] = c;
        }
    }
    Zonotope::new(
        forms.iter().map(|a| a.center()).collect(),
        columns
            .into_iter()
            .map(|(tag, column)| Generator { tag, column })
            .collect(),
    )
}

/// Inverse of [`to_zonotope`]: one affine form per row.
pub fn from_zonotope(z: &Zonotope, order: &StreamOrder) -> Result<ResolvedStore> {
    if z.dim() != order.len() {
        return Err(Error::DimensionMismatch {
            expected: order.len(),
            found: z.dim(),
        });
    }
    order
        .iter()
        .enumerate()
        .map(|(row, slot)| {
            let terms = z
                .generators
                .iter()
                .filter(|g| g.column[row] != 0.0)
                .map(|g| (g.tag, g.column[row]));
            let form = AffineForm::from_terms(z.center[row], terms)?;
            Ok((slot.clone(), Value::Real(form)))
        })
        .collect()
}

/// Mean over dimensions of `((lo_e - lo_a)² + (hi_a - hi_e)²) / 2`.
pub fn hull_error(exact: &[(f64, f64)], approx: &[(f64, f64)]) -> Result<f64> {
    if exact.len() != approx.len() {
        return Err(Error::DimensionMismatch {
            expected: exact.len(),
            found: approx.len(),
        });
    }
    if exact.is_empty() {
        return Ok(0.0);
    }
    let total: f64 = exact
        .iter()
        .zip(approx)
        .map(|(e, a)| ((e.0 - a.0).powi(2) + (a.1 - e.1).powi(2)) / 2.0)
        .sum();
    Ok(total / exact.len() as f64)
}

/// Hull-difference error between an exact zonotope and its approximation.
pub fn mean_hull_error(exact: &Zonotope, approx: &Zonotope) -> Result<f64> {
    hull_error(&exact.interval_hull(), &approx.interval_hull())
}
