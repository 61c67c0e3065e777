use std::fmt;
use std::str::FromStr;

use super::linalg::symmetric_eigenvectors;
use super::{Generator, Zonotope};
use crate::affine::{SymbolKind, SymbolSource};
use crate::error::{Error, Result};

/// Order-reduction strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Interval hull of all reducible generators.
    Box,
    /// Keep the generators with the largest `‖g‖₁ − ‖g‖∞`, box the rest.
    Girard,
    /// Keep the generators with the largest `‖g‖₂`, box the rest.
    Combastel,
    /// Keep the longest generators, box the rest in their principal axes.
    Pca,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Box, Method::Girard, Method::Combastel, Method::Pca];

    pub fn name(self) -> &'static str {
        match self {
            Method::Box => "box",
            Method::Girard => "girard",
            Method::Combastel => "combastel",
            Method::Pca => "pca",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "box" => Ok(Method::Box),
            "girard" => Ok(Method::Girard),
            "combastel" => Ok(Method::Combastel),
            "pca" => Ok(Method::Pca),
            other => Err(format!("unknown reduction method `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ReductionOptions {
    /// Calibration columns bypass reduction and do not count toward the budget.
    pub preserve_calibration: bool,
}

/// Over-approximates `z` by a zonotope with the same center and at most
/// `limit` reducible generators.
///
/// Kept columns retain their tags; synthesized columns get fresh
/// measurement symbols from `symbols`. Rows without any reducible mass need
/// no axis generator, so the budget must cover one generator per row that
/// carries some.
pub fn reduce(
    z: &Zonotope,
    limit: usize,
    method: Method,
    opts: ReductionOptions,
    symbols: &mut SymbolSource,
) -> Result<Zonotope> {
    let exempt = |g: &Generator| opts.preserve_calibration && g.tag.kind == SymbolKind::Calibration;
    let (passthrough, candidates): (Vec<&Generator>, Vec<&Generator>) =
        z.generators.iter().partition(|g| exempt(g));
    if candidates.len() <= limit {
        return Ok(z.clone());
    }

    let d = z.dim();
    let active: Vec<usize> = (0..d)
        .filter(|&i| candidates.iter().any(|g| g.column[i] != 0.0))
        .collect();
    if limit < active.len() {
        return Err(Error::BudgetTooSmall {
            limit,
            required: active.len(),
        });
    }
    let keep_count = limit - active.len();

    let (kept, boxed): (Vec<usize>, Vec<usize>) = match method {
        Method::Box => (Vec::new(), (0..candidates.len()).collect()),
        Method::Girard => split_by(&candidates, keep_count, |g| g.norm1() - g.norm_inf()),
        Method::Combastel | Method::Pca => split_by(&candidates, keep_count, Generator::norm2),
    };
    let boxed: Vec<&Generator> = boxed.iter().map(|&i| candidates[i]).collect();

    let synthesized = match method {
        Method::Pca => pca_box(&boxed, &active, d, symbols),
        _ => axis_box(&boxed, &active, d, symbols),
    };

    let generators = passthrough
        .into_iter()
        .cloned()
        .chain(kept.iter().map(|&i| candidates[i].clone()))
        .chain(synthesized)
        .collect();
    Zonotope::new(z.center.clone(), generators)
}

/// Indices of the `keep` highest-scoring columns (ties by position) and the
/// rest, both in original column order.
fn split_by(
    gens: &[&Generator],
    keep: usize,
    score: impl Fn(&Generator) -> f64,
) -> (Vec<usize>, Vec<usize>) {
    let scores: Vec<f64> = gens.iter().map(|g| score(g)).collect();
    let mut ranked: Vec<usize> = (0..gens.len()).collect();
    // stable sort keeps earlier columns first among ties
    ranked.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
    let mut kept: Vec<usize> = ranked[..keep].to_vec();
    let mut boxed: Vec<usize> = ranked[keep..].to_vec();
    kept.sort_unstable();
    boxed.sort_unstable();
    (kept, boxed)
}

fn axis_box(
    boxed: &[&Generator],
    active: &[usize],
    d: usize,
    symbols: &mut SymbolSource,
) -> Vec<Generator> {
    active
        .iter()
        .filter_map(|&i| {
            let width: f64 = boxed.iter().map(|g| g.column[i].abs()).sum();
            (width != 0.0).then(|| {
                let mut column = vec![0.0; d];
                column[i] = width;
                Generator {
                    tag: symbols.fresh(SymbolKind::Measurement),
                    column,
                }
            })
        })
        .collect()
}

/// Interval hull taken in the eigenbasis of `Σ g gᵀ` over the active rows,
/// rotated back.
fn pca_box(
    boxed: &[&Generator],
    active: &[usize],
    d: usize,
    symbols: &mut SymbolSource,
) -> Vec<Generator> {
    let n = active.len();
    let mut cov = vec![vec![0.0; n]; n];
    for g in boxed {
        for (a, &i) in active.iter().enumerate() {
            for (b, &j) in active.iter().enumerate() {
                cov[a][b] += g.column[i] * g.column[j];
            }
        }
    }
    let basis = symmetric_eigenvectors(cov);

    let mut widths = vec![0.0; n];
    for g in boxed {
        for (axis, w) in widths.iter_mut().enumerate() {
            let proj: f64 = active
                .iter()
                .enumerate()
                .map(|(a, &i)| basis[a][axis] * g.column[i])
                .sum();
            *w += proj.abs();
        }
    }

    widths
        .iter()
        .enumerate()
        .filter(|(_, &w)| w != 0.0)
        .map(|(axis, &w)| {
            let mut column = vec![0.0; d];
            for (a, &i) in active.iter().enumerate() {
                column[i] = basis[a][axis] * w;
            }
            Generator {
                tag: symbols.fresh(SymbolKind::Measurement),
                column,
            }
        })
        .collect()
}
