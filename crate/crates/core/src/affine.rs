//! Affine forms over tagged noise symbols.
//!
//! An [`AffineForm`] is `c + Σ μᵢ·εᵢ` where every symbol `εᵢ` ranges over
//! `[-1, 1]`. Symbols shared between forms keep their correlation, so
//! `x - x` is exactly zero instead of doubling the uncertainty.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Origin of a noise symbol. The ordering is the canonical column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolKind {
    /// One per constant slack declaration, shared across all time steps.
    Calibration,
    /// Drawn fresh per step by slack streams, and by order reduction.
    Measurement,
    /// Linearisation remainder of a product of two noisy forms.
    Remainder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolId {
    pub kind: SymbolKind,
    pub index: u64,
}

impl SymbolId {
    pub const fn new(kind: SymbolKind, index: u64) -> Self {
        SymbolId { kind, index }
    }
}

impl fmt::Display for SymbolId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.kind {
            SymbolKind::Calibration => "d",
            SymbolKind::Measurement => "e",
            SymbolKind::Remainder => "r",
        };
        write!(f, "{prefix}{}", self.index)
    }
}

/// Hands out symbols that have never been issued before.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SymbolSource {
    calibration: u64,
    measurement: u64,
    remainder: u64,
}

impl SymbolSource {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn fresh(&mut self, kind: SymbolKind) -> SymbolId {
        let counter = match kind {
            SymbolKind::Calibration => &mut self.calibration,
            SymbolKind::Measurement => &mut self.measurement,
            SymbolKind::Remainder => &mut self.remainder,
        };
        let id = SymbolId::new(kind, *counter);
        *counter += 1;
        id
    }

    /// Number of symbols of `kind` issued so far.
    pub fn issued(&self, kind: SymbolKind) -> u64 {
        match kind {
            SymbolKind::Calibration => self.calibration,
            SymbolKind::Measurement => self.measurement,
            SymbolKind::Remainder => self.remainder,
        }
    }
}

/// `center + Σ coefficient·symbol` with coefficients sorted by symbol and never zero.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AffineForm {
    center: f64,
    terms: Vec<(SymbolId, f64)>,
}

fn check_finite(x: f64, what: &str) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::Arithmetic(format!("{what} produced {x}")))
    }
}

impl AffineForm {
    pub fn zero() -> Self {
        Self::default()
    }

    /// A noise-free value.
    pub fn exact(center: f64) -> Self {
        AffineForm {
            center,
            terms: Vec::new(),
        }
    }

    /// The bare symbol `ε` (center 0, coefficient 1).
    pub fn symbol(id: SymbolId) -> Self {
        AffineForm {
            center: 0.0,
            terms: vec![(id, 1.0)],
        }
    }

    /// Builds a form from arbitrary terms: sorts them, merges duplicates and
    /// drops zeros.
    pub fn from_terms(
        center: f64,
        terms: impl IntoIterator<Item = (SymbolId, f64)>,
    ) -> Result<Self> {
        check_finite(center, "center")?;
        let mut merged: BTreeMap<SymbolId, f64> = BTreeMap::new();
        for (id, c) in terms {
            *merged.entry(id).or_insert(0.0) += c;
        }
        let mut out = Vec::with_capacity(merged.len());
        for (id, c) in merged {
            check_finite(c, "coefficient")?;
            if c != 0.0 {
                out.push((id, c));
            }
        }
        Ok(AffineForm { center, terms: out })
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn terms(&self) -> &[(SymbolId, f64)] {
        &self.terms
    }

    pub fn coefficient(&self, id: SymbolId) -> f64 {
        self.terms
            .binary_search_by(|(s, _)| s.cmp(&id))
            .map(|i| self.terms[i].1)
            .unwrap_or(0.0)
    }

    pub fn symbols(&self) -> impl Iterator<Item = SymbolId> + '_ {
        self.terms.iter().map(|(s, _)| *s)
    }

    /// True when the form carries no noise symbols.
    pub fn is_exact(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of absolute coefficients.
    pub fn radius(&self) -> f64 {
        self.terms.iter().map(|(_, c)| c.abs()).sum()
    }

    /// The interval `[center - radius, center + radius]` this form denotes.
    pub fn interval(&self) -> (f64, f64) {
        let r = self.radius();
        (self.center - r, self.center + r)
    }

    /// Value of the form under an assignment of every occurring symbol.
    pub fn eval(&self, assignment: &BTreeMap<SymbolId, f64>) -> Result<f64> {
        let mut acc = self.center;
        for (id, c) in &self.terms {
            let v = assignment
                .get(id)
                .ok_or(Error::IncompleteAssignment(*id))?;
            acc += c * v;
        }
        Ok(acc)
    }

    fn combine(&self, other: &AffineForm, sign: f64) -> Result<AffineForm> {
        let center = check_finite(self.center + sign * other.center, "addition")?;
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            let (id, c) = match ord {
                Ordering::Less => {
                    i += 1;
                    self.terms[i - 1]
                }
                Ordering::Greater => {
                    j += 1;
                    (other.terms[j - 1].0, sign * other.terms[j - 1].1)
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                    (self.terms[i - 1].0, self.terms[i - 1].1 + sign * other.terms[j - 1].1)
                }
            };
            check_finite(c, "addition")?;
            if c != 0.0 {
                terms.push((id, c));
            }
        }
        Ok(AffineForm { center, terms })
    }

    pub fn add(&self, other: &AffineForm) -> Result<AffineForm> {
        self.combine(other, 1.0)
    }

    pub fn sub(&self, other: &AffineForm) -> Result<AffineForm> {
        self.combine(other, -1.0)
    }

    pub fn neg(&self) -> AffineForm {
        AffineForm {
            center: -self.center,
            terms: self.terms.iter().map(|&(s, c)| (s, -c)).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Result<AffineForm> {
        check_finite(s, "scale factor")?;
        let center = check_finite(self.center * s, "scaling")?;
        let mut terms = Vec::with_capacity(self.terms.len());
        for &(id, c) in &self.terms {
            let c = check_finite(c * s, "scaling")?;
            if c != 0.0 {
                terms.push((id, c));
            }
        }
        Ok(AffineForm { center, terms })
    }

    /// Adds an exact offset.
    pub fn shift(&self, offset: f64) -> Result<AffineForm> {
        let mut out = self.clone();
        out.center = check_finite(self.center + offset, "addition")?;
        Ok(out)
    }

    /// Product of two forms. When either factor is exact this is plain
    /// scaling; otherwise the bilinear part is bounded by one fresh
    /// remainder symbol with coefficient `radius(a)·radius(b)`.
    pub fn mul(&self, other: &AffineForm, symbols: &mut SymbolSource) -> Result<AffineForm> {
        if self.is_exact() {
            return other.scale(self.center);
        }
        if other.is_exact() {
            return self.scale(other.center);
        }
        let linear = self
            .scale(other.center)?
            .add(&other.scale(self.center)?)?;
        let mut out = AffineForm {
            center: check_finite(self.center * other.center, "multiplication")?,
            terms: linear.terms,
        };
        let rem = check_finite(self.radius() * other.radius(), "multiplication")?;
        if rem != 0.0 {
            // fresh symbols sort after every existing remainder symbol
            out.terms.push((symbols.fresh(SymbolKind::Remainder), rem));
            out.terms.sort_by(|a, b| a.0.cmp(&b.0));
        }
        Ok(out)
    }

    /// Quotient by an exact divisor.
    pub fn div_exact(&self, divisor: f64) -> Result<AffineForm> {
        if divisor == 0.0 {
            return Err(Error::Arithmetic("division by zero".into()));
        }
        self.scale(1.0 / divisor)
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.center)?;
        for (id, c) in &self.terms {
            if *c < 0.0 {
                write!(f, " - {}*{id}", -c)?;
            } else {
                write!(f, " + {c}*{id}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: u64) -> SymbolId {
        SymbolId::new(SymbolKind::Measurement, i)
    }

    fn form(center: f64, terms: &[(SymbolId, f64)]) -> AffineForm {
        AffineForm::from_terms(center, terms.iter().copied()).unwrap()
    }

    #[test]
    fn self_subtraction_cancels() {
        let x = form(4.0, &[(e(0), 2.0)]);
        let z = x.add(&x.neg()).unwrap();
        assert_eq!(z.center(), 0.0);
        assert!(z.terms().is_empty());
    }

    #[test]
    fn add_zero_is_identity() {
        let a = form(1.5, &[(e(0), 0.3), (e(4), -2.0)]);
        assert_eq!(a.add(&AffineForm::zero()).unwrap(), a);
    }

    #[test]
    fn cancelled_coefficient_is_removed() {
        let a = form(1.0, &[(e(1), 0.5)]);
        let b = form(2.0, &[(e(1), -0.5), (e(2), 1.0)]);
        let s = a.add(&b).unwrap();
        assert_eq!(s, form(3.0, &[(e(2), 1.0)]));
        assert_eq!(s.terms().len(), 1);
    }

    #[test]
    fn scale_cases() {
        let d = SymbolId::new(SymbolKind::Calibration, 0);
        let a = form(0.0, &[(e(0), 0.1), (d, 0.05)]);
        let s = a.scale(0.8).unwrap();
        assert!((s.coefficient(e(0)) - 0.08).abs() < 1e-12);
        assert!((s.coefficient(d) - 0.04).abs() < 1e-12);
        assert_eq!(a.scale(1.0).unwrap(), a);
        assert_eq!(a.scale(0.0).unwrap(), AffineForm::zero());
    }

    #[test]
    fn mul_with_exact_operand_is_scaling() {
        let mut src = SymbolSource::new();
        let a = form(2.0, &[(e(0), 0.1)]);
        let p = a.mul(&AffineForm::exact(3.0), &mut src).unwrap();
        assert!((p.center() - 6.0).abs() < 1e-12);
        assert!((p.coefficient(e(0)) - 0.3).abs() < 1e-12);
        assert_eq!(p.terms().len(), 1);
        assert_eq!(src.issued(SymbolKind::Remainder), 0);
    }

    #[test]
    fn mul_of_noisy_forms_adds_remainder() {
        let mut src = SymbolSource::new();
        let a = form(1.0, &[(e(1), 1.0)]);
        let b = form(1.0, &[(e(2), 1.0)]);
        let p = a.mul(&b, &mut src).unwrap();
        assert_eq!(p.center(), 1.0);
        assert_eq!(p.coefficient(e(1)), 1.0);
        assert_eq!(p.coefficient(e(2)), 1.0);
        let r = SymbolId::new(SymbolKind::Remainder, 0);
        assert_eq!(p.coefficient(r), 1.0);
        assert_eq!(p.interval(), (-2.0, 4.0));

        // grid oracle: the true product over [-1,1]^2 spans [0, 4]
        let (lo, hi) = p.interval();
        let n = 200;
        let (mut tmin, mut tmax) = (f64::INFINITY, f64::NEG_INFINITY);
        for i in 0..=n {
            for j in 0..=n {
                let x = -1.0 + 2.0 * i as f64 / n as f64;
                let y = -1.0 + 2.0 * j as f64 / n as f64;
                let v = (1.0 + x) * (1.0 + y);
                tmin = tmin.min(v);
                tmax = tmax.max(v);
            }
        }
        assert!((tmin - 0.0).abs() < 1e-12 && (tmax - 4.0).abs() < 1e-12);
        assert!(lo <= tmin && tmax <= hi);
    }

    #[test]
    fn zero_times_anything_is_zero() {
        let mut src = SymbolSource::new();
        let a = form(1.0, &[(e(1), 1.0)]);
        assert_eq!(AffineForm::zero().mul(&a, &mut src).unwrap(), AffineForm::zero());
    }

    #[test]
    fn interval_cases() {
        assert_eq!(form(4.0, &[(e(0), 2.0)]).interval(), (2.0, 6.0));
        assert_eq!(AffineForm::exact(3.5).interval(), (3.5, 3.5));
        let d = SymbolId::new(SymbolKind::Calibration, 0);
        let f = form(
            1.392,
            &[(e(2), 0.08), (e(1), 0.016), (e(0), 0.0032), (d, 0.0496)],
        );
        let (lo, hi) = f.interval();
        assert!((lo - 1.2432).abs() < 1e-12);
        assert!((hi - 1.5408).abs() < 1e-12);
    }

    #[test]
    fn eval_cases() {
        let x = form(4.0, &[(e(0), 2.0)]);
        let at = |v: f64| BTreeMap::from([(e(0), v)]);
        assert_eq!(x.eval(&at(1.0)).unwrap(), 6.0);
        assert_eq!(x.eval(&at(0.0)).unwrap(), 4.0);
        let y = form(1.0, &[(e(1), 0.5), (e(2), -0.25)]);
        let g = BTreeMap::from([(e(1), -1.0), (e(2), 1.0)]);
        assert!((y.eval(&g).unwrap() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn eval_missing_symbol_errors() {
        let x = form(4.0, &[(e(0), 2.0)]);
        assert!(matches!(
            x.eval(&BTreeMap::new()),
            Err(Error::IncompleteAssignment(id)) if id == e(0)
        ));
    }

    #[test]
    fn overflow_is_reported() {
        let x = AffineForm::exact(f64::MAX);
        assert!(matches!(x.add(&x), Err(Error::Arithmetic(_))));
        assert!(matches!(x.scale(2.0), Err(Error::Arithmetic(_))));
        assert!(AffineForm::exact(1.0).div_exact(0.0).is_err());
    }

    #[test]
    fn symbol_source_never_reissues() {
        let mut src = SymbolSource::new();
        let a = src.fresh(SymbolKind::Measurement);
        let b = src.fresh(SymbolKind::Measurement);
        let c = src.fresh(SymbolKind::Calibration);
        assert_ne!(a, b);
        assert_eq!(c.index, 0);
        assert_eq!(src.issued(SymbolKind::Measurement), 2);
    }
}
