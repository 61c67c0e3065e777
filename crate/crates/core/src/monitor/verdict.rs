use crate::affine::AffineForm;
use crate::error::{Error, Result};
use crate::lang::{Predicate, Trigger};
use crate::store::{ResolvedStore, Slot};

/// Outcome of one trigger at one step.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub step: u64,
    pub message: String,
    pub fired: bool,
    pub lo: f64,
    pub hi: f64,
    /// Fraction of the value range beyond the threshold. `fired` is exactly
    /// `overlap > p`.
    pub overlap: f64,
}

/// Fraction of `[c - r, c + r]` lying above (or below) `threshold`.
///
/// Written as `1/2 + (c - v) / 2r`, which equals `(hi - v) / (hi - lo)` and
/// moves monotonically toward 1/2 as the radius grows. A point range gives
/// `+∞` beyond the threshold, `-∞` short of it and `0` on it, so the verdict
/// reduces to a strict comparison.
pub fn overlap_fraction(form: &AffineForm, predicate: Predicate, threshold: f64) -> f64 {
    let c = form.center();
    let r = form.radius();
    let excess = match predicate {
        Predicate::GreaterOverlap => c - threshold,
        Predicate::LessOverlap => threshold - c,
    };
    if r == 0.0 {
        if excess > 0.0 {
            f64::INFINITY
        } else if excess < 0.0 {
            f64::NEG_INFINITY
        } else {
            0.0
        }
    } else {
        0.5 + excess / (2.0 * r)
    }
}

pub fn verdict_for(form: &AffineForm, trigger: &Trigger, step: u64) -> Verdict {
    let (lo, hi) = form.interval();
    let overlap = overlap_fraction(form, trigger.predicate, trigger.threshold);
    Verdict {
        step,
        message: trigger.message.clone(),
        fired: overlap > trigger.p,
        lo,
        hi,
        overlap,
    }
}

/// Evaluates `trigger` against its stream's value at time `step` in `store`.
pub fn evaluate_trigger(store: &ResolvedStore, trigger: &Trigger, step: u64) -> Result<Verdict> {
    let slot = Slot::new(trigger.stream.as_str(), step);
    let form = store
        .get(&slot)
        .and_then(|v| v.as_real())
        .ok_or_else(|| Error::NotResolved(slot.to_string()))?;
    Ok(verdict_for(form, trigger, step))
}
