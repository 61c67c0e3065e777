//! Online symbolic evaluation of a specification over a trace.
//!
//! Each [`Monitor::step`] records the inputs, resolves constants and slack
//! streams to noise symbols, rewrites every output equation to an affine
//! form, evaluates the triggers and then forgets everything the next step
//! cannot read. With a [`ReductionConfig`] the remaining state is kept at a
//! bounded number of noise symbols by zonotope order reduction.

mod term;
mod verdict;

pub use verdict::{evaluate_trigger, overlap_fraction, Verdict};

use std::collections::{BTreeMap, BTreeSet};

use crate::affine::{AffineForm, SymbolId, SymbolKind, SymbolSource};
use crate::error::{Error, Result};
use crate::lang::{evaluation_order, Spec, Type};
use crate::store::{ResolvedStore, Slot, Value};
use crate::trace::{InputValue, TraceEvent};
use crate::zonotope::{from_zonotope, reduce, to_zonotope, Method, ReductionOptions};
use term::{Rewriter, Term};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReductionConfig {
    pub method: Method,
    /// Budget `k` of reducible noise symbols kept after each step.
    pub limit: usize,
    pub options: ReductionOptions,
}

impl ReductionConfig {
    pub fn new(method: Method, limit: usize) -> Self {
        ReductionConfig {
            method,
            limit,
            options: ReductionOptions::default(),
        }
    }
}

/// Everything carried from one step to the next.
#[derive(Debug, Clone, PartialEq)]
pub struct MonitorState {
    /// Number of events processed so far.
    pub step: u64,
    pub resolved: ResolvedStore,
    pub constants: BTreeMap<String, SymbolId>,
    pub symbols: SymbolSource,
    pub config: Option<ReductionConfig>,
}

/// Result of one monitor step.
#[derive(Debug, Clone, PartialEq)]
pub struct StepReport {
    pub step: u64,
    pub verdicts: Vec<Verdict>,
    /// Bounds of every real-valued stream at this step, before pruning and
    /// reduction.
    pub hulls: BTreeMap<String, (f64, f64)>,
}

impl StepReport {
    pub fn any_fired(&self) -> bool {
        self.verdicts.iter().any(|v| v.fired)
    }
}

#[derive(Debug, Clone)]
pub struct Monitor {
    spec: Spec,
    order: Vec<usize>,
    carried: BTreeSet<String>,
    state: MonitorState,
}

impl Monitor {
    /// Fails when `spec` is not well-formed.
    pub fn new(spec: &Spec, config: Option<ReductionConfig>) -> Result<Monitor> {
        crate::lang::check_well_formed(spec).map_err(Error::Spec)?;
        let order = evaluation_order(spec).map_err(Error::Spec)?;
        let mut symbols = SymbolSource::new();
        let constants = spec
            .constants
            .iter()
            .map(|c| (c.name.clone(), symbols.fresh(SymbolKind::Calibration)))
            .collect();
        Ok(Monitor {
            spec: spec.clone(),
            order,
            carried: spec.delayed_streams().into_iter().collect(),
            state: MonitorState {
                step: 0,
                resolved: ResolvedStore::new(),
                constants,
                symbols,
                config,
            },
        })
    }

    pub fn spec(&self) -> &Spec {
        &self.spec
    }

    pub fn state(&self) -> &MonitorState {
        &self.state
    }

    /// Streams whose values survive into the next step.
    pub fn carried_streams(&self) -> impl Iterator<Item = &str> {
        self.carried.iter().map(String::as_str)
    }

    /// Bounds of every retained real-valued stream at the latest step.
    pub fn state_hull(&self) -> BTreeMap<String, (f64, f64)> {
        let Some(t) = self.state.step.checked_sub(1) else {
            return BTreeMap::new();
        };
        self.state
            .resolved
            .iter()
            .filter(|(slot, _)| slot.time == t)
            .filter_map(|(slot, v)| v.as_real().map(|a| (slot.stream.clone(), a.interval())))
            .collect()
    }

    /// Distinct noise symbols referenced by the retained store or bound to a
    /// constant.
    pub fn live_symbols(&self) -> usize {
        let mut live: BTreeSet<SymbolId> = self.state.resolved.symbols().into_iter().collect();
        live.extend(self.state.constants.values().copied());
        live.len()
    }

    pub fn step(&mut self, event: &TraceEvent) -> Result<StepReport> {
        let t = self.state.step;
        let mut resolved = self.state.resolved.clone();
        let mut symbols = self.state.symbols.clone();

        for input in &self.spec.inputs {
            let value = event
                .get(&input.name)
                .ok_or_else(|| Error::IncompleteEvent(input.name.clone()))?;
            let value = match (input.ty, value) {
                (Type::Float, InputValue::Real(x)) if x.is_finite() => {
                    Value::Real(AffineForm::exact(*x))
                }
                (Type::Float, InputValue::Real(x)) => {
                    return Err(Error::Arithmetic(format!("input {} is {x}", input.name)))
                }
                (Type::Bool, InputValue::Bool(b)) => Value::Bool(*b),
                (ty, _) => {
                    return Err(Error::InputType {
                        name: input.name.clone(),
                        expected: if ty == Type::Float { "Float" } else { "Bool" },
                    })
                }
            };
            resolved.insert(Slot::new(input.name.as_str(), t), value);
        }
        for (name, &id) in &self.state.constants {
            resolved.insert(Slot::new(name.as_str(), t), Value::Real(AffineForm::symbol(id)));
        }
        for slack in &self.spec.slack_streams {
            let id = symbols.fresh(SymbolKind::Measurement);
            resolved.insert(Slot::new(slack.name.as_str(), t), Value::Real(AffineForm::symbol(id)));
        }

        let mut unresolved: Vec<(usize, Term)> = self
            .order
            .iter()
            .map(|&i| (i, Term::from(&self.spec.outputs[i].expr)))
            .collect();
        loop {
            let before = unresolved.len();
            let mut pending = Vec::with_capacity(before);
            for (i, term) in unresolved {
                let mut rw = Rewriter {
                    time: t,
                    resolved: &resolved,
                    symbols: &mut symbols,
                };
                match rw.rewrite(term)? {
                    Term::Known(v) => {
                        resolved.insert(Slot::new(self.spec.outputs[i].name.as_str(), t), v)
                    }
                    other => pending.push((i, other)),
                }
            }
            unresolved = pending;
            if unresolved.is_empty() {
                break;
            }
            if unresolved.len() == before {
                return Err(Error::EvaluationStuck {
                    step: t,
                    streams: unresolved
                        .iter()
                        .map(|(i, _)| self.spec.outputs[*i].name.clone())
                        .collect(),
                });
            }
        }

        let verdicts = self
            .spec
            .triggers
            .iter()
            .map(|trig| evaluate_trigger(&resolved, trig, t))
            .collect::<Result<Vec<_>>>()?;
        let hulls = resolved
            .iter()
            .filter(|(slot, _)| slot.time == t)
            .filter_map(|(slot, v)| v.as_real().map(|a| (slot.stream.clone(), a.interval())))
            .collect();

        resolved.retain(|slot, _| slot.time == t && self.carried.contains(&slot.stream));

        if let Some(cfg) = self.state.config {
            resolved = self.reduce_store(resolved, cfg, &mut symbols)?;
        }

        self.state.step = t + 1;
        self.state.resolved = resolved;
        self.state.symbols = symbols;
        Ok(StepReport {
            step: t,
            verdicts,
            hulls,
        })
    }

    fn reduce_store(
        &self,
        mut store: ResolvedStore,
        cfg: ReductionConfig,
        symbols: &mut SymbolSource,
    ) -> Result<ResolvedStore> {
        let exempt = |id: &SymbolId| {
            cfg.options.preserve_calibration && id.kind == SymbolKind::Calibration
        };
        let reducible = store.symbols().iter().filter(|id| !exempt(id)).count();
        if reducible <= cfg.limit {
            return Ok(store);
        }
        let order = store.real_order();
        let z = to_zonotope(&store, &order)?;
        let reduced = reduce(&z, cfg.limit, cfg.method, cfg.options, symbols)?;
        for (slot, value) in from_zonotope(&reduced, &order)?.iter() {
            store.insert(slot.clone(), value.clone());
        }
        Ok(store)
    }

    /// Runs the monitor over a whole trace.
    pub fn run<'a>(
        &mut self,
        events: impl IntoIterator<Item = &'a TraceEvent>,
    ) -> Result<Vec<StepReport>> {
        events.into_iter().map(|e| self.step(e)).collect()
    }
}

