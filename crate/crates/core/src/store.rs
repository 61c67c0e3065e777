//! The resolved store: stream slots mapped to their symbolic values.

use std::collections::BTreeMap;
use std::fmt;

use crate::affine::{AffineForm, SymbolId};

/// A stream at one time step.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slot {
    pub stream: String,
    pub time: u64,
}

impl Slot {
    pub fn new(stream: impl Into<String>, time: u64) -> Self {
        Slot {
            stream: stream.into(),
            time,
        }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.stream, self.time)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Real(AffineForm),
    Bool(bool),
}

impl Value {
    pub fn as_real(&self) -> Option<&AffineForm> {
        match self {
            Value::Real(a) => Some(a),
            Value::Bool(_) => None,
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Value::Bool(b) => Some(*b),
            Value::Real(_) => None,
        }
    }
}

/// Fully evaluated stream slots.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResolvedStore {
    slots: BTreeMap<Slot, Value>,
}

impl ResolvedStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, slot: Slot, value: Value) {
        self.slots.insert(slot, value);
    }

    pub fn get(&self, slot: &Slot) -> Option<&Value> {
        self.slots.get(slot)
    }

    pub fn real(&self, stream: &str, time: u64) -> Option<&AffineForm> {
        self.slots
            .get(&Slot::new(stream, time))
            .and_then(Value::as_real)
    }

    pub fn remove(&mut self, slot: &Slot) -> Option<Value> {
        self.slots.remove(slot)
    }

    pub fn retain(&mut self, mut keep: impl FnMut(&Slot, &Value) -> bool) {
        self.slots.retain(|s, v| keep(s, v));
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Slot, &Value)> {
        self.slots.iter()
    }

    /// Real-valued slots in slot order; this is the canonical [`StreamOrder`].
    pub fn real_order(&self) -> StreamOrder {
        StreamOrder(
            self.slots
                .iter()
                .filter(|(_, v)| matches!(v, Value::Real(_)))
                .map(|(s, _)| s.clone())
                .collect(),
        )
    }

    /// Distinct noise symbols across all real-valued slots, in canonical order.
    pub fn symbols(&self) -> Vec<SymbolId> {
        let mut out: Vec<SymbolId> = self
            .slots
            .values()
            .filter_map(Value::as_real)
            .flat_map(|a| a.symbols())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

impl FromIterator<(Slot, Value)> for ResolvedStore {
    fn from_iter<I: IntoIterator<Item = (Slot, Value)>>(iter: I) -> Self {
        ResolvedStore {
            slots: iter.into_iter().collect(),
        }
    }
}

/// Which resolved slot maps to which zonotope row.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StreamOrder(pub Vec<Slot>);

impl StreamOrder {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Slot> {
        self.0.iter()
    }
}
