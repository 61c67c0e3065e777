#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use zonomon::lang::{self, BinOp, Expr, Func, Spec, StreamKind, Type};
use zonomon::specs;
use zonomon::trace::{event, InputValue, TraceEvent};

pub fn confined() -> Spec {
    lang::parse(specs::CONFINED_ROBOT).unwrap()
}

pub fn omni() -> Spec {
    lang::parse(specs::OMNI_ROBOT).unwrap()
}

/// Inputs whose x-axis evaluation reproduces the memory table of the
/// confined robot at 1 s, 3 s and 4 s.
pub fn table1_events() -> Vec<TraceEvent> {
    [(1.0, true, 0.0), (3.0, false, 0.7), (4.0, false, 1.6)]
        .into_iter()
        .map(|(time, bump, vel)| {
            event([
                ("time", InputValue::Real(time)),
                ("bump_x", InputValue::Bool(bump)),
                ("vel_x", InputValue::Real(vel)),
                ("bump_y", InputValue::Bool(true)),
                ("vel_y", InputValue::Real(0.0)),
            ])
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scalar {
    Real(f64),
    Bool(bool),
}

impl Scalar {
    fn real(self) -> f64 {
        match self {
            Scalar::Real(x) => x,
            Scalar::Bool(_) => panic!("expected a real"),
        }
    }
}

/// Plain floating-point evaluation of a specification under one fixed
/// choice of every noise variable.
pub struct ConcreteEval<'a> {
    spec: &'a Spec,
    order: Vec<usize>,
    constants: BTreeMap<String, f64>,
    prev: BTreeMap<String, Scalar>,
    step: u64,
}

impl<'a> ConcreteEval<'a> {
    /// `constants` gives each constant slack variable a value in `[-1, 1]`.
    pub fn new(spec: &'a Spec, constants: BTreeMap<String, f64>) -> Self {
        ConcreteEval {
            spec,
            order: lang::evaluation_order(spec).unwrap(),
            constants,
            prev: BTreeMap::new(),
            step: 0,
        }
    }

    /// `slack` gives each slack stream its value at this step.
    pub fn step(
        &mut self,
        ev: &TraceEvent,
        slack: &BTreeMap<String, f64>,
    ) -> BTreeMap<String, Scalar> {
        let mut now: BTreeMap<String, Scalar> = BTreeMap::new();
        for (name, v) in ev {
            now.insert(
                name.clone(),
                match v {
                    InputValue::Real(x) => Scalar::Real(*x),
                    InputValue::Bool(b) => Scalar::Bool(*b),
                },
            );
        }
        for (name, v) in &self.constants {
            now.insert(name.clone(), Scalar::Real(*v));
        }
        for (name, v) in slack {
            now.insert(name.clone(), Scalar::Real(*v));
        }
        for &i in &self.order {
            let out = &self.spec.outputs[i];
            let v = self.eval(&out.expr, &now);
            now.insert(out.name.clone(), v);
        }
        self.prev = now.clone();
        self.step += 1;
        now
    }

    fn eval(&self, e: &Expr, now: &BTreeMap<String, Scalar>) -> Scalar {
        match e {
            Expr::Real(x) => Scalar::Real(*x),
            Expr::Bool(b) => Scalar::Bool(*b),
            Expr::Ref(name) => now[name],
            Expr::Prev { stream, default } => {
                if self.step > 0 {
                    self.prev[stream]
                } else {
                    self.eval(default, now)
                }
            }
            Expr::Binary { op, lhs, rhs } => {
                let (a, b) = (self.eval(lhs, now).real(), self.eval(rhs, now).real());
                Scalar::Real(match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => a / b,
                })
            }
            Expr::Neg(inner) => Scalar::Real(-self.eval(inner, now).real()),
            Expr::Call { func, arg } => {
                let x = self.eval(arg, now).real();
                Scalar::Real(match func {
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                })
            }
            Expr::Ite {
                cond,
                then,
                otherwise,
            } => match self.eval(cond, now) {
                Scalar::Bool(true) => self.eval(then, now),
                Scalar::Bool(false) => self.eval(otherwise, now),
                Scalar::Real(_) => panic!("real condition"),
            },
        }
    }
}

/// Random slack values for one step.
pub fn draw_slack(spec: &Spec, rng: &mut ChaCha8Rng) -> BTreeMap<String, f64> {
    spec.slack_streams
        .iter()
        .map(|s| (s.name.clone(), rng.gen_range(-1.0..=1.0)))
        .collect()
}

pub fn draw_constants(spec: &Spec, rng: &mut ChaCha8Rng) -> BTreeMap<String, f64> {
    spec.constants
        .iter()
        .map(|c| (c.name.clone(), rng.gen_range(-1.0..=1.0)))
        .collect()
}

/// A random trace with reals in `[-2, 2]`.
pub fn random_trace(spec: &Spec, len: usize, rng: &mut ChaCha8Rng) -> Vec<TraceEvent> {
    (0..len)
        .map(|_| {
            spec.inputs
                .iter()
                .map(|i| {
                    let v = match i.ty {
                        Type::Float => InputValue::Real(rng.gen_range(-2.0..=2.0)),
                        Type::Bool => InputValue::Bool(rng.gen_bool(0.5)),
                    };
                    (i.name.clone(), v)
                })
                .collect()
        })
        .collect()
}

const FRACTIONS: [f64; 7] = [0.0, 0.01, 0.25, 0.5, 0.75, 0.99, 1.0];

/// Source text of a random well-formed specification with real-valued
/// outputs, delayed feedback and triggers over a spread of fractions.
pub fn random_spec_text(rng: &mut ChaCha8Rng) -> String {
    let outputs = rng.gen_range(2..=5);
    let mut text = String::from(
        "input i0: Float\ninput i1: Float\ninput b: Bool\n\
         constant d0: Variable\nconstant d1: Variable\n\
         output e0: Variable\noutput e1: Variable\n",
    );
    for j in 0..outputs {
        let expr = random_expr(rng, j, outputs, 3);
        text.push_str(&format!("output o{j} := {expr}\n"));
    }
    for _ in 0..rng.gen_range(1..=4) {
        let stream = format!("o{}", rng.gen_range(0..outputs));
        let op = if rng.gen_bool(0.5) { ">" } else { "<" };
        let p = FRACTIONS.choose(rng).unwrap();
        let v: f64 = rng.gen_range(-3.0..3.0);
        text.push_str(&format!("trigger {stream} {op}[{p}] {v:.3} \"{stream} {op} {v:.3}\"\n"));
    }
    text
}

fn bounded_atom(rng: &mut ChaCha8Rng) -> String {
    match rng.gen_range(0..4) {
        0 => format!("{:.2}", rng.gen_range(-1.5..1.5)),
        1 => format!("i{}", rng.gen_range(0..2)),
        2 => format!("d{}", rng.gen_range(0..2)),
        _ => format!("e{}", rng.gen_range(0..2)),
    }
}

fn atom(rng: &mut ChaCha8Rng, j: usize, outputs: usize) -> String {
    match rng.gen_range(0..4) {
        0 if j > 0 => format!("o{}", rng.gen_range(0..j)),
        1 | 2 => format!(
            "0.25 * o{}.prev({:.1})",
            rng.gen_range(0..outputs),
            rng.gen_range(-1.0..1.0)
        ),
        _ => bounded_atom(rng),
    }
}

fn random_expr(rng: &mut ChaCha8Rng, j: usize, outputs: usize, depth: u32) -> String {
    if depth == 0 {
        return atom(rng, j, outputs);
    }
    let sub = |rng: &mut ChaCha8Rng| random_expr(rng, j, outputs, depth - 1);
    match rng.gen_range(0..7) {
        0 => atom(rng, j, outputs),
        1 => format!("({} + {})", sub(rng), sub(rng)),
        2 => format!("({} - {})", sub(rng), sub(rng)),
        3 => format!("({} * {})", bounded_atom(rng), sub(rng)),
        4 => format!("(if b then {} else {})", sub(rng), sub(rng)),
        5 => format!("(sin(i{}) * {})", rng.gen_range(0..2), sub(rng)),
        _ => format!("({} / {})", sub(rng), ["2.0", "-4.0"].choose(rng).unwrap()),
    }
}

/// Real-valued streams carried between steps; a lower bound on any
/// workable symbol budget.
pub fn carried_real_streams(spec: &Spec) -> usize {
    spec.delayed_streams()
        .iter()
        .filter(|s| !matches!(spec.kind_of(s), Some(StreamKind::Input(Type::Bool))))
        .count()
}

pub fn within(lo: f64, hi: f64, x: f64, tol: f64) -> bool {
    lo - tol <= x && x <= hi + tol
}
