//! The stream specification language: AST, parser and well-formedness checks.
//!
//! ```text
//! input time: Float
//! input bump: Bool
//! constant delta: Variable
//! output epsilon: Variable
//! output v := vel + 0.1 * epsilon + 0.05 * delta
//! output pos := if bump then 0.0 else pos.prev(0.0) + v * dt
//! trigger pos >[0.01] 4.0 "out of bounds"
//! ```
//!
//! `x.prev(d)` and `x.offset(by: -1).defaults(to: d)` are the same operator.
//! Triggers compare a stream against a threshold with an overlap fraction
//! `p`, written `>[p]` or `<[p]`.

mod check;
mod lexer;
mod parser;
mod pretty;

use std::fmt;

pub use check::{check_well_formed, evaluation_order, stream_types, StreamType};
pub use parser::parse_unchecked;

use crate::error::Diagnostics;

/// Source position of a declaration. Positions never participate in equality,
/// so ASTs compare structurally.
#[derive(Debug, Clone, Copy, Default)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl PartialEq for Pos {
    fn eq(&self, _: &Pos) -> bool {
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Type {
    Float,
    Bool,
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Type::Float => "Float",
            Type::Bool => "Bool",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Real(f64),
    Bool(bool),
    Ref(String),
    /// Value of `stream` at the previous step, or `default` at the first step.
    Prev {
        stream: String,
        default: Box<Expr>,
    },
    Binary {
        op: BinOp,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    Neg(Box<Expr>),
    Call {
        func: Func,
        arg: Box<Expr>,
    },
    Ite {
        cond: Box<Expr>,
        then: Box<Expr>,
        otherwise: Box<Expr>,
    },
}

impl Expr {
    pub fn stream(name: &str) -> Expr {
        Expr::Ref(name.to_string())
    }

    pub fn prev(name: &str, default: Expr) -> Expr {
        Expr::Prev {
            stream: name.to_string(),
            default: Box::new(default),
        }
    }

    pub fn binary(op: BinOp, lhs: Expr, rhs: Expr) -> Expr {
        Expr::Binary {
            op,
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        }
    }

    pub fn ite(cond: Expr, then: Expr, otherwise: Expr) -> Expr {
        Expr::Ite {
            cond: Box::new(cond),
            then: Box::new(then),
            otherwise: Box::new(otherwise),
        }
    }

    /// Calls `f(name, delayed)` for every stream reference, where `delayed`
    /// marks references read through `prev`.
    pub fn visit_refs<'a>(&'a self, f: &mut impl FnMut(&'a str, bool)) {
        match self {
            Expr::Real(_) | Expr::Bool(_) => {}
            Expr::Ref(name) => f(name, false),
            Expr::Prev { stream, default } => {
                f(stream, true);
                default.visit_refs(f);
            }
            Expr::Binary { lhs, rhs, .. } => {
                lhs.visit_refs(f);
                rhs.visit_refs(f);
            }
            Expr::Neg(e) | Expr::Call { arg: e, .. } => e.visit_refs(f),
            Expr::Ite {
                cond,
                then,
                otherwise,
            } => {
                cond.visit_refs(f);
                then.visit_refs(f);
                otherwise.visit_refs(f);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InputDecl {
    pub name: String,
    pub ty: Type,
    pub pos: Pos,
}

/// A constant or per-step slack declaration (type `Variable`).
#[derive(Debug, Clone, PartialEq)]
pub struct SlackDecl {
    pub name: String,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputDecl {
    pub name: String,
    pub annotation: Option<Type>,
    pub expr: Expr,
    pub pos: Pos,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Predicate {
    /// `x >[p] v`: at least a fraction `p` of the range lies above `v`.
    GreaterOverlap,
    /// `x <[p] v`: at least a fraction `p` of the range lies below `v`.
    LessOverlap,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trigger {
    pub stream: String,
    pub predicate: Predicate,
    pub p: f64,
    pub threshold: f64,
    pub message: String,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Spec {
    pub inputs: Vec<InputDecl>,
    pub constants: Vec<SlackDecl>,
    pub slack_streams: Vec<SlackDecl>,
    pub outputs: Vec<OutputDecl>,
    pub triggers: Vec<Trigger>,
}

/// What a stream name refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamKind {
    Input(Type),
    Constant,
    Slack,
    Output,
}

impl Spec {
    pub fn declaration_count(&self) -> usize {
        self.inputs.len() + self.constants.len() + self.slack_streams.len() + self.outputs.len()
    }

    pub fn kind_of(&self, name: &str) -> Option<StreamKind> {
        if let Some(i) = self.inputs.iter().find(|i| i.name == name) {
            return Some(StreamKind::Input(i.ty));
        }
        if self.constants.iter().any(|c| c.name == name) {
            return Some(StreamKind::Constant);
        }
        if self.slack_streams.iter().any(|s| s.name == name) {
            return Some(StreamKind::Slack);
        }
        if self.outputs.iter().any(|o| o.name == name) {
            return Some(StreamKind::Output);
        }
        None
    }

    pub fn output(&self, name: &str) -> Option<&OutputDecl> {
        self.outputs.iter().find(|o| o.name == name)
    }

    /// Streams whose previous value is read by some expression.
    pub fn delayed_streams(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for o in &self.outputs {
            o.expr.visit_refs(&mut |name, delayed| {
                if delayed && !out.iter().any(|n| n == name) {
                    out.push(name.to_string());
                }
            });
        }
        out
    }
}

/// Parses and checks a specification. Every returned [`Spec`] is well-formed.
pub fn parse(text: &str) -> Result<Spec, Diagnostics> {
    let spec = parse_unchecked(text)?;
    check_well_formed(&spec)?;
    Ok(spec)
}

#[cfg(test)]
mod tests;
