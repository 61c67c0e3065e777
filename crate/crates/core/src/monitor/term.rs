//! Partially rewritten equations of the unresolved store.

use crate::affine::{AffineForm, SymbolSource};
use crate::error::{Error, Result};
use crate::lang::{BinOp, Expr, Func};
use crate::store::{ResolvedStore, Slot, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Term {
    Known(Value),
    Ref(String),
    Prev {
        stream: String,
        default: Box<Term>,
    },
    Binary {
        op: BinOp,
        lhs: Box<Term>,
        rhs: Box<Term>,
    },
    Neg(Box<Term>),
    Call {
        func: Func,
        arg: Box<Term>,
    },
    Ite {
        cond: Box<Term>,
        then: Box<Term>,
        otherwise: Box<Term>,
    },
}

impl From<&Expr> for Term {
    fn from(e: &Expr) -> Term {
        match e {
            Expr::Real(v) => Term::Known(Value::Real(AffineForm::exact(*v))),
            Expr::Bool(b) => Term::Known(Value::Bool(*b)),
            Expr::Ref(name) => Term::Ref(name.clone()),
            Expr::Prev { stream, default } => Term::Prev {
                stream: stream.clone(),
                default: Box::new(default.as_ref().into()),
            },
            Expr::Binary { op, lhs, rhs } => Term::Binary {
                op: *op,
                lhs: Box::new(lhs.as_ref().into()),
                rhs: Box::new(rhs.as_ref().into()),
            },
            Expr::Neg(inner) => Term::Neg(Box::new(inner.as_ref().into())),
            Expr::Call { func, arg } => Term::Call {
                func: *func,
                arg: Box::new(arg.as_ref().into()),
            },
            Expr::Ite {
                cond,
                then,
                otherwise,
            } => Term::Ite {
                cond: Box::new(cond.as_ref().into()),
                then: Box::new(then.as_ref().into()),
                otherwise: Box::new(otherwise.as_ref().into()),
            },
        }
    }
}

fn real(v: Value, what: &str) -> Result<AffineForm> {
    match v {
        Value::Real(a) => Ok(a),
        Value::Bool(_) => Err(Error::Arithmetic(format!("{what} applied to a Bool"))),
    }
}

/// Rewriting context for time step `time`.
pub(crate) struct Rewriter<'a> {
    pub time: u64,
    pub resolved: &'a ResolvedStore,
    pub symbols: &'a mut SymbolSource,
}

impl Rewriter<'_> {
    /// One simplification pass: substitutes resolved slots, resolves `prev`,
    /// folds decided conditionals and evaluates operators whose operands are
    /// known.
    pub fn rewrite(&mut self, term: Term) -> Result<Term> {
        Ok(match term {
            Term::Known(_) => term,
            Term::Ref(name) => match self.resolved.get(&Slot::new(name.as_str(), self.time)) {
                Some(v) => Term::Known(v.clone()),
                None => Term::Ref(name),
            },
            Term::Prev { stream, default } => {
                if self.time > 0 {
                    let slot = Slot::new(stream, self.time - 1);
                    match self.resolved.get(&slot) {
                        Some(v) => Term::Known(v.clone()),
                        None => return Err(Error::NotResolved(slot.to_string())),
                    }
                } else {
                    self.rewrite(*default)?
                }
            }
            Term::Binary { op, lhs, rhs } => {
                let lhs = self.rewrite(*lhs)?;
                let rhs = self.rewrite(*rhs)?;
                match (lhs, rhs) {
                    (Term::Known(a), Term::Known(b)) => {
                        let (a, b) = (real(a, "arithmetic")?, real(b, "arithmetic")?);
                        Term::Known(Value::Real(self.apply(op, &a, &b)?))
                    }
                    (lhs, rhs) => Term::Binary {
                        op,
                        lhs: Box::new(lhs),
                        rhs: Box::new(rhs),
                    },
                }
            }
            Term::Neg(inner) => match self.rewrite(*inner)? {
                Term::Known(v) => Term::Known(Value::Real(real(v, "negation")?.neg())),
                other => Term::Neg(Box::new(other)),
            },
            Term::Call { func, arg } => match self.rewrite(*arg)? {
                Term::Known(v) => {
                    let a = real(v, "sin/cos")?;
                    if !a.is_exact() {
                        return Err(Error::Arithmetic(
                            "sin/cos of a noisy value is not supported".into(),
                        ));
                    }
                    let y = match func {
                        Func::Sin => a.center().sin(),
                        Func::Cos => a.center().cos(),
                    };
                    Term::Known(Value::Real(AffineForm::exact(y)))
                }
                other => Term::Call {
                    func,
                    arg: Box::new(other),
                },
            },
            Term::Ite {
                cond,
                then,
                otherwise,
            } => match self.rewrite(*cond)? {
                Term::Known(Value::Bool(true)) => self.rewrite(*then)?,
                Term::Known(Value::Bool(false)) => self.rewrite(*otherwise)?,
                Term::Known(Value::Real(_)) => {
                    return Err(Error::Arithmetic("if-condition is not a Bool".into()))
                }
                cond => Term::Ite {
                    cond: Box::new(cond),
                    then,
                    otherwise,
                },
            },
        })
    }

    fn apply(&mut self, op: BinOp, a: &AffineForm, b: &AffineForm) -> Result<AffineForm> {
        match op {
            BinOp::Add => a.add(b),
            BinOp::Sub => a.sub(b),
            BinOp::Mul => a.mul(b, self.symbols),
            BinOp::Div => {
                if !b.is_exact() {
                    return Err(Error::Arithmetic("division by a noisy value".into()));
                }
                a.div_exact(b.center())
            }
        }
    }
}
