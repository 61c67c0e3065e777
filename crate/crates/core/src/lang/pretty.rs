use std::fmt::{self, Display, Formatter, Write};

use super::{BinOp, Expr, Func, Predicate, Spec};

fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Ite { .. } => 0,
        Expr::Binary {
            op: BinOp::Add | BinOp::Sub,
            ..
        } => 1,
        Expr::Binary { .. } => 2,
        Expr::Neg(_) => 3,
        _ => 4,
    }
}

fn number(f: &mut Formatter<'_>, v: f64) -> fmt::Result {
    // `{:?}` is the shortest representation that reads back to the same bits
    if v < 0.0 {
        write!(f, "(-{:?})", -v)
    } else {
        write!(f, "{v:?}")
    }
}

fn write_at(f: &mut Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if precedence(e) < min {
        f.write_char('(')?;
        write_expr(f, e)?;
        f.write_char(')')
    } else {
        write_expr(f, e)
    }
}

fn write_expr(f: &mut Formatter<'_>, e: &Expr) -> fmt::Result {
    match e {
        Expr::Real(v) => number(f, *v),
        Expr::Bool(b) => write!(f, "{b}"),
        Expr::Ref(name) => f.write_str(name),
        Expr::Prev { stream, default } => {
            write!(f, "{stream}.prev(")?;
            write_expr(f, default)?;
            f.write_char(')')
        }
        Expr::Binary { op, lhs, rhs } => {
            let (sym, level) = match op {
                BinOp::Add => ("+", 1),
                BinOp::Sub => ("-", 1),
                BinOp::Mul => ("*", 2),
                BinOp::Div => ("/", 2),
            };
            write_at(f, lhs, level)?;
            write!(f, " {sym} ")?;
            write_at(f, rhs, level + 1)
        }
        Expr::Neg(inner) => {
            f.write_char('-')?;
            write_at(f, inner, 3)
        }
        Expr::Call { func, arg } => {
            f.write_str(match func {
                Func::Sin => "sin(",
                Func::Cos => "cos(",
            })?;
            write_expr(f, arg)?;
            f.write_char(')')
        }
        Expr::Ite {
            cond,
            then,
            otherwise,
        } => {
            f.write_str("if ")?;
            write_expr(f, cond)?;
            f.write_str(" then ")?;
            write_expr(f, then)?;
            f.write_str(" else ")?;
            write_expr(f, otherwise)
        }
    }
}

impl Display for Expr {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_expr(f, self)
    }
}

/// Canonical source form: inputs, constants, slack streams, outputs, triggers.
impl Display for Spec {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        for i in &self.inputs {
            writeln!(f, "input {}: {}", i.name, i.ty)?;
        }
        for c in &self.constants {
            writeln!(f, "constant {}: Variable", c.name)?;
        }
        for s in &self.slack_streams {
            writeln!(f, "output {}: Variable", s.name)?;
        }
        for o in &self.outputs {
            write!(f, "output {}", o.name)?;
            if let Some(t) = o.annotation {
                write!(f, ": {t}")?;
            }
            writeln!(f, " := {}", o.expr)?;
        }
        for t in &self.triggers {
            let op = match t.predicate {
                Predicate::GreaterOverlap => '>',
                Predicate::LessOverlap => '<',
            };
            write!(f, "trigger {} {op}[{:?}] ", t.stream, t.p)?;
            if t.threshold < 0.0 {
                write!(f, "-{:?}", -t.threshold)?;
            } else {
                write!(f, "{:?}", t.threshold)?;
            }
            writeln!(f, " \"{}\"", t.message)?;
        }
        Ok(())
    }
}
