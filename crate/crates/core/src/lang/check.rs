//! Type inference, exactness analysis and the dependency-cycle check.

use std::collections::HashMap;

use super::{BinOp, Expr, Pos, Spec, StreamKind, Type};
use crate::error::{Diagnostic, Diagnostics};

/// Static type of a stream. `exact` means no noise symbol can ever reach it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamType {
    pub ty: Type,
    pub exact: bool,
}

fn diag(pos: Pos, msg: impl Into<String>) -> Diagnostic {
    Diagnostic::new(pos.line, pos.column, msg)
}

/// Infers the type and exactness of every declared stream.
pub fn stream_types(spec: &Spec) -> Result<HashMap<String, StreamType>, Diagnostics> {
    let mut types: HashMap<String, Option<Type>> = HashMap::new();
    for i in &spec.inputs {
        types.insert(i.name.clone(), Some(i.ty));
    }
    for s in spec.constants.iter().chain(&spec.slack_streams) {
        types.insert(s.name.clone(), Some(Type::Float));
    }
    for o in &spec.outputs {
        types.insert(o.name.clone(), o.annotation);
    }

    // A prev-cycle may need several rounds before every type is known.
    for _ in 0..=spec.outputs.len() {
        let mut changed = false;
        for o in &spec.outputs {
            if types[&o.name].is_none() {
                if let Some(t) = infer(&o.expr, &types) {
                    types.insert(o.name.clone(), Some(t));
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    let mut errors = Vec::new();
    for o in &spec.outputs {
        if types[&o.name].is_none() {
            errors.push(diag(o.pos, format!("cannot infer the type of `{}`", o.name)));
        }
    }
    if !errors.is_empty() {
        return Err(Diagnostics(errors));
    }

    let mut exact: HashMap<String, bool> = HashMap::new();
    for i in &spec.inputs {
        exact.insert(i.name.clone(), true);
    }
    for s in spec.constants.iter().chain(&spec.slack_streams) {
        exact.insert(s.name.clone(), false);
    }
    for o in &spec.outputs {
        exact.insert(o.name.clone(), true);
    }
    // Greatest fixpoint: a stream stays exact unless noise reaches it.
    loop {
        let mut changed = false;
        for o in &spec.outputs {
            if exact[&o.name] && !is_exact(&o.expr, &exact) {
                exact.insert(o.name.clone(), false);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    Ok(types
        .into_iter()
        .map(|(name, ty)| {
            let st = StreamType {
                ty: ty.expect("all types inferred"),
                exact: exact[&name],
            };
            (name, st)
        })
        .collect())
}

fn infer(expr: &Expr, types: &HashMap<String, Option<Type>>) -> Option<Type> {
    match expr {
        Expr::Real(_) => Some(Type::Float),
        Expr::Bool(_) => Some(Type::Bool),
        Expr::Ref(name) => types.get(name).copied().flatten(),
        Expr::Prev { stream, default } => types
            .get(stream)
            .copied()
            .flatten()
            .or_else(|| infer(default, types)),
        Expr::Binary { .. } | Expr::Neg(_) | Expr::Call { .. } => Some(Type::Float),
        Expr::Ite {
            then, otherwise, ..
        } => infer(then, types).or_else(|| infer(otherwise, types)),
    }
}

fn is_exact(expr: &Expr, exact: &HashMap<String, bool>) -> bool {
    let mut ok = true;
    expr.visit_refs(&mut |name, _| ok &= exact.get(name).copied().unwrap_or(true));
    ok
}

struct TypeChecker<'a> {
    types: &'a HashMap<String, StreamType>,
    stream: &'a str,
    pos: Pos,
    errors: Vec<Diagnostic>,
}

impl TypeChecker<'_> {
    fn error(&mut self, msg: String) {
        self.errors
            .push(diag(self.pos, format!("in `{}`: {msg}", self.stream)));
    }

    fn exact(&self, e: &Expr) -> bool {
        let mut ok = true;
        e.visit_refs(&mut |name, _| ok &= self.types.get(name).map_or(true, |t| t.exact));
        ok
    }

    fn check(&mut self, e: &Expr) -> Option<Type> {
        match e {
            Expr::Real(_) => Some(Type::Float),
            Expr::Bool(_) => Some(Type::Bool),
            Expr::Ref(name) => self.types.get(name).map(|t| t.ty),
            Expr::Prev { stream, default } => {
                let s = self.types.get(stream).map(|t| t.ty);
                let d = self.check(default);
                if let (Some(s), Some(d)) = (s, d) {
                    if s != d {
                        self.error(format!(
                            "default of `{stream}.prev` has type {d}, expected {s}"
                        ));
                    }
                }
                s
            }
            Expr::Binary { op, lhs, rhs } => {
                for side in [lhs, rhs] {
                    if self.check(side) == Some(Type::Bool) {
                        self.error("Bool value used in arithmetic".into());
                    }
                }
                if *op == BinOp::Div && !self.exact(rhs) {
                    self.error("divisor must be noise-free".into());
                }
                Some(Type::Float)
            }
            Expr::Neg(inner) => {
                if self.check(inner) == Some(Type::Bool) {
                    self.error("Bool value used in arithmetic".into());
                }
                Some(Type::Float)
            }
            Expr::Call { func, arg } => {
                if self.check(arg) == Some(Type::Bool) {
                    self.error("Bool value used in arithmetic".into());
                }
                if !self.exact(arg) {
                    self.error(format!(
                        "argument of {} must be noise-free",
                        match func {
                            super::Func::Sin => "sin",
                            super::Func::Cos => "cos",
                        }
                    ));
                }
                Some(Type::Float)
            }
            Expr::Ite {
                cond,
                then,
                otherwise,
            } => {
                match self.check(cond) {
                    Some(Type::Bool) => {}
                    Some(Type::Float) => self.error(
                        "if-condition must be Bool; noisy values cannot be booleanized".into(),
                    ),
                    None => {}
                }
                let t = self.check(then);
                let o = self.check(otherwise);
                if let (Some(t), Some(o)) = (t, o) {
                    if t != o {
                        self.error(format!("if-branches have types {t} and {o}"));
                    }
                }
                t.or(o)
            }
        }
    }
}

/// Runs every well-formedness check: typing, exactness requirements and
/// absence of dependency cycles that do not pass through `prev`.
pub fn check_well_formed(spec: &Spec) -> Result<(), Diagnostics> {
    // types of streams on a same-step cycle cannot be inferred
    evaluation_order(spec)?;
    let types = stream_types(spec)?;
    let mut errors = Vec::new();

    for o in &spec.outputs {
        let mut tc = TypeChecker {
            types: &types,
            stream: &o.name,
            pos: o.pos,
            errors: Vec::new(),
        };
        let ty = tc.check(&o.expr);
        if let (Some(ann), Some(ty)) = (o.annotation, ty) {
            if ann != ty {
                tc.error(format!("declared {ann} but the expression has type {ty}"));
            }
        }
        errors.extend(tc.errors);
    }

    for t in &spec.triggers {
        match types.get(&t.stream) {
            Some(st) if st.ty == Type::Float => {}
            Some(_) => errors.push(diag(
                t.pos,
                format!("trigger stream `{}` must be Float", t.stream),
            )),
            None => errors.push(diag(t.pos, format!("unknown stream {}", t.stream))),
        }
        if !(0.0..=1.0).contains(&t.p) {
            errors.push(diag(t.pos, format!("overlap fraction {} is outside [0, 1]", t.p)));
        }
    }

    if errors.is_empty() {
        Ok(())
    } else {
        errors.sort_by_key(|d| (d.line, d.column));
        Err(Diagnostics(errors))
    }
}

/// Indices into `spec.outputs` in an order where every same-step dependency
/// comes first. Fails with one diagnostic per cycle that avoids `prev`.
pub fn evaluation_order(spec: &Spec) -> Result<Vec<usize>, Diagnostics> {
    let index: HashMap<&str, usize> = spec
        .outputs
        .iter()
        .enumerate()
        .map(|(i, o)| (o.name.as_str(), i))
        .collect();
    let n = spec.outputs.len();
    let mut deps: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, o) in spec.outputs.iter().enumerate() {
        o.expr.visit_refs(&mut |name, delayed| {
            if delayed {
                return;
            }
            if let (Some(&j), Some(StreamKind::Output)) = (index.get(name), spec.kind_of(name)) {
                if !deps[i].contains(&j) {
                    deps[i].push(j);
                }
            }
        });
    }

    // Depth-first post-order; a grey node on the stack closes a cycle.
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        White,
        Grey,
        Black,
    }
    let mut mark = vec![Mark::White; n];
    let mut order = Vec::with_capacity(n);
    let mut errors = Vec::new();
    let mut reported: Vec<Vec<usize>> = Vec::new();

    fn visit(
        v: usize,
        deps: &[Vec<usize>],
        mark: &mut [Mark],
        stack: &mut Vec<usize>,
        order: &mut Vec<usize>,
        cycles: &mut Vec<Vec<usize>>,
    ) {
        mark[v] = Mark::Grey;
        stack.push(v);
        for &w in &deps[v] {
            match mark[w] {
                Mark::White => visit(w, deps, mark, stack, order, cycles),
                Mark::Grey => {
                    let start = stack.iter().position(|&s| s == w).unwrap();
                    cycles.push(stack[start..].to_vec());
                }
                Mark::Black => {}
            }
        }
        stack.pop();
        mark[v] = Mark::Black;
        order.push(v);
    }

    let mut cycles = Vec::new();
    for v in 0..n {
        if mark[v] == Mark::White {
            visit(v, &deps, &mut mark, &mut Vec::new(), &mut order, &mut cycles);
        }
    }
    for cycle in cycles {
        let mut key = cycle.clone();
        key.sort_unstable();
        if reported.contains(&key) {
            continue;
        }
        reported.push(key);
        let mut path: Vec<&str> = cycle.iter().map(|&i| spec.outputs[i].name.as_str()).collect();
        path.push(path[0]);
        let pos = spec.outputs[cycle[0]].pos;
        errors.push(diag(
            pos,
            format!("dependency cycle without prev: {}", path.join(" -> ")),
        ));
    }

    if errors.is_empty() {
        Ok(order)
    } else {
        Err(Diagnostics(errors))
    }
}
