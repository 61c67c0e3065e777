use std::collections::HashSet;

use super::lexer::{tokenize, Tok, Token};
use super::{
    BinOp, Expr, Func, InputDecl, OutputDecl, Pos, Predicate, SlackDecl, Spec, Trigger, Type,
};
use crate::error::{Diagnostic, Diagnostics};

const RESERVED: &[&str] = &[
    "input", "output", "constant", "trigger", "if", "then", "else", "true", "false", "Float",
    "Bool", "Variable", "sin", "cos",
];

type PResult<T> = Result<T, Diagnostic>;

struct Parser {
    tokens: Vec<Token>,
    at: usize,
    /// Every stream reference with its position, resolved after parsing.
    refs: Vec<(String, Pos)>,
}

/// Parses specification text without running the well-formedness checks.
///
/// Reports syntax errors, duplicate declarations and references to
/// undeclared streams. A declaration with a syntax error is skipped up to the
/// next declaration keyword so several errors can be reported at once.
pub fn parse_unchecked(text: &str) -> Result<Spec, Diagnostics> {
    let tokens = tokenize(text).map_err(Diagnostics)?;
    let mut p = Parser {
        tokens,
        at: 0,
        refs: Vec::new(),
    };
    let mut spec = Spec::default();
    let mut errors = Vec::new();
    let mut declared: HashSet<String> = HashSet::new();

    while p.peek() != &Tok::Eof {
        let start = p.at;
        match p.declaration(&mut spec) {
            Ok(Some((name, pos))) => {
                if !declared.insert(name.clone()) {
                    errors.push(Diagnostic::new(
                        pos.line,
                        pos.column,
                        format!("duplicate declaration of `{name}`"),
                    ));
                }
            }
            Ok(None) => {}
            Err(d) => {
                errors.push(d);
                p.recover(start);
            }
        }
    }

    for (name, pos) in &p.refs {
        if !declared.contains(name) {
            errors.push(Diagnostic::new(
                pos.line,
                pos.column,
                format!("unknown stream {name}"),
            ));
        }
    }
    for t in &spec.triggers {
        if !declared.contains(&t.stream) {
            errors.push(Diagnostic::new(
                t.pos.line,
                t.pos.column,
                format!("unknown stream {}", t.stream),
            ));
        }
    }

    if errors.is_empty() {
        Ok(spec)
    } else {
        errors.sort_by_key(|d| (d.line, d.column));
        Err(Diagnostics(errors))
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.at].tok
    }

    fn pos(&self) -> Pos {
        let t = &self.tokens[self.at];
        Pos {
            line: t.line,
            column: t.column,
        }
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.at].tok.clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, msg: impl Into<String>) -> Diagnostic {
        let p = self.pos();
        Diagnostic::new(p.line, p.column, msg)
    }

    fn unexpected(&self, wanted: &str) -> Diagnostic {
        self.error(format!("expected {wanted}, found {}", self.peek().describe()))
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn expect_keyword(&mut self, kw: &str) -> PResult<()> {
        if self.is_keyword(kw) {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{kw}`")))
        }
    }

    fn name(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) if !RESERVED.contains(&s.as_str()) => {
                self.bump();
                Ok(s)
            }
            Tok::Ident(s) => Err(self.error(format!("`{s}` is a keyword, expected a stream name"))),
            _ => Err(self.unexpected("a stream name")),
        }
    }

    fn number(&mut self) -> PResult<f64> {
        let negative = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        match self.peek().clone() {
            Tok::Number(v) => {
                self.bump();
                Ok(if negative { -v } else { v })
            }
            _ => Err(self.unexpected("a number")),
        }
    }

    /// Skips to the next declaration keyword, consuming at least one token
    /// since the declaration began at `start`.
    fn recover(&mut self, start: usize) {
        if self.at == start {
            self.bump();
        }
        while *self.peek() != Tok::Eof {
            if let Tok::Ident(s) = self.peek() {
                if matches!(s.as_str(), "input" | "output" | "constant" | "trigger") {
                    return;
                }
            }
            self.bump();
        }
    }

    fn declaration(&mut self, spec: &mut Spec) -> PResult<Option<(String, Pos)>> {
        let pos = self.pos();
        let kw = match self.peek() {
            Tok::Ident(s) => s.clone(),
            _ => return Err(self.unexpected("a declaration")),
        };
        match kw.as_str() {
            "input" => {
                self.bump();
                let name = self.name()?;
                self.expect(Tok::Colon)?;
                let ty = self.value_type()?;
                spec.inputs.push(InputDecl {
                    name: name.clone(),
                    ty,
                    pos,
                });
                Ok(Some((name, pos)))
            }
            "constant" => {
                self.bump();
                let name = self.name()?;
                self.expect(Tok::Colon)?;
                self.expect_keyword("Variable")?;
                spec.constants.push(SlackDecl {
                    name: name.clone(),
                    pos,
                });
                Ok(Some((name, pos)))
            }
            "output" => {
                self.bump();
                let name = self.name()?;
                let mut annotation = None;
                if *self.peek() == Tok::Colon {
                    self.bump();
                    if self.is_keyword("Variable") {
                        self.bump();
                        spec.slack_streams.push(SlackDecl {
                            name: name.clone(),
                            pos,
                        });
                        return Ok(Some((name, pos)));
                    }
                    annotation = Some(self.value_type()?);
                }
                self.expect(Tok::Assign)?;
                let expr = self.expr()?;
                spec.outputs.push(OutputDecl {
                    name: name.clone(),
                    annotation,
                    expr,
                    pos,
                });
                Ok(Some((name, pos)))
            }
            "trigger" => {
                self.bump();
                let stream = self.name()?;
                let predicate = match self.bump() {
                    Tok::Greater => Predicate::GreaterOverlap,
                    Tok::Less => Predicate::LessOverlap,
                    _ => {
                        self.at -= 1;
                        return Err(self.unexpected("`>[p]` or `<[p]`"));
                    }
                };
                self.expect(Tok::LBracket)?;
                let p_pos = self.pos();
                let p = self.number()?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(Diagnostic::new(
                        p_pos.line,
                        p_pos.column,
                        format!("overlap fraction {p} is outside [0, 1]"),
                    ));
                }
                self.expect(Tok::RBracket)?;
                let threshold = self.number()?;
                let message = match self.peek().clone() {
                    Tok::Str(s) => {
                        self.bump();
                        s
                    }
                    _ => return Err(self.unexpected("a message string")),
                };
                spec.triggers.push(Trigger {
                    stream,
                    predicate,
                    p,
                    threshold,
                    message,
                    pos,
                });
                Ok(None)
            }
            other => Err(self.error(format!("unknown keyword `{other}`"))),
        }
    }

    fn value_type(&mut self) -> PResult<Type> {
        if self.is_keyword("Float") {
            self.bump();
            Ok(Type::Float)
        } else if self.is_keyword("Bool") {
            self.bump();
            Ok(Type::Bool)
        } else {
            Err(self.unexpected("`Float` or `Bool`"))
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        if self.is_keyword("if") {
            self.bump();
            let cond = self.expr()?;
            self.expect_keyword("then")?;
            let then = self.expr()?;
            self.expect_keyword("else")?;
            let otherwise = self.expr()?;
            return Ok(Expr::ite(cond, then, otherwise));
        }
        self.additive()
    }

    fn additive(&mut self) -> PResult<Expr> {
        let mut lhs = self.multiplicative()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.multiplicative()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
    }

    fn multiplicative(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
    }

    fn unary(&mut self) -> PResult<Expr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.postfix()
    }

    fn postfix(&mut self) -> PResult<Expr> {
        let start = self.pos();
        let base = self.primary()?;
        if *self.peek() != Tok::Dot {
            return Ok(base);
        }
        let stream = match base {
            Expr::Ref(name) => name,
            _ => {
                return Err(Diagnostic::new(
                    start.line,
                    start.column,
                    "`prev` and `offset` apply only to stream references",
                ))
            }
        };
        self.bump();
        let method = match self.bump() {
            Tok::Ident(m) => m,
            _ => {
                self.at -= 1;
                return Err(self.unexpected("`prev` or `offset`"));
            }
        };
        match method.as_str() {
            "prev" => {
                self.expect(Tok::LParen)?;
                let default = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(Expr::prev(&stream, default))
            }
            "offset" => {
                self.expect(Tok::LParen)?;
                self.expect_keyword("by")?;
                self.expect(Tok::Colon)?;
                let off_pos = self.pos();
                let offset = self.number()?;
                if offset != -1.0 {
                    return Err(Diagnostic::new(
                        off_pos.line,
                        off_pos.column,
                        format!("only offset -1 is supported, found {offset}"),
                    ));
                }
                self.expect(Tok::RParen)?;
                self.expect(Tok::Dot)?;
                self.expect_keyword("defaults")?;
                self.expect(Tok::LParen)?;
                self.expect_keyword("to")?;
                self.expect(Tok::Colon)?;
                let default = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(Expr::prev(&stream, default))
            }
            other => Err(Diagnostic::new(
                start.line,
                start.column,
                format!("unknown stream access `.{other}`"),
            )),
        }
    }

    fn primary(&mut self) -> PResult<Expr> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Number(v) => {
                self.bump();
                Ok(Expr::Real(v))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(s) => match s.as_str() {
                "true" | "false" => {
                    self.bump();
                    Ok(Expr::Bool(s == "true"))
                }
                "sin" | "cos" => {
                    self.bump();
                    let func = if s == "sin" { Func::Sin } else { Func::Cos };
                    self.expect(Tok::LParen)?;
                    let arg = self.expr()?;
                    self.expect(Tok::RParen)?;
                    Ok(Expr::Call {
                        func,
                        arg: Box::new(arg),
                    })
                }
                "input" | "output" | "constant" | "trigger" => Err(self.unexpected("an expression")),
                _ => {
                    let name = self.name()?;
                    self.refs.push((name.clone(), pos));
                    Ok(Expr::Ref(name))
                }
            },
            _ => Err(self.unexpected("an expression")),
        }
    }
}

impl Parser {
    #[cfg(test)]
    fn remaining(&self) -> usize {
        self.tokens.len() - self.at
    }
}
