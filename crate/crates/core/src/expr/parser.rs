use std::fmt;

use thiserror::Error;

use super::ast::{BinOp, Expr, ExprKind, Tier, UnaryOp};
use super::lexer::{Token, TokenKind};
use crate::error::Span;

pub const DEFAULT_MAX_DEPTH: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub expected: String,
    /// `None` at end of input.
    pub found: Option<String>,
    pub span: Span,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.found {
            Some(found) => write!(
                f,
                "expected {} at offset {}, found {found}",
                self.expected, self.span.start
            ),
            None => write!(
                f,
                "expected {} at offset {}, found end of input",
                self.expected, self.span.start
            ),
        }
    }
}

/// Parses with the default depth limit.
pub fn parse(tokens: &[Token]) -> Result<Expr, ParseError> {
    parse_with_limit(tokens, DEFAULT_MAX_DEPTH)
}

/// Parses a complete token stream. Trees deeper than `max_depth` (and
/// nesting deeper than `max_depth`) are rejected.
pub fn parse_with_limit(tokens: &[Token], max_depth: usize) -> Result<Expr, ParseError> {
    let mut p = Parser {
        tokens,
        pos: 0,
        nesting: 0,
        max_depth,
    };
    let (e, _) = p.expr()?;
    match p.peek() {
        None => Ok(e),
        Some(t) => Err(p.error_at(t, "an operator or end of input")),
    }
}

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
    nesting: usize,
    max_depth: usize,
}

type Parsed = Result<(Expr, usize), ParseError>;

impl<'t> Parser<'t> {
    fn peek(&self) -> Option<&'t Token> {
        self.tokens.get(self.pos)
    }

    fn end_span(&self) -> Span {
        let end = self.tokens.last().map_or(0, |t| t.span.end);
        Span::new(end, end)
    }

    fn error_at(&self, t: &Token, expected: &str) -> ParseError {
        ParseError {
            expected: expected.to_string(),
            found: Some(t.kind.to_string()),
            span: t.span,
        }
    }

    fn error_here(&self, expected: &str) -> ParseError {
        match self.peek() {
            Some(t) => self.error_at(t, expected),
            None => ParseError {
                expected: expected.to_string(),
                found: None,
                span: self.end_span(),
            },
        }
    }

    fn expect(&mut self, kind: &TokenKind, expected: &str) -> Result<Span, ParseError> {
        match self.peek() {
            Some(t) if &t.kind == kind => {
                self.pos += 1;
                Ok(t.span)
            }
            _ => Err(self.error_here(expected)),
        }
    }

    fn check_depth(&self, depth: usize, span: Span) -> Result<(), ParseError> {
        if depth > self.max_depth || self.nesting > self.max_depth {
            Err(ParseError {
                expected: format!("nesting depth at most {}", self.max_depth),
                found: Some("a deeper expression".into()),
                span,
            })
        } else {
            Ok(())
        }
    }

    fn enter(&mut self, span: Span) -> Result<(), ParseError> {
        self.nesting += 1;
        self.check_depth(0, span)
    }

    fn expr(&mut self) -> Parsed {
        self.binary(Tier::Additive)
    }

    /// `operand { op operand }` for the operators of one tier, left-associative.
    fn binary(&mut self, tier: Tier) -> Parsed {
        let operand = |p: &mut Self| match tier {
            Tier::Additive => p.binary(Tier::Multiplicative),
            Tier::Multiplicative => p.unary(),
        };
        let (mut lhs, mut depth) = operand(self)?;
        while let Some(Token {
            kind: TokenKind::Op(op),
            ..
        }) = self.peek()
        {
            if op.tier() != tier {
                break;
            }
            self.pos += 1;
            let (rhs, rdepth) = operand(self)?;
            depth = 1 + depth.max(rdepth);
            let span = lhs.span.join(rhs.span);
            self.check_depth(depth, span)?;
            lhs = Expr {
                kind: ExprKind::Binary(*op, Box::new(lhs), Box::new(rhs)),
                span,
            };
        }
        Ok((lhs, depth))
    }

    fn unary(&mut self) -> Parsed {
        let op = match self.peek().map(|t| &t.kind) {
            Some(TokenKind::Op(BinOp::Sub)) => UnaryOp::Neg,
            Some(TokenKind::Op(BinOp::DeformedSub)) => UnaryOp::DeformedNeg,
            _ => return self.primary(),
        };
        let start = self.tokens[self.pos].span;
        self.pos += 1;
        self.enter(start)?;
        let (child, d) = self.primary()?;
        self.nesting -= 1;
        let span = start.join(child.span);
        self.check_depth(d + 1, span)?;
        Ok((
            Expr {
                kind: ExprKind::Unary(op, Box::new(child)),
                span,
            },
            d + 1,
        ))
    }

    fn primary(&mut self) -> Parsed {
        let Some(t) = self.peek() else {
            return Err(self.error_here("an operand"));
        };
        match &t.kind {
            TokenKind::Number(v) => {
                self.pos += 1;
                Ok((
                    Expr {
                        kind: ExprKind::Number(*v),
                        span: t.span,
                    },
                    1,
                ))
            }
            TokenKind::Ident(name) => {
                self.pos += 1;
                Ok((
                    Expr {
                        kind: ExprKind::Var(name.clone()),
                        span: t.span,
                    },
                    1,
                ))
            }
            TokenKind::LParen => {
                self.pos += 1;
                self.enter(t.span)?;
                let (mut inner, d) = super::deep(|| self.expr())?;
                let close = self.expect(&TokenKind::RParen, "`)`")?;
                self.nesting -= 1;
                // the parenthesized span, so errors point at the whole group
                inner.span = t.span.join(close);
                Ok((inner, d))
            }
            TokenKind::Func(func) => {
                let func = *func;
                self.pos += 1;
                self.expect(&TokenKind::LParen, "`(` after function name")?;
                self.enter(t.span)?;
                let mut args = Vec::new();
                let mut depth = 0;
                loop {
                    let (arg, d) = super::deep(|| self.expr())?;
                    depth = depth.max(d);
                    args.push(arg);
                    match self.peek().map(|t| &t.kind) {
                        Some(TokenKind::Comma) => self.pos += 1,
                        _ => break,
                    }
                }
                let close = self.expect(&TokenKind::RParen, "`,` or `)`")?;
                self.nesting -= 1;
                let span = t.span.join(close);
                if args.len() != func.arity() {
                    return Err(ParseError {
                        expected: format!("{} argument(s) to `{}`", func.arity(), func.name()),
                        found: Some(format!("{}", args.len())),
                        span,
                    });
                }
                self.check_depth(depth + 1, span)?;
                Ok((
                    Expr {
                        kind: ExprKind::Call(func, args),
                        span,
                    },
                    depth + 1,
                ))
            }
            _ => Err(self.error_at(t, "an operand")),
        }
    }
}
