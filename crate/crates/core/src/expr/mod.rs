//! Expression language over classical, deformed and dual operators.
//!
//! ```text
//! expr           := additive
//! additive       := multiplicative { ("+" | "-" | "@+" | "@-" | "^+") multiplicative }
//! multiplicative := unary { ("*" | "/" | "@*" | "@/" | "^*") unary }
//! unary          := ["-" | "@-"] primary
//! primary        := NUMBER | IDENT | FUNC "(" expr { "," expr } ")" | "(" expr ")"
//! FUNC           := "qexp" | "qln" | "exp" | "ln"
//! ```
//!
//! All binary operators are left-associative. `@` marks the deformed family,
//! `^` the dual family; every one of them uses the single `a` of the
//! [`EvalEnv`].

mod ast;
mod eval;
mod lexer;
mod parser;

use thiserror::Error;

pub use ast::{pretty_print, BinOp, Expr, ExprKind, Func, Tier, UnaryOp};
pub use eval::{apply, evaluate, EvalEnv, EvalError, EvalErrorKind};
pub use lexer::{tokenize, LexError, Token, TokenKind};
pub use parser::{parse, parse_with_limit, ParseError, DEFAULT_MAX_DEPTH};

use crate::error::Span;

/// Lexing or parsing failure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl SyntaxError {
    pub fn span(&self) -> Span {
        match self {
            SyntaxError::Lex(e) => e.span(),
            SyntaxError::Parse(e) => e.span,
        }
    }
}

/// Runs `f` with at least 64 KiB of stack left, growing it if needed. Every
/// recursion over expression trees goes through here.
pub(crate) fn deep<R>(f: impl FnOnce() -> R) -> R {
    stacker::maybe_grow(64 * 1024, 1024 * 1024, f)
}

/// Tokenize and parse in one step.
pub fn parse_str(src: &str) -> Result<Expr, SyntaxError> {
    Ok(parse(&tokenize(src)?)?)
}
