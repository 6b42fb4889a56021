use std::fmt;

use thiserror::Error;

use super::ast::{BinOp, Func};
use crate::error::Span;

#[derive(Debug, Clone, PartialEq)]
pub enum TokenKind {
    Number(f64),
    Ident(String),
    Op(BinOp),
    Func(Func),
    LParen,
    RParen,
    Comma,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

impl Token {
    /// Source text of the token.
    pub fn text<'s>(&self, src: &'s str) -> &'s str {
        &src[self.span.start..self.span.end]
    }
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Number(v) => write!(f, "number {v}"),
            TokenKind::Ident(name) => write!(f, "identifier `{name}`"),
            TokenKind::Op(op) => write!(f, "`{}`", op.symbol()),
            TokenKind::Func(func) => write!(f, "`{}`", func.name()),
            TokenKind::LParen => f.write_str("`(`"),
            TokenKind::RParen => f.write_str("`)`"),
            TokenKind::Comma => f.write_str("`,`"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unexpected `{found}` at offset {offset}: {reason}")]
pub struct LexError {
    pub offset: usize,
    pub found: char,
    pub reason: &'static str,
}

impl LexError {
    pub fn span(&self) -> Span {
        Span::new(self.offset, self.offset + self.found.len_utf8())
    }
}

/// Splits `input` into tokens. Offsets are byte offsets.
pub fn tokenize(input: &str) -> Result<Vec<Token>, LexError> {
    let bytes = input.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;

    while let Some(c) = input[i..].chars().next() {
        let start = i;
        let err = |reason| LexError {
            offset: start,
            found: c,
            reason,
        };
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        let kind = match c {
            '(' => TokenKind::LParen,
            ')' => TokenKind::RParen,
            ',' => TokenKind::Comma,
            '+' => TokenKind::Op(BinOp::Add),
            '-' => TokenKind::Op(BinOp::Sub),
            '*' => TokenKind::Op(BinOp::Mul),
            '/' => TokenKind::Op(BinOp::Div),
            '@' | '^' => {
                let op = match (c, bytes.get(i + 1)) {
                    ('@', Some(b'+')) => BinOp::DeformedAdd,
                    ('@', Some(b'-')) => BinOp::DeformedSub,
                    ('@', Some(b'*')) => BinOp::DeformedMul,
                    ('@', Some(b'/')) => BinOp::DeformedDiv,
                    ('^', Some(b'+')) => BinOp::DualAdd,
                    ('^', Some(b'*')) => BinOp::DualMul,
                    _ => return Err(err("unknown operator")),
                };
                i += 1;
                TokenKind::Op(op)
            }
            '0'..='9' | '.' => {
                let end = scan_number(bytes, i).ok_or_else(|| err("malformed number"))?;
                let v: f64 = input[i..end].parse().map_err(|_| err("malformed number"))?;
                if !v.is_finite() {
                    return Err(err("number out of range"));
                }
                i = end - 1;
                TokenKind::Number(v)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let end = input[i..]
                    .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_'))
                    .map_or(input.len(), |n| i + n);
                let word = &input[i..end];
                i = end - 1;
                match Func::from_name(word) {
                    Some(func) => TokenKind::Func(func),
                    None => TokenKind::Ident(word.to_string()),
                }
            }
            _ => return Err(err("unexpected character")),
        };
        i += 1;
        tokens.push(Token {
            kind,
            span: Span::new(start, i),
        });
    }
    Ok(tokens)
}

/// End of a decimal literal `digits [. digits] [(e|E) [+-] digits]` starting
/// at `i`, or `None` if no digit is present.
fn scan_number(b: &[u8], mut i: usize) -> Option<usize> {
    let digits = |b: &[u8], mut i: usize| {
        let s = i;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        (i, i - s)
    };
    let (next, int_digits) = digits(b, i);
    i = next;
    let mut frac_digits = 0;
    if b.get(i) == Some(&b'.') {
        let (next, n) = digits(b, i + 1);
        i = next;
        frac_digits = n;
    }
    if int_digits + frac_digits == 0 {
        return None;
    }
    if matches!(b.get(i), Some(b'e' | b'E')) {
        let mut j = i + 1;
        if matches!(b.get(j), Some(b'+' | b'-')) {
            j += 1;
        }
        let (next, n) = digits(b, j);
        if n == 0 {
            return None;
        }
        i = next;
    }
    Some(i)
}
