use std::fmt;

use crate::error::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    DeformedAdd,
    DeformedSub,
    DeformedMul,
    DeformedDiv,
    DualAdd,
    DualMul,
}

/// Binding strength. Higher binds tighter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Tier {
    Additive,
    Multiplicative,
}

impl BinOp {
    pub const ALL: [BinOp; 10] = [
        BinOp::Add,
        BinOp::Sub,
        BinOp::Mul,
        BinOp::Div,
        BinOp::DeformedAdd,
        BinOp::DeformedSub,
        BinOp::DeformedMul,
        BinOp::DeformedDiv,
        BinOp::DualAdd,
        BinOp::DualMul,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::DeformedAdd => "@+",
            BinOp::DeformedSub => "@-",
            BinOp::DeformedMul => "@*",
            BinOp::DeformedDiv => "@/",
            BinOp::DualAdd => "^+",
            BinOp::DualMul => "^*",
        }
    }

    pub fn tier(self) -> Tier {
        match self {
            BinOp::Add | BinOp::Sub | BinOp::DeformedAdd | BinOp::DeformedSub | BinOp::DualAdd => {
                Tier::Additive
            }
            _ => Tier::Multiplicative,
        }
    }

    /// The classical operator a deformed or dual one reduces to at `a = 0`.
    pub fn classical(self) -> BinOp {
        match self {
            BinOp::DeformedAdd | BinOp::DualAdd => BinOp::Add,
            BinOp::DeformedSub => BinOp::Sub,
            BinOp::DeformedMul | BinOp::DualMul => BinOp::Mul,
            BinOp::DeformedDiv => BinOp::Div,
            op => op,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    /// `-x`
    Neg,
    /// `@-x`, the deformed opposite element.
    DeformedNeg,
}

impl UnaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            UnaryOp::Neg => "-",
            UnaryOp::DeformedNeg => "@-",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    QExp,
    QLn,
    Exp,
    Ln,
}

impl Func {
    pub const ALL: [Func; 4] = [Func::QExp, Func::QLn, Func::Exp, Func::Ln];

    pub fn name(self) -> &'static str {
        match self {
            Func::QExp => "qexp",
            Func::QLn => "qln",
            Func::Exp => "exp",
            Func::Ln => "ln",
        }
    }

    pub fn from_name(s: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == s)
    }

    pub fn arity(self) -> usize {
        1
    }
}

/// Expression node with the source span it was parsed from.
///
/// Equality is structural: spans are ignored.
#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Number(f64),
    Var(String),
    Unary(UnaryOp, Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Vec<Expr>),
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Expr {
    /// Node without a source location.
    pub fn new(kind: ExprKind) -> Self {
        Expr {
            kind,
            span: Span::default(),
        }
    }

    pub fn number(v: f64) -> Self {
        Expr::new(ExprKind::Number(v))
    }

    pub fn var(name: impl Into<String>) -> Self {
        Expr::new(ExprKind::Var(name.into()))
    }

    pub fn unary(op: UnaryOp, e: Expr) -> Self {
        Expr::new(ExprKind::Unary(op, Box::new(e)))
    }

    pub fn binary(op: BinOp, l: Expr, r: Expr) -> Self {
        Expr::new(ExprKind::Binary(op, Box::new(l), Box::new(r)))
    }

    pub fn call(f: Func, args: Vec<Expr>) -> Self {
        Expr::new(ExprKind::Call(f, args))
    }

    /// Number of nodes on the longest root-to-leaf path.
    pub fn depth(&self) -> usize {
        1 + super::deep(|| match &self.kind {
            ExprKind::Number(_) | ExprKind::Var(_) => 0,
            ExprKind::Unary(_, e) => e.depth(),
            ExprKind::Binary(_, l, r) => l.depth().max(r.depth()),
            ExprKind::Call(_, args) => args.iter().map(Expr::depth).max().unwrap_or(0),
        })
    }

    /// Same tree with every deformed and dual operator replaced by its
    /// classical counterpart.
    pub fn classicalized(&self) -> Expr {
        let kind = super::deep(|| match &self.kind {
            ExprKind::Number(_) | ExprKind::Var(_) => self.kind.clone(),
            ExprKind::Unary(_, e) => ExprKind::Unary(UnaryOp::Neg, Box::new(e.classicalized())),
            ExprKind::Binary(op, l, r) => ExprKind::Binary(
                op.classical(),
                Box::new(l.classicalized()),
                Box::new(r.classicalized()),
            ),
            ExprKind::Call(f, args) => {
                let f = match f {
                    Func::QExp => Func::Exp,
                    Func::QLn => Func::Ln,
                    f => *f,
                };
                ExprKind::Call(f, args.iter().map(Expr::classicalized).collect())
            }
        });
        Expr {
            kind,
            span: self.span,
        }
    }

    fn is_atom(&self) -> bool {
        matches!(
            self.kind,
            ExprKind::Number(_) | ExprKind::Var(_) | ExprKind::Call(..)
        )
    }
}

/// Canonical text with the fewest parentheses that re-parse to the same tree.
pub fn pretty_print(e: &Expr) -> String {
    e.to_string()
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::deep(|| match &self.kind {
            ExprKind::Number(v) => write!(f, "{v}"),
            ExprKind::Var(name) => f.write_str(name),
            ExprKind::Unary(op, e) => {
                f.write_str(op.symbol())?;
                if e.is_atom() {
                    write!(f, "{e}")
                } else {
                    write!(f, "({e})")
                }
            }
            ExprKind::Binary(op, l, r) => {
                // left-associative: a right operand of the same tier needs parentheses
                let wrap_l = matches!(&l.kind, ExprKind::Binary(lop, ..) if lop.tier() < op.tier());
                let wrap_r =
                    matches!(&r.kind, ExprKind::Binary(rop, ..) if rop.tier() <= op.tier());
                write_operand(f, l, wrap_l)?;
                write!(f, " {} ", op.symbol())?;
                write_operand(f, r, wrap_r)
            }
            ExprKind::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        })
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, e: &Expr, wrap: bool) -> fmt::Result {
    if wrap {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}
