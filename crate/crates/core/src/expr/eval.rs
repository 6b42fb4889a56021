use std::collections::HashMap;

use thiserror::Error;

use super::ast::{BinOp, Expr, ExprKind, Func, UnaryOp};
use crate::deformed::{q_exp, q_ln, DeformParam, EvalPolicy};
use crate::error::{finite, Checked, DomainError, Span};
use crate::ops;

/// One deformation parameter shared by every operator of an evaluation.
#[derive(Debug, Clone)]
pub struct EvalEnv {
    pub param: DeformParam,
    pub bindings: HashMap<String, f64>,
    pub policy: EvalPolicy,
}

impl EvalEnv {
    pub fn new(param: DeformParam) -> Self {
        EvalEnv {
            param,
            bindings: HashMap::new(),
            policy: EvalPolicy::Strict,
        }
    }

    pub fn with_policy(mut self, policy: EvalPolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn bind(mut self, name: impl Into<String>, value: f64) -> Self {
        self.bindings.insert(name.into(), value);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalErrorKind {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("{0}")]
    Domain(#[from] DomainError),
}

/// Evaluation failure located at the subexpression that produced it.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{kind} at {span}")]
pub struct EvalError {
    pub kind: EvalErrorKind,
    pub span: Span,
}

impl EvalError {
    pub fn domain(&self) -> Option<DomainError> {
        match self.kind {
            EvalErrorKind::Domain(d) => Some(d),
            EvalErrorKind::UnboundVariable(_) => None,
        }
    }
}

pub fn evaluate(e: &Expr, env: &EvalEnv) -> Result<f64, EvalError> {
    super::deep(|| evaluate_node(e, env))
}

fn evaluate_node(e: &Expr, env: &EvalEnv) -> Result<f64, EvalError> {
    let at = |r: Checked| {
        r.map_err(|d| EvalError {
            kind: d.into(),
            span: e.span,
        })
    };
    match &e.kind {
        ExprKind::Number(v) => Ok(*v),
        ExprKind::Var(name) => env.bindings.get(name).copied().ok_or_else(|| EvalError {
            kind: EvalErrorKind::UnboundVariable(name.clone()),
            span: e.span,
        }),
        ExprKind::Unary(op, child) => {
            let v = evaluate(child, env)?;
            at(match op {
                UnaryOp::Neg => Ok(-v),
                UnaryOp::DeformedNeg => ops::neg(env.param, v),
            })
        }
        ExprKind::Binary(op, l, r) => {
            let x = evaluate(l, env)?;
            let y = evaluate(r, env)?;
            at(apply(*op, env.param, x, y))
        }
        ExprKind::Call(func, args) => {
            let x = evaluate(&args[0], env)?;
            at(match func {
                Func::QExp => q_exp(env.param, x, env.policy),
                Func::QLn => q_ln(env.param, x),
                Func::Exp => finite(x.exp()),
                Func::Ln => q_ln(DeformParam::classical(), x),
            })
        }
    }
}

pub fn apply(op: BinOp, p: DeformParam, x: f64, y: f64) -> Checked {
    match op {
        BinOp::Add => finite(x + y),
        BinOp::Sub => finite(x - y),
        BinOp::Mul => finite(x * y),
        BinOp::Div if y == 0.0 => Err(DomainError::SingularDenominator),
        BinOp::Div => finite(x / y),
        BinOp::DeformedAdd => ops::add(p, x, y),
        BinOp::DeformedSub => ops::sub(p, x, y),
        BinOp::DeformedMul => ops::mul(p, x, y),
        BinOp::DeformedDiv => ops::div(p, x, y),
        BinOp::DualAdd => ops::dual_add(p, x, y),
        BinOp::DualMul => ops::dual_mul(p, x, y),
    }
}
