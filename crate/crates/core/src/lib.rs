//! Deformed algebra of the q-exponential and q-logarithm.
//!
//! * [`deformed`]: `exp_a`, `ln_a` and their domain.
//! * [`ops`]: the deformed operators `+_a -_a *_a /_a`, the opposite and
//!   inverse elements, and the dual operators `+^a *^a`.
//! * [`laws`]: a seeded, replayable engine that checks the algebraic laws of
//!   those operators and finds counterexamples for the ones that fail.
//! * [`nonextensive`]: Tsallis entropy and pseudo-additive composition.
//! * [`ratio`]: composition of growth ratios under `+_1`.
//! * [`expr`]: a small expression language over classical and deformed operators.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod deformed;
pub mod error;
pub mod expr;
pub mod laws;
pub mod nonextensive;
pub mod ops;
pub mod ratio;

#[cfg(feature = "cli")]
pub mod cli;

pub use deformed::{in_domain_exp, q_exp, q_ln, DeformParam, EvalPolicy};
pub use error::{Checked, DomainError, ParamError, Span};
