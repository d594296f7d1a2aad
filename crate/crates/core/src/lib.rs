//! Satisfiability procedures for clausal fragments of propositional linear
//! temporal logic interpreted over the integers.
//!
//! The crate is organized around a clausal normal form — a conjunction of
//! initial literals and always-clauses — whose clause shape (core, krom, horn,
//! bool) and operator set (`box*` only; the box operators; box plus next)
//! determine which decision procedure applies:
//!
//! * [`star`]: krom/core clauses over `box*` alone, by reduction to 2SAT;
//! * [`boxenc`]: the box-only fragments, by a time-indexed propositional
//!   encoding solved with unit propagation (Horn) or DPLL (krom/bool);
//! * [`corecalc`]: core clauses over the box operators, by a derivation
//!   calculus over (literal, offset) pairs with bounded reach;
//! * [`nextfrag`]: binary clauses with next-operators, by type-sequence
//!   certificates checked through unary automata in Chrobak normal form;
//! * [`oracle`]: a bounded enumeration of ultimately periodic models, used as
//!   one-sided ground truth everywhere and as the only (incomplete) procedure
//!   for fragments without a complete engine here.
//!
//! [`formula`] and [`clausal`] hold the syntax; [`normalize`] brings arbitrary
//! formulas into clausal and then restricted shape; [`model`] evaluates
//! formulas on ultimately periodic models; [`propsat`] hosts the propositional
//! backends; [`generate`] emits hardness-reduction instances for testing and
//! benchmarks.

pub mod clausal;
pub mod formula;
pub mod model;
pub mod oracle;
pub mod propsat;
