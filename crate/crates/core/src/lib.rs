//! Iterated common and distributed knowledge: lattice terms over agents,
//! regular Kripke models, semi-public reading updates, product updates by
//! reading event models, and reduction of dynamic formulas to static ones.
//!
//! ```
//! use lcdk::{term_leq, Term};
//!
//! let s: Term = "b*a + c*a".parse().unwrap();
//! let t: Term = "(b+c)*a".parse().unwrap();
//! assert!(term_leq(&s, &t).unwrap());
//! assert!(!term_leq(&t, &s).unwrap());
//! ```

pub mod checker;
pub mod cli;
pub mod closure;
pub mod error;
pub mod events;
pub mod files;
pub mod formula;
pub mod gen;
pub mod kripke;
pub mod semipublic;
pub mod syntax;
pub mod term;

pub use checker::{check, check_with, eval, eval_with, semantic_term_leq, valid_on_model, Evaluator};
pub use closure::{fl_closure, neg_fl_closure, pseudo_atoms, single_negation, FormulaSet};
pub use error::{Error, Result};
pub use events::{expand_event_box, gamma, product_update, reduce_event, EventModel};
pub use formula::Formula;
pub use kripke::{relation_of, validate_model, Mode, Model, Relation, StateSet};
pub use semipublic::{reduce_bang, update_model, ReadingMap};
pub use syntax::{parse_formula, parse_term, Definitions};
pub use term::{term_equiv, term_leq, AtomicTerm, Signature, Term};
