//! Exact computations for quantum loop algebras and their asymptotic
//! algebras: q-characters, explicit modules, relation checking and the
//! limit character formula.

pub mod arith;
pub mod cartan;
pub mod error;
pub mod formula;
pub mod lweight;
pub mod modules;
pub mod qchar;
pub mod relations;

pub use arith::{LPoly, QRat, ZSeries};
pub use error::Error;
pub use cartan::{CartanData, CartanType, Weight};
pub use lweight::{LFactor, LWeight, Monomial};
pub use qchar::{char_inverse, limit_stabilize, Char, QChar};
pub use formula::{char_formula, compare_formula_vs_module, ExponentReading, FormulaParams};
pub use relations::{verify_asymptotic_relations, verify_borel_relations, CheckWindow, RelationReport};
pub use modules::{AlgebraKind, Gen, Param, RepModule, Window};
