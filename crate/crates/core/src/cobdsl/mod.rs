//! A small language of labeled open-closed cobordism words: parsing,
//! printing, normalization, boundary signatures and evaluation of the dual
//! operations as graded tables.
//!
//! Grammar: `expr := union (";" union)*`, `union := atom ("|" atom)*`,
//! `atom := IDENT "(" [IDENT ("," IDENT)*] ")" | IDENT | "(" expr ")"`.

mod ast;
mod eval;
mod signature;

pub use ast::{normalize, parse, parse_program, Expr, Generator, GeneratorKind, Program, Statement};
pub use eval::{evaluate, ClosedPlugin, Evaluator, OperationValue, PluginRegistry, PANTS_UNSUPPORTED};
pub use signature::{check_signature, generator_signature, Boundary, BoundarySignature};
