//! A symbolic engine for interaction on designs.
//!
//! Designs are prefix-closed cliques of chronicles over a locative base;
//! equivalently, cliques of paths. The crate implements both presentations
//! and the bridges between them, closed interaction (normalization) with
//! orthogonality and dual traces, finitely generated behaviours with
//! visitable paths and incarnation, the regularity and finiteness checks,
//! and the decomposition of qualifying behaviours into trees of
//! multiplicative-additive connectives over the linear constants.

pub mod alphabet;
pub mod behaviour;
pub mod budget;
pub mod connectives;
pub mod corpus;
pub mod design;
pub mod error;
pub mod interaction;
pub mod sequence;
pub mod shuffle;

pub use alphabet::{Action, Address, Base, Polarity, Ramification, Sequent};
pub use behaviour::{
    Behaviour, BoundsReport, Mode, RegularityReport, RegularityWitness, VisitableSet,
};
pub use budget::{Budget, DEFAULT_BUDGET};
pub use connectives::{
    const_behaviour, decompose, eval_formula, extension, formula_equiv, oplus, shift_neg,
    shift_pos, tensor, tensor_designs, with_all, ConstantKind, DecompositionResult, Formula,
};
pub use design::{complete, coherent, design_from_paths, ramification_universe, Design, Net};
pub use error::{Error, Result};
pub use interaction::{
    interact, make_cut_net, normalize, ortho, trace, CutNet, NormalizationResult, Outcome,
};
pub use sequence::{
    dual, dual_path, is_reversible, validate_chronicle, validate_path, view, ActionSequence,
    Chronicle, Path, PathCondition, PathReport,
};
pub use shuffle::{shuffle_closure, shuffle_paths};
