//! Localizations and dilatations of finite categories.
//!
//! This crate works with fully enumerated finite categories given as
//! composition tables. On top of them it builds the calculus of zigzag
//! fractions: words over a directed graph with one forward line per
//! morphism and one backward line per morphism of a distinguished
//! subcategory, taken modulo the three elementary equivalence moves.
//! Quotients of these words produce the localization of the category and,
//! when each inverted morphism carries a sieve of admissible numerators,
//! the dilatation sitting inside it.
//!
//! The crate is organised following the data flow:
//!
//! - [`fincat`] — validated category tables, sieves, subcategories and
//!   centers (sieve assignments), plus the opposite-category reduction.
//! - [`zigzag`] — the localization graph, zigzag words, elementary moves,
//!   reduction, and a three-valued equality decision procedure with
//!   exact backends for preorders and commutative one-object categories
//!   and a budgeted bidirectional search for everything else.
//! - [`dilate`](mod@dilate) — enumeration of hom-sets of localizations and
//!   dilatations, canonical functors between them, and executable
//!   checkers for their structural properties (fraction existence and
//!   uniqueness, bimorphisms, sieve identities, universal property,
//!   iterated dilatations, representability).
//! - [`semiring`] — finite commutative semirings, their localizations
//!   and affine blowups, and the comparison of the algebraic blowup with
//!   the categorical dilatation of the multiplicative monoid.
//! - [`corpus`] — small named instances (posets, monoids, semirings)
//!   used by the test and acceptance suites.
//!
//! All types are immutable after validation and all operations are pure
//! functions, so values can be shared freely across threads.

pub mod corpus;
pub mod dilate;
pub mod fincat;
pub mod semiring;
pub mod verdict;
pub mod zigzag;

pub use dilate::{dilate, localize, DilatationResult, DilateError, DilateOptions, FinFunctor};
pub use fincat::{
    validate_category, FinCategory, FincatError, MorId, ObjId, RawCategory, Sieve, SigmaCenter,
    Subcategory,
};
pub use semiring::{
    blowup, localize_semiring, ma_compare, validate_semiring, FinSemiring, SemiringError,
};
pub use verdict::Verdict;
pub use zigzag::{
    build_graph, Budget, EqVerdict, EqualityBackend, Letter, LocGraph, Move, MovePath, ZigzagError,
    ZigzagWord,
};
