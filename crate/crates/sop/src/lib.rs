//! Toolkit for monoid presentations satisfying small overlap conditions.
//!
//! A presentation is a finite alphabet of generators together with a list of
//! relations between words. When no relation word can be written as a product
//! of fewer than n of the presentation's pieces, the presentation is called
//! C(n), and strong enough overlap conditions make otherwise undecidable
//! questions tractable:
//!
//! * [`pieces`] computes the piece set, minimal piece decompositions, the
//!   C(n) and strong C(n) checks, and XYZ factorizations of relation words.
//! * [`wordproblem`] decides word equivalence for C(4) presentations by
//!   overlap prefix analysis, with a rewriting search as an oracle.
//! * [`canonical`] eliminates redundant generators and produces a canonical
//!   form that decides monoid isomorphism for C(2) presentations.
//! * [`cancel`] decides left and right cancellativity for C(4) presentations.
//! * [`generic`] samples and enumerates presentations, estimates how common
//!   properties are, and counts isomorphism types.

pub mod cancel;
pub mod canonical;
pub mod error;
pub mod generic;
pub mod pieces;
pub mod presentation;
pub mod wordproblem;

pub use error::{Error, Result};
pub use presentation::{Alphabet, Letter, Presentation, Relation, Word};
