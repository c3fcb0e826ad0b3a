//! The algebra of pairs: atoms, sums, assemblings and their bookkeeping.

mod atoms;
mod complexity;
mod pair;
mod parse;
mod reduce;

pub use atoms::{atom_skeleton, AtomLabel, UnknownAtom};
pub use complexity::{complexity_exact_within, is_sharp, Complexity};
pub use pair::{
    assemble, connected_sum, gluing_maps, invert, self_assemble, self_assemblings, CalcError, Expr, MarkedPair,
};
pub use parse::{evaluate, ExprError};
pub use reduce::{is_trivial_assembling, s3_gluings, strip_b2pp, strip_b2pp_poly, TrivialRule};
