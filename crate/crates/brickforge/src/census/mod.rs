//! Enumeration of bricks by complexity.

mod generate;
mod table;

pub use generate::{closures, is_skeleton, kind_multisets, ClosureOptions, BOUNDARY_KINDS};
pub use table::{
    brick_check, build_level, build_table, diff_tables, generate_candidates, skeleton_signature, verify_table,
    BrickStatus, CensusError, CensusRecord, CensusTable, TableCheck, VerifyReport,
};
