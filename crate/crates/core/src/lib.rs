//! Fixed-length cross-bifix-free (non-overlapping) codes over `Z_q`.
//!
//! The crate is `no_std` and only needs `alloc`. It provides
//!
//! * word-level predicates (prefixes, suffixes, bifix-freeness, window checks),
//! * the `S`, `V` and `U` code families and the combined non-expandable code,
//! * exhaustive verification engines (cross-bifix-freeness, expandability,
//!   greedy saturation),
//! * exact cardinality formulas paired with enumeration oracles, and the
//!   reference tables for the binary case.
//!
//! IO, file formats and the command line live in the `cbf` crate.

#![no_std]

extern crate alloc;

pub mod codes;
pub mod constructions;
pub mod enumeration;
mod error;
pub mod golden;
pub mod words;

pub use codes::{
    cross_bifix_witness, expansion_candidates, greedy_saturate, is_cross_bifix_free,
    is_non_expandable, overlap_witness, p_class, q_class, qp_union_equality, Code, Direction,
    ExpandabilityVerdict, OverlapIndex, OverlapWitness, QpUnion, ScanLimit, DEFAULT_GUARD,
};
pub use constructions::{
    build_expanded, build_s, build_s_classic, build_u, build_u_via_v_rule, build_v,
    expansion_witness, ConstructionKind, ExpansionParams, UCache,
};
pub use enumeration::{
    count_expanded, count_u_both, count_u_closed, count_u_enumerate, count_u_fresh,
    count_v_enumerate, reproduce_tables, size_s_closed, size_v_closed, Branch, CountReport,
    TableCell, Tables,
};
pub use error::{Error, Result};
pub use words::{
    is_bifix_free, is_block_free, is_code_free, prefixes, suffixes, Bipartition, Word,
};
