//! Exhaustive classification of small symmetric tensors over prime fields.
//!
//! A symmetric tensor of format n×…×n (order k) over F_p is determined by
//! its entries at non-decreasing index tuples, so the whole space packs into
//! base-p integers ("codes") that compare the same way the flattened
//! tensors compare lexically. On that code space this crate computes, shape
//! by shape:
//!
//! * the symmetric rank of every tensor, by breadth-first closure over sums
//!   of simple tensors u⊗…⊗u ([`stratify`]);
//! * the orbits of each rank layer under the diagonal change-of-basis
//!   action of GL_n(F_p), with the lexically minimal member of each orbit
//!   as its canonical form ([`classify`]);
//! * cross-tabulations of symmetric rank against ordinary matrix rank for
//!   order 2 ([`rank_contrast_report`]).
//!
//! Everything is exact integer arithmetic; no randomness is involved, and
//! results are independent of thread count. Reference results for the six
//! fully tabulated shapes live in [`expected`] and are rechecked end to end
//! by [`verify_shape`].

pub mod classify;
pub mod error;
pub mod expected;
pub mod field;
pub mod group;
pub mod stratify;
pub mod table_io;
pub mod tensor;
pub mod text;
pub mod verify;

pub use classify::{
    canonical_form, classify, decompose_layer, matrix_rank, orbit_codes, orbit_scan_with_witness,
    rank_contrast_report, ClassificationReport, OrbitRecord, RankContrast,
};
pub use error::{Error, Result};
pub use field::FieldSpec;
pub use group::{
    act, compile_action, enumerate_group, group_order, mode_multiply, ActionTables,
    CompiledAction, GroupElement,
};
pub use stratify::{
    simple_codes, stratify, stratify_with_progress, RankTable, StratifyLimits, NO_DECOMPOSITION,
};
pub use table_io::{load_table, write_table};
pub use tensor::{
    lex_compare, tensor_add, tensor_sub, CodeAdder, FlatTensor, Layout, Shape, SymTensor,
};
pub use text::{parse_canonical, parse_literal, render_canonical};
pub use verify::verify_shape;
