//! Bounded exact completion of skeletal finite sets relative to a class of
//! maps, with the quasi-pullback characterization of small maps in the
//! completion.

mod excat;
mod ops;

pub use excat::{ExCat, ExObj, ExArr, Rel};
pub use ops::{
    collapse_iso, completed_class, ex_complete, quotient_in_completion, verify_embedding,
    y_arr, y_obj, y_preimage, EmbeddingReport, QuotientReport,
};
