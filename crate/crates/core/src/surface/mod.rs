//! Resolution dual graphs of surface germs: intersection theory, log
//! discrepancies, classification, blow-ups and the core/chain structure.

pub mod blowup;
pub mod graph;
pub mod json;
pub mod structure;

pub use blowup::BlowUpSite;
pub use graph::{Branch, Classification, DiscrepancyVector, IntersectionMatrix, ResolutionGraph, Vertex};
pub use json::GermJson;
pub use structure::{StructureDecomposition, ZeroVertex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurfaceError {
    #[error("NotAGerm: intersection matrix is not negative definite")]
    NotAGerm,
    #[error("SiteNotFound")]
    SiteNotFound,
    #[error("StructureViolation: {0}")]
    StructureViolation(String),
    #[error("NotApplicable: {0}")]
    NotApplicable(String),
    #[error("InvalidGraph: {0}")]
    InvalidGraph(String),
    #[error("ParseError: {0}")]
    Parse(String),
}
