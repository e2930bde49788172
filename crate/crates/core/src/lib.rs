//! Stringy zeta functions, log discrepancies and relative minimal models of
//! surface singularity germs, with exact arithmetic throughout.

pub mod symbolic;
pub mod linalg;
pub mod surface;
pub mod mmp;
pub mod stringy;
pub mod stratified;
pub mod sample;
