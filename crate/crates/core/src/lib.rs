//! Exact computations around rank-level duality of conformal blocks.
//!
//! The exact path works entirely in cyclotomic fields `Q(ζ_N)` with
//! arbitrary-precision rationals; [`numeric`] provides a floating oracle that
//! shares no arithmetic with it.

pub mod cyclo;
pub mod diagrams;
pub mod duality;
pub mod error;
pub mod numeric;
pub mod parlin;
pub mod quot;
pub mod schur;
pub mod subsets;
pub mod verlinde;

pub use cyclo::CycloNum;
pub use diagrams::{DiagramString, Symbol, WeightSystem, YoungDiagram};
pub use duality::{DualityInstance, NormalizationPlan};
pub use error::{Error, Result};
pub use parlin::ParabolicSpace;
pub use quot::IntersectionInstance;
pub use schur::EvalPoint;
pub use verlinde::{Variant, VerlindeInstance};
