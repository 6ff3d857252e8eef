//! Exact incidence algebras of finite posets and the classification of
//! their Poisson structures by chain-constant maps on strict pairs.

pub mod algebra;
pub mod bracket;
pub mod coeff;
pub mod error;
pub mod io;
pub mod linalg;
pub mod poset;
pub mod report;
pub mod solver;

pub use algebra::IncidenceElement;
pub use bracket::{Bracket, LambdaMap, PiecewiseWitness, SigmaMap};
pub use coeff::{RingSpec, Scalar};
pub use error::{Error, Result};
pub use poset::{Interval, PairPartition, Poset, StrictPair};
pub use report::{CheckRecord, Report, Status};
pub use solver::{build_system, classify, nullspace, Classification, LinearSystem, SolutionBasis};
