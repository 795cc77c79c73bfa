//! Combinatorial optimization on graphs whose vertices have uncertain
//! locations in a metric space: min over feasible edge sets F of the
//! worst-case total length max_u Σ_{ij∈F} d(u_i, u_j).

pub mod adr;
pub mod approx;
pub mod caps;
pub mod error;
pub mod evalc;
pub mod experiment;
pub mod families;
pub mod generators;
pub mod instance;
pub mod io;
pub mod metric;
pub mod reductions;
pub mod registry;
pub mod robust_cut;
pub mod solvers;
pub mod sp_robust;

pub use caps::Caps;
pub use error::{Error, Result};
pub use instance::{EdgeSubset, FamilyDescriptor, Graph, LocUncInstance, Scenario};
pub use metric::{MetricSpace, PointId, TOL};
