//! Vertex sets, special fibers and their dual graphs, specialization, local parameters at
//! closed fiber points and the vertex-set constructions.

pub mod build;
pub mod fiber;
pub mod params;
pub mod reduce;
pub mod region;

pub use build::{build_model, regularize, uncovered_point, Neighborhood, Variant};
pub use fiber::{
    complement_component, direction_at, dual_graph, specialize, ComplementComponent, Direction,
    Edge, FiberPoint, Junction, SpecialFiber, VertexSet,
};
pub use params::{factor_at, local_params, LocalParams, UnitMonomial};
pub use reduce::{reduce_ratfunc, Reduction};
pub use region::{ComponentShape, Region};
