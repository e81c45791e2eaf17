//! Exact z-measures and Plancherel measures on partitions with Jack parameter
//! θ ∈ {1/2, 2}, realized as Pfaffian L-ensembles on the half-integer lattice.

pub mod arith;
pub mod ensemble;
pub mod kernel;
pub mod lattice;
pub mod linalg;
pub mod measures;
pub mod partition;
pub mod sampler;
pub mod verify;
