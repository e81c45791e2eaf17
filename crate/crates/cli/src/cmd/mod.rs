pub mod convergence;
pub mod ensemble;
pub mod kernel;
pub mod measure;
pub mod sample;
pub mod verify;
