pub mod finfun;
pub mod idempotent;
pub mod linalg;
pub mod matrix;
pub mod pointed;
pub mod unitary;
