//! Combs and optics over strict symmetric monoidal categories, with decision
//! procedures for their equivalence relations.

pub mod backend;
pub mod comb;
pub mod cpm;
pub mod decision;
pub mod error;
pub mod instances;
pub mod object;
pub mod optic;
pub mod polycomb;
pub mod sample;
pub mod term;

pub use backend::{Backend, Budget, Capabilities, Enumeration};
pub use decision::{Decision, Verdict, Witness};
pub use error::{Error, Result};
pub use object::ObjectWord;
