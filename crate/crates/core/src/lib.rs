//! Exact computation of the Poisson cohomology of plane Poisson germs
//! `f(1+h) dx^dy` with quasihomogeneous `f`, together with the simple-germ
//! catalog and a degree-by-degree normalizer.

pub mod cohomology;
pub mod error;
pub mod linalg;
pub mod milnor;
pub mod normal_forms;
pub mod oracle;
pub mod poisson;
pub mod qpoly;

pub use error::{Error, Result};
