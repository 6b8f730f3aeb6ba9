//! Exact verification kernel for parahoric intertwining operators, Shalika
//! functionals and zeta-integral closed forms on GL(2n).

pub mod error;
pub mod charspace;
pub mod exactalg;
pub mod fjzeta;
pub mod intertwine;
pub mod shalikaeval;
pub mod suite;
pub mod weylcomb;

pub use error::{Error, Result};
