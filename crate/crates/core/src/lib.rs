//! Exact computations for type B Weyl groups, the extended Weyl group with
//! torus torsion, cyclotomic arithmetic and d-split Levi data.

pub mod atlas;
pub mod charext;
pub mod chevsign;
pub mod cyclo;
pub mod error;
pub mod roots;
pub mod sperm;
pub mod report;
pub mod suites;
pub mod tits;

pub use error::{Error, Result};
