pub mod catalog;
pub mod error;
pub mod identities;
pub mod lattice;
pub mod numtheory;
pub mod oracles;
pub mod rat;
pub mod representations;
pub mod selftest;
pub mod series;

pub use error::{Error, Result};
pub use rat::Rat;
