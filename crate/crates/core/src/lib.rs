//! Exact symbolic computation with Bethe subalgebras of Yangians and twisted
//! Yangians, and rank certificates for their Poisson degenerations.

pub mod algebra;
pub mod checks;
pub mod cli;
pub mod error;
pub mod evalmap;
pub mod index;
pub mod linalg;
pub mod poisson;
pub mod poly;
pub mod rational;
pub mod report;
pub mod ring;
pub mod series;
pub mod tensor;
pub mod twisted;
pub mod yangian;

pub use error::{Error, Result};
pub use index::{FormType, IndexSet};
pub use rational::Rat;
pub use ring::{Rationals, Ring};
