pub mod charparam;
pub mod chartab;
pub mod corpus;
pub mod error;
pub mod expr;
pub mod frobstats;
pub mod linalg;
pub mod permcore;
pub mod polyarith;
pub mod primes;

pub use error::{Error, Result};
