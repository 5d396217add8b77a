pub mod abcount;
pub mod arith;
pub mod cli;
pub mod error;
pub mod extremal;
pub mod fingrp;
pub mod invariants;
pub mod oracle;
pub mod parab;
pub mod poly;
pub mod real;
pub mod rootsys;

pub use error::{Error, Result};
pub use real::Real;
pub use rootsys::{Family, LieType};
