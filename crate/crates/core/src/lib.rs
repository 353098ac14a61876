//! Base sizes of finite permutation groups, computed three ways: exhaustive
//! search for a smallest base, the least power of the permutation character
//! that meets a base-controlling sign character, and distances in the
//! Kuelshammer graph of a point stabilizer.

pub mod basesize;
pub mod classfun;
pub mod error;
pub mod irreducibles;
pub mod kuelshammer;
pub mod par;
pub mod permcore;
pub mod verify;

pub use error::{Error, Result};
