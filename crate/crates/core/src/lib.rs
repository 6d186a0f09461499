pub mod debug;
pub mod error;
pub mod exactmat;
pub mod formats;
pub mod group;
pub mod ideals;
pub mod invariants;
pub mod numberfield;
pub mod orders;
pub mod polyring;

pub use error::{Error, Result};
pub use group::AbelianGroup;
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
