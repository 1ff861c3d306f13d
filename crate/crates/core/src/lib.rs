//! Jordan block partitions of nilpotent and unipotent operators under
//! formal-group-law tensor products, over prime fields and the rationals.

pub mod automorphism;
pub mod char0;
pub mod classical;
pub mod error;
pub mod field;
pub mod g2;
pub mod intertwiner;
pub mod jordan;
pub mod law;
pub mod matrix;
pub mod multilinear;
pub mod partition;
pub mod registry;
pub mod ring;
pub mod series;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use law::{FormalGroupLaw, GeneralizedLaw};
pub use matrix::Matrix;
pub use partition::Partition;
pub use ring::RingElement;
pub use series::TruncatedPoly;
