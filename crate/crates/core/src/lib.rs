//! The category of factorizations of a commutative cancellative pre-ordered
//! monoid: objects are finite tuples of monoid elements, morphisms are
//! order-constrained index functions.

pub mod arith;
pub mod category;
pub mod divisibility;
pub mod error;
pub mod monoid;
pub mod monoidal;
pub mod oracle;
pub mod weq;
pub mod wire;

pub use category::{compose, hom_set, ComposeFn, FactorTuple, IndexFunction, Morphism};
pub use error::{Error, Result};
pub use monoid::{Element, Monoid};
