//! Busemann-subgradient methods on Hadamard spaces.

pub mod error;
pub mod experiments;
pub mod oracles;
pub mod reference;
pub mod solvers;
pub mod spaces;
pub mod treespace;

#[cfg(feature = "test-oracles")]
pub mod testing;

pub use error::{Error, Result};
pub use spaces::{Direction, ExtensionPolicy, Point, RayDescriptor, Space};
pub use treespace::{PhyloTree, TreeSpace};
