//! Exact computations with the queer Lie superalgebra q(n), its current
//! algebras q(n)⊗A, and their highest weight and local Weyl modules.

pub mod clifford;
pub mod coeff;
pub mod liesuper;
pub mod linalg;
pub mod scalars;
pub mod superspace;
pub mod tensor;
pub mod weylmod;

pub use clifford::{CliffordAlgebra, CliffordError, HighestWeightSpace, QuadraticPair};
pub use coeff::{CoeffError, CommAlgebra, IdealSubspace};
pub use liesuper::{CurrentAlgebra, LieError, LieSuperAlgebra, RootDatum, WeightVector};
pub use linalg::{LinalgError, Matrix, Subspace, Vector};
pub use scalars::{FieldSpec, Gaussian, Scalar, ScalarError};
pub use superspace::{GradedMap, Parity, SuperDim, SuperSpace};
pub use weylmod::{Character, MapWeight, WeightModule, WeylError};
