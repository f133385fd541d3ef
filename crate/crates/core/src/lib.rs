//! Structure of the C*-algebras of finite discrete topological graphs.
//!
//! - [`graph`]: graphs, correspondences and vertex classes.
//! - [`paths`]: path spaces, loops without entrances, condition L.
//! - [`hilbert`]: the Hilbert modules `C_d(Eⁿ)` and their compacts.
//! - [`fock`]: the truncated Fock representation as dense matrices.
//! - [`verify`]: Toeplitz and Cuntz-Krieger checks for operator families.
//! - [`ktheory`]: `K₀ = coker Δ`, `K₁ = ker Δ` via Smith normal form.
//! - [`files`], [`report`]: file formats and command reports.

pub mod error;
pub mod files;
pub mod fock;
pub mod graph;
pub mod hilbert;
pub mod ktheory;
pub mod linalg;
pub mod paths;
pub mod random;
pub mod relations;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
pub use fock::{FockBasis, FockOperator};
pub use graph::{Correspondence, EdgeSpec, Graph, Multiplicity, VertexClassification};
pub use hilbert::{HilbertModule, ModuleElement, ModuleOperator, VertexFunction};
pub use ktheory::{k_groups, smith_normal_form, AbelianGroupPresentation, IntMatrix, KGroups, SnfResult};
pub use paths::{cycles_without_entrances, find_non_returning_path, is_topologically_free, path_space, Loop, Path};
pub use verify::{verify_ck_family, verify_toeplitz_family, CheckReport, OperatorFamily};
