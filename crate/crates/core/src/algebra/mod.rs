//! Exact integer linear algebra: matrices, Smith normal form, finitely
//! generated abelian groups, finite quasi-orders and inverse limits.

pub mod group;
pub mod limit;
pub mod matrix;
pub mod poset;
pub mod rational;
pub mod snf;

pub use group::{invariant_factors, kernel, FgAbelianGroup, GroupMorphism, InvariantFactors};
pub use limit::{
    inverse_limit, restricted_limit_compare, InverseLimit, InverseSystem, LimitComparison,
    LimitElement,
};
pub use matrix::IntMatrix;
pub use poset::{cofinality_class, Cofinality, FinitePoset};
pub use snf::{smith_normal_form, smith_with, SmithForm, SnfFlags};
