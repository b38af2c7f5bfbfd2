//! Inertia sets of simple graphs.
//!
//! * [`algebra`]: trapezoids, inertia sets and T-notation.
//! * [`graphs`]: the graph model, named families and block decomposition.
//! * [`formulas`]: closed-form inertia sets for the named families.
//! * [`engine`]: recursive computation through vertex joins.
//! * [`oracle`]: brute-force realizations that certify attained points.

pub mod algebra;
pub mod engine;
pub mod formulas;
pub mod graphs;
pub mod linalg;
pub mod oracle;

pub use algebra::{InertiaPoint, InertiaSet, Trapezoid};
pub use engine::{recursive_inertia, Engine};
pub use formulas::{inertia_formula, FormulaResult};
pub use graphs::{FamilySpec, Graph};
pub use oracle::{enumerate_realizations, matrix_inertia, OracleConfig, Realization};
