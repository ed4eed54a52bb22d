//! One-step integrators in exact formal mode (truncated series in `h`) and
//! floating-point mode, with diagram residuals and modified-field checks.

mod catalog;
mod checks;
mod diagram;
mod formal;
mod hseries;
mod method;
mod numeric;

pub use catalog::{Catalog, CatalogEntry};
pub use checks::{
    check_closure_under_differentiation, check_exact_flow_rigidity, check_symplectic_modified, ClosureReport,
    OrderDefect, RigidityReport, SymplecticReport,
};
pub use diagram::{fe_diagram_residual, fe_diagram_residual_additive, DiagramResidual, ResidualMode};
pub use formal::{flow_formal, modified_field_from_expansion, ModifiedField, StepExpansion};
pub use hseries::HSeries;
pub use method::{modified_field_polynomials, splitting_modified_field, Method, PartitionedMethod, SplittingScheme};
pub use numeric::{step_numeric, FnField, NumericField, DEFAULT_TOL};
