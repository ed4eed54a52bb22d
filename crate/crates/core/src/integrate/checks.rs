use super::formal::is_zero_field;
use super::method::{modified_field_polynomials, splitting_modified_field, Method, SplittingScheme};
use crate::error::{Error, Result};
use crate::fields::{
    bilinear_observable_augment, canonical_symplectic_form, hamiltonian_field, series_as_field, tangent_lift, PolyMap,
    PolyVectorField,
};
use crate::poly::Poly;
use crate::series::SeriesMap;
use crate::Limits;

#[derive(Clone, Debug, PartialEq)]
pub struct ClosureReport {
    pub holds: bool,
    /// `φ(δf) − δφ(f)`.
    pub defect: PolyVectorField,
}

/// Compares `φ(δf)` with `δ(φ(f))` as exact polynomial fields.
pub fn check_closure_under_differentiation(phi: &SeriesMap, f: &PolyVectorField, limits: &Limits) -> Result<ClosureReport> {
    if phi.colors() != 1 {
        return Err(Error::Precondition("closure is checked for 1-color series".into()));
    }
    let lifted_first = series_as_field(phi, &tangent_lift(f), limits)?;
    let lifted_after = tangent_lift(&series_as_field(phi, f, limits)?);
    let defect = lifted_first.sub(&lifted_after)?;
    Ok(ClosureReport { holds: is_zero_field(&defect), defect })
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrderDefect {
    pub order: usize,
    /// `ω(f_j′ξ, η) + ω(ξ, f_j′η)` as a polynomial in `(y, ξ, η)`.
    pub defect: Poly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticReport {
    pub holds: bool,
    /// One entry per order `1..=N`.
    pub orders: Vec<OrderDefect>,
}

impl SymplecticReport {
    pub fn first_failure(&self) -> Option<usize> {
        self.orders.iter().find(|o| !o.defect.is_zero()).map(|o| o.order)
    }
}

/// Checks that each modified-field term of the Hamiltonian field of `H`
/// preserves the canonical symplectic form, as a polynomial identity.
pub fn check_symplectic_modified(
    method: &Method,
    hamiltonian: &Poly,
    dim: usize,
    order: usize,
    limits: &Limits,
) -> Result<SymplecticReport> {
    let f = hamiltonian_field(hamiltonian, dim)?;
    let omega = canonical_symplectic_form(dim / 2);
    let modified = modified_field_polynomials(method, &f, order, limits)?;
    let mut orders = Vec::with_capacity(order);
    for (j, fj) in modified.terms().iter().enumerate() {
        let g = bilinear_observable_augment(fj, &omega)?;
        orders.push(OrderDefect { order: j + 1, defect: g.components()[3 * dim].clone() });
    }
    Ok(SymplecticReport { holds: orders.iter().all(|o| o.defect.is_zero()), orders })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RigidityReport {
    /// First order `j ≥ 2` with `A′f_j ≠ 0`, and that derivative.
    pub witness: Option<(usize, Vec<Poly>)>,
    pub order: usize,
}

impl RigidityReport {
    pub fn exact_through_order(&self) -> bool {
        self.witness.is_none()
    }
}

/// For an affine invariant `A` of `f = Σ f^{[ν]}`, finds the first modified
/// field term that does not preserve it.
pub fn check_exact_flow_rigidity(
    scheme: &SplittingScheme,
    parts: &[PolyVectorField],
    invariant: &PolyMap,
    order: usize,
    limits: &Limits,
) -> Result<RigidityReport> {
    if !invariant.is_affine() {
        return Err(Error::Precondition("the invariant must be affine".into()));
    }
    let modified = splitting_modified_field(scheme, parts, order, limits)?;
    if invariant.derivative_along(modified.term(1).components()).iter().any(|p| !p.is_zero()) {
        return Err(Error::Precondition("A′f ≠ 0: not an invariant of the total field".into()));
    }
    let witness = modified.terms().iter().enumerate().skip(1).find_map(|(j, fj)| {
        let d = invariant.derivative_along(fj.components());
        d.iter().any(|p| !p.is_zero()).then_some((j + 1, d))
    });
    Ok(RigidityReport { witness, order })
}
