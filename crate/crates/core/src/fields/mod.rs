//! Exact polynomial vector fields and observables, with the constructions
//! built on them: derivatives, augmentation by an observable, tangent and
//! multi-variation lifts, Lie brackets.

mod elementary;
mod witness;

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Q;
use crate::Limits;

pub use elementary::{
    apply_series, apply_series_colored, colored_elementary_differential, elementary_differential, series_as_field,
    series_as_field_colored, ElementaryDifferentials,
};
pub use witness::{witness_field, witness_pair, WitnessPair};

/// Polynomial map `ℝ^{d_in} → ℝ^{d_out}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMap {
    input_dim: usize,
    components: Vec<Poly>,
}

/// Polynomial vector field on `ℝ^d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyVectorField {
    components: Vec<Poly>,
}

/// A point of `ℚ^d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalPoint(pub Vec<Q>);

impl RationalPoint {
    pub fn origin(dim: usize) -> Self {
        RationalPoint(vec![Q::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(crate::rational::to_f64).collect()
    }
}

fn check_span(components: &[Poly], dim: usize) -> Result<()> {
    for p in components {
        if p.span() > dim {
            return Err(Error::DimensionMismatch { expected: dim, actual: p.span() });
        }
    }
    Ok(())
}

fn expect_dim(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::DimensionMismatch { expected, actual });
    }
    Ok(())
}

impl PolyMap {
    pub fn new(input_dim: usize, components: Vec<Poly>) -> Result<Self> {
        check_span(&components, input_dim)?;
        Ok(PolyMap { input_dim, components })
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn output_dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn degree(&self) -> u32 {
        self.components.iter().filter_map(Poly::degree).max().unwrap_or(0)
    }

    pub fn is_affine(&self) -> bool {
        self.degree() <= 1
    }

    pub fn is_quadratic(&self) -> bool {
        self.degree() <= 2
    }

    pub fn eval(&self, y: &RationalPoint) -> Result<Vec<Q>> {
        expect_dim(self.input_dim, y.dim())?;
        Ok(self.components.iter().map(|p| p.eval(y.coords())).collect())
    }

    /// `F′(y)v` for a polynomial direction `v`.
    pub fn derivative_along(&self, v: &[Poly]) -> Vec<Poly> {
        self.components.iter().map(|p| p.directional(v)).collect()
    }

    pub fn differentiate(&self, k: usize) -> MultilinearForm<'_> {
        MultilinearForm { map: self, k }
    }
}

/// The `k`-th derivative of a [`PolyMap`], evaluated at a point on `k`
/// direction vectors.
pub struct MultilinearForm<'a> {
    map: &'a PolyMap,
    k: usize,
}

impl MultilinearForm<'_> {
    pub fn arity(&self) -> usize {
        self.k
    }

    pub fn eval(&self, y: &RationalPoint, dirs: &[Vec<Q>]) -> Result<Vec<Q>> {
        expect_dim(self.map.input_dim, y.dim())?;
        expect_dim(self.k, dirs.len())?;
        let dirs: Vec<Vec<Poly>> = dirs
            .iter()
            .map(|d| {
                expect_dim(self.map.input_dim, d.len())?;
                Ok(d.iter().cloned().map(Poly::constant).collect())
            })
            .collect::<Result<_>>()?;
        let refs: Vec<&[Poly]> = dirs.iter().map(Vec::as_slice).collect();
        Ok(self.map.components.iter().map(|p| p.multi_derivative(&refs).eval(y.coords())).collect())
    }
}

impl PolyVectorField {
    pub fn new(dim: usize, components: Vec<Poly>) -> Result<Self> {
        expect_dim(dim, components.len())?;
        check_span(&components, dim)?;
        Ok(PolyVectorField { components })
    }

    pub(crate) fn from_components_unchecked(components: Vec<Poly>) -> Self {
        PolyVectorField { components }
    }

    pub fn zero(dim: usize) -> Self {
        PolyVectorField { components: vec![Poly::zero(); dim] }
    }

    /// `f(y) = M y` for a rational matrix `M`.
    pub fn linear(matrix: &[Vec<Q>]) -> Result<Self> {
        let dim = matrix.len();
        let components = matrix
            .iter()
            .map(|row| {
                expect_dim(dim, row.len())?;
                Ok(Poly::from_terms(
                    row.iter().enumerate().map(|(j, c)| (crate::poly::Monomial::var(j), c.clone())),
                ))
            })
            .collect::<Result<_>>()?;
        Ok(PolyVectorField { components })
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Poly> {
        self.components
    }

    pub fn as_map(&self) -> PolyMap {
        PolyMap { input_dim: self.dim(), components: self.components.clone() }
    }

    pub fn degree(&self) -> u32 {
        self.components.iter().filter_map(Poly::degree).max().unwrap_or(0)
    }

    pub fn monomial_count(&self) -> usize {
        self.components.iter().map(Poly::len).sum()
    }

    pub fn check_budget(&self, limits: &Limits) -> Result<()> {
        let needed = self.monomial_count();
        if needed > limits.monomial_budget {
            return Err(Error::BudgetExceeded { needed, budget: limits.monomial_budget });
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    pub fn eval(&self, y: &RationalPoint) -> Result<Vec<Q>> {
        expect_dim(self.dim(), y.dim())?;
        Ok(self.components.iter().map(|p| p.eval(y.coords())).collect())
    }

    pub fn eval_f64(&self, y: &[f64]) -> Vec<f64> {
        self.components.iter().map(|p| p.eval_f64(y)).collect()
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        expect_dim(self.dim(), o.dim())?;
        Ok(PolyVectorField { components: self.components.iter().zip(&o.components).map(|(a, b)| a.add(b)).collect() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        expect_dim(self.dim(), o.dim())?;
        Ok(PolyVectorField { components: self.components.iter().zip(&o.components).map(|(a, b)| a.sub(b)).collect() })
    }

    pub fn scale(&self, s: &Q) -> Self {
        PolyVectorField { components: self.components.iter().map(|p| p.scale(s)).collect() }
    }

    /// `f′(y)v` for a polynomial direction `v`.
    pub fn jacobian_apply(&self, v: &[Poly]) -> Vec<Poly> {
        self.components.iter().map(|p| p.directional(v)).collect()
    }

    /// `G′(y) f(y)` for a polynomial map `G` given by its components.
    pub fn lie_derivative_of(&self, g: &[Poly]) -> Vec<Poly> {
        g.iter().map(|p| p.directional(&self.components)).collect()
    }

    /// Substitutes polynomial expressions for the coordinates.
    pub fn compose(&self, args: &[Poly]) -> Vec<Poly> {
        self.components.iter().map(|p| p.compose(args)).collect()
    }
}

impl fmt::Display for PolyVectorField {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

fn identity_components(dim: usize) -> Vec<Poly> {
    (0..dim).map(Poly::var).collect()
}

/// `g(y, z) = (f(y), F′(y) f(y))` on `ℝ^{d} × ℝ^{d_out}`.
pub fn augment(f: &PolyVectorField, observable: &PolyMap) -> Result<PolyVectorField> {
    expect_dim(f.dim(), observable.input_dim())?;
    let mut components = f.components.clone();
    components.extend(observable.derivative_along(&f.components));
    Ok(PolyVectorField { components })
}

/// `δf(y, η) = (f(y), f′(y)η)`.
pub fn tangent_lift(f: &PolyVectorField) -> PolyVectorField {
    multi_variation_lift(f, 1)
}

/// `(f(y), f′(y)ξ₁, …, f′(y)ξ_k)` on `Y^{k+1}`; `k = 0` returns `f`.
pub fn multi_variation_lift(f: &PolyVectorField, k: usize) -> PolyVectorField {
    let d = f.dim();
    let mut components = f.components.clone();
    for block in 1..=k {
        let dir: Vec<Poly> = (0..d).map(|i| Poly::var(block * d + i)).collect();
        components.extend(f.jacobian_apply(&dir));
    }
    PolyVectorField { components }
}

/// Checks that every term of `omega` (on `ℝ^d × ℝ^d`) has degree exactly one
/// in each block.
pub fn is_bilinear(omega: &PolyMap) -> bool {
    if !omega.input_dim().is_multiple_of(2) {
        return false;
    }
    let d = omega.input_dim() / 2;
    omega.components().iter().all(|p| {
        p.terms().all(|(m, _)| {
            let e = m.padded(2 * d);
            e[..d].iter().sum::<u32>() == 1 && e[d..].iter().sum::<u32>() == 1
        })
    })
}

/// Augments the two-variation system of `f` by `ż = (L_f ω)_y(ξ, η)` for a
/// constant bilinear `ω`. State layout: `(y, ξ, η, z)`.
pub fn bilinear_observable_augment(f: &PolyVectorField, omega: &PolyMap) -> Result<PolyVectorField> {
    let d = f.dim();
    expect_dim(2 * d, omega.input_dim())?;
    if !is_bilinear(omega) {
        return Err(Error::Precondition("observable is not bilinear in (ξ, η)".into()));
    }
    let lifted = multi_variation_lift(f, 2);
    let on_state =
        PolyMap::new(3 * d, omega.components().iter().map(|p| p.shift_vars(d)).collect())?;
    augment(&lifted, &on_state)
}

/// Canonical symplectic form `ω(ξ, η) = ξ_qᵀη_p − ξ_pᵀη_q` on `ℝ^{2m}` with
/// coordinates ordered `(q, p)`.
pub fn canonical_symplectic_form(m: usize) -> PolyMap {
    let d = 2 * m;
    let mut p = Poly::zero();
    for i in 0..m {
        p = p.add(&Poly::var(i).mul(&Poly::var(d + m + i)));
        p = p.sub(&Poly::var(m + i).mul(&Poly::var(d + i)));
    }
    PolyMap { input_dim: 2 * d, components: vec![p] }
}

/// Jacobi–Lie bracket `[f, g] = g′f − f′g`.
pub fn lie_bracket(f: &PolyVectorField, g: &PolyVectorField) -> Result<PolyVectorField> {
    expect_dim(f.dim(), g.dim())?;
    let a = g.jacobian_apply(&f.components);
    let b = f.jacobian_apply(&g.components);
    Ok(PolyVectorField { components: a.iter().zip(&b).map(|(x, y)| x.sub(y)).collect() })
}

/// `f = J∇H` for `H` on `ℝ^{2m}` with coordinates `(q, p)`:
/// `q̇ = ∂H/∂p`, `ṗ = −∂H/∂q`.
pub fn hamiltonian_field(hamiltonian: &Poly, dim: usize) -> Result<PolyVectorField> {
    if !dim.is_multiple_of(2) {
        return Err(Error::Precondition(format!("Hamiltonian systems need even dimension, got {dim}")));
    }
    if hamiltonian.span() > dim {
        return Err(Error::DimensionMismatch { expected: dim, actual: hamiltonian.span() });
    }
    let m = dim / 2;
    let mut components = Vec::with_capacity(dim);
    for i in 0..m {
        components.push(hamiltonian.derivative(m + i));
    }
    for i in 0..m {
        components.push(hamiltonian.derivative(i).neg());
    }
    Ok(PolyVectorField { components })
}

/// The coordinate functions `y ↦ y` on `ℝ^d`, as a map.
pub fn identity_map(dim: usize) -> PolyMap {
    PolyMap { input_dim: dim, components: identity_components(dim) }
}
