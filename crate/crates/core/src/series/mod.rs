//! Tree-indexed coefficient maps: B-series (one color) and NB-/P-series
//! (several colors).
//!
//! A map of flavor [`Flavor::IntegratorMap`] stands for
//! `φ = Σ_τ b(τ)/σ(τ) τ`. A map of flavor [`Flavor::Integrator`] stands for
//! the one-step map `id + Σ_τ h^{|τ|} a(τ)/σ(τ) τ(f)`; the identity term is
//! implicit.

mod conditions;
mod modified;
mod tableau;

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Q;
use crate::trees::{enumerate_trees_capped, Tree, DEFAULT_MAX_ORDER};

pub use conditions::{
    check_affine_root_condition, check_partitioned_qfe, check_quadratic_fe, ConditionReport, Violation,
};
pub use modified::{modified_field_series, modified_field_series_with};
pub use tableau::{standard, ButcherTableau, PartitionSpec};

/// Truncation order used for modified-field work unless overridden.
pub const DEFAULT_MODIFIED_ORDER: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    IntegratorMap,
    Integrator,
}

impl Flavor {
    pub fn as_str(self) -> &'static str {
        match self {
            Flavor::IntegratorMap => "integrator-map",
            Flavor::Integrator => "integrator",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "integrator-map" => Ok(Flavor::IntegratorMap),
            "integrator" => Ok(Flavor::Integrator),
            other => Err(Error::Format(format!("unknown series flavor {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesMap {
    colors: u32,
    order: usize,
    flavor: Flavor,
    coefficients: BTreeMap<Tree, Q>,
}

impl SeriesMap {
    /// Zero coefficient on every tree of order `≤ order` in `colors` colors.
    pub fn zero(colors: u32, order: usize, flavor: Flavor) -> Result<Self> {
        Self::zero_capped(colors, order, flavor, DEFAULT_MAX_ORDER)
    }

    pub fn zero_capped(colors: u32, order: usize, flavor: Flavor, cap: usize) -> Result<Self> {
        if colors == 0 || order == 0 {
            return Err(Error::Precondition("a series needs at least one color and order ≥ 1".into()));
        }
        let coefficients =
            enumerate_trees_capped(order, colors, cap)?.into_iter().flatten().map(|t| (t, Q::zero())).collect();
        Ok(SeriesMap { colors, order, flavor, coefficients })
    }

    /// Builds a series from `(tree, coefficient)` pairs; trees not mentioned
    /// get coefficient zero. Trees outside the index set are rejected.
    pub fn from_pairs(
        colors: u32,
        order: usize,
        flavor: Flavor,
        pairs: impl IntoIterator<Item = (Tree, Q)>,
    ) -> Result<Self> {
        let mut s = Self::zero(colors, order, flavor)?;
        for (t, c) in pairs {
            s.set(&t, c)?;
        }
        Ok(s)
    }

    /// Coefficients `a(τ) = 1/γ(τ)` of the exact flow.
    pub fn exact_flow(order: usize) -> Result<Self> {
        let mut s = Self::zero(1, order, Flavor::Integrator)?;
        for (t, c) in s.coefficients.iter_mut() {
            *c = Q::new(1.into(), t.gamma().into());
        }
        Ok(s)
    }

    /// The integrator series `a(τ)` of a Runge–Kutta method.
    pub fn from_tableau(tableau: &ButcherTableau, order: usize) -> Result<Self> {
        let mut s = Self::zero(1, order, Flavor::Integrator)?;
        for (t, c) in s.coefficients.iter_mut() {
            *c = tableau.elementary_weight(t)?;
        }
        Ok(s)
    }

    /// The integrator map `τ ↦ b(τ)` of a single tree: `b(tree) = σ(tree)`,
    /// so that the map sends `f` to exactly `tree(f)`.
    pub fn single_tree(tree: &Tree, order: usize) -> Result<Self> {
        let colors = tree.max_color();
        Self::from_pairs(colors, order, Flavor::IntegratorMap, [(tree.clone(), Q::from_integer(tree.symmetry().into()))])
    }

    pub fn colors(&self) -> u32 {
        self.colors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn with_flavor(mut self, flavor: Flavor) -> Self {
        self.flavor = flavor;
        self
    }

    /// Coefficient of `tree`; zero for trees beyond the truncation order.
    pub fn get(&self, tree: &Tree) -> Q {
        self.coefficients.get(tree).cloned().unwrap_or_else(Q::zero)
    }

    /// `b(τ)/σ(τ)`, the factor multiplying the elementary differential
    /// `τ(f)`.
    pub fn differential_coefficient(&self, tree: &Tree) -> Q {
        self.get(tree) / Q::from_integer(tree.symmetry().into())
    }

    pub fn set(&mut self, tree: &Tree, value: Q) -> Result<()> {
        match self.coefficients.get_mut(tree) {
            Some(slot) => {
                *slot = value;
                Ok(())
            }
            None => Err(Error::ShapeMismatch(format!(
                "tree {tree} is not indexed by a {}-color series of order {}",
                self.colors, self.order
            ))),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Tree, &Q)> {
        self.coefficients.iter()
    }

    pub fn trees(&self) -> impl Iterator<Item = &Tree> {
        self.coefficients.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.values().all(Q::is_zero)
    }

    fn check_shape(&self, other: &SeriesMap) -> Result<()> {
        if self.colors != other.colors || self.order != other.order {
            return Err(Error::ShapeMismatch(format!(
                "({} colors, order {}) vs ({} colors, order {})",
                self.colors, self.order, other.colors, other.order
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &SeriesMap) -> Result<SeriesMap> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (t, c) in out.coefficients.iter_mut() {
            *c += other.get(t);
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Q) -> SeriesMap {
        let mut out = self.clone();
        for c in out.coefficients.values_mut() {
            *c *= s;
        }
        out
    }

    /// The series restricted to trees of order exactly `j` (other
    /// coefficients zero), as an integrator map.
    pub fn homogeneous_term(&self, j: usize) -> SeriesMap {
        let mut out = self.clone().with_flavor(Flavor::IntegratorMap);
        for (t, c) in out.coefficients.iter_mut() {
            if t.order() != j {
                c.set_zero();
            }
        }
        out
    }

    /// One homogeneous term per order `1..=order`; they sum back to `self`.
    pub fn per_order_terms(&self) -> Vec<SeriesMap> {
        (1..=self.order).map(|j| self.homogeneous_term(j)).collect()
    }

    /// Copy truncated at a smaller order.
    pub fn truncated(&self, order: usize) -> Result<SeriesMap> {
        let order = order.min(self.order);
        let mut out = SeriesMap::zero(self.colors, order, self.flavor)?;
        for (t, c) in out.coefficients.iter_mut() {
            *c = self.get(t);
        }
        Ok(out)
    }

    /// Consistency of an integrator series: the order-one coefficients are 1.
    pub fn is_consistent(&self) -> bool {
        self.coefficients.iter().filter(|(t, _)| t.order() == 1).all(|(_, c)| c.is_one())
    }
}
