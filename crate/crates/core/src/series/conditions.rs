//! Coefficient identities characterizing functional equivariance.

use num_traits::Zero;

use super::SeriesMap;
use crate::error::{Error, Result};
use crate::rational::Q;
use crate::trees::Tree;

/// A failing unordered pair: `residual = b(left∘right) + b(right∘left)` for
/// pair conditions, `b(left) − b(right)` for the root-color condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub left: Tree,
    pub right: Tree,
    pub residual: Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub holds: bool,
    pub violations: Vec<Violation>,
}

impl ConditionReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        ConditionReport { holds: violations.is_empty(), violations }
    }
}

/// Checks `b(u∘v) + b(v∘u) = 0` over unordered pairs with
/// `|u| + |v| ≤ order`, keeping only pairs accepted by `keep`.
fn pair_condition(phi: &SeriesMap, keep: impl Fn(&Tree, &Tree) -> bool) -> ConditionReport {
    let trees: Vec<&Tree> = phi.trees().filter(|t| t.order() < phi.order()).collect();
    let mut violations = Vec::new();
    for (i, u) in trees.iter().enumerate() {
        for v in &trees[i..] {
            if u.order() + v.order() > phi.order() || !keep(u, v) {
                continue;
            }
            let residual = phi.get(&u.butcher_product(v)) + phi.get(&v.butcher_product(u));
            if !residual.is_zero() {
                violations.push(Violation { left: (*u).clone(), right: (*v).clone(), residual });
            }
        }
    }
    ConditionReport::from_violations(violations)
}

/// Quadratic functional equivariance of a 1-color series.
pub fn check_quadratic_fe(phi: &SeriesMap) -> Result<ConditionReport> {
    if phi.colors() != 1 {
        return Err(Error::Precondition(format!(
            "the quadratic condition applies to 1-color series, got {} colors",
            phi.colors()
        )));
    }
    Ok(pair_condition(phi, |_, _| true))
}

/// Trees differing only in their root color must share a coefficient.
pub fn check_affine_root_condition(phi: &SeriesMap) -> ConditionReport {
    let mut violations = Vec::new();
    for (tau, b) in phi.iter() {
        for nu in tau.color() + 1..=phi.colors() {
            let other = tau.recolor_root(nu, phi.colors()).expect("color in range");
            let residual = b - phi.get(&other);
            if !residual.is_zero() {
                violations.push(Violation { left: tau.clone(), right: other, residual });
            }
        }
    }
    ConditionReport::from_violations(violations)
}

/// Pair condition for colored series. With `bilinear_only` the pairs are
/// restricted to trees whose roots have different colors.
pub fn check_partitioned_qfe(phi: &SeriesMap, bilinear_only: bool) -> ConditionReport {
    pair_condition(phi, |u, v| !bilinear_only || u.color() != v.color())
}
