//! Fields that isolate a single elementary differential at the origin.
//!
//! Vertices are labeled in depth-first postorder, so children come before
//! their parent and the root gets the last label. Vertex `i` with children
//! `j₁ … j_k` contributes the component `y_{j₁} ⋯ y_{j_k}` (1 for a leaf).
//! Then `θ(f)_{|τ|}(0) = σ(τ)` when `θ = τ` and `0` otherwise.

use super::{PolyMap, PolyVectorField};
use crate::poly::Poly;
use crate::trees::Tree;

pub fn witness_field(tau: &Tree) -> PolyVectorField {
    PolyVectorField::from_components_unchecked(witness_components(tau, 0))
}

fn witness_components(tau: &Tree, offset: usize) -> Vec<Poly> {
    tau.postorder()
        .into_iter()
        .map(|(_, kids)| Poly::product_of_vars(&kids.iter().map(|k| k + offset).collect::<Vec<_>>()))
        .collect()
}

/// Field and quadratic functional on `ℝ^{|u|+|v|}` whose Hessian, evaluated
/// on elementary differentials at the origin, is nonzero only on `{u, v}`.
#[derive(Clone, Debug)]
pub struct WitnessPair {
    pub field: PolyVectorField,
    pub observable: PolyMap,
    /// 0-based coordinates of the two roots.
    pub roots: (usize, usize),
}

pub fn witness_pair(u: &Tree, v: &Tree) -> WitnessPair {
    let nu = u.order();
    let nv = v.order();
    let mut components = witness_components(u, 0);
    components.extend(witness_components(v, nu));
    let roots = (nu - 1, nu + nv - 1);
    let observable = PolyMap::new(nu + nv, vec![Poly::var(roots.0).mul(&Poly::var(roots.1))])
        .expect("observable uses only the pair's coordinates");
    WitnessPair { field: PolyVectorField::from_components_unchecked(components), observable, roots }
}
