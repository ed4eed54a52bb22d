//! Residual of the functional-equivariance diagram:
//! `(id, F)∘Φ_{hf}(y₀) − Φ_{hg}∘(id, F)(y₀)` with `g = augment(f, F)`.
//! Only the `z` components are reported; the `y` components agree by
//! construction.

use super::method::{Method, PartitionedMethod, SplittingScheme};
use super::numeric::step_numeric;
use super::HSeries;
use crate::error::{Error, Result};
use crate::fields::{augment, PolyMap, PolyVectorField, RationalPoint};
use crate::rational::{to_f64, Q};
use crate::series::PartitionSpec;
use crate::Limits;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ResidualMode {
    Formal { order: usize },
    Numeric { h: f64, tol: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub enum DiagramResidual {
    Formal { order: usize, components: Vec<HSeries<Q>> },
    Numeric { h: f64, tol: f64, components: Vec<f64> },
}

impl DiagramResidual {
    /// Exactly zero (formal) or exactly `0.0` (numeric).
    pub fn is_zero(&self) -> bool {
        match self {
            DiagramResidual::Formal { components, .. } => components.iter().all(HSeries::is_zero),
            DiagramResidual::Numeric { components, .. } => components.iter().all(|x| *x == 0.0),
        }
    }

    /// Lowest power of `h` with a nonzero coefficient in any component.
    pub fn first_nonzero_order(&self) -> Option<usize> {
        match self {
            DiagramResidual::Formal { components, .. } => components.iter().filter_map(HSeries::first_nonzero).min(),
            DiagramResidual::Numeric { .. } => None,
        }
    }

    /// Largest magnitude over the components (numeric), or of the leading
    /// coefficients (formal).
    pub fn max_abs(&self) -> f64 {
        match self {
            DiagramResidual::Numeric { components, .. } => components.iter().fold(0.0, |m, x| m.max(x.abs())),
            DiagramResidual::Formal { components, .. } => match self.first_nonzero_order() {
                Some(k) => components.iter().map(|c| to_f64(c.coeff(k)).abs()).fold(0.0, f64::max),
                None => 0.0,
            },
        }
    }
}

fn check_observable(f_dim: usize, observable: &PolyMap, y0: &RationalPoint) -> Result<()> {
    if observable.input_dim() != f_dim {
        return Err(Error::DimensionMismatch { expected: f_dim, actual: observable.input_dim() });
    }
    if y0.dim() != f_dim {
        return Err(Error::DimensionMismatch { expected: f_dim, actual: y0.dim() });
    }
    Ok(())
}

fn augmented_start(y0: &RationalPoint, observable: &PolyMap) -> Result<Vec<Q>> {
    let mut start = y0.coords().to_vec();
    start.extend(observable.eval(y0)?);
    Ok(start)
}

fn formal_residual(left: &[HSeries<Q>], observable: &PolyMap, right: &[HSeries<Q>], order: usize) -> DiagramResidual {
    let d = left.len();
    let components = observable
        .components()
        .iter()
        .zip(&right[d..])
        .map(|(p, r)| p.eval_series(left, order).sub(r))
        .collect();
    DiagramResidual::Formal { order, components }
}

pub fn fe_diagram_residual(
    method: &Method,
    f: &PolyVectorField,
    observable: &PolyMap,
    y0: &RationalPoint,
    mode: ResidualMode,
    limits: &Limits,
) -> Result<DiagramResidual> {
    check_observable(f.dim(), observable, y0)?;
    let augmented_method = augmented_method(method, f.dim(), observable.output_dim())?;
    let method_g = augmented_method.as_ref().unwrap_or(method);
    let g = augment(f, observable)?;
    let start = augmented_start(y0, observable)?;
    match mode {
        ResidualMode::Formal { order } => {
            let left = method.step_formal_at(f, y0.coords(), order, limits)?;
            let right = method_g.step_formal_at(&g, &start, order, limits)?;
            Ok(formal_residual(&left, observable, &right, order))
        }
        ResidualMode::Numeric { h, tol } => {
            let y = step_numeric(method, f, &y0.to_f64(), h, tol)?;
            let start: Vec<f64> = start.iter().map(to_f64).collect();
            let right = step_numeric(method_g, &g, &start, h, tol)?;
            let d = f.dim();
            let components =
                observable.components().iter().zip(&right[d..]).map(|(p, r)| p.eval_f64(&y) - r).collect();
            Ok(DiagramResidual::Numeric { h, tol, components })
        }
    }
}

/// A partitioned method acts on the augmented system with the `z`
/// components appended to its last block.
fn augmented_method(method: &Method, dim: usize, extra: usize) -> Result<Option<Method>> {
    let Method::Partitioned(p) = method else { return Ok(None) };
    let blocks = p.blocks_for(dim)?;
    let mut sizes = vec![0; p.tableaux().len()];
    for b in blocks {
        sizes[b] += 1;
    }
    *sizes.last_mut().expect("at least one tableau") += extra;
    let spec = PartitionSpec::from_sizes(&sizes)?;
    Ok(Some(Method::Partitioned(PartitionedMethod::new(p.tableaux().to_vec(), Some(spec))?)))
}

/// Additive variant: each part is augmented separately,
/// `g^{[ν]} = (f^{[ν]}, F′f^{[ν]})`, and the splitting is applied to both
/// systems.
pub fn fe_diagram_residual_additive(
    scheme: &SplittingScheme,
    parts: &[PolyVectorField],
    observable: &PolyMap,
    y0: &RationalPoint,
    order: usize,
    limits: &Limits,
) -> Result<DiagramResidual> {
    let d = parts.first().ok_or_else(|| Error::Precondition("no parts given".into()))?.dim();
    check_observable(d, observable, y0)?;
    let augmented = parts.iter().map(|p| augment(p, observable)).collect::<Result<Vec<_>>>()?;
    let start = augmented_start(y0, observable)?;
    let left = scheme.step_formal_at(parts, y0.coords(), order, limits)?;
    let right = scheme.step_formal_at(&augmented, &start, order, limits)?;
    Ok(formal_residual(&left, observable, &right, order))
}
