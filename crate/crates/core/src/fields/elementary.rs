//! Elementary differentials `τ(f) = f^{(m)}(τ₁(f), …, τ_m(f))`, pointwise and
//! symbolic, for plain and colored trees. A vertex of color `ν` uses the
//! field `parts[ν - 1]`.

use std::collections::HashMap;

use num_traits::Zero;

use super::{expect_dim, PolyVectorField, RationalPoint};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Q;
use crate::series::SeriesMap;
use crate::trees::Tree;
use crate::Limits;

fn part(parts: &[PolyVectorField], color: u32) -> Result<&PolyVectorField> {
    parts.get(color as usize - 1).ok_or(Error::ColorOutOfRange { color, colors: parts.len() as u32 })
}

fn common_dim(parts: &[PolyVectorField]) -> Result<usize> {
    let d = parts.first().ok_or_else(|| Error::Precondition("at least one field is required".into()))?.dim();
    for p in parts {
        expect_dim(d, p.dim())?;
    }
    Ok(d)
}

/// `τ(f)(y)`, computed by recursing on the children's values at `y`.
pub fn elementary_differential(tau: &Tree, f: &PolyVectorField, y: &RationalPoint) -> Result<Vec<Q>> {
    colored_elementary_differential(tau, std::slice::from_ref(f), y)
}

pub fn colored_elementary_differential(tau: &Tree, parts: &[PolyVectorField], y: &RationalPoint) -> Result<Vec<Q>> {
    let d = common_dim(parts)?;
    expect_dim(d, y.dim())?;
    pointwise(tau, parts, y)
}

fn pointwise(tau: &Tree, parts: &[PolyVectorField], y: &RationalPoint) -> Result<Vec<Q>> {
    let field = part(parts, tau.color())?;
    let child_values = tau.children().iter().map(|c| pointwise(c, parts, y)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::with_capacity(field.dim());
    for p in field.components() {
        // differentiate along each constant direction in turn, then evaluate
        let mut acc = p.clone();
        for v in &child_values {
            let dir: Vec<Poly> = v.iter().cloned().map(Poly::constant).collect();
            acc = acc.directional(&dir);
            if acc.is_zero() {
                break;
            }
        }
        out.push(acc.eval(y.coords()));
    }
    Ok(out)
}

/// Memoized symbolic elementary differentials of a fixed tuple of fields.
pub struct ElementaryDifferentials<'a> {
    parts: &'a [PolyVectorField],
    limits: Limits,
    cache: HashMap<Tree, PolyVectorField>,
}

impl<'a> ElementaryDifferentials<'a> {
    pub fn new(parts: &'a [PolyVectorField], limits: &Limits) -> Result<Self> {
        common_dim(parts)?;
        Ok(ElementaryDifferentials { parts, limits: *limits, cache: HashMap::new() })
    }

    pub fn dim(&self) -> usize {
        self.parts[0].dim()
    }

    pub fn get(&mut self, tau: &Tree) -> Result<PolyVectorField> {
        if let Some(v) = self.cache.get(tau) {
            return Ok(v.clone());
        }
        let field = part(self.parts, tau.color())?;
        let children = tau.children().iter().map(|c| self.get(c)).collect::<Result<Vec<_>>>()?;
        let dirs: Vec<&[Poly]> = children.iter().map(|c| c.components()).collect();
        let value = PolyVectorField::from_components_unchecked(
            field.components().iter().map(|p| p.multi_derivative(&dirs)).collect(),
        );
        value.check_budget(&self.limits)?;
        self.cache.insert(tau.clone(), value.clone());
        Ok(value)
    }

    /// `Σ_τ b(τ)/σ(τ) τ(f)` over the series' trees, as a polynomial field.
    pub fn series(&mut self, phi: &SeriesMap) -> Result<PolyVectorField> {
        if phi.colors() as usize > self.parts.len() {
            return Err(Error::ShapeMismatch(format!(
                "series uses {} colors but {} fields were given",
                phi.colors(),
                self.parts.len()
            )));
        }
        let mut total = PolyVectorField::zero(self.dim());
        for (tau, b) in phi.iter() {
            if b.is_zero() {
                continue;
            }
            let term = self.get(tau)?.scale(&(b / Q::from_integer(tau.symmetry().into())));
            total = total.add(&term)?;
        }
        total.check_budget(&self.limits)?;
        Ok(total)
    }
}

pub fn series_as_field(phi: &SeriesMap, f: &PolyVectorField, limits: &Limits) -> Result<PolyVectorField> {
    series_as_field_colored(phi, std::slice::from_ref(f), limits)
}

pub fn series_as_field_colored(phi: &SeriesMap, parts: &[PolyVectorField], limits: &Limits) -> Result<PolyVectorField> {
    ElementaryDifferentials::new(parts, limits)?.series(phi)
}

/// `Σ_τ b(τ)/σ(τ) τ(f)(y)`. For integrator-flavored series this is the
/// increment without the identity term.
pub fn apply_series(phi: &SeriesMap, f: &PolyVectorField, y: &RationalPoint) -> Result<Vec<Q>> {
    apply_series_colored(phi, std::slice::from_ref(f), y)
}

pub fn apply_series_colored(phi: &SeriesMap, parts: &[PolyVectorField], y: &RationalPoint) -> Result<Vec<Q>> {
    if phi.colors() as usize != parts.len() {
        return Err(Error::ShapeMismatch(format!("series has {} colors, {} fields given", phi.colors(), parts.len())));
    }
    let d = common_dim(parts)?;
    expect_dim(d, y.dim())?;
    let mut total = vec![Q::zero(); d];
    for (tau, b) in phi.iter() {
        if b.is_zero() {
            continue;
        }
        let weight = b / Q::from_integer(tau.symmetry().into());
        for (acc, v) in total.iter_mut().zip(pointwise(tau, parts, y)?) {
            *acc += &weight * v;
        }
    }
    Ok(total)
}
