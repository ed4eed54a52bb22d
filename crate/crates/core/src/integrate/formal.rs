//! Exact h-expansions of one-step maps and flows, and the modified-field
//! recurrence.

use super::HSeries;
use crate::error::{Error, Result};
use crate::fields::{ElementaryDifferentials, PolyVectorField, RationalPoint};
use crate::poly::{Coefficient, Poly};
use crate::rational::{factorial, Q};
use crate::series::SeriesMap;
use crate::Limits;

/// A one-step map `y ↦ d₀(y) + h d₁(y) + … + h^N d_N(y)` with polynomial
/// coefficients; `d₀` is the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct StepExpansion {
    terms: Vec<PolyVectorField>,
}

impl StepExpansion {
    /// From symbolic per-component series (the step evaluated at `y₀ = y`).
    pub fn from_symbolic(values: &[HSeries<Poly>], order: usize) -> Self {
        let terms = (0..=order)
            .map(|k| PolyVectorField::from_components_unchecked(values.iter().map(|v| v.coeff(k).clone()).collect()))
            .collect();
        StepExpansion { terms }
    }

    /// `d_k = Σ_{|τ|=k} a(τ)/σ(τ) τ(f)` for a 1-color integrator series.
    pub fn from_series(a: &SeriesMap, f: &PolyVectorField, limits: &Limits) -> Result<Self> {
        if a.colors() != 1 {
            return Err(Error::Precondition("a B-series step needs a 1-color series".into()));
        }
        let parts = std::slice::from_ref(f);
        let mut ed = ElementaryDifferentials::new(parts, limits)?;
        let mut terms = vec![identity(f.dim())];
        for k in 1..=a.order() {
            terms.push(ed.series(&a.homogeneous_term(k))?);
        }
        Ok(StepExpansion { terms })
    }

    /// Taylor expansion of the flow of `h f₁ + h² f₂ + …` (the exact flow of
    /// `f̃ = f₁ + h f₂ + …` over one step `h`).
    pub fn flow(fields: &[PolyVectorField], order: usize, limits: &Limits) -> Result<Self> {
        let dim = fields.first().ok_or_else(|| Error::Precondition("flow of an empty field list".into()))?.dim();
        let mut table = LieTable::new(dim, *limits);
        let mut terms = vec![identity(dim)];
        for n in 1..=order {
            let higher = table.higher(n)?;
            let f_n = match fields.get(n - 1) {
                Some(f) => {
                    if f.dim() != dim {
                        return Err(Error::DimensionMismatch { expected: dim, actual: f.dim() });
                    }
                    f.components().to_vec()
                }
                None => vec![Poly::zero(); dim],
            };
            terms.push(table.push(f_n, &higher));
        }
        Ok(StepExpansion { terms })
    }

    pub fn order(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.terms[0].dim()
    }

    /// `d_k`; `d₀` is the identity.
    pub fn coefficient(&self, k: usize) -> &PolyVectorField {
        &self.terms[k]
    }

    pub fn terms(&self) -> &[PolyVectorField] {
        &self.terms
    }

    /// The step evaluated at `y₀`, one series per component.
    pub fn eval_in<C: Coefficient>(&self, y0: &[C]) -> Result<Vec<HSeries<C>>> {
        if y0.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), actual: y0.len() });
        }
        let order = self.order();
        Ok((0..self.dim())
            .map(|i| {
                let coeffs = self.terms.iter().map(|t| t.components()[i].eval_in(y0)).collect();
                HSeries::from_coeffs(coeffs, order)
            })
            .collect())
    }

    pub fn eval(&self, y0: &RationalPoint) -> Result<Vec<HSeries<Q>>> {
        self.eval_in(y0.coords())
    }
}

fn identity(dim: usize) -> PolyVectorField {
    PolyVectorField::from_components_unchecked((0..dim).map(Poly::var).collect())
}

/// Table of `S_{k,n} = Σ_j L_{f_j} S_{k−1,n−j}` with `S_{0,0} = id`, where
/// `L_X G = G′X`. The flow of `Σ_j h^j f_j` has `h^n` coefficient
/// `Σ_k S_{k,n}/k!`.
struct LieTable {
    dim: usize,
    limits: Limits,
    fields: Vec<Vec<Poly>>,
    // s[n][k]
    s: Vec<Vec<Vec<Poly>>>,
}

impl LieTable {
    fn new(dim: usize, limits: Limits) -> Self {
        let id: Vec<Poly> = (0..dim).map(Poly::var).collect();
        LieTable { dim, limits, fields: Vec::new(), s: vec![vec![id]] }
    }

    /// Fills `S_{k,n}` for `k ≥ 2` (these need only `f₁…f_{n−1}`) and returns
    /// `Σ_{k≥2} S_{k,n}/k!`.
    fn higher(&mut self, n: usize) -> Result<Vec<Poly>> {
        debug_assert_eq!(self.fields.len(), n - 1);
        let mut row = vec![vec![Poly::zero(); self.dim]; n + 1];
        let mut total = vec![Poly::zero(); self.dim];
        for k in 2..=n {
            let mut acc = vec![Poly::zero(); self.dim];
            for j in 1..=n + 1 - k {
                let prev = &self.s[n - j];
                if k > prev.len() {
                    continue;
                }
                let f_j = &self.fields[j - 1];
                if f_j.iter().all(Poly::is_zero) {
                    continue;
                }
                for (slot, g) in acc.iter_mut().zip(&prev[k - 1]) {
                    if !g.is_zero() {
                        slot.add_assign(&g.directional(f_j));
                    }
                }
            }
            let count: usize = acc.iter().map(Poly::len).sum();
            if count > self.limits.monomial_budget {
                return Err(Error::BudgetExceeded { needed: count, budget: self.limits.monomial_budget });
            }
            let inv = Q::new(1.into(), factorial(k as u64).into());
            for (t, g) in total.iter_mut().zip(&acc) {
                t.add_assign(&g.scale(&inv));
            }
            row[k] = acc;
        }
        self.s.push(row);
        Ok(total)
    }

    /// Records `f_n` (so `S_{1,n} = f_n`) and returns the flow coefficient
    /// `E_n = f_n + higher`.
    fn push(&mut self, f_n: Vec<Poly>, higher: &[Poly]) -> PolyVectorField {
        let n = self.fields.len() + 1;
        self.s[n][1] = f_n.clone();
        let e_n = f_n.iter().zip(higher).map(|(a, b)| a.add(b)).collect();
        self.fields.push(f_n);
        PolyVectorField::from_components_unchecked(e_n)
    }
}

/// Terms `f = f₁, f₂, …, f_N` of a truncated modified field.
#[derive(Clone, Debug, PartialEq)]
pub struct ModifiedField {
    terms: Vec<PolyVectorField>,
}

impl ModifiedField {
    pub fn new(terms: Vec<PolyVectorField>) -> Self {
        ModifiedField { terms }
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }

    /// `f_j` for `j ≥ 1`.
    pub fn term(&self, j: usize) -> &PolyVectorField {
        &self.terms[j - 1]
    }

    pub fn terms(&self) -> &[PolyVectorField] {
        &self.terms
    }

    /// `f₂, …, f_N`.
    pub fn corrections(&self) -> &[PolyVectorField] {
        &self.terms[1..]
    }

    pub fn flow(&self, order: usize, limits: &Limits) -> Result<StepExpansion> {
        StepExpansion::flow(&self.terms, order, limits)
    }
}

/// Solves `exp(h f̃) = step` order by order: `f_n = d_n − Σ_{k≥2} S_{k,n}/k!`.
/// `f` must equal `d₁`.
pub fn modified_field_from_expansion(
    step: &StepExpansion,
    f: &PolyVectorField,
    limits: &Limits,
) -> Result<ModifiedField> {
    if step.order() == 0 {
        return Ok(ModifiedField::new(vec![f.clone()]));
    }
    if step.coefficient(1) != f {
        return Err(Error::Inconsistent("the h-coefficient of the step is not f".into()));
    }
    let mut table = LieTable::new(step.dim(), *limits);
    let mut terms = Vec::with_capacity(step.order());
    for n in 1..=step.order() {
        let higher = table.higher(n)?;
        let f_n: Vec<Poly> = step.coefficient(n).components().iter().zip(&higher).map(|(d, e)| d.sub(e)).collect();
        table.push(f_n.clone(), &higher);
        terms.push(PolyVectorField::from_components_unchecked(f_n));
    }
    Ok(ModifiedField::new(terms))
}

/// Exact flow of `f̃ = f₁ + h f₂ + …` from `y₀`, through order `N`.
pub fn flow_formal(fields: &[PolyVectorField], y0: &RationalPoint, order: usize, limits: &Limits) -> Result<Vec<HSeries<Q>>> {
    StepExpansion::flow(fields, order, limits)?.eval(y0)
}

pub(crate) fn is_zero_field(f: &PolyVectorField) -> bool {
    f.components().iter().all(Poly::is_zero)
}
