use num_traits::{One, Zero};

use super::formal::{modified_field_from_expansion, ModifiedField, StepExpansion};
use super::HSeries;
use crate::error::{Error, Result};
use crate::fields::{PolyVectorField, RationalPoint};
use crate::poly::{Coefficient, Poly};
use crate::rational::{Surd, Q};
use crate::series::{ButcherTableau, PartitionSpec, SeriesMap};
use crate::Limits;

/// Partitioned Runge–Kutta method: one tableau per block of components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionedMethod {
    tableaux: Vec<ButcherTableau>,
    partition: Option<PartitionSpec>,
}

impl PartitionedMethod {
    /// Without an explicit partition the state is split into equal blocks,
    /// one per tableau.
    pub fn new(tableaux: Vec<ButcherTableau>, partition: Option<PartitionSpec>) -> Result<Self> {
        let s = tableaux.first().ok_or_else(|| Error::InvalidTableau("no tableaux".into()))?.stages();
        if tableaux.iter().any(|t| t.stages() != s) {
            return Err(Error::InvalidTableau("all tableaux must have the same number of stages".into()));
        }
        if let Some(p) = &partition {
            if p.blocks().len() != tableaux.len() {
                return Err(Error::Precondition(format!(
                    "{} tableaux but {} partition blocks",
                    tableaux.len(),
                    p.blocks().len()
                )));
            }
        }
        Ok(PartitionedMethod { tableaux, partition })
    }

    pub fn tableaux(&self) -> &[ButcherTableau] {
        &self.tableaux
    }

    pub fn partition(&self) -> Option<&PartitionSpec> {
        self.partition.as_ref()
    }

    /// Block index of each component for a state of dimension `dim`.
    pub fn blocks_for(&self, dim: usize) -> Result<Vec<usize>> {
        let spec = match &self.partition {
            Some(p) => p.clone(),
            None => {
                let n = self.tableaux.len();
                if !dim.is_multiple_of(n) {
                    return Err(Error::Precondition(format!("dimension {dim} does not split into {n} equal blocks")));
                }
                PartitionSpec::from_sizes(&vec![dim / n; n])?
            }
        };
        if spec.dim() != dim {
            return Err(Error::DimensionMismatch { expected: spec.dim(), actual: dim });
        }
        Ok((0..dim).map(|i| spec.block_of(i).expect("covered")).collect())
    }
}

/// Composition of exact flows: stage `(ν, c)` advances by the flow of
/// `f^{[ν]}` over time `c·h`. Parts are numbered from 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingScheme {
    parts: usize,
    stages: Vec<(usize, Q)>,
}

impl SplittingScheme {
    pub fn new(parts: usize, stages: Vec<(usize, Q)>) -> Result<Self> {
        if parts == 0 {
            return Err(Error::Precondition("a splitting needs at least one part".into()));
        }
        if let Some((nu, _)) = stages.iter().find(|(nu, _)| *nu == 0 || *nu > parts) {
            return Err(Error::ColorOutOfRange { color: *nu as u32, colors: parts as u32 });
        }
        Ok(SplittingScheme { parts, stages })
    }

    pub fn parts(&self) -> usize {
        self.parts
    }

    pub fn stages(&self) -> &[(usize, Q)] {
        &self.stages
    }

    /// Each part's coefficients sum to 1.
    pub fn is_consistent(&self) -> bool {
        (1..=self.parts).all(|nu| {
            self.stages.iter().filter(|(p, _)| *p == nu).fold(Q::zero(), |acc, (_, c)| acc + c).is_one()
        })
    }

    fn check_parts(&self, parts: &[PolyVectorField]) -> Result<usize> {
        if parts.len() != self.parts {
            return Err(Error::ShapeMismatch(format!("scheme has {} parts, {} fields given", self.parts, parts.len())));
        }
        let d = parts[0].dim();
        if let Some(p) = parts.iter().find(|p| p.dim() != d) {
            return Err(Error::DimensionMismatch { expected: d, actual: p.dim() });
        }
        Ok(d)
    }

    /// One step from `y₀`, composing the part flows stage by stage.
    pub fn step_formal_at<C: Coefficient>(
        &self,
        parts: &[PolyVectorField],
        y0: &[C],
        order: usize,
        limits: &Limits,
    ) -> Result<Vec<HSeries<C>>> {
        let d = self.check_parts(parts)?;
        if y0.len() != d {
            return Err(Error::DimensionMismatch { expected: d, actual: y0.len() });
        }
        // L^k id / k! for each part
        let flows = parts
            .iter()
            .map(|p| StepExpansion::flow(std::slice::from_ref(p), order, limits))
            .collect::<Result<Vec<_>>>()?;
        let mut y: Vec<HSeries<C>> = y0.iter().map(|c| HSeries::constant(c.clone(), order)).collect();
        for (nu, c) in &self.stages {
            let flow = &flows[nu - 1];
            let mut next: Vec<HSeries<C>> = y.clone();
            let mut ck = Q::one();
            for k in 1..=order {
                ck *= c;
                if ck.is_zero() {
                    break;
                }
                for (i, slot) in next.iter_mut().enumerate() {
                    let p = &flow.coefficient(k).components()[i];
                    if p.is_zero() {
                        continue;
                    }
                    *slot = slot.add(&p.eval_series(&y, order).scale(&ck).shift(k));
                }
            }
            y = next;
        }
        Ok(y)
    }

    pub fn step_expansion(&self, parts: &[PolyVectorField], order: usize, limits: &Limits) -> Result<StepExpansion> {
        let d = self.check_parts(parts)?;
        let vars: Vec<Poly> = (0..d).map(Poly::var).collect();
        Ok(StepExpansion::from_symbolic(&self.step_formal_at(parts, &vars, order, limits)?, order))
    }

    pub fn step_formal(
        &self,
        parts: &[PolyVectorField],
        y0: &RationalPoint,
        order: usize,
        limits: &Limits,
    ) -> Result<Vec<HSeries<Q>>> {
        self.step_formal_at(parts, y0.coords(), order, limits)
    }
}

/// One-step methods that act on a single vector field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Method {
    RungeKutta(ButcherTableau),
    Partitioned(PartitionedMethod),
    /// An integrator-flavored B-series `y + Σ h^{|τ|} a(τ)/σ(τ) τ(f)(y)`.
    Series(SeriesMap),
    /// The exact flow of `f`, for use as an oracle.
    ExactFlow,
}

/// Per-component stage coefficients over `ℚ`.
pub(crate) struct StageTables<T> {
    pub a: Vec<Vec<Vec<T>>>,
    pub b: Vec<Vec<T>>,
    pub block_of: Vec<usize>,
}

impl<T> StageTables<T> {
    pub fn stages(&self) -> usize {
        self.b[0].len()
    }
}

impl Method {
    pub fn is_consistent(&self) -> bool {
        match self {
            Method::RungeKutta(t) => sums_to_one(t),
            Method::Partitioned(p) => p.tableaux().iter().all(sums_to_one),
            Method::Series(a) => a.is_consistent(),
            Method::ExactFlow => true,
        }
    }

    pub(crate) fn rational_tables(&self, dim: usize) -> Result<Option<StageTables<Q>>> {
        let tabs: Vec<&ButcherTableau> = match self {
            Method::RungeKutta(t) => vec![t],
            Method::Partitioned(p) => p.tableaux().iter().collect(),
            _ => return Ok(None),
        };
        let mut a = Vec::new();
        let mut b = Vec::new();
        for t in tabs {
            match t.rational_coefficients() {
                Some((ta, tb)) => {
                    a.push(ta);
                    b.push(tb);
                }
                None => return Ok(None),
            }
        }
        let block_of = match self {
            Method::Partitioned(p) => p.blocks_for(dim)?,
            _ => vec![0; dim],
        };
        Ok(Some(StageTables { a, b, block_of }))
    }

    pub(crate) fn float_tables(&self, dim: usize) -> Result<Option<StageTables<f64>>> {
        let tabs: Vec<&ButcherTableau> = match self {
            Method::RungeKutta(t) => vec![t],
            Method::Partitioned(p) => p.tableaux().iter().collect(),
            _ => return Ok(None),
        };
        let (a, b) = tabs.into_iter().map(ButcherTableau::coefficients_f64).unzip();
        let block_of = match self {
            Method::Partitioned(p) => p.blocks_for(dim)?,
            _ => vec![0; dim],
        };
        Ok(Some(StageTables { a, b, block_of }))
    }

    /// One step from `y₀` in any coefficient ring (rationals for a point,
    /// polynomials for a symbolic expansion).
    pub fn step_formal_at<C: Coefficient>(
        &self,
        f: &PolyVectorField,
        y0: &[C],
        order: usize,
        limits: &Limits,
    ) -> Result<Vec<HSeries<C>>> {
        if order == 0 {
            return Err(Error::Precondition("truncation order must be at least 1".into()));
        }
        if y0.len() != f.dim() {
            return Err(Error::DimensionMismatch { expected: f.dim(), actual: y0.len() });
        }
        if let Some(tables) = self.rational_tables(f.dim())? {
            return Ok(rk_formal(&tables, f, y0, order));
        }
        if let Method::Partitioned(_) = self {
            return Err(Error::Unsupported("formal stepping of partitioned methods with irrational tableaux".into()));
        }
        self.series_expansion(f, order, limits)?.eval_in(y0)
    }

    /// Expansion for methods without rational stage tables.
    fn series_expansion(&self, f: &PolyVectorField, order: usize, limits: &Limits) -> Result<StepExpansion> {
        match self {
            Method::RungeKutta(t) => StepExpansion::from_series(&SeriesMap::from_tableau(t, order)?, f, limits),
            Method::Series(a) => {
                if order > a.order() {
                    return Err(Error::Precondition(format!(
                        "series is truncated at order {}, order {order} requested",
                        a.order()
                    )));
                }
                StepExpansion::from_series(&a.truncated(order)?, f, limits)
            }
            Method::ExactFlow => StepExpansion::flow(std::slice::from_ref(f), order, limits),
            Method::Partitioned(_) => unreachable!("handled by stage tables"),
        }
    }

    pub fn step_formal(&self, f: &PolyVectorField, y0: &RationalPoint, order: usize, limits: &Limits) -> Result<Vec<HSeries<Q>>> {
        self.step_formal_at(f, y0.coords(), order, limits)
    }

    /// Symbolic expansion `d₀ + h d₁ + …` of the step as polynomial maps.
    pub fn step_expansion(&self, f: &PolyVectorField, order: usize, limits: &Limits) -> Result<StepExpansion> {
        match self.rational_tables(f.dim())? {
            Some(_) => {
                let vars: Vec<Poly> = (0..f.dim()).map(Poly::var).collect();
                let values = self.step_formal_at(f, &vars, order, limits)?;
                for v in &values {
                    for c in v.coeffs() {
                        if c.len() > limits.monomial_budget {
                            return Err(Error::BudgetExceeded { needed: c.len(), budget: limits.monomial_budget });
                        }
                    }
                }
                Ok(StepExpansion::from_symbolic(&values, order))
            }
            None => self.series_expansion(f, order, limits),
        }
    }
}

fn sums_to_one(t: &ButcherTableau) -> bool {
    let s = t.b().iter().fold(Surd::zero(), |acc, x| acc.add(x));
    s.is_rational() && s.rational.is_one()
}

/// Stage equations `Y_i = y₀ + h Σ_j a_ij f(Y_j)` solved by `N` rounds of
/// fixed-point iteration; each round fixes one more power of `h`.
fn rk_formal<C: Coefficient>(t: &StageTables<Q>, f: &PolyVectorField, y0: &[C], order: usize) -> Vec<HSeries<C>> {
    let s = t.stages();
    let d = y0.len();
    let base: Vec<HSeries<C>> = y0.iter().map(|c| HSeries::constant(c.clone(), order)).collect();
    let eval_k = |stages: &[Vec<HSeries<C>>]| -> Vec<Vec<HSeries<C>>> {
        stages.iter().map(|y| f.components().iter().map(|p| p.eval_series(y, order)).collect()).collect()
    };
    let explicit = t.a.iter().all(|a| (0..s).all(|i| a[i][i..].iter().all(Zero::is_zero)));
    let mut stages = vec![base.clone(); s];
    let mut k = eval_k(&stages);
    if explicit {
        for i in 0..s {
            let y = stage_value(t, &base, &k, i, d);
            k[i] = f.components().iter().map(|p| p.eval_series(&y, order)).collect();
            stages[i] = y;
        }
    } else {
        for _ in 0..order {
            stages = (0..s).map(|i| stage_value(t, &base, &k, i, d)).collect();
            k = eval_k(&stages);
        }
    }
    (0..d)
        .map(|c| {
            let b = &t.b[t.block_of[c]];
            let mut incr = HSeries::zero(order);
            for (i, bi) in b.iter().enumerate() {
                if !bi.is_zero() {
                    incr = incr.add(&k[i][c].scale(bi));
                }
            }
            base[c].add(&incr.shift(1))
        })
        .collect()
}

fn stage_value<C: Coefficient>(
    t: &StageTables<Q>,
    base: &[HSeries<C>],
    k: &[Vec<HSeries<C>>],
    i: usize,
    d: usize,
) -> Vec<HSeries<C>> {
    let order = base[0].order();
    (0..d)
        .map(|c| {
            let a = &t.a[t.block_of[c]][i];
            let mut incr = HSeries::zero(order);
            for (j, aij) in a.iter().enumerate() {
                if !aij.is_zero() {
                    incr = incr.add(&k[j][c].scale(aij));
                }
            }
            base[c].add(&incr.shift(1))
        })
        .collect()
}

/// `f₂ … f_N` (with `f₁ = f` first) of the modified field of `method`.
pub fn modified_field_polynomials(method: &Method, f: &PolyVectorField, order: usize, limits: &Limits) -> Result<ModifiedField> {
    if !method.is_consistent() {
        return Err(Error::Inconsistent("the weights do not sum to one".into()));
    }
    let step = method.step_expansion(f, order, limits)?;
    modified_field_from_expansion(&step, f, limits)
}

/// Modified field of a splitting, expressed in the sum `f = Σ_ν f^{[ν]}`.
pub fn splitting_modified_field(
    scheme: &SplittingScheme,
    parts: &[PolyVectorField],
    order: usize,
    limits: &Limits,
) -> Result<ModifiedField> {
    if !scheme.is_consistent() {
        return Err(Error::Inconsistent("each part's stage coefficients must sum to one".into()));
    }
    let step = scheme.step_expansion(parts, order, limits)?;
    let mut total = PolyVectorField::zero(parts[0].dim());
    for p in parts {
        total = total.add(p)?;
    }
    modified_field_from_expansion(&step, &total, limits)
}
