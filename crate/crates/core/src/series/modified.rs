use super::{Flavor, SeriesMap};
use crate::error::{Error, Result};
use crate::fields::witness_field;
use crate::integrate::{modified_field_from_expansion, StepExpansion};
use crate::Limits;

/// Coefficients `b(τ)` of the modified field `f̃` with `exp(h f̃) = Φ_{hf}`.
///
/// Each `b(τ)` is read off the order-`|τ|` modified-field term of the
/// witness field of `τ`: component `|τ|` at the origin equals `b(τ)`.
pub fn modified_field_series(a: &SeriesMap) -> Result<SeriesMap> {
    modified_field_series_with(a, &Limits::default())
}

pub fn modified_field_series_with(a: &SeriesMap, limits: &Limits) -> Result<SeriesMap> {
    if a.colors() != 1 {
        return Err(Error::Precondition("modified fields are computed for 1-color series".into()));
    }
    if !a.is_consistent() {
        return Err(Error::Inconsistent("a(•) must equal 1".into()));
    }
    let mut b = SeriesMap::zero(1, a.order(), Flavor::IntegratorMap)?;
    let trees: Vec<_> = a.trees().cloned().collect();
    for tau in trees {
        let n = tau.order();
        let f = witness_field(&tau);
        let step = StepExpansion::from_series(&a.truncated(n)?, &f, limits)?;
        let modified = modified_field_from_expansion(&step, &f, limits)?;
        b.set(&tau, modified.term(n).components()[n - 1].constant_term())?;
    }
    Ok(b)
}
