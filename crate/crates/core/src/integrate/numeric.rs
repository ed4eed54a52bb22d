//! Floating-point stepping, for demonstrations and agreement tests.

use nalgebra::{DMatrix, DVector};

use super::method::{Method, StageTables};
use crate::error::{Error, Result};
use crate::fields::PolyVectorField;

pub const DEFAULT_TOL: f64 = 1e-12;
const FIXED_POINT_ITERATIONS: usize = 50;
const NEWTON_ITERATIONS: usize = 50;

/// A vector field evaluated in floating point.
pub trait NumericField {
    fn dim(&self) -> usize;

    fn eval(&self, y: &[f64]) -> Vec<f64>;

    /// Jacobian `∂f_i/∂y_j`; central differences unless overridden.
    fn jacobian(&self, y: &[f64]) -> DMatrix<f64> {
        let d = self.dim();
        let mut jac = DMatrix::zeros(d, d);
        let mut probe = y.to_vec();
        for j in 0..d {
            let step = 1e-6 * y[j].abs().max(1.0);
            probe[j] = y[j] + step;
            let plus = self.eval(&probe);
            probe[j] = y[j] - step;
            let minus = self.eval(&probe);
            probe[j] = y[j];
            for i in 0..d {
                jac[(i, j)] = (plus[i] - minus[i]) / (2.0 * step);
            }
        }
        jac
    }
}

impl NumericField for PolyVectorField {
    fn dim(&self) -> usize {
        PolyVectorField::dim(self)
    }

    fn eval(&self, y: &[f64]) -> Vec<f64> {
        self.eval_f64(y)
    }

    fn jacobian(&self, y: &[f64]) -> DMatrix<f64> {
        let d = PolyVectorField::dim(self);
        DMatrix::from_fn(d, d, |i, j| self.components()[i].derivative(j).eval_f64(y))
    }
}

/// A closure `y ↦ f(y)` on `ℝ^dim`.
pub struct FnField<F> {
    dim: usize,
    f: F,
}

impl<F: Fn(&[f64]) -> Vec<f64>> FnField<F> {
    pub fn new(dim: usize, f: F) -> Self {
        FnField { dim, f }
    }
}

impl<F: Fn(&[f64]) -> Vec<f64>> NumericField for FnField<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, y: &[f64]) -> Vec<f64> {
        (self.f)(y)
    }
}

/// One step of size `h`. Implicit stages are solved by fixed-point
/// iteration, falling back to Newton's method, until the stage residual is
/// at most `tol`.
pub fn step_numeric(method: &Method, f: &dyn NumericField, y: &[f64], h: f64, tol: f64) -> Result<Vec<f64>> {
    if h == 0.0 || !h.is_finite() {
        return Err(Error::Precondition("step size must be finite and nonzero".into()));
    }
    if tol <= 0.0 || tol.is_nan() {
        return Err(Error::Precondition("tolerance must be positive".into()));
    }
    let d = f.dim();
    if y.len() != d {
        return Err(Error::DimensionMismatch { expected: d, actual: y.len() });
    }
    let tables = method
        .float_tables(d)?
        .ok_or_else(|| Error::Unsupported("numeric stepping needs a Runge–Kutta or partitioned method".into()))?;
    let k = solve_stages(&tables, f, y, h, tol)?;
    Ok((0..d)
        .map(|c| {
            let b = &tables.b[tables.block_of[c]];
            y[c] + h * b.iter().zip(&k).map(|(bi, ki)| bi * ki[c]).sum::<f64>()
        })
        .collect())
}

fn stage_point(t: &StageTables<f64>, y: &[f64], k: &[Vec<f64>], i: usize, h: f64) -> Vec<f64> {
    (0..y.len())
        .map(|c| {
            let a = &t.a[t.block_of[c]][i];
            y[c] + h * a.iter().zip(k).map(|(aij, kj)| aij * kj[c]).sum::<f64>()
        })
        .collect()
}

fn max_diff(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    a.iter().flatten().zip(b.iter().flatten()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn solve_stages(t: &StageTables<f64>, f: &dyn NumericField, y: &[f64], h: f64, tol: f64) -> Result<Vec<Vec<f64>>> {
    let s = t.stages();
    let explicit = t.a.iter().all(|a| (0..s).all(|i| a[i][i..].iter().all(|x| *x == 0.0)));
    let mut k = vec![f.eval(y); s];
    if explicit {
        for i in 0..s {
            k[i] = f.eval(&stage_point(t, y, &k, i, h));
        }
        return Ok(k);
    }
    let start = k.clone();
    let update = |k: &[Vec<f64>]| -> Vec<Vec<f64>> { (0..s).map(|i| f.eval(&stage_point(t, y, k, i, h))).collect() };
    for _ in 0..FIXED_POINT_ITERATIONS {
        let next = update(&k);
        let r = max_diff(&next, &k);
        k = next;
        if r <= tol {
            return Ok(k);
        }
    }
    // the iteration may have diverged, so Newton restarts from the initial guess
    newton(t, f, y, h, tol, start)
}

fn newton(t: &StageTables<f64>, f: &dyn NumericField, y: &[f64], h: f64, tol: f64, mut k: Vec<Vec<f64>>) -> Result<Vec<Vec<f64>>> {
    let s = t.stages();
    let d = y.len();
    let mut residual = f64::INFINITY;
    for _ in 0..NEWTON_ITERATIONS {
        let points: Vec<Vec<f64>> = (0..s).map(|i| stage_point(t, y, &k, i, h)).collect();
        let r = DVector::from_iterator(
            s * d,
            (0..s).flat_map(|i| {
                let fi = f.eval(&points[i]);
                (0..d).map(|c| k[i][c] - fi[c]).collect::<Vec<_>>()
            }),
        );
        residual = r.amax();
        if residual <= tol {
            return Ok(k);
        }
        let jacs: Vec<DMatrix<f64>> = points.iter().map(|p| f.jacobian(p)).collect();
        let jac = DMatrix::from_fn(s * d, s * d, |row, col| {
            let (i, c) = (row / d, row % d);
            let (j, e) = (col / d, col % d);
            let identity = if row == col { 1.0 } else { 0.0 };
            identity - h * jacs[i][(c, e)] * t.a[t.block_of[e]][i][j]
        });
        let delta = jac
            .lu()
            .solve(&(-r))
            .ok_or(Error::NonConvergence { iterations: FIXED_POINT_ITERATIONS, residual })?;
        for i in 0..s {
            for c in 0..d {
                k[i][c] += delta[i * d + c];
            }
        }
    }
    Err(Error::NonConvergence { iterations: FIXED_POINT_ITERATIONS + NEWTON_ITERATIONS, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::series::{standard, PartitionSpec};
    use crate::integrate::PartitionedMethod;

    fn linear() -> PolyVectorField {
        PolyVectorField::new(1, vec![Poly::var(0)]).unwrap()
    }

    #[test]
    fn euler_step() {
        let y = step_numeric(&Method::RungeKutta(standard::euler()), &linear(), &[1.0], 0.5, DEFAULT_TOL).unwrap();
        assert_eq!(y, vec![1.5]);
    }

    #[test]
    fn midpoint_closed_form() {
        let y = step_numeric(&Method::RungeKutta(standard::implicit_midpoint()), &linear(), &[1.0], 0.5, DEFAULT_TOL)
            .unwrap();
        assert!((y[0] - 5.0 / 3.0).abs() < 1e-11);
    }

    #[test]
    fn rk4_reproduces_taylor_polynomial() {
        let f = PolyVectorField::new(2, vec![Poly::var(0), Poly::var(1)]).unwrap();
        let y = step_numeric(&Method::RungeKutta(standard::rk4()), &f, &[1.0, 1.0], 0.1, DEFAULT_TOL).unwrap();
        let expected: f64 = 1.0 + 0.1 + 0.01 / 2.0 + 0.001 / 6.0 + 0.0001 / 24.0;
        assert!(y.iter().all(|v| (v - expected).abs() < 1e-15));
    }

    #[test]
    fn newton_fallback_for_stiff_stage() {
        // fixed-point iteration diverges for |h λ / 2| > 1
        let f = FnField::new(1, |y: &[f64]| vec![-50.0 * y[0]]);
        let y = step_numeric(&Method::RungeKutta(standard::implicit_midpoint()), &f, &[1.0], 0.1, DEFAULT_TOL).unwrap();
        assert!((y[0] - (1.0 - 2.5) / (1.0 + 2.5)).abs() < 1e-10);
    }

    #[test]
    fn partitioned_step_conserves_oscillator_energy_to_order() {
        let f = PolyVectorField::new(2, vec![Poly::var(1), Poly::var(0).neg()]).unwrap();
        let sv = Method::Partitioned(
            PartitionedMethod::new(
                vec![standard::lobatto_iiia2(), standard::lobatto_iiib2()],
                Some(PartitionSpec::from_sizes(&[1, 1]).unwrap()),
            )
            .unwrap(),
        );
        let y = step_numeric(&sv, &f, &[1.0, 0.0], 0.01, DEFAULT_TOL).unwrap();
        assert!((y[0] - 0.01f64.cos()).abs() < 1e-6);
    }

    #[test]
    fn rejects_bad_arguments() {
        let m = Method::RungeKutta(standard::euler());
        assert!(step_numeric(&m, &linear(), &[1.0], 0.0, DEFAULT_TOL).is_err());
        assert!(step_numeric(&m, &linear(), &[1.0], 0.1, 0.0).is_err());
        assert!(step_numeric(&Method::ExactFlow, &linear(), &[1.0], 0.1, DEFAULT_TOL).is_err());
    }
}
