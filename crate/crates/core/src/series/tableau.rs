use std::ops::Range;

use crate::error::{Error, Result};
use crate::rational::{Surd, Q};
use crate::trees::Tree;

/// Runge–Kutta coefficients over `ℚ` or a real quadratic field `ℚ(√d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ButcherTableau {
    a: Vec<Vec<Surd>>,
    b: Vec<Surd>,
    c: Vec<Surd>,
    radicand: Option<u32>,
}

fn rational_row(row: &[Q]) -> Vec<Surd> {
    row.iter().cloned().map(Surd::rational).collect()
}

impl ButcherTableau {
    /// Rational tableau; the abscissae are the row sums of `a`.
    pub fn new(a: Vec<Vec<Q>>, b: Vec<Q>) -> Result<Self> {
        Self::with_radicand(None, a.iter().map(|r| rational_row(r)).collect(), rational_row(&b), None)
    }

    /// General constructor. When `c` is given it must equal the row sums.
    pub fn with_radicand(radicand: Option<u32>, a: Vec<Vec<Surd>>, b: Vec<Surd>, c: Option<Vec<Surd>>) -> Result<Self> {
        let s = b.len();
        if s == 0 {
            return Err(Error::InvalidTableau("no stages".into()));
        }
        if a.len() != s || a.iter().any(|r| r.len() != s) {
            return Err(Error::InvalidTableau(format!("A must be {s}×{s}")));
        }
        if let Some(d) = radicand {
            if d < 2 || (2..d).any(|k| d % (k * k) == 0) {
                return Err(Error::InvalidTableau(format!("radicand {d} must be squarefree and > 1")));
            }
        } else if a.iter().flatten().chain(&b).chain(c.iter().flatten()).any(|x| !x.is_rational()) {
            return Err(Error::InvalidTableau("irrational entry without a radicand".into()));
        }
        let sums: Vec<Surd> = a.iter().map(|row| row.iter().fold(Surd::zero(), |acc, x| acc.add(x))).collect();
        if let Some(c) = &c {
            if c != &sums {
                return Err(Error::InvalidTableau("c must equal the row sums of A".into()));
            }
        }
        Ok(ButcherTableau { a, b, c: sums, radicand })
    }

    pub fn stages(&self) -> usize {
        self.b.len()
    }

    pub fn radicand(&self) -> Option<u32> {
        self.radicand
    }

    pub fn a(&self) -> &[Vec<Surd>] {
        &self.a
    }

    pub fn b(&self) -> &[Surd] {
        &self.b
    }

    pub fn c(&self) -> &[Surd] {
        &self.c
    }

    pub fn is_rational(&self) -> bool {
        self.a.iter().flatten().chain(&self.b).all(Surd::is_rational)
    }

    pub fn is_explicit(&self) -> bool {
        self.a.iter().enumerate().all(|(i, row)| row[i..].iter().all(|x| *x == Surd::zero()))
    }

    /// `(A, b)` over `ℚ`, when every entry is rational.
    pub fn rational_coefficients(&self) -> Option<(Vec<Vec<Q>>, Vec<Q>)> {
        if !self.is_rational() {
            return None;
        }
        let a = self.a.iter().map(|r| r.iter().map(|x| x.rational.clone()).collect()).collect();
        let b = self.b.iter().map(|x| x.rational.clone()).collect();
        Some((a, b))
    }

    pub fn coefficients_f64(&self) -> (Vec<Vec<f64>>, Vec<f64>) {
        let d = self.radicand.unwrap_or(1);
        let a = self.a.iter().map(|r| r.iter().map(|x| x.to_f64(d)).collect()).collect();
        let b = self.b.iter().map(|x| x.to_f64(d)).collect();
        (a, b)
    }

    /// Elementary weight `Φ(τ) = Σ_i b_i Φ_i(τ)` with
    /// `Φ_i([τ₁…τ_m]) = Π_k Σ_j a_ij Φ_j(τ_k)`; these are the coefficients
    /// `a(τ)` of the method's B-series.
    pub fn elementary_weight_surd(&self, tau: &Tree) -> Surd {
        let d = self.radicand.unwrap_or(1);
        let internal = self.internal_weights(tau, d);
        self.b.iter().zip(&internal).fold(Surd::zero(), |acc, (b, w)| acc.add(&b.mul(w, d)))
    }

    /// Rational elementary weight; irrational weights are an error.
    pub fn elementary_weight(&self, tau: &Tree) -> Result<Q> {
        let w = self.elementary_weight_surd(tau);
        if !w.is_rational() {
            return Err(Error::Irrational(format!("elementary weight of {tau} is {}", w.format(self.radicand.unwrap_or(1)))));
        }
        Ok(w.rational)
    }

    fn internal_weights(&self, tau: &Tree, d: u32) -> Vec<Surd> {
        let s = self.stages();
        let mut out = vec![Surd::rational(Q::from_integer(1.into())); s];
        for child in tau.children() {
            let inner = self.internal_weights(child, d);
            for (i, slot) in out.iter_mut().enumerate() {
                let sum = (0..s).fold(Surd::zero(), |acc, j| acc.add(&self.a[i][j].mul(&inner[j], d)));
                *slot = slot.mul(&sum, d);
            }
        }
        out
    }
}

/// Standard tableaux, available without a catalog file.
pub mod standard {
    use super::*;
    use crate::rational::{q, qi};

    pub fn euler() -> ButcherTableau {
        ButcherTableau::new(vec![vec![qi(0)]], vec![qi(1)]).unwrap()
    }

    pub fn implicit_midpoint() -> ButcherTableau {
        ButcherTableau::new(vec![vec![q(1, 2)]], vec![qi(1)]).unwrap()
    }

    pub fn heun() -> ButcherTableau {
        ButcherTableau::new(vec![vec![qi(0), qi(0)], vec![qi(1), qi(0)]], vec![q(1, 2), q(1, 2)]).unwrap()
    }

    pub fn rk4() -> ButcherTableau {
        let z = || qi(0);
        ButcherTableau::new(
            vec![
                vec![z(), z(), z(), z()],
                vec![q(1, 2), z(), z(), z()],
                vec![z(), q(1, 2), z(), z()],
                vec![z(), z(), qi(1), z()],
            ],
            vec![q(1, 6), q(1, 3), q(1, 3), q(1, 6)],
        )
        .unwrap()
    }

    /// Two-stage Gauss–Legendre method (order 4), over `ℚ(√3)`.
    pub fn gauss2() -> ButcherTableau {
        let s = |r: Q, x: Q| Surd { rational: r, radical: x };
        ButcherTableau::with_radicand(
            Some(3),
            vec![
                vec![s(q(1, 4), qi(0)), s(q(1, 4), q(-1, 6))],
                vec![s(q(1, 4), q(1, 6)), s(q(1, 4), qi(0))],
            ],
            vec![s(q(1, 2), qi(0)), s(q(1, 2), qi(0))],
            None,
        )
        .unwrap()
    }

    pub fn lobatto_iiia2() -> ButcherTableau {
        ButcherTableau::new(vec![vec![qi(0), qi(0)], vec![q(1, 2), q(1, 2)]], vec![q(1, 2), q(1, 2)]).unwrap()
    }

    pub fn lobatto_iiib2() -> ButcherTableau {
        ButcherTableau::new(vec![vec![q(1, 2), qi(0)], vec![q(1, 2), qi(0)]], vec![q(1, 2), q(1, 2)]).unwrap()
    }

    /// Backward Euler, paired with [`euler`] to form symplectic Euler.
    pub fn implicit_euler() -> ButcherTableau {
        ButcherTableau::new(vec![vec![qi(1)]], vec![qi(1)]).unwrap()
    }
}

/// Disjoint contiguous blocks covering `0..dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionSpec {
    blocks: Vec<Range<usize>>,
}

impl PartitionSpec {
    pub fn new(blocks: Vec<Range<usize>>) -> Result<Self> {
        let mut next = 0;
        for r in &blocks {
            if r.start != next || r.end <= r.start {
                return Err(Error::Precondition(format!("partition blocks must be contiguous and non-empty, got {blocks:?}")));
            }
            next = r.end;
        }
        if blocks.is_empty() {
            return Err(Error::Precondition("a partition needs at least one block".into()));
        }
        Ok(PartitionSpec { blocks })
    }

    pub fn from_sizes(sizes: &[usize]) -> Result<Self> {
        let mut start = 0;
        let blocks = sizes
            .iter()
            .map(|&n| {
                let r = start..start + n;
                start += n;
                r
            })
            .collect();
        Self::new(blocks)
    }

    pub fn blocks(&self) -> &[Range<usize>] {
        &self.blocks
    }

    pub fn dim(&self) -> usize {
        self.blocks.last().map_or(0, |r| r.end)
    }

    pub fn block_of(&self, component: usize) -> Option<usize> {
        self.blocks.iter().position(|r| r.contains(&component))
    }
}
