//! Truncated power series in the step size `h`.

use std::fmt;

use crate::poly::{Coefficient, Poly};
use crate::rational::{to_f64, Q};

/// `c₀ + c₁h + … + c_N h^N`, exact through `h^N`; orders above `N` are discarded.
#[derive(Clone, PartialEq)]
pub struct HSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> fmt::Debug for HSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl<C: Coefficient> HSeries<C> {
    pub fn zero(order: usize) -> Self {
        HSeries { coeffs: vec![C::zero_element(); order + 1] }
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Builds a series from coefficients, padding or truncating to `order`.
    pub fn from_coeffs(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero_element());
        HSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &C {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, c: C) {
        if k < self.coeffs.len() {
            self.coeffs[k] = c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero_element)
    }

    /// Smallest `k` with a nonzero coefficient of `h^k`.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero_element())
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, C::add)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, C::sub)
    }

    fn zip(&self, o: &Self, op: impl Fn(&C, &C) -> C) -> Self {
        debug_assert_eq!(self.order(), o.order());
        HSeries { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| op(a, b)).collect() }
    }

    pub fn scale(&self, s: &Q) -> Self {
        HSeries { coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect() }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_element() {
                continue;
            }
            for (j, b) in o.coeffs.iter().take(n + 1 - i).enumerate() {
                if b.is_zero_element() {
                    continue;
                }
                out.coeffs[i + j] = out.coeffs[i + j].add(&a.mul(b));
            }
        }
        out
    }

    /// Multiplies by `h^k`.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for i in 0..=n.saturating_sub(k) {
            if i + k <= n {
                out.coeffs[i + k] = self.coeffs[i].clone();
            }
        }
        out
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> HSeries<D> {
        HSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

impl HSeries<Q> {
    pub fn eval_f64(&self, h: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * h + to_f64(c))
    }
}

impl Poly {
    /// Substitutes truncated series for the variables.
    pub fn eval_series<C: Coefficient>(&self, args: &[HSeries<C>], order: usize) -> HSeries<C> {
        let mut total = HSeries::zero(order);
        let mut powers: std::collections::BTreeMap<(usize, u32), HSeries<C>> = Default::default();
        for (m, c) in self.terms() {
            let mut term = HSeries::constant(C::from_rational(c.clone()), order);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = powers.entry((i, e)).or_insert_with(|| {
                    let mut acc = args[i].clone();
                    for _ in 1..e {
                        acc = acc.mul(&args[i]);
                    }
                    acc
                });
                term = term.mul(p);
            }
            total = total.add(&term);
        }
        total
    }
}
