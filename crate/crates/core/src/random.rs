//! Seeded generators for random test instances. The same seed always gives
//! the same instance.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fields::{PolyMap, PolyVectorField, RationalPoint};
use crate::poly::{Monomial, Poly};
use crate::rational::{q, Q};

pub struct InstanceGenerator {
    rng: ChaCha8Rng,
}

impl InstanceGenerator {
    pub fn new(seed: u64) -> Self {
        InstanceGenerator { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Nonzero rational with numerator in `±1..=3` and denominator `1..=3`.
    pub fn coefficient(&mut self) -> Q {
        let n: i64 = self.rng.gen_range(1..=3) * if self.rng.gen_bool(0.5) { 1 } else { -1 };
        q(n, self.rng.gen_range(1..=3))
    }

    /// Small rational in `[-2, 2]`, possibly zero.
    pub fn coordinate(&mut self) -> Q {
        q(self.rng.gen_range(-4..=4), 2)
    }

    fn monomial(&mut self, dim: usize, max_degree: u32) -> Monomial {
        let degree = self.rng.gen_range(0..=max_degree);
        let mut e = vec![0u32; dim];
        for _ in 0..degree {
            e[self.rng.gen_range(0..dim)] += 1;
        }
        Monomial::new(e)
    }

    /// Sparse polynomial with 1 to `max_terms` terms of degree `≤ max_degree`.
    pub fn poly(&mut self, dim: usize, max_degree: u32, max_terms: usize) -> Poly {
        let terms = self.rng.gen_range(1..=max_terms);
        let mut p = Poly::zero();
        for _ in 0..terms {
            let m = self.monomial(dim, max_degree);
            let c = self.coefficient();
            p.add_term(m, c);
        }
        p
    }

    /// Polynomial field with at most three terms per component, at least
    /// one of them of degree exactly `degree`.
    pub fn field(&mut self, dim: usize, degree: u32) -> PolyVectorField {
        let mut comps: Vec<Poly> = (0..dim).map(|_| self.poly(dim, degree, 3)).collect();
        let top = self.homogeneous_monomial(dim, degree);
        let c = self.coefficient();
        let slot = self.rng.gen_range(0..dim);
        comps[slot].add_term(top, c);
        PolyVectorField::new(dim, comps).expect("dimensions agree")
    }

    fn homogeneous_monomial(&mut self, dim: usize, degree: u32) -> Monomial {
        let mut e = vec![0u32; dim];
        for _ in 0..degree {
            e[self.rng.gen_range(0..dim)] += 1;
        }
        Monomial::new(e)
    }

    /// Observable `ℝ^dim → ℝ^out` of degree `≤ degree` with a term of degree
    /// exactly `degree` in the first component.
    pub fn observable(&mut self, dim: usize, out: usize, degree: u32) -> PolyMap {
        let mut comps: Vec<Poly> = (0..out).map(|_| self.poly(dim, degree, 3)).collect();
        let top = self.homogeneous_monomial(dim, degree);
        let c = self.coefficient();
        comps[0].add_term(top, c);
        PolyMap::new(dim, comps).expect("dimensions agree")
    }

    pub fn point(&mut self, dim: usize) -> RationalPoint {
        RationalPoint((0..dim).map(|_| self.coordinate()).collect())
    }

    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }

    pub fn choose<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        items.choose(&mut self.rng).expect("non-empty")
    }
}
