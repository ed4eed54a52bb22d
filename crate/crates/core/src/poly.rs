//! Sparse multivariate polynomials over exact rationals.
//!
//! A monomial is an exponent vector with trailing zeros trimmed, so the same
//! polynomial is valid in any ambient dimension at least as large as its
//! highest variable index. Zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::rational::Q;

/// Trimmed exponent vector.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of variables the monomial mentions (highest index + 1).
    pub fn span(&self) -> usize {
        self.0.len()
    }

    /// Exponents padded to length `dim`.
    pub fn padded(&self, dim: usize) -> Vec<u32> {
        let mut e = self.0.clone();
        e.resize(dim.max(e.len()), 0);
        e
    }

    fn mul(&self, o: &Monomial) -> Monomial {
        let (long, short) = if self.0.len() >= o.0.len() { (self, o) } else { (o, self) };
        let mut e = long.0.clone();
        for (x, y) in e.iter_mut().zip(&short.0) {
            *x += y;
        }
        Monomial(e)
    }

    fn shifted(&self, offset: usize) -> Monomial {
        if self.0.is_empty() {
            return self.clone();
        }
        let mut e = vec![0; offset];
        e.extend_from_slice(&self.0);
        Monomial(e)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Q>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = c.abs();
            let mut first = true;
            if !magnitude.is_one() || m.0.iter().all(|&e| e == 0) {
                write!(f, "{magnitude}")?;
                first = false;
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                match e {
                    1 => write!(f, "y{}", i + 1)?,
                    _ => write!(f, "y{}^{}", i + 1, e)?,
                }
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Q) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    /// The coordinate function `y_i` (0-based).
    pub fn var(i: usize) -> Self {
        Self::term(Monomial::var(i), Q::one())
    }

    pub fn term(m: Monomial, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    /// Product of the given variables (with repetition); the empty product is 1.
    pub fn product_of_vars(vars: &[usize]) -> Self {
        let mut e: Vec<u32> = Vec::new();
        for &v in vars {
            if e.len() <= v {
                e.resize(v + 1, 0);
            }
            e[v] += 1;
        }
        Self::term(Monomial::new(e), Q::one())
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Number of variables mentioned (highest index + 1).
    pub fn span(&self) -> usize {
        self.terms.keys().map(Monomial::span).max().unwrap_or(0)
    }

    pub fn constant_term(&self) -> Q {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Q::zero)
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }

    pub fn add_assign(&mut self, o: &Poly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, s: &Q) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            out.add_term(Monomial::new(exps), c * Q::from_integer(e.into()));
        }
        out
    }

    /// Renames `y_i` to `y_{i+offset}`.
    pub fn shift_vars(&self, offset: usize) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.shifted(offset), c.clone())).collect() }
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        self.eval_in(point)
    }

    /// Substitutes `args[i]` for `y_i` in any coefficient ring.
    pub fn eval_in<C: Coefficient>(&self, args: &[C]) -> C {
        let mut cache: BTreeMap<(usize, u32), C> = BTreeMap::new();
        let mut total = C::zero_element();
        for (m, c) in &self.terms {
            let mut term = C::from_rational(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = cache.entry((i, e)).or_insert_with(|| {
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

    /// Substitutes polynomials for the variables.
    pub fn compose(&self, args: &[Poly]) -> Poly {
        self.eval_in(args)
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut v = crate::rational::to_f64(c);
                for (i, &e) in m.0.iter().enumerate() {
                    v *= point[i].powi(e as i32);
                }
                v
            })
            .sum()
    }

    /// Directional derivative `Σ_k v_k ∂_k p` with the direction components
    /// treated as constants.
    pub fn directional(&self, dir: &[Poly]) -> Poly {
        let mut out = Poly::zero();
        for (k, v) in dir.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let d = self.derivative(k);
            if !d.is_zero() {
                out.add_assign(&d.mul(v));
            }
        }
        out
    }

    /// `p^{(m)}(y)(v₁,…,v_m)` for polynomial directions, each held constant
    /// while differentiating.
    pub fn multi_derivative(&self, dirs: &[&[Poly]]) -> Poly {
        match dirs.split_first() {
            None => self.clone(),
            Some((first, rest)) => {
                let mut out = Poly::zero();
                for (k, v) in first.iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    let d = self.derivative(k);
                    if d.is_zero() {
                        continue;
                    }
                    out.add_assign(&d.multi_derivative(rest).mul(v));
                }
                out
            }
        }
    }
}

/// Commutative coefficient ring used by truncated series and substitution.
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn zero_element() -> Self;
    fn from_rational(q: Q) -> Self;
    fn is_zero_element(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, s: &Q) -> Self;
}

impl Coefficient for Q {
    fn zero_element() -> Self {
        <Q as Zero>::zero()
    }
    fn from_rational(q: Q) -> Self {
        q
    }
    fn is_zero_element(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, s: &Q) -> Self {
        self * s
    }
}

impl Coefficient for Poly {
    fn zero_element() -> Self {
        Poly::zero()
    }
    fn from_rational(q: Q) -> Self {
        Poly::constant(q)
    }
    fn is_zero_element(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        Poly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Poly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Poly::mul(self, o)
    }
    fn scale(&self, s: &Q) -> Self {
        Poly::scale(self, s)
    }
}
