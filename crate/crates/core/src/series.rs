//! Exact truncated power series in several variables, with coefficients in
//! the rationals or in univariate rational polynomials.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::linalg::Rational;

/// Coefficient ring operations used by the series engine.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn nil() -> Self;
    fn unit() -> Self;
    fn vanishes(&self) -> bool;
    fn add_mul(&mut self, a: &Self, b: &Self);
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, when it exists.
    fn inv(&self) -> Option<Self>;
}

impl Coeff for Rational {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

/// Polynomial in one variable `t` with rational coefficients, stored in
/// ascending degree with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly(Vec<Rational>);

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Poly::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.0.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }
}

impl Coeff for Poly {
    fn nil() -> Self {
        Poly::default()
    }
    fn unit() -> Self {
        Poly::constant(Rational::one())
    }
    fn vanishes(&self) -> bool {
        self.0.is_empty()
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self = self.add(&Coeff::mul(a, b));
    }
    fn mul(&self, other: &Self) -> Self {
        if self.0.is_empty() || other.0.is_empty() {
            return Poly::default();
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
    fn scale(&self, r: &Rational) -> Self {
        Poly::new(self.0.iter().map(|c| c * r).collect())
    }
    fn neg(&self) -> Self {
        Poly(self.0.iter().map(|c| -c).collect())
    }
    fn inv(&self) -> Option<Self> {
        match self.0.as_slice() {
            [c] => Some(Poly::constant(c.recip())),
            _ => None,
        }
    }
}

impl fmt::Display for Poly {
    /// Descending degree, exact coefficients: `t^2 + 3/2 t + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            match deg {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag} ")?;
                    }
                    if deg == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{deg}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

pub type Exponent = Vec<u32>;

/// Power series truncated to the box `e ≤ bounds` componentwise, stored
/// sparsely by exponent vector.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<C> {
    bounds: Exponent,
    terms: BTreeMap<Exponent, C>,
}

impl<C: Coeff> TruncatedSeries<C> {
    pub fn zero(bounds: Exponent) -> Self {
        TruncatedSeries {
            bounds,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(bounds: Exponent, c: C) -> Self {
        let mut s = Self::zero(bounds);
        let origin = vec![0; s.bounds.len()];
        s.add_term(origin, c);
        s
    }

    pub fn bounds(&self) -> &[u32] {
        &self.bounds
    }

    pub fn num_vars(&self) -> usize {
        self.bounds.len()
    }

    pub fn fits(&self, e: &[u32]) -> bool {
        e.iter().zip(&self.bounds).all(|(x, b)| x <= b)
    }

    /// Adds `c z^e`; terms outside the box are dropped.
    pub fn add_term(&mut self, e: Exponent, c: C) {
        if c.vanishes() || !self.fits(&e) {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_mul(&c, &C::unit());
                if o.get().vanishes() {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, e: &[u32]) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::nil)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&vec![0; self.bounds.len()])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        TruncatedSeries {
            bounds: self.bounds.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.scale(r)))
                .filter(|(_, c)| !c.vanishes())
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.bounds, other.bounds, "series live in different boxes");
        let mut acc: BTreeMap<Exponent, C> = BTreeMap::new();
        let mut e = vec![0u32; self.bounds.len()];
        for (ea, ca) in &self.terms {
            'inner: for (eb, cb) in &other.terms {
                for i in 0..e.len() {
                    e[i] = ea[i] + eb[i];
                    if e[i] > self.bounds[i] {
                        continue 'inner;
                    }
                }
                match acc.get_mut(&e) {
                    Some(c) => c.add_mul(ca, cb),
                    None => {
                        acc.insert(e.clone(), ca.mul(cb));
                    }
                }
            }
        }
        acc.retain(|_, c| !c.vanishes());
        TruncatedSeries {
            bounds: self.bounds.clone(),
            terms: acc,
        }
    }

    /// Multiplicative inverse of a series whose constant term is a unit,
    /// by the triangular recurrence `h_m = -f_0^{-1} Σ_{0<e≤m} f_e h_{m-e}`.
    pub fn inverse(&self) -> Option<Self> {
        let f0inv = self.constant_term().inv()?;
        let n = self.bounds.len();
        let origin = vec![0u32; n];
        let rest: Vec<(&Exponent, &C)> = self.terms.iter().filter(|(e, _)| **e != origin).collect();
        let mut out: BTreeMap<Exponent, C> = BTreeMap::new();
        let mut m = origin.clone();
        loop {
            let value = if m == origin {
                f0inv.clone()
            } else {
                let mut s = C::nil();
                let mut diff = vec![0u32; n];
                'terms: for (e, c) in &rest {
                    for i in 0..n {
                        if e[i] > m[i] {
                            continue 'terms;
                        }
                        diff[i] = m[i] - e[i];
                    }
                    if let Some(h) = out.get(&diff) {
                        s.add_mul(c, h);
                    }
                }
                s.mul(&f0inv).neg()
            };
            if !value.vanishes() {
                out.insert(m.clone(), value);
            }
            if !next_in_box(&mut m, &self.bounds) {
                break;
            }
        }
        Some(TruncatedSeries {
            bounds: self.bounds.clone(),
            terms: out,
        })
    }

    /// `Σ_j c_j self^j` by Horner's rule; `self` must have zero constant term
    /// so that the truncation is exact.
    pub fn compose(&self, coeffs: &[Rational]) -> Self {
        assert!(
            self.constant_term().vanishes(),
            "composition needs a zero constant term"
        );
        let mut acc = Self::zero(self.bounds.clone());
        for c in coeffs.iter().rev() {
            acc = acc.mul(self);
            acc.add_term(vec![0; self.bounds.len()], C::unit().scale(c));
        }
        acc
    }

    /// Largest total degree that survives truncation.
    pub fn max_total_degree(&self) -> u32 {
        self.bounds.iter().sum()
    }

    /// `exp(self)` for a series with zero constant term.
    pub fn exp(&self) -> Self {
        let n = self.max_total_degree() as usize;
        self.compose(&exp_coefficients(n))
    }
}

/// Next exponent vector of the box in lexicographic order.
pub fn next_in_box(m: &mut [u32], bounds: &[u32]) -> bool {
    for i in (0..m.len()).rev() {
        if m[i] < bounds[i] {
            m[i] += 1;
            for x in &mut m[i + 1..] {
                *x = 0;
            }
            return true;
        }
    }
    false
}

/// Coefficient of `z^target` in the product `a·b`, without forming it.
pub fn product_coefficient<A: Coeff>(
    a: &TruncatedSeries<A>,
    b: &TruncatedSeries<A>,
    target: &[u32],
) -> A {
    let mut s = A::nil();
    let mut diff = vec![0u32; target.len()];
    'terms: for (e, c) in a.terms() {
        for i in 0..target.len() {
            if e[i] > target[i] {
                continue 'terms;
            }
            diff[i] = target[i] - e[i];
        }
        if let Some(d) = b.terms.get(&diff) {
            s.add_mul(c, d);
        }
    }
    s
}

/// `1/j!` for `j = 0..=n`.
pub fn exp_coefficients(n: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n + 1);
    let mut f = Rational::one();
    for j in 0..=n {
        if j > 0 {
            f /= Rational::from_integer(j.into());
        }
        out.push(f.clone());
    }
    out
}

/// Taylor coefficients of `y / (1 - e^{-y})` up to degree `n`.
pub fn todd_coefficients(n: usize) -> Vec<Rational> {
    // (1 - e^{-y}) / y = Σ (-1)^j y^j / (j+1)!
    let fact = exp_coefficients(n + 1);
    let u: Vec<Rational> = (0..=n)
        .map(|j| {
            if j % 2 == 0 {
                fact[j + 1].clone()
            } else {
                -&fact[j + 1]
            }
        })
        .collect();
    let mut inv = vec![Rational::zero(); n + 1];
    inv[0] = Rational::one();
    for m in 1..=n {
        let s: Rational = (1..=m).map(|e| &u[e] * &inv[m - e]).sum();
        inv[m] = -s;
    }
    inv
}
