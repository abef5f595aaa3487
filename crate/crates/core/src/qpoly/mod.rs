//! Exact bivariate polynomials over the rationals with a quasihomogeneous grading.
//!
//! The grading is fixed by a pair of positive [`Weights`] `(w1, w2)`: the
//! monomial `x^i y^j` has quasidegree `i*w1 + j*w2`. All truncation orders in
//! this crate are measured in quasidegree.

mod parse;
mod poly;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

pub use parse::parse_poly;
pub use poly::Poly;

/// Exact rational coefficients.
pub type Rational = BigRational;

/// Shorthand for the integer `n` as a [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num/den` as a reduced [`Rational`]. Panics if `den == 0`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Weights of `x` and `y`; the Euler field is `W = w1 x d/dx + w2 y d/dy`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Weights {
    w1: u32,
    w2: u32,
}

impl Weights {
    pub fn new(w1: i64, w2: i64) -> Result<Self> {
        if w1 < 1 || w2 < 1 || w1 > u32::MAX as i64 || w2 > u32::MAX as i64 {
            return Err(Error::InvalidWeights(w1, w2));
        }
        Ok(Weights {
            w1: w1 as u32,
            w2: w2 as u32,
        })
    }

    /// The standard grading by total degree.
    pub fn standard() -> Self {
        Weights { w1: 1, w2: 1 }
    }

    pub fn w1(&self) -> i64 {
        self.w1 as i64
    }

    pub fn w2(&self) -> i64 {
        self.w2 as i64
    }

    /// Weight of the given coordinate axis.
    pub fn of(&self, axis: Axis) -> i64 {
        match axis {
            Axis::X => self.w1(),
            Axis::Y => self.w2(),
        }
    }

    pub fn max(&self) -> i64 {
        self.w1.max(self.w2) as i64
    }

    pub fn min(&self) -> i64 {
        self.w1.min(self.w2) as i64
    }

    pub fn sum(&self) -> i64 {
        self.w1() + self.w2()
    }

    pub fn degree(&self, m: Monomial) -> i64 {
        m.i as i64 * self.w1() + m.j as i64 * self.w2()
    }

    /// Canonical monomial order: quasidegree ascending, then x-exponent ascending.
    pub fn canonical_cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.degree(*a).cmp(&self.degree(*b)).then(a.i.cmp(&b.i))
    }
}

impl fmt::Display for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.w1, self.w2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

/// The monomial `x^i y^j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub i: u32,
    pub j: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { i: 0, j: 0 };

    pub fn new(i: u32, j: u32) -> Self {
        Monomial { i, j }
    }

    pub fn mul(self, other: Monomial) -> Monomial {
        Monomial::new(self.i + other.i, self.j + other.j)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(self, other: Monomial) -> Option<Monomial> {
        if self.i >= other.i && self.j >= other.j {
            Some(Monomial::new(self.i - other.i, self.j - other.j))
        } else {
            None
        }
    }

    pub fn exponent(self, axis: Axis) -> u32 {
        match axis {
            Axis::X => self.i,
            Axis::Y => self.j,
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("x", self.i), ("y", self.j)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// All monomials of quasidegree exactly `k`, in canonical order.
pub fn monomials_of_degree(w: Weights, k: i64) -> Vec<Monomial> {
    if k < 0 {
        return Vec::new();
    }
    (0..=k / w.w1())
        .filter_map(|i| {
            let rest = k - i * w.w1();
            (rest % w.w2() == 0).then(|| Monomial::new(i as u32, (rest / w.w2()) as u32))
        })
        .collect()
}

/// All monomials with quasidegree in `lo..=hi`, in canonical order.
pub fn monomials_in_range(w: Weights, lo: i64, hi: i64) -> Vec<Monomial> {
    (lo.max(0)..=hi)
        .flat_map(|k| monomials_of_degree(w, k))
        .collect()
}

/// Partial derivative along `axis`.
pub fn derive(g: &Poly, axis: Axis) -> Poly {
    g.derive(axis)
}

/// The directional derivative `(A d/dx + B d/dy).g`.
pub fn apply_field(a: &Poly, b: &Poly, g: &Poly) -> Poly {
    &(a * &g.derive(Axis::X)) + &(b * &g.derive(Axis::Y))
}

pub fn graded_components(g: &Poly, w: Weights) -> std::collections::BTreeMap<i64, Poly> {
    g.graded_components(w)
}

pub fn is_quasihomogeneous(g: &Poly, w: Weights) -> Result<Option<i64>> {
    g.is_quasihomogeneous(w)
}

/// `q` with `q*u = g` modulo terms of quasidegree above `n`.
pub fn unit_divide(g: &Poly, u: &Poly, w: Weights, n: i64) -> Result<Poly> {
    g.unit_divide(u, w, n)
}

/// `exp(nu)` truncated above quasidegree `n`; `nu` must vanish at the origin.
pub fn exp_unit(nu: &Poly, w: Weights, n: i64) -> Result<Poly> {
    nu.exp_unit(w, n)
}
