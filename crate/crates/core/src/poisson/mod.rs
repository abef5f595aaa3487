//! The Poisson cochain complex of a plane structure `F dx^dy`:
//!
//! ```text
//! 0 -> functions --d1--> vector fields --d2--> bivectors -> 0
//! d1(g) = F H_g,   d2(X) = (X.F - (div X) F) dx^dy,   H_g = g_y d/dx - g_x d/dy
//! ```
//!
//! Gradings: `d/dx` has quasidegree `-w1`, `d/dy` has `-w2` and `dx^dy` has
//! `-w1-w2`, so a coefficient monomial `m` contributes `deg(m) - w1` in the
//! `d/dx` slot and so on.

mod diffeo;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::qpoly::{monomials_of_degree, rat, Axis, Monomial, Poly, Rational, Weights};

pub use diffeo::{compose_diffeo, invert_diffeo, pushforward, JetDiffeo};

/// `a d/dx + b d/dy`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorField {
    pub a: Poly,
    pub b: Poly,
    pub weights: Weights,
}

impl VectorField {
    pub fn new(a: Poly, b: Poly, weights: Weights) -> Self {
        VectorField { a, b, weights }
    }

    pub fn zero(weights: Weights) -> Self {
        VectorField::new(Poly::zero(), Poly::zero(), weights)
    }

    /// The Euler field `w1 x d/dx + w2 y d/dy`.
    pub fn euler(w: Weights) -> Self {
        VectorField::new(
            Poly::x().scale(&rat(w.w1())),
            Poly::y().scale(&rat(w.w2())),
            w,
        )
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// The derivation `X.g`.
    pub fn apply(&self, g: &Poly) -> Poly {
        crate::qpoly::apply_field(&self.a, &self.b, g)
    }

    pub fn divergence(&self) -> Poly {
        &self.a.derive(Axis::X) + &self.b.derive(Axis::Y)
    }

    /// Componentwise product with a function.
    pub fn times(&self, g: &Poly) -> VectorField {
        VectorField::new(&self.a * g, &self.b * g, self.weights)
    }

    pub fn scale(&self, c: &Rational) -> VectorField {
        VectorField::new(self.a.scale(c), self.b.scale(c), self.weights)
    }

    /// The Lie bracket `[self, other]`.
    pub fn bracket(&self, other: &VectorField) -> VectorField {
        VectorField::new(
            &self.apply(&other.a) - &other.apply(&self.a),
            &self.apply(&other.b) - &other.apply(&self.b),
            self.weights,
        )
    }

    fn slot_degree(&self, axis: Axis, poly_degree: i64) -> i64 {
        poly_degree - self.weights.of(axis)
    }

    /// Quasihomogeneous components keyed by vector-field degree.
    pub fn graded_components(&self) -> BTreeMap<i64, VectorField> {
        let w = self.weights;
        let mut out: BTreeMap<i64, VectorField> = BTreeMap::new();
        for (k, p) in self.a.graded_components(w) {
            let e = out
                .entry(self.slot_degree(Axis::X, k))
                .or_insert_with(|| VectorField::zero(w));
            e.a = p;
        }
        for (k, p) in self.b.graded_components(w) {
            let e = out
                .entry(self.slot_degree(Axis::Y, k))
                .or_insert_with(|| VectorField::zero(w));
            e.b = p;
        }
        out
    }

    pub fn component(&self, k: i64) -> VectorField {
        let w = self.weights;
        VectorField::new(
            self.a.component(w, k + w.w1()),
            self.b.component(w, k + w.w2()),
            w,
        )
    }

    /// Drops every term of vector-field degree above `n`.
    pub fn truncate(&self, n: i64) -> VectorField {
        let w = self.weights;
        VectorField::new(
            self.a.truncate(w, n + w.w1()),
            self.b.truncate(w, n + w.w2()),
            w,
        )
    }

    /// Lowest vector-field degree present.
    pub fn order(&self) -> Option<i64> {
        let w = self.weights;
        let a = self.a.order(w).map(|d| d - w.w1());
        let b = self.b.order(w).map(|d| d - w.w2());
        a.into_iter().chain(b).min()
    }

    /// `Some(k)` when every term has vector-field degree `k`; `None` for zero or mixed.
    pub fn quasidegree(&self) -> Option<i64> {
        let comps = self.graded_components();
        (comps.len() == 1).then(|| *comps.keys().next().unwrap())
    }

    pub fn to_string_with(&self) -> String {
        format!(
            "({}) d/dx + ({}) d/dy",
            self.a.to_string_with(self.weights),
            self.b.to_string_with(self.weights)
        )
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with())
    }
}

impl<'a> Add<&'a VectorField> for &'a VectorField {
    type Output = VectorField;
    fn add(self, rhs: &'a VectorField) -> VectorField {
        VectorField::new(&self.a + &rhs.a, &self.b + &rhs.b, self.weights)
    }
}

impl<'a> Sub<&'a VectorField> for &'a VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &'a VectorField) -> VectorField {
        VectorField::new(&self.a - &rhs.a, &self.b - &rhs.b, self.weights)
    }
}

impl Neg for &VectorField {
    type Output = VectorField;
    fn neg(self) -> VectorField {
        VectorField::new(-&self.a, -&self.b, self.weights)
    }
}

/// `g dx^dy`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bivector {
    pub g: Poly,
    pub weights: Weights,
}

impl Bivector {
    pub fn new(g: Poly, weights: Weights) -> Self {
        Bivector { g, weights }
    }

    pub fn is_zero(&self) -> bool {
        self.g.is_zero()
    }

    /// Quasihomogeneous components keyed by bivector degree.
    pub fn graded_components(&self) -> BTreeMap<i64, Bivector> {
        let shift = self.weights.sum();
        self.g
            .graded_components(self.weights)
            .into_iter()
            .map(|(k, p)| (k - shift, Bivector::new(p, self.weights)))
            .collect()
    }

    /// Drops every term of bivector degree above `n`.
    pub fn truncate(&self, n: i64) -> Bivector {
        Bivector::new(
            self.g.truncate(self.weights, n + self.weights.sum()),
            self.weights,
        )
    }

    pub fn order(&self) -> Option<i64> {
        self.g.order(self.weights).map(|d| d - self.weights.sum())
    }

    pub fn quasidegree(&self) -> Option<i64> {
        let lo = self.order()?;
        let hi = self.g.max_degree(self.weights)? - self.weights.sum();
        (lo == hi).then_some(lo)
    }
}

impl fmt::Display for Bivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.g.to_string_with(self.weights))
    }
}

/// The germ `f (1 + h) dx^dy`; `h = 0` is the unperturbed structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoissonGerm {
    f: Poly,
    h: Poly,
    weights: Weights,
    d: i64,
}

impl PoissonGerm {
    /// Validates quasihomogeneity of `f` (degree `d > 0`, no constant term)
    /// and that `h` is zero or quasihomogeneous of degree `d - w1 - w2 >= 0`.
    pub fn new(f: Poly, h: Poly, weights: Weights) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::InvalidGerm("f must be nonzero".into()));
        }
        let d = f
            .is_quasihomogeneous(weights)?
            .ok_or(Error::NotQuasihomogeneous {
                w1: weights.w1() as u32,
                w2: weights.w2() as u32,
            })?;
        if d <= 0 {
            return Err(Error::InvalidGerm("f must vanish at the origin".into()));
        }
        let s = d - weights.sum();
        if !h.is_zero() {
            match h.is_quasihomogeneous(weights)? {
                Some(k) if k == s && s >= 0 => {}
                _ => {
                    return Err(Error::InvalidGerm(format!(
                        "h must be quasihomogeneous of degree {s}"
                    )))
                }
            }
        }
        if h.constant_term() == -rat(1) {
            return Err(Error::InvalidGerm("1 + h must be a unit".into()));
        }
        Ok(PoissonGerm { f, h, weights, d })
    }

    /// The unperturbed germ `f dx^dy`.
    pub fn unperturbed(f: Poly, weights: Weights) -> Result<Self> {
        PoissonGerm::new(f, Poly::zero(), weights)
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn h(&self) -> &Poly {
        &self.h
    }

    pub fn weights(&self) -> Weights {
        self.weights
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// The resonant degree `d - w1 - w2`, also the degree shift of both coboundaries.
    pub fn s(&self) -> i64 {
        self.d - self.weights.sum()
    }

    pub fn is_unperturbed(&self) -> bool {
        self.h.is_zero()
    }

    /// The same `f` with `h` dropped.
    pub fn pi0(&self) -> PoissonGerm {
        PoissonGerm {
            h: Poly::zero(),
            ..self.clone()
        }
    }

    /// `1 + h`.
    pub fn unit(&self) -> Poly {
        &Poly::one() + &self.h
    }

    /// The bivector coefficient `F = f (1 + h)`.
    pub fn coefficient(&self) -> Poly {
        &self.f * &self.unit()
    }
}

/// `H_g = g_y d/dx - g_x d/dy`.
pub fn hamiltonian_field(g: &Poly, w: Weights) -> VectorField {
    VectorField::new(g.derive(Axis::Y), -&g.derive(Axis::X), w)
}

pub fn divergence(x: &VectorField) -> Poly {
    x.divergence()
}

/// A potential `g` with `H_g = X`, found by integrating the closed form
/// `-b dx + a dy` along the coordinate axes; `None` unless `div X = 0`.
pub fn hamiltonian_potential(x: &VectorField) -> Option<Poly> {
    if !x.divergence().is_zero() {
        return None;
    }
    // g_x = -b, g_y = a
    let along_x = (-&x.b).integrate(Axis::X);
    let rest = &x.a - &along_x.derive(Axis::Y);
    let g = &along_x + &rest.integrate(Axis::Y);
    (hamiltonian_field(&g, x.weights) == *x).then_some(g)
}

/// `d1(g) = [g, Pi] = F H_g`.
pub fn delta1(germ: &PoissonGerm, g: &Poly) -> VectorField {
    delta1_with(&germ.coefficient(), g, germ.weights())
}

/// `d2(X) = [X, Pi] = (X.F - (div X) F) dx^dy`.
pub fn delta2(germ: &PoissonGerm, x: &VectorField) -> Bivector {
    delta2_with(&germ.coefficient(), x)
}

/// `d1` for an arbitrary coefficient `F`.
pub fn delta1_with(coefficient: &Poly, g: &Poly, w: Weights) -> VectorField {
    hamiltonian_field(g, w).times(coefficient)
}

/// `d2` for an arbitrary coefficient `F`.
pub fn delta2_with(coefficient: &Poly, x: &VectorField) -> Bivector {
    Bivector::new(
        &x.apply(coefficient) - &(&x.divergence() * coefficient),
        x.weights,
    )
}

/// Monomial basis of the vector fields of degree `m`: the `d/dx` slot
/// (degree `m + w1`) then the `d/dy` slot (degree `m + w2`).
pub fn field_monomials(w: Weights, m: i64) -> Vec<(Axis, Monomial)> {
    let xs = monomials_of_degree(w, m + w.w1())
        .into_iter()
        .map(|u| (Axis::X, u));
    let ys = monomials_of_degree(w, m + w.w2())
        .into_iter()
        .map(|u| (Axis::Y, u));
    xs.chain(ys).collect()
}

pub fn field_coordinates(x: &VectorField, basis: &[(Axis, Monomial)]) -> Vec<Rational> {
    basis
        .iter()
        .map(|(axis, u)| match axis {
            Axis::X => x.a.coeff(*u),
            Axis::Y => x.b.coeff(*u),
        })
        .collect()
}

pub fn field_from_coordinates(
    coords: &[Rational],
    basis: &[(Axis, Monomial)],
    w: Weights,
) -> VectorField {
    let mut out = VectorField::zero(w);
    for ((axis, u), c) in basis.iter().zip(coords) {
        match axis {
            Axis::X => out.a.add_term(*u, c.clone()),
            Axis::Y => out.b.add_term(*u, c.clone()),
        }
    }
    out
}

/// Monomial basis of the bivectors of degree `k`.
pub fn bivector_monomials(w: Weights, k: i64) -> Vec<Monomial> {
    monomials_of_degree(w, k + w.sum())
}
