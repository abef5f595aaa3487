//! The Milnor algebra `Q_f = K[x, y] / (f_x, f_y)` of a quasihomogeneous `f`,
//! computed one quasidegree at a time.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix};
use crate::qpoly::{monomials_of_degree, Axis, Monomial, Poly, Rational, Weights};

/// Dimension of `Q_f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Codimension {
    Finite(usize),
    Infinite,
}

impl Codimension {
    pub fn finite(self) -> Option<usize> {
        match self {
            Codimension::Finite(c) => Some(c),
            Codimension::Infinite => None,
        }
    }
}

impl fmt::Display for Codimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Codimension::Finite(c) => write!(f, "{c}"),
            Codimension::Infinite => write!(f, "infinite"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MilnorData {
    pub codim: Codimension,
    /// Monomial basis `u_1..u_c` of `Q_f` in canonical order (complement
    /// monomials found so far when the codimension is infinite).
    pub basis: Vec<Monomial>,
    /// `2d - 2 w1 - 2 w2`, the top degree of a basis element.
    pub bound: i64,
    pub checked_through: i64,
}

/// `g - normal_form = p f_x + q f_y`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IdealWitness {
    pub p: Poly,
    pub q: Poly,
}

fn degree_of(f: &Poly, w: Weights) -> Result<i64> {
    f.is_quasihomogeneous(w)?.ok_or(Error::NotQuasihomogeneous {
        w1: w.w1() as u32,
        w2: w.w2() as u32,
    })
}

/// Coordinates of `g` (assumed homogeneous of degree `k`) on the monomials of degree `k`.
pub(crate) fn coordinates(g: &Poly, monos: &[Monomial]) -> Vec<Rational> {
    monos.iter().map(|m| g.coeff(*m)).collect()
}

/// The quasidegree-`k` piece of `I_f` is spanned by `m f_x`, `deg m = k - (d - w1)`,
/// and `m f_y`, `deg m = k - (d - w2)`; returned in that order.
pub fn graded_ideal_piece(f: &Poly, w: Weights, k: i64) -> Result<Vec<Poly>> {
    let d = degree_of(f, w)?;
    let (fx, fy) = (f.derive(Axis::X), f.derive(Axis::Y));
    Ok(ideal_generators(&fx, &fy, w, d, k)
        .into_iter()
        .map(|(_, _, g)| g)
        .collect())
}

/// `(axis, multiplier, multiplier * partial)` for the degree-`k` piece.
fn ideal_generators(
    fx: &Poly,
    fy: &Poly,
    w: Weights,
    d: i64,
    k: i64,
) -> Vec<(Axis, Monomial, Poly)> {
    let mut out = Vec::new();
    for (axis, partial) in [(Axis::X, fx), (Axis::Y, fy)] {
        if partial.is_zero() {
            continue;
        }
        for m in monomials_of_degree(w, k - (d - w.of(axis))) {
            out.push((axis, m, partial.mul_monomial(m, &Rational::one())));
        }
    }
    out
}

/// Cached data for reductions modulo `I_f`.
#[derive(Debug, Clone)]
pub struct MilnorAlgebra {
    f: Poly,
    fx: Poly,
    fy: Poly,
    weights: Weights,
    d: i64,
    data: MilnorData,
}

impl MilnorAlgebra {
    pub fn new(f: &Poly, w: Weights) -> Result<Self> {
        let d = degree_of(f, w)?;
        if d <= 0 {
            return Err(Error::InvalidGerm("f must vanish at the origin".into()));
        }
        let fx = f.derive(Axis::X);
        let fy = f.derive(Axis::Y);
        let bound = 2 * d - 2 * w.sum();
        let top = bound.max(0) + w.max();
        let mut basis = Vec::new();
        let mut infinite = false;
        for k in 0..=top {
            let monos = monomials_of_degree(w, k);
            if monos.is_empty() {
                continue;
            }
            let mut span = Echelon::new(monos.len());
            for (_, _, g) in ideal_generators(&fx, &fy, w, d, k) {
                span.insert(&coordinates(&g, &monos));
            }
            for (idx, m) in monos.iter().enumerate() {
                let mut e = vec![Rational::zero(); monos.len()];
                e[idx] = Rational::one();
                if span.insert(&e) {
                    basis.push(*m);
                    infinite |= k > bound;
                }
            }
        }
        let codim = if infinite {
            Codimension::Infinite
        } else {
            Codimension::Finite(basis.len())
        };
        Ok(MilnorAlgebra {
            f: f.clone(),
            fx,
            fy,
            weights: w,
            d,
            data: MilnorData {
                codim,
                basis,
                bound,
                checked_through: top,
            },
        })
    }

    pub fn data(&self) -> &MilnorData {
        &self.data
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn weights(&self) -> Weights {
        self.weights
    }

    pub fn is_finite(&self) -> bool {
        self.data.codim != Codimension::Infinite
    }

    /// Basis monomials of quasidegree `k`.
    pub fn basis_in_degree(&self, k: i64) -> Vec<Monomial> {
        let w = self.weights;
        self.data
            .basis
            .iter()
            .copied()
            .filter(|m| w.degree(*m) == k)
            .collect()
    }

    /// Splits `g` as `normal_form + p f_x + q f_y` with `normal_form` in the span of the basis.
    pub fn reduce(&self, g: &Poly) -> Result<(Poly, IdealWitness)> {
        if !self.is_finite() {
            return Err(Error::InfiniteCodimension);
        }
        let w = self.weights;
        let mut nf = Poly::zero();
        let mut wit = IdealWitness::default();
        for (k, gk) in g.graded_components(w) {
            let (n, p, q) = self.reduce_homogeneous(k, &gk);
            nf = &nf + &n;
            wit.p = &wit.p + &p;
            wit.q = &wit.q + &q;
        }
        Ok((nf, wit))
    }

    fn reduce_homogeneous(&self, k: i64, g: &Poly) -> (Poly, Poly, Poly) {
        let w = self.weights;
        let monos = monomials_of_degree(w, k);
        let us = self.basis_in_degree(k);
        let gens = ideal_generators(&self.fx, &self.fy, w, self.d, k);
        let mut columns: Vec<Vec<Rational>> = us
            .iter()
            .map(|u| coordinates(&Poly::monomial(*u, Rational::one()), &monos))
            .collect();
        columns.extend(gens.iter().map(|(_, _, gen)| coordinates(gen, &monos)));
        let z = Matrix::from_columns(monos.len(), &columns)
            .solve(&coordinates(g, &monos))
            .expect("basis and ideal span every graded piece");
        let nf = Poly::from_terms(us.iter().copied().zip(z.iter().cloned()));
        let mut p = Poly::zero();
        let mut q = Poly::zero();
        for ((axis, m, _), c) in gens.iter().zip(&z[us.len()..]) {
            if c.is_zero() {
                continue;
            }
            match axis {
                Axis::X => p.add_term(*m, c.clone()),
                Axis::Y => q.add_term(*m, c.clone()),
            }
        }
        (nf, p, q)
    }

    /// Coordinates of `g` on the basis, modulo the ideal.
    pub fn normal_form_coordinates(&self, g: &Poly) -> Result<Vec<Rational>> {
        let (nf, _) = self.reduce(g)?;
        Ok(self.data.basis.iter().map(|u| nf.coeff(*u)).collect())
    }
}

pub fn milnor_data(f: &Poly, w: Weights) -> Result<MilnorData> {
    Ok(MilnorAlgebra::new(f, w)?.data)
}

pub fn reduce_mod_ideal(g: &Poly, f: &Poly, w: Weights) -> Result<(Poly, IdealWitness)> {
    MilnorAlgebra::new(f, w)?.reduce(g)
}

/// Monomials of degree `d - w1 - w2`, the resonant degree.
pub fn resonant_monomials(w: Weights, d: i64) -> Vec<Monomial> {
    monomials_of_degree(w, d - w.sum())
}
