//! Explicit bases of `H^0`, `H^1`, `H^2` for `f dx^dy` and `f (1 + h) dx^dy`,
//! and constructive reduction of cocycles onto them.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::milnor::{Codimension, MilnorAlgebra};
use crate::poisson::{
    delta1, delta2, delta2_with, field_coordinates, field_monomials, hamiltonian_field, Bivector,
    PoissonGerm, VectorField,
};
use crate::qpoly::{monomials_of_degree, Monomial, Poly, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Theorem,
    Oracle,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Theorem => "THEOREM",
            Provenance::Oracle => "ORACLE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyReport {
    pub h0_dim: usize,
    pub h1_dim: usize,
    pub h2_dim: usize,
    pub h1_basis: Vec<VectorField>,
    pub h2_basis: Vec<Bivector>,
    pub r: usize,
    pub c: usize,
    pub provenance: Provenance,
}

impl CohomologyReport {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.h0_dim, self.h1_dim, self.h2_dim)
    }
}

/// Coordinates on a cohomology basis plus a primitive: `input - sum coords_i b_i - delta(witness)`
/// has order above `residual_order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleReduction<W> {
    pub coords: Vec<Rational>,
    pub witness: W,
    pub residual_order: i64,
}

fn milnor(germ: &PoissonGerm) -> Result<MilnorAlgebra> {
    let m = MilnorAlgebra::new(germ.f(), germ.weights())?;
    if m.data().codim == Codimension::Infinite {
        return Err(Error::InfiniteCodimension);
    }
    Ok(m)
}

fn resonant(germ: &PoissonGerm) -> Vec<Monomial> {
    monomials_of_degree(germ.weights(), germ.s())
}

fn mono(m: Monomial) -> Poly {
    Poly::monomial(m, Rational::one())
}

/// `H^0` is spanned by the constants.
pub fn h0(germ: &PoissonGerm) -> Result<Vec<Poly>> {
    milnor(germ)?;
    Ok(vec![Poly::one()])
}

/// `(1+h) H_f` followed by `(1+h) e_i W`.
pub fn h1_basis(germ: &PoissonGerm) -> Result<Vec<VectorField>> {
    milnor(germ)?;
    Ok(h1_representatives(germ))
}

fn h1_representatives(germ: &PoissonGerm) -> Vec<VectorField> {
    let w = germ.weights();
    let unit = germ.unit();
    let euler = VectorField::euler(w);
    std::iter::once(hamiltonian_field(germ.f(), w))
        .chain(resonant(germ).into_iter().map(|e| euler.times(&mono(e))))
        .map(|v| v.times(&unit))
        .collect()
}

/// `e_i f` followed by `u_j`; the same family serves `h = 0` and `h != 0`.
pub fn h2_basis(germ: &PoissonGerm) -> Result<Vec<Bivector>> {
    let m = milnor(germ)?;
    Ok(h2_representatives(germ, &m))
}

fn h2_representatives(germ: &PoissonGerm, m: &MilnorAlgebra) -> Vec<Bivector> {
    let w = germ.weights();
    resonant(germ)
        .into_iter()
        .map(|e| germ.f().mul_monomial(e, &Rational::one()))
        .chain(m.data().basis.iter().map(|u| mono(*u)))
        .map(|g| Bivector::new(g, w))
        .collect()
}

/// Dimensions `(1, r + 1, r + c)` with explicit representatives.
pub fn theorem_report(germ: &PoissonGerm) -> Result<CohomologyReport> {
    let m = milnor(germ)?;
    let r = resonant(germ).len();
    let c = m.data().basis.len();
    let h1_basis = h1_representatives(germ);
    let h2_basis = h2_representatives(germ, &m);
    Ok(CohomologyReport {
        h0_dim: 1,
        h1_dim: h1_basis.len(),
        h2_dim: h2_basis.len(),
        h1_basis,
        h2_basis,
        r,
        c,
        provenance: Provenance::Theorem,
    })
}

/// Lowest bivector degree at which `delta2(X)` is nonzero, looking through `n`.
fn cocycle_defect(germ: &PoissonGerm, x: &VectorField, n: i64) -> Option<i64> {
    delta2(germ, x).truncate(n).order()
}

/// Reduces a 1-cocycle `X` onto `[(1+h) H_f], [(1+h) e_i W]` through vector-field degree `n`.
pub fn reduce_cocycle_h1(
    germ: &PoissonGerm,
    x: &VectorField,
    n: i64,
) -> Result<CocycleReduction<Poly>> {
    milnor(germ)?;
    let w = germ.weights();
    let s = germ.s();
    if let Some(k) = cocycle_defect(germ, x, n + s) {
        return Err(Error::NotACocycle { degree: k });
    }
    // X is a (1+h)-cocycle iff X/(1+h) is an (h=0)-cocycle, with the same coordinates and primitive
    let y = if germ.is_unperturbed() {
        x.truncate(n)
    } else {
        let unit = germ.unit();
        VectorField::new(
            x.a.unit_divide(&unit, w, n + w.w1())?,
            x.b.unit_divide(&unit, w, n + w.w2())?,
            w,
        )
    };
    let base = germ.pi0();
    let f = germ.f();
    let hf = hamiltonian_field(f, w);
    let es = resonant(germ);
    let euler = VectorField::euler(w);
    let mut coords = vec![Rational::zero(); 1 + es.len()];
    let mut witness = Poly::zero();
    let lowest = y.order().unwrap_or(n + 1);
    for m in lowest..=n {
        let ym = y.component(m);
        if ym.is_zero() {
            continue;
        }
        let basis = field_monomials(w, m);
        let mut columns = Vec::new();
        let fixed = if m == s {
            columns.push(field_coordinates(&hf, &basis));
            for e in &es {
                columns.push(field_coordinates(&euler.times(&mono(*e)), &basis));
            }
            columns.len()
        } else {
            0
        };
        let sources = monomials_of_degree(w, m - s);
        for g in &sources {
            columns.push(field_coordinates(&delta1(&base, &mono(*g)), &basis));
        }
        let z = Matrix::from_columns(basis.len(), &columns)
            .solve(&field_coordinates(&ym, &basis))
            .ok_or(Error::Unreduced { degree: m })?;
        for (c, v) in coords.iter_mut().zip(&z[..fixed]) {
            *c += v;
        }
        for (g, v) in sources.iter().zip(&z[fixed..]) {
            if !v.is_zero() {
                witness.add_term(*g, v.clone());
            }
        }
    }
    Ok(CocycleReduction {
        coords,
        witness,
        residual_order: n,
    })
}

impl CocycleReduction<Poly> {
    /// Re-expands the reduction and checks the residual exactly.
    pub fn verify_h1(&self, germ: &PoissonGerm, x: &VectorField) -> bool {
        let basis = h1_representatives(germ);
        if basis.len() != self.coords.len() {
            return false;
        }
        let mut rest = x - &delta1(germ, &self.witness);
        for (b, c) in basis.iter().zip(&self.coords) {
            rest = &rest - &b.scale(c);
        }
        rest.truncate(self.residual_order).is_zero()
    }
}

/// Reduces the bivector `P` onto `[e_i f], [u_j]` through bivector degree `n`.
pub fn reduce_cocycle_h2(
    germ: &PoissonGerm,
    p: &Bivector,
    n: i64,
) -> Result<CocycleReduction<VectorField>> {
    let m = milnor(germ)?;
    let w = germ.weights();
    let s = germ.s();
    let top = n + w.sum();
    let es = resonant(germ);
    let us = m.data().basis.clone();
    let mut coords = vec![Rational::zero(); es.len() + us.len()];
    let mut witness = VectorField::zero(w);
    if s == 0 && !germ.is_unperturbed() {
        // constant h: the structure is (1 + h) f dx^dy, a rescaled copy of f dx^dy
        let red = reduce_unperturbed(germ, &m, &es, &us, &p.g.truncate(w, top))?;
        let scale = germ.unit().constant_term().recip();
        return Ok(CocycleReduction {
            coords: red.0,
            witness: red.1.scale(&scale),
            residual_order: n,
        });
    }
    let fh = germ.f() * germ.h();
    let mut rest = p.g.truncate(w, top);
    // each pass raises the order of the remainder by s > 0
    while !rest.is_zero() {
        let (c, y) = reduce_unperturbed(germ, &m, &es, &us, &rest)?;
        for (acc, v) in coords.iter_mut().zip(&c) {
            *acc += v;
        }
        if germ.is_unperturbed() {
            witness = &witness + &y;
            break;
        }
        rest = (-&delta2_with(&fh, &y).g).truncate(w, top);
        witness = &witness + &y;
    }
    Ok(CocycleReduction {
        coords,
        witness,
        residual_order: n,
    })
}

/// Exact splitting `g = sum a_i e_i f + sum b_j u_j + delta2(Y)` for `h = 0`.
fn reduce_unperturbed(
    germ: &PoissonGerm,
    m: &MilnorAlgebra,
    es: &[Monomial],
    us: &[Monomial],
    g: &Poly,
) -> Result<(Vec<Rational>, VectorField)> {
    let w = germ.weights();
    let s = germ.s();
    let (nf, wit) = m.reduce(g)?;
    let x = VectorField::new(wit.p, wit.q, w);
    let div = x.divergence();
    let mut y = x;
    // delta2(a W) = (s - i) a f for a of degree i
    for (i, a) in div.graded_components(w) {
        if i != s {
            let coef = Rational::one() / Rational::from_integer((s - i).into());
            y = &y + &VectorField::euler(w).times(&a.scale(&coef));
        }
    }
    let top = div.component(w, s);
    let coords = es
        .iter()
        .map(|e| top.coeff(*e))
        .chain(us.iter().map(|u| nf.coeff(*u)))
        .collect();
    Ok((coords, y))
}

impl CocycleReduction<VectorField> {
    /// Re-expands the reduction and checks the residual exactly.
    pub fn verify_h2(&self, germ: &PoissonGerm, p: &Bivector) -> bool {
        let Ok(basis) = h2_basis(germ) else {
            return false;
        };
        if basis.len() != self.coords.len() {
            return false;
        }
        let mut rest = &p.g - &delta2(germ, &self.witness).g;
        for (b, c) in basis.iter().zip(&self.coords) {
            rest = &rest - &b.g.scale(c);
        }
        Bivector::new(rest, germ.weights())
            .truncate(self.residual_order)
            .is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::{parse_poly, rat, Weights};

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    fn w(a: i64, b: i64) -> Weights {
        Weights::new(a, b).unwrap()
    }

    fn morse() -> PoissonGerm {
        PoissonGerm::unperturbed(p("x^2+y^2"), w(1, 1)).unwrap()
    }

    fn d5() -> PoissonGerm {
        PoissonGerm::new(p("x^2*y+y^4"), p("x"), w(3, 2)).unwrap()
    }

    #[test]
    fn h0_examples() {
        assert_eq!(h0(&morse()).unwrap(), vec![Poly::one()]);
        let regular = PoissonGerm::unperturbed(p("x"), w(1, 1)).unwrap();
        assert_eq!(h0(&regular).unwrap().len(), 1);
        assert_eq!(h0(&d5()).unwrap().len(), 1);
        let bad = PoissonGerm::unperturbed(p("x^2"), w(1, 1)).unwrap();
        assert_eq!(h0(&bad), Err(Error::InfiniteCodimension));
    }

    #[test]
    fn h1_examples() {
        let b = h1_basis(&morse()).unwrap();
        assert_eq!(b[0], VectorField::new(p("2*y"), p("-2*x"), w(1, 1)));
        assert_eq!(b[1], VectorField::euler(w(1, 1)));
        let regular = PoissonGerm::unperturbed(p("x"), w(1, 1)).unwrap();
        let b = h1_basis(&regular).unwrap();
        assert_eq!(b, vec![VectorField::new(Poly::zero(), p("-1"), w(1, 1))]);
        let b = h1_basis(&d5()).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b[0].a, p("(1+x)*(x^2+4*y^3)"));
        assert_eq!(b[0].b, p("(1+x)*(-2*x*y)"));
        assert_eq!(b[1].a, p("(1+x)*x*3*x"));
        assert_eq!(b[1].b, p("(1+x)*x*2*y"));
    }

    #[test]
    fn h1_representatives_are_cocycles() {
        for g in [morse(), d5()] {
            for b in h1_basis(&g).unwrap() {
                assert!(delta2(&g, &b).is_zero());
            }
        }
    }

    #[test]
    fn h2_examples() {
        let b = h2_basis(&morse()).unwrap();
        let gs: Vec<Poly> = b.into_iter().map(|v| v.g).collect();
        assert_eq!(gs, vec![p("x^2+y^2"), Poly::one()]);
        let regular = PoissonGerm::unperturbed(p("x"), w(1, 1)).unwrap();
        assert!(h2_basis(&regular).unwrap().is_empty());
        let e6 = PoissonGerm::unperturbed(p("x^3+y^4"), w(4, 3)).unwrap();
        let gs: Vec<Poly> = h2_basis(&e6).unwrap().into_iter().map(|v| v.g).collect();
        assert_eq!(
            gs,
            vec![p("1"), p("y"), p("x"), p("y^2"), p("x*y"), p("x*y^2")]
        );
    }

    #[test]
    fn reduce_h1_examples() {
        let g = morse();
        let x = delta1(&g, &p("y"));
        let red = reduce_cocycle_h1(&g, &x, 4).unwrap();
        assert_eq!(red.coords, vec![rat(0), rat(0)]);
        assert_eq!(red.witness, p("y"));

        let red = reduce_cocycle_h1(&g, &VectorField::euler(w(1, 1)), 4).unwrap();
        assert_eq!(red.coords, vec![rat(0), rat(1)]);
        assert!(red.witness.is_zero());

        let x = &hamiltonian_field(g.f(), w(1, 1)) + &delta1(&g, &p("x*y"));
        let red = reduce_cocycle_h1(&g, &x, 4).unwrap();
        assert_eq!(red.coords, vec![rat(1), rat(0)]);
        assert_eq!(red.witness, p("x*y"));
        assert!(red.verify_h1(&g, &x));
    }

    #[test]
    fn reduce_h1_rejects_non_cocycles() {
        let g = morse();
        let dx = VectorField::new(Poly::one(), Poly::zero(), w(1, 1));
        // delta2(d/dx) = 2x sits at bivector degree -1
        assert_eq!(
            reduce_cocycle_h1(&g, &dx, 4),
            Err(Error::NotACocycle { degree: -1 })
        );
    }

    #[test]
    fn reduce_h1_perturbed() {
        let g = d5();
        let b = h1_basis(&g).unwrap();
        let x = &(&b[0].scale(&rat(2)) - &b[1]) + &delta1(&g, &p("y^2 - x*y"));
        let red = reduce_cocycle_h1(&g, &x, 16).unwrap();
        assert_eq!(red.coords, vec![rat(2), rat(-1)]);
        assert_eq!(red.witness, p("y^2 - x*y"));
        assert!(red.verify_h1(&g, &x));
    }

    #[test]
    fn reduce_h2_examples() {
        let g = morse();
        let red = reduce_cocycle_h2(&g, &Bivector::new(p("2*y"), w(1, 1)), 4).unwrap();
        assert_eq!(red.coords, vec![rat(0), rat(0)]);
        assert_eq!(
            red.witness,
            VectorField::new(Poly::zero(), Poly::one(), w(1, 1))
        );

        let fb = Bivector::new(g.f().clone(), w(1, 1));
        let red = reduce_cocycle_h2(&g, &fb, 4).unwrap();
        assert_eq!(red.coords, vec![rat(1), rat(0)]);
        assert!(delta2(&g, &red.witness).is_zero());
        assert!(red.verify_h2(&g, &fb));

        let e6 = PoissonGerm::unperturbed(p("x^3+y^4"), w(4, 3)).unwrap();
        let red = reduce_cocycle_h2(&e6, &Bivector::new(p("x*y"), w(4, 3)), 20).unwrap();
        assert_eq!(
            red.coords,
            vec![rat(0), rat(0), rat(0), rat(0), rat(1), rat(0)]
        );
    }

    #[test]
    fn reduce_h2_perturbed() {
        let g = d5();
        let pb = Bivector::new(p("3 + x*y - 2*y^3 + x^2*y^2 + y^5 + x^3*y"), w(3, 2));
        let red = reduce_cocycle_h2(&g, &pb, 18).unwrap();
        assert!(red.verify_h2(&g, &pb));
        let morse_scaled = PoissonGerm::new(p("x^2+y^2"), p("3"), w(1, 1)).unwrap();
        let pb = Bivector::new(p("1 + x^3 + x*y"), w(1, 1));
        let red = reduce_cocycle_h2(&morse_scaled, &pb, 8).unwrap();
        assert!(red.verify_h2(&morse_scaled, &pb));
        assert_eq!(red.coords[1], rat(1));
    }
}
