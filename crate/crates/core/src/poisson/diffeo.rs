//! Jets of diffeomorphisms of the plane fixing the origin.

use num_traits::Zero;

use super::Bivector;
use crate::error::{Error, Result};
use crate::qpoly::{Axis, Monomial, Poly, Rational, Weights};

/// `(x, y) -> (phi1, phi2)` known through jet order `order`.
///
/// Components are stored through quasidegree `order + max(w1, w2)`, which is
/// what the Jacobian needs to be correct through `order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetDiffeo {
    phi1: Poly,
    phi2: Poly,
    order: i64,
    weights: Weights,
}

impl JetDiffeo {
    pub fn identity(weights: Weights, order: i64) -> Self {
        JetDiffeo {
            phi1: Poly::x(),
            phi2: Poly::y(),
            order,
            weights,
        }
    }

    /// Validates that the origin is fixed and the linear part is invertible.
    pub fn new(phi1: Poly, phi2: Poly, weights: Weights, order: i64) -> Result<Self> {
        if !phi1.constant_term().is_zero() || !phi2.constant_term().is_zero() {
            return Err(Error::MovesOrigin);
        }
        let top = order + weights.max();
        let out = JetDiffeo {
            phi1: phi1.truncate(weights, top),
            phi2: phi2.truncate(weights, top),
            order,
            weights,
        };
        if out.linear_determinant().is_zero() {
            return Err(Error::SingularLinearPart);
        }
        Ok(out)
    }

    pub fn phi1(&self) -> &Poly {
        &self.phi1
    }

    pub fn phi2(&self) -> &Poly {
        &self.phi2
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn weights(&self) -> Weights {
        self.weights
    }

    /// Quasidegree through which the components are stored.
    pub fn component_order(&self) -> i64 {
        self.order + self.weights.max()
    }

    /// The linear part `[[a, b], [c, d]]`, with `phi1 = a x + b y + ...`.
    pub fn linear_part(&self) -> [[Rational; 2]; 2] {
        let (mx, my) = (Monomial::new(1, 0), Monomial::new(0, 1));
        [
            [self.phi1.coeff(mx), self.phi1.coeff(my)],
            [self.phi2.coeff(mx), self.phi2.coeff(my)],
        ]
    }

    fn linear_determinant(&self) -> Rational {
        let [[a, b], [c, d]] = self.linear_part();
        a * d - b * c
    }

    /// The Jacobian determinant, truncated above quasidegree `n`. Terms past
    /// `order` are not reliable.
    pub fn jacobian_to(&self, n: i64) -> Poly {
        let w = self.weights;
        let p1x = self.phi1.derive(Axis::X);
        let p1y = self.phi1.derive(Axis::Y);
        let p2x = self.phi2.derive(Axis::X);
        let p2y = self.phi2.derive(Axis::Y);
        &p1x.mul_truncated(&p2y, w, n) - &p1y.mul_truncated(&p2x, w, n)
    }

    /// The Jacobian determinant through jet order.
    pub fn jacobian(&self) -> Poly {
        self.jacobian_to(self.order)
    }

    /// `g o phi` truncated above quasidegree `n`.
    pub fn pull(&self, g: &Poly, n: i64) -> Poly {
        g.substitute(&self.phi1, &self.phi2, self.weights, n)
    }

    /// `(phi1(p), phi2(p))` on a pair of polynomials, truncated at component order.
    fn apply_pair(&self, p1: &Poly, p2: &Poly) -> (Poly, Poly) {
        let (w, top) = (self.weights, self.component_order());
        (
            self.phi1.substitute(p1, p2, w, top),
            self.phi2.substitute(p1, p2, w, top),
        )
    }
}

/// `phi o psi`, kept through the smaller of the two orders.
pub fn compose_diffeo(phi: &JetDiffeo, psi: &JetDiffeo) -> JetDiffeo {
    let order = phi.order.min(psi.order);
    let w = phi.weights;
    let top = order + w.max();
    JetDiffeo {
        phi1: phi.phi1.substitute(&psi.phi1, &psi.phi2, w, top),
        phi2: phi.phi2.substitute(&psi.phi1, &psi.phi2, w, top),
        order,
        weights: w,
    }
}

/// The formal inverse, by fixed-point iteration `psi = L^-1 (id - N o psi)`
/// where `L` is the linear part and `N` the remainder.
pub fn invert_diffeo(phi: &JetDiffeo) -> Result<JetDiffeo> {
    let det = phi.linear_determinant();
    if det.is_zero() {
        return Err(Error::SingularLinearPart);
    }
    let w = phi.weights;
    let top = phi.component_order();
    let [[a, b], [c, d]] = phi.linear_part();
    let lin = |p1: &Poly, p2: &Poly| -> Poly { &p1.scale(&(a.clone())) + &p2.scale(&(b.clone())) };
    let lin2 = |p1: &Poly, p2: &Poly| -> Poly { &p1.scale(&(c.clone())) + &p2.scale(&(d.clone())) };
    let nonlinear = JetDiffeo {
        phi1: &phi.phi1 - &lin(&Poly::x(), &Poly::y()),
        phi2: &phi.phi2 - &lin2(&Poly::x(), &Poly::y()),
        ..phi.clone()
    };
    let inv_lin = |p1: &Poly, p2: &Poly| -> (Poly, Poly) {
        (
            (&p1.scale(&d) - &p2.scale(&b)).scale(&det.recip()),
            (&p2.scale(&a) - &p1.scale(&c)).scale(&det.recip()),
        )
    };
    let (mut q1, mut q2) = inv_lin(&Poly::x(), &Poly::y());
    // each pass fixes at least one more standard degree
    let max_passes = top / w.min() + 2;
    for _ in 0..max_passes {
        let (n1, n2) = nonlinear.apply_pair(&q1, &q2);
        let (r1, r2) = inv_lin(&(&Poly::x() - &n1), &(&Poly::y() - &n2));
        let (r1, r2) = (r1.truncate(w, top), r2.truncate(w, top));
        if r1 == q1 && r2 == q2 {
            break;
        }
        q1 = r1;
        q2 = r2;
    }
    Ok(JetDiffeo {
        phi1: q1,
        phi2: q2,
        order: phi.order,
        weights: w,
    })
}

/// `phi_* P`: the coefficient `g_out` with `g_out o phi = (Jac phi) g_in`,
/// i.e. `g_out = ((Jac phi) g_in) o phi^-1`, kept through quasidegree `order`.
pub fn pushforward(phi: &JetDiffeo, p: &Bivector) -> Result<Bivector> {
    let inv = invert_diffeo(phi)?;
    let w = phi.weights;
    let n = phi.order;
    let jg = phi.jacobian().mul_truncated(&p.g, w, n);
    Ok(Bivector::new(inv.pull(&jg, n), w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::{frac, parse_poly, rat};

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    fn w11() -> Weights {
        Weights::standard()
    }

    fn jet(a: &str, b: &str, n: i64) -> JetDiffeo {
        JetDiffeo::new(p(a), p(b), w11(), n).unwrap()
    }

    #[test]
    fn construction_checks() {
        assert_eq!(
            JetDiffeo::new(p("x+1"), p("y"), w11(), 3),
            Err(Error::MovesOrigin)
        );
        assert_eq!(
            JetDiffeo::new(p("x+y"), p("2*x+2*y"), w11(), 3),
            Err(Error::SingularLinearPart)
        );
        let j = jet("x + y^9", "y", 3);
        assert_eq!(j.phi1(), &p("x"));
    }

    #[test]
    fn compose_examples() {
        let psi = jet("x", "y+x^2", 4);
        assert_eq!(compose_diffeo(&JetDiffeo::identity(w11(), 4), &psi), psi);
        let phi = jet("x+y^2", "y", 4);
        let c = compose_diffeo(&phi, &psi);
        assert_eq!(c.phi1(), &p("x + (y+x^2)^2"));
        assert_eq!(c.phi2(), &p("y + x^2"));
    }

    #[test]
    fn invert_examples() {
        let id = JetDiffeo::identity(w11(), 5);
        assert_eq!(invert_diffeo(&id).unwrap(), id);
        let inv = invert_diffeo(&jet("2*x", "3*y", 4)).unwrap();
        assert_eq!(inv.phi1(), &Poly::x().scale(&frac(1, 2)));
        assert_eq!(inv.phi2(), &Poly::y().scale(&frac(1, 3)));
        let phi = jet("x+y^2", "y", 4);
        let inv = invert_diffeo(&phi).unwrap();
        assert_eq!((inv.phi1(), inv.phi2()), (&p("x-y^2"), &p("y")));
        assert_eq!(compose_diffeo(&phi, &inv), JetDiffeo::identity(w11(), 4));
    }

    #[test]
    fn invert_weighted_nonlinear() {
        let w = Weights::new(3, 2).unwrap();
        let phi = JetDiffeo::new(p("x + x*y + y^3"), p("y - 2*y^2 + x^2"), w, 10).unwrap();
        let inv = invert_diffeo(&phi).unwrap();
        let id = compose_diffeo(&phi, &inv);
        assert_eq!(id, JetDiffeo::identity(w, 10));
        let id = compose_diffeo(&inv, &phi);
        assert_eq!(id, JetDiffeo::identity(w, 10));
    }

    #[test]
    fn pushforward_examples() {
        let bx = Bivector::new(p("x"), w11());
        let id = JetDiffeo::identity(w11(), 6);
        assert_eq!(pushforward(&id, &bx).unwrap(), bx);
        assert_eq!(pushforward(&jet("2*x", "y", 6), &bx).unwrap(), bx);
        assert_eq!(pushforward(&jet("y", "x", 6), &bx).unwrap().g, -&p("y"));
    }

    #[test]
    fn pushforward_satisfies_defining_relation() {
        let phi = jet("x + y^2 - x*y", "3*y + x^2", 7);
        let g_in = p("x^2 + y^2 + x^3");
        let out = pushforward(&phi, &Bivector::new(g_in.clone(), w11())).unwrap();
        let lhs = phi.pull(&out.g, 7);
        let rhs = phi.jacobian().mul_truncated(&g_in, w11(), 7);
        assert_eq!(lhs, rhs);
        assert_eq!(phi.jacobian().constant_term(), rat(3));
    }
}
