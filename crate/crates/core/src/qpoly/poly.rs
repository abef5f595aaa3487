use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{rat, Axis, Monomial, Rational, Weights};
use crate::error::{Error, Result};

/// Sparse polynomial in `x, y` with exact rational coefficients.
///
/// No stored coefficient is zero, so structural equality is polynomial
/// equality and the zero polynomial is the empty map.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::monomial(Monomial::ONE, c)
    }

    pub fn x() -> Self {
        Poly::monomial(Monomial::new(1, 0), Rational::one())
    }

    pub fn y() -> Self {
        Poly::monomial(Monomial::new(0, 1), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// Sums the given terms; repeated monomials are accumulated.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in `(i, j)` lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Terms in canonical order for the given weights.
    pub fn canonical_terms(&self, w: Weights) -> Vec<(Monomial, Rational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by(|a, b| w.canonical_cmp(&a.0, &b.0));
        v
    }

    pub fn coeff(&self, m: Monomial) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(Monomial::ONE)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Product with every term of quasidegree above `n` discarded.
    pub fn mul_truncated(&self, other: &Poly, w: Weights, n: i64) -> Poly {
        let mut out = Poly::zero();
        if n < 0 {
            return out;
        }
        let rhs: Vec<_> = other
            .terms
            .iter()
            .map(|(m, c)| (*m, c, w.degree(*m)))
            .filter(|t| t.2 <= n)
            .collect();
        for (ma, ca) in &self.terms {
            let da = w.degree(*ma);
            if da > n {
                continue;
            }
            for (mb, cb, db) in &rhs {
                if da + db <= n {
                    out.add_term(ma.mul(*mb), ca * *cb);
                }
            }
        }
        out
    }

    pub fn derive(&self, axis: Axis) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(axis);
            if e == 0 {
                continue;
            }
            let dm = match axis {
                Axis::X => Monomial::new(m.i - 1, m.j),
                Axis::Y => Monomial::new(m.i, m.j - 1),
            };
            out.add_term(dm, c * rat(e as i64));
        }
        out
    }

    /// The antiderivative along `axis` vanishing on the corresponding axis line.
    pub fn integrate(&self, axis: Axis) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (im, e) = match axis {
                Axis::X => (Monomial::new(m.i + 1, m.j), m.i + 1),
                Axis::Y => (Monomial::new(m.i, m.j + 1), m.j + 1),
            };
            out.add_term(im, c / rat(e as i64));
        }
        out
    }

    /// The Euler derivative `W.g`: each monomial scaled by its quasidegree.
    pub fn euler(&self, w: Weights) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (*m, c * rat(w.degree(*m)))))
    }

    /// Quasihomogeneous components keyed by quasidegree.
    pub fn graded_components(&self, w: Weights) -> BTreeMap<i64, Poly> {
        let mut out: BTreeMap<i64, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(w.degree(*m))
                .or_default()
                .terms
                .insert(*m, c.clone());
        }
        out
    }

    /// The quasihomogeneous component of degree `k` (possibly zero).
    pub fn component(&self, w: Weights, k: i64) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| w.degree(**m) == k)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Drops every term of quasidegree above `n`.
    pub fn truncate(&self, w: Weights, n: i64) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| w.degree(**m) <= n)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Lowest quasidegree present, `None` for zero.
    pub fn order(&self, w: Weights) -> Option<i64> {
        self.terms.keys().map(|m| w.degree(*m)).min()
    }

    /// Highest quasidegree present, `None` for zero.
    pub fn max_degree(&self, w: Weights) -> Option<i64> {
        self.terms.keys().map(|m| w.degree(*m)).max()
    }

    /// `Some(d)` when every monomial has quasidegree `d`.
    pub fn is_quasihomogeneous(&self, w: Weights) -> Result<Option<i64>> {
        let lo = self.order(w).ok_or(Error::ZeroPolynomial)?;
        let hi = self.max_degree(w).unwrap_or(lo);
        Ok((lo == hi).then_some(lo))
    }

    /// Inverse of a unit modulo terms above quasidegree `n`.
    pub fn unit_inverse(&self, w: Weights, n: i64) -> Result<Poly> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::NonUnit);
        }
        let inv0 = c0.recip();
        // u = c0 (1 + v) with v(0) = 0, so 1/u = (1/c0) sum (-v)^k
        let mut neg_v = self.scale(&-&inv0);
        neg_v.terms.remove(&Monomial::ONE);
        let mut acc = Poly::zero();
        let mut term = Poly::one().truncate(w, n);
        while !term.is_zero() {
            acc = &acc + &term;
            term = term.mul_truncated(&neg_v, w, n);
        }
        Ok(acc.scale(&inv0))
    }

    /// `q` with `q*u = self` modulo terms above quasidegree `n`.
    pub fn unit_divide(&self, u: &Poly, w: Weights, n: i64) -> Result<Poly> {
        let inv = u.unit_inverse(w, n)?;
        Ok(self.mul_truncated(&inv, w, n))
    }

    /// `exp(self)` truncated above quasidegree `n`.
    pub fn exp_unit(&self, w: Weights, n: i64) -> Result<Poly> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut acc = Poly::zero();
        let mut term = Poly::one().truncate(w, n);
        let mut k = 1i64;
        while !term.is_zero() {
            acc = &acc + &term;
            term = term.mul_truncated(self, w, n).scale(&rat(k).recip());
            k += 1;
        }
        Ok(acc)
    }

    /// `self(p1, p2)` truncated above quasidegree `n`, by Horner's scheme in `x`.
    pub fn substitute(&self, p1: &Poly, p2: &Poly, w: Weights, n: i64) -> Poly {
        if self.is_zero() || n < 0 {
            return Poly::zero();
        }
        let max_i = self.terms.keys().map(|m| m.i).max().unwrap_or(0);
        let max_j = self.terms.keys().map(|m| m.j).max().unwrap_or(0);
        let mut p2_pows = vec![Poly::one().truncate(w, n)];
        for k in 1..=max_j as usize {
            let next = p2_pows[k - 1].mul_truncated(p2, w, n);
            p2_pows.push(next);
        }
        let mut rows: Vec<Poly> = vec![Poly::zero(); max_i as usize + 1];
        for (m, c) in &self.terms {
            let row = &mut rows[m.i as usize];
            *row = &*row + &p2_pows[m.j as usize].scale(c);
        }
        let mut acc = Poly::zero();
        for row in rows.into_iter().rev() {
            acc = &acc.mul_truncated(p1, w, n) + &row;
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (lt_m, lt_c) = d.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((m, c)) = rem.terms.iter().next_back() {
            let qm = m.div(*lt_m)?;
            let qc = c / lt_c;
            rem = &rem - &d.mul_monomial(qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Renders the polynomial in the input grammar, terms in canonical order.
    pub fn to_string_with(&self, w: Weights) -> String {
        let terms = self.canonical_terms(w);
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            if m == &Monomial::ONE {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&m.to_string());
            } else {
                out.push_str(&format!("{a}*{m}"));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(Weights::standard()))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(*mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &'a Poly) -> Poly {
                (&self).$f(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::super::{frac, parse_poly};
    use super::*;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    fn w(a: i64, b: i64) -> Weights {
        Weights::new(a, b).unwrap()
    }

    #[test]
    fn derive_examples() {
        assert_eq!(p("x^2 + y^2").derive(Axis::X), p("2*x"));
        assert_eq!(p("x^2*y + y^4").derive(Axis::Y), p("x^2 + 4*y^3"));
        assert_eq!(p("5").derive(Axis::X), Poly::zero());
    }

    #[test]
    fn graded_components_examples() {
        let c = p("x^2 + y^3").graded_components(w(1, 1));
        assert_eq!(c.len(), 2);
        assert_eq!(c[&2], p("x^2"));
        assert_eq!(c[&3], p("y^3"));
        let c = p("x^2*y + y^4").graded_components(w(3, 2));
        assert_eq!(c.len(), 1);
        assert_eq!(c[&8], p("x^2*y + y^4"));
        assert!(Poly::zero().graded_components(w(1, 1)).is_empty());
    }

    #[test]
    fn quasihomogeneity_examples() {
        assert_eq!(p("x^2+y^2").is_quasihomogeneous(w(1, 1)), Ok(Some(2)));
        assert_eq!(p("x^3+y^4").is_quasihomogeneous(w(4, 3)), Ok(Some(12)));
        assert_eq!(p("x^2+y^3").is_quasihomogeneous(w(1, 1)), Ok(None));
        assert_eq!(
            Poly::zero().is_quasihomogeneous(w(1, 1)),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn unit_divide_examples() {
        let w11 = w(1, 1);
        let f = p("x^2 + y^2");
        let u = p("1 + x");
        assert_eq!((&f * &u).unit_divide(&u, w11, 40).unwrap(), f);
        assert_eq!(
            Poly::one().unit_divide(&p("1 + y"), w11, 3).unwrap(),
            p("1 - y + y^2 - y^3")
        );
        let w32 = w(3, 2);
        let g = p("x^2*y + y^4");
        let q = g.unit_divide(&u, w32, 14).unwrap();
        // q*u - g has order > 14
        let resid = &(&q * &u) - &g;
        assert!(resid.order(w32).is_none_or(|o| o > 14));
        assert_eq!(q, (&g * &p("1 - x + x^2")).truncate(w32, 14));
        assert_eq!(
            Poly::one().unit_divide(&p("x + y"), w11, 3),
            Err(Error::NonUnit)
        );
    }

    #[test]
    fn exp_unit_examples() {
        let w11 = w(1, 1);
        assert_eq!(Poly::zero().exp_unit(w11, 5).unwrap(), Poly::one());
        assert_eq!(
            Poly::x().exp_unit(w11, 3).unwrap(),
            p("1 + x + 1/2*x^2 + 1/6*x^3")
        );
        let s = p("x + y");
        let expect = &(&Poly::one() + &s) + &s.pow(2).scale(&frac(1, 2));
        assert_eq!(s.exp_unit(w11, 2).unwrap(), expect);
        assert_eq!(p("1 + x").exp_unit(w11, 2), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn substitute_matches_naive_expansion() {
        let w11 = w(1, 1);
        let phi1 = p("x + y^2");
        let psi2 = p("y + x^2");
        let composed = phi1.substitute(&Poly::x(), &psi2, w11, 4);
        let naive = (&Poly::x() + &psi2.pow(2)).truncate(w11, 4);
        assert_eq!(composed, naive);
        let g = p("3*x^2*y - 2*y^3 + 1/2*x");
        let a = p("x + x*y");
        let b = p("2*y - x^2");
        let naive: Poly = g
            .terms()
            .map(|(m, c)| (&a.pow(m.i) * &b.pow(m.j)).scale(c))
            .fold(Poly::zero(), |acc, t| &acc + &t)
            .truncate(w(2, 1), 9);
        assert_eq!(g.substitute(&a, &b, w(2, 1), 9), naive);
    }

    #[test]
    fn div_exact_detects_divisibility() {
        let f = p("x^2*y + y^4");
        let q = p("3 - x*y + 2/3*y^5");
        assert_eq!((&f * &q).div_exact(&f), Some(q));
        assert_eq!(p("x^2 + y").div_exact(&f), None);
        assert_eq!(Poly::zero().div_exact(&f), Some(Poly::zero()));
    }

    #[test]
    fn display_is_canonical() {
        let g = p("y^4 + x^2*y - 3/2*x + 7");
        assert_eq!(g.to_string_with(w(3, 2)), "7 - 3/2*x + y^4 + x^2*y");
        assert_eq!((-&p("x")).to_string(), "-x");
        assert_eq!(Poly::zero().to_string(), "0");
    }
}
