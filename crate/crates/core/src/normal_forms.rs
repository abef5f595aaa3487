//! Simple-germ catalog, the homological equations `W.nu = T` and
//! `W.g - l g = T`, and a degree-by-degree normalizer that brings
//! `f (c0 + u) dx^dy` to `c0 f (1 + h) dx^dy` with `h` of the resonant degree.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::milnor::{reduce_mod_ideal, MilnorAlgebra};
use crate::poisson::{compose_diffeo, JetDiffeo, PoissonGerm, VectorField};
use crate::qpoly::{monomials_of_degree, rat, Monomial, Poly, Rational, Weights};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    D,
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn value(self) -> Rational {
        match self {
            Sign::Plus => rat(1),
            Sign::Minus => rat(-1),
        }
    }
}

/// A simple-germ label such as `A3-`, `D5` or `E7`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdeLabel {
    pub family: Family,
    pub k: u32,
    pub sign: Sign,
    pub lambda: Rational,
}

impl AdeLabel {
    pub fn new(family: Family, k: u32) -> Self {
        AdeLabel {
            family,
            k,
            sign: Sign::Plus,
            lambda: rat(1),
        }
    }

    pub fn with_sign(mut self, sign: Sign) -> Self {
        self.sign = sign;
        self
    }

    pub fn with_lambda(mut self, lambda: Rational) -> Self {
        self.lambda = lambda;
        self
    }

    /// Whether the table distinguishes `+` and `-` real forms for this label.
    pub fn has_sign(&self) -> bool {
        matches!((self.family, self.k % 2), (Family::A, 1) | (Family::D, 0))
    }

    fn validate(&self) -> Result<()> {
        let ok = match self.family {
            Family::A => self.k >= 1,
            Family::D => self.k >= 4,
            Family::E => (6..=8).contains(&self.k),
        };
        if !ok {
            return Err(Error::InvalidLabel(format!("no germ {self}")));
        }
        if self.sign == Sign::Minus && !self.has_sign() {
            return Err(Error::InvalidLabel(format!("{self} has no real forms")));
        }
        Ok(())
    }
}

impl fmt::Display for AdeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = match self.family {
            Family::A => "A",
            Family::D => "D",
            Family::E => "E",
        };
        write!(f, "{fam}{}", self.k)?;
        if self.has_sign() {
            f.write_str(if self.sign == Sign::Plus { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl FromStr for AdeLabel {
    type Err = Error;

    /// `FAMILY:INDEX[:SIGN]`, e.g. `D:5` or `A:3:-`.
    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::InvalidLabel(text.to_string());
        let mut parts = text.split(':');
        let family = match parts.next().map(str::trim) {
            Some("A") | Some("a") => Family::A,
            Some("D") | Some("d") => Family::D,
            Some("E") | Some("e") => Family::E,
            _ => return Err(bad()),
        };
        let k: u32 = parts
            .next()
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(bad)?;
        let sign = match parts.next().map(str::trim) {
            None | Some("+") => Sign::Plus,
            Some("-") => Sign::Minus,
            Some(_) => return Err(bad()),
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        let label = AdeLabel::new(family, k).with_sign(sign);
        label.validate()?;
        Ok(label)
    }
}

/// A catalog germ. `as_printed` marks entries reproduced from the table
/// verbatim although they do not have the expected singularity type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub label: AdeLabel,
    pub germ: PoissonGerm,
    pub as_printed: bool,
}

fn xy(i: u32, j: u32) -> Poly {
    Poly::monomial(Monomial::new(i, j), Rational::one())
}

/// Smallest positive weights making the monomials of `f` share one quasidegree.
pub fn minimal_weights(f: &Poly) -> Option<Weights> {
    let ms: Vec<Monomial> = f.terms().map(|(m, _)| *m).collect();
    let (first, rest) = ms.split_first()?;
    // (a - c) w1 = (d - b) w2 for every pair
    let mut ratio: Option<(i64, i64)> = None;
    for m in rest {
        let p = first.i as i64 - m.i as i64;
        let q = m.j as i64 - first.j as i64;
        if p == 0 && q == 0 {
            continue;
        }
        if p == 0 || q == 0 || (p > 0) != (q > 0) {
            return None;
        }
        let g = num_integer::gcd(p, q);
        let (w1, w2) = (q.abs() / g, p.abs() / g);
        match ratio {
            None => ratio = Some((w1, w2)),
            Some(r) if r == (w1, w2) => {}
            Some(_) => return None,
        }
    }
    let (w1, w2) = ratio?;
    Weights::new(w1, w2).ok()
}

/// `lambda * m` when `m` sits in the resonant degree, and `0` otherwise.
fn modulus_term(f: &Poly, w: Weights, m: Monomial, lambda: &Rational) -> Poly {
    let d = f.max_degree(w).unwrap_or(0);
    if w.degree(m) == d - w.sum() && d - w.sum() > 0 {
        Poly::monomial(m, lambda.clone())
    } else {
        Poly::zero()
    }
}

fn entry(
    label: &AdeLabel,
    f: Poly,
    h_monomial: Option<Monomial>,
    as_printed: bool,
) -> Result<CatalogEntry> {
    let w = minimal_weights(&f).ok_or_else(|| Error::InvalidLabel(label.to_string()))?;
    let h = h_monomial.map_or(Poly::zero(), |m| modulus_term(&f, w, m, &label.lambda));
    Ok(CatalogEntry {
        label: label.clone(),
        germ: PoissonGerm::new(f, h, w)?,
        as_printed,
    })
}

/// The table entry for `label`; `D_{2p}` comes back in its printed form (see [`d_form`]).
pub fn catalog(label: &AdeLabel) -> Result<CatalogEntry> {
    label.validate()?;
    let k = label.k;
    let sign = label.sign.value();
    match (label.family, k % 2) {
        (Family::A, 0) => entry(label, &xy(2, 0) + &xy(0, k + 1), None, false),
        (Family::A, _) => {
            let p = (k + 1) / 2;
            let f = &xy(2, 0) + &xy(0, 2 * p).scale(&sign);
            entry(label, f, Some(Monomial::new(0, p - 1)), false)
        }
        (Family::D, 0) => {
            let p = k / 2;
            let f = &xy(2, 0) + &xy(0, 2 * p).scale(&sign);
            entry(label, f, Some(Monomial::new(0, p - 1)), true)
        }
        (Family::D, _) => {
            let p = (k - 1) / 2;
            entry(
                label,
                &xy(2, 1) + &xy(0, 2 * p),
                Some(Monomial::new(1, 0)),
                false,
            )
        }
        (Family::E, _) => match k {
            6 => entry(label, &xy(3, 0) + &xy(0, 4), None, false),
            7 => entry(
                label,
                &xy(3, 0) + &xy(1, 3),
                Some(Monomial::new(0, 2)),
                false,
            ),
            _ => entry(label, &xy(3, 0) + &xy(0, 5), None, false),
        },
    }
}

/// `D_{2p}` as `(x^2 y +- y^{2p-1})(1 + lambda y^{p-1})`; other labels as in [`catalog`].
pub fn d_form(label: &AdeLabel) -> Result<CatalogEntry> {
    label.validate()?;
    if label.family != Family::D || label.k % 2 == 1 {
        return catalog(label);
    }
    let p = label.k / 2;
    let f = &xy(2, 1) + &xy(0, 2 * p - 1).scale(&label.sign.value());
    entry(label, f, Some(Monomial::new(0, p - 1)), false)
}

/// The labels used for sweeps: `A1..A6`, `D4..D7`, `E6..E8`, with both real forms.
pub fn standard_labels() -> Vec<AdeLabel> {
    let mut out = Vec::new();
    let mut push = |fam, k| {
        let l = AdeLabel::new(fam, k);
        if l.has_sign() {
            out.push(l.clone().with_sign(Sign::Minus));
        }
        out.push(l);
    };
    for k in 1..=6 {
        push(Family::A, k);
    }
    for k in 4..=7 {
        push(Family::D, k);
    }
    for k in 6..=8 {
        push(Family::E, k);
    }
    out.sort_by_key(|l| (l.family as u8, l.k, l.sign == Sign::Minus));
    out
}

/// The `H^2` dimension a tabulated monomial basis would give, where the table lists one
/// that differs from `r + c`: for `D_{2p+1}` the list `1, x, y, ..., y^{2p}`.
pub fn tabulated_h2(label: &AdeLabel) -> Option<usize> {
    (label.family == Family::D && label.k % 2 == 1).then(|| {
        let p = (label.k - 1) / 2;
        // r = 1 plus 2p + 2 listed monomials
        1 + 2 * p as usize + 2
    })
}

/// A note on the disagreement between a tabulated `H^2` dimension and the computed one,
/// naming the monomial that is not free in the Milnor algebra and its exact witness.
pub fn tabulated_discrepancy(entry: &CatalogEntry, computed_h2: usize) -> Option<String> {
    let tab = tabulated_h2(&entry.label)?;
    if tab == computed_h2 {
        return None;
    }
    let germ = &entry.germ;
    let w = germ.weights();
    let p = (entry.label.k - 1) / 2;
    let top = xy(0, 2 * p);
    let (nf, wit) = reduce_mod_ideal(&top, germ.f(), w).ok()?;
    let detail = if nf.is_zero() {
        format!(
            "{} = ({})*f_x + ({})*f_y lies in the Jacobian ideal",
            top.to_string_with(w),
            wit.p.to_string_with(w),
            wit.q.to_string_with(w)
        )
    } else {
        format!(
            "{} reduces to {}",
            top.to_string_with(w),
            nf.to_string_with(w)
        )
    };
    Some(format!(
        "tabulated basis for {} gives h2 = {tab}, computed h2 = {computed_h2}: {detail}, so it is not free in Q_f",
        entry.label
    ))
}

/// `nu` with `W.nu = T`, dividing each component of degree `i` by `i`.
pub fn solve_w(t: &Poly, w: Weights) -> Result<Poly> {
    if !t.constant_term().is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    solve_homological(t, 0, w)
}

/// `g` with `W.g - lambda0 g = T`; needs the degree-`lambda0` component of `T` to vanish.
pub fn solve_homological(t: &Poly, lambda0: i64, w: Weights) -> Result<Poly> {
    let mut out = Poly::zero();
    for (i, ti) in t.graded_components(w) {
        if i == lambda0 {
            return Err(Error::Resonance { degree: lambda0 });
        }
        out = &out + &ti.scale(&(Rational::one() / rat(i - lambda0)));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizationResult {
    pub h_out: Poly,
    pub phi: JetDiffeo,
    pub constant: Rational,
    pub order: i64,
}

impl NormalizationResult {
    /// `constant * f * (1 + h_out)`.
    pub fn target(&self, f: &Poly) -> Poly {
        (f * &(&Poly::one() + &self.h_out)).scale(&self.constant)
    }
}

/// Outcome of checking `g_dst o phi = (Jac phi) F_src` through a quasidegree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PushforwardCheck {
    pub through: i64,
    /// Lowest degree of the residual at or below `through`; `None` if it vanishes there.
    pub residual_order: Option<i64>,
    pub pass: bool,
}

pub fn check_pushforward(phi: &JetDiffeo, f_src: &Poly, g_dst: &Poly, n: i64) -> PushforwardCheck {
    let w = phi.weights();
    let lhs = phi.pull(g_dst, n);
    let rhs = phi.jacobian_to(n).mul_truncated(f_src, w, n);
    let residual_order = (&lhs - &rhs).order(w);
    PushforwardCheck {
        through: n,
        residual_order,
        pass: residual_order.is_none(),
    }
}

/// `exp(X) p = sum X^k p / k!`, truncated above `n`; `X` must raise degree.
fn lie_exp(x: &VectorField, p: &Poly, n: i64) -> Poly {
    let w = x.weights;
    let mut term = p.truncate(w, n);
    let mut out = term.clone();
    let mut k = 1;
    while !term.is_zero() {
        term = x
            .apply(&term)
            .truncate(w, n)
            .scale(&(Rational::one() / rat(k)));
        out = &out + &term;
        k += 1;
    }
    out
}

/// `2d + max(w1, w2)`.
pub fn default_order(d: i64, w: Weights) -> i64 {
    2 * d + w.max()
}

/// Conjugates `f (1 + u) dx^dy` to `c0 f (1 + h_out) dx^dy` through multiplier degree `n`,
/// where `c0 = 1 + u(0, 0)` and `h_out` is quasihomogeneous of degree `d - w1 - w2`.
pub fn normalize(f: &Poly, u: &Poly, w: Weights, n: i64) -> Result<NormalizationResult> {
    let m = MilnorAlgebra::new(f, w)?;
    if !m.is_finite() {
        return Err(Error::InfiniteCodimension);
    }
    let d = m.d();
    let s = d - w.sum();
    let c0 = Rational::one() + u.constant_term();
    if c0.is_zero() {
        return Err(Error::NonUnit);
    }
    let v = (u - &Poly::constant(u.constant_term())).scale(&c0.recip());
    let mut unit = (&Poly::one() + &v).truncate(w, n);
    let mut phi = JetDiffeo::identity(w, n);
    let euler = VectorField::euler(w);
    for deg in 1..=n {
        if deg == s {
            continue;
        }
        let um = unit.component(w, deg);
        if um.is_zero() {
            continue;
        }
        // X = alpha W with W.alpha = deg alpha; its time-one flow removes the degree-deg part
        let alpha = um.scale(&(Rational::one() / rat(s - deg)));
        let x = euler.times(&alpha);
        let shift = rat(s - deg);
        let lie = |g: &Poly| -> Poly {
            let inner = &g.euler(w) + &g.scale(&shift);
            alpha.mul_truncated(&inner, w, n)
        };
        let mut term = unit.clone();
        let mut next = unit.clone();
        let mut k = 1;
        loop {
            term = lie(&term).scale(&(-Rational::one() / rat(k)));
            if term.is_zero() {
                break;
            }
            next = &next + &term;
            k += 1;
        }
        unit = next;
        let top = phi.component_order();
        let step = JetDiffeo::new(
            lie_exp(&x, &Poly::x(), top),
            lie_exp(&x, &Poly::y(), top),
            w,
            n,
        )?;
        phi = compose_diffeo(&step, &phi);
    }
    let h_out = if s > 0 {
        unit.component(w, s)
    } else {
        Poly::zero()
    };
    Ok(NormalizationResult {
        h_out,
        phi,
        constant: c0,
        order: n,
    })
}

/// Resonant monomials of `f`, i.e. the possible terms of `h_out`.
pub fn modulus_monomials(germ: &PoissonGerm) -> Vec<Monomial> {
    monomials_of_degree(germ.weights(), germ.s())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::milnor::{milnor_data, Codimension};
    use crate::qpoly::{frac, parse_poly};

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    fn w(a: i64, b: i64) -> Weights {
        Weights::new(a, b).unwrap()
    }

    #[test]
    fn label_parsing() {
        let l: AdeLabel = "D:5".parse().unwrap();
        assert_eq!((l.family, l.k, l.sign), (Family::D, 5, Sign::Plus));
        let l: AdeLabel = "A:3:-".parse().unwrap();
        assert_eq!(l.sign, Sign::Minus);
        assert!("E:9".parse::<AdeLabel>().is_err());
        assert!("D:3".parse::<AdeLabel>().is_err());
        assert!("A:0".parse::<AdeLabel>().is_err());
        assert!("E:6:-".parse::<AdeLabel>().is_err());
        assert!("A:2:-".parse::<AdeLabel>().is_err());
        assert!("X:2".parse::<AdeLabel>().is_err());
    }

    #[test]
    fn catalog_examples() {
        let e6 = catalog(&AdeLabel::new(Family::E, 6)).unwrap().germ;
        assert_eq!(
            (e6.f(), e6.h(), e6.weights(), e6.d()),
            (&p("x^3+y^4"), &Poly::zero(), w(4, 3), 12)
        );
        let d5 = catalog(&AdeLabel::new(Family::D, 5)).unwrap().germ;
        assert_eq!(
            (d5.f(), d5.h(), d5.weights(), d5.d()),
            (&p("x^2*y+y^4"), &p("x"), w(3, 2), 8)
        );
        let a1 = catalog(&AdeLabel::new(Family::A, 1).with_lambda(rat(0)))
            .unwrap()
            .germ;
        assert_eq!(
            (a1.f(), a1.h(), a1.weights(), a1.d()),
            (&p("x^2+y^2"), &Poly::zero(), w(1, 1), 2)
        );
        let e7 = catalog(&AdeLabel::new(Family::E, 7).with_lambda(frac(1, 2)))
            .unwrap()
            .germ;
        assert_eq!((e7.h(), e7.weights()), (&p("1/2*y^2"), w(3, 2)));
        let a5 = catalog(&AdeLabel::new(Family::A, 5).with_sign(Sign::Minus))
            .unwrap()
            .germ;
        assert_eq!(
            (a5.f(), a5.h(), a5.weights()),
            (&p("x^2-y^6"), &p("y^2"), w(3, 1))
        );
    }

    #[test]
    fn printed_d_even_is_flagged() {
        let l = AdeLabel::new(Family::D, 6);
        let printed = catalog(&l).unwrap();
        assert!(printed.as_printed);
        assert_eq!(printed.germ.f(), &p("x^2+y^6"));
        let alt = d_form(&l).unwrap();
        assert!(!alt.as_printed);
        assert_eq!(alt.germ.f(), &p("x^2*y+y^5"));
        assert_eq!(alt.germ.h(), &p("y^2"));
        assert_eq!(alt.germ.weights(), w(2, 1));
        let c = milnor_data(alt.germ.f(), alt.germ.weights()).unwrap().codim;
        assert_eq!(c, Codimension::Finite(6));
    }

    #[test]
    fn minimal_weights_examples() {
        assert_eq!(minimal_weights(&p("x^2+y^3")), Some(w(3, 2)));
        assert_eq!(minimal_weights(&p("x^3+x*y^3")), Some(w(3, 2)));
        assert_eq!(minimal_weights(&p("x^2 + y^2 + x*y")), Some(w(1, 1)));
        assert_eq!(minimal_weights(&p("x^2+x^3")), None);
        assert_eq!(minimal_weights(&p("x^2")), None);
    }

    #[test]
    fn solve_w_examples() {
        assert_eq!(solve_w(&p("x"), w(1, 1)).unwrap(), p("x"));
        assert_eq!(solve_w(&p("x^2*y"), w(1, 1)).unwrap(), p("1/3*x^2*y"));
        assert_eq!(
            solve_w(&p("3*x + 2*x*y^2"), w(2, 1)).unwrap(),
            p("3/2*x + 1/2*x*y^2")
        );
        assert_eq!(
            solve_w(&p("1 + x"), w(1, 1)),
            Err(Error::NonzeroConstantTerm)
        );
    }

    #[test]
    fn solve_homological_examples() {
        assert_eq!(solve_homological(&p("x^3"), 2, w(1, 1)).unwrap(), p("x^3"));
        assert_eq!(
            solve_homological(&p("x"), 1, w(1, 1)),
            Err(Error::Resonance { degree: 1 })
        );
        assert_eq!(solve_homological(&p("y"), -1, w(2, 1)).unwrap(), p("1/2*y"));
        // resonant degree that is a quasidegree
        assert_eq!(
            solve_homological(&p("y"), 1, w(2, 1)),
            Err(Error::Resonance { degree: 1 })
        );
    }

    fn replay(f: &Poly, u: &Poly, res: &NormalizationResult, d: i64) -> PushforwardCheck {
        let src = f * &(&Poly::one() + u);
        check_pushforward(&res.phi, &src, &res.target(f), res.order + d)
    }

    #[test]
    fn normalize_fixed_point() {
        let f = p("x^2*y+y^4");
        let res = normalize(&f, &p("x"), w(3, 2), 14).unwrap();
        assert_eq!(res.h_out, p("x"));
        assert_eq!(res.phi, JetDiffeo::identity(w(3, 2), 14));
        assert_eq!(res.constant, rat(1));
    }

    #[test]
    fn normalize_morse() {
        let f = p("x^2+y^2");
        let u = p("y^3");
        let res = normalize(&f, &u, w(1, 1), 8).unwrap();
        assert!(res.h_out.is_zero());
        // first step flows along -y^3/3 W
        assert_eq!(res.phi.phi2().component(w(1, 1), 4), p("-1/3*y^4"));
        assert!(replay(&f, &u, &res, 2).pass);
    }

    #[test]
    fn normalize_d5() {
        let f = p("x^2*y+y^4");
        let u = p("x + y^3");
        let res = normalize(&f, &u, w(3, 2), 14).unwrap();
        assert_eq!(res.h_out, p("x"));
        assert!(replay(&f, &u, &res, 8).pass);
    }

    #[test]
    fn normalize_with_constant_and_low_terms() {
        let f = p("x^2*y+y^4");
        let u = p("2 + y - x*y + 3*y^2");
        let res = normalize(&f, &u, w(3, 2), 12).unwrap();
        assert_eq!(res.constant, rat(3));
        let check = replay(&f, &u, &res, 8);
        assert!(check.pass, "{check:?}");
        assert_eq!(normalize(&f, &p("-1 + x"), w(3, 2), 8), Err(Error::NonUnit));
        assert_eq!(
            normalize(&p("x^2"), &p("y"), w(1, 1), 8),
            Err(Error::InfiniteCodimension)
        );
    }

    #[test]
    fn discrepancy_note_for_d5() {
        let e = catalog(&AdeLabel::new(Family::D, 5)).unwrap();
        assert_eq!(tabulated_h2(&e.label), Some(7));
        let note = tabulated_discrepancy(&e, 6).unwrap();
        assert!(note.contains("y^4 = (-1/8*x)*f_x + (1/4*y)*f_y"), "{note}");
        assert!(tabulated_discrepancy(&e, 7).is_none());
    }
}
