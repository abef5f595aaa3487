//! Cohomology dimensions by brute-force rank computation.
//!
//! For `h = 0` the complex splits by quasidegree and each piece is handled
//! separately. For `h != 0` it is only filtered, so the quotient complex
//! `F(<=c) -> X(<=c+s) -> V(<=c+2s)` is assembled whole.

use std::collections::HashMap;

use num_traits::Zero;

use crate::cohomology::{theorem_report, CohomologyReport};
use crate::error::Result;
use crate::linalg::Matrix;
use crate::poisson::{
    bivector_monomials, delta1, delta2, field_monomials, Bivector, PoissonGerm, VectorField,
};
use crate::qpoly::{monomials_of_degree, Axis, Monomial, Poly, Rational, Weights};

/// One quasidegree `k` of the graded complex: all three spaces are taken at degree `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedDimsRow {
    pub k: i64,
    pub dim_f: usize,
    pub dim_x: usize,
    pub dim_v: usize,
    /// Rank of `d1` arriving in `X_k` (from `F_{k-s}`).
    pub rank_d1: usize,
    /// Rank of `d2` leaving `X_k` (towards `V_{k+s}`).
    pub rank_d2: usize,
    /// Rank of `d1` leaving `F_k`.
    pub rank_d1_out: usize,
    /// Rank of `d2` arriving in `V_k`.
    pub rank_d2_in: usize,
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    /// Graded rows for `h = 0`; empty for the filtered computation.
    pub rows: Vec<GradedDimsRow>,
    pub cutoff: i64,
    pub totals: (usize, usize, usize),
    pub stabilized: bool,
}

/// Theorem versus oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheck {
    pub theorem: CohomologyReport,
    pub oracle: OracleReport,
    pub agree: [bool; 3],
    /// First quasidegree whose graded dimensions contradict the theorem bases.
    pub offending_degree: Option<i64>,
    pub notes: Vec<String>,
}

impl CrossCheck {
    pub fn all_agree(&self) -> bool {
        self.agree.iter().all(|a| *a)
    }
}

struct Index<K> {
    keys: Vec<K>,
    pos: HashMap<K, usize>,
}

impl<K: Copy + Eq + std::hash::Hash> Index<K> {
    fn new(keys: Vec<K>) -> Self {
        let pos = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        Index { keys, pos }
    }

    fn len(&self) -> usize {
        self.keys.len()
    }
}

fn poly_vector(g: &Poly, idx: &Index<Monomial>) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); idx.len()];
    for (m, c) in g.terms() {
        if let Some(&i) = idx.pos.get(m) {
            v[i] = c.clone();
        }
    }
    v
}

fn field_vector(x: &VectorField, idx: &Index<(Axis, Monomial)>) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); idx.len()];
    for (axis, p) in [(Axis::X, &x.a), (Axis::Y, &x.b)] {
        for (m, c) in p.terms() {
            if let Some(&i) = idx.pos.get(&(axis, *m)) {
                v[i] = c.clone();
            }
        }
    }
    v
}

fn function_index(w: Weights, lo: i64, hi: i64) -> Index<Monomial> {
    Index::new((lo..=hi).flat_map(|k| monomials_of_degree(w, k)).collect())
}

fn field_index(w: Weights, lo: i64, hi: i64) -> Index<(Axis, Monomial)> {
    Index::new((lo..=hi).flat_map(|m| field_monomials(w, m)).collect())
}

fn bivector_index(w: Weights, lo: i64, hi: i64) -> Index<Monomial> {
    Index::new((lo..=hi).flat_map(|k| bivector_monomials(w, k)).collect())
}

fn mono(m: Monomial) -> Poly {
    Poly::monomial(m, num_traits::One::one())
}

fn field_of(w: Weights, (axis, m): (Axis, Monomial)) -> VectorField {
    match axis {
        Axis::X => VectorField::new(mono(m), Poly::zero(), w),
        Axis::Y => VectorField::new(Poly::zero(), mono(m), w),
    }
}

/// Matrix of `d1: F(lo..=hi) -> X` with columns in canonical order.
fn d1_matrix(germ: &PoissonGerm, src: &Index<Monomial>, dst: &Index<(Axis, Monomial)>) -> Matrix {
    let cols: Vec<Vec<Rational>> = src
        .keys
        .iter()
        .map(|m| field_vector(&delta1(germ, &mono(*m)), dst))
        .collect();
    Matrix::from_columns(dst.len(), &cols)
}

fn d2_matrix(germ: &PoissonGerm, src: &Index<(Axis, Monomial)>, dst: &Index<Monomial>) -> Matrix {
    let w = germ.weights();
    let cols: Vec<Vec<Rational>> = src
        .keys
        .iter()
        .map(|k| poly_vector(&delta2(germ, &field_of(w, *k)).g, dst))
        .collect();
    Matrix::from_columns(dst.len(), &cols)
}

fn rank_d1_at(germ: &PoissonGerm, j: i64) -> usize {
    let w = germ.weights();
    let src = function_index(w, j, j);
    if src.len() == 0 {
        return 0;
    }
    d1_matrix(germ, &src, &field_index(w, j + germ.s(), j + germ.s())).rank()
}

fn rank_d2_at(germ: &PoissonGerm, m: i64) -> usize {
    let w = germ.weights();
    let src = field_index(w, m, m);
    if src.len() == 0 {
        return 0;
    }
    d2_matrix(germ, &src, &bivector_index(w, m + germ.s(), m + germ.s())).rank()
}

/// The graded row at quasidegree `k` of the complex of `f dx^dy`.
pub fn graded_cochain_dims(f: &Poly, w: Weights, k: i64) -> Result<GradedDimsRow> {
    let germ = PoissonGerm::unperturbed(f.clone(), w)?;
    Ok(row(&germ, k, &mut HashMap::new(), &mut HashMap::new()))
}

fn row(
    germ: &PoissonGerm,
    k: i64,
    d1: &mut HashMap<i64, usize>,
    d2: &mut HashMap<i64, usize>,
) -> GradedDimsRow {
    let w = germ.weights();
    let s = germ.s();
    let mut r1 = |j: i64| *d1.entry(j).or_insert_with(|| rank_d1_at(germ, j));
    let rank_d1_out = r1(k);
    let rank_d1 = r1(k - s);
    let mut r2 = |m: i64| *d2.entry(m).or_insert_with(|| rank_d2_at(germ, m));
    let rank_d2 = r2(k);
    let rank_d2_in = r2(k - s);
    let dim_f = monomials_of_degree(w, k).len();
    let dim_x = field_monomials(w, k).len();
    let dim_v = bivector_monomials(w, k).len();
    GradedDimsRow {
        k,
        dim_f,
        dim_x,
        dim_v,
        rank_d1,
        rank_d2,
        rank_d1_out,
        rank_d2_in,
        h0: dim_f - rank_d1_out,
        h1: dim_x - rank_d2 - rank_d1,
        h2: dim_v - rank_d2_in,
    }
}

fn graded_rows(germ: &PoissonGerm, cutoff: i64) -> Vec<GradedDimsRow> {
    let s = germ.s();
    let lo = -germ.weights().sum();
    let hi = cutoff.max(cutoff + s).max(cutoff + 2 * s);
    let (mut d1, mut d2) = (HashMap::new(), HashMap::new());
    (lo..=hi).map(|k| row(germ, k, &mut d1, &mut d2)).collect()
}

fn graded_totals(rows: &[GradedDimsRow], cutoff: i64, s: i64) -> (usize, usize, usize) {
    let sum = |top: i64, pick: fn(&GradedDimsRow) -> usize| {
        rows.iter().filter(|r| r.k <= top).map(pick).sum()
    };
    (
        sum(cutoff, |r| r.h0),
        sum(cutoff + s, |r| r.h1),
        sum(cutoff + 2 * s, |r| r.h2),
    )
}

/// Cohomology of the truncated filtered complex and the ranks of its differentials.
fn filtered_totals(germ: &PoissonGerm, cutoff: i64) -> (usize, usize, usize) {
    let w = germ.weights();
    let s = germ.s();
    let fs = function_index(w, 0, cutoff);
    let xs = field_index(w, -w.max(), cutoff + s);
    let vs = bivector_index(w, -w.sum(), cutoff + 2 * s);
    let r1 = if fs.len() == 0 {
        0
    } else {
        d1_matrix(germ, &fs, &xs).rank()
    };
    let r2 = if xs.len() == 0 {
        0
    } else {
        d2_matrix(germ, &xs, &vs).rank()
    };
    (fs.len() - r1, xs.len() - r2 - r1, vs.len() - r2)
}

/// Oracle dimensions through `cutoff`; stable if unchanged at `cutoff + max(w1, w2)`.
pub fn oracle_report(germ: &PoissonGerm, cutoff: i64) -> OracleReport {
    let margin = germ.weights().max();
    let s = germ.s();
    if germ.is_unperturbed() {
        let rows = graded_rows(germ, cutoff + margin);
        let totals = graded_totals(&rows, cutoff, s);
        let wider = graded_totals(&rows, cutoff + margin, s);
        let concentrated = rows
            .iter()
            .all(|r| (r.k == s || r.h1 == 0) && (r.k <= 2 * s || r.h2 == 0));
        let rows = rows
            .into_iter()
            .filter(|r| r.k <= cutoff.max(cutoff + s).max(cutoff + 2 * s))
            .collect();
        OracleReport {
            rows,
            cutoff,
            totals,
            stabilized: totals == wider && concentrated,
        }
    } else {
        let totals = filtered_totals(germ, cutoff);
        let wider = filtered_totals(germ, cutoff + margin);
        OracleReport {
            rows: Vec::new(),
            cutoff,
            totals,
            stabilized: totals == wider,
        }
    }
}

/// Ranks of the theorem representatives modulo coboundaries in the truncated complex:
/// `(rank of the H^1 family, rank of the H^2 family)`.
pub fn representative_ranks(
    germ: &PoissonGerm,
    h1: &[VectorField],
    h2: &[Bivector],
    cutoff: i64,
) -> (usize, usize) {
    let w = germ.weights();
    let s = germ.s();
    let fs = function_index(w, 0, cutoff);
    let xs = field_index(w, -w.max(), cutoff + s);
    let vs = bivector_index(w, -w.sum(), cutoff + 2 * s);
    let relative = |image: Matrix, extra: Vec<Vec<Rational>>| -> usize {
        let base = image.rank();
        let mut cols: Vec<Vec<Rational>> = (0..image.cols()).map(|c| image.column(c)).collect();
        cols.extend(extra);
        Matrix::from_columns(image.rows(), &cols).rank() - base
    };
    let h1_rank = relative(
        d1_matrix(germ, &fs, &xs),
        h1.iter().map(|x| field_vector(x, &xs)).collect(),
    );
    let h2_rank = relative(
        d2_matrix(germ, &xs, &vs),
        h2.iter().map(|b| poly_vector(&b.g, &vs)).collect(),
    );
    (h1_rank, h2_rank)
}

/// Graded dimensions predicted by the theorem bases at each row of the `h = 0` complex.
fn predicted(report: &CohomologyReport, w: Weights, s: i64, k: i64) -> (usize, usize, usize) {
    let h0 = usize::from(k == 0);
    let h1 = if k == s { report.h1_dim } else { 0 };
    let h2 = report
        .h2_basis
        .iter()
        .filter(|b| b.g.order(w).map(|d| d - w.sum()) == Some(k))
        .count();
    (h0, h1, h2)
}

/// Runs both engines and compares them.
pub fn crosscheck(germ: &PoissonGerm, cutoff: i64) -> Result<CrossCheck> {
    let theorem = theorem_report(germ)?;
    let oracle = oracle_report(germ, cutoff);
    let t = theorem.dims();
    let o = oracle.totals;
    let mut agree = [t.0 == o.0, t.1 == o.1, t.2 == o.2];
    let mut notes = Vec::new();
    // the representatives must also be independent modulo coboundaries
    let (r1, r2) = representative_ranks(germ, &theorem.h1_basis, &theorem.h2_basis, cutoff);
    if (r1, r2) != (t.1, t.2) {
        agree[1] &= r1 == t.1;
        agree[2] &= r2 == t.2;
        notes.push(format!(
            "theorem representatives have rank ({r1}, {r2}) modulo coboundaries, expected ({}, {})",
            t.1, t.2
        ));
    }
    let w = germ.weights();
    let s = germ.s();
    let graded = if germ.is_unperturbed() {
        oracle.rows.clone()
    } else {
        graded_rows(&germ.pi0(), cutoff)
    };
    let offending_degree = graded
        .iter()
        .find(|r| predicted(&theorem, w, s, r.k) != (r.h0, r.h1, r.h2))
        .map(|r| r.k);
    if !oracle.stabilized {
        notes.push(format!(
            "oracle totals not stable past cutoff {cutoff}; raise the cutoff"
        ));
    }
    Ok(CrossCheck {
        theorem,
        oracle,
        agree,
        offending_degree,
        notes,
    })
}

/// `2d + max(w1, w2)`.
pub fn default_cutoff(germ: &PoissonGerm) -> i64 {
    2 * germ.d() + germ.weights().max()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    fn w(a: i64, b: i64) -> Weights {
        Weights::new(a, b).unwrap()
    }

    #[test]
    fn graded_row_examples() {
        let morse = p("x^2+y^2");
        let r = graded_cochain_dims(&morse, w(1, 1), 0).unwrap();
        assert_eq!((r.dim_x, r.rank_d2, r.rank_d1, r.h1), (4, 2, 0, 2));
        let r = graded_cochain_dims(&morse, w(1, 1), -2).unwrap();
        assert_eq!((r.dim_v, r.rank_d2_in, r.h2), (1, 0, 1));
        let r = graded_cochain_dims(&p("x"), w(1, 1), -1).unwrap();
        assert_eq!(r.h1, 1);
    }

    #[test]
    fn oracle_examples() {
        let regular = PoissonGerm::unperturbed(p("x"), w(1, 1)).unwrap();
        let rep = oracle_report(&regular, 6);
        assert_eq!(rep.totals, (1, 1, 0));
        assert!(rep.stabilized);
        let morse = PoissonGerm::unperturbed(p("x^2+y^2"), w(1, 1)).unwrap();
        let rep = oracle_report(&morse, 8);
        assert_eq!(rep.totals, (1, 2, 2));
        assert!(rep.stabilized);
    }

    #[test]
    fn e8_oracle() {
        let e8 = PoissonGerm::unperturbed(p("x^3+y^5"), w(5, 3)).unwrap();
        let rep = oracle_report(&e8, 30);
        assert_eq!(rep.totals, (1, 1, 8));
    }

    #[test]
    fn filtered_matches_graded_for_d5() {
        let f = p("x^2*y+y^4");
        let pi = PoissonGerm::new(f.clone(), p("x"), w(3, 2)).unwrap();
        let pi0 = pi.pi0();
        let a = oracle_report(&pi, 16);
        let b = oracle_report(&pi0, 16);
        assert_eq!(a.totals, b.totals);
        assert_eq!(a.totals, (1, 2, 6));
        assert!(a.stabilized);
    }

    #[test]
    fn crosscheck_examples() {
        let morse = PoissonGerm::unperturbed(p("x^2+y^2"), w(1, 1)).unwrap();
        let cc = crosscheck(&morse, 8).unwrap();
        assert!(cc.all_agree());
        assert_eq!(cc.offending_degree, None);
        let a2 = PoissonGerm::unperturbed(p("x^2+y^3"), w(3, 2)).unwrap();
        let cc = crosscheck(&a2, default_cutoff(&a2)).unwrap();
        assert!(cc.all_agree());
        assert_eq!(cc.oracle.totals, (1, 1, 2));
    }

    #[test]
    fn representatives_are_independent() {
        let pi = PoissonGerm::new(p("x^2*y+y^4"), p("x"), w(3, 2)).unwrap();
        let t = theorem_report(&pi).unwrap();
        let ranks = representative_ranks(&pi, &t.h1_basis, &t.h2_basis, 16);
        assert_eq!(ranks, (2, 6));
    }
}
