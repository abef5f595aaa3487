#![allow(dead_code)]

use poisson2_core::normal_forms::{catalog, d_form, standard_labels, CatalogEntry};
use poisson2_core::poisson::VectorField;
use poisson2_core::qpoly::{monomials_in_range, monomials_of_degree, rat, Poly, Weights};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn weights(rng: &mut TestRng) -> Weights {
    Weights::new(rng.gen_range(1..=4), rng.gen_range(1..=4)).unwrap()
}

/// Sparse polynomial with quasidegrees in `lo..=hi` and coefficients in `-2..=2`.
pub fn poly(rng: &mut TestRng, w: Weights, lo: i64, hi: i64, terms: usize) -> Poly {
    let monos = monomials_in_range(w, lo, hi);
    let mut out = Poly::zero();
    if monos.is_empty() {
        return out;
    }
    for _ in 0..terms {
        let m = monos[rng.gen_range(0..monos.len())];
        out.add_term(m, rat(rng.gen_range(-2..=2)));
    }
    out
}

/// Dense quasihomogeneous polynomial of degree `k`.
pub fn homogeneous(rng: &mut TestRng, w: Weights, k: i64) -> Poly {
    Poly::from_terms(
        monomials_of_degree(w, k)
            .into_iter()
            .map(|m| (m, rat(rng.gen_range(-2..=2)))),
    )
}

/// Field with both slots sparse up to poly degree `hi`.
pub fn field(rng: &mut TestRng, w: Weights, hi: i64, terms: usize) -> VectorField {
    VectorField::new(poly(rng, w, 0, hi, terms), poly(rng, w, 0, hi, terms), w)
}

/// Quasihomogeneous field of vector-field degree `m`.
pub fn homogeneous_field(rng: &mut TestRng, w: Weights, m: i64) -> VectorField {
    VectorField::new(
        homogeneous(rng, w, m + w.w1()),
        homogeneous(rng, w, m + w.w2()),
        w,
    )
}

/// The sweep catalog, with even `D` in its `x^2 y` form.
pub fn sweep() -> Vec<CatalogEntry> {
    standard_labels()
        .iter()
        .map(|l| {
            if l.family == poisson2_core::normal_forms::Family::D && l.k % 2 == 0 {
                d_form(l).unwrap()
            } else {
                catalog(l).unwrap()
            }
        })
        .collect()
}
