use poisson2_core::cohomology::theorem_report;
use poisson2_core::milnor::{milnor_data, Codimension};
use poisson2_core::normal_forms::{catalog, d_form, tabulated_discrepancy, AdeLabel, Family, Sign};
use poisson2_core::oracle::{crosscheck, default_cutoff};
use poisson2_core::qpoly::{parse_poly, Weights};

fn mu(f: &str, w: (i64, i64)) -> Codimension {
    let w = Weights::new(w.0, w.1).unwrap();
    milnor_data(&parse_poly(f).unwrap(), w).unwrap().codim
}

#[test]
fn milnor_numbers_of_simple_singularities() {
    for k in 1..=8u32 {
        let f = format!("x^{} + y^2", k + 1);
        assert_eq!(
            mu(&f, (2, (k + 1) as i64)),
            Codimension::Finite(k as usize),
            "A{k}"
        );
    }
    assert_eq!(mu("x^2*y + y^4", (3, 2)), Codimension::Finite(5));
    assert_eq!(mu("x^3 + y^4", (4, 3)), Codimension::Finite(6));
    assert_eq!(mu("x^3 + x*y^3", (3, 2)), Codimension::Finite(7));
    assert_eq!(mu("x^3 + y^5", (5, 3)), Codimension::Finite(8));
    assert_eq!(mu("x^2", (1, 1)), Codimension::Infinite);
    assert_eq!(mu("x^2*y", (1, 2)), Codimension::Infinite);
}

#[test]
fn catalog_entries_match_expected_invariants() {
    // (label, mu, r) for the entries with h = 0 or a single modulus
    let cases = [
        (AdeLabel::new(Family::A, 2), 2, 0),
        (AdeLabel::new(Family::A, 3).with_sign(Sign::Plus), 3, 1),
        (AdeLabel::new(Family::A, 4), 4, 0),
        (AdeLabel::new(Family::D, 5), 5, 1),
        (AdeLabel::new(Family::D, 7), 7, 1),
        (AdeLabel::new(Family::E, 6), 6, 0),
        (AdeLabel::new(Family::E, 7), 7, 1),
        (AdeLabel::new(Family::E, 8), 8, 0),
    ];
    for (label, c, r) in cases {
        let e = catalog(&label).unwrap();
        let rep = theorem_report(&e.germ).unwrap();
        assert_eq!(rep.c, c, "{label}");
        assert_eq!(rep.r, r, "{label}");
        assert_eq!(rep.h2_dim, r + c, "{label}");
        assert!(!e.as_printed, "{label}");
    }
}

#[test]
fn d_even_printed_form_is_flagged() {
    let label = AdeLabel::new(Family::D, 6).with_sign(Sign::Plus);
    assert!(catalog(&label).unwrap().as_printed);
    let e = d_form(&label).unwrap();
    let rep = theorem_report(&e.germ).unwrap();
    assert_eq!(rep.c, 6);
}

#[test]
fn d5_discrepancy_is_reported() {
    let e = catalog(&AdeLabel::new(Family::D, 5)).unwrap();
    let cc = crosscheck(&e.germ, default_cutoff(&e.germ)).unwrap();
    assert!(cc.all_agree());
    assert_eq!(cc.oracle.totals.2, 6);
    let note = tabulated_discrepancy(&e, cc.theorem.h2_dim).unwrap();
    assert!(note.contains("h2 = 7") && note.contains("h2 = 6"));
    let d7 = catalog(&AdeLabel::new(Family::D, 7)).unwrap();
    let rep = theorem_report(&d7.germ).unwrap();
    assert!(tabulated_discrepancy(&d7, rep.h2_dim).is_some());
}

#[test]
fn label_parsing() {
    let l: AdeLabel = "D:5".parse().unwrap();
    assert_eq!(l, AdeLabel::new(Family::D, 5));
    let l: AdeLabel = "A:3:-".parse().unwrap();
    assert_eq!(l.sign, Sign::Minus);
    assert!("E:9".parse::<AdeLabel>().is_err());
    assert!("A:2:-".parse::<AdeLabel>().is_err());
    assert!("Q:1".parse::<AdeLabel>().is_err());
}
