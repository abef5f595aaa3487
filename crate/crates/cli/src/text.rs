//! Plain-text rendering of the reports.

use std::fmt::Write;

use crate::report::*;

pub trait Text {
    fn render(&self, out: &mut String);
}

fn line(out: &mut String, key: &str, value: impl std::fmt::Display) {
    let _ = writeln!(out, "{key}: {value}");
}

fn list(out: &mut String, key: &str, items: &[String]) {
    if items.is_empty() {
        line(out, key, "(none)");
        return;
    }
    let _ = writeln!(out, "{key}:");
    for it in items {
        let _ = writeln!(out, "  {it}");
    }
}

fn weights(w: &[i64; 2]) -> String {
    format!("({}, {})", w[0], w[1])
}

fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or("-".to_string(), T::to_string)
}

impl Text for GradeReport {
    fn render(&self, out: &mut String) {
        line(out, "weights", weights(&self.weights));
        line(out, "f", &self.f);
        line(out, "quasihomogeneous", self.quasihomogeneous);
        line(out, "d", opt(&self.d));
        line(out, "s", opt(&self.s));
        let comps: Vec<String> = self
            .components
            .iter()
            .map(|c| format!("[{}] {}", c.degree, c.poly))
            .collect();
        list(out, "components", &comps);
    }
}

impl Text for MilnorReport {
    fn render(&self, out: &mut String) {
        line(out, "weights", weights(&self.weights));
        line(out, "f", &self.f);
        line(out, "d", self.d);
        line(out, "c", self.c);
        line(out, "basis", format!("{{{}}}", self.basis.join(", ")));
        line(out, "bound", self.bound);
    }
}

fn oracle(out: &mut String, o: &OracleJson) {
    let [a, b, c] = o.totals;
    line(out, "oracle cutoff", o.cutoff);
    line(out, "oracle totals", format!("({a}, {b}, {c})"));
    line(out, "oracle stabilized", o.stabilized);
    if !o.rows.is_empty() {
        let _ = writeln!(out, "oracle rows (k: dim F X V, rank d1 d2, h0 h1 h2):");
        for r in &o.rows {
            let _ = writeln!(
                out,
                "  {:>3}: {} {} {}, {} {}, {} {} {}",
                r.k, r.dim_f, r.dim_x, r.dim_v, r.rank_d1, r.rank_d2, r.h0, r.h1, r.h2
            );
        }
    }
}

impl Text for CohomologyJson {
    fn render(&self, out: &mut String) {
        line(out, "weights", weights(&self.weights));
        line(out, "f", &self.f);
        line(out, "h", &self.h);
        line(out, "d", self.d);
        line(out, "s", self.s);
        line(out, "r", self.r);
        line(out, "c", self.c);
        line(
            out,
            "dims",
            format!("({}, {}, {})", self.h0, self.h1, self.h2),
        );
        line(out, "provenance", &self.provenance);
        if self.provenance != "ORACLE" {
            list(out, "H1 basis", &self.h1_basis);
            list(out, "H2 basis", &self.h2_basis);
        }
        if let Some(o) = &self.oracle {
            oracle(out, o);
        }
    }
}

impl Text for CrossCheckJson {
    fn render(&self, out: &mut String) {
        self.report.render(out);
        let verdict = if self.agree.iter().all(|a| *a) {
            "AGREE"
        } else {
            "DISAGREE"
        };
        line(out, "agree", format!("{verdict} {:?}", self.agree));
        if let Some(k) = self.offending_degree {
            line(out, "offending degree", k);
        }
        for n in &self.notes {
            line(out, "note", n);
        }
    }
}

impl Text for NormalizeReport {
    fn render(&self, out: &mut String) {
        line(out, "weights", weights(&self.weights));
        line(out, "f", &self.f);
        line(out, "unit", &self.unit);
        line(out, "order", self.order);
        line(out, "h", &self.h);
        line(out, "constant", &self.constant);
        line(out, "phi", format!("({}, {})", self.phi[0], self.phi[1]));
        let verdict = if self.check.pass { "PASS" } else { "FAIL" };
        line(
            out,
            "check",
            format!("{verdict} through {}", self.check.through),
        );
    }
}

impl Text for CatalogJson {
    fn render(&self, out: &mut String) {
        let mut name = self.label.clone();
        if self.as_printed {
            name.push_str(" [AS-PRINTED]");
        }
        let _ = writeln!(
            out,
            "{name}: f = {}, h = {}, weights {}, d = {}, s = {}",
            self.f,
            self.h,
            weights(&self.weights),
            self.d,
            self.s
        );
    }
}

impl Text for [CatalogJson] {
    fn render(&self, out: &mut String) {
        for e in self {
            e.render(out);
        }
    }
}

impl Text for Vec<CatalogJson> {
    fn render(&self, out: &mut String) {
        self.as_slice().render(out);
    }
}
