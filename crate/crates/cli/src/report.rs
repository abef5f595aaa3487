//! Serializable report shapes. Polynomials and fields are rendered in the
//! input grammar; rationals as `p/q` strings.

use serde::{Deserialize, Serialize};

use poisson2_core::cohomology::CohomologyReport;
use poisson2_core::milnor::Codimension;
use poisson2_core::oracle::{CrossCheck, GradedDimsRow, OracleReport};
use poisson2_core::poisson::PoissonGerm;
use poisson2_core::qpoly::Weights;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InfiniteTag {
    #[serde(rename = "infinite")]
    Infinite,
}

/// An integer, or the string `"infinite"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CodimValue {
    Finite(usize),
    Infinite(InfiniteTag),
}

impl From<Codimension> for CodimValue {
    fn from(c: Codimension) -> Self {
        match c {
            Codimension::Finite(n) => CodimValue::Finite(n),
            Codimension::Infinite => CodimValue::Infinite(InfiniteTag::Infinite),
        }
    }
}

impl std::fmt::Display for CodimValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CodimValue::Finite(n) => write!(f, "{n}"),
            CodimValue::Infinite(_) => f.write_str("infinite"),
        }
    }
}

pub fn weights_pair(w: Weights) -> [i64; 2] {
    [w.w1(), w.w2()]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub degree: i64,
    pub poly: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradeReport {
    pub weights: [i64; 2],
    pub f: String,
    pub quasihomogeneous: bool,
    pub d: Option<i64>,
    pub s: Option<i64>,
    pub components: Vec<Component>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MilnorReport {
    pub weights: [i64; 2],
    pub f: String,
    pub d: i64,
    pub c: CodimValue,
    pub basis: Vec<String>,
    pub bound: i64,
    pub checked_through: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub k: i64,
    pub dim_f: usize,
    pub dim_x: usize,
    pub dim_v: usize,
    pub rank_d1: usize,
    pub rank_d2: usize,
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
}

impl From<&GradedDimsRow> for Row {
    fn from(r: &GradedDimsRow) -> Self {
        Row {
            k: r.k,
            dim_f: r.dim_f,
            dim_x: r.dim_x,
            dim_v: r.dim_v,
            rank_d1: r.rank_d1,
            rank_d2: r.rank_d2,
            h0: r.h0,
            h1: r.h1,
            h2: r.h2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleJson {
    pub cutoff: i64,
    pub rows: Vec<Row>,
    pub totals: [usize; 3],
    pub stabilized: bool,
}

impl From<&OracleReport> for OracleJson {
    fn from(o: &OracleReport) -> Self {
        OracleJson {
            cutoff: o.cutoff,
            rows: o.rows.iter().map(Row::from).collect(),
            totals: [o.totals.0, o.totals.1, o.totals.2],
            stabilized: o.stabilized,
        }
    }
}

/// The main cohomology record shared by `cohomology`, `oracle` and `crosscheck`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyJson {
    pub weights: [i64; 2],
    pub f: String,
    pub h: String,
    pub d: i64,
    pub s: i64,
    pub r: usize,
    pub c: CodimValue,
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
    pub h1_basis: Vec<String>,
    pub h2_basis: Vec<String>,
    pub provenance: String,
    pub oracle: Option<OracleJson>,
}

impl CohomologyJson {
    fn header(germ: &PoissonGerm, r: usize, c: CodimValue) -> Self {
        let w = germ.weights();
        CohomologyJson {
            weights: weights_pair(w),
            f: germ.f().to_string_with(w),
            h: germ.h().to_string_with(w),
            d: germ.d(),
            s: germ.s(),
            r,
            c,
            h0: 0,
            h1: 0,
            h2: 0,
            h1_basis: Vec::new(),
            h2_basis: Vec::new(),
            provenance: String::new(),
            oracle: None,
        }
    }

    pub fn from_theorem(germ: &PoissonGerm, rep: &CohomologyReport) -> Self {
        let mut out = Self::header(germ, rep.r, CodimValue::Finite(rep.c));
        out.h0 = rep.h0_dim;
        out.h1 = rep.h1_dim;
        out.h2 = rep.h2_dim;
        out.h1_basis = rep.h1_basis.iter().map(|x| x.to_string()).collect();
        out.h2_basis = rep.h2_basis.iter().map(|p| p.to_string()).collect();
        out.provenance = rep.provenance.to_string();
        out
    }

    /// Oracle totals only: no representatives.
    pub fn from_oracle(germ: &PoissonGerm, r: usize, c: CodimValue, o: &OracleReport) -> Self {
        let mut out = Self::header(germ, r, c);
        (out.h0, out.h1, out.h2) = o.totals;
        out.provenance = "ORACLE".to_string();
        out.oracle = Some(o.into());
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheckJson {
    #[serde(flatten)]
    pub report: CohomologyJson,
    pub agree: [bool; 3],
    pub offending_degree: Option<i64>,
    pub notes: Vec<String>,
}

impl CrossCheckJson {
    pub fn new(germ: &PoissonGerm, cc: &CrossCheck) -> Self {
        let mut report = CohomologyJson::from_theorem(germ, &cc.theorem);
        report.oracle = Some((&cc.oracle).into());
        CrossCheckJson {
            report,
            agree: cc.agree,
            offending_degree: cc.offending_degree,
            notes: cc.notes.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub through: i64,
    pub residual_order: Option<i64>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizeReport {
    pub weights: [i64; 2],
    pub f: String,
    pub unit: String,
    pub d: i64,
    pub s: i64,
    pub order: i64,
    pub h: String,
    pub constant: String,
    pub phi: [String; 2],
    pub check: CheckJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogJson {
    pub label: String,
    pub weights: [i64; 2],
    pub f: String,
    pub h: String,
    pub d: i64,
    pub s: i64,
    pub as_printed: bool,
    pub tabulated_h2: Option<usize>,
}
