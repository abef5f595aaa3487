//! Command-line front end: argument parsing, dispatch and report rendering.
//!
//! [`run`] does all the work and returns the exit code together with what
//! should go to standard output and standard error, so it can be tested
//! without spawning a process.

pub mod report;
mod text;

use clap::{Args, Parser, Subcommand, ValueEnum};

use poisson2_core::cohomology::theorem_report;
use poisson2_core::milnor::{milnor_data, resonant_monomials};
use poisson2_core::normal_forms::{
    catalog, check_pushforward, d_form, default_order, normalize, standard_labels,
    tabulated_discrepancy, tabulated_h2, AdeLabel, CatalogEntry,
};
use poisson2_core::oracle::{crosscheck, default_cutoff, oracle_report};
use poisson2_core::poisson::PoissonGerm;
use poisson2_core::qpoly::{parse_poly, Axis, Poly, Rational, Weights};
use poisson2_core::Error;

use report::*;

#[derive(Debug, Parser)]
#[command(
    name = "poisson2",
    version,
    about = "Poisson cohomology and normal forms of plane Poisson germs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Quasihomogeneous decomposition of f
    Grade(Input),
    /// Milnor algebra basis and codimension
    Milnor(Input),
    /// Cohomology dimensions and representatives from the closed-form bases
    Cohomology(Input),
    /// Cohomology dimensions by direct linear algebra through a cutoff
    Oracle(Input),
    /// Compare the closed-form bases with the oracle
    Crosscheck(Input),
    /// Bring f (1 + unit) to the form c f (1 + h) by a jet of diffeomorphism
    Normalize(Input),
    /// List catalog germs, or show one with --catalog
    Catalog(Input),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Weights as w1,w2
    #[arg(long, value_name = "W1,W2")]
    pub weights: Option<String>,
    #[arg(
        long,
        value_name = "EXPR",
        conflicts_with = "catalog",
        allow_hyphen_values = true
    )]
    pub f: Option<String>,
    /// Quasihomogeneous multiplier of degree d - w1 - w2
    #[arg(
        long,
        value_name = "EXPR",
        conflicts_with = "catalog",
        allow_hyphen_values = true
    )]
    pub h: Option<String>,
    /// Unit perturbation for normalize; defaults to h
    #[arg(long, value_name = "EXPR", allow_hyphen_values = true)]
    pub unit: Option<String>,
    #[arg(long, value_name = "N", allow_hyphen_values = true)]
    pub cutoff: Option<i64>,
    #[arg(long, value_name = "N")]
    pub order: Option<i64>,
    /// Catalog germ, e.g. D:5 or A:3:-
    #[arg(long, value_name = "FAMILY:INDEX[:SIGN]")]
    pub catalog: Option<String>,
    /// Modulus value for catalog germs
    #[arg(long, value_name = "Q", allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Use x^2 y +- y^(2p-1) for D even instead of the tabulated form
    #[arg(long)]
    pub d_form: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

/// Exit code and the two output streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. }
            | Error::NegativeExponent { .. }
            | Error::InvalidWeights(..)
            | Error::InvalidLabel(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

type Out<T> = std::result::Result<T, Failure>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let msg = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: msg,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: msg,
                }
            };
        }
    };
    let mut out = String::new();
    let status = dispatch(&cli.command, &mut out);
    let mut stderr = String::new();
    let code = match status {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            stderr.push_str(&format!("error: {m}\n"));
            2
        }
        Err(Failure::Domain(m)) => {
            stderr.push_str(&format!("error: {m}\n"));
            1
        }
    };
    Outcome {
        code,
        stdout: out,
        stderr,
    }
}

fn dispatch(cmd: &Command, out: &mut String) -> Out<i32> {
    match cmd {
        Command::Grade(i) => emit(out, i.format, &grade(i)?),
        Command::Milnor(i) => emit(out, i.format, &milnor(i)?),
        Command::Cohomology(i) => {
            let germ = resolve(i)?.germ;
            let rep = theorem_report(&germ)?;
            emit(out, i.format, &CohomologyJson::from_theorem(&germ, &rep))
        }
        Command::Oracle(i) => {
            let germ = resolve(i)?.germ;
            let cutoff = i.cutoff.unwrap_or_else(|| default_cutoff(&germ));
            let o = oracle_report(&germ, cutoff);
            let c = milnor_data(germ.f(), germ.weights())?.codim.into();
            let r = resonant_monomials(germ.weights(), germ.d()).len();
            emit(out, i.format, &CohomologyJson::from_oracle(&germ, r, c, &o))
        }
        Command::Crosscheck(i) => {
            let src = resolve(i)?;
            let germ = &src.germ;
            let cc = crosscheck(germ, i.cutoff.unwrap_or_else(|| default_cutoff(germ)))?;
            let mut rep = CrossCheckJson::new(germ, &cc);
            if let Some(entry) = &src.entry {
                rep.notes
                    .extend(tabulated_discrepancy(entry, cc.theorem.h2_dim));
            }
            emit(out, i.format, &rep)?;
            Ok(if cc.all_agree() { 0 } else { 1 })
        }
        Command::Normalize(i) => emit(out, i.format, &normalize_cmd(i)?),
        Command::Catalog(i) => {
            if i.catalog.is_some() {
                let entry = resolve(i)?.entry.expect("catalog source");
                emit(out, i.format, &catalog_json(&entry))
            } else {
                let all: Vec<CatalogJson> = standard_labels()
                    .iter()
                    .map(|l| catalog(l).map(|e| catalog_json(&e)))
                    .collect::<poisson2_core::Result<_>>()?;
                emit(out, i.format, &all)
            }
        }
    }
}

fn emit<R: serde::Serialize + text::Text + ?Sized>(
    out: &mut String,
    fmt: Format,
    rep: &R,
) -> Out<i32> {
    match fmt {
        Format::Json => {
            let s = serde_json::to_string_pretty(rep).expect("reports serialize");
            out.push_str(&s);
            out.push('\n');
        }
        Format::Text => rep.render(out),
    }
    Ok(0)
}

struct Source {
    germ: PoissonGerm,
    entry: Option<CatalogEntry>,
}

fn parse_expr(flag: &str, text: &str) -> Out<Poly> {
    parse_poly(text).map_err(|e| {
        let pos = match &e {
            Error::Syntax { pos, .. } | Error::NegativeExponent { pos } => Some(*pos),
            _ => None,
        };
        let mut msg = format!("--{flag}: {e}");
        if let Some(p) = pos {
            let col = text[..p.min(text.len())].chars().count();
            msg.push_str(&format!("\n  {text}\n  {}^", " ".repeat(col)));
        }
        Failure::Usage(msg)
    })
}

fn parse_weights(text: &str) -> Out<Weights> {
    let bad = || Failure::Usage(format!("--weights: expected W1,W2, got '{text}'"));
    let (a, b) = text.split_once(',').ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    Ok(Weights::new(a, b)?)
}

fn parse_rational(flag: &str, text: &str) -> Out<Rational> {
    let p = parse_expr(flag, text)?;
    if p.terms()
        .any(|(m, _)| m.exponent(Axis::X) + m.exponent(Axis::Y) > 0)
    {
        return Err(Failure::Usage(format!(
            "--{flag}: expected a rational number, got '{text}'"
        )));
    }
    Ok(p.constant_term())
}

fn catalog_entry(i: &Input, label: &str) -> Out<CatalogEntry> {
    let mut label: AdeLabel = label.parse()?;
    if let Some(l) = &i.lambda {
        label = label.with_lambda(parse_rational("lambda", l)?);
    }
    Ok(if i.d_form {
        d_form(&label)?
    } else {
        catalog(&label)?
    })
}

fn weights_of(i: &Input) -> Out<Weights> {
    match &i.weights {
        Some(w) => parse_weights(w),
        None => Err(Failure::Usage(
            "--weights is required unless --catalog is given".into(),
        )),
    }
}

fn raw_f(i: &Input) -> Out<(Weights, Poly)> {
    if let Some(label) = &i.catalog {
        let e = catalog_entry(i, label)?;
        return Ok((e.germ.weights(), e.germ.f().clone()));
    }
    let w = weights_of(i)?;
    let f =
        i.f.as_deref()
            .ok_or_else(|| Failure::Usage("--f is required unless --catalog is given".into()))?;
    Ok((w, parse_expr("f", f)?))
}

fn resolve(i: &Input) -> Out<Source> {
    if let Some(label) = &i.catalog {
        let entry = catalog_entry(i, label)?;
        return Ok(Source {
            germ: entry.germ.clone(),
            entry: Some(entry),
        });
    }
    let (w, f) = raw_f(i)?;
    let h = match &i.h {
        Some(t) => parse_expr("h", t)?,
        None => Poly::zero(),
    };
    Ok(Source {
        germ: PoissonGerm::new(f, h, w)?,
        entry: None,
    })
}

fn grade(i: &Input) -> Out<GradeReport> {
    let (w, f) = raw_f(i)?;
    let d = match f.is_quasihomogeneous(w) {
        Ok(d) => d,
        Err(Error::ZeroPolynomial) => None,
        Err(e) => return Err(e.into()),
    };
    Ok(GradeReport {
        weights: weights_pair(w),
        f: f.to_string_with(w),
        quasihomogeneous: d.is_some(),
        d,
        s: d.map(|d| d - w.sum()),
        components: f
            .graded_components(w)
            .into_iter()
            .map(|(degree, p)| Component {
                degree,
                poly: p.to_string_with(w),
            })
            .collect(),
    })
}

fn milnor(i: &Input) -> Out<MilnorReport> {
    let (w, f) = raw_f(i)?;
    let m = milnor_data(&f, w)?;
    let d = f
        .is_quasihomogeneous(w)?
        .ok_or(Error::NotQuasihomogeneous {
            w1: w.w1() as u32,
            w2: w.w2() as u32,
        })?;
    Ok(MilnorReport {
        weights: weights_pair(w),
        f: f.to_string_with(w),
        d,
        c: m.codim.into(),
        basis: m.basis.iter().map(|u| u.to_string()).collect(),
        bound: m.bound,
        checked_through: m.checked_through,
    })
}

fn normalize_cmd(i: &Input) -> Out<NormalizeReport> {
    let germ = resolve(i)?.germ;
    let (w, f, d) = (germ.weights(), germ.f().clone(), germ.d());
    let u = match &i.unit {
        Some(t) => parse_expr("unit", t)?,
        None => germ.h().clone(),
    };
    let n = i.order.unwrap_or_else(|| default_order(d, w));
    let res = normalize(&f, &u, w, n)?;
    let src = &f * &(&Poly::one() + &u);
    let check = check_pushforward(&res.phi, &src, &res.target(&f), n + d);
    if !check.pass {
        return Err(Failure::Domain(format!(
            "pushforward check failed at quasidegree {:?}",
            check.residual_order
        )));
    }
    Ok(NormalizeReport {
        weights: weights_pair(w),
        f: f.to_string_with(w),
        unit: u.to_string_with(w),
        d,
        s: germ.s(),
        order: n,
        h: res.h_out.to_string_with(w),
        constant: res.constant.to_string(),
        phi: [
            res.phi.phi1().to_string_with(w),
            res.phi.phi2().to_string_with(w),
        ],
        check: CheckJson {
            through: check.through,
            residual_order: check.residual_order,
            pass: check.pass,
        },
    })
}

fn catalog_json(e: &CatalogEntry) -> CatalogJson {
    let g = &e.germ;
    let w = g.weights();
    CatalogJson {
        label: e.label.to_string(),
        weights: weights_pair(w),
        f: g.f().to_string_with(w),
        h: g.h().to_string_with(w),
        d: g.d(),
        s: g.s(),
        as_printed: e.as_printed,
        tabulated_h2: tabulated_h2(&e.label),
    }
}
