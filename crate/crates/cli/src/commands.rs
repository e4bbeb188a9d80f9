//! Command-line surface and dispatch to the library.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use formanifold::localforms::{
    constant_rank_check, jet_invert, kernel_surjectivity_certificate, morphism_to_jetmap,
    rank_normal_form, standardize, JetMap, KernelCertificate, Lift, Verdict,
};
use formanifold::morphism::{Morphism, RankTriple};
use formanifold::series::{var_names, DEFAULT_ORDER};
use formanifold::submanifold::{
    borel_preimage, ideal_membership, level_set, slice_pullback, SliceSpec,
};
use formanifold::Rational;
use serde_json::{json, Value};

use crate::parse::{
    parse_expression, parse_morphism, parse_naturals, parse_point, InputError, Vars,
};
use crate::print::jetmap_lines;
use crate::report::{rationals, record, ErrorEntry, Report, EXIT_OK, EXIT_PARSE};

#[derive(Debug, Parser)]
#[command(
    name = "formanifold",
    version,
    about = "Exact jet calculus for morphisms of formal manifold charts"
)]
pub struct Cli {
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Truncation order for formal variables and jets.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Differential, rank triple, classification, constant rank, kernel certificate and normal form.
    Analyze {
        file: PathBuf,
        /// Source point, comma-separated rationals.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        point: String,
    },
    /// Composite `outer . inner` of two morphism files.
    Compose { outer: PathBuf, inner: PathBuf },
    /// Inverse jet of a morphism with invertible differential.
    Invert {
        file: PathBuf,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        point: String,
    },
    /// Chart changes bringing the morphism to its standard form.
    Standardize {
        file: PathBuf,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        point: String,
    },
    /// Fiber through a source point.
    LevelSet {
        file: PathBuf,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        point: String,
        /// Target value; defaults to the image of the point.
        #[arg(long, allow_hyphen_values = true)]
        value: Option<String>,
    },
    /// Pull a function in x, y back along a slice.
    SlicePullback {
        /// `n,n',r,k,k'`.
        #[arg(long)]
        slice: String,
        function: String,
    },
    /// A function in x, y whose slice pullback is the given function in u, z.
    BorelPreimage {
        #[arg(long)]
        slice: String,
        function: String,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Analyze { .. } => "analyze",
            Command::Compose { .. } => "compose",
            Command::Invert { .. } => "invert",
            Command::Standardize { .. } => "standardize",
            Command::LevelSet { .. } => "level-set",
            Command::SlicePullback { .. } => "slice-pullback",
            Command::BorelPreimage { .. } => "borel-preimage",
        }
    }
}

enum Failure {
    Input(InputError),
    Io { path: String, message: String },
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<formanifold::Error> for Failure {
    fn from(e: formanifold::Error) -> Self {
        Failure::Input(e.into())
    }
}

impl From<crate::parse::ParseError> for Failure {
    fn from(e: crate::parse::ParseError) -> Self {
        Failure::Input(e.into())
    }
}

/// Runs one invocation; returns the report and the process exit code.
pub fn run(cli: &Cli) -> (Report, i32) {
    let mut report = Report::new(cli.command.name(), cli.order);
    let outcome = match &cli.command {
        Command::Analyze { file, point } => analyze(&mut report, file, point, cli.order),
        Command::Compose { outer, inner } => compose(&mut report, outer, inner, cli.order),
        Command::Invert { file, point } => invert(&mut report, file, point, cli.order),
        Command::Standardize { file, point } => {
            standardize_cmd(&mut report, file, point, cli.order)
        }
        Command::LevelSet { file, point, value } => {
            level_set_cmd(&mut report, file, point, value.as_deref(), cli.order)
        }
        Command::SlicePullback { slice, function } => {
            slice_pullback_cmd(&mut report, slice, function, cli.order)
        }
        Command::BorelPreimage { slice, function } => {
            borel_cmd(&mut report, slice, function, cli.order)
        }
    };
    let code = match outcome {
        Ok(()) => EXIT_OK,
        Err(Failure::Input(e)) => record(&mut report, &e),
        Err(Failure::Io { path, message }) => {
            report.errors.push(ErrorEntry {
                code: "IoError".into(),
                message: format!("{path}: {message}"),
                detail: None,
            });
            EXIT_PARSE
        }
    };
    (report, code)
}

fn load(report: &mut Report, key: &str, path: &Path, order: usize) -> Result<Morphism, Failure> {
    let shown = path.display().to_string();
    report.input(key, shown.clone());
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io {
        path: shown,
        message: e.to_string(),
    })?;
    Ok(parse_morphism(&text, order)?)
}

fn point(report: &mut Report, key: &str, text: &str) -> Result<Vec<Rational>, Failure> {
    let p = parse_point(text)?;
    report.input(key, rationals(&p));
    Ok(p)
}

fn triple(t: &RankTriple) -> Value {
    json!({ "total": t.total, "reduced": t.reduced, "formal": t.formal, "mixed": t.mixed() })
}

fn dims(d: (usize, usize)) -> Value {
    json!([d.0, d.1])
}

fn target_names(tgt: (usize, usize)) -> Vec<String> {
    let mut names = var_names("x", tgt.0);
    names.extend(var_names("y", tgt.1));
    names
}

fn certificate(c: &KernelCertificate, tgt: (usize, usize)) -> Value {
    let names = target_names(tgt);
    let vectors: Vec<Value> = c
        .vectors
        .iter()
        .map(|v| {
            let lift = match &v.lift {
                Lift::Lifted(j) => Value::String(j.render(&names)),
                Lift::NotLiftable => Value::Null,
            };
            json!({ "label": v.label, "coeffs": rationals(&v.coeffs), "lift": lift })
        })
        .collect();
    let verdict = match c.verdict {
        Verdict::SurjectiveAtOrder(_) => "surjective_at_order",
        Verdict::NotSurjective => "not_surjective",
    };
    let witness = c.witness().map_or(
        Value::Null,
        |w| json!({ "label": w.label, "coeffs": rationals(&w.coeffs) }),
    );
    json!({
        "verdict": verdict,
        "order": c.order,
        "dim_kernel_degree2": c.dim_ker_deg2,
        "dim_truncated_kernel": c.dim_truncated_kernel,
        "kernel": vectors,
        "witness": witness,
    })
}

fn analyze(report: &mut Report, file: &Path, p: &str, order: usize) -> Result<(), Failure> {
    let m = load(report, "file", file, order)?;
    let b = point(report, "point", p)?;
    report.set("source", dims(m.src()));
    report.set("target", dims(m.tgt()));
    report.set("morphism", m.render_lines());
    report.set("image", rationals(&m.underlying_point(&b)?));
    let d = m.differential_at(&b)?.entries;
    let rows: Vec<Value> = d.to_rows().iter().map(|r| rationals(r)).collect();
    report.set("differential", rows);
    report.set("rank_triple", triple(&m.rank_at(&b)?));
    let c = m.classify_at(&b)?;
    report.set(
        "classification",
        json!({
            "immersion": c.immersion,
            "submersion": c.submersion,
            "regular": c.regular,
            "bijective_differential": c.bijective_differential,
        }),
    );
    let cr = constant_rank_check(&m, &b)?;
    report.set(
        "constant_rank",
        json!({ "constant": cr.constant, "witness": cr.witness }),
    );
    let cert = kernel_surjectivity_certificate(&m, &b, order)?;
    report.set("certificate", certificate(&cert, m.tgt()));
    if cr.constant {
        let nf = rank_normal_form(&m, &b, order)?;
        report.set(
            "normal_form",
            json!({
                "theta_tgt": jetmap_lines(&nf.theta_tgt, ("x", "y"), ("x", "y")),
                "theta_src": jetmap_lines(&nf.theta_src, ("u", "z"), ("u", "z")),
                "conjugated": nf.conjugated.render_lines(),
            }),
        );
    }
    Ok(())
}

fn compose(report: &mut Report, outer: &Path, inner: &Path, order: usize) -> Result<(), Failure> {
    let o = load(report, "outer", outer, order)?;
    let i = load(report, "inner", inner, order)?;
    let c = Morphism::compose(&o, &i)?;
    report.set("source", dims(c.src()));
    report.set("target", dims(c.tgt()));
    report.set("morphism", c.render_lines());
    Ok(())
}

fn roundtrip(j: &JetMap, inv: &JetMap) -> Result<&'static str, Failure> {
    let left = JetMap::compose(inv, j)?;
    let right = JetMap::compose(j, inv)?;
    let ok = left == JetMap::identity(j.src(), j.src_base().to_vec(), j.order())?
        && right == JetMap::identity(j.tgt(), j.tgt_base().to_vec(), j.order())?;
    Ok(if ok { "ok" } else { "failed" })
}

fn invert(report: &mut Report, file: &Path, p: &str, order: usize) -> Result<(), Failure> {
    let m = load(report, "file", file, order)?;
    let b = point(report, "point", p)?;
    let j = morphism_to_jetmap(&m, &b, order)?;
    let inv = jet_invert(&j, order)?;
    report.set("base", rationals(&j.tgt_base()[..m.tgt().0]));
    report.set("inverse", jetmap_lines(&inv, ("x", "y"), ("u", "z")));
    report.set("roundtrip", roundtrip(&j, &inv)?);
    Ok(())
}

fn standardize_cmd(report: &mut Report, file: &Path, p: &str, order: usize) -> Result<(), Failure> {
    let m = load(report, "file", file, order)?;
    let b = point(report, "point", p)?;
    let s = standardize(&m, &b, order)?;
    report.set("rank_triple", triple(&s.triple));
    report.set("ranks", json!([s.r1(), s.r2(), s.r3()]));
    report.set("standardized", s.standardized.render_lines());
    report.set(
        "theta_tgt",
        jetmap_lines(&s.theta_tgt, ("x", "y"), ("x", "y")),
    );
    report.set(
        "theta_src",
        jetmap_lines(&s.theta_src, ("u", "z"), ("u", "z")),
    );
    report.set("agreement_degree", s.residual);
    report.set("certificate", certificate(&s.certificate, m.tgt()));
    Ok(())
}

fn level_set_cmd(
    report: &mut Report,
    file: &Path,
    p: &str,
    value: Option<&str>,
    order: usize,
) -> Result<(), Failure> {
    let m = load(report, "file", file, order)?;
    let b = point(report, "point", p)?;
    let a = match value {
        Some(v) => point(report, "value", v)?,
        None => m.underlying_point(&b)?,
    };
    let ls = level_set(&m, &a, &b, order)?;
    let phi = morphism_to_jetmap(&m, &b, order)?;
    let comp = JetMap::compose(&phi, &ls.embedding)?;
    let constant = comp
        .components()
        .iter()
        .all(|c| c.shifted().degree().unwrap_or(0) == 0);
    let mut names = var_names("u", m.src().0);
    names.extend(var_names("z", m.src().1));
    report.set("value", rationals(&a));
    report.set("dims", dims(ls.dims));
    report.set("rank_triple", triple(&ls.standardization.triple));
    report.set(
        "embedding",
        jetmap_lines(&ls.embedding, ("v", "w"), ("u", "z")),
    );
    report.set(
        "ideal_generators",
        ls.ideal_generators
            .iter()
            .map(|g| g.render(&names))
            .collect::<Vec<_>>(),
    );
    report.set("fiber_check", if constant { "ok" } else { "failed" });
    Ok(())
}

fn slice_spec(report: &mut Report, text: &str) -> Result<SliceSpec, Failure> {
    let v = parse_naturals(text)?;
    report.input("slice", json!(v));
    if v.len() != 5 {
        return Err(crate::parse::ParseError {
            line: 1,
            col: 1,
            message: format!("a slice is five numbers n,n',r,k,k', got {}", v.len()),
        }
        .into());
    }
    Ok(SliceSpec::new(v[0], v[1], v[2], v[3], v[4])?)
}

fn slice_pullback_cmd(
    report: &mut Report,
    slice: &str,
    function: &str,
    order: usize,
) -> Result<(), Failure> {
    let s = slice_spec(report, slice)?;
    report.input("function", function);
    let f = parse_expression(function, Vars::target(s.n, s.k), order)?;
    let g = slice_pullback(s, &f)?;
    report.set(
        "pullback",
        g.render(&var_names("u", s.n_src), &var_names("z", s.k_src)),
    );
    report.set("in_kernel", ideal_membership(s, &f)?);
    Ok(())
}

fn borel_cmd(
    report: &mut Report,
    slice: &str,
    function: &str,
    order: usize,
) -> Result<(), Failure> {
    let s = slice_spec(report, slice)?;
    report.input("function", function);
    let g = parse_expression(function, Vars::source(s.n_src, s.k_src), order)?;
    let f = borel_preimage(s, &g, order)?;
    let back = slice_pullback(s, &f)?;
    report.set(
        "preimage",
        f.render(&var_names("x", s.n), &var_names("y", s.k)),
    );
    report.set("roundtrip", if back == g { "ok" } else { "failed" });
    Ok(())
}
