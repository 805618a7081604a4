//! Commands over a session, each producing a text table and a JSON report.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::complexes::GradedDims;
use crate::derived::{
    ext_from_asym, ext_from_sym, ext_into_asym, ext_into_sym, tor_leib, verify_adjunctions,
    verify_class_relations, verify_corollary_trivial_coeffs, verify_degree_zero, verify_duality,
    verify_lext_acyclic, verify_rext_acyclic, verify_splittings, verify_theorem_ext,
    verify_theorem_tor, DerivedError, ExtVariant, Report, TorFlavor,
};
use crate::exactla::Matrix;
use crate::gmodules::{
    asinv, asym_functor, dual_sharp, flat_kurdiani, restrict_down, sinv, sym_functor,
    LieRightModule, Representation,
};
use crate::lpcomplexes::{lsym_complex, rasinv_complex};
use crate::session::{corpus_sessions, Session, SessionError, BUILTIN_LEIBNIZ, BUILTIN_LIE};

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error(transparent)]
    Session(#[from] SessionError),
    #[error(transparent)]
    Derived(#[from] DerivedError),
    #[error(transparent)]
    Module(#[from] crate::gmodules::ModuleError),
    #[error(transparent)]
    Lp(#[from] crate::lpcomplexes::LpError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Functor {
    Sym,
    Asym,
    Sinv,
    Asinv,
    Restrict,
    Dual,
    Flat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtRoute {
    /// `Ext(X, N^s)` for a g-module `X`.
    IntoSym,
    /// `Ext(X, N^a)`.
    IntoAsym,
    /// `Ext(N^a, X)`.
    FromAsym,
    /// `Ext(N^s, X)`.
    FromSym,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verify {
    ThmExtSym { n1: String, n2: String },
    ThmExtAsym { n1: String, n2: String },
    ThmTor { m: String, n: String },
    LextAcyclic { n: String },
    RextAcyclic { n: String },
    Splittings { n: String },
    Duality { module: String },
    Corollary { n: String },
    DegreeZero { module: String },
    ClassRelations { n: String },
    Adjunctions { module: String, n: String },
}

impl Verify {
    pub fn name(&self) -> &'static str {
        match self {
            Verify::ThmExtSym { .. } => "thm-ext-sym",
            Verify::ThmExtAsym { .. } => "thm-ext-asym",
            Verify::ThmTor { .. } => "thm-tor",
            Verify::LextAcyclic { .. } => "lext-acyclic",
            Verify::RextAcyclic { .. } => "rext-acyclic",
            Verify::Splittings { .. } => "splittings",
            Verify::Duality { .. } => "duality",
            Verify::Corollary { .. } => "corollary",
            Verify::DegreeZero { .. } => "degree-zero",
            Verify::ClassRelations { .. } => "class-relations",
            Verify::Adjunctions { .. } => "adjunctions",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Check,
    LieQuotient,
    Functor {
        functor: Functor,
        module: String,
    },
    Hl {
        cohomology: bool,
        module: String,
    },
    /// `lie` names the `g_Lie`-module, `module` the g-module.
    Ext {
        route: ExtRoute,
        lie: String,
        module: String,
    },
    Tor {
        m: String,
        n: String,
        flavor: TorFlavor,
    },
    Verify(Verify),
    Sweep,
}

/// Human-readable text plus the machine report; `passed` is false iff an assertion failed.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub json: Value,
    pub passed: bool,
}

pub use serde_json::Value as JsonValue;

pub fn to_pretty_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json serializes") + "\n"
}

/// The first failed check in a report, serialized.
pub fn first_failure(v: &Value) -> String {
    fn walk(v: &Value) -> Option<&Value> {
        match v {
            Value::Object(o) => {
                let failed = o.get("passed") == Some(&Value::Bool(false));
                if failed
                    && (o.contains_key("what") || o.get("error").is_some_and(|e| !e.is_null()))
                {
                    return Some(v);
                }
                o.values().find_map(walk)
            }
            Value::Array(a) => a.iter().find_map(walk),
            _ => None,
        }
    }
    walk(v).map_or_else(|| v.to_string(), Value::to_string)
}

fn series(g: &GradedDims, top: usize) -> Vec<Option<usize>> {
    (0..=top as i64).map(|n| g.get(n)).collect()
}

fn show(v: Option<usize>) -> String {
    v.map_or_else(|| "?".into(), |d| d.to_string())
}

fn matrix_json(m: &Matrix) -> Value {
    Value::Array(
        m.to_dense()
            .iter()
            .map(|r| Value::Array(r.iter().map(|q| json!(q.to_string())).collect()))
            .collect(),
    )
}

fn matrices_json(ms: &[Matrix]) -> Value {
    Value::Array(ms.iter().map(matrix_json).collect())
}

fn render_matrix(m: &Matrix) -> String {
    let rows: Vec<String> = m
        .to_dense()
        .iter()
        .map(|r| {
            format!(
                "[{}]",
                r.iter()
                    .map(|q| q.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            )
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

/// Text rendering of a verification report.
pub fn render_report(r: &Report, args: &str) -> String {
    let mut out = String::new();
    let status = if r.passed { "PASS" } else { "FAIL" };
    let _ = writeln!(out, "{status} {} {args}", r.name);
    if !r.table.columns.is_empty() {
        let mut header = vec!["n".to_string()];
        header.extend(r.table.columns.iter().cloned());
        let rows: Vec<Vec<String>> = r
            .table
            .rows
            .iter()
            .enumerate()
            .map(|(n, row)| {
                std::iter::once(n.to_string())
                    .chain(row.iter().map(|v| show(*v)))
                    .collect()
            })
            .collect();
        let widths: Vec<usize> = (0..header.len())
            .map(|c| {
                rows.iter()
                    .map(|r| r[c].len())
                    .chain([header[c].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: &[String]| -> String {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        let _ = writeln!(out, "  {}", line(&header));
        for row in &rows {
            let _ = writeln!(out, "  {}", line(row));
        }
    }
    for c in r.checks.iter().filter(|c| !c.passed) {
        let at = c
            .degree
            .map_or_else(String::new, |d| format!(" (degree {d})"));
        let _ = writeln!(out, "  failed: {}{at}", c.what);
    }
    out
}

fn report_output(r: Report, args: &str) -> Output {
    let text = render_report(&r, args);
    let passed = r.passed;
    Output {
        text,
        json: serde_json::to_value(&r).expect("report serializes"),
        passed,
    }
}

fn dims_output(title: &str, label: &str, g: &GradedDims, top: usize) -> Output {
    let s = series(g, top);
    let mut text = format!("{title}\n");
    for (n, v) in s.iter().enumerate() {
        let _ = writeln!(text, "  {label}{n} = {}", show(*v));
    }
    Output {
        text,
        json: json!({ "title": title, "dims": s }),
        passed: true,
    }
}

fn check(s: &Session) -> Output {
    let g = &s.algebra;
    let lq = g.lie();
    let mut text = format!(
        "session {}: algebra of dimension {} on {}\n",
        s.file.name,
        g.dim(),
        g.names().join(", ")
    );
    let _ = writeln!(
        text,
        "  Lie algebra: {}",
        if g.is_lie() { "yes" } else { "no" }
    );
    let _ = writeln!(text, "  dim g_Lie = {}", lq.dim());
    let mut modules = Vec::new();
    for (name, m) in &s.leibniz {
        let _ = writeln!(
            text,
            "  g-module {name}: dim {}, symmetric {}, antisymmetric {}",
            m.dim(),
            m.is_symmetric(),
            m.is_antisymmetric()
        );
        modules.push(json!({"name": name, "kind": "leibniz", "dim": m.dim(),
            "symmetric": m.is_symmetric(), "antisymmetric": m.is_antisymmetric()}));
    }
    for (name, m) in &s.lie_right {
        let _ = writeln!(text, "  right g_Lie-module {name}: dim {}", m.dim());
        modules.push(json!({"name": name, "kind": "lie-right", "dim": m.dim()}));
    }
    for (name, m) in &s.lie_left {
        let _ = writeln!(text, "  left g_Lie-module {name}: dim {}", m.dim());
        modules.push(json!({"name": name, "kind": "lie-left", "dim": m.dim()}));
    }
    let json = json!({"session": s.file.name, "dim": g.dim(), "basis": g.names(), "is_lie": g.is_lie(),
        "dim_lie": lq.dim(), "modules": modules});
    Output {
        text,
        json,
        passed: true,
    }
}

fn lie_quotient(s: &Session) -> Output {
    let g = &s.algebra;
    let lq = g.lie();
    let kernel: Vec<String> = lq
        .kernel
        .vectors()
        .iter()
        .map(|v| g.format_vector(v))
        .collect();
    let lie = &lq.target;
    let mut text = format!(
        "dim g_Lie = {}, kernel basis: {}\n",
        lq.dim(),
        kernel.join(", ")
    );
    let mut brackets = Vec::new();
    for i in 0..lie.dim() {
        for j in 0..lie.dim() {
            let b = lie.bracket(i, j);
            if b.iter().any(|q| !q.is_zero()) {
                let v = crate::algebras::format_combination(lie.names(), b);
                let _ = writeln!(text, "  [{}, {}] = {v}", lie.names()[i], lie.names()[j]);
                brackets.push(json!({"x": lie.names()[i], "y": lie.names()[j], "bracket": v}));
            }
        }
    }
    let json =
        json!({"dim_lie": lq.dim(), "kernel": kernel, "basis": lie.names(), "brackets": brackets});
    Output {
        text,
        json,
        passed: true,
    }
}

fn lie_module_output(title: &str, n: &LieRightModule) -> Output {
    let mut text = format!("{title}: dim {}\n", n.dim());
    for (a, m) in n.right().iter().enumerate() {
        let _ = writeln!(text, "  action of g_Lie basis {a}: {}", render_matrix(m));
    }
    Output {
        text,
        json: json!({"title": title, "dim": n.dim(), "right": matrices_json(n.right())}),
        passed: true,
    }
}

fn functor(s: &Session, f: Functor, module: &str) -> Result<Output, CommandError> {
    let m = s.leibniz_module(module)?;
    let out = match f {
        Functor::Sym => lie_module_output(&format!("sym {module}"), &sym_functor(m)?.0),
        Functor::Asym => lie_module_output(&format!("asym {module}"), &asym_functor(m)?.0),
        Functor::Sinv => lie_module_output(&format!("sinv {module}"), &sinv(m)?.0),
        Functor::Asinv => lie_module_output(&format!("asinv {module}"), &asinv(m)?.0),
        Functor::Restrict => lie_module_output(&format!("{module} restricted"), &restrict_down(m)),
        Functor::Dual => {
            let d = dual_sharp(m);
            let mut text = format!("dual of {module}: dim {}\n", d.dim());
            for (i, (l, r)) in d.left().iter().zip(d.right()).enumerate() {
                let _ = writeln!(
                    text,
                    "  {}: left {} right {}",
                    s.algebra.names()[i],
                    render_matrix(l),
                    render_matrix(r)
                );
            }
            let json = json!({"title": format!("dual {module}"), "dim": d.dim(),
                "left": matrices_json(d.left()), "right": matrices_json(d.right())});
            Output {
                text,
                json,
                passed: true,
            }
        }
        Functor::Flat => {
            let u = flat_kurdiani(m);
            let mut text = format!("flat of {module}: dim {}\n", u.dim);
            for (i, (r, l)) in u.r.iter().zip(&u.l).enumerate() {
                let _ = writeln!(
                    text,
                    "  {}: r {} l {}",
                    s.algebra.names()[i],
                    render_matrix(r),
                    render_matrix(l)
                );
            }
            let passed = u.flat() == *m;
            let json = json!({"title": format!("flat {module}"), "dim": u.dim, "r": matrices_json(&u.r),
                "l": matrices_json(&u.l), "involutive": passed});
            Output { text, json, passed }
        }
    };
    Ok(out)
}

fn apply_cap(s: &Session) {
    if std::env::var_os(crate::lpcomplexes::CHAIN_DIM_ENV).is_none() {
        crate::lpcomplexes::set_chain_dim_cap(s.file.options.memory_cap.unwrap_or(0));
    }
}

/// Runs one command; `max_degree` overrides the session's option when given.
pub fn run_command(
    s: &Session,
    cmd: &Command,
    max_degree: Option<usize>,
) -> Result<Output, CommandError> {
    apply_cap(s);
    let d = max_degree.unwrap_or_else(|| s.max_degree());
    let out = match cmd {
        Command::Check => check(s),
        Command::LieQuotient => lie_quotient(s),
        Command::Functor { functor: f, module } => functor(s, *f, module)?,
        Command::Hl { cohomology, module } => {
            let m = s.leibniz_module(module)?;
            if *cohomology {
                dims_output(
                    &format!("HL^*(g; {module})"),
                    "H^",
                    &rasinv_complex(m, d)?.homology_dims(),
                    d,
                )
            } else {
                dims_output(
                    &format!("HL_*(g; {module})"),
                    "H_",
                    &lsym_complex(m, d)?.homology_dims(),
                    d,
                )
            }
        }
        Command::Ext { route, lie, module } => {
            let n = s.lie_module(lie)?;
            let x = s.leibniz_module(module)?;
            let (title, g) = match route {
                ExtRoute::IntoSym => (format!("Ext({module}, {lie}^s)"), ext_into_sym(x, n, d)?),
                ExtRoute::IntoAsym => (format!("Ext({module}, {lie}^a)"), ext_into_asym(x, n, d)?),
                ExtRoute::FromAsym => (format!("Ext({lie}^a, {module})"), ext_from_asym(n, x, d)?),
                ExtRoute::FromSym => (format!("Ext({lie}^s, {module})"), ext_from_sym(n, x, d)?),
            };
            dims_output(&title, "Ext^", &g, d)
        }
        Command::Tor { m, n, flavor } => {
            let mm = s.lie_module(m)?;
            let nn = s.lie_left_module(n)?;
            let g = tor_leib(mm, &nn, *flavor, d)?;
            let title = match flavor {
                TorFlavor::D1D1 => format!("Tor({m}^d1, d1 {n})"),
                TorFlavor::D0D1 => format!("Tor(({m} g)^d0, d1 {n})"),
                TorFlavor::Flipped => format!("Tor((flat {n})^d0, d0 ({m} flat))"),
            };
            dims_output(&title, "Tor_", &g, d)
        }
        Command::Verify(v) => {
            let (r, args) = run_verify(s, v, d)?;
            report_output(r, &args)
        }
        Command::Sweep => {
            let r = sweep(max_degree.unwrap_or(SWEEP_DEGREE));
            Output {
                text: r.render(),
                json: serde_json::to_value(&r).expect("sweep serializes"),
                passed: r.passed,
            }
        }
    };
    Ok(out)
}

fn run_verify(s: &Session, v: &Verify, d: usize) -> Result<(Report, String), CommandError> {
    let lie = |n: &str| s.lie_module(n);
    Ok(match v {
        Verify::ThmExtSym { n1, n2 } => (
            verify_theorem_ext(lie(n1)?, lie(n2)?, ExtVariant::Sym, d)?,
            format!("n1={n1} n2={n2}"),
        ),
        Verify::ThmExtAsym { n1, n2 } => (
            verify_theorem_ext(lie(n1)?, lie(n2)?, ExtVariant::Asym, d)?,
            format!("n1={n1} n2={n2}"),
        ),
        Verify::ThmTor { m, n } => (
            verify_theorem_tor(lie(m)?, &s.lie_left_module(n)?, d)?,
            format!("m={m} n={n}"),
        ),
        Verify::LextAcyclic { n } => (verify_lext_acyclic(lie(n)?, d)?, format!("n={n}")),
        Verify::RextAcyclic { n } => (verify_rext_acyclic(lie(n)?, d)?, format!("n={n}")),
        Verify::Splittings { n } => (verify_splittings(lie(n)?, d)?, format!("n={n}")),
        Verify::Duality { module } => (
            verify_duality(s.leibniz_module(module)?, d)?,
            format!("module={module}"),
        ),
        Verify::Corollary { n } => (
            verify_corollary_trivial_coeffs(lie(n)?, d)?,
            format!("n={n}"),
        ),
        Verify::DegreeZero { module } => (
            verify_degree_zero(s.leibniz_module(module)?, d)?,
            format!("module={module}"),
        ),
        Verify::ClassRelations { n } => (verify_class_relations(lie(n)?)?, format!("n={n}")),
        Verify::Adjunctions { module, n } => (
            verify_adjunctions(s.leibniz_module(module)?, lie(n)?)?,
            format!("module={module} n={n}"),
        ),
    })
}

/// Default truncation degree of `sweep`; acyclicity is checked one degree higher.
pub const SWEEP_DEGREE: usize = 3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepItem {
    pub session: String,
    pub verifier: String,
    pub args: String,
    pub passed: bool,
    pub error: Option<String>,
    pub report: Option<Report>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub max_degree: usize,
    pub passed: bool,
    pub items: Vec<SweepItem>,
}

impl SweepReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for item in &self.items {
            let status = if item.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{status} {} {} {}",
                item.session, item.verifier, item.args
            );
            if let Some(e) = &item.error {
                let _ = writeln!(out, "  error: {e}");
            }
            if let Some(r) = &item.report {
                for c in r.checks.iter().filter(|c| !c.passed) {
                    let _ = writeln!(out, "  failed: {} {:?}", c.what, c.degree);
                }
            }
        }
        let failed = self.items.iter().filter(|i| !i.passed).count();
        let _ = writeln!(out, "{} checks, {failed} failed", self.items.len());
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sweep serializes") + "\n"
    }
}

/// The verifier invocations `sweep` runs on each session.
pub fn sweep_plan(d: usize) -> Vec<(Verify, usize)> {
    let mut plan = Vec::new();
    for m in BUILTIN_LEIBNIZ {
        plan.push((Verify::DegreeZero { module: m.into() }, d));
        plan.push((Verify::Duality { module: m.into() }, d));
        for n in BUILTIN_LIE {
            plan.push((
                Verify::Adjunctions {
                    module: m.into(),
                    n: n.into(),
                },
                d,
            ));
        }
    }
    for n in BUILTIN_LIE {
        plan.push((Verify::Splittings { n: n.into() }, d + 1));
        plan.push((Verify::LextAcyclic { n: n.into() }, d + 1));
        plan.push((Verify::RextAcyclic { n: n.into() }, d + 1));
        plan.push((Verify::ClassRelations { n: n.into() }, d));
        plan.push((Verify::Corollary { n: n.into() }, d));
        for n2 in BUILTIN_LIE {
            plan.push((
                Verify::ThmExtSym {
                    n1: n.into(),
                    n2: n2.into(),
                },
                d,
            ));
            plan.push((
                Verify::ThmExtAsym {
                    n1: n.into(),
                    n2: n2.into(),
                },
                d,
            ));
            plan.push((
                Verify::ThmTor {
                    m: n.into(),
                    n: n2.into(),
                },
                d,
            ));
        }
    }
    plan
}

/// Every verifier over every bundled session, in a fixed order.
pub fn sweep(d: usize) -> SweepReport {
    let sessions = corpus_sessions();
    let jobs: Vec<(&Session, Verify, usize)> = sessions
        .iter()
        .flat_map(|s| sweep_plan(d).into_iter().map(move |(v, k)| (s, v, k)))
        .collect();
    let items: Vec<SweepItem> = jobs
        .par_iter()
        .map(|(s, v, k)| match run_verify(s, v, *k) {
            Ok((r, args)) => SweepItem {
                session: s.file.name.clone(),
                verifier: r.name.clone(),
                args,
                passed: r.passed,
                error: None,
                report: Some(r),
            },
            Err(e) => SweepItem {
                session: s.file.name.clone(),
                verifier: v.name().into(),
                args: String::new(),
                passed: false,
                error: Some(e.to_string()),
                report: None,
            },
        })
        .collect();
    let passed = items.iter().all(|i| i.passed);
    SweepReport {
        max_degree: d,
        passed,
        items,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::session::corpus_session;

    #[test]
    fn lie_quotient_of_e() {
        let s = corpus_session("e_algebra").unwrap();
        let out = run_command(&s, &Command::LieQuotient, None).unwrap();
        assert!(
            out.text.starts_with("dim g_Lie = 1, kernel basis: f"),
            "{}",
            out.text
        );
    }

    #[test]
    fn hl_cohomology_of_e_trivial() {
        let s = corpus_session("e_algebra").unwrap();
        let cmd = Command::Hl {
            cohomology: true,
            module: "trivial".into(),
        };
        let out = run_command(&s, &cmd, Some(1)).unwrap();
        assert_eq!(out.json["dims"], json!([1, 1]));
    }

    #[test]
    fn flagship_verify_passes() {
        let s = corpus_session("e_algebra").unwrap();
        let cmd = Command::Verify(Verify::ThmExtSym {
            n1: "k".into(),
            n2: "k".into(),
        });
        let out = run_command(&s, &cmd, Some(3)).unwrap();
        assert!(
            out.passed && out.text.starts_with("PASS thm-ext-sym"),
            "{}",
            out.text
        );
    }

    #[test]
    fn unknown_module_is_an_error() {
        let s = corpus_session("e_algebra").unwrap();
        let cmd = Command::Hl {
            cohomology: false,
            module: "nope".into(),
        };
        assert!(run_command(&s, &cmd, None).is_err());
    }
}
