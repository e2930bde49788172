//! Text, LaTeX and JSON renderings of command results.

use crate::Trial;
use clap::ValueEnum;
use serde_json::{json, Value};
use stringy_core::mmp::NuNRow;
use stringy_core::stratified::{DualityReport, OracleReport, StratifiedResolution};
use stringy_core::stringy::{DLimitComparison, EvalValue, StringyZeta, VeysInvariants, ZetaValue};
use stringy_core::surface::ResolutionGraph;
use stringy_core::symbolic::format::{
    ratexpr_json, ratexpr_latex, ratexpr_text, unirational_json, unirational_latex, unirational_text,
};
use stringy_core::symbolic::{format_rational, rational::latex_rational, Limit, Rational};

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Text,
    Latex,
    Json,
}

pub struct Doc {
    text: String,
    latex: String,
    json: Value,
}

impl Doc {
    pub fn render(&self, format: Format) -> String {
        let mut out = match format {
            Format::Text => self.text.clone(),
            Format::Latex => self.latex.clone(),
            Format::Json => serde_json::to_string_pretty(&self.json).expect("serializable"),
        };
        if !out.ends_with('\n') {
            out.push('\n');
        }
        out
    }
}

fn value_text(v: &ZetaValue) -> String {
    match v {
        ZetaValue::Expr(e) => ratexpr_text(&e.simplified()),
        ZetaValue::Euler(f) => unirational_text(f),
    }
}

fn value_latex(v: &ZetaValue) -> String {
    match v {
        ZetaValue::Expr(e) => ratexpr_latex(&e.simplified()),
        ZetaValue::Euler(f) => unirational_latex(f),
    }
}

fn value_json(v: &ZetaValue) -> Value {
    match v {
        ZetaValue::Expr(e) => ratexpr_json(&e.simplified()),
        ZetaValue::Euler(f) => unirational_json(f),
    }
}

fn latex_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut s = format!("\\begin{{tabular}}{{{}}}\n", "l".repeat(header.len()));
    s += &format!("{} \\\\\n\\hline\n", header.join(" & "));
    for r in rows {
        s += &format!("{} \\\\\n", r.join(" & "));
    }
    s + "\\end{tabular}\n"
}

fn text_table(rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..rows.first().map_or(0, Vec::len))
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    rows.iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            cells.join("  ").trim_end().to_string() + "\n"
        })
        .collect()
}

pub fn discrepancies(g: &ResolutionGraph) -> Doc {
    let a = g.log_discrepancies();
    let mut rows = Vec::new();
    for (v, x) in g.vertices().iter().zip(&a.vertices) {
        rows.push(("curve", v.id.clone(), x.clone()));
    }
    for (b, x) in g.branches().iter().zip(&a.branches) {
        rows.push(("branch", b.id.clone(), x.clone()));
    }
    let mut text_rows = vec![vec!["id".to_string(), "kind".into(), "a".into()]];
    text_rows.extend(rows.iter().map(|(k, id, x)| vec![id.clone(), k.to_string(), format_rational(x)]));
    Doc {
        text: text_table(&text_rows),
        latex: latex_table(
            &["id", "kind", "$a$"],
            &rows.iter().map(|(k, id, x)| vec![id.clone(), k.to_string(), format!("${}$", latex_rational(x))]).collect::<Vec<_>>(),
        ),
        json: json!({
            "germ": g.name(),
            "discrepancies": rows.iter().map(|(k, id, x)| json!({"id": id, "kind": k, "a": format_rational(x)})).collect::<Vec<_>>(),
        }),
    }
}

pub fn classification(g: &ResolutionGraph) -> Doc {
    let c = g.classify().name();
    Doc { text: c.to_string(), latex: format!("\\text{{{c}}}"), json: json!({"germ": g.name(), "classification": c}) }
}

fn table_doc_rows(table: &[NuNRow]) -> Vec<Vec<String>> {
    table
        .iter()
        .map(|r| {
            vec![
                r.id.clone(),
                if r.is_branch { "branch" } else { "curve" }.to_string(),
                format_rational(&r.nu),
                format_rational(&r.n),
                format_rational(&r.a),
            ]
        })
        .collect()
}

fn table_json(table: &[NuNRow]) -> Value {
    Value::Array(
        table
            .iter()
            .map(|r| {
                json!({
                    "id": r.id,
                    "kind": if r.is_branch { "branch" } else { "curve" },
                    "nu": format_rational(&r.nu),
                    "N": format_rational(&r.n),
                    "a": format_rational(&r.a),
                })
            })
            .collect(),
    )
}

fn table_latex(table: &[NuNRow]) -> String {
    let rows: Vec<Vec<String>> = table_doc_rows(table)
        .into_iter()
        .zip(table)
        .map(|(mut r, t)| {
            r[2] = format!("${}$", latex_rational(&t.nu));
            r[3] = format!("${}$", latex_rational(&t.n));
            r[4] = format!("${}$", latex_rational(&t.a));
            r
        })
        .collect();
    latex_table(&["id", "kind", "$\\nu$", "$N$", "$a$"], &rows)
}

fn table_text(table: &[NuNRow]) -> String {
    let mut rows = vec![vec!["id".to_string(), "kind".into(), "nu".into(), "N".into(), "a".into()]];
    rows.extend(table_doc_rows(table));
    text_table(&rows)
}

pub fn model(g: &ResolutionGraph, d: &Rational, contracted: &[String], table: &[NuNRow]) -> Doc {
    let header = format!("d = {}\ncontracted: {}\n", format_rational(d), list_or_none(contracted));
    Doc {
        text: header + &table_text(table),
        latex: format!(
            "$d = {}$, contracted: {}\n\n{}",
            latex_rational(d),
            list_or_none(contracted),
            table_latex(table)
        ),
        json: json!({
            "germ": g.name(),
            "d": format_rational(d),
            "contracted": contracted,
            "table": table_json(table),
        }),
    }
}

fn list_or_none(ids: &[String]) -> String {
    if ids.is_empty() {
        "none".into()
    } else {
        ids.join(", ")
    }
}

fn zeta_meta(z: &StringyZeta) -> Value {
    json!({
        "germ": z.name,
        "level": z.level.name(),
        "d": z.d.as_ref().map(format_rational),
        "contracted": z.contracted,
        "table": table_json(&z.table),
    })
}

pub fn zeta(z: &StringyZeta) -> Doc {
    let mut j = zeta_meta(z);
    j["value"] = value_json(&z.value);
    Doc { text: value_text(&z.value), latex: value_latex(&z.value), json: j }
}

fn eval_text(v: &EvalValue) -> String {
    match v {
        EvalValue::Expr(e) => ratexpr_text(e),
        EvalValue::Number(x) => format_rational(x),
    }
}

fn eval_latex(v: &EvalValue) -> String {
    match v {
        EvalValue::Expr(e) => ratexpr_latex(e),
        EvalValue::Number(x) => latex_rational(x),
    }
}

fn eval_json(v: &EvalValue) -> Value {
    match v {
        EvalValue::Expr(e) => ratexpr_json(e),
        EvalValue::Number(x) => json!({"text": format_rational(x)}),
    }
}

pub fn eval_at_one(z: &StringyZeta, at1: &Limit<EvalValue>) -> Doc {
    let mut j = zeta_meta(z);
    match at1 {
        Limit::Value(v) => {
            j["at_s1"] = eval_json(v);
            Doc { text: eval_text(v), latex: eval_latex(v), json: j }
        }
        Limit::Pole { order } => {
            j["at_s1"] = json!({"pole_order": order});
            Doc {
                text: format!("pole of order {order} at s = 1"),
                latex: format!("\\text{{pole of order {order} at }} s = 1"),
                json: j,
            }
        }
    }
}

pub fn veys(g: &ResolutionGraph, inv: &VeysInvariants) -> Doc {
    let note = if inv.input_was_minimal { "" } else { "(computed on the minimized resolution)\n" };
    Doc {
        text: format!("E(X) = {}\ne(X) = {}\n{note}", ratexpr_text(&inv.motivic), format_rational(&inv.euler)),
        latex: format!(
            "\\mathcal{{E}}(X) = {}\n\ne(X) = {}\n",
            ratexpr_latex(&inv.motivic),
            latex_rational(&inv.euler)
        ),
        json: json!({
            "germ": g.name(),
            "E": ratexpr_json(&inv.motivic),
            "e": format_rational(&inv.euler),
            "input_was_minimal": inv.input_was_minimal,
        }),
    }
}

pub fn batyrev(g: &ResolutionGraph, v: &ZetaValue) -> Doc {
    Doc { text: value_text(v), latex: value_latex(v), json: json!({"germ": g.name(), "value": value_json(v)}) }
}

pub fn duality(a: &StratifiedResolution, r: &DualityReport) -> Doc {
    let verdict = if r.holds { "pass" } else { "fail" };
    let mut text = format!("functional equation: {verdict}\n");
    if !r.holds {
        text += &format!("residual: {}\n", ratexpr_text(&r.residual));
    }
    text += &format!("closed-strata form agrees: {}\n", if r.closed_form_agrees { "yes" } else { "no" });
    Doc {
        latex: format!(
            "functional equation: {verdict}\n\nresidual: ${}$\n",
            ratexpr_latex(&r.residual)
        ),
        text,
        json: json!({
            "name": a.name,
            "holds": r.holds,
            "closed_form_agrees": r.closed_form_agrees,
            "residual": ratexpr_json(&r.residual),
            "zeta": ratexpr_json(&r.open_form),
        }),
    }
}

pub fn trials(what: &str, results: &[Trial]) -> Doc {
    let passed = results.iter().filter(|t| t.passed).count();
    let mut text = String::new();
    for (i, t) in results.iter().enumerate() {
        text += &format!("{:>3} {} {}: {}\n", i + 1, if t.passed { "pass" } else { "FAIL" }, t.label, t.detail);
    }
    text += &format!("{what}: {passed}/{} trials passed\n", results.len());
    Doc {
        latex: format!("{what}: {passed}/{} trials passed\n", results.len()),
        text,
        json: json!({
            "check": what,
            "passed": passed,
            "trials": results.iter().map(|t| json!({"label": t.label, "passed": t.passed, "detail": t.detail})).collect::<Vec<_>>(),
        }),
    }
}

pub fn oracle(r: u32, m: u32, rows: &[(Vec<Rational>, Vec<Rational>, OracleReport)]) -> Doc {
    let list = |xs: &[Rational]| xs.iter().map(format_rational).collect::<Vec<_>>().join(", ");
    let mut text = String::new();
    let mut latex = String::new();
    for (k, d, rep) in rows {
        text += &format!(
            "r = {r}, m = {m}, k = [{}], d = [{}]\n  brute force: {}\n  closed form: {}\n  equal: {}\n",
            list(k),
            list(d),
            ratexpr_text(&rep.bruteforce),
            ratexpr_text(&rep.closedform),
            rep.equal
        );
        latex += &format!(
            "$A^{{{}}}_{{{m}}} = {} = {}$\n\n",
            r - 1,
            ratexpr_latex(&rep.bruteforce),
            ratexpr_latex(&rep.closedform)
        );
    }
    Doc {
        text,
        latex,
        json: json!({
            "r": r,
            "m": m,
            "draws": rows.iter().map(|(k, d, rep)| json!({
                "k": k.iter().map(format_rational).collect::<Vec<_>>(),
                "d": d.iter().map(format_rational).collect::<Vec<_>>(),
                "bruteforce": ratexpr_json(&rep.bruteforce),
                "closedform": ratexpr_json(&rep.closedform),
                "equal": rep.equal,
            })).collect::<Vec<_>>(),
        }),
    }
}

pub fn d_limit(g: &ResolutionGraph, c: &DLimitComparison) -> Doc {
    let limit_text = c.limit.as_ref().map_or("diverges".to_string(), unirational_text);
    let at_one_text = match &c.at_one {
        Ok(f) => unirational_text(f),
        Err(e) => format!("undefined ({e})"),
    };
    let verdict = match (&c.limit, &c.at_one) {
        (_, Err(_)) => "no value at d = 1",
        (None, Ok(_)) => "limit diverges",
        _ if c.agrees() => "agree",
        _ => "differ",
    };
    let text = format!(
        "contracted for d near 1: {}\nlimit d -> 1-: {limit_text}\nat d = 1: {at_one_text}\nlog minimal model contracts: {}\nverdict: {verdict}\n",
        list_or_none(&c.near_one_contracted),
        c.log_minimal_contracted.as_deref().map_or("undefined".to_string(), list_or_none),
    );
    let latex = format!(
        "$\\lim_{{d \\to 1^-}} z_d(s) = {}$\n\n$z(s) = {}$\n",
        c.limit.as_ref().map_or("\\infty".to_string(), unirational_latex),
        c.at_one.as_ref().map_or_else(|e| format!("\\text{{{e}}}"), unirational_latex),
    );
    Doc {
        text,
        latex,
        json: json!({
            "germ": g.name(),
            "near_one_contracted": c.near_one_contracted,
            "limit": c.limit.as_ref().map(unirational_json),
            "at_one": match &c.at_one { Ok(f) => unirational_json(f), Err(e) => json!({"error": e}) },
            "log_minimal_contracted": c.log_minimal_contracted,
            "agree": c.agrees(),
        }),
    }
}
