#![allow(dead_code)]

use std::path::PathBuf;
use stringy_core::stratified::StratifiedResolution;
use stringy_core::stringy::ZetaValue;
use stringy_core::surface::ResolutionGraph;
use stringy_core::symbolic::{format_rational, parse_expr, ratfn_equal, RationalExpr, Rational};

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_dir().join(format!("{name}.json"))).expect("fixture exists")
}

pub fn germ(name: &str) -> ResolutionGraph {
    ResolutionGraph::from_json(&fixture_text(name)).expect("valid germ fixture")
}

pub fn abstract_data(name: &str) -> StratifiedResolution {
    StratifiedResolution::from_json(&fixture_text(name)).expect("valid abstract fixture")
}

pub enum Fixture {
    Germ(String, ResolutionGraph),
    Abstract(String, StratifiedResolution),
}

pub fn all_fixtures() -> Vec<Fixture> {
    let mut names: Vec<String> = std::fs::read_dir(fixture_dir())
        .expect("fixture directory")
        .filter_map(|e| e.ok()?.file_name().to_str()?.strip_suffix(".json").map(String::from))
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|n| {
            let text = fixture_text(&n);
            if text.contains("\"dimension\"") {
                Fixture::Abstract(n, StratifiedResolution::from_json(&text).expect("abstract fixture"))
            } else {
                Fixture::Germ(n, ResolutionGraph::from_json(&text).expect("germ fixture"))
            }
        })
        .collect()
}

pub fn same_value(a: &ZetaValue, b: &ZetaValue) -> bool {
    match (a, b) {
        (ZetaValue::Expr(x), ZetaValue::Expr(y)) => ratfn_equal(x, y),
        (x, y) => x == y,
    }
}

/// `L^(a + b·s)` written with `T = L^(−s)`.
pub fn lpow(a: &Rational, b: &Rational) -> String {
    format!("L^({})*T^({})", format_rational(a), format_rational(&-b))
}

pub fn expr(text: &str) -> RationalExpr {
    parse_expr(text).unwrap_or_else(|e| panic!("cannot parse `{text}`: {e}"))
}
