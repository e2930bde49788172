//! Exact coefficient rings: rationals, fractional-exponent Laurent
//! polynomials in `L`, `T`, `u`, `v` with stratum symbols, their fractions,
//! and univariate rational functions in `s`.

pub mod format;
pub mod laurent;
pub mod limit;
pub mod parse;
pub mod ratexpr;
pub mod rational;
pub mod unipoly;

pub use laurent::{LaurentExpr, Term, Var};
pub use limit::{euler_specialize, limit_at_s1, limit_at_s1_with, Base};
pub use parse::{parse_expr, parse_laurent, ParseError};
pub use ratexpr::{ratfn_equal, RationalExpr, Substitution};
pub use rational::{format_rational, int, parse_rational, rat, Rational};
pub use unipoly::{Limit, Poly, UniRationalFn};

use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymbolicError {
    #[error("DenominatorVanishes: a denominator factor became identically zero")]
    DenominatorVanishes,
    #[error("SymbolicDenominator: denominators may not contain stratum symbols")]
    SymbolicDenominator,
    #[error("DivisionByZero")]
    DivisionByZero,
    #[error("NonMonomialImage: variable {0} must map to a monomial with coefficient 1")]
    NonMonomialImage(&'static str),
    #[error("UnknownSymbol: no specialization declared for [{0}]")]
    UnknownSymbol(String),
    #[error("EulerPole: the Euler specialization has a pole")]
    EulerPole,
}

/// Specialization data of a stratum symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolInfo {
    /// Hodge polynomial in `u`, `v`.
    pub hodge: LaurentExpr,
    pub euler: Rational,
}

impl SymbolInfo {
    /// A smooth projective curve of genus `g`: `uv − g·u − g·v + 1`, `2 − 2g`.
    pub fn curve(genus: u32) -> Self {
        let g = int(genus as i64);
        let u = LaurentExpr::var(Var::U);
        let v = LaurentExpr::var(Var::V);
        let hodge = &(&(&u * &v) - &(&u + &v).scale(&g)) + &LaurentExpr::one();
        SymbolInfo { hodge, euler: int(2) - int(2) * g }
    }
}

pub type SymbolTable = BTreeMap<String, SymbolInfo>;

/// `L ↦ uv`, each symbol ↦ its Hodge polynomial.
pub fn hodge_substitution(symbols: &SymbolTable) -> Substitution {
    Substitution::hodge(symbols.iter().map(|(n, i)| (n.as_str(), i.hodge.clone())))
}

pub fn hodge_specialize(expr: &RationalExpr, symbols: &SymbolTable) -> Result<RationalExpr, SymbolicError> {
    expr.substitute(&hodge_substitution(symbols))
}
