//! Limits at `s = 1` and the Euler-characteristic specialization, both by
//! Taylor expansion around a point where denominator factors may vanish.

use super::laurent::{LaurentExpr, Monomial, Var};
use super::ratexpr::RationalExpr;
use super::rational::Rational;
use super::unipoly::{Limit, Poly, UniRationalFn};
use super::{SymbolTable, SymbolicError};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// The class that `T` is a power of: `T = L^(-s)` or `T = (uv)^(-s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Base {
    L,
    UV,
}

impl Base {
    /// `UV` when the expression mentions `u` or `v` but not `L`.
    pub fn detect(expr: &RationalExpr) -> Base {
        if !expr.contains_var(Var::L) && (expr.contains_var(Var::U) || expr.contains_var(Var::V)) {
            Base::UV
        } else {
            Base::L
        }
    }
}

/// Generalized binomial coefficient `n choose j` for any integer `n`.
fn binom(n: i128, j: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..j {
        acc = acc * Rational::new(BigInt::from(n - i as i128), BigInt::from(i as i128 + 1));
    }
    acc
}

/// Coefficient of `h^j` after `T = base^(-1)·(1+h)^M`, i.e. `y = 1 + h` with
/// `y^M = q = base^(1-s)`.
fn taylor_coeff_y(expr: &LaurentExpr, base: Base, j: usize) -> LaurentExpr {
    let m = expr.lattice();
    let mut terms = BTreeMap::new();
    for (mono, c) in expr.raw_terms() {
        let et = mono.exps[Var::T.index()];
        let b = binom(et, j);
        if b.is_zero() {
            continue;
        }
        let mut exps = mono.exps;
        exps[Var::T.index()] = 0;
        match base {
            Base::L => exps[Var::L.index()] -= et,
            Base::UV => {
                exps[Var::U.index()] -= et;
                exps[Var::V.index()] -= et;
            }
        }
        let key = Monomial { exps, syms: mono.syms.clone() };
        let entry: &mut Rational = terms.entry(key).or_insert_with(Rational::zero);
        *entry += c * b;
    }
    terms.retain(|_, c: &mut Rational| !c.is_zero());
    LaurentExpr::from_raw(m, terms)
}

/// Lowest `h`-order and its coefficient; `None` if every coefficient vanishes.
fn order_and_lead(expr: &LaurentExpr, base: Base) -> Option<(usize, LaurentExpr)> {
    let bound = expr.len().max(1);
    (0..bound).find_map(|j| {
        let c = taylor_coeff_y(expr, base, j);
        (!c.is_zero()).then_some((j, c))
    })
}

/// Value at `s = 1` via `T = base⁻¹·q`, `q = y^M`, expanding at `y = 1`.
pub fn limit_at_s1(expr: &RationalExpr) -> Limit<RationalExpr> {
    limit_at_s1_with(expr, Base::detect(expr))
}

/// Every part is first re-encoded over one lattice so that `y` is the same
/// variable in the numerator and in each factor.
pub fn limit_at_s1_with(expr: &RationalExpr, base: Base) -> Limit<RationalExpr> {
    let expr = expr.refined(1);
    let mut order = 0usize;
    let mut leads = Vec::new();
    for (f, k) in expr.denominator_factors() {
        let (o, lead) = order_and_lead(f, base).expect("nonzero factor has finite order");
        order += o * *k as usize;
        leads.push((lead, *k));
    }
    let num = expr.numerator();
    for j in 0..order {
        if !taylor_coeff_y(num, base, j).is_zero() {
            return Limit::Pole { order: (order - j) as u32 };
        }
    }
    let mut value: RationalExpr = taylor_coeff_y(num, base, order).into();
    for (lead, k) in leads {
        value = value.with_factor(&lead, k).expect("leading coefficient is nonzero and symbol-free");
    }
    Limit::Value(value.simplified())
}

/// Exponent of `1 + h` for a term after `L = 1+h`, `u = v = (1+h)^(1/2)`,
/// `T = (1+h)^(-s)`, as `(α, β)` meaning `α + β·s`.
fn euler_exponent(mono: &Monomial, lattice: i128) -> (Rational, Rational) {
    let m = BigInt::from(lattice);
    let e = |v: Var| Rational::new(BigInt::from(mono.exps[v.index()]), m.clone());
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let alpha = e(Var::L) + (e(Var::U) + e(Var::V)) * half;
    (alpha, -e(Var::T))
}

/// Grouped terms `(α, β) ↦ coefficient` with symbols replaced by Euler numbers.
fn euler_groups(
    expr: &LaurentExpr,
    symbols: &SymbolTable,
) -> Result<BTreeMap<(Rational, Rational), Rational>, SymbolicError> {
    let mut groups: BTreeMap<(Rational, Rational), Rational> = BTreeMap::new();
    for (mono, c) in expr.raw_terms() {
        let mut coeff = c.clone();
        for (name, deg) in &mono.syms {
            let info = symbols
                .get(&**name)
                .ok_or_else(|| SymbolicError::UnknownSymbol(name.to_string()))?;
            coeff *= num_traits::pow::pow(info.euler.clone(), *deg as usize);
        }
        *groups.entry(euler_exponent(mono, expr.lattice())).or_insert_with(Rational::zero) += coeff;
    }
    groups.retain(|_, c| !c.is_zero());
    Ok(groups)
}

/// Taylor coefficients in `h`, up to and including `upto`, as polynomials in `s`.
fn euler_series(groups: &BTreeMap<(Rational, Rational), Rational>, upto: usize) -> Vec<Poly> {
    let mut out = vec![Poly::zero(); upto + 1];
    for ((alpha, beta), c) in groups {
        let mut binom = Poly::constant(c.clone());
        for (j, slot) in out.iter_mut().enumerate() {
            if j > 0 {
                let i = Rational::from_integer(BigInt::from(j as i64 - 1));
                let factor = Poly::linear(alpha - i, beta.clone());
                binom = (&binom * &factor).scale(&Rational::new(BigInt::one(), BigInt::from(j as i64)));
            }
            *slot = &*slot + &binom;
        }
    }
    out
}

/// The χ-specialization: `L ↦ 1+h`, `u, v ↦ (1+h)^(1/2)`, `T ↦ (1+h)^(-s)`,
/// symbols ↦ Euler numbers, then `h → 0`. Maps `(L−1)/(L^(ν+sN)−1)` to
/// `1/(ν+sN)`.
pub fn euler_specialize(expr: &RationalExpr, symbols: &SymbolTable) -> Result<UniRationalFn, SymbolicError> {
    let mut order = 0usize;
    let mut den = Poly::one();
    for (f, k) in expr.denominator_factors() {
        let groups = euler_groups(f, symbols)?;
        let series = euler_series(&groups, groups.len());
        let (o, lead) = series
            .iter()
            .enumerate()
            .find(|(_, p)| !p.is_zero())
            .ok_or(SymbolicError::DenominatorVanishes)?;
        order += o * *k as usize;
        den = &den * &lead.pow(*k);
    }
    let groups = euler_groups(expr.numerator(), symbols)?;
    let series = euler_series(&groups, order);
    if series[..order].iter().any(|p| !p.is_zero()) {
        return Err(SymbolicError::EulerPole);
    }
    Ok(UniRationalFn::new(series[order].clone(), den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::rational::{int, rat};
    use crate::symbolic::SymbolInfo;

    fn le(v: Var) -> LaurentExpr {
        LaurentExpr::var(v)
    }

    #[test]
    fn binomials_extend_to_negative_tops() {
        assert_eq!(binom(5, 2), int(10));
        assert_eq!(binom(-1, 3), int(-1));
        assert_eq!(binom(2, 3), int(0));
    }

    #[test]
    fn simple_pole() {
        // 1/(L^((1-d)(1-s)) - 1) with d = 1/2: L^(1/2) T^(1/2) - 1
        let f = &LaurentExpr::monomial(&[rat(1, 2), rat(1, 2), int(0), int(0)], int(1)) - &LaurentExpr::one();
        let e = RationalExpr::new(LaurentExpr::one(), &f).unwrap();
        assert_eq!(limit_at_s1(&e), Limit::Pole { order: 1 });
    }

    #[test]
    fn regular_value_is_plain_substitution() {
        // (L-1)/(L^2 T - 1) at s = 1 is (L-1)/(L-1) = 1
        let f = &(&le(Var::L).pow(2) * &le(Var::T)) - &LaurentExpr::one();
        let e = RationalExpr::new(&le(Var::L) - &LaurentExpr::one(), &f).unwrap();
        let v = limit_at_s1(&e).value().unwrap();
        assert!(v == RationalExpr::one());
    }

    #[test]
    fn removable_singularity_across_lattices() {
        // (L^(1/2) T^(1/2) - 1)/(L^(1/3) T^(1/3) - 1) → 3/2
        let num = &LaurentExpr::monomial(&[rat(1, 2), rat(1, 2), int(0), int(0)], int(1)) - &LaurentExpr::one();
        let den = &LaurentExpr::monomial(&[rat(1, 3), rat(1, 3), int(0), int(0)], int(1)) - &LaurentExpr::one();
        let e = RationalExpr::new(num, &den).unwrap();
        assert!(limit_at_s1(&e).value().unwrap() == RationalExpr::constant(rat(3, 2)));
    }

    #[test]
    fn euler_of_basic_factor() {
        // (L-1)/(L^3 T^2 - 1) ↦ 1/(3 - 2s)
        let f = &LaurentExpr::monomial(&[int(3), int(2), int(0), int(0)], int(1)) - &LaurentExpr::one();
        let e = RationalExpr::new(&le(Var::L) - &LaurentExpr::one(), &f).unwrap();
        let z = euler_specialize(&e, &SymbolTable::new()).unwrap();
        assert_eq!(z, UniRationalFn::inverse_linear(int(3), int(-2)));
    }

    #[test]
    fn euler_of_curve_symbol() {
        let mut table = SymbolTable::new();
        table.insert("C".into(), SymbolInfo::curve(3));
        let e: RationalExpr = (&LaurentExpr::symbol("C") * &le(Var::L)).into();
        assert_eq!(euler_specialize(&e, &table).unwrap(), UniRationalFn::constant(int(-4)));
        let missing = euler_specialize(&e, &SymbolTable::new());
        assert_eq!(missing.unwrap_err(), SymbolicError::UnknownSymbol("C".into()));
    }

    #[test]
    fn euler_pole_detected() {
        let e = RationalExpr::new(LaurentExpr::one(), &(&le(Var::L) - &LaurentExpr::one())).unwrap();
        assert_eq!(euler_specialize(&e, &SymbolTable::new()).unwrap_err(), SymbolicError::EulerPole);
    }
}
