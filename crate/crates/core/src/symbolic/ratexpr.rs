//! Fractions with a Laurent-polynomial numerator and a factored, symbol-free
//! denominator, plus ring-homomorphic substitution.
//!
//! Denominator factors are kept in a canonical form: lowest monomial `1`,
//! highest coefficient `1`. Unit parts (monomials and constants) are moved
//! into the numerator. Equality is decided by cross-multiplication over a
//! common multiple of the two denominators, never by a polynomial GCD.

use super::laurent::{LaurentExpr, Monomial, SymPower, Term, Var};
use super::rational::Rational;
use super::SymbolicError;
use num_traits::{One, Zero};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone)]
pub struct RationalExpr {
    num: LaurentExpr,
    den: Vec<(LaurentExpr, u32)>,
}

impl fmt::Debug for RationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalExpr({})", super::format::ratexpr_text(self))
    }
}

impl Default for RationalExpr {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<LaurentExpr> for RationalExpr {
    fn from(num: LaurentExpr) -> Self {
        RationalExpr { num, den: Vec::new() }
    }
}

/// Splits a nonzero symbol-free polynomial into `unit · canonical`.
/// Returns the inverse of the unit and the canonical part (`None` for units).
fn split_unit(f: &LaurentExpr) -> (LaurentExpr, Option<LaurentExpr>) {
    let m = f.lattice();
    let ((lo, _), (_, hi_c)) = f.extreme_terms().expect("zero denominator factor");
    let lo_exps = lo.exps;
    let hi_c = hi_c.clone();
    let inv_unit = LaurentExpr::from_raw(
        m,
        BTreeMap::from([(Monomial { exps: lo_exps.map(|e| -e), syms: Vec::new() }, hi_c.recip())]),
    );
    if f.len() == 1 {
        return (inv_unit, None);
    }
    let canon = (f * &inv_unit).reduced();
    (inv_unit, Some(canon))
}

/// Exact quotient `a / f` when it exists as a Laurent polynomial.
/// `f` must be symbol-free and nonzero.
pub fn div_exact(a: &LaurentExpr, f: &LaurentExpr) -> Option<LaurentExpr> {
    if a.is_zero() {
        return Some(LaurentExpr::zero());
    }
    let m = a.lattice().max(1);
    let m = num_integer::Integer::lcm(&m, &f.lattice());
    let a = a.refined(m);
    let f = f.refined(m);
    let ((f_lo, _), (f_hi, f_hi_c)) = f.extreme_terms()?;
    let (f_lo, f_hi, f_hi_c) = (f_lo.exps, f_hi.exps, f_hi_c.clone());

    let mut groups: BTreeMap<Vec<SymPower>, BTreeMap<Monomial, Rational>> = BTreeMap::new();
    for (mono, c) in a.raw_terms() {
        groups.entry(mono.syms.clone()).or_default().insert(mono.clone(), c.clone());
    }
    let f_terms: Vec<([i128; 4], Rational)> = f.raw_terms().iter().map(|(t, c)| (t.exps, c.clone())).collect();
    let mut quotient = BTreeMap::new();
    for (_, mut rem) in groups {
        let lo_bound = {
            let (lo, _) = rem.iter().next()?;
            sub_exps(&lo.exps, &f_lo)
        };
        let mut budget = rem.len() * (f.len() + 1) + 16;
        while let Some((lead, c)) = rem.last_key_value() {
            let q_exps = sub_exps(&lead.exps, &f_hi);
            if q_exps < lo_bound || budget == 0 {
                return None;
            }
            budget -= 1;
            let syms = lead.syms.clone();
            let qc = c / &f_hi_c;
            for (e, fc) in &f_terms {
                let key = Monomial { exps: add_exps(&q_exps, e), syms: syms.clone() };
                match rem.entry(key) {
                    Entry::Occupied(mut o) => {
                        *o.get_mut() -= &qc * fc;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                    Entry::Vacant(v) => {
                        v.insert(-(&qc * fc));
                    }
                }
            }
            quotient.insert(Monomial { exps: q_exps, syms }, qc);
        }
    }
    Some(LaurentExpr::from_raw(m, quotient).reduced())
}

fn add_exps(a: &[i128; 4], b: &[i128; 4]) -> [i128; 4] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

fn sub_exps(a: &[i128; 4], b: &[i128; 4]) -> [i128; 4] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]]
}

impl RationalExpr {
    pub fn zero() -> Self {
        LaurentExpr::zero().into()
    }

    pub fn one() -> Self {
        LaurentExpr::one().into()
    }

    pub fn constant(c: Rational) -> Self {
        LaurentExpr::constant(c).into()
    }

    pub fn integer(n: i64) -> Self {
        LaurentExpr::integer(n).into()
    }

    pub fn var(v: Var) -> Self {
        LaurentExpr::var(v).into()
    }

    pub fn var_pow(v: Var, e: Rational) -> Self {
        LaurentExpr::var_pow(v, e).into()
    }

    pub fn symbol(name: &str) -> Self {
        LaurentExpr::symbol(name).into()
    }

    /// `num / den`; `den` must be nonzero and symbol-free.
    pub fn new(num: LaurentExpr, den: &LaurentExpr) -> Result<Self, SymbolicError> {
        RationalExpr::from(num).with_factor(den, 1)
    }

    /// Divides by `f^mult`.
    pub fn with_factor(mut self, f: &LaurentExpr, mult: u32) -> Result<Self, SymbolicError> {
        if f.is_zero() {
            return Err(SymbolicError::DenominatorVanishes);
        }
        if f.has_symbols() {
            return Err(SymbolicError::SymbolicDenominator);
        }
        if mult == 0 {
            return Ok(self);
        }
        let (inv_unit, canon) = split_unit(f);
        self.num = &self.num * &inv_unit.pow(mult);
        if let Some(c) = canon {
            self.push_factor(c, mult);
        }
        Ok(self)
    }

    fn push_factor(&mut self, f: LaurentExpr, mult: u32) {
        if let Some(slot) = self.den.iter_mut().find(|(g, _)| *g == f) {
            slot.1 += mult;
        } else {
            self.den.push((f, mult));
        }
    }

    pub fn numerator(&self) -> &LaurentExpr {
        &self.num
    }

    /// Canonical denominator factors with multiplicities.
    pub fn denominator_factors(&self) -> &[(LaurentExpr, u32)] {
        &self.den
    }

    /// Product of all denominator factors.
    pub fn denominator(&self) -> LaurentExpr {
        self.den.iter().fold(LaurentExpr::one(), |acc, (f, k)| &acc * &f.pow(*k))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The numerator when there is no denominator.
    pub fn as_laurent(&self) -> Option<&LaurentExpr> {
        if self.den.is_empty() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<Rational> {
        let s = self.simplified();
        s.as_laurent().and_then(LaurentExpr::as_constant)
    }

    pub fn has_symbols(&self) -> bool {
        self.num.has_symbols()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.iter().any(|(f, _)| f.contains_var(v))
    }

    /// Least common lattice of numerator and factors.
    pub fn lattice(&self) -> i128 {
        self.den
            .iter()
            .fold(self.num.lattice(), |m, (f, _)| num_integer::Integer::lcm(&m, &f.lattice()))
    }

    /// Re-encodes every part over lattice `k·M`.
    pub fn refined(&self, k: i128) -> Self {
        let m = self.lattice() * k;
        RationalExpr {
            num: self.num.refined(m),
            den: self.den.iter().map(|(f, e)| (f.refined(m), *e)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalExpr { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Cancels denominator factors that divide the numerator exactly.
    pub fn simplified(&self) -> Self {
        if self.num.is_zero() {
            return Self::zero();
        }
        let mut num = self.num.clone();
        let mut den = Vec::with_capacity(self.den.len());
        for (f, k) in &self.den {
            let mut left = *k;
            while left > 0 {
                match div_exact(&num, f) {
                    Some(q) => {
                        num = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if left > 0 {
                den.push((f.clone(), left));
            }
        }
        RationalExpr { num: num.reduced(), den }
    }

    /// `(a_num · extra_a, b_num · extra_b, common)` over a common multiple.
    fn common_denominator(&self, other: &Self) -> (LaurentExpr, LaurentExpr, Vec<(LaurentExpr, u32)>) {
        let mut common: Vec<(LaurentExpr, u32)> = self.den.clone();
        for (f, k) in &other.den {
            if let Some(slot) = common.iter_mut().find(|(g, _)| g == f) {
                slot.1 = slot.1.max(*k);
            } else {
                common.push((f.clone(), *k));
            }
        }
        let extra = |own: &[(LaurentExpr, u32)]| {
            common.iter().fold(LaurentExpr::one(), |acc, (f, k)| {
                let have = own.iter().find(|(g, _)| g == f).map_or(0, |(_, e)| *e);
                if *k > have {
                    &acc * &f.pow(k - have)
                } else {
                    acc
                }
            })
        };
        let a = &self.num * &extra(&self.den);
        let b = &other.num * &extra(&other.den);
        (a, b, common)
    }

    pub fn recip(&self) -> Result<Self, SymbolicError> {
        RationalExpr::one().checked_div(self)
    }

    /// `self / other`; the numerator of `other` must be symbol-free.
    pub fn checked_div(&self, other: &Self) -> Result<Self, SymbolicError> {
        let other = other.simplified();
        if other.num.is_zero() {
            return Err(SymbolicError::DivisionByZero);
        }
        let mut out = RationalExpr { num: &self.num * &other.denominator(), den: self.den.clone() };
        out = out.with_factor(&other.num, 1)?;
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        RationalExpr {
            num: self.num.pow(n),
            den: if n == 0 { Vec::new() } else { self.den.iter().map(|(f, k)| (f.clone(), k * n)).collect() },
        }
    }

    /// Integer power; negative exponents need a symbol-free numerator.
    pub fn powi(&self, n: i64) -> Result<Self, SymbolicError> {
        if n >= 0 {
            Ok(self.pow(n as u32))
        } else {
            Ok(self.recip()?.pow(n.unsigned_abs() as u32))
        }
    }

    pub fn substitute(&self, sub: &Substitution) -> Result<Self, SymbolicError> {
        let mut out = sub.apply_laurent(&self.num)?;
        for (f, k) in &self.den {
            let image = sub.apply_laurent(f)?;
            let image = image.as_laurent().cloned().ok_or(SymbolicError::SymbolicDenominator)?;
            out = out.with_factor(&image, *k)?;
        }
        Ok(out)
    }
}

/// Value equality by cross-multiplication.
pub fn ratfn_equal(a: &RationalExpr, b: &RationalExpr) -> bool {
    let (x, y, _) = a.common_denominator(b);
    x == y
}

impl PartialEq for RationalExpr {
    fn eq(&self, other: &Self) -> bool {
        ratfn_equal(self, other)
    }
}

impl Add for &RationalExpr {
    type Output = RationalExpr;
    fn add(self, rhs: &RationalExpr) -> RationalExpr {
        if rhs.num.is_zero() {
            return self.clone();
        }
        if self.num.is_zero() {
            return rhs.clone();
        }
        let (a, b, den) = self.common_denominator(rhs);
        let num = &a + &b;
        if num.is_zero() {
            return RationalExpr::zero();
        }
        RationalExpr { num, den }
    }
}

impl Neg for &RationalExpr {
    type Output = RationalExpr;
    fn neg(self) -> RationalExpr {
        RationalExpr { num: -&self.num, den: self.den.clone() }
    }
}

impl Sub for &RationalExpr {
    type Output = RationalExpr;
    fn sub(self, rhs: &RationalExpr) -> RationalExpr {
        self + &(-rhs)
    }
}

impl Mul for &RationalExpr {
    type Output = RationalExpr;
    fn mul(self, rhs: &RationalExpr) -> RationalExpr {
        let num = &self.num * &rhs.num;
        if num.is_zero() {
            return RationalExpr::zero();
        }
        let mut out = RationalExpr { num, den: self.den.clone() };
        for (f, k) in &rhs.den {
            out.push_factor(f.clone(), *k);
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for RationalExpr {
            type Output = RationalExpr;
            fn $f(self, rhs: RationalExpr) -> RationalExpr {
                (&self).$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RationalExpr {
    type Output = RationalExpr;
    fn neg(self) -> RationalExpr {
        -&self
    }
}

impl std::iter::Sum for RationalExpr {
    fn sum<I: Iterator<Item = RationalExpr>>(iter: I) -> Self {
        iter.fold(RationalExpr::zero(), |a, b| &a + &b)
    }
}

/// A partial assignment: variables go to coefficient-one monomials with
/// rational exponents, symbols go to arbitrary expressions.
#[derive(Clone, Debug, Default)]
pub struct Substitution {
    vars: [Option<[Rational; 4]>; 4],
    symbols: BTreeMap<String, RationalExpr>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    /// `var ↦ Π w^e[w]`.
    pub fn var_to_monomial(mut self, v: Var, exps: [Rational; 4]) -> Self {
        self.vars[v.index()] = Some(exps);
        self
    }

    /// `var ↦ image`, where `image` must be a symbol-free monomial with coefficient 1.
    pub fn var(self, v: Var, image: &LaurentExpr) -> Result<Self, SymbolicError> {
        match image.as_monomial() {
            Some(Term { exps, syms, coeff }) if syms.is_empty() && coeff.is_one() => {
                Ok(self.var_to_monomial(v, exps))
            }
            _ => Err(SymbolicError::NonMonomialImage(v.name())),
        }
    }

    pub fn symbol(mut self, name: &str, image: RationalExpr) -> Self {
        self.symbols.insert(name.to_string(), image);
        self
    }

    /// `u ↦ u⁻¹, v ↦ v⁻¹, T ↦ T⁻¹`.
    pub fn duality() -> Self {
        let inv = |v: Var| {
            let mut e = [Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()];
            e[v.index()] = -Rational::one();
            e
        };
        Substitution::new()
            .var_to_monomial(Var::U, inv(Var::U))
            .var_to_monomial(Var::V, inv(Var::V))
            .var_to_monomial(Var::T, inv(Var::T))
    }

    /// `L ↦ uv` together with the given symbol images.
    pub fn hodge<'a>(symbols: impl IntoIterator<Item = (&'a str, LaurentExpr)>) -> Self {
        let one = Rational::one;
        let zero = Rational::zero;
        let mut sub = Substitution::new().var_to_monomial(Var::L, [zero(), zero(), one(), one()]);
        for (name, image) in symbols {
            sub = sub.symbol(name, image.into());
        }
        sub
    }

    fn image_exps(&self, mono: &Monomial, lattice: i128) -> [Rational; 4] {
        let mut out = [Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()];
        let m = num_bigint::BigInt::from(lattice);
        for v in Var::ALL {
            let e = mono.exps[v.index()];
            if e == 0 {
                continue;
            }
            let e = Rational::new(e.into(), m.clone());
            match &self.vars[v.index()] {
                Some(img) => {
                    for (slot, x) in out.iter_mut().zip(img.iter()) {
                        *slot += &e * x;
                    }
                }
                None => out[v.index()] += e,
            }
        }
        out
    }

    pub fn apply_laurent(&self, expr: &LaurentExpr) -> Result<RationalExpr, SymbolicError> {
        let mut groups: BTreeMap<Vec<SymPower>, Vec<Term>> = BTreeMap::new();
        for (mono, c) in expr.raw_terms() {
            let (mapped, kept): (Vec<SymPower>, Vec<SymPower>) =
                mono.syms.iter().cloned().partition(|(n, _)| self.symbols.contains_key(&**n));
            groups.entry(mapped).or_default().push(Term {
                exps: self.image_exps(mono, expr.lattice()),
                syms: kept,
                coeff: c.clone(),
            });
        }
        let mut out = RationalExpr::zero();
        for (mapped, terms) in groups {
            let mut part: RationalExpr = LaurentExpr::from_terms(terms).into();
            for (name, deg) in mapped {
                part = &part * &self.symbols[&*name].pow(deg);
            }
            out = &out + &part;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::rational::{int, rat};

    fn l() -> RationalExpr {
        RationalExpr::var(Var::L)
    }

    fn le(v: Var) -> LaurentExpr {
        LaurentExpr::var(v)
    }

    #[test]
    fn telescoping_factor() {
        let sqrt_l = LaurentExpr::var_pow(Var::L, rat(1, 2));
        let lhs = RationalExpr::new(&le(Var::L) - &LaurentExpr::one(), &(&sqrt_l - &LaurentExpr::one())).unwrap();
        let rhs: RationalExpr = (&sqrt_l + &LaurentExpr::one()).into();
        assert!(ratfn_equal(&lhs, &rhs));
        assert!(lhs.simplified().as_laurent().is_some());
    }

    #[test]
    fn not_equal_different_poles() {
        let x = LaurentExpr::var_pow(Var::L, int(3));
        let a = RationalExpr::new(LaurentExpr::one(), &(&x - &LaurentExpr::one())).unwrap();
        let b = RationalExpr::new(LaurentExpr::one(), &(&x.pow(2) - &LaurentExpr::one())).unwrap();
        assert!(!ratfn_equal(&a, &b));
    }

    #[test]
    fn units_leave_the_denominator() {
        let f = &LaurentExpr::var_pow(Var::T, int(-1)).scale(&int(2)) - &LaurentExpr::integer(2);
        let e = RationalExpr::new(LaurentExpr::one(), &f).unwrap();
        let (g, k) = &e.denominator_factors()[0];
        assert_eq!(*k, 1);
        assert_eq!(*g, &le(Var::T) - &LaurentExpr::one());
        let back = &e * &RationalExpr::from(f);
        assert!(ratfn_equal(&back, &RationalExpr::one()));
    }

    #[test]
    fn duality_on_one_factor() {
        let uv = &le(Var::U) * &le(Var::V);
        let a = 3;
        let uva = uv.pow(a);
        let e = RationalExpr::new(&uv - &LaurentExpr::one(), &(&uva - &LaurentExpr::one())).unwrap();
        let dual = e.substitute(&Substitution::duality()).unwrap();
        let expected = &RationalExpr::from(uv.pow(a - 1)) * &e;
        assert!(ratfn_equal(&dual, &expected));
    }

    #[test]
    fn symbol_substitution() {
        let c = RationalExpr::symbol("C");
        let e = &l() * &c;
        let sub = Substitution::new().symbol("C", RationalExpr::integer(-4));
        let out = e.substitute(&sub).unwrap();
        assert!(ratfn_equal(&out, &(&l() * &RationalExpr::integer(-4))));
    }

    #[test]
    fn vanishing_denominator_is_reported() {
        let e = RationalExpr::new(LaurentExpr::one(), &(&le(Var::U) - &le(Var::V))).unwrap();
        let sub = Substitution::new().var(Var::U, &le(Var::V)).unwrap();
        assert_eq!(e.substitute(&sub).unwrap_err(), SymbolicError::DenominatorVanishes);
    }

    #[test]
    fn non_monomial_image_rejected() {
        let img = &le(Var::L) + &LaurentExpr::one();
        assert!(matches!(Substitution::new().var(Var::L, &img), Err(SymbolicError::NonMonomialImage(_))));
    }
}
