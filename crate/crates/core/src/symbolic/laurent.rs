//! Laurent polynomials with fractional exponents in `L`, `T`, `u`, `v`
//! and nonnegative powers of formal stratum symbols.
//!
//! Exponents of the four variables are stored as integer numerators over a
//! per-expression lattice denominator `M`, so `L^(3/5)` in lattice 10 is the
//! numerator `6`. Two expressions over different lattices are brought to the
//! least common lattice before they are combined or compared.

use super::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

/// The four variables. `T` stands for `L^(-s)` (or `(uv)^(-s)` on the
/// Hodge level).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    L,
    T,
    U,
    V,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::L, Var::T, Var::U, Var::V];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::L => "L",
            Var::T => "T",
            Var::U => "u",
            Var::V => "v",
        }
    }
}

/// A symbol name together with its (positive) degree.
pub type SymPower = (Arc<str>, u32);

/// Exponent numerators (over the lattice of the owning expression) and
/// symbol degrees. The derived order is lexicographic on `(L, T, u, v)`
/// exponents, then on symbol degrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub(crate) exps: [i128; 4],
    pub(crate) syms: Vec<SymPower>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: [0; 4], syms: Vec::new() }
    }

    pub fn is_one(&self) -> bool {
        self.exps == [0; 4] && self.syms.is_empty()
    }

    pub fn has_symbols(&self) -> bool {
        !self.syms.is_empty()
    }

    pub fn symbols(&self) -> &[SymPower] {
        &self.syms
    }

    fn scaled(&self, k: i128) -> Monomial {
        Monomial {
            exps: self.exps.map(|e| e * k),
            syms: self.syms.clone(),
        }
    }

    fn times(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e += *o;
        }
        Monomial { exps, syms: merge_syms(&self.syms, &other.syms) }
    }
}

fn merge_syms(a: &[SymPower], b: &[SymPower]) -> Vec<SymPower> {
    if b.is_empty() {
        return a.to_vec();
    }
    if a.is_empty() {
        return b.to_vec();
    }
    let mut out: Vec<SymPower> = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push(b[j].clone());
            j += 1;
        } else {
            out.push((a[i].0.clone(), a[i].1 + b[j].1));
            i += 1;
            j += 1;
        }
    }
    out
}

/// Finite sum of rational multiples of monomials.
#[derive(Clone)]
pub struct LaurentExpr {
    lattice: i128,
    terms: BTreeMap<Monomial, Rational>,
}

impl fmt::Debug for LaurentExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentExpr({})", super::format::laurent_text(self))
    }
}

impl Default for LaurentExpr {
    fn default() -> Self {
        LaurentExpr::zero()
    }
}

impl PartialEq for LaurentExpr {
    fn eq(&self, other: &Self) -> bool {
        if self.lattice == other.lattice {
            return self.terms == other.terms;
        }
        let m = self.lattice.lcm(&other.lattice);
        self.refined(m).terms == other.refined(m).terms
    }
}

impl Eq for LaurentExpr {}

/// A term with its exponents written out as rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub exps: [Rational; 4],
    pub syms: Vec<SymPower>,
    pub coeff: Rational,
}

impl LaurentExpr {
    pub fn zero() -> Self {
        LaurentExpr { lattice: 1, terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        LaurentExpr { lattice: 1, terms }
    }

    pub fn integer(n: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(n)))
    }

    pub fn var(v: Var) -> Self {
        let mut exps = [Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()];
        exps[v.index()] = Rational::one();
        Self::monomial(&exps, Rational::one())
    }

    /// `coeff · L^e0 · T^e1 · u^e2 · v^e3`.
    pub fn monomial(exps: &[Rational; 4], coeff: Rational) -> Self {
        Self::from_terms(std::iter::once(Term {
            exps: exps.clone(),
            syms: Vec::new(),
            coeff,
        }))
    }

    /// `var^e` for a rational exponent.
    pub fn var_pow(v: Var, e: Rational) -> Self {
        let mut exps = [Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()];
        exps[v.index()] = e;
        Self::monomial(&exps, Rational::one())
    }

    pub fn symbol(name: &str) -> Self {
        let mono = Monomial { exps: [0; 4], syms: vec![(Arc::from(name), 1)] };
        let mut terms = BTreeMap::new();
        terms.insert(mono, Rational::one());
        LaurentExpr { lattice: 1, terms }
    }

    /// Builds an expression from terms with rational exponents, choosing the
    /// least lattice that holds all of them.
    pub fn from_terms<I: IntoIterator<Item = Term>>(terms: I) -> Self {
        let terms: Vec<Term> = terms.into_iter().collect();
        let mut lattice: BigInt = BigInt::one();
        for t in &terms {
            for e in &t.exps {
                lattice = lattice.lcm(e.denom());
            }
        }
        let lattice = to_i128(&lattice);
        let mut out = LaurentExpr { lattice, terms: BTreeMap::new() };
        for t in terms {
            if t.coeff.is_zero() {
                continue;
            }
            let mut exps = [0i128; 4];
            for (slot, e) in exps.iter_mut().zip(t.exps.iter()) {
                *slot = to_i128(&(e.numer() * BigInt::from(lattice) / e.denom()));
            }
            let mut syms: Vec<SymPower> = t.syms.into_iter().filter(|(_, d)| *d > 0).collect();
            syms.sort();
            let mut merged: Vec<SymPower> = Vec::with_capacity(syms.len());
            for (name, deg) in syms {
                match merged.last_mut() {
                    Some(last) if last.0 == name => last.1 += deg,
                    _ => merged.push((name, deg)),
                }
            }
            out.add_term(Monomial { exps, syms: merged }, t.coeff);
        }
        out
    }

    pub fn lattice(&self) -> i128 {
        self.lattice
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value when the expression has no non-constant terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// The single term, when the expression is a monomial.
    pub fn as_monomial(&self) -> Option<Term> {
        if self.terms.len() == 1 {
            self.terms_view().next()
        } else {
            None
        }
    }

    pub fn has_symbols(&self) -> bool {
        self.terms.keys().any(Monomial::has_symbols)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exps[v.index()] != 0)
    }

    /// Names of all symbols that occur.
    pub fn symbol_names(&self) -> Vec<Arc<str>> {
        let mut names: Vec<Arc<str>> = self
            .terms
            .keys()
            .flat_map(|m| m.syms.iter().map(|(n, _)| n.clone()))
            .collect();
        names.sort();
        names.dedup();
        names
    }

    pub(crate) fn raw_terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub(crate) fn from_raw(lattice: i128, terms: BTreeMap<Monomial, Rational>) -> Self {
        LaurentExpr { lattice, terms }
    }

    /// Iterates terms in increasing monomial order with rational exponents.
    pub fn terms_view(&self) -> impl DoubleEndedIterator<Item = Term> + '_ {
        let m = BigInt::from(self.lattice);
        self.terms.iter().map(move |(mono, c)| Term {
            exps: mono.exps.map(|e| Rational::new(BigInt::from(e), m.clone())),
            syms: mono.syms.clone(),
            coeff: c.clone(),
        })
    }

    fn add_term(&mut self, mono: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Re-encodes over lattice `m`, which must be a multiple of the current one.
    pub fn refined(&self, m: i128) -> LaurentExpr {
        assert!(m > 0 && m % self.lattice == 0, "lattice {m} does not refine {}", self.lattice);
        if m == self.lattice {
            return self.clone();
        }
        let k = m / self.lattice;
        LaurentExpr {
            lattice: m,
            terms: self.terms.iter().map(|(mono, c)| (mono.scaled(k), c.clone())).collect(),
        }
    }

    /// Re-encodes over the least lattice holding every exponent.
    pub fn reduced(&self) -> LaurentExpr {
        let mut g = self.lattice;
        for mono in self.terms.keys() {
            for e in mono.exps {
                g = g.gcd(&e);
            }
            if g == 1 {
                return self.clone();
            }
        }
        if g == self.lattice && self.lattice == 1 {
            return self.clone();
        }
        LaurentExpr {
            lattice: self.lattice / g,
            terms: self
                .terms
                .iter()
                .map(|(mono, c)| {
                    (Monomial { exps: mono.exps.map(|e| e / g), syms: mono.syms.clone() }, c.clone())
                })
                .collect(),
        }
    }

    fn unify(&self, other: &LaurentExpr) -> (std::borrow::Cow<'_, LaurentExpr>, i128) {
        if self.lattice == other.lattice {
            (std::borrow::Cow::Borrowed(self), self.lattice)
        } else {
            let m = self.lattice.lcm(&other.lattice);
            (std::borrow::Cow::Owned(self.refined(m)), m)
        }
    }

    pub fn scale(&self, c: &Rational) -> LaurentExpr {
        if c.is_zero() {
            return LaurentExpr::zero();
        }
        LaurentExpr {
            lattice: self.lattice,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by a symbol-free monomial given with rational exponents.
    pub fn shift(&self, exps: &[Rational; 4]) -> LaurentExpr {
        self * &LaurentExpr::monomial(exps, Rational::one())
    }

    pub fn pow(&self, n: u32) -> LaurentExpr {
        let mut acc = LaurentExpr::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Lowest and highest monomials in the term order, with coefficients.
    pub(crate) fn extreme_terms(&self) -> Option<((&Monomial, &Rational), (&Monomial, &Rational))> {
        let lo = self.terms.iter().next()?;
        let hi = self.terms.iter().next_back()?;
        Some((lo, hi))
    }
}

pub(crate) fn to_i128(b: &BigInt) -> i128 {
    use num_traits::ToPrimitive;
    b.to_i128().expect("exponent lattice exceeds 128-bit range")
}

impl Add for &LaurentExpr {
    type Output = LaurentExpr;
    fn add(self, rhs: &LaurentExpr) -> LaurentExpr {
        let (a, m) = self.unify(rhs);
        let b = rhs.refined(m);
        let mut out = a.into_owned();
        for (mono, c) in b.terms {
            out.add_term(mono, c);
        }
        out
    }
}

impl Sub for &LaurentExpr {
    type Output = LaurentExpr;
    fn sub(self, rhs: &LaurentExpr) -> LaurentExpr {
        self + &(-rhs)
    }
}

impl Neg for &LaurentExpr {
    type Output = LaurentExpr;
    fn neg(self) -> LaurentExpr {
        LaurentExpr {
            lattice: self.lattice,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &LaurentExpr {
    type Output = LaurentExpr;
    fn mul(self, rhs: &LaurentExpr) -> LaurentExpr {
        if self.is_zero() || rhs.is_zero() {
            return LaurentExpr::zero();
        }
        let (a, m) = self.unify(rhs);
        let b = rhs.refined(m);
        let mut out = LaurentExpr { lattice: m, terms: BTreeMap::new() };
        for (ma, ca) in a.terms.iter() {
            for (mb, cb) in b.terms.iter() {
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for LaurentExpr {
            type Output = LaurentExpr;
            fn $f(self, rhs: LaurentExpr) -> LaurentExpr {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&LaurentExpr> for LaurentExpr {
            type Output = LaurentExpr;
            fn $f(self, rhs: &LaurentExpr) -> LaurentExpr {
                (&self).$f(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentExpr {
    type Output = LaurentExpr;
    fn neg(self) -> LaurentExpr {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::rational::{int, rat};

    fn l() -> LaurentExpr {
        LaurentExpr::var(Var::L)
    }

    #[test]
    fn fractional_powers_multiply_across_lattices() {
        let half = LaurentExpr::var_pow(Var::L, rat(1, 2));
        let third = LaurentExpr::var_pow(Var::L, rat(1, 3));
        let prod = &half * &third;
        assert_eq!(prod, LaurentExpr::var_pow(Var::L, rat(5, 6)));
        assert_eq!(prod.lattice(), 6);
        assert_eq!(&half * &half, l());
    }

    #[test]
    fn refinement_keeps_value() {
        let e = &l() + &LaurentExpr::var_pow(Var::T, rat(-2, 5));
        let r = e.refined(10);
        assert_eq!(r.lattice(), 10);
        assert_eq!(r, e);
        assert_eq!(r.reduced().lattice(), 5);
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let e = &l() - &l();
        assert!(e.is_zero());
        assert_eq!(e.len(), 0);
    }

    #[test]
    fn symbols_merge_degrees() {
        let c = LaurentExpr::symbol("C");
        let sq = &c * &c;
        let t = sq.as_monomial().unwrap();
        assert_eq!(t.syms, vec![(Arc::from("C"), 2)]);
        assert!(sq.has_symbols());
    }

    #[test]
    fn constants() {
        assert_eq!(LaurentExpr::integer(3).as_constant(), Some(int(3)));
        assert_eq!(LaurentExpr::zero().as_constant(), Some(int(0)));
        assert_eq!(l().as_constant(), None);
    }
}
