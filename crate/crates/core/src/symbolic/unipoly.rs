//! Univariate polynomials and rational functions in `s` over the rationals.

use super::rational::Rational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Dense polynomial, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", super::format::poly_text(self, "s"))
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `s`.
    pub fn s() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    /// `a + b·s`.
    pub fn linear(a: Rational, b: Rational) -> Self {
        Self::from_coeffs(vec![a, b])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().recip();
        self.scale(&inv)
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("polynomial division by zero");
        let lead_inv = d.leading().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.div_rem(&y).1;
            x = y;
            y = r;
        }
        x.monic()
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicity of `x` as a root.
    pub fn root_multiplicity(&self, x: &Rational) -> u32 {
        if self.is_zero() {
            return u32::MAX;
        }
        let lin = Poly::linear(-x.clone(), Rational::one());
        let mut p = self.clone();
        let mut k = 0;
        loop {
            let (q, r) = p.div_rem(&lin);
            if !r.is_zero() {
                return k;
            }
            p = q;
            k += 1;
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
            if let Some(r) = rhs.coeffs.get(i) {
                c += r;
            }
            out.push(c);
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

/// Outcome of evaluating a function at a point where it may have a pole.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Limit<T> {
    Value(T),
    Pole { order: u32 },
}

impl<T> Limit<T> {
    pub fn value(self) -> Option<T> {
        match self {
            Limit::Value(v) => Some(v),
            Limit::Pole { .. } => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Limit<U> {
        match self {
            Limit::Value(v) => Limit::Value(f(v)),
            Limit::Pole { order } => Limit::Pole { order },
        }
    }
}

/// Reduced quotient of polynomials in `s` with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniRationalFn {
    num: Poly,
    den: Poly,
}

impl fmt::Debug for UniRationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniRationalFn({})", super::format::unirational_text(self))
    }
}

impl Default for UniRationalFn {
    fn default() -> Self {
        Self::zero()
    }
}

impl UniRationalFn {
    /// Panics if `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = Poly::gcd(&num, &den);
        let (mut n, _) = num.div_rem(&g);
        let (mut d, _) = den.div_rem(&g);
        let lead = d.leading();
        if !lead.is_one() {
            let inv = lead.recip();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        UniRationalFn { num: n, den: d }
    }

    pub fn zero() -> Self {
        UniRationalFn { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        UniRationalFn { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        UniRationalFn { num: p, den: Poly::one() }
    }

    /// `1 / (a + b·s)`. Panics if both are zero.
    pub fn inverse_linear(a: Rational, b: Rational) -> Self {
        Self::new(Poly::one(), Poly::linear(a, b))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.degree() == Some(0) {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn recip(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(Self::new(self.den.clone(), self.num.clone()))
        }
    }

    pub fn eval_or_limit(&self, x: &Rational) -> Limit<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            Limit::Pole { order: self.den.root_multiplicity(x) }
        } else {
            Limit::Value(self.num.eval(x) / d)
        }
    }

    pub fn limit_at_s1(&self) -> Limit<Rational> {
        self.eval_or_limit(&Rational::one())
    }
}

impl Add for &UniRationalFn {
    type Output = UniRationalFn;
    fn add(self, rhs: &UniRationalFn) -> UniRationalFn {
        if self.den == rhs.den {
            return UniRationalFn::new(&self.num + &rhs.num, self.den.clone());
        }
        UniRationalFn::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Neg for &UniRationalFn {
    type Output = UniRationalFn;
    fn neg(self) -> UniRationalFn {
        UniRationalFn { num: -&self.num, den: self.den.clone() }
    }
}

impl Sub for &UniRationalFn {
    type Output = UniRationalFn;
    fn sub(self, rhs: &UniRationalFn) -> UniRationalFn {
        self + &(-rhs)
    }
}

impl Mul for &UniRationalFn {
    type Output = UniRationalFn;
    fn mul(self, rhs: &UniRationalFn) -> UniRationalFn {
        UniRationalFn::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &UniRationalFn {
    type Output = UniRationalFn;
    /// Panics on division by zero.
    fn div(self, rhs: &UniRationalFn) -> UniRationalFn {
        self * &rhs.recip().expect("division by zero rational function")
    }
}

macro_rules! forward_owned {
    ($t:ty, $tr:ident, $f:ident) => {
        impl $tr for $t {
            type Output = $t;
            fn $f(self, rhs: $t) -> $t {
                (&self).$f(&rhs)
            }
        }
    };
}

forward_owned!(Poly, Add, add);
forward_owned!(Poly, Sub, sub);
forward_owned!(Poly, Mul, mul);
forward_owned!(UniRationalFn, Add, add);
forward_owned!(UniRationalFn, Sub, sub);
forward_owned!(UniRationalFn, Mul, mul);
forward_owned!(UniRationalFn, Div, div);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::rational::{int, rat};

    #[test]
    fn gcd_reduces_and_normalizes() {
        // (s^2 - 1) / (2s - 2) = (s + 1) / 2
        let num = Poly::from_coeffs(vec![int(-1), int(0), int(1)]);
        let den = Poly::linear(int(-2), int(2));
        let f = UniRationalFn::new(num, den);
        assert_eq!(f.numerator(), &Poly::linear(rat(1, 2), rat(1, 2)));
        assert_eq!(f.denominator(), &Poly::one());
    }

    #[test]
    fn limit_reports_pole_order() {
        let f = UniRationalFn::new(Poly::one(), Poly::linear(int(1), int(-1)).pow(2));
        assert_eq!(f.limit_at_s1(), Limit::Pole { order: 2 });
        let g = UniRationalFn::new(Poly::constant(int(13)), Poly::s());
        assert_eq!(g.limit_at_s1(), Limit::Value(int(13)));
    }

    #[test]
    fn sums_of_partial_fractions() {
        let a = UniRationalFn::inverse_linear(int(0), int(1));
        let b = UniRationalFn::inverse_linear(int(1), int(0));
        let sum = &a + &b;
        assert_eq!(sum, UniRationalFn::new(Poly::linear(int(1), int(1)), Poly::s()));
    }
}
