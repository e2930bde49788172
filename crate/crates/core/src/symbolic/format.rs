//! Text, LaTeX and JSON renderings. Terms are printed from the highest
//! monomial down in the lexicographic order on `(L, T, u, v)` exponents,
//! then symbol degrees.

use super::laurent::{LaurentExpr, Term, Var};
use super::ratexpr::RationalExpr;
use super::rational::{format_rational, latex_rational, Rational};
use super::unipoly::{Poly, UniRationalFn};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};

fn text_exponent(e: &Rational) -> String {
    if e.is_one() {
        String::new()
    } else if e.is_integer() && e.is_positive() {
        format!("^{}", e.numer())
    } else {
        format!("^({})", format_rational(e))
    }
}

fn term_factors_text(t: &Term) -> Vec<String> {
    let mut out = Vec::new();
    for v in Var::ALL {
        let e = &t.exps[v.index()];
        if !e.is_zero() {
            out.push(format!("{}{}", v.name(), text_exponent(e)));
        }
    }
    for (name, deg) in &t.syms {
        if *deg == 1 {
            out.push(format!("[{name}]"));
        } else {
            out.push(format!("[{name}]^{deg}"));
        }
    }
    out
}

fn join_signed(parts: impl IntoIterator<Item = String>) -> String {
    let mut s = String::new();
    for p in parts {
        if !s.is_empty() && !p.starts_with('-') {
            s.push('+');
        }
        s.push_str(&p);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

pub fn laurent_text(e: &LaurentExpr) -> String {
    join_signed(e.terms_view().rev().map(|t| {
        let factors = term_factors_text(&t).join("*");
        if factors.is_empty() {
            format_rational(&t.coeff)
        } else if t.coeff.is_one() {
            factors
        } else if (-&t.coeff).is_one() {
            format!("-{factors}")
        } else {
            format!("{}*{factors}", format_rational(&t.coeff))
        }
    }))
}

pub fn ratexpr_text(e: &RationalExpr) -> String {
    let dens = e.denominator_factors();
    if dens.is_empty() {
        return laurent_text(e.numerator());
    }
    let num = e.numerator();
    let num_text = if num.len() <= 1 { laurent_text(num) } else { format!("({})", laurent_text(num)) };
    let factors: Vec<String> = dens
        .iter()
        .map(|(f, k)| if *k == 1 { format!("({})", laurent_text(f)) } else { format!("({})^{k}", laurent_text(f)) })
        .collect();
    if factors.len() == 1 {
        format!("{num_text}/{}", factors[0])
    } else {
        format!("{num_text}/({})", factors.join("*"))
    }
}

pub fn poly_text(p: &Poly, var: &str) -> String {
    join_signed(p.coeffs().iter().enumerate().rev().filter(|(_, c)| !c.is_zero()).map(|(k, c)| {
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if mono.is_empty() {
            format_rational(c)
        } else if c.is_one() {
            mono
        } else if (-c).is_one() {
            format!("-{mono}")
        } else {
            format!("{}*{mono}", format_rational(c))
        }
    }))
}

fn poly_paren(p: &Poly) -> String {
    let mut terms = p.coeffs().iter().filter(|c| !c.is_zero());
    let simple = match (terms.next(), terms.next()) {
        (Some(c), None) => match p.as_constant() {
            Some(k) => k.is_integer() && !k.is_negative(),
            None => c.is_one(),
        },
        _ => false,
    };
    if simple {
        poly_text(p, "s")
    } else {
        format!("({})", poly_text(p, "s"))
    }
}

/// Numerator and denominator rescaled to coprime integer coefficients with
/// a positive leading denominator coefficient.
fn integral_form(f: &UniRationalFn) -> (Poly, Poly) {
    let all = || f.numerator().coeffs().iter().chain(f.denominator().coeffs());
    let lcm = all().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scaled = |p: &Poly| p.scale(&Rational::from_integer(lcm.clone()));
    let (num, den) = (scaled(f.numerator()), scaled(f.denominator()));
    let gcd = num.coeffs().iter().chain(den.coeffs()).fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()));
    let unit = Rational::new(if den.leading().is_negative() { -BigInt::one() } else { BigInt::one() }, gcd);
    (num.scale(&unit), den.scale(&unit))
}

pub fn unirational_text(f: &UniRationalFn) -> String {
    if f.denominator().is_one_poly() {
        return poly_text(f.numerator(), "s");
    }
    let (num, den) = integral_form(f);
    let num_text = if num.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1 {
        poly_text(&num, "s")
    } else {
        format!("({})", poly_text(&num, "s"))
    };
    format!("{num_text}/{}", poly_paren(&den))
}

impl Poly {
    pub(crate) fn is_one_poly(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }
}

fn latex_exponent(e: &Rational) -> String {
    if e.is_one() {
        String::new()
    } else {
        format!("^{{{}}}", latex_rational(e))
    }
}

pub fn laurent_latex(e: &LaurentExpr) -> String {
    let mut s = String::new();
    for t in e.terms_view().rev() {
        let mut factors = Vec::new();
        for v in Var::ALL {
            let x = &t.exps[v.index()];
            if !x.is_zero() {
                factors.push(format!("{}{}", v.name(), latex_exponent(x)));
            }
        }
        for (name, deg) in &t.syms {
            let d = if *deg == 1 { String::new() } else { format!("^{{{deg}}}") };
            factors.push(format!("[{name}]{d}"));
        }
        let body = factors.join(" ");
        let neg = t.coeff.is_negative();
        let mag = t.coeff.abs();
        let piece = if body.is_empty() {
            latex_rational(&mag)
        } else if mag.is_one() {
            body
        } else {
            format!("{} {body}", latex_rational(&mag))
        };
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        s.push_str(&piece);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

pub fn ratexpr_latex(e: &RationalExpr) -> String {
    let dens = e.denominator_factors();
    if dens.is_empty() {
        return laurent_latex(e.numerator());
    }
    let den: Vec<String> = dens
        .iter()
        .map(|(f, k)| {
            let p = format!("\\left({}\\right)", laurent_latex(f));
            if *k == 1 {
                p
            } else {
                format!("{p}^{{{k}}}")
            }
        })
        .collect();
    format!("\\frac{{{}}}{{{}}}", laurent_latex(e.numerator()), den.join(""))
}

pub fn poly_latex(p: &Poly, var: &str) -> String {
    let mut s = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev().filter(|(_, c)| !c.is_zero()) {
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{{{k}}}"),
        };
        let mag = c.abs();
        let piece = if mono.is_empty() {
            latex_rational(&mag)
        } else if mag.is_one() {
            mono
        } else {
            format!("{} {mono}", latex_rational(&mag))
        };
        if s.is_empty() {
            if c.is_negative() {
                s.push('-');
            }
        } else {
            s.push_str(if c.is_negative() { " - " } else { " + " });
        }
        s.push_str(&piece);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

pub fn unirational_latex(f: &UniRationalFn) -> String {
    if f.denominator().is_one_poly() {
        poly_latex(f.numerator(), "s")
    } else {
        let (num, den) = integral_form(f);
        format!("\\frac{{{}}}{{{}}}", poly_latex(&num, "s"), poly_latex(&den, "s"))
    }
}

pub fn laurent_json(e: &LaurentExpr) -> Value {
    Value::Array(
        e.terms_view()
            .rev()
            .map(|t| {
                let mut exps = Map::new();
                for v in Var::ALL {
                    let x = &t.exps[v.index()];
                    if !x.is_zero() {
                        exps.insert(v.name().to_string(), json!(format_rational(x)));
                    }
                }
                let syms: Map<String, Value> = t.syms.iter().map(|(n, d)| (n.to_string(), json!(d))).collect();
                json!({
                    "coefficient": format_rational(&t.coeff),
                    "exponents": exps,
                    "symbols": syms,
                })
            })
            .collect(),
    )
}

pub fn ratexpr_json(e: &RationalExpr) -> Value {
    json!({
        "text": ratexpr_text(e),
        "numerator": laurent_json(e.numerator()),
        "denominator": e
            .denominator_factors()
            .iter()
            .map(|(f, k)| json!({ "factor": laurent_json(f), "multiplicity": k }))
            .collect::<Vec<_>>(),
    })
}

pub fn unirational_json(f: &UniRationalFn) -> Value {
    let coeffs = |p: &Poly| p.coeffs().iter().map(|c| json!(format_rational(c))).collect::<Vec<_>>();
    json!({
        "text": unirational_text(f),
        "numerator": coeffs(f.numerator()),
        "denominator": coeffs(f.denominator()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::rational::{int, rat};

    #[test]
    fn text_forms() {
        let l = LaurentExpr::var(Var::L);
        let c = LaurentExpr::symbol("C");
        let e = &(&l.pow(3) + &l) - &(&l * &c).scale(&int(4));
        assert_eq!(laurent_text(&e), "L^3-4*L*[C]+L");
        let t = LaurentExpr::var_pow(Var::T, rat(-1, 5)).scale(&rat(1, 2));
        assert_eq!(laurent_text(&t), "1/2*T^(-1/5)");
        assert_eq!(laurent_text(&LaurentExpr::zero()), "0");
    }

    #[test]
    fn rational_expr_text() {
        let l = LaurentExpr::var(Var::L);
        let e = RationalExpr::new(LaurentExpr::one(), &(&l - &LaurentExpr::one())).unwrap();
        assert_eq!(ratexpr_text(&e), "1/(L-1)");
        let sq = e.pow(2);
        assert_eq!(ratexpr_text(&sq), "1/(L-1)^2");
    }

    #[test]
    fn poly_and_function_text() {
        let f = UniRationalFn::new(Poly::constant(int(13)), Poly::s());
        assert_eq!(unirational_text(&f), "13/s");
        let g = UniRationalFn::new(Poly::linear(int(1), int(-2)), Poly::linear(int(3), int(1)));
        assert_eq!(unirational_text(&g), "(-2*s+1)/(s+3)");
        assert_eq!(unirational_latex(&f), "\\frac{13}{s}");
    }

    #[test]
    fn latex_forms() {
        let e = LaurentExpr::var_pow(Var::L, rat(1, 5));
        assert_eq!(laurent_latex(&e), "L^{\\frac{1}{5}}");
        let n = &LaurentExpr::integer(-2) - &LaurentExpr::var(Var::U);
        assert_eq!(laurent_latex(&n), "-u - 2");
    }
}
