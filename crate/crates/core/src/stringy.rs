//! Stringy zeta functions of surface germs on the motivic, Hodge and Euler
//! levels, the surface invariants `ℰ(X)` and `e(X)`, and Batyrev's
//! expression.
//!
//! Strata are intersected with the fiber over the singular point: a curve
//! `E_i` with `δ_i` intersection points contributes `[E_i] − δ_i`, every
//! intersection point contributes `1`, and the empty index set contributes
//! nothing.

use crate::mmp::{canonical_model, run_mmp, MmpError, NuNRow, PartialModel};
use crate::surface::{Classification, ResolutionGraph, SurfaceError};
use crate::symbolic::{
    euler_specialize, hodge_specialize, int, limit_at_s1, LaurentExpr, Limit, RationalExpr, Rational, SymbolInfo,
    SymbolTable, SymbolicError, UniRationalFn, Var,
};
use num_traits::{One, Zero};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StringyError {
    #[error(transparent)]
    Mmp(#[from] MmpError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
    #[error("ZeroDiscrepancy: `{0}` has log discrepancy 0")]
    ZeroDiscrepancy(String),
    #[error("NotApplicable: {0}")]
    NotApplicable(String),
    #[error("DefinabilityViolation: `{0}` has ν = 0 and N = 0")]
    DefinabilityViolation(String),
    #[error("AssertionFailed: {0}")]
    AssertionFailed(String),
}

impl StringyError {
    /// The bare error name, as reported by the command line.
    pub fn name(&self) -> String {
        self.to_string().split(':').next().unwrap_or_default().to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Level {
    Motivic,
    Hodge,
    Euler,
}

impl Level {
    pub const ALL: [Level; 3] = [Level::Motivic, Level::Hodge, Level::Euler];

    pub fn name(self) -> &'static str {
        match self {
            Level::Motivic => "motivic",
            Level::Hodge => "hodge",
            Level::Euler => "euler",
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Level {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "motivic" => Ok(Level::Motivic),
            "hodge" => Ok(Level::Hodge),
            "euler" => Ok(Level::Euler),
            _ => Err(format!("unknown level `{s}`")),
        }
    }
}

/// A value at one of the three levels.
#[derive(Debug, Clone, PartialEq)]
pub enum ZetaValue {
    Expr(RationalExpr),
    Euler(UniRationalFn),
}

impl ZetaValue {
    pub fn as_expr(&self) -> Option<&RationalExpr> {
        match self {
            ZetaValue::Expr(e) => Some(e),
            ZetaValue::Euler(_) => None,
        }
    }

    pub fn as_euler(&self) -> Option<&UniRationalFn> {
        match self {
            ZetaValue::Euler(f) => Some(f),
            ZetaValue::Expr(_) => None,
        }
    }
}

/// Value of a zeta function at `s = 1`.
#[derive(Debug, Clone, PartialEq)]
pub enum EvalValue {
    Expr(RationalExpr),
    Number(Rational),
}

#[derive(Debug, Clone)]
pub struct StringyZeta {
    pub level: Level,
    pub value: ZetaValue,
    pub name: String,
    pub d: Option<Rational>,
    pub contracted: Vec<String>,
    pub table: Vec<NuNRow>,
    pub symbols: SymbolTable,
}

impl StringyZeta {
    pub fn eval_or_limit_at_1(&self) -> Limit<EvalValue> {
        match &self.value {
            ZetaValue::Expr(e) => limit_at_s1(e).map(EvalValue::Expr),
            ZetaValue::Euler(f) => f.limit_at_s1().map(EvalValue::Number),
        }
    }
}

/// `(L−1)/(L^(ν+sN)−1)` on the motivic level, with `uv` in place of `L` on
/// the Hodge level.
pub fn factor_expr(level: Level, nu: &Rational, n: &Rational) -> Result<RationalExpr, SymbolicError> {
    let zero = Rational::zero;
    let one = Rational::one;
    let (exps, base) = match level {
        Level::Hodge => (
            [zero(), -n.clone(), nu.clone(), nu.clone()],
            LaurentExpr::monomial(&[zero(), zero(), one(), one()], one()),
        ),
        _ => ([nu.clone(), -n.clone(), zero(), zero()], LaurentExpr::var(Var::L)),
    };
    let den = &LaurentExpr::monomial(&exps, one()) - &LaurentExpr::one();
    RationalExpr::new(&base - &LaurentExpr::one(), &den)
}

/// `1/(ν+sN)`.
pub fn factor_euler(nu: &Rational, n: &Rational) -> Option<UniRationalFn> {
    if nu.is_zero() && n.is_zero() {
        None
    } else {
        Some(UniRationalFn::inverse_linear(nu.clone(), n.clone()))
    }
}

/// A fiber stratum: its divisors (vertex indices, then branches numbered
/// after the vertices) and its class data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermStratum {
    pub members: Vec<usize>,
    /// `Some((vertex, genus, δ))` for a curve stratum, `None` for a point.
    pub curve: Option<(usize, u32, usize)>,
}

impl GermStratum {
    pub fn class(&self, level: Level, g: &ResolutionGraph) -> ZetaClass {
        let Some((i, genus, delta)) = self.curve else {
            return match level {
                Level::Euler => ZetaClass::Number(int(1)),
                _ => ZetaClass::Expr(LaurentExpr::one()),
            };
        };
        let delta = int(delta as i64);
        match level {
            Level::Euler => ZetaClass::Number(int(2 - 2 * genus as i64) - delta),
            Level::Motivic => {
                let curve = if genus == 0 {
                    &LaurentExpr::var(Var::L) + &LaurentExpr::one()
                } else {
                    LaurentExpr::symbol(&g.vertices()[i].id)
                };
                ZetaClass::Expr(&curve - &LaurentExpr::constant(delta))
            }
            Level::Hodge => ZetaClass::Expr(&SymbolInfo::curve(genus).hodge - &LaurentExpr::constant(delta)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ZetaClass {
    Expr(LaurentExpr),
    Number(Rational),
}

/// Fiber strata of the resolution in a fixed order: curves, edges, branch points.
pub fn germ_strata(g: &ResolutionGraph) -> Vec<GermStratum> {
    let n = g.len();
    let mut out: Vec<GermStratum> = (0..n)
        .map(|i| GermStratum { members: vec![i], curve: Some((i, g.vertices()[i].genus, g.incidence(i))) })
        .collect();
    out.extend(g.edges().iter().map(|&(i, j)| GermStratum { members: vec![i, j], curve: None }));
    out.extend(
        g.branches()
            .iter()
            .enumerate()
            .map(|(k, b)| GermStratum { members: vec![b.attach, n + k], curve: None }),
    );
    out
}

/// Symbols for the curves of positive genus, named by vertex id.
pub fn germ_symbols(g: &ResolutionGraph) -> SymbolTable {
    g.vertices()
        .iter()
        .filter(|v| v.genus > 0)
        .map(|v| (v.id.clone(), SymbolInfo::curve(v.genus)))
        .collect()
}

/// `Σ_I class_I · Π_{i∈I} factor(ν_i, N_i)` at a given level.
pub fn assemble(
    level: Level,
    strata: &[(Vec<usize>, ZetaClass)],
    nu_n: &[(String, Rational, Rational)],
) -> Result<ZetaValue, StringyError> {
    for (id, nu, n) in nu_n {
        if nu.is_zero() && n.is_zero() {
            return Err(StringyError::DefinabilityViolation(id.clone()));
        }
    }
    match level {
        Level::Euler => {
            let factors: Vec<UniRationalFn> =
                nu_n.iter().map(|(_, nu, n)| factor_euler(nu, n).expect("checked above")).collect();
            let mut total = UniRationalFn::zero();
            for (members, class) in strata {
                let ZetaClass::Number(c) = class else {
                    return Err(StringyError::AssertionFailed("Euler level needs numeric classes".into()));
                };
                if c.is_zero() {
                    continue;
                }
                let term = members.iter().fold(UniRationalFn::constant(c.clone()), |acc, &i| &acc * &factors[i]);
                total = &total + &term;
            }
            Ok(ZetaValue::Euler(total))
        }
        _ => {
            let factors = nu_n
                .iter()
                .map(|(_, nu, n)| factor_expr(level, nu, n))
                .collect::<Result<Vec<_>, _>>()?;
            let mut total = RationalExpr::zero();
            for (members, class) in strata {
                let ZetaClass::Expr(c) = class else {
                    return Err(StringyError::AssertionFailed("symbolic level needs expression classes".into()));
                };
                if c.is_zero() {
                    continue;
                }
                let term = members.iter().fold(RationalExpr::from(c.clone()), |acc, &i| &acc * &factors[i]);
                total = &total + &term;
            }
            Ok(ZetaValue::Expr(total))
        }
    }
}

fn table_triples(table: &[NuNRow]) -> Vec<(String, Rational, Rational)> {
    table.iter().map(|r| (r.id.clone(), r.nu.clone(), r.n.clone())).collect()
}

/// The model used by [`zeta`]: the `d`-canonical model for `d < 1`, the log
/// minimal model for `d = 1`.
pub fn default_model(g: &ResolutionGraph, d: &Rational) -> Result<PartialModel, StringyError> {
    Ok(if d.is_one() { run_mmp(g, d)? } else { canonical_model(g, d)? })
}

/// Zeta function assembled over an explicit model.
pub fn zeta_on_model(model: &PartialModel, level: Level) -> Result<StringyZeta, StringyError> {
    let g = model.base();
    let table = model.nu_n()?.rows;
    let strata: Vec<(Vec<usize>, ZetaClass)> =
        germ_strata(g).into_iter().map(|s| (s.members.clone(), s.class(level, g))).collect();
    let value = assemble(level, &strata, &table_triples(&table))?;
    Ok(StringyZeta {
        level,
        value,
        name: g.name().to_string(),
        d: Some(model.d().clone()),
        contracted: model.contracted_ids(),
        table,
        symbols: germ_symbols(g),
    })
}

pub fn zeta(g: &ResolutionGraph, d: &Rational, level: Level) -> Result<StringyZeta, StringyError> {
    zeta_on_model(&default_model(g, d)?, level)
}

/// Batyrev's `Σ [E_I°] Π (L−1)/(L^(a_i)−1)` over the fiber strata.
pub fn batyrev_expression(g: &ResolutionGraph, level: Level) -> Result<ZetaValue, StringyError> {
    let a = g.log_discrepancies();
    if let Some(i) = a.vertices.iter().position(Zero::is_zero) {
        return Err(StringyError::ZeroDiscrepancy(g.vertices()[i].id.clone()));
    }
    if g.is_empty() {
        return Ok(match level {
            Level::Euler => ZetaValue::Euler(UniRationalFn::one()),
            _ => ZetaValue::Expr(RationalExpr::one()),
        });
    }
    let ids = g.vertices().iter().map(|v| v.id.clone()).chain(g.branches().iter().map(|b| b.id.clone()));
    let triples: Vec<(String, Rational, Rational)> =
        ids.zip(a.vertices.iter().chain(&a.branches)).map(|(id, x)| (id, x.clone(), Rational::zero())).collect();
    let strata: Vec<(Vec<usize>, ZetaClass)> =
        germ_strata(g).into_iter().map(|s| (s.members.clone(), s.class(level, g))).collect();
    assemble(level, &strata, &triples)
}

/// Evaluation at `s = 1`; when every log discrepancy is nonzero the result
/// is checked against Batyrev's expression.
pub fn eval_or_limit_checked(z: &StringyZeta, g: &ResolutionGraph) -> Result<Limit<EvalValue>, StringyError> {
    let out = z.eval_or_limit_at_1();
    let a = g.log_discrepancies();
    if a.vertices.iter().all(|x| !x.is_zero()) {
        let expected = batyrev_expression(g, z.level)?;
        let agrees = match (&out, &expected) {
            (Limit::Value(EvalValue::Expr(x)), ZetaValue::Expr(y)) => x == y,
            (Limit::Value(EvalValue::Number(x)), ZetaValue::Euler(y)) => y.as_constant().as_ref() == Some(x),
            _ => false,
        };
        if !agrees {
            return Err(StringyError::AssertionFailed("value at s = 1 differs from Batyrev's expression".into()));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct VeysInvariants {
    pub motivic: RationalExpr,
    pub euler: Rational,
    pub symbols: SymbolTable,
    pub input_was_minimal: bool,
}

/// `ℰ(X)` and `e(X)` computed on the minimal log resolution.
pub fn veys_invariants(g: &ResolutionGraph) -> Result<VeysInvariants, StringyError> {
    if !g.branches().is_empty() {
        return Err(StringyError::NotApplicable("defined only without boundary".into()));
    }
    let h = g.minimize();
    let class = h.classify();
    if class != Classification::NotLc {
        return Err(StringyError::NotApplicable(format!("germ is {}", class.name())));
    }
    let a = h.log_discrepancies().vertices;
    let in_z: Vec<bool> = a.iter().map(Zero::is_zero).collect();
    let strata = germ_strata(&h);
    let kept = strata.iter().filter(|s| s.members.iter().all(|&i| !in_z[i]));

    let mut motivic = RationalExpr::zero();
    let mut euler = Rational::zero();
    let lfac = |x: &Rational| factor_expr(Level::Motivic, x, &Rational::zero());
    for s in kept {
        let ZetaClass::Expr(c) = s.class(Level::Motivic, &h) else { unreachable!() };
        let ZetaClass::Number(chi) = s.class(Level::Euler, &h) else { unreachable!() };
        let mut term = RationalExpr::from(c);
        let mut eterm = chi;
        for &i in &s.members {
            term = &term * &lfac(&a[i])?;
            eterm /= &a[i];
        }
        motivic = &motivic + &term;
        euler += eterm;
    }
    for i in (0..h.len()).filter(|&i| in_z[i]) {
        let nb = h.neighbors(i);
        if nb.is_empty() || nb.len() > 2 || nb.iter().any(|&j| in_z[j]) {
            return Err(StringyError::Surface(SurfaceError::StructureViolation(format!(
                "zero-discrepancy curve `{}` has an unexpected neighborhood",
                h.vertices()[i].id
            ))));
        }
        let kappa = int(-h.vertices()[i].self_intersection);
        let a1 = a[nb[0]].clone();
        let a2 = nb.get(1).map_or_else(Rational::one, |&j| a[j].clone());
        let term = &(&lfac(&a1)? * &lfac(&a2)?) * &RationalExpr::constant(kappa.clone());
        motivic = &motivic + &term;
        euler += kappa / (a1 * a2);
    }
    Ok(VeysInvariants { motivic: motivic.simplified(), euler, symbols: germ_symbols(&h), input_was_minimal: h.len() == g.len() })
}

/// Level consistency: the Euler and Hodge zeta functions are the
/// specializations of the motivic one.
pub fn check_levels(g: &ResolutionGraph, d: &Rational) -> Result<(), StringyError> {
    let model = default_model(g, d)?;
    let mot = zeta_on_model(&model, Level::Motivic)?;
    let hod = zeta_on_model(&model, Level::Hodge)?;
    let eul = zeta_on_model(&model, Level::Euler)?;
    let m = mot.value.as_expr().expect("motivic value");
    if euler_specialize(m, &mot.symbols)? != *eul.value.as_euler().expect("euler value") {
        return Err(StringyError::AssertionFailed("Euler level is not χ of the motivic level".into()));
    }
    if hodge_specialize(m, &mot.symbols)? != *hod.value.as_expr().expect("hodge value") {
        return Err(StringyError::AssertionFailed("Hodge level is not H of the motivic level".into()));
    }
    Ok(())
}

/// Behaviour of `z_d(s)` as `d → 1⁻` compared with `z(s)` at `d = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct DLimitComparison {
    /// Contracted set of the `d`-canonical models for `d` close to 1.
    pub near_one_contracted: Vec<String>,
    /// `lim_{d→1⁻} z_d(s)`, or `None` when it diverges.
    pub limit: Option<UniRationalFn>,
    /// `z(s)` at `d = 1`, or the error that prevents it.
    pub at_one: Result<UniRationalFn, String>,
    pub log_minimal_contracted: Option<Vec<String>>,
}

impl DLimitComparison {
    pub fn agrees(&self) -> bool {
        matches!((&self.limit, &self.at_one), (Some(x), Ok(y)) if x == y)
    }
}

/// Sign of the affine function `t(d)` just below `d = 1`, from its values at 0 and 1.
fn sign_near_one(t0: &Rational, t1: &Rational) -> std::cmp::Ordering {
    let zero = Rational::zero();
    if !t1.is_zero() {
        t1.cmp(&zero)
    } else {
        t0.cmp(&zero)
    }
}

/// Laurent series in `ε = 1 − d` with coefficients in `ℚ(s)`, starting at `ε^lo`.
#[derive(Clone)]
struct EpsSeries {
    lo: i32,
    coeffs: Vec<UniRationalFn>,
}

impl EpsSeries {
    fn mul(&self, other: &EpsSeries, keep_upto: i32) -> EpsSeries {
        let lo = self.lo + other.lo;
        let len = (keep_upto - lo + 1).max(0) as usize;
        let mut coeffs = vec![UniRationalFn::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j < len {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        EpsSeries { lo, coeffs }
    }

    fn coeff(&self, k: i32) -> UniRationalFn {
        if k < self.lo {
            return UniRationalFn::zero();
        }
        self.coeffs.get((k - self.lo) as usize).cloned().unwrap_or_default()
    }
}

/// Expansion of `1/(A + εB)` up to `ε^upto`, with `A`, `B` linear in `s`.
fn inverse_affine(a: &UniRationalFn, b: &UniRationalFn, upto: i32) -> Option<EpsSeries> {
    if a.is_zero() {
        let inv = b.recip()?;
        let len = (upto + 2).max(0) as usize;
        let mut coeffs = vec![UniRationalFn::zero(); len];
        if len > 0 {
            coeffs[0] = inv;
        }
        return Some(EpsSeries { lo: -1, coeffs });
    }
    let inv = a.recip()?;
    let ratio = &(-b) * &inv;
    let mut coeffs = Vec::new();
    let mut cur = inv;
    for _ in 0..=upto.max(0) {
        coeffs.push(cur.clone());
        cur = &cur * &ratio;
    }
    Some(EpsSeries { lo: 0, coeffs })
}

/// Runs the `d`-canonical MMP for all `d` slightly below 1 at once and
/// computes `lim_{d→1⁻} z_d(s)` on the Euler level.
pub fn compare_d_limit(g: &ResolutionGraph) -> Result<DLimitComparison, StringyError> {
    let zero_d = Rational::zero();
    let one_d = Rational::one();
    let mut s0 = PartialModel::new(g, &zero_d)?;
    let mut s1 = PartialModel::new(g, &one_d)?;
    let signs = |m0: &PartialModel, m1: &PartialModel| -> Vec<(usize, std::cmp::Ordering)> {
        m0.test_values()
            .into_iter()
            .zip(m1.test_values())
            .map(|((j, t0), (_, t1))| (j, sign_near_one(&t0, &t1)))
            .collect()
    };
    for wanted in [std::cmp::Ordering::Less, std::cmp::Ordering::Equal] {
        while let Some((j, _)) = signs(&s0, &s1).into_iter().find(|(_, o)| *o == wanted) {
            s0 = s0.contract(j)?;
            s1 = s1.contract(j)?;
        }
    }
    let t0 = s0.nu_n()?.rows;
    let t1 = s1.nu_n()?.rows;
    let strata: Vec<(Vec<usize>, Rational)> = germ_strata(g)
        .into_iter()
        .map(|s| {
            let ZetaClass::Number(c) = s.class(Level::Euler, g) else { unreachable!() };
            (s.members, c)
        })
        .collect();
    // ν(d) + sN(d) = A + εB with A = ν(1) + sN(1) and B = (ν(0) − ν(1)) + s(N(0) − N(1)).
    let affine: Vec<(UniRationalFn, UniRationalFn)> = t0
        .iter()
        .zip(&t1)
        .map(|(r0, r1)| {
            let a = UniRationalFn::from_poly(crate::symbolic::Poly::linear(r1.nu.clone(), r1.n.clone()));
            let b = UniRationalFn::from_poly(crate::symbolic::Poly::linear(&r0.nu - &r1.nu, &r0.n - &r1.n));
            (a, b)
        })
        .collect();
    let max_pole = strata
        .iter()
        .map(|(m, _)| m.iter().filter(|&&i| affine[i].0.is_zero()).count() as i32)
        .max()
        .unwrap_or(0);
    let mut total = EpsSeries { lo: -max_pole, coeffs: vec![UniRationalFn::zero(); max_pole as usize + 1] };
    let mut defined = true;
    for (members, c) in &strata {
        let mut term = EpsSeries { lo: 0, coeffs: vec![UniRationalFn::constant(c.clone())] };
        for &i in members {
            match inverse_affine(&affine[i].0, &affine[i].1, max_pole) {
                Some(f) => term = term.mul(&f, 0),
                None => defined = false,
            }
        }
        for k in -max_pole..=0 {
            let idx = (k + max_pole) as usize;
            total.coeffs[idx] = &total.coeffs[idx] + &term.coeff(k);
        }
    }
    let limit = if defined && (-max_pole..0).all(|k| total.coeff(k).is_zero()) { Some(total.coeff(0)) } else { None };
    let at_one = zeta(g, &one_d, Level::Euler)
        .map(|z| z.value.as_euler().cloned().expect("euler value"))
        .map_err(|e| e.name());
    let log_minimal_contracted = run_mmp(g, &one_d).ok().map(|m| m.contracted_ids());
    Ok(DLimitComparison { near_one_contracted: s0.contracted_ids(), limit, at_one, log_minimal_contracted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::Vertex;
    use crate::symbolic::{rat, Poly};

    fn v(id: &str, genus: u32, e2: i64) -> Vertex {
        Vertex { id: id.into(), genus, self_intersection: e2 }
    }

    fn elliptic_branch_germ(kappa: i64) -> ResolutionGraph {
        ResolutionGraph::new(
            "elliptic-branch",
            vec![v("E0", 1, -kappa - 2), v("E1", 0, -2), v("E2", 0, -1)],
            vec![("E2".into(), "E0".into()), ("E2".into(), "E1".into())],
            vec![("B".into(), rat(1, 2), "E2".into())],
        )
        .unwrap()
    }

    #[test]
    fn elliptic_branch_euler_at_one() {
        for kappa in [1i64, 2, 3, 5] {
            let z = zeta(&elliptic_branch_germ(kappa), &int(1), Level::Euler).unwrap();
            let k = int(kappa);
            // κ²/(2s²) − κ/(2s) = (κ² − κ s)/(2 s²)
            let expected = UniRationalFn::new(
                Poly::linear(&k * &k, -k.clone()),
                Poly::from_coeffs(vec![int(0), int(0), int(2)]),
            );
            assert_eq!(z.value.as_euler().unwrap(), &expected);
        }
    }

    #[test]
    fn elliptic_branch_euler_below_one() {
        for kappa in [1i64, 2, 3] {
            for d in [int(0), rat(1, 3), rat(3, 4)] {
                let z = zeta(&elliptic_branch_germ(kappa), &d, Level::Euler).unwrap();
                let slope = &d - int(1) - rat(1, kappa);
                let x = UniRationalFn::from_poly(Poly::linear(int(1) - &d, slope));
                let half = UniRationalFn::constant(rat(1, 2));
                let expected = &(&half * &(&x * &x).recip().unwrap()) + &(&half * &x.recip().unwrap());
                assert_eq!(z.value.as_euler().unwrap(), &expected);
            }
        }
    }

    #[test]
    fn a1_is_constant_and_matches_batyrev() {
        let g = ResolutionGraph::new("a1", vec![v("E", 0, -2)], vec![], vec![]).unwrap();
        for d in [int(0), rat(1, 2), int(1)] {
            let z = zeta(&g, &d, Level::Euler).unwrap();
            assert_eq!(z.value.as_euler().unwrap(), &UniRationalFn::constant(int(2)));
            let m = zeta(&g, &d, Level::Motivic).unwrap();
            let l = LaurentExpr::var(Var::L);
            assert!(*m.value.as_expr().unwrap() == RationalExpr::from(&l + &LaurentExpr::one()));
        }
        assert_eq!(batyrev_expression(&g, Level::Euler).unwrap(), ZetaValue::Euler(UniRationalFn::constant(int(2))));
    }

    #[test]
    fn genus_two_veys() {
        let g = ResolutionGraph::new("g2", vec![v("E", 2, -1)], vec![], vec![]).unwrap();
        let inv = veys_invariants(&g).unwrap();
        assert_eq!(inv.euler, int(1));
    }

    #[test]
    fn levels_agree_on_elliptic_branch() {
        for d in [int(0), rat(1, 2), int(1)] {
            check_levels(&elliptic_branch_germ(2), &d).unwrap();
        }
    }

    #[test]
    fn d_limit_on_elliptic_branch() {
        let c = compare_d_limit(&elliptic_branch_germ(3)).unwrap();
        assert_eq!(c.near_one_contracted, vec!["E1", "E2"]);
        assert!(c.agrees());
    }
}
