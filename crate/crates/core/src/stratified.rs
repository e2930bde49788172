//! Zeta functions from user-supplied stratified log resolution data in any
//! dimension, the Hodge-level functional equation, the blow-up
//! transformation of strata and its hyperplane-arrangement oracle.
//!
//! The data are trusted: `(ν, N)` and the stratum classes are not checked
//! against any geometry beyond the consistency conditions stated below.

use crate::mmp::{NuNRow, PartialModel};
use crate::stringy::{assemble, factor_expr, germ_strata, germ_symbols, Level, StringyError, StringyZeta, ZetaClass};
use crate::symbolic::{
    format::laurent_text, format_rational, hodge_specialize, parse_laurent, parse_rational, ratfn_equal, LaurentExpr,
    RationalExpr, Rational, Substitution, SymbolInfo, SymbolTable, SymbolicError, Var,
};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AbstractError {
    #[error("DefinabilityViolation: `{0}` violates ν > 0 or (ν = 0 and N ≠ 0)")]
    DefinabilityViolation(String),
    #[error("MissingLevel: no {0} class for stratum {{{1}}}")]
    MissingLevel(String, String),
    #[error("NotComplete: the functional equation needs complete data")]
    NotComplete,
    #[error("InconsistentCenter: {0}")]
    InconsistentCenter(String),
    #[error("InvalidData: {0}")]
    InvalidData(String),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}

impl From<StringyError> for AbstractError {
    fn from(e: StringyError) -> Self {
        match e {
            StringyError::DefinabilityViolation(id) => AbstractError::DefinabilityViolation(id),
            StringyError::Symbolic(s) => AbstractError::Symbolic(s),
            other => AbstractError::InvalidData(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractDivisor {
    pub id: String,
    pub nu: Rational,
    pub n: Rational,
}

/// A class given at one or more levels. Missing levels are `None`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Classes {
    pub euler: Option<Rational>,
    /// Polynomial in `u`, `v`.
    pub hodge: Option<LaurentExpr>,
    /// Expression in `L` and declared symbols.
    pub symbolic: Option<LaurentExpr>,
}

fn both<T>(a: &Option<T>, b: &Option<T>, f: impl Fn(&T, &T) -> T) -> Option<T> {
    Some(f(a.as_ref()?, b.as_ref()?))
}

impl Classes {
    pub fn all(euler: Rational, hodge: LaurentExpr, symbolic: LaurentExpr) -> Self {
        Classes { euler: Some(euler), hodge: Some(hodge), symbolic: Some(symbolic) }
    }

    pub fn zero() -> Self {
        Self::all(Rational::zero(), LaurentExpr::zero(), LaurentExpr::zero())
    }

    pub fn point() -> Self {
        Self::all(Rational::one(), LaurentExpr::one(), LaurentExpr::one())
    }

    /// `[ℙⁿ]`, zero for `n < 0`.
    pub fn projective(n: i64) -> Self {
        let uv = &LaurentExpr::var(Var::U) * &LaurentExpr::var(Var::V);
        let l = LaurentExpr::var(Var::L);
        let mut out = Self::zero();
        for k in 0..=n {
            out = out.add(&Self::all(Rational::one(), uv.pow(k as u32), l.pow(k as u32)));
        }
        out
    }

    pub fn add(&self, o: &Classes) -> Classes {
        Classes {
            euler: both(&self.euler, &o.euler, |a, b| a + b),
            hodge: both(&self.hodge, &o.hodge, |a, b| a + b),
            symbolic: both(&self.symbolic, &o.symbolic, |a, b| a + b),
        }
    }

    pub fn sub(&self, o: &Classes) -> Classes {
        Classes {
            euler: both(&self.euler, &o.euler, |a, b| a - b),
            hodge: both(&self.hodge, &o.hodge, |a, b| a - b),
            symbolic: both(&self.symbolic, &o.symbolic, |a, b| a - b),
        }
    }

    pub fn mul(&self, o: &Classes) -> Classes {
        Classes {
            euler: both(&self.euler, &o.euler, |a, b| a * b),
            hodge: both(&self.hodge, &o.hodge, |a, b| a * b),
            symbolic: both(&self.symbolic, &o.symbolic, |a, b| a * b),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.euler.as_ref().is_none_or(Zero::is_zero)
            && self.hodge.as_ref().is_none_or(LaurentExpr::is_zero)
            && self.symbolic.as_ref().is_none_or(LaurentExpr::is_zero)
    }

    pub fn get(&self, level: Level) -> Option<ZetaClass> {
        match level {
            Level::Euler => self.euler.clone().map(ZetaClass::Number),
            Level::Hodge => self.hodge.clone().map(ZetaClass::Expr),
            Level::Motivic => self.symbolic.clone().map(ZetaClass::Expr),
        }
    }

    /// Fills lower levels from higher ones and checks agreement where several are given.
    fn complete_levels(&mut self, symbols: &SymbolTable) -> Result<(), String> {
        if let Some(sym) = &self.symbolic {
            let known = sym.symbol_names().iter().all(|n| symbols.contains_key(&**n));
            if known {
                let h = hodge_specialize(&sym.clone().into(), symbols).map_err(|e| e.to_string())?;
                let h = h.as_laurent().cloned().ok_or("Hodge class is not a polynomial")?;
                match &self.hodge {
                    Some(given) if *given != h => {
                        return Err(format!("hodge class {} differs from H({})", laurent_text(given), laurent_text(sym)))
                    }
                    _ => self.hodge = Some(h),
                }
            }
        }
        let derived = match (&self.hodge, &self.symbolic) {
            (Some(h), _) => Some(eval_at_one(h, &BTreeMap::new())?),
            (None, Some(sym)) => {
                let eul: BTreeMap<String, Rational> =
                    symbols.iter().map(|(k, v)| (k.clone(), v.euler.clone())).collect();
                eval_at_one(sym, &eul).ok()
            }
            _ => None,
        };
        if let Some(x) = derived {
            match &self.euler {
                Some(given) if *given != x => {
                    return Err(format!("euler class {} differs from {}", format_rational(given), format_rational(&x)))
                }
                _ => self.euler = Some(x),
            }
        }
        Ok(())
    }
}

/// Value at `L = u = v = T = 1` with symbols replaced by the given numbers.
fn eval_at_one(e: &LaurentExpr, symbols: &BTreeMap<String, Rational>) -> Result<Rational, String> {
    let mut sub = Substitution::new();
    for v in Var::ALL {
        sub = sub.var_to_monomial(v, [Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()]);
    }
    for n in e.symbol_names() {
        let x = symbols.get(&*n).ok_or_else(|| format!("no Euler number for [{n}]"))?;
        sub = sub.symbol(&n, RationalExpr::constant(x.clone()));
    }
    sub.apply_laurent(e)
        .map_err(|e| e.to_string())?
        .as_constant()
        .ok_or_else(|| "class does not evaluate to a number".to_string())
}

#[derive(Debug, Clone, PartialEq)]
pub struct StratifiedResolution {
    pub name: String,
    pub dimension: u32,
    pub complete: bool,
    pub divisors: Vec<AbstractDivisor>,
    pub symbols: SymbolTable,
    /// Keyed by sorted divisor indices; absent keys are empty strata.
    pub strata: BTreeMap<Vec<usize>, Classes>,
}

impl StratifiedResolution {
    pub fn new(
        name: impl Into<String>,
        dimension: u32,
        complete: bool,
        divisors: Vec<AbstractDivisor>,
        symbols: SymbolTable,
        strata: Vec<(Vec<String>, Classes)>,
    ) -> Result<Self, AbstractError> {
        let invalid = AbstractError::InvalidData;
        if dimension == 0 {
            return Err(invalid("dimension must be positive".into()));
        }
        let mut seen = BTreeSet::new();
        for d in &divisors {
            if !seen.insert(d.id.as_str()) {
                return Err(invalid(format!("duplicate divisor `{}`", d.id)));
            }
            if d.nu < Rational::zero() || (d.nu.is_zero() && d.n.is_zero()) {
                return Err(AbstractError::DefinabilityViolation(d.id.clone()));
            }
        }
        let mut out = StratifiedResolution {
            name: name.into(),
            dimension,
            complete,
            divisors,
            symbols,
            strata: BTreeMap::new(),
        };
        for (ids, mut classes) in strata {
            let key = out.key(&ids)?;
            if key.len() > dimension as usize {
                return Err(invalid(format!("stratum {{{}}} has more divisors than the dimension", ids.join(","))));
            }
            classes
                .complete_levels(&out.symbols)
                .map_err(|m| invalid(format!("stratum {{{}}}: {m}", ids.join(","))))?;
            if out.strata.insert(key, classes).is_some() {
                return Err(invalid(format!("stratum {{{}}} listed twice", ids.join(","))));
            }
        }
        if !out.strata.contains_key(&Vec::new()) {
            return Err(invalid("the empty index set needs a stratum class".into()));
        }
        Ok(out)
    }

    fn key(&self, ids: &[String]) -> Result<Vec<usize>, AbstractError> {
        let mut key = ids
            .iter()
            .map(|id| {
                self.divisor_index(id)
                    .ok_or_else(|| AbstractError::InvalidData(format!("unknown divisor `{id}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        key.sort_unstable();
        if key.windows(2).any(|w| w[0] == w[1]) {
            return Err(AbstractError::InvalidData(format!("repeated divisor in {{{}}}", ids.join(","))));
        }
        Ok(key)
    }

    pub fn divisor_index(&self, id: &str) -> Option<usize> {
        self.divisors.iter().position(|d| d.id == id)
    }

    pub fn stratum_label(&self, key: &[usize]) -> String {
        key.iter().map(|&i| self.divisors[i].id.as_str()).collect::<Vec<_>>().join(",")
    }

    pub fn table(&self) -> Vec<NuNRow> {
        self.divisors
            .iter()
            .map(|d| NuNRow { id: d.id.clone(), is_branch: false, nu: d.nu.clone(), n: d.n.clone(), a: &d.nu + &d.n })
            .collect()
    }

    fn level_strata(&self, level: Level) -> Result<Vec<(Vec<usize>, ZetaClass)>, AbstractError> {
        self.strata
            .iter()
            .map(|(k, c)| {
                c.get(level)
                    .map(|x| (k.clone(), x))
                    .ok_or_else(|| AbstractError::MissingLevel(level.name().into(), self.stratum_label(k)))
            })
            .collect()
    }

    /// Surface germ data on a partial model: fiber strata of the resolution
    /// with the model's `(ν, N)`.
    pub fn from_model(model: &PartialModel) -> Result<Self, AbstractError> {
        let g = model.base();
        let table = model.nu_n().map_err(|e| AbstractError::InvalidData(e.to_string()))?;
        let divisors =
            table.rows.iter().map(|r| AbstractDivisor { id: r.id.clone(), nu: r.nu.clone(), n: r.n.clone() }).collect();
        let mut strata = BTreeMap::new();
        strata.insert(Vec::new(), Classes::zero());
        for s in germ_strata(g) {
            let pick = |level| match s.class(level, g) {
                ZetaClass::Number(x) => (Some(x), None),
                ZetaClass::Expr(e) => (None, Some(e)),
            };
            let classes =
                Classes { euler: pick(Level::Euler).0, hodge: pick(Level::Hodge).1, symbolic: pick(Level::Motivic).1 };
            let mut key = s.members.clone();
            key.sort_unstable();
            strata.insert(key, classes);
        }
        Ok(StratifiedResolution {
            name: g.name().to_string(),
            dimension: 2,
            complete: false,
            divisors,
            symbols: germ_symbols(g),
            strata,
        })
    }
}

/// `Σ_I [E_I°] Π_{i∈I} (L−1)/(L^(νᵢ+sNᵢ)−1)` at the requested level.
pub fn zeta_abstract(data: &StratifiedResolution, level: Level) -> Result<StringyZeta, AbstractError> {
    let strata = data.level_strata(level)?;
    let triples: Vec<(String, Rational, Rational)> =
        data.divisors.iter().map(|d| (d.id.clone(), d.nu.clone(), d.n.clone())).collect();
    let value = assemble(level, &strata, &triples)?;
    Ok(StringyZeta {
        level,
        value,
        name: data.name.clone(),
        d: None,
        contracted: Vec::new(),
        table: data.table(),
        symbols: data.symbols.clone(),
    })
}

#[derive(Debug, Clone)]
pub struct DualityReport {
    pub holds: bool,
    /// `(uv)^dim · Z(u⁻¹, v⁻¹, T⁻¹) − Z`.
    pub residual: RationalExpr,
    /// Whether the closed-strata form agrees with the open-strata form.
    pub closed_form_agrees: bool,
    pub open_form: RationalExpr,
}

/// Hodge-level zeta as `Σ_I H(E_I) Π_{i∈I} (factorᵢ − 1)` with closed
/// classes obtained by summing open strata.
pub fn closed_strata_form(data: &StratifiedResolution) -> Result<RationalExpr, AbstractError> {
    let strata = data.level_strata(Level::Hodge)?;
    let factors = data
        .divisors
        .iter()
        .map(|d| Ok(&factor_expr(Level::Hodge, &d.nu, &d.n)? - &RationalExpr::one()))
        .collect::<Result<Vec<_>, SymbolicError>>()?;
    let mut closed: BTreeMap<Vec<usize>, LaurentExpr> = BTreeMap::new();
    for (key, class) in &strata {
        let ZetaClass::Expr(h) = class else { unreachable!() };
        for sub in subsets(key) {
            let slot = closed.entry(sub).or_insert_with(LaurentExpr::zero);
            *slot = &*slot + h;
        }
    }
    let mut total = RationalExpr::zero();
    for (key, h) in closed {
        if h.is_zero() {
            continue;
        }
        let term = key.iter().fold(RationalExpr::from(h), |acc, &i| &acc * &factors[i]);
        total = &total + &term;
    }
    Ok(total)
}

fn subsets(key: &[usize]) -> Vec<Vec<usize>> {
    (0u64..1 << key.len())
        .map(|mask| key.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &i)| i).collect())
        .collect()
}

/// Whether `e` is a polynomial in `u, v` whose coefficient of `u^p v^q` is
/// zero or has sign `(−1)^(p+q)`, as for Hodge polynomials of smooth
/// projective varieties.
pub fn has_hodge_signs(e: &LaurentExpr) -> bool {
    e.terms_view().all(|t| {
        let [l, tt, p, q] = &t.exps;
        let natural = |x: &Rational| x.is_integer() && !x.is_negative();
        if !t.syms.is_empty() || !l.is_zero() || !tt.is_zero() || !natural(p) || !natural(q) {
            return false;
        }
        let odd = (p + q).to_integer().is_odd();
        t.coeff.is_positive() != odd
    })
}

/// The functional equation `(uv)^dim Z|_{u→u⁻¹, v→v⁻¹, T→T⁻¹} = Z` on the Hodge level.
pub fn duality_check(data: &StratifiedResolution) -> Result<DualityReport, AbstractError> {
    if !data.complete {
        return Err(AbstractError::NotComplete);
    }
    let z = zeta_abstract(data, Level::Hodge)?;
    let open = z.value.as_expr().expect("hodge value").clone();
    let uv = LaurentExpr::monomial(
        &[Rational::zero(), Rational::zero(), Rational::one(), Rational::one()],
        Rational::one(),
    );
    let dual = &RationalExpr::from(uv.pow(data.dimension)) * &open.substitute(&Substitution::duality())?;
    let residual = (&dual - &open).simplified();
    let closed = closed_strata_form(data)?;
    Ok(DualityReport {
        holds: residual.is_zero(),
        residual,
        closed_form_agrees: ratfn_equal(&closed, &open),
        open_form: open,
    })
}

/// A smooth blow-up center `Z`: contained in the divisors `containing`, of
/// codimension `codim`, with classes `[Z ∩ E_J°]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlowupCenter {
    pub new_id: String,
    pub containing: Vec<String>,
    pub codim: u32,
    pub pieces: Vec<(Vec<String>, Classes)>,
    /// `[Z]`, checked against the sum of the pieces when given.
    pub total: Option<Classes>,
}

/// Open strata classes of `m` general hyperplanes in `ℙ^(r−1)`, indexed by the
/// subset (bitmask) of hyperplanes containing the points.
pub fn hyperplane_strata(r: u32, m: u32) -> Vec<Classes> {
    (0u64..1 << m)
        .map(|mask| {
            let j = mask.count_ones() as i64;
            (0u64..1 << m).filter(|k| k & mask == mask).fold(Classes::zero(), |acc, k| {
                let extra = (k.count_ones() as i64) - j;
                let p = Classes::projective(r as i64 - 1 - k.count_ones() as i64);
                if extra % 2 == 0 {
                    acc.add(&p)
                } else {
                    acc.sub(&p)
                }
            })
        })
        .collect()
}

/// The data after blowing up `center`: a new divisor with
/// `ν = Σ(νᵢ−1) + r`, `N = ΣNᵢ`, and every piece `Z ∩ E_J°` replaced by a
/// `ℙ^(r−1)`-bundle stratified by the hyperplanes of the containing divisors.
pub fn blowup_transform(data: &StratifiedResolution, center: &BlowupCenter) -> Result<StratifiedResolution, AbstractError> {
    let bad = AbstractError::InconsistentCenter;
    let containing = data.key(&center.containing).map_err(|e| bad(e.to_string()))?;
    let (m, r) = (containing.len() as u32, center.codim);
    if r < 2 || r > data.dimension {
        return Err(bad(format!("codimension {r} is outside [2, {}]", data.dimension)));
    }
    if m > r {
        return Err(bad(format!("{m} containing divisors exceed the codimension {r}")));
    }
    if data.divisor_index(&center.new_id).is_some() {
        return Err(bad(format!("divisor `{}` already exists", center.new_id)));
    }
    let mut pieces: BTreeMap<Vec<usize>, Classes> = BTreeMap::new();
    let mut sum = Classes::zero();
    for (ids, classes) in &center.pieces {
        let key = data.key(ids).map_err(|e| bad(e.to_string()))?;
        let label = ids.join(",");
        if !containing.iter().all(|i| key.contains(i)) {
            return Err(bad(format!("piece {{{label}}} lies outside a containing divisor")));
        }
        let Some(host) = data.strata.get(&key) else {
            return Err(bad(format!("piece {{{label}}} lies in an empty stratum")));
        };
        if host.is_zero() && !classes.is_zero() {
            return Err(bad(format!("piece {{{label}}} lies in an empty stratum")));
        }
        let mut classes = classes.clone();
        classes.complete_levels(&data.symbols).map_err(|e| bad(format!("piece {{{label}}}: {e}")))?;
        sum = sum.add(&classes);
        if pieces.insert(key, classes).is_some() {
            return Err(bad(format!("piece {{{label}}} listed twice")));
        }
    }
    if let Some(total) = &center.total {
        let mut total = total.clone();
        total.complete_levels(&data.symbols).map_err(|e| bad(format!("total class: {e}")))?;
        let same = |a: Option<bool>| a.unwrap_or(true);
        let check = same(total.euler.as_ref().zip(sum.euler.as_ref()).map(|(a, b)| a == b))
            && same(total.hodge.as_ref().zip(sum.hodge.as_ref()).map(|(a, b)| a == b))
            && same(total.symbolic.as_ref().zip(sum.symbolic.as_ref()).map(|(a, b)| a == b));
        if !check {
            return Err(bad("the pieces do not add up to the class of the center".into()));
        }
    }

    let new = data.divisors.len();
    let mut divisors = data.divisors.clone();
    let nu = containing.iter().fold(Rational::from_integer(r.into()), |acc, &i| acc + &divisors[i].nu - Rational::one());
    let n = containing.iter().fold(Rational::zero(), |acc, &i| acc + &divisors[i].n);
    divisors.push(AbstractDivisor { id: center.new_id.clone(), nu, n });

    let fiber = hyperplane_strata(r, m);
    let mut strata = data.strata.clone();
    for (key, piece) in &pieces {
        let host = strata.get_mut(key).expect("checked above");
        *host = host.sub(piece);
        let outside: Vec<usize> = key.iter().copied().filter(|i| !containing.contains(i)).collect();
        for (mask, f) in fiber.iter().enumerate() {
            let mut k = outside.clone();
            k.extend(containing.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &i)| i));
            k.push(new);
            k.sort_unstable();
            let add = piece.mul(f);
            let slot = strata.entry(k).or_insert_with(Classes::zero);
            *slot = slot.add(&add);
        }
    }
    strata.retain(|k, c| k.is_empty() || !c.is_zero());
    Ok(StratifiedResolution {
        name: data.name.clone(),
        dimension: data.dimension,
        complete: data.complete,
        divisors,
        symbols: data.symbols.clone(),
        strata,
    })
}

#[derive(Debug, Clone)]
pub struct OracleReport {
    pub bruteforce: RationalExpr,
    pub closedform: RationalExpr,
    pub equal: bool,
}

/// `A^(r−1)_m` by brute force over the hyperplane strata of `ℙ^(r−1)` and
/// by the closed formula `(L−1)^(m−1)(L^(Σ(kᵢ−1)+r+sΣdᵢ)−1)/Π(L^(kᵢ+sdᵢ)−1)`.
pub fn hyperplane_oracle(r: u32, k: &[Rational], dwt: &[Rational]) -> Result<OracleReport, AbstractError> {
    let m = k.len() as u32;
    if r < 2 || m > r || dwt.len() != k.len() {
        return Err(AbstractError::InvalidData(format!("need r ≥ 2 and m = {m} ≤ r with matching weights")));
    }
    let factors =
        k.iter().zip(dwt).map(|(a, b)| factor_expr(Level::Motivic, a, b)).collect::<Result<Vec<_>, _>>()?;
    let strata = hyperplane_strata(r, m);
    let mut brute = RationalExpr::zero();
    for (mask, c) in strata.iter().enumerate() {
        let class = c.symbolic.clone().expect("all levels");
        let term = (0..m as usize)
            .filter(|b| mask >> b & 1 == 1)
            .fold(RationalExpr::from(class), |acc, b| &acc * &factors[b]);
        brute = &brute + &term;
    }
    let big_k = k.iter().fold(Rational::from_integer(r.into()), |acc, x| acc + x - Rational::one());
    let big_d = dwt.iter().fold(Rational::zero(), |acc, x| acc + x);
    let l = LaurentExpr::var(Var::L);
    let l1 = &l - &LaurentExpr::one();
    let top = &LaurentExpr::monomial(&[big_k, -big_d, Rational::zero(), Rational::zero()], Rational::one())
        - &LaurentExpr::one();
    let mut closed = RationalExpr::from(top).checked_div(&RationalExpr::from(l1.clone()))?;
    closed = &closed * &RationalExpr::from(l1.clone()).pow(m);
    for f in &factors {
        closed = &closed * &f.checked_div(&RationalExpr::from(l1.clone()))?;
    }
    let equal = ratfn_equal(&brute, &closed);
    Ok(OracleReport { bruteforce: brute.simplified(), closedform: closed.simplified(), equal })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct DivisorJson {
    id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    nu: Option<String>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    n: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SymbolJson {
    id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    genus: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    hodge: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    euler: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct StratumJson {
    divisors: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    euler: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    hodge: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    symbolic: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct StratifiedJson {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    name: String,
    dimension: u32,
    complete: bool,
    divisors: Vec<DivisorJson>,
    #[serde(default)]
    symbols: Vec<SymbolJson>,
    strata: Vec<StratumJson>,
}

fn parse_rat_field(s: &str, what: &str) -> Result<Rational, AbstractError> {
    parse_rational(s).map_err(|_| AbstractError::InvalidData(format!("{what}: `{s}` is not a rational")))
}

fn parse_class(s: &str, what: &str) -> Result<LaurentExpr, AbstractError> {
    parse_laurent(s).map_err(|e| AbstractError::InvalidData(format!("{what}: {e}")))
}

impl Classes {
    fn from_json(euler: &Option<String>, hodge: &Option<String>, symbolic: &Option<String>, what: &str) -> Result<Self, AbstractError> {
        let hodge = hodge.as_deref().map(|h| parse_class(h, what)).transpose()?;
        if let Some(h) = &hodge {
            if h.has_symbols() || h.contains_var(Var::L) || h.contains_var(Var::T) {
                return Err(AbstractError::InvalidData(format!("{what}: hodge classes are polynomials in u, v")));
            }
        }
        let symbolic = symbolic.as_deref().map(|h| parse_class(h, what)).transpose()?;
        if let Some(e) = &symbolic {
            if [Var::T, Var::U, Var::V].iter().any(|&v| e.contains_var(v)) {
                return Err(AbstractError::InvalidData(format!("{what}: symbolic classes use only L and symbols")));
            }
        }
        Ok(Classes { euler: euler.as_deref().map(|e| parse_rat_field(e, what)).transpose()?, hodge, symbolic })
    }
}

impl StratifiedResolution {
    pub fn from_json(text: &str) -> Result<Self, AbstractError> {
        let j: StratifiedJson =
            serde_json::from_str(text).map_err(|e| AbstractError::InvalidData(format!("json: {e}")))?;
        let mut divisors = Vec::new();
        for d in &j.divisors {
            let field = |x: &Option<String>, name: &str| {
                x.as_deref().map(|s| parse_rat_field(s, &format!("divisor `{}` {name}", d.id))).transpose()
            };
            let (nu, n, a) = (field(&d.nu, "nu")?, field(&d.n, "N")?, field(&d.a, "a")?);
            let (nu, n) = match (nu, n, a) {
                (Some(nu), Some(n), None) => (nu, n),
                (Some(nu), None, Some(a)) => {
                    let n = &a - &nu;
                    (nu, n)
                }
                (Some(nu), Some(n), Some(a)) if &nu + &n == a => (nu, n),
                _ => {
                    return Err(AbstractError::InvalidData(format!(
                        "divisor `{}` needs nu with N or a, consistently",
                        d.id
                    )))
                }
            };
            divisors.push(AbstractDivisor { id: d.id.clone(), nu, n });
        }
        let mut symbols = SymbolTable::new();
        for s in &j.symbols {
            let info = match (s.genus, &s.hodge, &s.euler) {
                (Some(g), None, None) => SymbolInfo::curve(g),
                (None, Some(h), Some(e)) => SymbolInfo {
                    hodge: parse_class(h, &format!("symbol `{}`", s.id))?,
                    euler: parse_rat_field(e, &format!("symbol `{}`", s.id))?,
                },
                _ => {
                    return Err(AbstractError::InvalidData(format!(
                        "symbol `{}` needs either genus or hodge and euler",
                        s.id
                    )))
                }
            };
            if symbols.insert(s.id.clone(), info).is_some() {
                return Err(AbstractError::InvalidData(format!("duplicate symbol `{}`", s.id)));
            }
        }
        let strata = j
            .strata
            .iter()
            .map(|s| {
                let what = format!("stratum {{{}}}", s.divisors.join(","));
                Ok((s.divisors.clone(), Classes::from_json(&s.euler, &s.hodge, &s.symbolic, &what)?))
            })
            .collect::<Result<Vec<_>, AbstractError>>()?;
        StratifiedResolution::new(j.name, j.dimension, j.complete, divisors, symbols, strata)
    }

    pub fn to_json(&self) -> String {
        let genus_of = |info: &SymbolInfo| (0..=64u32).find(|&g| SymbolInfo::curve(g) == *info);
        let j = StratifiedJson {
            name: self.name.clone(),
            dimension: self.dimension,
            complete: self.complete,
            divisors: self
                .divisors
                .iter()
                .map(|d| DivisorJson {
                    id: d.id.clone(),
                    nu: Some(format_rational(&d.nu)),
                    n: Some(format_rational(&d.n)),
                    a: None,
                })
                .collect(),
            symbols: self
                .symbols
                .iter()
                .map(|(id, info)| match genus_of(info) {
                    Some(g) => SymbolJson { id: id.clone(), genus: Some(g), hodge: None, euler: None },
                    None => SymbolJson {
                        id: id.clone(),
                        genus: None,
                        hodge: Some(laurent_text(&info.hodge)),
                        euler: Some(format_rational(&info.euler)),
                    },
                })
                .collect(),
            strata: self
                .strata
                .iter()
                .map(|(k, c)| StratumJson {
                    divisors: k.iter().map(|&i| self.divisors[i].id.clone()).collect(),
                    euler: c.euler.as_ref().map(format_rational),
                    hodge: c.hodge.as_ref().map(laurent_text),
                    symbolic: c.symbolic.as_ref().map(laurent_text),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&j).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stringy::ZetaValue;
    use crate::symbolic::{int, limit_at_s1, parse_expr, rat, Limit, Poly, UniRationalFn};

    fn threefold_cone() -> StratifiedResolution {
        let divisors = vec![
            AbstractDivisor { id: "E1".into(), nu: rat(1, 5), n: rat(-1, 5) },
            AbstractDivisor { id: "E2".into(), nu: int(0), n: int(-1) },
        ];
        let mut symbols = SymbolTable::new();
        symbols.insert("C".into(), SymbolInfo::curve(3));
        let sym = |s: &str| Classes { symbolic: Some(parse_laurent(s).unwrap()), ..Classes::default() };
        StratifiedResolution::new(
            "example-3-6",
            3,
            false,
            divisors,
            symbols,
            vec![
                (vec![], sym("0")),
                (vec!["E1".into(), "E2".into()], sym("[C]")),
                (vec!["E1".into()], sym("L*[C]")),
                (vec!["E2".into()], sym("L^2+L+1-[C]")),
            ],
        )
        .unwrap()
    }

    #[test]
    fn threefold_cone_euler_and_limits() {
        let data = threefold_cone();
        let z = zeta_abstract(&data, Level::Euler).unwrap();
        let expected = UniRationalFn::new(Poly::constant(int(13)), Poly::s());
        assert_eq!(z.value, ZetaValue::Euler(expected));
        let m = zeta_abstract(&data, Level::Motivic).unwrap();
        let m = m.value.as_expr().unwrap();
        let display = parse_expr("(L^3-1+(L-1)*[C]*(L^(1/5)*T^(1/5)+L^(2/5)*T^(2/5)+L^(3/5)*T^(3/5)+L^(4/5)*T^(4/5)))/(T-1)")
            .unwrap();
        assert!(ratfn_equal(m, &display));
        let at1 = limit_at_s1(m).value().unwrap();
        assert!(ratfn_equal(&at1, &parse_expr("-(L^3+L^2+L+4*L*[C])").unwrap()));
    }

    #[test]
    fn hodge_signs_of_threefold_cone() {
        let data = threefold_cone();
        let h = zeta_abstract(&data, Level::Hodge).unwrap();
        let at1 = limit_at_s1(h.value.as_expr().unwrap()).value().unwrap();
        let negated = (-&at1).simplified();
        assert!(has_hodge_signs(negated.as_laurent().unwrap()));
        assert!(!has_hodge_signs(at1.simplified().as_laurent().unwrap()));
        assert!(has_hodge_signs(&parse_laurent("u*v-3*u-3*v+1").unwrap()));
        assert!(!has_hodge_signs(&parse_laurent("u*v+u").unwrap()));
        assert!(!has_hodge_signs(&parse_laurent("L").unwrap()));
    }

    #[test]
    fn hyperplane_identity_small() {
        for r in 2..=4u32 {
            for m in 0..=r.min(3) {
                let k: Vec<Rational> = (0..m).map(|i| rat(i as i64 + 2, 3)).collect();
                let d: Vec<Rational> = (0..m).map(|i| rat(1 - i as i64, 2)).collect();
                assert!(hyperplane_oracle(r, &k, &d).unwrap().equal, "r={r} m={m}");
            }
        }
    }

    fn p2_cubic(hodge_e: &str) -> StratifiedResolution {
        let hod = |s: &str| Classes { hodge: Some(parse_laurent(s).unwrap()), ..Classes::default() };
        StratifiedResolution::new(
            "p2",
            2,
            true,
            vec![AbstractDivisor { id: "E".into(), nu: rat(3, 2), n: rat(-2, 3) }],
            SymbolTable::new(),
            vec![(vec![], hod("u^2*v^2+u+v")), (vec!["E".into()], hod(hodge_e))],
        )
        .unwrap()
    }

    #[test]
    fn duality_on_plane_cubic() {
        let ok = duality_check(&p2_cubic("u*v-u-v+1")).unwrap();
        assert!(ok.holds && ok.closed_form_agrees);
        let bad = duality_check(&p2_cubic("u*v-2*u+1")).unwrap();
        assert!(!bad.holds && bad.closed_form_agrees);
        assert!(!bad.residual.is_zero());
    }

    #[test]
    fn point_blowup_keeps_zeta() {
        let data = threefold_cone();
        let center = BlowupCenter {
            new_id: "F".into(),
            containing: vec!["E1".into(), "E2".into()],
            codim: 3,
            pieces: vec![(vec!["E1".into(), "E2".into()], Classes { symbolic: Some(LaurentExpr::one()), ..Classes::default() })],
            total: None,
        };
        let after = blowup_transform(&data, &center).unwrap();
        let f = &after.divisors[2];
        assert_eq!((f.nu.clone(), f.n.clone()), (rat(1, 5) - int(1) + (int(0) - int(1)) + int(3), rat(-6, 5)));
        for level in Level::ALL {
            let a = zeta_abstract(&data, level).unwrap().value;
            let b = zeta_abstract(&after, level).unwrap().value;
            match (a, b) {
                (ZetaValue::Expr(x), ZetaValue::Expr(y)) => assert!(ratfn_equal(&x, &y)),
                (x, y) => assert_eq!(x, y),
            }
        }
        assert!(matches!(limit_at_s1(zeta_abstract(&after, Level::Motivic).unwrap().value.as_expr().unwrap()), Limit::Value(_)));
    }

    #[test]
    fn json_round_trip() {
        let data = threefold_cone();
        assert_eq!(StratifiedResolution::from_json(&data.to_json()).unwrap(), data);
    }
}
