//! Relative log MMP on surface germs as contraction of vertex subsets of a
//! fixed resolution graph. Every intersection number on a partial model is
//! computed on the resolution through Mumford pull-back.

use crate::linalg;
use crate::surface::{Classification, DiscrepancyVector, ResolutionGraph};
use crate::symbolic::{format_rational, Rational};
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MmpError {
    #[error("AlreadyContracted: `{0}`")]
    AlreadyContracted(String),
    #[error("UnknownVertex: `{0}`")]
    UnknownVertex(String),
    #[error("InvalidD: d = {0} is outside [0, 1]")]
    InvalidD(String),
    #[error("StrictlyLcAtDOne: d = 1 requested on a strictly lc germ")]
    StrictlyLcAtDOne,
    #[error("AssertionFailed: {0}")]
    AssertionFailed(String),
}

/// The resolution `Y` together with a set `S` of contracted curves and the
/// weight `d` of the reduced exceptional divisor `F` of the model.
#[derive(Debug, Clone)]
pub struct PartialModel {
    base: ResolutionGraph,
    d: Rational,
    contracted: Vec<bool>,
    a: DiscrepancyVector,
    m: Vec<Vec<Rational>>,
    /// `(K_Y + Δ_Y)·E_j` where `Δ_Y = d·Σ_{k∉S} E_k + Σ b·B`.
    w: Vec<Rational>,
    /// Coefficients of contracted curves in `h*(K + B^m + dF) − K_Y − Δ_Y`.
    e: Vec<Rational>,
}

/// `(ν, N, a)` of one divisor on the resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NuNRow {
    pub id: String,
    pub is_branch: bool,
    pub nu: Rational,
    pub n: Rational,
    pub a: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NuNTable {
    /// Vertex rows in graph order, then branch rows.
    pub rows: Vec<NuNRow>,
}

impl NuNTable {
    pub fn vertex_rows(&self) -> impl Iterator<Item = &NuNRow> {
        self.rows.iter().filter(|r| !r.is_branch)
    }

    pub fn branch_rows(&self) -> impl Iterator<Item = &NuNRow> {
        self.rows.iter().filter(|r| r.is_branch)
    }

    pub fn get(&self, id: &str) -> Option<&NuNRow> {
        self.rows.iter().find(|r| r.id == id)
    }
}

fn check_d(d: &Rational) -> Result<(), MmpError> {
    if d.is_negative() || *d > Rational::one() {
        Err(MmpError::InvalidD(format_rational(d)))
    } else {
        Ok(())
    }
}

/// Solves `M_SS·x = rhs` on the index set `s`.
fn solve_on(m: &[Vec<Rational>], s: &[usize], rhs: &[Rational]) -> Vec<Rational> {
    let sub: Vec<Vec<Rational>> = s.iter().map(|&i| s.iter().map(|&j| m[i][j].clone()).collect()).collect();
    linalg::solve(&sub, rhs).expect("principal submatrix of a negative definite matrix is invertible")
}

impl PartialModel {
    /// The resolution itself, nothing contracted.
    pub fn new(base: &ResolutionGraph, d: &Rational) -> Result<Self, MmpError> {
        check_d(d)?;
        let m = base.intersection_matrix().rational();
        let a = base.log_discrepancies();
        let mut model = PartialModel {
            base: base.clone(),
            d: d.clone(),
            contracted: vec![false; base.len()],
            a,
            m,
            w: Vec::new(),
            e: Vec::new(),
        };
        model.derive();
        Ok(model)
    }

    fn derive(&mut self) {
        let n = self.base.len();
        let mut w: Vec<Rational> = (0..n).map(|j| self.base.canonical_degree(j)).collect();
        for (j, wj) in w.iter_mut().enumerate() {
            for k in (0..n).filter(|&k| !self.contracted[k]) {
                *wj += &self.d * &self.m[j][k];
            }
        }
        for b in self.base.branches() {
            w[b.attach] += &b.coefficient;
        }
        let s = self.contracted();
        let rhs: Vec<Rational> = s.iter().map(|&i| -&w[i]).collect();
        let sol = solve_on(&self.m, &s, &rhs);
        let mut e = vec![Rational::zero(); n];
        for (&i, x) in s.iter().zip(sol) {
            e[i] = x;
        }
        self.w = w;
        self.e = e;
    }

    pub fn base(&self) -> &ResolutionGraph {
        &self.base
    }

    pub fn d(&self) -> &Rational {
        &self.d
    }

    pub fn discrepancies(&self) -> &DiscrepancyVector {
        &self.a
    }

    pub fn is_contracted(&self, i: usize) -> bool {
        self.contracted[i]
    }

    pub fn contracted(&self) -> Vec<usize> {
        (0..self.base.len()).filter(|&i| self.contracted[i]).collect()
    }

    pub fn remaining(&self) -> Vec<usize> {
        (0..self.base.len()).filter(|&i| !self.contracted[i]).collect()
    }

    pub fn contracted_ids(&self) -> Vec<String> {
        self.contracted().into_iter().map(|i| self.base.vertices()[i].id.clone()).collect()
    }

    pub fn contract(&self, j: usize) -> Result<Self, MmpError> {
        let id = self.base.vertices().get(j).map(|v| v.id.clone()).ok_or_else(|| MmpError::UnknownVertex(j.to_string()))?;
        if self.contracted[j] {
            return Err(MmpError::AlreadyContracted(id));
        }
        let mut next = self.clone();
        next.contracted[j] = true;
        next.derive();
        Ok(next)
    }

    pub fn contract_id(&self, id: &str) -> Result<Self, MmpError> {
        let j = self.base.vertex_index(id).ok_or_else(|| MmpError::UnknownVertex(id.into()))?;
        self.contract(j)
    }

    /// `(K + B^m + dF)·F_j` on the model for a remaining curve `F_j`.
    pub fn test_value(&self, j: usize) -> Rational {
        assert!(!self.contracted[j], "test value of a contracted curve");
        let mut t = self.w[j].clone();
        for i in self.contracted() {
            t += &self.m[j][i] * &self.e[i];
        }
        t
    }

    pub fn test_values(&self) -> Vec<(usize, Rational)> {
        self.remaining().into_iter().map(|j| (j, self.test_value(j))).collect()
    }

    /// Mumford pull-back of the image of a remaining curve, as coefficients on all curves.
    pub fn pullback(&self, k: usize) -> Vec<Rational> {
        assert!(!self.contracted[k], "pull-back of a contracted curve");
        let s = self.contracted();
        let rhs: Vec<Rational> = s.iter().map(|&i| -&self.m[i][k]).collect();
        let sol = solve_on(&self.m, &s, &rhs);
        let mut out = vec![Rational::zero(); self.base.len()];
        out[k] = Rational::one();
        for (&i, x) in s.iter().zip(sol) {
            out[i] = x;
        }
        out
    }

    /// `F_j·F_k` on the model.
    pub fn model_intersection(&self, j: usize, k: usize) -> Rational {
        let pb = self.pullback(k);
        pb.iter().zip(&self.m[j]).fold(Rational::zero(), |acc, (c, x)| acc + c * x)
    }

    /// `ν` from `K_Y = h*(K + B^m + dF) + Σ(ν−1)E` and `N` from an independent
    /// pull-back of the discrepancy divisor; checks `ν + N = a`.
    pub fn nu_n(&self) -> Result<NuNTable, MmpError> {
        let n = self.base.len();
        let one = Rational::one();
        let s = self.contracted();
        let coeff: Vec<Rational> = (0..n).map(|k| &self.a.vertices[k] - &one + &self.d).collect();
        let rhs: Vec<Rational> = s
            .iter()
            .map(|&i| {
                -(0..n)
                    .filter(|&k| !self.contracted[k])
                    .fold(Rational::zero(), |acc, k| acc + &coeff[k] * &self.m[i][k])
            })
            .collect();
        let y = solve_on(&self.m, &s, &rhs);
        let mut rows = Vec::with_capacity(n + self.base.branches().len());
        for (i, v) in self.base.vertices().iter().enumerate() {
            let (nu, nn) = if self.contracted[i] {
                let pos = s.iter().position(|&x| x == i).expect("contracted index");
                (&one - &self.e[i], y[pos].clone())
            } else {
                (&one - &self.d, coeff[i].clone())
            };
            rows.push(NuNRow { id: v.id.clone(), is_branch: false, nu, n: nn, a: self.a.vertices[i].clone() });
        }
        for (b, a) in self.base.branches().iter().zip(&self.a.branches) {
            rows.push(NuNRow { id: b.id.clone(), is_branch: true, nu: &one - &b.coefficient, n: Rational::zero(), a: a.clone() });
        }
        if let Some(r) = rows.iter().find(|r| &r.nu + &r.n != r.a) {
            return Err(MmpError::AssertionFailed(format!("ν + N ≠ a on `{}`", r.id)));
        }
        Ok(NuNTable { rows })
    }
}

fn check_start(g: &ResolutionGraph, d: &Rational) -> Result<(), MmpError> {
    check_d(d)?;
    if d.is_one() && g.classify() == Classification::StrictlyLc {
        return Err(MmpError::StrictlyLcAtDOne);
    }
    Ok(())
}

/// Contracts negative curves until the log divisor is nef, choosing at each
/// step the first negative curve in `order`.
pub fn run_mmp_with_order(g: &ResolutionGraph, d: &Rational, order: &[usize]) -> Result<PartialModel, MmpError> {
    check_start(g, d)?;
    let mut model = PartialModel::new(g, d)?;
    loop {
        let negative: Vec<usize> = model.test_values().into_iter().filter(|(_, t)| t.is_negative()).map(|(j, _)| j).collect();
        let Some(&j) = order.iter().find(|j| negative.contains(j)) else {
            break;
        };
        model = model.contract(j)?;
    }
    check_minimal(&model)?;
    Ok(model)
}

fn check_minimal(model: &PartialModel) -> Result<(), MmpError> {
    if let Some((j, _)) = model.test_values().into_iter().find(|(_, t)| t.is_negative()) {
        return Err(MmpError::AssertionFailed(format!("`{}` is still negative", model.base.vertices()[j].id)));
    }
    let table = model.nu_n()?;
    let d = &model.d;
    let floor = Rational::one() - d;
    for i in model.contracted() {
        let row = &table.rows[i];
        if d < &Rational::one() && row.nu <= floor {
            return Err(MmpError::AssertionFailed(format!("log discrepancy of `{}` is not > 1 − d", row.id)));
        }
        if d.is_one() && row.n.is_positive() {
            return Err(MmpError::AssertionFailed(format!("discrepancy coefficient of `{}` is positive", row.id)));
        }
    }
    if d.is_one() {
        for k in model.remaining() {
            if !model.a.vertices[k].is_negative() {
                return Err(MmpError::AssertionFailed(format!(
                    "remaining curve `{}` has nonnegative discrepancy coefficient",
                    model.base.vertices()[k].id
                )));
            }
        }
    }
    Ok(())
}

/// The `d`-minimal model, contracting the lowest-indexed negative curve first.
pub fn run_mmp(g: &ResolutionGraph, d: &Rational) -> Result<PartialModel, MmpError> {
    let order: Vec<usize> = (0..g.len()).collect();
    run_mmp_with_order(g, d, &order)
}

/// The `d`-canonical model: the `d`-minimal model with every remaining
/// curve of intersection zero contracted as well.
pub fn canonical_model(g: &ResolutionGraph, d: &Rational) -> Result<PartialModel, MmpError> {
    let mut model = run_mmp(g, d)?;
    while let Some((j, _)) = model.test_values().into_iter().find(|(_, t)| t.is_zero()) {
        model = model.contract(j)?;
    }
    if let Some((j, _)) = model.test_values().into_iter().find(|(_, t)| !t.is_positive()) {
        return Err(MmpError::AssertionFailed(format!("`{}` is not positive on the canonical model", g.vertices()[j].id)));
    }
    let table = model.nu_n()?;
    let floor = Rational::one() - &model.d;
    for i in model.contracted() {
        if table.rows[i].nu < floor {
            return Err(MmpError::AssertionFailed(format!("log discrepancy of `{}` is < 1 − d", table.rows[i].id)));
        }
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::Vertex;
    use crate::symbolic::{int, rat};

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
    fn pullback_through_one_contraction() {
        let m = PartialModel::new(&elliptic_branch_germ(2), &int(1)).unwrap().contract(1).unwrap();
        assert_eq!(m.pullback(2), vec![int(0), rat(1, 2), int(1)]);
        assert!(matches!(m.contract(1), Err(MmpError::AlreadyContracted(_))));
    }

    #[test]
    fn elliptic_branch_models() {
        for kappa in [1i64, 2, 3, 5] {
            let g = elliptic_branch_germ(kappa);
            let k = int(kappa);
            let m1 = run_mmp(&g, &int(1)).unwrap();
            assert_eq!(m1.contracted_ids(), vec!["E1"]);
            let t = m1.nu_n().unwrap();
            assert_eq!(t.get("E1").unwrap().nu, rat(1, 2));
            assert_eq!(t.get("E1").unwrap().n, -int(1) / &k);
            assert_eq!(t.get("E0").unwrap().nu, int(0));
            assert_eq!(t.get("E2").unwrap().n, int(-2) / &k);
            for d in [int(0), rat(1, 3), rat(9, 10)] {
                let md = run_mmp(&g, &d).unwrap();
                assert_eq!(md.contracted_ids(), vec!["E1", "E2"]);
                let t = md.nu_n().unwrap();
                assert_eq!(t.get("E1").unwrap().nu, rat(3, 2) - &d);
                assert_eq!(t.get("E2").unwrap().nu, int(2) * (int(1) - &d));
                assert_eq!(t.get("E0").unwrap().n, &d - int(1) - int(1) / &k);
                assert_eq!(t.get("E2").unwrap().n, int(2) * (&d - int(1) - int(1) / &k));
            }
        }
    }

    #[test]
    fn strictly_lc_at_one_rejected() {
        let g = ResolutionGraph::new("ell", vec![v("E", 1, -2)], vec![], vec![]).unwrap();
        assert_eq!(run_mmp(&g, &int(1)).unwrap_err(), MmpError::StrictlyLcAtDOne);
        assert!(run_mmp(&g, &rat(1, 2)).unwrap().contracted().is_empty());
        assert!(matches!(run_mmp(&g, &rat(3, 2)), Err(MmpError::InvalidD(_))));
    }
}
