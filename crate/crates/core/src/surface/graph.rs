//! Dual graphs of log resolutions of surface germs, their intersection
//! matrices and log discrepancies.

use super::SurfaceError;
use crate::linalg;
use crate::symbolic::{int, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use std::collections::{BTreeSet, HashMap};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub genus: u32,
    pub self_intersection: i64,
}

/// A non-exceptional curve of the boundary meeting one exceptional curve
/// transversally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    pub id: String,
    pub coefficient: Rational,
    /// Index of the vertex it meets.
    pub attach: usize,
}

/// Valid dual graph: connected, loop-free, negative definite. Edges are
/// stored as sorted `(min, max)` index pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionGraph {
    name: String,
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    branches: Vec<Branch>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Klt,
    StrictlyLc,
    NotLc,
}

impl Classification {
    pub fn name(self) -> &'static str {
        match self {
            Classification::Klt => "klt",
            Classification::StrictlyLc => "strictly-lc",
            Classification::NotLc => "not-lc",
        }
    }
}

/// Log discrepancies of exceptional curves and branches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscrepancyVector {
    pub vertices: Vec<Rational>,
    pub branches: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionMatrix {
    pub entries: Vec<Vec<i64>>,
    pub leading_minors: Vec<BigInt>,
    pub negative_definite: bool,
}

impl IntersectionMatrix {
    pub fn of(vertices: &[Vertex], edges: &[(usize, usize)]) -> Self {
        let n = vertices.len();
        let mut entries = vec![vec![0i64; n]; n];
        for (i, v) in vertices.iter().enumerate() {
            entries[i][i] = v.self_intersection;
        }
        for &(i, j) in edges {
            entries[i][j] += 1;
            entries[j][i] += 1;
        }
        let leading_minors = linalg::leading_minors(&entries);
        let negative_definite = leading_minors.iter().enumerate().all(|(k, det)| {
            if k % 2 == 0 {
                det.is_negative()
            } else {
                det.is_positive()
            }
        });
        IntersectionMatrix { entries, leading_minors, negative_definite }
    }

    pub fn rational(&self) -> Vec<Vec<Rational>> {
        self.entries.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }
}

impl ResolutionGraph {
    /// Validates and builds a graph. Edges and branch attachments are given by vertex id.
    pub fn new(
        name: impl Into<String>,
        vertices: Vec<Vertex>,
        edges: Vec<(String, String)>,
        branches: Vec<(String, Rational, String)>,
    ) -> Result<Self, SurfaceError> {
        let mut index: HashMap<&str, usize> = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.id.as_str(), i).is_some() {
                return Err(SurfaceError::InvalidGraph(format!("duplicate id `{}`", v.id)));
            }
        }
        let lookup = |id: &str| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| SurfaceError::InvalidGraph(format!("unknown vertex `{id}`")))
        };
        let mut edge_idx = Vec::with_capacity(edges.len());
        for (a, b) in &edges {
            let (i, j) = (lookup(a)?, lookup(b)?);
            if i == j {
                return Err(SurfaceError::InvalidGraph(format!("loop at `{a}`")));
            }
            edge_idx.push((i, j));
        }
        let mut seen: BTreeSet<&str> = index.keys().copied().collect();
        let mut branch_list = Vec::with_capacity(branches.len());
        for (id, b, at) in &branches {
            if !seen.insert(id.as_str()) {
                return Err(SurfaceError::InvalidGraph(format!("duplicate id `{id}`")));
            }
            if b.is_negative() || *b >= Rational::one() {
                return Err(SurfaceError::InvalidGraph(format!("branch `{id}` coefficient outside [0, 1)")));
            }
            branch_list.push(Branch { id: id.clone(), coefficient: b.clone(), attach: lookup(at)? });
        }
        Self::from_parts(name.into(), vertices, edge_idx, branch_list)
    }

    pub(crate) fn from_parts(
        name: String,
        vertices: Vec<Vertex>,
        edges: Vec<(usize, usize)>,
        branches: Vec<Branch>,
    ) -> Result<Self, SurfaceError> {
        let mut edges: Vec<(usize, usize)> = edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        edges.sort_unstable();
        let g = ResolutionGraph { name, vertices, edges, branches };
        if !g.is_connected() {
            return Err(SurfaceError::InvalidGraph("graph is not connected".into()));
        }
        if !g.intersection_matrix().negative_definite {
            return Err(SurfaceError::NotAGerm);
        }
        Ok(g)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn branch_index(&self, id: &str) -> Option<usize> {
        self.branches.iter().position(|b| b.id == id)
    }

    /// Neighbors with repetition for multi-edges.
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| if a == i { Some(b) } else if b == i { Some(a) } else { None })
            .collect()
    }

    pub fn branches_at(&self, i: usize) -> Vec<usize> {
        (0..self.branches.len()).filter(|&k| self.branches[k].attach == i).collect()
    }

    /// Number of intersection points on `E_i` with other curves, branches included.
    pub fn incidence(&self, i: usize) -> usize {
        self.neighbors(i).len() + self.branches_at(i).len()
    }

    fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return self.branches.is_empty();
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in self.neighbors(i) {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn intersection_matrix(&self) -> IntersectionMatrix {
        IntersectionMatrix::of(&self.vertices, &self.edges)
    }

    /// `K_Y·E_j = 2g_j − 2 − E_j²`.
    pub fn canonical_degree(&self, j: usize) -> Rational {
        let v = &self.vertices[j];
        int(2 * v.genus as i64 - 2 - v.self_intersection)
    }

    /// Right-hand side of the discrepancy system: `K_Y·E_j + B̃·E_j`.
    pub fn discrepancy_rhs(&self) -> Vec<Rational> {
        let mut r: Vec<Rational> = (0..self.len()).map(|j| self.canonical_degree(j)).collect();
        for b in &self.branches {
            r[b.attach] += &b.coefficient;
        }
        r
    }

    pub fn log_discrepancies(&self) -> DiscrepancyVector {
        let m = self.intersection_matrix().rational();
        let x = linalg::solve(&m, &self.discrepancy_rhs()).expect("negative definite matrix is invertible");
        DiscrepancyVector {
            vertices: x.into_iter().map(|xi| xi + Rational::one()).collect(),
            branches: self.branches.iter().map(|b| Rational::one() - &b.coefficient).collect(),
        }
    }

    /// `M·(a − 1) − r`, which is zero for the true discrepancies.
    pub fn discrepancy_residual(&self, a: &DiscrepancyVector) -> Vec<Rational> {
        let m = self.intersection_matrix().rational();
        let x: Vec<Rational> = a.vertices.iter().map(|ai| ai - Rational::one()).collect();
        linalg::mat_vec(&m, &x).into_iter().zip(self.discrepancy_rhs()).map(|(p, q)| p - q).collect()
    }

    pub fn classify(&self) -> Classification {
        classify_discrepancies(&self.log_discrepancies().vertices)
    }
}

pub fn classify_discrepancies(a: &[Rational]) -> Classification {
    if a.iter().all(|x| x.is_positive()) {
        Classification::Klt
    } else if a.iter().all(|x| !x.is_negative()) {
        Classification::StrictlyLc
    } else {
        Classification::NotLc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::rat;
    use num_traits::Zero;

    fn v(id: &str, genus: u32, e2: i64) -> Vertex {
        Vertex { id: id.into(), genus, self_intersection: e2 }
    }

    fn e(a: &str, b: &str) -> (String, String) {
        (a.into(), b.into())
    }

    fn elliptic_branch(kappa: i64) -> ResolutionGraph {
        ResolutionGraph::new(
            "elliptic-branch",
            vec![v("E0", 1, -kappa - 2), v("E1", 0, -2), v("E2", 0, -1)],
            vec![e("E2", "E0"), e("E2", "E1")],
            vec![("B".into(), rat(1, 2), "E2".into())],
        )
        .unwrap()
    }

    #[test]
    fn elliptic_vertex_is_strictly_lc() {
        for kappa in 1..5 {
            let g = ResolutionGraph::new("ell", vec![v("E", 1, -kappa)], vec![], vec![]).unwrap();
            assert_eq!(g.log_discrepancies().vertices, vec![int(0)]);
            assert_eq!(g.classify(), Classification::StrictlyLc);
        }
    }

    #[test]
    fn a1_is_klt() {
        let g = ResolutionGraph::new("a1", vec![v("E", 0, -2)], vec![], vec![]).unwrap();
        assert_eq!(g.log_discrepancies().vertices, vec![int(1)]);
        assert_eq!(g.classify(), Classification::Klt);
    }

    #[test]
    fn not_a_germ() {
        let err = ResolutionGraph::new("bad", vec![v("E", 0, 0)], vec![], vec![]).unwrap_err();
        assert_eq!(err, SurfaceError::NotAGerm);
    }

    #[test]
    fn chain_minors_alternate() {
        let g = ResolutionGraph::new(
            "chain",
            vec![v("A", 0, -2), v("B", 0, -2), v("C", 0, -3)],
            vec![e("A", "B"), e("B", "C")],
            vec![],
        )
        .unwrap();
        let m = g.intersection_matrix();
        assert!(m.negative_definite);
        assert_eq!(m.leading_minors, vec![BigInt::from(-2), BigInt::from(3), BigInt::from(-7)]);
    }

    #[test]
    fn elliptic_branch_discrepancies() {
        for kappa in [1i64, 2, 3, 5] {
            let g = elliptic_branch(kappa);
            let a = g.log_discrepancies();
            let k = int(kappa);
            assert_eq!(a.vertices[0], -int(1) / &k);
            assert_eq!(a.vertices[1], rat(1, 2) - int(1) / &k);
            assert_eq!(a.vertices[2], -int(2) / &k);
            assert_eq!(a.branches, vec![rat(1, 2)]);
            assert!(g.discrepancy_residual(&a).iter().all(Zero::is_zero));
            assert_eq!(g.classify(), Classification::NotLc);
        }
    }

    #[test]
    fn invalid_inputs() {
        assert!(matches!(
            ResolutionGraph::new("x", vec![v("E", 0, -2)], vec![e("E", "E")], vec![]),
            Err(SurfaceError::InvalidGraph(_))
        ));
        assert!(matches!(
            ResolutionGraph::new("x", vec![v("A", 0, -2), v("B", 0, -2)], vec![], vec![]),
            Err(SurfaceError::InvalidGraph(_))
        ));
        assert!(matches!(
            ResolutionGraph::new("x", vec![v("E", 0, -2)], vec![], vec![("B".into(), int(1), "E".into())]),
            Err(SurfaceError::InvalidGraph(_))
        ));
    }
}
