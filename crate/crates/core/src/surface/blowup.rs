//! Point blow-ups of the resolution and the inverse contraction of
//! `(−1)`-curves.

use super::graph::{Branch, ResolutionGraph, Vertex};
use super::SurfaceError;

/// A point of the exceptional configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlowUpSite {
    /// A general point of one curve.
    Interior(String),
    /// The `index`-th intersection point of two curves.
    Edge(String, String, usize),
    /// The point where a branch meets its curve.
    Branch(String),
}

fn fresh_id(g: &ResolutionGraph) -> String {
    let taken = |s: &str| g.vertices().iter().any(|v| v.id == s) || g.branches().iter().any(|b| b.id == s);
    (g.len()..)
        .map(|k| format!("X{k}"))
        .find(|s| !taken(s))
        .expect("unbounded id supply")
}

impl ResolutionGraph {
    /// Blows up a point; the new `(−1)`-curve is appended last.
    pub fn blow_up(&self, site: &BlowUpSite) -> Result<ResolutionGraph, SurfaceError> {
        let mut vertices = self.vertices().to_vec();
        let mut edges = self.edges().to_vec();
        let mut branches = self.branches().to_vec();
        let new = vertices.len();
        let new_vertex = Vertex { id: fresh_id(self), genus: 0, self_intersection: -1 };
        match site {
            BlowUpSite::Interior(id) => {
                let i = self.vertex_index(id).ok_or(SurfaceError::SiteNotFound)?;
                vertices[i].self_intersection -= 1;
                edges.push((i, new));
            }
            BlowUpSite::Edge(a, b, k) => {
                let i = self.vertex_index(a).ok_or(SurfaceError::SiteNotFound)?;
                let j = self.vertex_index(b).ok_or(SurfaceError::SiteNotFound)?;
                let pos = edges
                    .iter()
                    .enumerate()
                    .filter(|(_, &(x, y))| (x, y) == (i, j) || (x, y) == (j, i))
                    .map(|(p, _)| p)
                    .nth(*k)
                    .ok_or(SurfaceError::SiteNotFound)?;
                edges.remove(pos);
                vertices[i].self_intersection -= 1;
                vertices[j].self_intersection -= 1;
                edges.push((new, i));
                edges.push((new, j));
            }
            BlowUpSite::Branch(id) => {
                let k = self.branch_index(id).ok_or(SurfaceError::SiteNotFound)?;
                let i = branches[k].attach;
                vertices[i].self_intersection -= 1;
                edges.push((i, new));
                branches[k].attach = new;
            }
        }
        vertices.push(new_vertex);
        ResolutionGraph::from_parts(self.name().to_string(), vertices, edges, branches)
    }

    /// Every blow-up site, in a fixed order.
    pub fn sites(&self) -> Vec<BlowUpSite> {
        let mut out: Vec<BlowUpSite> = self.vertices().iter().map(|v| BlowUpSite::Interior(v.id.clone())).collect();
        let mut counts: Vec<((usize, usize), usize)> = Vec::new();
        for &(i, j) in self.edges() {
            let key = (i.min(j), i.max(j));
            let k = match counts.iter_mut().find(|(e, _)| *e == key) {
                Some(slot) => {
                    slot.1 += 1;
                    slot.1 - 1
                }
                None => {
                    counts.push((key, 1));
                    0
                }
            };
            out.push(BlowUpSite::Edge(self.vertices()[i].id.clone(), self.vertices()[j].id.clone(), k));
        }
        out.extend(self.branches().iter().map(|b| BlowUpSite::Branch(b.id.clone())));
        out
    }

    /// Whether `E_i` is a `(−1)`-curve whose contraction leaves an snc configuration.
    pub fn is_contractible(&self, i: usize) -> bool {
        let v = &self.vertices()[i];
        if v.genus != 0 || v.self_intersection != -1 {
            return false;
        }
        let nb = self.neighbors(i);
        let br = self.branches_at(i);
        match (nb.len(), br.len()) {
            (0, 0) | (1, 0) | (1, 1) => true,
            (2, 0) => nb[0] != nb[1],
            _ => false,
        }
    }

    /// Contracts the `(−1)`-curve `E_i`.
    pub fn blow_down(&self, i: usize) -> Result<ResolutionGraph, SurfaceError> {
        if i >= self.len() || !self.is_contractible(i) {
            return Err(SurfaceError::SiteNotFound);
        }
        let nb = self.neighbors(i);
        let mut vertices = self.vertices().to_vec();
        for &j in &nb {
            vertices[j].self_intersection += 1;
        }
        let mut edges: Vec<(usize, usize)> = self.edges().iter().copied().filter(|&(a, b)| a != i && b != i).collect();
        if nb.len() == 2 {
            edges.push((nb[0], nb[1]));
        }
        let mut branches: Vec<Branch> = self.branches().to_vec();
        for b in branches.iter_mut().filter(|b| b.attach == i) {
            b.attach = nb[0];
        }
        vertices.remove(i);
        let shift = |x: usize| if x > i { x - 1 } else { x };
        let edges = edges.into_iter().map(|(a, b)| (shift(a), shift(b))).collect();
        for b in branches.iter_mut() {
            b.attach = shift(b.attach);
        }
        ResolutionGraph::from_parts(self.name().to_string(), vertices, edges, branches)
    }

    /// Contracts contractible `(−1)`-curves, lowest index first, to a fixpoint.
    pub fn minimize(&self) -> ResolutionGraph {
        let mut g = self.clone();
        while let Some(i) = (0..g.len()).find(|&i| g.is_contractible(i)) {
            g = g.blow_down(i).expect("contractible curve");
        }
        g
    }

    pub fn is_minimal(&self) -> bool {
        (0..self.len()).all(|i| !self.is_contractible(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
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
    fn interior_blowup_of_elliptic_curve() {
        let g = ResolutionGraph::new("ell", vec![v("E", 1, -2)], vec![], vec![]).unwrap();
        let h = g.blow_up(&BlowUpSite::Interior("E".into())).unwrap();
        let a = h.log_discrepancies();
        assert_eq!(a.vertices, vec![int(0), int(1)]);
        assert_eq!(h.minimize(), g);
    }

    #[test]
    fn edge_blowup_adds_discrepancies() {
        for kappa in [1i64, 2, 3] {
            let g = elliptic_branch_germ(kappa);
            let h = g.blow_up(&BlowUpSite::Edge("E2".into(), "E0".into(), 0)).unwrap();
            let a = h.log_discrepancies();
            assert_eq!(a.vertices[3], int(-3) / int(kappa));
        }
    }

    #[test]
    fn missing_site() {
        let g = elliptic_branch_germ(1);
        assert_eq!(g.blow_up(&BlowUpSite::Edge("E0".into(), "E1".into(), 0)), Err(SurfaceError::SiteNotFound));
        assert_eq!(g.blow_up(&BlowUpSite::Edge("E2".into(), "E0".into(), 1)), Err(SurfaceError::SiteNotFound));
        assert_eq!(g.blow_up(&BlowUpSite::Interior("Q".into())), Err(SurfaceError::SiteNotFound));
    }

    #[test]
    fn minimize_contracts_end_curve() {
        let g = ResolutionGraph::new(
            "chain",
            vec![v("A", 0, -3), v("B", 0, -1)],
            vec![("A".into(), "B".into())],
            vec![],
        )
        .unwrap();
        let m = g.minimize();
        assert_eq!(m.vertices(), &[v("A", 0, -2)]);
        assert_eq!(elliptic_branch_germ(2).minimize(), elliptic_branch_germ(2));
    }

    #[test]
    fn branch_blowup_round_trip() {
        let g = elliptic_branch_germ(2);
        let h = g.blow_up(&BlowUpSite::Branch("B".into())).unwrap();
        let a = h.log_discrepancies();
        assert_eq!(a.vertices[3], int(-1) + rat(1, 2));
        assert_eq!(h.blow_down(3).unwrap(), g);
    }
}
