//! Core-and-chains shape of the minimal log resolution of a non-lc germ.

use super::graph::{Classification, ResolutionGraph};
use super::SurfaceError;
use crate::symbolic::Rational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroVertex {
    pub id: String,
    pub neighbors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureDecomposition {
    /// Curves with negative log discrepancy.
    pub core: Vec<String>,
    /// Each chain listed from the curve meeting the core outward.
    pub chains: Vec<Vec<String>>,
    pub zero_vertices: Vec<ZeroVertex>,
    /// Whether the input had to be minimized first.
    pub input_was_minimal: bool,
}

fn violation(msg: impl Into<String>) -> SurfaceError {
    SurfaceError::StructureViolation(msg.into())
}

impl ResolutionGraph {
    pub fn structure_decomposition(&self) -> Result<StructureDecomposition, SurfaceError> {
        if !self.branches().is_empty() {
            return Err(SurfaceError::NotApplicable("germ has boundary branches".into()));
        }
        let g = self.minimize();
        let a = g.log_discrepancies().vertices;
        if super::graph::classify_discrepancies(&a) != Classification::NotLc {
            return Err(SurfaceError::NotApplicable("germ is log canonical".into()));
        }
        let n = g.len();
        let id = |i: usize| g.vertices()[i].id.clone();
        let in_core: Vec<bool> = a.iter().map(|x| x.is_negative()).collect();

        let component = |start: usize, inside: &dyn Fn(usize) -> bool| {
            let mut seen = vec![start];
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for j in g.neighbors(i) {
                    if inside(j) && !seen.contains(&j) {
                        seen.push(j);
                        stack.push(j);
                    }
                }
            }
            seen.sort_unstable();
            seen
        };

        let core: Vec<usize> = (0..n).filter(|&i| in_core[i]).collect();
        if component(core[0], &|j| in_core[j]).len() != core.len() {
            return Err(violation("negative-discrepancy curves are not connected"));
        }

        let mut assigned = in_core.clone();
        let mut chains = Vec::new();
        for start in 0..n {
            if assigned[start] {
                continue;
            }
            let comp = component(start, &|j| !in_core[j]);
            for &i in &comp {
                assigned[i] = true;
            }
            let to_core: Vec<(usize, usize)> = comp
                .iter()
                .flat_map(|&i| g.neighbors(i).into_iter().filter(|&j| in_core[j]).map(move |j| (i, j)))
                .collect();
            if to_core.len() != 1 {
                return Err(violation(format!("chain through `{}` meets the core {} times", id(start), to_core.len())));
            }
            let inner_degree = |i: usize| g.neighbors(i).into_iter().filter(|j| comp.contains(j)).count();
            let inner_edges: usize = comp.iter().map(|&i| inner_degree(i)).sum::<usize>() / 2;
            if inner_edges + 1 != comp.len() || comp.iter().any(|&i| inner_degree(i) > 2) {
                return Err(violation(format!("component through `{}` is not a chain", id(start))));
            }
            let head = to_core[0].0;
            if comp.len() > 1 && inner_degree(head) != 1 {
                return Err(violation(format!("chain through `{}` is not attached at an end", id(head))));
            }
            let mut order = vec![head];
            while order.len() < comp.len() {
                let last = *order.last().expect("nonempty");
                let next = g
                    .neighbors(last)
                    .into_iter()
                    .find(|j| comp.contains(j) && !order.contains(j))
                    .ok_or_else(|| violation("chain walk stalled"))?;
                order.push(next);
            }
            for w in order.windows(2) {
                if a[w[0]] >= a[w[1]] {
                    return Err(violation(format!("discrepancies do not increase from `{}`", id(w[0]))));
                }
            }
            for &i in &order {
                if g.vertices()[i].genus != 0 {
                    return Err(violation(format!("chain curve `{}` is not rational", id(i))));
                }
                if a[i] >= Rational::one() {
                    return Err(violation(format!("chain curve `{}` has discrepancy ≥ 1", id(i))));
                }
            }
            chains.push(order.into_iter().map(id).collect());
        }

        let mut zero_vertices = Vec::new();
        for i in (0..n).filter(|&i| a[i].is_zero()) {
            let nb = g.neighbors(i);
            if g.vertices()[i].genus != 0 || !(1..=2).contains(&nb.len()) {
                return Err(violation(format!("zero-discrepancy curve `{}` is not a rational curve meeting one or two others", id(i))));
            }
            zero_vertices.push(ZeroVertex { id: id(i), neighbors: nb.into_iter().map(id).collect() });
        }

        Ok(StructureDecomposition {
            core: core.into_iter().map(id).collect(),
            chains,
            zero_vertices,
            input_was_minimal: g.len() == self.len(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::Vertex;

    fn v(id: &str, genus: u32, e2: i64) -> Vertex {
        Vertex { id: id.into(), genus, self_intersection: e2 }
    }

    #[test]
    fn genus_two_core_only() {
        let g = ResolutionGraph::new("g2", vec![v("E", 2, -1)], vec![], vec![]).unwrap();
        assert_eq!(g.log_discrepancies().vertices, vec![crate::symbolic::int(-2)]);
        let s = g.structure_decomposition().unwrap();
        assert_eq!(s.core, vec!["E"]);
        assert!(s.chains.is_empty() && s.zero_vertices.is_empty());
    }

    #[test]
    fn zero_vertex_on_chain() {
        let g = ResolutionGraph::new(
            "zero-chain",
            vec![v("E0", 1, -1), v("E1", 0, -2)],
            vec![("E0".into(), "E1".into())],
            vec![],
        )
        .unwrap();
        let s = g.structure_decomposition().unwrap();
        assert_eq!(s.core, vec!["E0"]);
        assert_eq!(s.chains, vec![vec!["E1".to_string()]]);
        assert_eq!(s.zero_vertices, vec![ZeroVertex { id: "E1".into(), neighbors: vec!["E0".into()] }]);
    }

    #[test]
    fn lc_germ_not_applicable() {
        let g = ResolutionGraph::new("a1", vec![v("E", 0, -2)], vec![], vec![]).unwrap();
        assert!(matches!(g.structure_decomposition(), Err(SurfaceError::NotApplicable(_))));
    }
}
