//! The JSON germ schema.

use super::graph::{ResolutionGraph, Vertex};
use super::SurfaceError;
use crate::symbolic::rational::serde_rational;
use crate::symbolic::Rational;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexJson {
    pub id: String,
    pub genus: u32,
    pub self_intersection: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchJson {
    pub id: String,
    #[serde(with = "serde_rational")]
    pub coefficient: Rational,
    pub attach: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GermJson {
    pub name: String,
    pub vertices: Vec<VertexJson>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
    #[serde(default)]
    pub branches: Vec<BranchJson>,
}

impl GermJson {
    pub fn to_graph(&self) -> Result<ResolutionGraph, SurfaceError> {
        ResolutionGraph::new(
            self.name.clone(),
            self.vertices
                .iter()
                .map(|v| Vertex { id: v.id.clone(), genus: v.genus, self_intersection: v.self_intersection })
                .collect(),
            self.edges.clone(),
            self.branches.iter().map(|b| (b.id.clone(), b.coefficient.clone(), b.attach.clone())).collect(),
        )
    }

    pub fn from_graph(g: &ResolutionGraph) -> Self {
        let id = |i: usize| g.vertices()[i].id.clone();
        GermJson {
            name: g.name().to_string(),
            vertices: g
                .vertices()
                .iter()
                .map(|v| VertexJson { id: v.id.clone(), genus: v.genus, self_intersection: v.self_intersection })
                .collect(),
            edges: g.edges().iter().map(|&(a, b)| (id(a), id(b))).collect(),
            branches: g
                .branches()
                .iter()
                .map(|b| BranchJson { id: b.id.clone(), coefficient: b.coefficient.clone(), attach: id(b.attach) })
                .collect(),
        }
    }
}

impl ResolutionGraph {
    pub fn from_json(text: &str) -> Result<ResolutionGraph, SurfaceError> {
        let parsed: GermJson = serde_json::from_str(text).map_err(|e| SurfaceError::Parse(e.to_string()))?;
        parsed.to_graph()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&GermJson::from_graph(self)).expect("germ serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"{
            "name": "t",
            "vertices": [
                {"id": "E0", "genus": 1, "self_intersection": -4},
                {"id": "E1", "genus": 0, "self_intersection": -2},
                {"id": "E2", "genus": 0, "self_intersection": -1}
            ],
            "edges": [["E2", "E0"], ["E2", "E1"]],
            "branches": [{"id": "B", "coefficient": "1/2", "attach": "E2"}]
        }"#;
        let g = ResolutionGraph::from_json(text).unwrap();
        let again = ResolutionGraph::from_json(&g.to_json()).unwrap();
        assert_eq!(g, again);
        assert!(g.to_json().contains("\"1/2\""));
    }

    #[test]
    fn rejects_decimal_coefficients() {
        let text = r#"{"name": "t", "vertices": [{"id": "E", "genus": 0, "self_intersection": -2}],
            "edges": [], "branches": [{"id": "B", "coefficient": "0.5", "attach": "E"}]}"#;
        assert!(matches!(ResolutionGraph::from_json(text), Err(SurfaceError::Parse(_))));
    }
}
