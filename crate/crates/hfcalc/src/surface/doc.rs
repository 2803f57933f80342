//! Diagram document format.

use super::{CombinatorialSurface, Dart, Edge, Face, Family, PointedMultiDiagram, SurfaceError, Vertex};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDoc {
    pub corners: [usize; 4],
    pub ends: [i64; 4],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub curve: usize,
    pub from: Option<usize>,
    pub to: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceDoc {
    pub cycles: Vec<Vec<i64>>,
    pub euler: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramDocument {
    pub genus: usize,
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<EdgeDoc>,
    pub faces: Vec<FaceDoc>,
    pub families: BTreeMap<Family, Vec<usize>>,
    pub basepoint: usize,
}

impl DiagramDocument {
    pub fn from_diagram(d: &PointedMultiDiagram) -> DiagramDocument {
        let s = &d.surface;
        DiagramDocument {
            genus: s.genus,
            vertices: s
                .vertices
                .iter()
                .map(|v| VertexDoc { corners: v.corners, ends: v.ends.map(|x| x.signed()) })
                .collect(),
            edges: s.edges.iter().map(|e| EdgeDoc { curve: e.curve, from: e.from, to: e.to }).collect(),
            faces: s
                .faces
                .iter()
                .map(|f| FaceDoc {
                    cycles: f.cycles.iter().map(|c| c.iter().map(|x| x.signed()).collect()).collect(),
                    euler: f.euler,
                })
                .collect(),
            families: d.families.clone(),
            basepoint: d.basepoint,
        }
    }

    pub fn to_diagram(&self) -> Result<PointedMultiDiagram, SurfaceError> {
        let dart = |s: i64| {
            Dart::from_signed(s).ok_or_else(|| SurfaceError::DanglingReference { what: "signed edge id 0".into() })
        };
        let mut vertices = Vec::new();
        for v in &self.vertices {
            let mut ends = [Dart::fwd(0); 4];
            for (k, &s) in v.ends.iter().enumerate() {
                ends[k] = dart(s)?;
            }
            vertices.push(Vertex { ends, corners: v.corners });
        }
        let mut faces = Vec::new();
        for f in &self.faces {
            let mut cycles = Vec::new();
            for c in &f.cycles {
                cycles.push(c.iter().map(|&s| dart(s)).collect::<Result<Vec<_>, _>>()?);
            }
            faces.push(Face { cycles, euler: f.euler });
        }
        let surface = CombinatorialSurface {
            genus: self.genus,
            vertices,
            edges: self.edges.iter().map(|e| Edge { curve: e.curve, from: e.from, to: e.to }).collect(),
            faces,
        };
        PointedMultiDiagram::new(surface, self.families.clone(), self.basepoint)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::super::*;

    #[test]
    fn roundtrip() {
        for d in [standard_diagram(2), mcp_triple(), degenerate_s1s2(), sphere()] {
            let doc = DiagramDocument::from_diagram(&d);
            let text = doc.to_json();
            let back: DiagramDocument = serde_json::from_str(&text).unwrap();
            assert_eq!(back.to_diagram().unwrap(), d);
            assert_eq!(DiagramDocument::from_diagram(&back.to_diagram().unwrap()).to_json(), text);
        }
    }

    #[test]
    fn unknown_keys_rejected() {
        let text = r#"{"genus":0,"vertices":[],"edges":[],"faces":[{"cycles":[],"euler":2}],"families":{},"basepoint":0,"extra":1}"#;
        assert!(serde_json::from_str::<DiagramDocument>(text).is_err());
    }
}
