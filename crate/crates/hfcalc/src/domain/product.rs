//! Splitting a diagram into connected summands joined at the basepoint face.

use crate::surface::{
    CombinatorialSurface, CurveId, Dart, Edge, EdgeId, Face, FaceId, Family, IntersectionTuple, PointedMultiDiagram,
    Vertex, VertexId,
};
use std::collections::BTreeMap;

/// One summand, re-indexed as a diagram whose basepoint face is the neck.
#[derive(Clone, Debug)]
pub struct ProductPart {
    pub diagram: PointedMultiDiagram,
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub faces: Vec<FaceId>,
    pub curves: Vec<CurveId>,
}

impl ProductPart {
    pub fn restrict(&self, chain: &[i64]) -> Vec<i64> {
        self.faces.iter().map(|&f| chain[f]).collect()
    }

    pub fn restrict_tuple(&self, t: &IntersectionTuple) -> IntersectionTuple {
        let local: BTreeMap<VertexId, VertexId> = self.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        IntersectionTuple { points: t.points.iter().filter_map(|v| local.get(v).copied()).collect() }
    }
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

/// Summands of a diagram whose curve components meet only along the
/// basepoint face. `None` if the faces do not split that way.
pub fn product_decomposition(d: &PointedMultiDiagram) -> Option<Vec<ProductPart>> {
    let s = &d.surface;
    let nc = d.num_curves();
    let mut parent: Vec<usize> = (0..nc).collect();
    for v in 0..s.vertices.len() {
        let (a, b) = d.vertex_curves(v);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let mut roots: Vec<usize> = (0..nc).map(|c| find(&mut parent, c)).collect();
    let mut order: Vec<usize> = Vec::new();
    for &r in &roots {
        if !order.contains(&r) {
            order.push(r);
        }
    }
    for r in roots.iter_mut() {
        *r = order.iter().position(|x| x == r).unwrap();
    }
    let comp_of_edge = |e: EdgeId| roots[s.edges[e].curve];
    let k = order.len();
    let mut face_comp: Vec<Option<usize>> = vec![None; s.faces.len()];
    let mut neck_cycles: Vec<Vec<Vec<Dart>>> = vec![Vec::new(); k];
    for (f, face) in s.faces.iter().enumerate() {
        for cyc in &face.cycles {
            let c = comp_of_edge(cyc[0].edge);
            if cyc.iter().any(|x| comp_of_edge(x.edge) != c) {
                return None;
            }
            if f == d.basepoint {
                neck_cycles[c].push(cyc.clone());
            } else {
                match face_comp[f] {
                    None => face_comp[f] = Some(c),
                    Some(old) if old != c => return None,
                    _ => {}
                }
            }
        }
    }
    let z_euler: i64 = neck_cycles.iter().map(|c| 2 - c.len() as i64).sum::<i64>() - 2 * (k as i64 - 1);
    if k > 0 && z_euler != s.faces[d.basepoint].euler {
        return None;
    }
    let mut parts = Vec::new();
    for c in 0..k {
        let curves: Vec<CurveId> = (0..nc).filter(|&x| roots[x] == c).collect();
        let edges: Vec<EdgeId> = (0..s.edges.len()).filter(|&e| comp_of_edge(e) == c).collect();
        let vertices: Vec<VertexId> = (0..s.vertices.len()).filter(|&v| roots[d.vertex_curves(v).0] == c).collect();
        let mut faces: Vec<FaceId> = vec![d.basepoint];
        faces.extend((0..s.faces.len()).filter(|&f| face_comp[f] == Some(c)));
        let cmap: BTreeMap<CurveId, CurveId> = curves.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let emap: BTreeMap<EdgeId, EdgeId> = edges.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let vmap: BTreeMap<VertexId, VertexId> = vertices.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let fmap: BTreeMap<FaceId, FaceId> = faces.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let dmap = |x: Dart| Dart { edge: emap[&x.edge], forward: x.forward };
        let surface = CombinatorialSurface {
            genus: curves.len() / d.families.len().max(1),
            vertices: vertices
                .iter()
                .map(|&v| {
                    let vx = &s.vertices[v];
                    Vertex { ends: vx.ends.map(dmap), corners: vx.corners.map(|f| fmap[&f]) }
                })
                .collect(),
            edges: edges
                .iter()
                .map(|&e| {
                    let ed = &s.edges[e];
                    Edge { curve: cmap[&ed.curve], from: ed.from.map(|v| vmap[&v]), to: ed.to.map(|v| vmap[&v]) }
                })
                .collect(),
            faces: faces
                .iter()
                .map(|&f| {
                    let cycles: Vec<Vec<Dart>> = if f == d.basepoint {
                        neck_cycles[c].clone()
                    } else {
                        s.faces[f].cycles.clone()
                    };
                    let euler = if f == d.basepoint { 2 - cycles.len() as i64 } else { s.faces[f].euler };
                    Face { cycles: cycles.iter().map(|cy| cy.iter().map(|&x| dmap(x)).collect()).collect(), euler }
                })
                .collect(),
        };
        let families: BTreeMap<Family, Vec<CurveId>> = d
            .families
            .iter()
            .map(|(&f, cs)| (f, cs.iter().filter_map(|x| cmap.get(x).copied()).collect()))
            .collect();
        let diagram = PointedMultiDiagram::new(surface, families, 0).ok()?;
        parts.push(ProductPart { diagram, vertices, edges, faces, curves });
    }
    Some(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::*;

    #[test]
    fn standard_splits_into_summands() {
        for n in 1..=3 {
            let d = standard_diagram(n);
            let parts = product_decomposition(&d).unwrap();
            assert_eq!(parts.len(), n);
            for p in &parts {
                assert_eq!(p.diagram.genus(), 1);
                assert_eq!(p.diagram.num_vertices(), 2);
            }
        }
    }

    #[test]
    fn genus_one_is_its_own_part() {
        let d = lens_diagram(4);
        let parts = product_decomposition(&d).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].diagram.num_faces(), d.num_faces());
    }

    #[test]
    fn restrict_tuple_keeps_order() {
        let d = standard_diagram(2);
        let parts = product_decomposition(&d).unwrap();
        for t in d.enumerate_tuples(Family::Alpha, Family::Beta).unwrap() {
            let pieces: Vec<_> = parts.iter().map(|p| p.restrict_tuple(&t)).collect();
            assert!(pieces.iter().all(|x| x.points.len() == 1));
        }
    }
}
