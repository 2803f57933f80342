//! Combinatorial universal cover of a genus-one diagram.

use super::{edge_boundary, Corners, Domain};
use crate::linalg::{smith, transpose};
use crate::surface::{Dart, EdgeId, FaceId, Family, PointedMultiDiagram, VertexId};
use serde::Serialize;
use std::collections::{BTreeMap, VecDeque};
use thiserror::Error;

pub type Shift = (i64, i64);

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("UnsupportedGenus: universal cover requires genus one, got {0}")]
    UnsupportedGenus(usize),
    #[error("NotCellular: faces do not present the torus")]
    NotCellular,
    #[error("MalformedCorners: boundary does not follow the declared corners")]
    MalformedCorners,
}

fn plus(a: Shift, b: Shift) -> Shift {
    (a.0 + b.0, a.1 + b.1)
}
fn minus(a: Shift, b: Shift) -> Shift {
    (a.0 - b.0, a.1 - b.1)
}

/// Deck translations for a genus-one diagram.
///
/// Each face is lifted once per translation. Crossing edge `e` from its
/// right face at `T` lands in its left face at `T + shift[e]`.
#[derive(Clone, Debug)]
pub struct UniversalCover {
    /// `None` when some face is an annulus.
    pub shift: Option<Vec<Shift>>,
    /// Per vertex, translation of each corner relative to the vertex lift.
    corner: Vec<[Shift; 4]>,
    annuli: Vec<FaceId>,
}

/// A compactly supported lift `D̃`, and the multiple of `[Σ]` separating
/// its projection from the original chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftedRegion {
    pub cells: BTreeMap<(FaceId, Shift), i64>,
    pub sigma_multiple: i64,
}

impl LiftedRegion {
    pub fn is_realizable(&self) -> bool {
        self.sigma_multiple == 0
    }
}

impl UniversalCover {
    pub fn new(d: &PointedMultiDiagram) -> Result<UniversalCover, CoverError> {
        if d.genus() != 1 {
            return Err(CoverError::UnsupportedGenus(d.genus()));
        }
        let faces = &d.surface.faces;
        let annuli: Vec<FaceId> = (0..faces.len()).filter(|&f| faces[f].euler == 0).collect();
        if !annuli.is_empty() {
            return Ok(UniversalCover { shift: None, corner: vec![], annuli });
        }
        if faces.iter().any(|f| f.euler != 1) {
            return Err(CoverError::NotCellular);
        }
        // dual spanning tree
        let nf = faces.len();
        let ne = d.num_edges();
        let mut seen = vec![false; nf];
        let mut tree = vec![false; ne];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(f) = queue.pop_front() {
            for e in 0..ne {
                let (l, r) = (d.left_face(e), d.right_face(e));
                let other = if l == f { r } else if r == f { l } else { continue };
                if !seen[other] {
                    seen[other] = true;
                    tree[e] = true;
                    queue.push_back(other);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(CoverError::NotCellular);
        }
        let free: Vec<EdgeId> = (0..ne).filter(|&e| !tree[e]).collect();
        let col: BTreeMap<EdgeId, usize> = free.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let rels: Vec<Vec<i64>> = d
            .surface
            .vertices
            .iter()
            .map(|v| {
                let mut row = vec![0i64; free.len()];
                for dart in v.ends {
                    if let Some(&c) = col.get(&dart.edge) {
                        row[c] += if dart.forward { 1 } else { -1 };
                    }
                }
                row
            })
            .collect();
        let s = smith(&transpose(&rels, free.len()), d.surface.vertices.len());
        let orders = s.cokernel_orders();
        if orders != vec![0, 0] {
            return Err(CoverError::NotCellular);
        }
        let mut shift = vec![(0, 0); ne];
        for (i, &e) in free.iter().enumerate() {
            let mut b = vec![0i64; free.len()];
            b[i] = 1;
            let c = s.cokernel_class(&b);
            shift[e] = (c[0], c[1]);
        }
        let corner = d
            .surface
            .vertices
            .iter()
            .map(|v| {
                let mut t = [(0, 0); 4];
                for k in 1..4 {
                    let dart = v.ends[k];
                    let s = shift[dart.edge];
                    t[k] = if dart.forward { plus(t[k - 1], s) } else { minus(t[k - 1], s) };
                }
                t
            })
            .collect();
        Ok(UniversalCover { shift: Some(shift), corner, annuli })
    }

    /// Cells adjacent to `(f, t)`, with the crossed edge as a dart that is
    /// forward when crossing from its right face to its left face.
    pub fn neighbors(&self, d: &PointedMultiDiagram, f: FaceId, t: Shift) -> Vec<(Dart, (FaceId, Shift))> {
        let Some(shift) = &self.shift else { return vec![] };
        let mut out = Vec::new();
        for e in 0..d.num_edges() {
            if d.right_face(e) == f {
                out.push((Dart::fwd(e), (d.left_face(e), plus(t, shift[e]))));
            }
            if d.left_face(e) == f {
                out.push((Dart::bwd(e), (d.right_face(e), minus(t, shift[e]))));
            }
        }
        out
    }

    fn end_index(d: &PointedMultiDiagram, v: VertexId, dart: Dart) -> usize {
        d.surface.vertices[v].ends.iter().position(|&x| x == dart).expect("dart at vertex")
    }

    /// Right-face translation of `e` leaving `v` whose lift sits at `at`.
    fn leave(&self, d: &PointedMultiDiagram, v: VertexId, at: Shift, e: EdgeId) -> Shift {
        let k = Self::end_index(d, v, Dart::fwd(e));
        plus(at, self.corner[v][(k + 3) % 4])
    }

    /// Vertex lift reached at the end of `e` with right face at `t`.
    fn arrive(&self, d: &PointedMultiDiagram, e: EdgeId, t: Shift) -> (VertexId, Shift) {
        let v = d.surface.edges[e].to.expect("edge with endpoints");
        let k = Self::end_index(d, v, Dart::bwd(e));
        (v, minus(t, self.corner[v][k]))
    }

    /// Right-face translation of `e` arriving at `v` (walked backwards).
    fn leave_back(&self, d: &PointedMultiDiagram, v: VertexId, at: Shift, e: EdgeId) -> Shift {
        let k = Self::end_index(d, v, Dart::bwd(e));
        plus(at, self.corner[v][k])
    }

    fn arrive_back(&self, d: &PointedMultiDiagram, e: EdgeId, t: Shift) -> (VertexId, Shift) {
        let v = d.surface.edges[e].from.expect("edge with endpoints");
        let k = Self::end_index(d, v, Dart::fwd(e));
        (v, minus(t, self.corner[v][(k + 3) % 4]))
    }

    /// Walks the boundary chain of `curve` from `p` to `q`, appending signed
    /// lifted edges; returns the vertex lift at `q`.
    #[allow(clippy::too_many_arguments)]
    fn walk(
        &self,
        d: &PointedMultiDiagram,
        eb: &[i64],
        family: Family,
        p: VertexId,
        q: VertexId,
        at: Shift,
        out: &mut BTreeMap<(EdgeId, Shift), i64>,
    ) -> Result<Shift, CoverError> {
        let c = d.vertex_curve_in(p, family).ok_or(CoverError::MalformedCorners)?;
        let edges = d.curve_edges(c);
        let start = edges.iter().position(|&e| d.surface.edges[e].from == Some(p)).ok_or(CoverError::MalformedCorners)?;
        let n = edges.len();
        // forward arc p -> q
        let mut arc = vec![0i64; n];
        if p != q {
            let mut i = start;
            loop {
                arc[i] = 1;
                if d.surface.edges[edges[i]].to == Some(q) {
                    break;
                }
                i = (i + 1) % n;
                if i == start {
                    return Err(CoverError::MalformedCorners);
                }
            }
        }
        let k = eb[edges[start]] - arc[start];
        if (0..n).any(|i| eb[edges[i]] - arc[i] != k) {
            return Err(CoverError::MalformedCorners);
        }
        let (mut v, mut pos) = (p, at);
        if k >= 0 {
            let steps = arc.iter().sum::<i64>() as usize + k as usize * n;
            for s in 0..steps {
                let e = edges[(start + s) % n];
                let t = self.leave(d, v, pos, e);
                *out.entry((e, t)).or_insert(0) += 1;
                (v, pos) = self.arrive(d, e, t);
            }
        } else {
            // backwards |k| turns, then forward along the arc
            for s in 0..(-k as usize * n) {
                let e = edges[(start + n - 1 - s % n) % n];
                let t = self.leave_back(d, v, pos, e);
                *out.entry((e, t)).or_insert(0) -= 1;
                (v, pos) = self.arrive_back(d, e, t);
            }
            for s in 0..arc.iter().sum::<i64>() as usize {
                let e = edges[(start + s) % n];
                let t = self.leave(d, v, pos, e);
                *out.entry((e, t)).or_insert(0) += 1;
                (v, pos) = self.arrive(d, e, t);
            }
        }
        if v != q {
            return Err(CoverError::MalformedCorners);
        }
        Ok(pos)
    }

    /// The lifted boundary loop of a disk or triangle domain.
    pub fn lift_boundary(&self, d: &PointedMultiDiagram, dom: &Domain) -> Result<BTreeMap<(EdgeId, Shift), i64>, CoverError> {
        let eb = edge_boundary(d, &dom.chain);
        let mut out = BTreeMap::new();
        let one = |t: &crate::surface::IntersectionTuple| t.points.first().copied().ok_or(CoverError::MalformedCorners);
        match &dom.corners {
            Corners::Disk { pair: (a, b), x, y } => {
                let (x, y) = (one(x)?, one(y)?);
                let at = self.walk(d, &eb, *a, x, y, (0, 0), &mut out)?;
                let end = self.walk(d, &eb, *b, y, x, at, &mut out)?;
                if end != (0, 0) {
                    return Err(CoverError::MalformedCorners);
                }
            }
            Corners::Triangle { fams: [a, b, c], x, y, w } => {
                let (x, y, w) = (one(x)?, one(y)?, one(w)?);
                let at = self.walk(d, &eb, *a, x, w, (0, 0), &mut out)?;
                let at = self.walk(d, &eb, *c, w, y, at, &mut out)?;
                let end = self.walk(d, &eb, *b, y, x, at, &mut out)?;
                if end != (0, 0) {
                    return Err(CoverError::MalformedCorners);
                }
            }
            Corners::Periodic => return Err(CoverError::MalformedCorners),
        }
        out.retain(|_, c| *c != 0);
        Ok(out)
    }

    /// Lifts a disk or triangle domain.
    pub fn lift(&self, d: &PointedMultiDiagram, dom: &Domain) -> Result<LiftedRegion, CoverError> {
        let Some(shift) = &self.shift else {
            let m = dom.chain[self.annuli[0]];
            if self.annuli.iter().any(|&a| dom.chain[a] != m) {
                return Err(CoverError::MalformedCorners);
            }
            let cells = dom
                .chain
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c != m)
                .map(|(f, &c)| ((f, (0, 0)), c - m))
                .collect();
            return Ok(LiftedRegion { cells, sigma_multiple: m });
        };
        let loop_chain = self.lift_boundary(d, dom)?;
        let ne = d.num_edges();
        let (mut lo, mut hi) = ((0i64, 0i64), (0i64, 0i64));
        for &(e, t) in loop_chain.keys() {
            for p in [t, plus(t, shift[e])] {
                lo = (lo.0.min(p.0), lo.1.min(p.1));
                hi = (hi.0.max(p.0), hi.1.max(p.1));
            }
        }
        let step = shift.iter().map(|s| s.0.abs().max(s.1.abs())).max().unwrap_or(1).max(1);
        let mut margin = step + 1;
        loop {
            let blo = (lo.0 - margin, lo.1 - margin);
            let bhi = (hi.0 + margin, hi.1 + margin);
            let inside = |t: Shift| t.0 >= blo.0 && t.0 <= bhi.0 && t.1 >= blo.1 && t.1 <= bhi.1;
            let mut val: BTreeMap<(FaceId, Shift), i64> = BTreeMap::new();
            let start = (0usize, blo);
            val.insert(start, 0);
            let mut queue = VecDeque::from([start]);
            let mut conflict = false;
            while let Some((f, t)) = queue.pop_front() {
                let here = val[&(f, t)];
                for e in 0..ne {
                    let coeff = |rt: Shift| loop_chain.get(&(e, rt)).copied().unwrap_or(0);
                    let mut nbrs = Vec::new();
                    if d.right_face(e) == f {
                        nbrs.push(((d.left_face(e), plus(t, shift[e])), here + coeff(t)));
                    }
                    if d.left_face(e) == f {
                        let rt = minus(t, shift[e]);
                        nbrs.push(((d.right_face(e), rt), here - coeff(rt)));
                    }
                    for (cell, v) in nbrs {
                        if !inside(cell.1) {
                            continue;
                        }
                        match val.get(&cell) {
                            Some(&old) => conflict |= old != v,
                            None => {
                                val.insert(cell, v);
                                queue.push_back(cell);
                            }
                        }
                    }
                }
            }
            if conflict {
                return Err(CoverError::MalformedCorners);
            }
            let mut complete = true;
            'scan: for a in lo.0 - 1..=hi.0 + 1 {
                for b in lo.1 - 1..=hi.1 + 1 {
                    for f in 0..d.num_faces() {
                        if !val.contains_key(&(f, (a, b))) {
                            complete = false;
                            break 'scan;
                        }
                    }
                }
            }
            if !complete {
                margin *= 2;
                if margin > 1 << 12 {
                    return Err(CoverError::NotCellular);
                }
                continue;
            }
            let mut proj = vec![0i64; d.num_faces()];
            for (&(f, _), &v) in &val {
                proj[f] += v;
            }
            let m = dom.chain[0] - proj[0];
            if (0..d.num_faces()).any(|f| dom.chain[f] - proj[f] != m) {
                return Err(CoverError::MalformedCorners);
            }
            val.retain(|_, v| *v != 0);
            return Ok(LiftedRegion { cells: val, sigma_multiple: m });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{connect_pair, connect_triangle, sigma, add};
    use crate::surface::*;

    #[test]
    fn cover_requires_genus_one() {
        assert_eq!(UniversalCover::new(&standard_diagram(2)).unwrap_err(), CoverError::UnsupportedGenus(2));
        assert!(UniversalCover::new(&lens_diagram(3)).unwrap().shift.is_some());
        assert!(UniversalCover::new(&standard_diagram(1)).unwrap().shift.is_none());
    }

    #[test]
    fn trivial_disk_lifts_to_nothing() {
        let d = lens_diagram(3);
        let cov = UniversalCover::new(&d).unwrap();
        let t = d.enumerate_tuples(Family::Alpha, Family::Beta).unwrap();
        let phi = connect_pair(&d, Family::Alpha, Family::Beta, &t[0], &t[0]).unwrap();
        let r = cov.lift(&d, &phi).unwrap();
        assert!(r.cells.is_empty());
        assert_eq!(r.sigma_multiple, 0);
        let up = Domain { chain: add(&phi.chain, &sigma(&d)), corners: phi.corners.clone() };
        assert_eq!(cov.lift(&d, &up).unwrap().sigma_multiple, 1);
    }

    #[test]
    fn finger_move_bigons_realizable() {
        let d = finger_move_s3();
        let cov = UniversalCover::new(&d).unwrap();
        let t = d.enumerate_tuples(Family::Alpha, Family::Beta).unwrap();
        assert_eq!(t.len(), 3);
        for x in &t {
            for y in &t {
                let phi = connect_pair(&d, Family::Alpha, Family::Beta, x, y).unwrap();
                let r = cov.lift(&d, &phi).unwrap();
                let mut proj = vec![0; d.num_faces()];
                for (&(f, _), &v) in &r.cells {
                    proj[f] += v;
                }
                let back = add(&proj, &crate::domain::scale(&sigma(&d), r.sigma_multiple));
                assert_eq!(back, phi.chain);
            }
        }
    }

    #[test]
    fn mcp_triangle_lift() {
        let d = mcp_triple();
        let cov = UniversalCover::new(&d).unwrap();
        let tup = |a, b| d.enumerate_tuples(a, b).unwrap()[0].clone();
        let psi = connect_triangle(
            &d,
            [Family::Alpha, Family::Beta, Family::Gamma],
            &tup(Family::Alpha, Family::Beta),
            &tup(Family::Beta, Family::Gamma),
            &tup(Family::Alpha, Family::Gamma),
        )
        .unwrap();
        let r = cov.lift(&d, &psi).unwrap();
        let mut proj = vec![0; d.num_faces()];
        for (&(f, _), &v) in &r.cells {
            proj[f] += v;
        }
        assert_eq!(add(&proj, &crate::domain::scale(&sigma(&d), r.sigma_multiple)), psi.chain);
    }
}
