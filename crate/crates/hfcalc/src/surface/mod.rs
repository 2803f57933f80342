//! Combinatorial surfaces carrying labelled families of attaching curves.
//!
//! A vertex is a transverse crossing of two curves. Its four edge-ends are
//! listed counterclockwise and corner `j` is the face between end `j` and
//! end `j + 1`. Every face lists its boundary cycles as darts that keep the
//! face on their left.

mod doc;
mod models;
mod torus;

pub use doc::{DiagramDocument, EdgeDoc, FaceDoc, VertexDoc};
pub use models::*;
pub use torus::{LineSpec, PlCurve, TorusBuilder};

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;
pub type FaceId = usize;
pub type CurveId = usize;

/// An edge traversed in a direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Dart {
    pub edge: EdgeId,
    pub forward: bool,
}

impl Dart {
    pub fn fwd(edge: EdgeId) -> Dart {
        Dart { edge, forward: true }
    }
    pub fn bwd(edge: EdgeId) -> Dart {
        Dart { edge, forward: false }
    }
    pub fn rev(self) -> Dart {
        Dart { edge: self.edge, forward: !self.forward }
    }
    /// `+(e+1)` or `-(e+1)`.
    pub fn signed(self) -> i64 {
        let v = self.edge as i64 + 1;
        if self.forward {
            v
        } else {
            -v
        }
    }
    pub fn from_signed(s: i64) -> Option<Dart> {
        if s == 0 {
            return None;
        }
        let edge = (s.unsigned_abs() - 1) as usize;
        Some(Dart { edge, forward: s > 0 })
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.signed())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    /// Outgoing view of each end: `forward` when the edge starts here.
    pub ends: [Dart; 4],
    pub corners: [FaceId; 4],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub curve: CurveId,
    pub from: Option<VertexId>,
    pub to: Option<VertexId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub cycles: Vec<Vec<Dart>>,
    pub euler: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinatorialSurface {
    pub genus: usize,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub faces: Vec<Face>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Alpha,
    Beta,
    Gamma,
    Delta,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Alpha, Family::Beta, Family::Gamma, Family::Delta];

    pub fn label(self) -> &'static str {
        match self {
            Family::Alpha => "alpha",
            Family::Beta => "beta",
            Family::Gamma => "gamma",
            Family::Delta => "delta",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.label() == s)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("EulerMismatch: V - E + sum(chi) = {found}, expected {expected}")]
    EulerMismatch { found: i64, expected: i64 },
    #[error("FamilyOverlap: {what}")]
    FamilyOverlap { what: String },
    #[error("IndependenceFailure: family {family} spans rank {rank} < {genus}")]
    IndependenceFailure { family: Family, rank: usize, genus: usize },
    #[error("DanglingReference: {what}")]
    DanglingReference { what: String },
    #[error("NonPrimitiveSlope: {p}/{q}")]
    NonPrimitiveSlope { p: i64, q: i64 },
    #[error("CoincidentCurves: curves {a} and {b}")]
    CoincidentCurves { a: usize, b: usize },
    #[error("NonGenericArrangement: {what}")]
    NonGenericArrangement { what: String },
    #[error("MissingFamily: {0}")]
    MissingFamily(Family),
    #[error("ArityMismatch: expected {expected} families, found {found}")]
    ArityMismatch { expected: usize, found: usize },
}

impl SurfaceError {
    pub fn name(&self) -> &'static str {
        match self {
            SurfaceError::EulerMismatch { .. } => "EulerMismatch",
            SurfaceError::FamilyOverlap { .. } => "FamilyOverlap",
            SurfaceError::IndependenceFailure { .. } => "IndependenceFailure",
            SurfaceError::DanglingReference { .. } => "DanglingReference",
            SurfaceError::NonPrimitiveSlope { .. } => "NonPrimitiveSlope",
            SurfaceError::CoincidentCurves { .. } => "CoincidentCurves",
            SurfaceError::NonGenericArrangement { .. } => "NonGenericArrangement",
            SurfaceError::MissingFamily(_) => "MissingFamily",
            SurfaceError::ArityMismatch { .. } => "ArityMismatch",
        }
    }
}

fn dangling(what: impl Into<String>) -> SurfaceError {
    SurfaceError::DanglingReference { what: what.into() }
}

/// Face cycles traced from the rotation system alone.
///
/// Arriving at a vertex through end `i`, a boundary walk leaves through end
/// `i - 1`, and the face is corner `i - 1`.
pub fn trace_cycles(vertices: &[Vertex], edges: &[Edge]) -> Vec<Vec<Dart>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for e in 0..edges.len() {
        for d in [Dart::fwd(e), Dart::bwd(e)] {
            if seen.contains(&d) {
                continue;
            }
            let mut cyc = Vec::new();
            let mut cur = d;
            loop {
                seen.insert(cur);
                cyc.push(cur);
                let Some((v, i)) = arrival(vertices, edges, cur) else { break };
                cur = vertices[v].ends[(i + 3) % 4];
                if cur == d {
                    break;
                }
            }
            out.push(cyc);
        }
    }
    out
}

/// Vertex and end index through which a dart arrives.
fn arrival(vertices: &[Vertex], edges: &[Edge], d: Dart) -> Option<(VertexId, usize)> {
    let e = &edges[d.edge];
    let v = if d.forward { e.to? } else { e.from? };
    let i = vertices[v].ends.iter().position(|&x| x == d.rev())?;
    Some((v, i))
}

/// A validated pointed Heegaard multi-diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedMultiDiagram {
    pub surface: CombinatorialSurface,
    pub families: BTreeMap<Family, Vec<CurveId>>,
    pub basepoint: FaceId,
    topo: Topology,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
struct Topology {
    left: Vec<FaceId>,
    right: Vec<FaceId>,
    curve_family: Vec<Option<Family>>,
    curve_edges: Vec<Vec<EdgeId>>,
    vertex_curves: Vec<(CurveId, CurveId)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub vertices: usize,
    pub edges: usize,
    pub euler_sum: i64,
    pub expected: i64,
    pub violations: Vec<String>,
}

/// An intersection tuple: one vertex per curve of the first family, listed in
/// that family's curve order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntersectionTuple {
    pub points: Vec<VertexId>,
}

impl fmt::Display for IntersectionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.points.iter().map(|p| format!("v{p}")).collect();
        write!(f, "({})", s.join(","))
    }
}

impl PointedMultiDiagram {
    /// Validates and builds; the first violation becomes the error.
    pub fn new(
        surface: CombinatorialSurface,
        families: BTreeMap<Family, Vec<CurveId>>,
        basepoint: FaceId,
    ) -> Result<Self, SurfaceError> {
        let (topo, errs) = analyze(&surface, &families, basepoint);
        if let Some(e) = errs.into_iter().next() {
            return Err(e);
        }
        Ok(PointedMultiDiagram { surface, families, basepoint, topo: topo.unwrap() })
    }

    pub fn genus(&self) -> usize {
        self.surface.genus
    }
    pub fn num_faces(&self) -> usize {
        self.surface.faces.len()
    }
    pub fn num_edges(&self) -> usize {
        self.surface.edges.len()
    }
    pub fn num_vertices(&self) -> usize {
        self.surface.vertices.len()
    }
    pub fn left_face(&self, e: EdgeId) -> FaceId {
        self.topo.left[e]
    }
    pub fn right_face(&self, e: EdgeId) -> FaceId {
        self.topo.right[e]
    }
    /// Face on the left of a dart.
    pub fn dart_face(&self, d: Dart) -> FaceId {
        if d.forward {
            self.topo.left[d.edge]
        } else {
            self.topo.right[d.edge]
        }
    }
    pub fn curve_family(&self, c: CurveId) -> Option<Family> {
        self.topo.curve_family[c]
    }
    pub fn edge_family(&self, e: EdgeId) -> Option<Family> {
        self.curve_family(self.surface.edges[e].curve)
    }
    pub fn num_curves(&self) -> usize {
        self.topo.curve_edges.len()
    }
    /// Edges of a curve in traversal order.
    pub fn curve_edges(&self, c: CurveId) -> &[EdgeId] {
        &self.topo.curve_edges[c]
    }
    /// The two curves through a vertex (ends 0/2 and ends 1/3).
    pub fn vertex_curves(&self, v: VertexId) -> (CurveId, CurveId) {
        self.topo.vertex_curves[v]
    }
    pub fn family_curves(&self, f: Family) -> Result<&[CurveId], SurfaceError> {
        self.families.get(&f).map(|v| v.as_slice()).ok_or(SurfaceError::MissingFamily(f))
    }
    pub fn labels(&self) -> Vec<Family> {
        self.families.keys().copied().collect()
    }
    /// Curve of family `f` through `v`, if any.
    pub fn vertex_curve_in(&self, v: VertexId, f: Family) -> Option<CurveId> {
        let (a, b) = self.vertex_curves(v);
        [a, b].into_iter().find(|&c| self.curve_family(c) == Some(f))
    }
    /// Vertices lying on a curve of `a` and a curve of `b`.
    pub fn crossings(&self, a: Family, b: Family) -> Vec<VertexId> {
        (0..self.num_vertices())
            .filter(|&v| self.vertex_curve_in(v, a).is_some() && self.vertex_curve_in(v, b).is_some())
            .collect()
    }

    pub fn validate(&self) -> ValidationReport {
        validate_parts(&self.surface, &self.families, self.basepoint)
    }

    /// Complete enumeration of intersection tuples for an ordered pair.
    pub fn enumerate_tuples(&self, a: Family, b: Family) -> Result<Vec<IntersectionTuple>, SurfaceError> {
        let ca = self.family_curves(a)?.to_vec();
        let cb = self.family_curves(b)?.to_vec();
        let mut per_curve: Vec<Vec<(VertexId, usize)>> = vec![Vec::new(); ca.len()];
        for v in 0..self.num_vertices() {
            if let (Some(x), Some(y)) = (self.vertex_curve_in(v, a), self.vertex_curve_in(v, b)) {
                let i = ca.iter().position(|&c| c == x).unwrap();
                let j = cb.iter().position(|&c| c == y).unwrap();
                per_curve[i].push((v, j));
            }
        }
        let mut out = Vec::new();
        let mut cur = Vec::new();
        let mut used = vec![false; cb.len()];
        fn rec(
            i: usize,
            per: &[Vec<(VertexId, usize)>],
            used: &mut Vec<bool>,
            cur: &mut Vec<VertexId>,
            out: &mut Vec<IntersectionTuple>,
        ) {
            if i == per.len() {
                out.push(IntersectionTuple { points: cur.clone() });
                return;
            }
            for &(v, j) in &per[i] {
                if !used[j] {
                    used[j] = true;
                    cur.push(v);
                    rec(i + 1, per, used, cur, out);
                    cur.pop();
                    used[j] = false;
                }
            }
        }
        rec(0, &per_curve, &mut used, &mut cur, &mut out);
        out.sort();
        Ok(out)
    }

    /// Same surface with the opposite orientation, labels untouched.
    pub fn reversed(&self) -> PointedMultiDiagram {
        let s = &self.surface;
        let vertices = s
            .vertices
            .iter()
            .map(|v| Vertex {
                ends: [v.ends[3], v.ends[2], v.ends[1], v.ends[0]],
                corners: [v.corners[2], v.corners[1], v.corners[0], v.corners[3]],
            })
            .collect();
        let faces = s
            .faces
            .iter()
            .map(|f| Face {
                cycles: f
                    .cycles
                    .iter()
                    .map(|c| c.iter().rev().map(|d| d.rev()).collect())
                    .collect(),
                euler: f.euler,
            })
            .collect();
        let surface = CombinatorialSurface { genus: s.genus, vertices, edges: s.edges.clone(), faces };
        PointedMultiDiagram::new(surface, self.families.clone(), self.basepoint)
            .expect("orientation reversal preserves validity")
    }

    /// Relabels families through `map` (labels not in the map are dropped).
    pub fn relabeled(&self, map: &[(Family, Family)]) -> PointedMultiDiagram {
        let mut fam = BTreeMap::new();
        for &(from, to) in map {
            if let Some(c) = self.families.get(&from) {
                fam.insert(to, c.clone());
            }
        }
        PointedMultiDiagram::new(self.surface.clone(), fam, self.basepoint).expect("relabeling preserves validity")
    }

    /// The conjugate diagram `(-Σ, β, α, z)`.
    pub fn conjugate(&self) -> Result<PointedMultiDiagram, SurfaceError> {
        if self.families.len() != 2 {
            return Err(SurfaceError::ArityMismatch { expected: 2, found: self.families.len() });
        }
        let l = self.labels();
        Ok(self.reversed().relabeled(&[(l[0], l[1]), (l[1], l[0])]))
    }

    /// Restriction to a subset of families.
    pub fn sub_diagram(&self, keep: &[Family]) -> Result<PointedMultiDiagram, SurfaceError> {
        let map: Vec<(Family, Family)> = keep.iter().map(|&f| (f, f)).collect();
        for &f in keep {
            self.family_curves(f)?;
        }
        Ok(self.relabeled(&map))
    }
}

fn analyze(
    s: &CombinatorialSurface,
    families: &BTreeMap<Family, Vec<CurveId>>,
    basepoint: FaceId,
) -> (Option<Topology>, Vec<SurfaceError>) {
    let mut errs = Vec::new();
    let nv = s.vertices.len();
    let ne = s.edges.len();
    let nf = s.faces.len();
    // references
    for (i, v) in s.vertices.iter().enumerate() {
        for d in v.ends {
            if d.edge >= ne {
                errs.push(dangling(format!("vertex {i} end {d}")));
            }
        }
        for f in v.corners {
            if f >= nf {
                errs.push(dangling(format!("vertex {i} corner face {f}")));
            }
        }
    }
    for (i, e) in s.edges.iter().enumerate() {
        for v in [e.from, e.to].into_iter().flatten() {
            if v >= nv {
                errs.push(dangling(format!("edge {i} vertex {v}")));
            }
        }
        if e.from.is_some() != e.to.is_some() {
            errs.push(dangling(format!("edge {i} has exactly one endpoint")));
        }
    }
    for (i, f) in s.faces.iter().enumerate() {
        for c in &f.cycles {
            for d in c {
                if d.edge >= ne {
                    errs.push(dangling(format!("face {i} dart {d}")));
                }
            }
        }
    }
    if basepoint >= nf {
        errs.push(dangling(format!("basepoint face {basepoint}")));
    }
    if !errs.is_empty() {
        return (None, errs);
    }
    // ends agree with edge endpoints
    for (i, v) in s.vertices.iter().enumerate() {
        for d in v.ends {
            let e = &s.edges[d.edge];
            let ok = if d.forward { e.from == Some(i) } else { e.to == Some(i) };
            if !ok {
                errs.push(dangling(format!("vertex {i} end {d} disagrees with edge endpoints")));
            }
        }
        let set: BTreeSet<Dart> = v.ends.iter().copied().collect();
        if set.len() != 4 {
            errs.push(dangling(format!("vertex {i} repeats an end")));
        }
    }
    for (i, e) in s.edges.iter().enumerate() {
        if let (Some(a), Some(b)) = (e.from, e.to) {
            if !s.vertices[a].ends.contains(&Dart::fwd(i)) || !s.vertices[b].ends.contains(&Dart::bwd(i)) {
                errs.push(dangling(format!("edge {i} missing from its vertex rotation")));
            }
        }
    }
    if !errs.is_empty() {
        return (None, errs);
    }
    // transverse crossings: opposite ends on one curve, running straight through
    let mut vertex_curves = Vec::with_capacity(nv);
    for (i, v) in s.vertices.iter().enumerate() {
        let c = |j: usize| s.edges[v.ends[j].edge].curve;
        if c(0) != c(2) || c(1) != c(3) || c(0) == c(1) {
            errs.push(SurfaceError::FamilyOverlap { what: format!("vertex {i} is not a transverse crossing of two curves") });
        }
        if v.ends[0].forward == v.ends[2].forward || v.ends[1].forward == v.ends[3].forward {
            errs.push(dangling(format!("vertex {i}: a curve does not pass straight through")));
        }
        vertex_curves.push((c(0), c(1)));
    }
    // faces: every dart once, corners consistent
    let mut left = vec![usize::MAX; ne];
    let mut right = vec![usize::MAX; ne];
    for (fi, f) in s.faces.iter().enumerate() {
        for c in &f.cycles {
            for (k, &d) in c.iter().enumerate() {
                let slot = if d.forward { &mut left[d.edge] } else { &mut right[d.edge] };
                if *slot != usize::MAX {
                    errs.push(dangling(format!("dart {d} appears in two face cycles")));
                }
                *slot = fi;
                let next = c[(k + 1) % c.len()];
                match arrival(&s.vertices, &s.edges, d) {
                    None => {
                        if c.len() != 1 {
                            errs.push(dangling(format!("face {fi}: vertex-free dart {d} in a longer cycle")));
                        }
                    }
                    Some((v, i)) => {
                        let expect = s.vertices[v].ends[(i + 3) % 4];
                        if expect != next {
                            errs.push(dangling(format!("face {fi}: dart {next} does not follow {d}")));
                        }
                        if s.vertices[v].corners[(i + 3) % 4] != fi {
                            errs.push(dangling(format!("vertex {v} corner {} should be face {fi}", (i + 3) % 4)));
                        }
                    }
                }
            }
        }
    }
    for e in 0..ne {
        if left[e] == usize::MAX || right[e] == usize::MAX {
            errs.push(dangling(format!("edge {e} side not covered by any face")));
        }
    }
    if !errs.is_empty() {
        return (None, errs);
    }
    // curves: closed oriented cycles
    let ncurves = s.edges.iter().map(|e| e.curve + 1).max().unwrap_or(0);
    let mut curve_edges = vec![Vec::new(); ncurves];
    let mut counts = vec![0usize; ncurves];
    for e in &s.edges {
        counts[e.curve] += 1;
    }
    for c in 0..ncurves {
        let Some(start) = s.edges.iter().position(|e| e.curve == c) else {
            errs.push(dangling(format!("curve {c} has no edges")));
            continue;
        };
        let mut cur = start;
        loop {
            curve_edges[c].push(cur);
            let Some(v) = s.edges[cur].to else { break };
            let vx = &s.vertices[v];
            let i = vx.ends.iter().position(|&d| d == Dart::bwd(cur)).unwrap();
            let nd = vx.ends[(i + 2) % 4];
            cur = nd.edge;
            if cur == start || curve_edges[c].len() > ne {
                break;
            }
        }
        if curve_edges[c].len() != counts[c] {
            errs.push(dangling(format!("curve {c} does not form a single closed cycle")));
        }
    }
    let mut curve_family = vec![None; ncurves];
    for (&f, cs) in families {
        for &c in cs {
            if c >= ncurves {
                errs.push(dangling(format!("family {f} curve {c}")));
                continue;
            }
            if let Some(g) = curve_family[c] {
                errs.push(SurfaceError::FamilyOverlap { what: format!("curve {c} in families {g} and {f}") });
            }
            curve_family[c] = Some(f);
        }
    }
    if !errs.is_empty() {
        return (None, errs);
    }
    let topo = Topology { left, right, curve_family, curve_edges, vertex_curves };
    errs.extend(global_checks(s, families, &topo));
    (Some(topo), errs)
}

fn global_checks(s: &CombinatorialSurface, families: &BTreeMap<Family, Vec<CurveId>>, t: &Topology) -> Vec<SurfaceError> {
    let mut errs = Vec::new();
    let (found, expected) = euler_numbers(s);
    if found != expected {
        errs.push(SurfaceError::EulerMismatch { found, expected });
    }
    for (&f, cs) in families {
        if cs.len() != s.genus {
            errs.push(SurfaceError::IndependenceFailure { family: f, rank: cs.len().min(s.genus), genus: s.genus });
            continue;
        }
        for (v, &(a, b)) in t.vertex_curves.iter().enumerate() {
            if t.curve_family[a] == Some(f) && t.curve_family[b] == Some(f) {
                errs.push(SurfaceError::FamilyOverlap { what: format!("curves {a} and {b} of family {f} meet at vertex {v}") });
            }
        }
        let rank = family_rank(s, cs, t);
        if rank < s.genus {
            errs.push(SurfaceError::IndependenceFailure { family: f, rank, genus: s.genus });
        }
    }
    errs
}

/// `(V - E + Σχ, 2 - 2g)`; vertex-free circle edges contribute nothing.
fn euler_numbers(s: &CombinatorialSurface) -> (i64, i64) {
    let v = s.vertices.len() as i64;
    let e = s.edges.iter().filter(|e| e.from.is_some()).count() as i64;
    let chi: i64 = s.faces.iter().map(|f| f.euler).sum();
    (v - e + chi, 2 - 2 * s.genus as i64)
}

/// Rank in `H_1(Σ)` of pairwise disjoint curves: `k` minus the number of extra
/// components their union cuts the surface into.
fn family_rank(s: &CombinatorialSurface, cs: &[CurveId], t: &Topology) -> usize {
    let nf = s.faces.len();
    let mut parent: Vec<usize> = (0..nf).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for (e, edge) in s.edges.iter().enumerate() {
        if !cs.contains(&edge.curve) {
            let (a, b) = (find(&mut parent, t.left[e]), find(&mut parent, t.right[e]));
            parent[a] = b;
        }
    }
    let comps = (0..nf).filter(|&f| find(&mut parent, f) == f).count();
    cs.len() + 1 - comps.min(cs.len() + 1)
}

/// Lists every violated invariant.
pub fn validate_parts(
    s: &CombinatorialSurface,
    families: &BTreeMap<Family, Vec<CurveId>>,
    basepoint: FaceId,
) -> ValidationReport {
    let (_, errs) = analyze(s, families, basepoint);
    let (found, expected) = euler_numbers(s);
    ValidationReport {
        valid: errs.is_empty(),
        vertices: s.vertices.len(),
        edges: s.edges.len(),
        euler_sum: found,
        expected,
        violations: errs.iter().map(|e| e.to_string()).collect(),
    }
}

/// Builds faces from a rotation system: `groups` lists, for each face, its
/// cycles (indices into the traced cycles) and Euler characteristic.
pub fn assemble(
    genus: usize,
    ends: Vec<[Dart; 4]>,
    edges: Vec<Edge>,
    group: impl FnOnce(&[Vec<Dart>]) -> Vec<(Vec<usize>, i64)>,
) -> CombinatorialSurface {
    let mut vertices: Vec<Vertex> = ends.into_iter().map(|ends| Vertex { ends, corners: [0; 4] }).collect();
    let cycles = trace_cycles(&vertices, &edges);
    let groups = group(&cycles);
    let mut faces = Vec::new();
    for (fi, (ids, euler)) in groups.iter().enumerate() {
        for &c in ids {
            for &d in &cycles[c] {
                if let Some((v, i)) = arrival(&vertices, &edges, d) {
                    vertices[v].corners[(i + 3) % 4] = fi;
                }
            }
        }
        faces.push(Face { cycles: ids.iter().map(|&c| cycles[c].clone()).collect(), euler: *euler });
    }
    CombinatorialSurface { genus, vertices, edges, faces }
}

/// Face containing a dart's left side in an assembled surface.
pub fn face_of_dart(s: &CombinatorialSurface, d: Dart) -> Option<FaceId> {
    s.faces.iter().position(|f| f.cycles.iter().any(|c| c.contains(&d)))
}

/// Connected sum at the basepoints: the two basepoint faces merge into one
/// face with Euler characteristic `χ₁ + χ₂ - 2`.
pub fn connected_sum(a: &PointedMultiDiagram, b: &PointedMultiDiagram) -> PointedMultiDiagram {
    let (sa, sb) = (&a.surface, &b.surface);
    let (nv, ne, nc) = (sa.vertices.len(), sa.edges.len(), a.num_curves());
    // faces of b: basepoint merges into a's basepoint, others shift
    let mut fmap = Vec::new();
    let mut next = sa.faces.len();
    for f in 0..sb.faces.len() {
        if f == b.basepoint {
            fmap.push(a.basepoint);
        } else {
            fmap.push(next);
            next += 1;
        }
    }
    let sh = |d: Dart| Dart { edge: d.edge + ne, forward: d.forward };
    let mut vertices = sa.vertices.clone();
    for v in &sb.vertices {
        vertices.push(Vertex { ends: v.ends.map(sh), corners: v.corners.map(|f| fmap[f]) });
    }
    let mut edges = sa.edges.clone();
    for e in &sb.edges {
        edges.push(Edge { curve: e.curve + nc, from: e.from.map(|v| v + nv), to: e.to.map(|v| v + nv) });
    }
    let mut faces = sa.faces.clone();
    for (f, face) in sb.faces.iter().enumerate() {
        let cycles: Vec<Vec<Dart>> = face.cycles.iter().map(|c| c.iter().map(|&d| sh(d)).collect()).collect();
        if f == b.basepoint {
            let z = &mut faces[a.basepoint];
            z.cycles.extend(cycles);
            z.euler += face.euler - 2;
        } else {
            faces.push(Face { cycles, euler: face.euler });
        }
    }
    let mut families = a.families.clone();
    for (&f, cs) in &b.families {
        families.entry(f).or_default().extend(cs.iter().map(|c| c + nc));
    }
    let surface = CombinatorialSurface { genus: sa.genus + sb.genus, vertices, edges, faces };
    PointedMultiDiagram::new(surface, families, a.basepoint).expect("connected sum of valid diagrams")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dart_signed_roundtrip() {
        for s in [1i64, -1, 7, -12] {
            assert_eq!(Dart::from_signed(s).unwrap().signed(), s);
        }
        assert!(Dart::from_signed(0).is_none());
    }

    #[test]
    fn standard_one_is_valid() {
        let d = standard_diagram(1);
        let r = d.validate();
        assert!(r.valid, "{:?}", r.violations);
        assert_eq!((r.vertices, r.edges), (2, 4));
        assert_eq!(r.euler_sum, 0);
        let mut chis: Vec<i64> = d.surface.faces.iter().map(|f| f.euler).collect();
        chis.sort();
        assert_eq!(chis, vec![0, 1, 1]);
    }

    #[test]
    fn parallel_family_fails_independence() {
        let d = standard_diagram(2);
        let mut fam = d.families.clone();
        let alphas = fam[&Family::Alpha].clone();
        // both alpha slots pointing at curves of the first summand breaks disjointness
        fam.insert(Family::Alpha, vec![alphas[0], alphas[0]]);
        let rep = validate_parts(&d.surface, &fam, d.basepoint);
        assert!(!rep.valid);
    }

    #[test]
    fn tuples_of_standard_diagrams() {
        for n in 0..=4 {
            let d = standard_diagram(n);
            assert_eq!(d.enumerate_tuples(Family::Alpha, Family::Beta).unwrap().len(), 1 << n);
        }
    }

    #[test]
    fn reversal_is_involutive() {
        let d = standard_diagram(2);
        assert_eq!(d.reversed().reversed(), d);
        let c = d.conjugate().unwrap().conjugate().unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn missing_family() {
        let d = standard_diagram(1);
        assert_eq!(
            d.enumerate_tuples(Family::Alpha, Family::Gamma).unwrap_err(),
            SurfaceError::MissingFamily(Family::Gamma)
        );
    }

    #[test]
    fn conjugate_refuses_triples() {
        let t = mcp_triple();
        assert!(matches!(t.conjugate(), Err(SurfaceError::ArityMismatch { .. })));
    }
}
