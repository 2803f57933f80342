//! Exact construction of genus-1 diagrams from piecewise-linear curves on
//! `R^2 / Z^2`.

use super::{assemble, face_of_dart, Dart, Edge, Family, PointedMultiDiagram, SurfaceError};
use crate::linalg::Rat;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

pub type Pt = (Rat, Rat);

fn r(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

fn sub(a: Pt, b: Pt) -> Pt {
    (a.0 - b.0, a.1 - b.1)
}
fn add(a: Pt, b: Pt) -> Pt {
    (a.0 + b.0, a.1 + b.1)
}
fn scale(a: Pt, s: Rat) -> Pt {
    (a.0 * s, a.1 * s)
}
fn cross(a: Pt, b: Pt) -> Rat {
    a.0 * b.1 - a.1 * b.0
}
fn frac(x: Rat) -> Rat {
    x - Rat::from_integer(x.floor().to_integer())
}
fn reduce(p: Pt) -> Pt {
    (frac(p.0), frac(p.1))
}

/// A closed piecewise-linear curve: a start point and successive
/// displacements whose sum is a primitive integer vector.
#[derive(Clone, Debug)]
pub struct PlCurve {
    pub family: Family,
    pub start: Pt,
    pub steps: Vec<Pt>,
}

/// A straight line `{p x - q y = c mod 1}` with direction `(q, p)`.
#[derive(Clone, Copy, Debug)]
pub struct LineSpec {
    pub p: i64,
    pub q: i64,
    pub offset: Rat,
    pub family: Family,
}

impl LineSpec {
    pub fn new(p: i64, q: i64, offset: Rat, family: Family) -> LineSpec {
        LineSpec { p, q, offset, family }
    }

    pub fn to_curve(self) -> Result<PlCurve, SurfaceError> {
        if self.p.gcd(&self.q) != 1 {
            return Err(SurfaceError::NonPrimitiveSlope { p: self.p, q: self.q });
        }
        let start = if self.q != 0 {
            (Rat::zero(), frac(-self.offset / Rat::from_integer(self.q)))
        } else {
            (frac(self.offset / Rat::from_integer(self.p)), Rat::zero())
        };
        Ok(PlCurve {
            family: self.family,
            start,
            steps: vec![(Rat::from_integer(self.q), Rat::from_integer(self.p))],
        })
    }
}

/// Positions of the built cells, kept for geometric cross-checks.
#[derive(Clone, Debug)]
pub struct TorusGeometry {
    pub vertex_points: Vec<Pt>,
    /// Lifted polyline of each edge, from its start vertex to its end vertex.
    pub edge_paths: Vec<Vec<Pt>>,
    pub basepoint: Pt,
}

impl TorusGeometry {
    pub fn edge_displacement(&self, e: usize) -> Pt {
        let p = &self.edge_paths[e];
        sub(*p.last().unwrap(), p[0])
    }
}

#[derive(Clone, Debug, Default)]
pub struct TorusBuilder {
    pub curves: Vec<PlCurve>,
    pub basepoint: Option<Pt>,
}

struct Crossing {
    curves: [(usize, usize, Rat); 2],
    point: Pt,
}

impl TorusBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn line(mut self, p: i64, q: i64, offset: Rat, family: Family) -> Result<Self, SurfaceError> {
        self.curves.push(LineSpec::new(p, q, offset, family).to_curve()?);
        Ok(self)
    }

    pub fn curve(mut self, c: PlCurve) -> Self {
        self.curves.push(c);
        self
    }

    pub fn basepoint(mut self, x: Rat, y: Rat) -> Self {
        self.basepoint = Some((x, y));
        self
    }

    fn points(&self, c: usize) -> Vec<Pt> {
        let cv = &self.curves[c];
        let mut pts = vec![cv.start];
        for &s in &cv.steps {
            pts.push(add(*pts.last().unwrap(), s));
        }
        pts
    }

    pub fn build(&self) -> Result<PointedMultiDiagram, SurfaceError> {
        self.build_with_geometry().map(|x| x.0)
    }

    pub fn build_with_geometry(&self) -> Result<(PointedMultiDiagram, TorusGeometry), SurfaceError> {
        let nongeneric = |w: &str| SurfaceError::NonGenericArrangement { what: w.to_string() };
        let nc = self.curves.len();
        let pts: Vec<Vec<Pt>> = (0..nc).map(|c| self.points(c)).collect();
        for (c, p) in pts.iter().enumerate() {
            let d = sub(*p.last().unwrap(), p[0]);
            if !d.0.is_integer() || !d.1.is_integer() {
                return Err(nongeneric(&format!("curve {c} does not close up")));
            }
            let (a, b) = (d.0.to_integer(), d.1.to_integer());
            if a.gcd(&b) != 1 {
                return Err(SurfaceError::NonPrimitiveSlope { p: b, q: a });
            }
        }
        // all pairwise segment crossings modulo Z^2
        let mut crossings: Vec<Crossing> = Vec::new();
        for a in 0..nc {
            for sa in 0..self.curves[a].steps.len() {
                for b in a..nc {
                    for sb in 0..self.curves[b].steps.len() {
                        if (b, sb) < (a, sa) {
                            continue;
                        }
                        let (p0, p1) = (pts[a][sa], pts[a][sa + 1]);
                        let (q0, q1) = (pts[b][sb], pts[b][sb + 1]);
                        for t in translations(p0, p1, q0, q1) {
                            if a == b && sa == sb && t == (0, 0) {
                                continue;
                            }
                            let off = (Rat::from_integer(t.0), Rat::from_integer(t.1));
                            let (c0, c1) = (add(q0, off), add(q1, off));
                            let u = sub(p1, p0);
                            let w = sub(c1, c0);
                            let den = cross(u, w);
                            if den.is_zero() {
                                if cross(u, sub(c0, p0)).is_zero() && overlap_collinear(p0, p1, c0, c1) {
                                    return Err(SurfaceError::CoincidentCurves { a, b });
                                }
                                continue;
                            }
                            let lam = cross(sub(c0, p0), w) / den;
                            let mu = cross(sub(c0, p0), u) / den;
                            let zero = Rat::zero();
                            let one = Rat::one();
                            if lam < zero || lam > one || mu < zero || mu > one {
                                continue;
                            }
                            let at_end = |x: Rat| x == zero || x == one;
                            if at_end(lam) || at_end(mu) {
                                if a == b {
                                    // joints between consecutive segments of one curve
                                    continue;
                                }
                                return Err(nongeneric(&format!("curves {a} and {b} cross at a breakpoint")));
                            }
                            if a == b {
                                return Err(nongeneric(&format!("curve {a} is not embedded")));
                            }
                            crossings.push(Crossing {
                                curves: [(a, sa, lam), (b, sb, mu)],
                                point: reduce(add(p0, scale(u, lam))),
                            });
                        }
                    }
                }
            }
        }
        for i in 0..crossings.len() {
            for j in i + 1..crossings.len() {
                if crossings[i].point == crossings[j].point {
                    return Err(nongeneric("three curves through one point"));
                }
            }
        }
        // order crossings along each curve
        let mut along: Vec<Vec<(usize, Rat, usize)>> = vec![Vec::new(); nc];
        for (k, x) in crossings.iter().enumerate() {
            for &(c, s, t) in &x.curves {
                along[c].push((s, t, k));
            }
        }
        for l in along.iter_mut() {
            l.sort();
        }
        let mut edges = Vec::new();
        let mut paths = Vec::new();
        // out_edge[vertex][slot], in_edge[vertex][slot]; slot 0 for first curve of the crossing
        let mut out_edge = vec![[usize::MAX; 2]; crossings.len()];
        let mut in_edge = vec![[usize::MAX; 2]; crossings.len()];
        let slot = |k: usize, c: usize| if crossings[k].curves[0].0 == c { 0 } else { 1 };
        let pos = |c: usize, s: usize, t: Rat| add(pts[c][s], scale(sub(pts[c][s + 1], pts[c][s]), t));
        for c in 0..nc {
            let l = &along[c];
            let nseg = self.curves[c].steps.len();
            let total = sub(pts[c][nseg], pts[c][0]);
            if l.is_empty() {
                edges.push(Edge { curve: c, from: None, to: None });
                paths.push(pts[c].clone());
                continue;
            }
            for i in 0..l.len() {
                let (s0, t0, k0) = l[i];
                let (s1, t1, k1) = l[(i + 1) % l.len()];
                let mut path = vec![pos(c, s0, t0)];
                let wraps = i + 1 == l.len();
                if !wraps {
                    for s in s0 + 1..=s1 {
                        path.push(pts[c][s]);
                    }
                    path.push(pos(c, s1, t1));
                } else {
                    for s in s0 + 1..=nseg {
                        path.push(pts[c][s]);
                    }
                    for s in 1..=s1 {
                        path.push(add(pts[c][s], total));
                    }
                    path.push(add(pos(c, s1, t1), total));
                }
                path.dedup();
                let e = edges.len();
                edges.push(Edge { curve: c, from: Some(k0), to: Some(k1) });
                paths.push(path);
                out_edge[k0][slot(k0, c)] = e;
                in_edge[k1][slot(k1, c)] = e;
            }
        }
        let mut ends = Vec::new();
        for (k, x) in crossings.iter().enumerate() {
            let (ca, sa, _) = x.curves[0];
            let (cb, sb, _) = x.curves[1];
            let u = sub(pts[ca][sa + 1], pts[ca][sa]);
            let w = sub(pts[cb][sb + 1], pts[cb][sb]);
            let (ao, ai) = (Dart::fwd(out_edge[k][0]), Dart::bwd(in_edge[k][0]));
            let (bo, bi) = (Dart::fwd(out_edge[k][1]), Dart::bwd(in_edge[k][1]));
            ends.push(if cross(u, w) > Rat::zero() { [ao, bo, ai, bi] } else { [ao, bi, ai, bo] });
        }
        let disp: Vec<Pt> = paths.iter().map(|p| sub(*p.last().unwrap(), p[0])).collect();
        let mut essential_err = None;
        let surface = assemble(1, ends, edges, |cycles| {
            let mut groups = Vec::new();
            let mut essential = Vec::new();
            for (i, c) in cycles.iter().enumerate() {
                let mut t = (Rat::zero(), Rat::zero());
                for d in c {
                    let v = disp[d.edge];
                    t = if d.forward { add(t, v) } else { sub(t, v) };
                }
                if t.0.is_zero() && t.1.is_zero() {
                    groups.push((vec![i], 1));
                } else {
                    essential.push(i);
                }
            }
            match essential.len() {
                0 => {}
                2 => groups.push((essential, 0)),
                n => essential_err = Some(n),
            }
            groups
        });
        if let Some(n) = essential_err {
            return Err(nonggeneric_count(n));
        }
        let geom = TorusGeometry {
            vertex_points: crossings.iter().map(|x| x.point).collect(),
            edge_paths: paths,
            basepoint: self.basepoint.unwrap_or((r(1, 2), r(1, 2))),
        };
        let z = locate(&surface, &geom, geom.basepoint)?;
        let mut families: BTreeMap<Family, Vec<usize>> = BTreeMap::new();
        for (c, cv) in self.curves.iter().enumerate() {
            families.entry(cv.family).or_default().push(c);
        }
        let d = PointedMultiDiagram::new(surface, families, z)?;
        Ok((d, geom))
    }
}

fn nonggeneric_count(n: usize) -> SurfaceError {
    SurfaceError::NonGenericArrangement { what: format!("{n} essential boundary cycles; at most one annular face is supported") }
}

fn overlap_collinear(p0: Pt, p1: Pt, c0: Pt, c1: Pt) -> bool {
    let u = sub(p1, p0);
    let dotp = |a: Pt| a.0 * u.0 + a.1 * u.1;
    let len = dotp(u);
    let (s0, s1) = (dotp(sub(c0, p0)) / len, dotp(sub(c1, p0)) / len);
    let (lo, hi) = if s0 < s1 { (s0, s1) } else { (s1, s0) };
    hi > Rat::zero() && lo < Rat::one()
}

fn bbox(a: Pt, b: Pt) -> (Rat, Rat, Rat, Rat) {
    (a.0.min(b.0), a.0.max(b.0), a.1.min(b.1), a.1.max(b.1))
}

/// Integer translations `t` for which segment `q + t` can meet segment `p`.
fn translations(p0: Pt, p1: Pt, q0: Pt, q1: Pt) -> Vec<(i64, i64)> {
    let (ax0, ax1, ay0, ay1) = bbox(p0, p1);
    let (bx0, bx1, by0, by1) = bbox(q0, q1);
    let lo_x = (ax0 - bx1).floor().to_integer() - 1;
    let hi_x = (ax1 - bx0).ceil().to_integer() + 1;
    let lo_y = (ay0 - by1).floor().to_integer() - 1;
    let hi_y = (ay1 - by0).ceil().to_integer() + 1;
    let mut out = Vec::new();
    for x in lo_x..=hi_x {
        for y in lo_y..=hi_y {
            out.push((x, y));
        }
    }
    out
}

/// Face containing a point, by casting a ray to the nearest curve.
pub fn locate(surface: &super::CombinatorialSurface, geom: &TorusGeometry, z: Pt) -> Result<usize, SurfaceError> {
    let dirs = [(7, 3), (5, -11), (-13, 4), (3, 17), (-2, -9), (19, 6)];
    for &(dx, dy) in &dirs {
        let rd = (Rat::from_integer(dx), Rat::from_integer(dy));
        let mut best: Option<(Rat, Dart)> = None;
        let mut degenerate = false;
        for (e, path) in geom.edge_paths.iter().enumerate() {
            for w in path.windows(2) {
                let far = add(z, scale(rd, Rat::from_integer(4)));
                for t in translations(z, far, w[0], w[1]) {
                    let off = (Rat::from_integer(t.0), Rat::from_integer(t.1));
                    let (c0, c1) = (add(w[0], off), add(w[1], off));
                    let v = sub(c1, c0);
                    let den = cross(rd, v);
                    if den.is_zero() {
                        continue;
                    }
                    let s = cross(sub(c0, z), v) / den;
                    let mu = cross(sub(c0, z), rd) / den;
                    if s <= Rat::zero() || mu < Rat::zero() || mu > Rat::one() {
                        continue;
                    }
                    if mu.is_zero() || mu == Rat::one() {
                        degenerate = true;
                        continue;
                    }
                    let dart = if cross(rd, v) > Rat::zero() { Dart::fwd(e) } else { Dart::bwd(e) };
                    if best.map_or(true, |(bs, _)| s < bs) {
                        best = Some((s, dart));
                    }
                }
            }
        }
        if degenerate {
            continue;
        }
        if let Some((_, d)) = best {
            return face_of_dart(surface, d).ok_or(SurfaceError::DanglingReference { what: "ray hit".into() });
        }
    }
    Err(SurfaceError::NonGenericArrangement { what: "basepoint could not be located".into() })
}
