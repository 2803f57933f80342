//! Two-chains on a diagram: boundaries, point measures, periodic domains,
//! and the corner-boundary linear system connecting intersection tuples.

mod cover;
mod product;

pub use cover::{CoverError, LiftedRegion, UniversalCover};
pub use product::{product_decomposition, ProductPart};

use crate::linalg::{self, hermite, mat_vec, sign_normalize, smith, IMat, Rat, Smith};
use crate::surface::{CurveId, Dart, Family, IntersectionTuple, PointedMultiDiagram, SurfaceError, VertexId};
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("NoClass: epsilon = {epsilon:?} in {orders:?}")]
    NoClass { epsilon: Vec<i64>, orders: Vec<i64> },
    #[error("NotCommensurable: difference is not in Z[Σ] + periodic lattice")]
    NotCommensurable,
    #[error("CornerMismatch: {0}")]
    CornerMismatch(String),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

impl DomainError {
    pub fn name(&self) -> &'static str {
        match self {
            DomainError::NoClass { .. } => "NoClass",
            DomainError::NotCommensurable => "NotCommensurable",
            DomainError::CornerMismatch(_) => "CornerMismatch",
            DomainError::Surface(e) => e.name(),
        }
    }
}

/// Corner data of a domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Corners {
    Periodic,
    /// `φ ∈ π₂(x, y)` for the ordered pair.
    Disk { pair: (Family, Family), x: IntersectionTuple, y: IntersectionTuple },
    /// `ψ ∈ π₂(x, y, w)` with `x ∈ T_a∩T_b`, `y ∈ T_b∩T_c`, `w ∈ T_a∩T_c`.
    Triangle { fams: [Family; 3], x: IntersectionTuple, y: IntersectionTuple, w: IntersectionTuple },
}

/// A two-chain with its corner data; multiplicities are indexed by face.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Domain {
    pub chain: Vec<i64>,
    pub corners: Corners,
}

impl Domain {
    pub fn n_z(&self, d: &PointedMultiDiagram) -> i64 {
        self.chain[d.basepoint]
    }
    pub fn is_positive(&self) -> bool {
        self.chain.iter().all(|&m| m >= 0)
    }
    pub fn neg(&self) -> Vec<i64> {
        self.chain.iter().map(|x| -x).collect()
    }
}

pub fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}
pub fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}
pub fn scale(a: &[i64], k: i64) -> Vec<i64> {
    a.iter().map(|x| x * k).collect()
}

/// The fundamental class `[Σ]`.
pub fn sigma(d: &PointedMultiDiagram) -> Vec<i64> {
    vec![1; d.num_faces()]
}

/// Coefficient of `+e` in `∂D`: left multiplicity minus right multiplicity.
pub fn edge_boundary(d: &PointedMultiDiagram, chain: &[i64]) -> Vec<i64> {
    (0..d.num_edges()).map(|e| chain[d.left_face(e)] - chain[d.right_face(e)]).collect()
}

/// Sum of the four corner multiplicities at `v`, divided by four.
pub fn point_measure(d: &PointedMultiDiagram, chain: &[i64], v: VertexId) -> Rat {
    let s: i64 = d.surface.vertices[v].corners.iter().map(|&f| chain[f]).sum();
    Rat::new(s, 4)
}

pub fn tuple_measure(d: &PointedMultiDiagram, chain: &[i64], t: &IntersectionTuple) -> Rat {
    t.points.iter().map(|&v| point_measure(d, chain, v)).sum()
}

/// Number of vertex corners occupied by each face.
pub fn face_corner_counts(d: &PointedMultiDiagram) -> Vec<i64> {
    let mut c = vec![0i64; d.num_faces()];
    for v in &d.surface.vertices {
        for &f in &v.corners {
            c[f] += 1;
        }
    }
    c
}

/// `e(D) = Σ n_f (χ_f - corners_f / 4)`.
pub fn euler_measure(d: &PointedMultiDiagram, chain: &[i64]) -> Rat {
    let corners = face_corner_counts(d);
    chain
        .iter()
        .enumerate()
        .map(|(f, &m)| Rat::from_integer(m) * (Rat::from_integer(d.surface.faces[f].euler) - Rat::new(corners[f], 4)))
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryDecomposition {
    /// Per family, curve id and its full-curve coefficient.
    pub full: BTreeMap<Family, Vec<(CurveId, i64)>>,
    /// Signed edge coefficients not absorbed into full curves.
    pub residual: Vec<(Dart, i64)>,
}

impl BoundaryDecomposition {
    /// `Σ |coefficient|` over full curves.
    pub fn full_count(&self) -> i64 {
        self.full.values().flatten().map(|(_, c)| c.abs()).sum()
    }
}

pub fn boundary(d: &PointedMultiDiagram, chain: &[i64]) -> BoundaryDecomposition {
    let eb = edge_boundary(d, chain);
    let mut full: BTreeMap<Family, Vec<(CurveId, i64)>> = BTreeMap::new();
    let mut residual = Vec::new();
    for c in 0..d.num_curves() {
        let edges = d.curve_edges(c);
        let first = eb[edges[0]];
        let constant = edges.iter().all(|&e| eb[e] == first);
        if constant {
            if let Some(f) = d.curve_family(c) {
                full.entry(f).or_default().push((c, first));
                continue;
            }
        }
        for &e in edges {
            if eb[e] != 0 {
                residual.push((Dart::fwd(e), eb[e]));
            }
        }
    }
    BoundaryDecomposition { full, residual }
}

/// One constraint row: at vertex `v`, where both curves participate, the
/// curve of family `lower` runs from `e_in` to `e_out`. The other curve's row
/// is the negative of this one.
#[derive(Clone, Debug)]
struct Row {
    lower: Family,
    v: VertexId,
    e_in: usize,
    e_out: usize,
}

/// The corner-boundary system for a set of participating families.
#[derive(Clone, Debug)]
pub struct CornerSystem {
    pub families: Vec<Family>,
    /// Columns spanning chains with zero boundary on non-participating curves.
    k: Vec<Vec<i64>>,
    rows: Vec<Row>,
    /// Lattice of row vectors summing to zero along each curve.
    sums: Smith,
    smith: Smith,
    faces: usize,
    basepoint: usize,
}

impl CornerSystem {
    pub fn new(d: &PointedMultiDiagram, families: &[Family]) -> Result<CornerSystem, SurfaceError> {
        for &f in families {
            d.family_curves(f)?;
        }
        let nf = d.num_faces();
        let part = |f: Option<Family>| f.map_or(false, |f| families.contains(&f));
        let mut cons: IMat = Vec::new();
        for e in 0..d.num_edges() {
            if !part(d.edge_family(e)) {
                let mut row = vec![0; nf];
                row[d.left_face(e)] += 1;
                row[d.right_face(e)] -= 1;
                cons.push(row);
            }
        }
        let k: Vec<Vec<i64>> = if cons.is_empty() {
            (0..nf).map(|i| (0..nf).map(|j| i64::from(i == j)).collect()).collect()
        } else {
            smith(&cons, nf).kernel()
        };
        let rank_of = |f: Family| families.iter().position(|&x| x == f).unwrap();
        let mut rows = Vec::new();
        for v in 0..d.num_vertices() {
            let (a, b) = d.vertex_curves(v);
            let (fa, fb) = (d.curve_family(a), d.curve_family(b));
            if !part(fa) || !part(fb) {
                continue;
            }
            let (fa, fb) = (fa.unwrap(), fb.unwrap());
            let (c, lower) = if rank_of(fa) <= rank_of(fb) { (a, fa) } else { (b, fb) };
            let edges = d.curve_edges(c);
            let i = edges.iter().position(|&e| d.surface.edges[e].to == Some(v)).expect("curve through vertex");
            rows.push(Row { lower, v, e_in: edges[i], e_out: edges[(i + 1) % edges.len()] });
        }
        let mut csum: IMat = Vec::new();
        for &f in families {
            for &c in d.family_curves(f)? {
                csum.push(
                    rows.iter()
                        .map(|r| {
                            let (a, b) = d.vertex_curves(r.v);
                            if a != c && b != c {
                                0
                            } else if d.curve_family(c) == Some(r.lower) {
                                1
                            } else {
                                -1
                            }
                        })
                        .collect(),
                );
            }
        }
        let sums = smith(&csum, rows.len());
        let mut cols: Vec<Vec<i64>> = Vec::new();
        for kj in &k {
            let bd = |e: usize| kj[d.left_face(e)] - kj[d.right_face(e)];
            let vals: Vec<i64> = rows.iter().map(|r| bd(r.e_in) - bd(r.e_out)).collect();
            cols.push(sums.kernel_coords(&vals));
        }
        let dim = rows.len() - sums.rank();
        let m: IMat = (0..dim).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        let smith = smith(&m, k.len());
        Ok(CornerSystem { families: families.to_vec(), k, rows, sums, smith, faces: nf, basepoint: d.basepoint })
    }

    fn target(&self, weights: &BTreeMap<(Family, VertexId), i64>) -> Vec<i64> {
        let vals: Vec<i64> = self.rows.iter().map(|r| weights.get(&(r.lower, r.v)).copied().unwrap_or(0)).collect();
        self.sums.kernel_coords(&vals)
    }

    /// Chain solving the system with per-family targets `t_F`, where
    /// `a(e_in) - a(e_out) = t_F(v)` along each participating curve.
    fn solve_weights(&self, w: &BTreeMap<(Family, VertexId), i64>) -> Result<Vec<i64>, DomainError> {
        let b = self.target(w);
        match self.smith.solve(&b) {
            Some(y) => Ok(self.lift(&y)),
            None => Err(DomainError::NoClass { epsilon: self.smith.cokernel_class(&b), orders: self.smith.cokernel_orders() }),
        }
    }

    fn epsilon_weights(&self, w: &BTreeMap<(Family, VertexId), i64>) -> Vec<i64> {
        self.smith.cokernel_class(&self.target(w))
    }

    /// `ε(x, y)` for a two-family system.
    pub fn pair_epsilon(&self, d: &PointedMultiDiagram, x: &IntersectionTuple, y: &IntersectionTuple) -> Result<Vec<i64>, DomainError> {
        let w = pair_weights(d, self.families[0], self.families[1], x, y)?;
        Ok(self.epsilon_weights(&w))
    }

    /// A disk `φ ∈ π₂(x, y)` for a two-family system, not canonicalized.
    pub fn pair_domain(&self, d: &PointedMultiDiagram, x: &IntersectionTuple, y: &IntersectionTuple) -> Result<Domain, DomainError> {
        let (a, b) = (self.families[0], self.families[1]);
        let chain = self.solve_weights(&pair_weights(d, a, b, x, y)?)?;
        Ok(Domain { chain, corners: Corners::Disk { pair: (a, b), x: x.clone(), y: y.clone() } })
    }

    fn lift(&self, y: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.faces];
        for (j, kj) in self.k.iter().enumerate() {
            for f in 0..self.faces {
                out[f] += y[j] * kj[f];
            }
        }
        out
    }

    /// Orders of the obstruction group: torsion orders then zeros.
    pub fn obstruction_orders(&self) -> Vec<i64> {
        self.smith.cokernel_orders()
    }

    /// Canonical basis of periodic domains (`n_z = 0`, boundary a combination
    /// of full participating curves): Hermite form, first nonzero positive.
    pub fn periodic_basis(&self) -> Vec<Vec<i64>> {
        let ker = self.smith.kernel();
        let chains: Vec<Vec<i64>> = ker.iter().map(|y| self.lift(y)).collect();
        // impose n_z = 0 on span(chains)
        let zrow: IMat = vec![chains.iter().map(|c| c[self.basepoint]).collect()];
        let sub = if chains.is_empty() { vec![] } else { smith(&zrow, chains.len()).kernel() };
        let mut basis: Vec<Vec<i64>> = sub
            .iter()
            .map(|coef| {
                let mut v = vec![0i64; self.faces];
                for (i, c) in chains.iter().enumerate() {
                    for f in 0..self.faces {
                        v[f] += coef[i] * c[f];
                    }
                }
                v
            })
            .collect();
        basis = hermite(&basis, self.faces);
        for b in basis.iter_mut() {
            sign_normalize(b);
        }
        basis
    }
}

fn pair_weights(
    d: &PointedMultiDiagram,
    a: Family,
    b: Family,
    x: &IntersectionTuple,
    y: &IntersectionTuple,
) -> Result<BTreeMap<(Family, VertexId), i64>, DomainError> {
    // ∂∂_a = y - x, ∂∂_b = x - y
    let mut w = BTreeMap::new();
    add_points(d, &mut w, a, b, y, 1)?;
    add_points(d, &mut w, a, b, x, -1)?;
    Ok(w)
}

fn add_points(
    d: &PointedMultiDiagram,
    w: &mut BTreeMap<(Family, VertexId), i64>,
    a: Family,
    b: Family,
    t: &IntersectionTuple,
    sign: i64,
) -> Result<(), DomainError> {
    for &v in &t.points {
        if d.vertex_curve_in(v, a).is_none() || d.vertex_curve_in(v, b).is_none() {
            return Err(DomainError::CornerMismatch(format!("vertex {v} is not on {a} and {b}")));
        }
        *w.entry((a, v)).or_insert(0) += sign;
        *w.entry((b, v)).or_insert(0) -= sign;
    }
    Ok(())
}

/// Targets for `ψ ∈ π₂(x, y, w)`: `∂∂_a = w - x`, `∂∂_b = x - y`, `∂∂_c = y - w`.
fn triangle_weights(
    d: &PointedMultiDiagram,
    fams: [Family; 3],
    x: &IntersectionTuple,
    y: &IntersectionTuple,
    w: &IntersectionTuple,
) -> Result<BTreeMap<(Family, VertexId), i64>, DomainError> {
    let [a, b, c] = fams;
    let mut m = BTreeMap::new();
    // x in a∩b contributes -1 to a, +1 to b
    add_points(d, &mut m, b, a, x, 1)?;
    // y in b∩c: -1 to b, +1 to c
    add_points(d, &mut m, c, b, y, 1)?;
    // w in a∩c: +1 to a, -1 to c
    add_points(d, &mut m, a, c, w, 1)?;
    Ok(m)
}

/// Checks that a chain satisfies the corner system of its declared corners.
pub fn check_corners(d: &PointedMultiDiagram, dom: &Domain) -> bool {
    let (fams, w): (Vec<Family>, BTreeMap<(Family, VertexId), i64>) = match &dom.corners {
        Corners::Periodic => (d.labels(), BTreeMap::new()),
        Corners::Disk { pair, x, y } => match pair_weights(d, pair.0, pair.1, x, y) {
            Ok(w) => (vec![pair.0, pair.1], w),
            Err(_) => return false,
        },
        Corners::Triangle { fams, x, y, w } => match triangle_weights(d, *fams, x, y, w) {
            Ok(m) => (fams.to_vec(), m),
            Err(_) => return false,
        },
    };
    let eb = edge_boundary(d, &dom.chain);
    for e in 0..d.num_edges() {
        let part = d.edge_family(e).map_or(false, |f| fams.contains(&f));
        if !part && eb[e] != 0 {
            return false;
        }
    }
    for &f in &fams {
        for &c in d.family_curves(f).unwrap_or(&[]) {
            let edges = d.curve_edges(c);
            for i in 0..edges.len() {
                let (ei, eo) = (edges[i], edges[(i + 1) % edges.len()]);
                if let Some(v) = d.surface.edges[ei].to {
                    if eb[ei] - eb[eo] != w.get(&(f, v)).copied().unwrap_or(0) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Local sign of the crossing at `v`: `+1` when the second curve leaves
/// counterclockwise after the first.
pub fn crossing_sign(d: &PointedMultiDiagram, v: VertexId, first: CurveId) -> i64 {
    let ends = &d.surface.vertices[v].ends;
    let k = (0..4).find(|&k| ends[k].forward && d.surface.edges[ends[k].edge].curve == first).expect("curve leaves vertex");
    if ends[(k + 1) % 4].forward {
        1
    } else {
        -1
    }
}

/// Algebraic intersection matrix between the curves of two families.
pub fn intersection_matrix(d: &PointedMultiDiagram, a: Family, b: Family) -> Result<IMat, SurfaceError> {
    let (ca, cb) = (d.family_curves(a)?, d.family_curves(b)?);
    let mut m = vec![vec![0i64; cb.len()]; ca.len()];
    for v in d.crossings(a, b) {
        let (x, y) = (d.vertex_curve_in(v, a).unwrap(), d.vertex_curve_in(v, b).unwrap());
        let i = ca.iter().position(|&c| c == x).unwrap();
        let j = cb.iter().position(|&c| c == y).unwrap();
        m[i][j] += crossing_sign(d, v, x);
    }
    Ok(m)
}

/// Invariant factors of `H₁` of the two-family diagram: torsion orders, then
/// a zero per free summand.
pub fn h1_orders(d: &PointedMultiDiagram, a: Family, b: Family) -> Result<Vec<i64>, SurfaceError> {
    let m = intersection_matrix(d, a, b)?;
    Ok(smith(&m, d.family_curves(b)?.len()).cokernel_orders())
}

/// Lattice of periodic domains for a subset of families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicDomainLattice {
    pub families: Vec<Family>,
    pub basis: Vec<Vec<i64>>,
    pub rank: usize,
}

pub fn periodic_domain_basis(d: &PointedMultiDiagram, families: &[Family]) -> Result<PeriodicDomainLattice, SurfaceError> {
    let sys = CornerSystem::new(d, families)?;
    let basis = sys.periodic_basis();
    Ok(PeriodicDomainLattice { families: families.to_vec(), rank: basis.len(), basis })
}

/// Normalizes a connecting chain: `n_z` reduced into `[0, 1)` steps of `[Σ]`
/// and the remainder reduced against the echelon periodic basis.
fn canonicalize(d: &PointedMultiDiagram, chain: Vec<i64>, basis: &[Vec<i64>]) -> Vec<i64> {
    let nz = chain[d.basepoint];
    let mut c = sub(&chain, &scale(&sigma(d), nz));
    for b in basis {
        let Some(p) = b.iter().position(|&x| x != 0) else { continue };
        let q = c[p].div_euclid(b[p]);
        if q != 0 {
            c = sub(&c, &scale(b, q));
        }
    }
    c
}

/// A disk domain `φ ∈ π₂(x, y)` for the pair `(a, b)`, or the obstruction.
pub fn connect_pair(
    d: &PointedMultiDiagram,
    a: Family,
    b: Family,
    x: &IntersectionTuple,
    y: &IntersectionTuple,
) -> Result<Domain, DomainError> {
    let sys = CornerSystem::new(d, &[a, b])?;
    let w = pair_weights(d, a, b, x, y)?;
    let chain = sys.solve_weights(&w)?;
    let chain = canonicalize(d, chain, &sys.periodic_basis());
    Ok(Domain { chain, corners: Corners::Disk { pair: (a, b), x: x.clone(), y: y.clone() } })
}

/// A triangle domain `ψ ∈ π₂(x, y, w)`, or the obstruction.
pub fn connect_triangle(
    d: &PointedMultiDiagram,
    fams: [Family; 3],
    x: &IntersectionTuple,
    y: &IntersectionTuple,
    w: &IntersectionTuple,
) -> Result<Domain, DomainError> {
    let sys = CornerSystem::new(d, &fams)?;
    let m = triangle_weights(d, fams, x, y, w)?;
    let chain = sys.solve_weights(&m)?;
    let chain = canonicalize(d, chain, &sys.periodic_basis());
    Ok(Domain { chain, corners: Corners::Triangle { fams, x: x.clone(), y: y.clone(), w: w.clone() } })
}

/// `connect_domain`: a disk when `w` is absent, a triangle otherwise.
pub fn connect_domain(
    d: &PointedMultiDiagram,
    fams: &[Family],
    x: &IntersectionTuple,
    y: &IntersectionTuple,
    w: Option<&IntersectionTuple>,
) -> Result<Domain, DomainError> {
    match (fams, w) {
        ([a, b], None) => connect_pair(d, *a, *b, x, y),
        ([a, b, c], Some(w)) => connect_triangle(d, [*a, *b, *c], x, y, w),
        _ => Err(DomainError::CornerMismatch("families do not match corner arity".into())),
    }
}

/// Obstruction `ε(x, y)` in the Smith coordinates of the obstruction group.
pub fn epsilon(
    d: &PointedMultiDiagram,
    a: Family,
    b: Family,
    x: &IntersectionTuple,
    y: &IntersectionTuple,
) -> Result<(Vec<i64>, Vec<i64>), DomainError> {
    let sys = CornerSystem::new(d, &[a, b])?;
    let w = pair_weights(d, a, b, x, y)?;
    Ok((sys.epsilon_weights(&w), sys.obstruction_orders()))
}

/// Coordinates of `ψ - ψ₀` in `Z[Σ] ⊕ lattice`.
pub fn pi2_coordinates(
    d: &PointedMultiDiagram,
    psi: &[i64],
    psi0: &[i64],
    lattice: &PeriodicDomainLattice,
) -> Result<(i64, Vec<i64>), DomainError> {
    let diff = sub(psi, psi0);
    let m = diff[d.basepoint];
    let rest = sub(&diff, &scale(&sigma(d), m));
    if lattice.basis.is_empty() {
        return if rest.iter().all(|&x| x == 0) { Ok((m, vec![])) } else { Err(DomainError::NotCommensurable) };
    }
    let mat = linalg::transpose(&lattice.basis, d.num_faces());
    let s = smith(&mat, lattice.basis.len());
    let c = s.solve(&rest).ok_or(DomainError::NotCommensurable)?;
    debug_assert_eq!(mat_vec(&mat, &c), rest);
    Ok((m, c))
}

/// Splices disks onto a domain, updating corners.
pub fn splice(d: &PointedMultiDiagram, psi: &Domain, phis: &[Domain]) -> Result<Domain, DomainError> {
    let mut out = psi.clone();
    for phi in phis {
        let chain = add(&out.chain, &phi.chain);
        let corners = match (&out.corners, &phi.corners) {
            (c, Corners::Periodic) => c.clone(),
            (Corners::Periodic, c) => c.clone(),
            (Corners::Disk { pair, x, y }, Corners::Disk { pair: p2, x: x2, y: y2 }) if pair == p2 => {
                if y == x2 {
                    Corners::Disk { pair: *pair, x: x.clone(), y: y2.clone() }
                } else if y2 == x {
                    Corners::Disk { pair: *pair, x: x2.clone(), y: y.clone() }
                } else {
                    return Err(DomainError::CornerMismatch("disk endpoints do not chain".into()));
                }
            }
            (Corners::Triangle { fams, x, y, w }, Corners::Disk { pair, x: px, y: py }) => {
                let [a, b, c] = *fams;
                if *pair == (a, b) && py == x {
                    Corners::Triangle { fams: *fams, x: px.clone(), y: y.clone(), w: w.clone() }
                } else if *pair == (b, c) && py == y {
                    Corners::Triangle { fams: *fams, x: x.clone(), y: px.clone(), w: w.clone() }
                } else if *pair == (a, c) && px == w {
                    Corners::Triangle { fams: *fams, x: x.clone(), y: y.clone(), w: py.clone() }
                } else {
                    return Err(DomainError::CornerMismatch(format!("disk with pair {:?} does not attach", pair)));
                }
            }
            _ => return Err(DomainError::CornerMismatch("incompatible corner types".into())),
        };
        out = Domain { chain, corners };
    }
    debug_assert!(check_corners(d, &out));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::*;

    fn tuples(d: &PointedMultiDiagram, a: Family, b: Family) -> Vec<IntersectionTuple> {
        d.enumerate_tuples(a, b).unwrap()
    }

    #[test]
    fn bigon_boundary() {
        let d = standard_diagram(1);
        let t = tuples(&d, Family::Alpha, Family::Beta);
        let phi = connect_pair(&d, Family::Alpha, Family::Beta, &t[0], &t[1]).unwrap();
        assert!(check_corners(&d, &phi));
        let bd = boundary(&d, &phi.chain);
        // one alpha arc and one beta arc
        assert_eq!(bd.residual.len(), 2, "{:?}", bd);
        let lat = periodic_domain_basis(&d, &[Family::Alpha, Family::Beta]).unwrap();
        assert_eq!(lat.rank, 1);
        let p = &lat.basis[0];
        let b = boundary(&d, p);
        assert!(b.residual.is_empty());
        assert_eq!(b.full_count(), 2);
        let mut entries: Vec<i64> = p.clone();
        entries.sort();
        assert_eq!(entries, vec![-1, 0, 1]);
    }

    #[test]
    fn zero_chain_boundary() {
        let d = s3_torus();
        let b = boundary(&d, &vec![0; d.num_faces()]);
        assert!(b.residual.is_empty());
        assert_eq!(b.full_count(), 0);
    }

    #[test]
    fn lens_two_obstruction() {
        let d = lens_diagram(2);
        let t = tuples(&d, Family::Alpha, Family::Beta);
        let err = connect_pair(&d, Family::Alpha, Family::Beta, &t[0], &t[1]).unwrap_err();
        match err {
            DomainError::NoClass { epsilon, orders } => {
                assert_eq!(orders, vec![2]);
                assert_eq!(epsilon, vec![1]);
            }
            e => panic!("{e:?}"),
        }
        let x = connect_pair(&d, Family::Alpha, Family::Beta, &t[0], &t[0]).unwrap();
        assert!(x.chain.iter().all(|&m| m == 0));
    }

    #[test]
    fn obstruction_groups() {
        for p in 1..=6 {
            let d = lens_diagram(p);
            let sys = CornerSystem::new(&d, &[Family::Alpha, Family::Beta]).unwrap();
            let expect: Vec<i64> = if p == 1 { vec![] } else { vec![p] };
            assert_eq!(sys.obstruction_orders(), expect);
        }
        let d = standard_diagram(2);
        let sys = CornerSystem::new(&d, &[Family::Alpha, Family::Beta]).unwrap();
        assert!(sys.obstruction_orders().is_empty());
        assert_eq!(h1_orders(&d, Family::Alpha, Family::Beta).unwrap(), vec![0, 0]);
        assert_eq!(h1_orders(&lens_diagram(5), Family::Alpha, Family::Beta).unwrap(), vec![5]);
        assert!(h1_orders(&finger_move_s3(), Family::Alpha, Family::Beta).unwrap().is_empty());
    }

    #[test]
    fn periodic_ranks() {
        let ab = [Family::Alpha, Family::Beta];
        assert_eq!(periodic_domain_basis(&s3_torus(), &ab).unwrap().rank, 0);
        for n in 0..=3 {
            assert_eq!(periodic_domain_basis(&standard_diagram(n), &ab).unwrap().rank, n);
        }
        assert_eq!(periodic_domain_basis(&lens_diagram(5), &ab).unwrap().rank, 0);
        let abg = [Family::Alpha, Family::Beta, Family::Gamma];
        assert_eq!(periodic_domain_basis(&mcp_triple(), &abg).unwrap().rank, 1);
    }

    #[test]
    fn mcp_periodic_domain() {
        let d = mcp_triple();
        let lat = periodic_domain_basis(&d, &[Family::Alpha, Family::Beta, Family::Gamma]).unwrap();
        let p = &lat.basis[0];
        assert_eq!(euler_measure(&d, p), Rat::from_integer(0));
        assert_eq!(boundary(&d, p).full_count(), 3);
        assert_eq!(p[d.basepoint], 0);
    }

    #[test]
    fn euler_measure_examples() {
        let d = standard_diagram(1);
        let t = tuples(&d, Family::Alpha, Family::Beta);
        let phi = connect_pair(&d, Family::Alpha, Family::Beta, &t[0], &t[1]).unwrap();
        // the canonical bigon or its negative
        let e = euler_measure(&d, &phi.chain);
        assert!(e == Rat::new(1, 2) || e == Rat::new(-1, 2) || e.is_integer(), "{e}");
        for g in 1..=3 {
            let d = standard_diagram(g);
            assert_eq!(euler_measure(&d, &sigma(&d)), Rat::from_integer(2 - 2 * g as i64));
        }
    }

    #[test]
    fn pi2_coordinate_basics() {
        let d = mcp_triple();
        let fams = [Family::Alpha, Family::Beta, Family::Gamma];
        let lat = periodic_domain_basis(&d, &fams).unwrap();
        let x = &tuples(&d, Family::Alpha, Family::Beta)[0];
        let y = &tuples(&d, Family::Beta, Family::Gamma)[0];
        let w = &tuples(&d, Family::Alpha, Family::Gamma)[0];
        let psi = connect_triangle(&d, fams, x, y, w).unwrap();
        assert!(check_corners(&d, &psi));
        assert_eq!(pi2_coordinates(&d, &psi.chain, &psi.chain, &lat).unwrap(), (0, vec![0]));
        let up = add(&psi.chain, &sigma(&d));
        assert_eq!(pi2_coordinates(&d, &up, &psi.chain, &lat).unwrap(), (1, vec![0]));
        let moved = add(&psi.chain, &lat.basis[0]);
        assert_eq!(pi2_coordinates(&d, &moved, &psi.chain, &lat).unwrap(), (0, vec![1]));
        let bad = {
            let mut c = psi.chain.clone();
            let f = (d.basepoint + 1) % d.num_faces();
            c[f] += 1;
            c
        };
        assert_eq!(pi2_coordinates(&d, &bad, &psi.chain, &lat), Err(DomainError::NotCommensurable));
    }

    #[test]
    fn splice_bigons() {
        let d = standard_diagram(1);
        let t = tuples(&d, Family::Alpha, Family::Beta);
        let phi = connect_pair(&d, Family::Alpha, Family::Beta, &t[0], &t[1]).unwrap();
        let back = connect_pair(&d, Family::Alpha, Family::Beta, &t[1], &t[0]).unwrap();
        let s = splice(&d, &phi, &[back.clone()]).unwrap();
        assert_eq!(s.corners, Corners::Disk { pair: (Family::Alpha, Family::Beta), x: t[0].clone(), y: t[0].clone() });
        assert!(boundary(&d, &s.chain).residual.is_empty());
        let zero = Domain { chain: vec![0; d.num_faces()], corners: Corners::Periodic };
        assert_eq!(splice(&d, &phi, &[zero]).unwrap(), phi);
        assert!(splice(&d, &phi, &[phi.clone()]).is_err());
    }
}
