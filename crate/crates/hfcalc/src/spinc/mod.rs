//! Spin^c classes of tuples and triangles, Maslov indices, and gradings.

mod spider;

pub use spider::{c1_from_spider_number, dual_spider_number, DualSpider, Leg, SpiderSampler};

use crate::domain::{
    self, check_corners, euler_measure, periodic_domain_basis, pi2_coordinates, scale, sigma, splice, sub,
    tuple_measure, CornerSystem, CoverError, Corners, Domain, DomainError, PeriodicDomainLattice, UniversalCover,
};
use crate::linalg::{smith, Rat, Smith};
use crate::surface::{Family, IntersectionTuple, PointedMultiDiagram, SurfaceError};
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SpincError {
    #[error("MalformedCorners: chain does not have the declared corners")]
    MalformedCorners,
    #[error("DifferentClass: tuples lie in different Spin^c classes")]
    DifferentClass,
    #[error("NonCanonicalBase: base tuples are not top-graded generators")]
    NonCanonicalBase,
    #[error("NonTorsionRestriction: restriction to the outgoing end is not torsion")]
    NonTorsionRestriction,
    #[error("NonGenericSpider: {0}")]
    NonGenericSpider(String),
    #[error("NoSpider: {0}")]
    NoSpider(String),
    #[error("NotPeriodic: chain boundary is not a sum of full curves")]
    NotPeriodic,
    #[error("UnsupportedGenus: triangle index needs genus one, got {0}")]
    UnsupportedGenus(usize),
    #[error("UnsupportedTriple: {0}")]
    UnsupportedTriple(String),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Cover(#[from] CoverError),
}

impl SpincError {
    pub fn name(&self) -> &'static str {
        match self {
            SpincError::MalformedCorners => "MalformedCorners",
            SpincError::DifferentClass => "DifferentClass",
            SpincError::NonCanonicalBase => "NonCanonicalBase",
            SpincError::NonTorsionRestriction => "NonTorsionRestriction",
            SpincError::NonGenericSpider(_) => "NonGenericSpider",
            SpincError::NoSpider(_) => "NoSpider",
            SpincError::NotPeriodic => "NotPeriodic",
            SpincError::UnsupportedGenus(_) => "UnsupportedGenus",
            SpincError::UnsupportedTriple(_) => "UnsupportedTriple",
            SpincError::Domain(e) => e.name(),
            SpincError::Surface(e) => e.name(),
            SpincError::Cover(CoverError::MalformedCorners) => "MalformedCorners",
            SpincError::Cover(CoverError::UnsupportedGenus(_)) => "UnsupportedGenus",
            SpincError::Cover(CoverError::NotCellular) => "NotCellular",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpinCClass3 {
    pub id: usize,
    pub members: Vec<IntersectionTuple>,
    /// `ε(base, member)` in Smith coordinates.
    pub coords: Vec<i64>,
    pub torsion: bool,
}

/// `⟨c₁(𝔰(x)), H(P)⟩ = e(P) + 2 n_x(P)`.
pub fn c1_on_periodic(d: &PointedMultiDiagram, x: &IntersectionTuple, p: &[i64]) -> Rat {
    euler_measure(d, p) + tuple_measure(d, p, x) * Rat::from_integer(2)
}

pub fn is_torsion(d: &PointedMultiDiagram, x: &IntersectionTuple, lattice: &PeriodicDomainLattice) -> bool {
    lattice.basis.iter().all(|p| c1_on_periodic(d, x, p) == Rat::from_integer(0))
}

/// Partitions the tuples of a pair by `ε = 0`.
pub fn spinc_partition(d: &PointedMultiDiagram, a: Family, b: Family) -> Result<Vec<SpinCClass3>, SpincError> {
    let sys = CornerSystem::new(d, &[a, b])?;
    let lattice = periodic_domain_basis(d, &[a, b])?;
    let tuples = d.enumerate_tuples(a, b)?;
    let Some(base) = tuples.first() else { return Ok(vec![]) };
    let mut order: Vec<Vec<i64>> = Vec::new();
    let mut groups: BTreeMap<Vec<i64>, Vec<IntersectionTuple>> = BTreeMap::new();
    for t in &tuples {
        let c = sys.pair_epsilon(d, base, t)?;
        if !groups.contains_key(&c) {
            order.push(c.clone());
        }
        groups.entry(c).or_default().push(t.clone());
    }
    Ok(order
        .into_iter()
        .enumerate()
        .map(|(id, c)| {
            let members = groups.remove(&c).unwrap();
            let torsion = is_torsion(d, &members[0], &lattice);
            SpinCClass3 { id, members, coords: c, torsion }
        })
        .collect())
}

/// Disks: `e + n_x + n_y`. Genus-one triangles: `2e - 1/2 + 2m`, where `m`
/// is the multiple of `[Σ]` separating the class from its compact lift.
pub fn maslov_index(d: &PointedMultiDiagram, dom: &Domain) -> Result<Rat, SpincError> {
    if !check_corners(d, dom) {
        return Err(SpincError::MalformedCorners);
    }
    let e = euler_measure(d, &dom.chain);
    match &dom.corners {
        Corners::Disk { x, y, .. } => Ok(e + tuple_measure(d, &dom.chain, x) + tuple_measure(d, &dom.chain, y)),
        Corners::Triangle { .. } => {
            if d.genus() != 1 {
                return Err(SpincError::UnsupportedGenus(d.genus()));
            }
            let lift = UniversalCover::new(d)?.lift(d, dom)?;
            Ok(e * Rat::from_integer(2) - Rat::new(1, 2) + Rat::from_integer(2 * lift.sigma_multiple))
        }
        Corners::Periodic => Err(SpincError::MalformedCorners),
    }
}

/// `gr(x) - gr(y) = μ(φ) - 2 n_z(φ)` for a connecting disk `φ`.
pub fn relative_grading(
    d: &PointedMultiDiagram,
    a: Family,
    b: Family,
    x: &IntersectionTuple,
    y: &IntersectionTuple,
) -> Result<i64, SpincError> {
    let phi = match domain::connect_pair(d, a, b, x, y) {
        Ok(p) => p,
        Err(DomainError::NoClass { .. }) => return Err(SpincError::DifferentClass),
        Err(e) => return Err(e.into()),
    };
    let g = maslov_index(d, &phi)? - Rat::from_integer(2 * phi.n_z(d));
    debug_assert!(g.is_integer());
    Ok(g.to_integer())
}

/// Highest-graded member of the torsion class, ties broken by tuple order.
pub fn top_generator(d: &PointedMultiDiagram, a: Family, b: Family) -> Result<IntersectionTuple, SpincError> {
    let classes = spinc_partition(d, a, b)?;
    let class = classes.iter().find(|c| c.torsion).ok_or(SpincError::NonTorsionRestriction)?;
    let base = &class.members[0];
    let mut best = (0i64, base.clone());
    for t in &class.members[1..] {
        let g = relative_grading(d, a, b, t, base)?;
        if g > best.0 {
            best = (g, t.clone());
        }
    }
    Ok(best.1)
}

/// Spin^c class of a triangle relative to a base triangle: the `ε` classes of
/// its three corners, then coordinates modulo doubly-periodic domains.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SpinCClass4 {
    pub restrictions: [Vec<i64>; 3],
    pub coords: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct TriangleClassifier {
    pub fams: [Family; 3],
    pub base: Domain,
    pub triply: PeriodicDomainLattice,
    pairs: [CornerSystem; 3],
    quotient: Option<Smith>,
}

impl TriangleClassifier {
    pub fn new(d: &PointedMultiDiagram, base: Domain) -> Result<TriangleClassifier, SpincError> {
        let Corners::Triangle { fams, .. } = &base.corners else {
            return Err(SpincError::MalformedCorners);
        };
        let [a, b, c] = *fams;
        let triply = periodic_domain_basis(d, fams)?;
        let zero = vec![0; d.num_faces()];
        let mut cols: Vec<Vec<i64>> = Vec::new();
        for pair in [[a, b], [b, c], [a, c]] {
            for p in periodic_domain_basis(d, &pair)?.basis {
                cols.push(pi2_coordinates(d, &p, &zero, &triply)?.1);
            }
        }
        let quotient = if cols.is_empty() || triply.rank == 0 {
            None
        } else {
            let m: Vec<Vec<i64>> = (0..triply.rank).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
            Some(smith(&m, cols.len()))
        };
        let pairs = [CornerSystem::new(d, &[a, b])?, CornerSystem::new(d, &[b, c])?, CornerSystem::new(d, &[a, c])?];
        Ok(TriangleClassifier { fams: *fams, base, triply, pairs, quotient })
    }

    pub fn classify(&self, d: &PointedMultiDiagram, psi: &Domain) -> Result<SpinCClass4, SpincError> {
        let (Corners::Triangle { fams, x, y, w }, Corners::Triangle { x: x0, y: y0, w: w0, .. }) =
            (&psi.corners, &self.base.corners)
        else {
            return Err(SpincError::MalformedCorners);
        };
        if *fams != self.fams || !check_corners(d, psi) {
            return Err(SpincError::MalformedCorners);
        }
        let restrictions = [
            self.pairs[0].pair_epsilon(d, x0, x)?,
            self.pairs[1].pair_epsilon(d, y0, y)?,
            self.pairs[2].pair_epsilon(d, w, w0)?,
        ];
        if restrictions.iter().any(|r| r.iter().any(|&v| v != 0)) {
            return Ok(SpinCClass4 { restrictions, coords: vec![] });
        }
        let phis = [
            self.pairs[0].pair_domain(d, x0, x)?,
            self.pairs[1].pair_domain(d, y0, y)?,
            self.pairs[2].pair_domain(d, w, w0)?,
        ];
        let moved = splice(d, psi, &phis)?;
        let (_, c) = pi2_coordinates(d, &moved.chain, &self.base.chain, &self.triply)?;
        let coords = match &self.quotient {
            Some(s) => s.cokernel_class(&c),
            None => c,
        };
        Ok(SpinCClass4 { restrictions, coords })
    }
}

/// `(c₁² - 2χ - 3σ) / 4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftData {
    #[serde(serialize_with = "crate::linalg::ser_rat")]
    pub c1_sq: Rat,
    pub chi: i64,
    pub sigma: i64,
}

impl ShiftData {
    pub fn shift(&self) -> Rat {
        (self.c1_sq - Rat::from_integer(2 * self.chi + 3 * self.sigma)) / Rat::from_integer(4)
    }
}

/// `-μ(ψ) + 2 n_z(ψ) + shift` for `ψ ∈ π₂(x₀, x₁, y)` with top-graded `x₀`, `x₁`.
pub fn absolute_grading(d: &PointedMultiDiagram, psi: &Domain, shift: &ShiftData) -> Result<Rat, SpincError> {
    let Corners::Triangle { fams: [a, b, c], x, y, w } = &psi.corners else {
        return Err(SpincError::MalformedCorners);
    };
    if *x != top_generator(d, *a, *b)? || *y != top_generator(d, *b, *c)? {
        return Err(SpincError::NonCanonicalBase);
    }
    let lattice = periodic_domain_basis(d, &[*a, *c])?;
    if !is_torsion(d, w, &lattice) {
        return Err(SpincError::NonTorsionRestriction);
    }
    let mu = maslov_index(d, psi)?;
    Ok(-mu + Rat::from_integer(2 * psi.n_z(d)) + shift.shift())
}

/// `⟨c₁(𝔰(ψ)), H(P)⟩`, with a supplied spider or one generated inside the
/// lift of `ψ`.
pub fn c1_evaluate(d: &PointedMultiDiagram, psi: &Domain, p: &[i64], spider: Option<&DualSpider>) -> Result<Rat, SpincError> {
    let Corners::Triangle { fams, .. } = &psi.corners else {
        return Err(SpincError::MalformedCorners);
    };
    if p.iter().all(|&v| v == 0) {
        return Ok(Rat::from_integer(0));
    }
    let owned;
    let s = match spider {
        Some(s) => s,
        None => {
            owned = SpiderSampler::new(d, psi)?.canonical(d);
            &owned
        }
    };
    let sigma = dual_spider_number(d, *fams, p, s)?;
    c1_from_spider_number(d, p, sigma)
}

/// A triangle class `ψ₀ + jP` of a genus-one triple with a rank-one
/// triply-periodic lattice, moved to its compact lift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleClassReport {
    pub j: i64,
    pub domain: Domain,
    pub n_z: i64,
    #[serde(serialize_with = "crate::linalg::ser_rat")]
    pub maslov: Rat,
    pub spider_number: i64,
    #[serde(serialize_with = "crate::linalg::ser_rat")]
    pub c1: Rat,
}

/// Realizable triangle classes `ψ₀ + jP - mΣ` for `j` in a window.
pub fn triangle_family(
    d: &PointedMultiDiagram,
    psi0: &Domain,
    p: &[i64],
    window: std::ops::RangeInclusive<i64>,
) -> Result<Vec<TriangleClassReport>, SpincError> {
    let cover = UniversalCover::new(d)?;
    let Corners::Triangle { fams, .. } = &psi0.corners else {
        return Err(SpincError::MalformedCorners);
    };
    let mut out = Vec::new();
    for j in window {
        let raw = Domain { chain: domain::add(&psi0.chain, &scale(p, j)), corners: psi0.corners.clone() };
        let m = cover.lift(d, &raw)?.sigma_multiple;
        let dom = Domain { chain: sub(&raw.chain, &scale(&sigma(d), m)), corners: raw.corners };
        let maslov = maslov_index(d, &dom)?;
        let (spider_number, c1) = match SpiderSampler::new(d, &dom) {
            Ok(s) => {
                let sn = dual_spider_number(d, *fams, p, &s.canonical(d))?;
                (sn, c1_from_spider_number(d, p, sn)?)
            }
            Err(SpincError::NoSpider(_)) => continue,
            Err(e) => return Err(e),
        };
        out.push(TriangleClassReport { j, n_z: dom.n_z(d), domain: dom, maslov, spider_number, c1 });
    }
    Ok(out)
}

/// `ψ_k^±`: the `k`-th class of a family, by increasing `n_z`, among those
/// with `±⟨c₁, P⟩ > 0`.
pub fn psi_class(fam: &[TriangleClassReport], k: usize, sign: i64) -> Option<&TriangleClassReport> {
    let mut v: Vec<&TriangleClassReport> = fam.iter().filter(|c| c.c1 * Rat::from_integer(sign) > Rat::from_integer(0)).collect();
    v.sort_by_key(|c| c.n_z);
    v.get(k.checked_sub(1)?).copied()
}

/// Grading of one outgoing generator of a two-handle triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurgeryGrading {
    pub w: IntersectionTuple,
    pub triangle: TriangleClassReport,
    #[serde(serialize_with = "crate::linalg::ser_rat")]
    pub self_intersection: Rat,
    pub shift: ShiftData,
    #[serde(serialize_with = "crate::linalg::ser_rat")]
    pub grading: Rat,
}

/// Absolute gradings of every `(fams[0], fams[2])` tuple of a genus-one
/// triple with rank-one triply-periodic lattice, read off from the top
/// generators of the other two pairs. The square of the periodic class is
/// `Δc₁ / 2` between neighbouring classes.
pub fn surgery_gradings(d: &PointedMultiDiagram, fams: [Family; 3]) -> Result<Vec<SurgeryGrading>, SpincError> {
    let [a, b, c] = fams;
    let lattice = periodic_domain_basis(d, &fams)?;
    if lattice.rank != 1 {
        return Err(SpincError::UnsupportedTriple(format!("triply-periodic rank {} is not one", lattice.rank)));
    }
    let p = &lattice.basis[0];
    let x = top_generator(d, a, b)?;
    let y = top_generator(d, b, c)?;
    let mut out = Vec::new();
    for w in d.enumerate_tuples(a, c)? {
        let psi = domain::connect_triangle(d, fams, &x, &y, &w)?;
        let fam = triangle_family(d, &psi, p, -4..=4)?;
        let (Some(r0), Some(r1)) = (fam.first(), fam.get(1)) else {
            return Err(SpincError::NoSpider(format!("fewer than two embedded classes at {w}")));
        };
        let q = (r1.c1 - r0.c1) / Rat::from_integer(2 * (r1.j - r0.j));
        if q == Rat::from_integer(0) {
            return Err(SpincError::NonTorsionRestriction);
        }
        let sigma = if q > Rat::from_integer(0) { 1 } else { -1 };
        let shift = ShiftData { c1_sq: r0.c1 * r0.c1 / q, chi: 1, sigma };
        let grading = absolute_grading(d, &r0.domain, &shift)?;
        out.push(SurgeryGrading { w, triangle: r0.clone(), self_intersection: q, shift, grading });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::connect_triangle;
    use crate::surface::*;
    use rand::SeedableRng;

    const ABG: [Family; 3] = [Family::Alpha, Family::Beta, Family::Gamma];

    fn first(d: &PointedMultiDiagram, a: Family, b: Family) -> IntersectionTuple {
        d.enumerate_tuples(a, b).unwrap()[0].clone()
    }

    fn small_triangle(d: &PointedMultiDiagram) -> Domain {
        connect_triangle(
            d,
            ABG,
            &first(d, Family::Alpha, Family::Beta),
            &first(d, Family::Beta, Family::Gamma),
            &first(d, Family::Alpha, Family::Gamma),
        )
        .unwrap()
    }

    #[test]
    fn lens_partitions() {
        for p in 1..=7 {
            let c = spinc_partition(&lens_diagram(p), Family::Alpha, Family::Beta).unwrap();
            assert_eq!(c.len(), p as usize);
            assert!(c.iter().all(|k| k.members.len() == 1 && k.torsion));
        }
    }

    #[test]
    fn standard_one_class() {
        let d = standard_diagram(1);
        let c = spinc_partition(&d, Family::Alpha, Family::Beta).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].members.len(), 2);
        assert!(c[0].torsion);
    }

    #[test]
    fn bigon_index_one() {
        let d = standard_diagram(1);
        let t = d.enumerate_tuples(Family::Alpha, Family::Beta).unwrap();
        let g = relative_grading(&d, Family::Alpha, Family::Beta, &t[0], &t[1]).unwrap();
        assert_eq!(g.abs(), 1);
        assert_eq!(relative_grading(&d, Family::Alpha, Family::Beta, &t[1], &t[0]).unwrap(), -g);
        assert_eq!(relative_grading(&d, Family::Alpha, Family::Beta, &t[0], &t[0]).unwrap(), 0);
    }

    #[test]
    fn different_class_reported() {
        let d = lens_diagram(3);
        let t = d.enumerate_tuples(Family::Alpha, Family::Beta).unwrap();
        assert_eq!(relative_grading(&d, Family::Alpha, Family::Beta, &t[0], &t[1]), Err(SpincError::DifferentClass));
    }

    #[test]
    fn triangle_class_invariance() {
        let d = mcp_triple();
        let psi = small_triangle(&d);
        let cl = TriangleClassifier::new(&d, psi.clone()).unwrap();
        let base = cl.classify(&d, &psi).unwrap();
        let up = Domain { chain: domain::add(&psi.chain, &sigma(&d)), corners: psi.corners.clone() };
        assert_eq!(cl.classify(&d, &up).unwrap(), base);
        let moved = Domain { chain: domain::add(&psi.chain, &cl.triply.basis[0]), corners: psi.corners.clone() };
        assert_ne!(cl.classify(&d, &moved).unwrap(), base);
    }

    #[test]
    fn spider_zero_domain() {
        let d = mcp_triple();
        let psi = small_triangle(&d);
        assert_eq!(c1_evaluate(&d, &psi, &vec![0; d.num_faces()], None).unwrap(), Rat::from_integer(0));
    }

    #[test]
    fn spider_sampling_is_invariant() {
        let d = mcp_triple();
        let p = periodic_domain_basis(&d, &ABG).unwrap().basis[0].clone();
        let fam = triangle_family(&d, &small_triangle(&d), &p, -3..=3).unwrap();
        assert!(!fam.is_empty());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for r in &fam {
            let s = SpiderSampler::new(&d, &r.domain).unwrap();
            for _ in 0..20 {
                let sp = s.sample(&d, &mut rng);
                assert_eq!(dual_spider_number(&d, ABG, &p, &sp).unwrap(), r.spider_number);
            }
        }
    }

    fn d_invariants(n: i64) -> Vec<Rat> {
        let p = n.abs();
        let mut v: Vec<Rat> =
            (0..p).map(|i| Rat::new(n.signum() * ((2 * i - p).pow(2) - p), 4 * p)).collect();
        v.sort();
        v
    }

    #[test]
    fn framed_unknot_gradings() {
        for n in [-5, -4, -3, -2, -1, 1, 2, 3, 4, 5] {
            let d = framed_unknot_triple(n);
            let g = surgery_gradings(&d, ABG).unwrap();
            assert!(g.iter().all(|s| s.self_intersection == Rat::from_integer(n)));
            let mut got: Vec<Rat> = g.iter().map(|s| s.grading).collect();
            got.sort();
            assert_eq!(got, d_invariants(n), "n = {n}");
        }
    }

    #[test]
    fn grading_independent_of_class() {
        for n in [-2, 1, 3] {
            let d = framed_unknot_triple(n);
            let p = periodic_domain_basis(&d, &ABG).unwrap().basis[0].clone();
            for s in surgery_gradings(&d, ABG).unwrap() {
                let x = top_generator(&d, Family::Alpha, Family::Beta).unwrap();
                let y = top_generator(&d, Family::Beta, Family::Gamma).unwrap();
                let psi = connect_triangle(&d, ABG, &x, &y, &s.w).unwrap();
                for r in triangle_family(&d, &psi, &p, -3..=3).unwrap() {
                    let sd = ShiftData { c1_sq: r.c1 * r.c1 / s.self_intersection, ..s.shift };
                    assert_eq!(absolute_grading(&d, &r.domain, &sd).unwrap(), s.grading);
                }
            }
        }
    }

    #[test]
    fn broken_spider_rejected() {
        let d = mcp_triple();
        let psi = small_triangle(&d);
        let p = periodic_domain_basis(&d, &ABG).unwrap().basis[0].clone();
        let mut s = SpiderSampler::new(&d, &psi).unwrap().canonical(&d);
        s.center[0] = (s.center[0] + 1) % d.num_faces();
        assert!(matches!(dual_spider_number(&d, ABG, &p, &s), Err(SpincError::NonGenericSpider(_))));
    }
}
