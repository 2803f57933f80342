//! Mod-2 Floer complexes for diagrams whose positive index-one classes are
//! embedded bigons: genus one, and connected sums of genus-one summands.

mod complex;
mod disks;
mod exact;
pub mod f2;
mod triangles;

pub use complex::{
    homology, induced_rank, reduce_arrows, reduced, Arrow, FloerData, Flavor, GradedChainComplex, GradedGroup,
    GradedModule, Generator, Homology, RigidClass, RigidityCertificate,
};
pub use exact::{exactness_check, ExactnessReport};
pub use triangles::{rigid_triangle_map, TriangleEntry, TriangleMap};

use crate::admissibility::{check_admissible, AdmissibilityError, AdmissibilityMode, Certificate};
use crate::domain::{h1_orders, product_decomposition, CoverError, DomainError};
use crate::linalg::Rat;
use crate::spinc::{relative_grading, spinc_partition, surgery_gradings, SpinCClass3, SpincError};
use crate::surface::{Family, IntersectionTuple, PointedMultiDiagram, SurfaceError};
use std::collections::BTreeMap;
use thiserror::Error;

pub const DEFAULT_TRUNCATION: i64 = 8;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FloerError {
    #[error("NotRigid: class from {from} to {to}: {reason}")]
    NotRigid { from: IntersectionTuple, to: IntersectionTuple, chain: Vec<i64>, reason: String },
    #[error("NotAdmissible: periodic domain {:?} violates admissibility", .0.chain)]
    NotAdmissible(Certificate),
    #[error("NotStandard: {0}")]
    NotStandard(String),
    #[error("ExactnessFailure: {sequence} at {position}, grading {grading}")]
    ExactnessFailure { sequence: String, position: String, grading: Rat },
    #[error("UnsupportedGenus: {0}")]
    UnsupportedGenus(String),
    #[error(transparent)]
    Spinc(#[from] SpincError),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Admissibility(#[from] AdmissibilityError),
    #[error(transparent)]
    Cover(#[from] CoverError),
}

impl FloerError {
    pub fn name(&self) -> &'static str {
        match self {
            FloerError::NotRigid { .. } => "NotRigid",
            FloerError::NotAdmissible(_) => "NotAdmissible",
            FloerError::NotStandard(_) => "NotStandard",
            FloerError::ExactnessFailure { .. } => "ExactnessFailure",
            FloerError::UnsupportedGenus(_) => "UnsupportedGenus",
            FloerError::Spinc(e) => e.name(),
            FloerError::Domain(e) => e.name(),
            FloerError::Surface(e) => e.name(),
            FloerError::Admissibility(e) => e.name(),
            FloerError::Cover(CoverError::UnsupportedGenus(_)) => "UnsupportedGenus",
            FloerError::Cover(CoverError::NotCellular) => "NotCellular",
            FloerError::Cover(CoverError::MalformedCorners) => "MalformedCorners",
        }
    }
}

/// Relative gradings of the members, shifted so the largest is zero.
fn relative_gradings(
    d: &PointedMultiDiagram,
    a: Family,
    b: Family,
    members: &[IntersectionTuple],
) -> Result<Vec<Rat>, FloerError> {
    let mut g = Vec::new();
    for t in members {
        g.push(Rat::from_integer(relative_grading(d, a, b, t, &members[0])?));
    }
    let top = g.iter().copied().max().unwrap_or_default();
    Ok(g.into_iter().map(|x| x - top).collect())
}

fn product_disks(
    d: &PointedMultiDiagram,
    a: Family,
    b: Family,
    members: &[IntersectionTuple],
    bound: i64,
) -> Result<Vec<RigidClass>, FloerError> {
    let parts = product_decomposition(d)
        .filter(|p| p.iter().all(|x| x.diagram.genus() == 1))
        .ok_or_else(|| FloerError::UnsupportedGenus(format!("genus {} diagram is not a sum of tori", d.genus())))?;
    let local: Vec<Vec<IntersectionTuple>> =
        members.iter().map(|t| parts.iter().map(|p| p.restrict_tuple(t)).collect()).collect();
    let index: BTreeMap<&Vec<IntersectionTuple>, usize> = local.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let mut out = Vec::new();
    for (pi, part) in parts.iter().enumerate() {
        let mut part_members: Vec<IntersectionTuple> = Vec::new();
        for l in &local {
            if !part_members.contains(&l[pi]) {
                part_members.push(l[pi].clone());
            }
        }
        let classes = disks::genus_one_disks(&part.diagram, a, b, &part_members, bound)?;
        for (i, l) in local.iter().enumerate() {
            for c in classes.iter().filter(|c| part_members[c.from] == l[pi]) {
                let mut target = l.clone();
                target[pi] = part_members[c.to].clone();
                let j = *index.get(&target).ok_or_else(|| {
                    FloerError::UnsupportedGenus("summand disk leaves the Spin^c class".into())
                })?;
                out.push(RigidClass { from: i, to: j, part: Some(pi), ..c.clone() });
            }
        }
    }
    Ok(out)
}

/// The complex of one Spin^c class: `∂[x, i] = Σ [y, i - n_z(φ)]` over
/// nonnegative index-one classes with `n_z <= bound`, each verified to be an
/// embedded bigon. Gradings are relative, with the top generator at zero.
pub fn rigid_differential(
    d: &PointedMultiDiagram,
    fams: [Family; 2],
    class: &SpinCClass3,
    bound: i64,
) -> Result<FloerData, FloerError> {
    let [a, b] = fams;
    let members = class.members.clone();
    let verdict = check_admissible(d, &fams, &members[..1], AdmissibilityMode::Weak)?;
    if let Some(cert) = verdict.certificate {
        return Err(FloerError::NotAdmissible(cert));
    }
    let classes = match d.genus() {
        0 => vec![],
        1 => disks::genus_one_disks(d, a, b, &members, bound)?,
        _ => product_disks(d, a, b, &members, bound)?,
    };
    let arrows = reduce_arrows(classes.iter().map(|c| Arrow { from: c.from, to: c.to, n_z: c.n_z }));
    let gradings = relative_gradings(d, a, b, &members)?;
    Ok(FloerData {
        families: fams,
        tuples: members,
        gradings,
        arrows,
        certificate: RigidityCertificate { classes, nz_bound: bound },
    })
}

/// One complex per Spin^c class of the pair.
pub fn all_classes(d: &PointedMultiDiagram, fams: [Family; 2], bound: i64) -> Result<Vec<FloerData>, FloerError> {
    spinc_partition(d, fams[0], fams[1])?.iter().map(|c| rigid_differential(d, fams, c, bound)).collect()
}

/// Complexes of the outgoing end `(fams[0], fams[2])` of a two-handle
/// triple, with absolute gradings read off from triangles.
pub fn surgery_complexes(d: &PointedMultiDiagram, fams: [Family; 3], bound: i64) -> Result<Vec<FloerData>, FloerError> {
    let gr = surgery_gradings(d, fams)?;
    let mut out = all_classes(d, [fams[0], fams[2]], bound)?;
    for data in out.iter_mut() {
        let (i, g) = data
            .tuples
            .iter()
            .enumerate()
            .find_map(|(i, t)| gr.iter().find(|s| &s.w == t).map(|s| (i, s.grading)))
            .ok_or_else(|| FloerError::Spinc(SpincError::NoSpider("class without a graded generator".into())))?;
        data.anchor(i, g);
    }
    Ok(out)
}

/// The top-graded tuple of a diagram for `#^g(S¹×S²)`.
pub fn top_generator(d: &PointedMultiDiagram, fams: [Family; 2]) -> Result<IntersectionTuple, FloerError> {
    if d.genus() == 0 {
        return Ok(IntersectionTuple { points: vec![] });
    }
    let orders = h1_orders(d, fams[0], fams[1])?;
    if orders.len() != d.genus() || orders.iter().any(|&o| o != 0) {
        return Err(FloerError::NotStandard(format!("first homology has orders {orders:?}")));
    }
    let class = spinc_partition(d, fams[0], fams[1])?
        .into_iter()
        .find(|c| c.torsion)
        .ok_or_else(|| FloerError::NotStandard("no torsion class".into()))?;
    let g = relative_gradings(d, fams[0], fams[1], &class.members)?;
    let tops: Vec<usize> = (0..g.len()).filter(|&i| g[i] == Rat::from_integer(0)).collect();
    if tops.len() != 1 {
        return Err(FloerError::NotStandard(format!("{} tuples share the top grading", tops.len())));
    }
    Ok(class.members[tops[0]].clone())
}

/// `⟨[x, i], [y, j]⟩ = 1` iff `x = y` and `i + j + 1 = 0`.
pub fn duality_pairing(a: (&IntersectionTuple, i64), b: (&IntersectionTuple, i64)) -> bool {
    a.0 == b.0 && a.1 + b.1 + 1 == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::*;

    const AB: [Family; 2] = [Family::Alpha, Family::Beta];

    fn hat_support(data: &FloerData) -> Vec<(Rat, usize)> {
        homology(&data.complex(Flavor::Hat, 0)).support()
    }

    #[test]
    fn sphere_has_one_generator() {
        let c = all_classes(&s3_torus(), AB, 4).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(hat_support(&c[0]), vec![(Rat::from_integer(0), 1)]);
    }

    #[test]
    fn finger_move_cancels() {
        let c = all_classes(&finger_move_s3(), AB, 4).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].tuples.len(), 3);
        assert!(!c[0].arrows.is_empty());
        assert_eq!(homology(&c[0].complex(Flavor::Hat, 0)).total_rank(), 1);
        for f in Flavor::ALL {
            assert!(c[0].complex(f, 4).check());
        }
    }

    #[test]
    fn standard_summand_bigons_cancel() {
        let c = all_classes(&standard_diagram(1), AB, 4).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].certificate.classes.len(), 2);
        assert!(c[0].arrows.is_empty());
        assert_eq!(hat_support(&c[0]), vec![(Rat::from_integer(-1), 1), (Rat::from_integer(0), 1)]);
    }

    #[test]
    fn standard_two_binomial() {
        let c = all_classes(&standard_diagram(2), AB, 4).unwrap();
        assert_eq!(c.len(), 1);
        let s: Vec<usize> = hat_support(&c[0]).iter().map(|x| x.1).collect();
        assert_eq!(s, vec![1, 2, 1]);
    }

    #[test]
    fn lens_classes_are_rank_one() {
        for p in 2..=5 {
            let c = all_classes(&lens_diagram(p), AB, 4).unwrap();
            assert_eq!(c.len(), p as usize);
            assert!(c.iter().all(|d| d.arrows.is_empty() && hat_support(d).len() == 1));
        }
    }

    #[test]
    fn degenerate_not_admissible() {
        let d = degenerate_s1s2();
        let class = SpinCClass3 { id: 0, members: vec![IntersectionTuple { points: vec![] }], coords: vec![], torsion: true };
        let e = rigid_differential(&d, AB, &class, 2).unwrap_err();
        assert_eq!(e.name(), "NotAdmissible");
    }

    #[test]
    fn top_generators() {
        assert_eq!(top_generator(&sphere(), AB).unwrap().points.len(), 0);
        let d = standard_diagram(2);
        let t = top_generator(&d, AB).unwrap();
        let c = all_classes(&d, AB, 2).unwrap();
        let i = c[0].index_of(&t).unwrap();
        assert_eq!(c[0].gradings[i], Rat::from_integer(0));
        assert_eq!(top_generator(&lens_diagram(3), AB).unwrap_err().name(), "NotStandard");
    }

    #[test]
    fn pairing_values() {
        let x = IntersectionTuple { points: vec![0] };
        let y = IntersectionTuple { points: vec![1] };
        assert!(duality_pairing((&x, 0), (&x, -1)));
        assert!(!duality_pairing((&x, 0), (&x, 0)));
        assert!(!duality_pairing((&x, 2), (&y, -3)));
    }

    #[test]
    fn surgery_sphere_is_graded_zero() {
        for n in [-1, 1] {
            let c = surgery_complexes(&framed_unknot_triple(n), [Family::Alpha, Family::Beta, Family::Gamma], 4).unwrap();
            assert_eq!(c.len(), 1);
            assert_eq!(hat_support(&c[0]), vec![(Rat::from_integer(0), 1)]);
        }
    }
}
