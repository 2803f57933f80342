//! Model diagrams: standard diagrams, lens spaces, framed unknot triples,
//! and the stabilization and one-handle triples.

use super::{
    connected_sum, CombinatorialSurface, Dart, Edge, Face, Family, PlCurve, PointedMultiDiagram, SurfaceError,
    TorusBuilder,
};
use crate::linalg::Rat;
use std::collections::BTreeMap;

fn r(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

fn pt(x: (i64, i64), y: (i64, i64)) -> (Rat, Rat) {
    (r(x.0, x.1), r(y.0, y.1))
}

/// Closed polyline through the given points, closing with `(0,1)` or `(1,0)`.
fn polyline(family: Family, points: &[(Rat, Rat)], close: (i64, i64)) -> PlCurve {
    let start = points[0];
    let mut steps = Vec::new();
    for w in points.windows(2) {
        steps.push((w[1].0 - w[0].0, w[1].1 - w[0].1));
    }
    let end = (start.0 + Rat::from_integer(close.0), start.1 + Rat::from_integer(close.1));
    let last = *points.last().unwrap();
    steps.push((end.0 - last.0, end.1 - last.1));
    PlCurve { family, start, steps }
}

/// Genus 0: the sphere with no curves, `S^3` by convention.
pub fn sphere() -> PointedMultiDiagram {
    let surface = CombinatorialSurface { genus: 0, vertices: vec![], edges: vec![], faces: vec![Face { cycles: vec![], euler: 2 }] };
    let mut fam = BTreeMap::new();
    fam.insert(Family::Alpha, vec![]);
    fam.insert(Family::Beta, vec![]);
    PointedMultiDiagram::new(surface, fam, 0).expect("sphere")
}

/// Horizontal and vertical circles meeting once.
pub fn s3_torus() -> PointedMultiDiagram {
    TorusBuilder::new()
        .line(0, 1, r(1, 2), Family::Alpha)
        .and_then(|b| b.line(1, 0, r(1, 2), Family::Beta))
        .expect("lines")
        .basepoint(r(1, 4), r(1, 4))
        .build()
        .expect("S3 torus")
}

/// `alpha` horizontal, `beta` an isotopic translate meeting it twice.
pub fn standard_summand() -> PointedMultiDiagram {
    let beta = polyline(
        Family::Beta,
        &[pt((0, 1), (3, 10)), pt((1, 5), (3, 10)), pt((1, 5), (7, 10)), pt((1, 2), (7, 10)), pt((1, 2), (3, 10))],
        (1, 0),
    );
    TorusBuilder::new()
        .line(0, 1, r(1, 2), Family::Alpha)
        .expect("line")
        .curve(beta)
        .basepoint(r(4, 5), r(1, 10))
        .build()
        .expect("standard summand")
}

/// The standard diagram of `#^n (S^1 x S^2)`.
pub fn standard_diagram(n: usize) -> PointedMultiDiagram {
    let mut d = sphere();
    for _ in 0..n {
        d = connected_sum(&d, &standard_summand());
    }
    d
}

/// Lens space diagram: horizontal `alpha` and a line of slope `p/1`.
pub fn lens_diagram(p: i64) -> PointedMultiDiagram {
    torus_lines(&[(0, 1, r(1, 2)), (p, 1, r(1, 3))], (r(1, 7), r(1, 11))).expect("lens diagram")
}

/// Straight-line diagram; families are assigned in order alpha, beta, gamma, delta.
pub fn torus_lines(specs: &[(i64, i64, Rat)], basepoint: (Rat, Rat)) -> Result<PointedMultiDiagram, SurfaceError> {
    let mut b = TorusBuilder::new();
    for (i, &(p, q, c)) in specs.iter().enumerate() {
        b = b.line(p, q, c, Family::ALL[i])?;
    }
    b.basepoint(basepoint.0, basepoint.1).build()
}

/// Same diagram with the basepoint moved to face `f`.
pub fn with_basepoint(d: &PointedMultiDiagram, f: usize) -> PointedMultiDiagram {
    PointedMultiDiagram::new(d.surface.clone(), d.families.clone(), f).expect("basepoint move")
}

/// Face with the most corners, ties to the lowest id.
pub fn largest_face(d: &PointedMultiDiagram) -> usize {
    let corners = |f: usize| d.surface.vertices.iter().flat_map(|v| v.corners).filter(|&c| c == f).count();
    (0..d.num_faces()).max_by_key(|&f| (corners(f), std::cmp::Reverse(f))).unwrap()
}

/// Three lines of slopes `0/1`, `1/1`, `1/0`, basepoint in the hexagon.
pub fn mcp_triple() -> PointedMultiDiagram {
    framed_unknot_triple(-1)
}

/// Genus-1 triple for the `n`-framed unknot (`n != 0`): `Y_{αβ}` and `Y_{βγ}`
/// are `S^3` and `Y_{αγ}` is `S^3_n(U)`. The basepoint sits in a face with
/// the most corners.
pub fn framed_unknot_triple(n: i64) -> PointedMultiDiagram {
    assert!(n != 0, "framing must be nonzero");
    let p = n.abs();
    let (beta, gamma) = if n < 0 { ((1, 1), (p, p - 1)) } else { ((-1, 1), (-p, p - 1)) };
    let d = torus_lines(
        &[(0, 1, r(1, 2)), (beta.0, beta.1, r(1, 3)), (gamma.0, gamma.1, r(1, 5))],
        (r(1, 7), r(1, 11)),
    )
    .expect("framed unknot triple");
    let f = largest_face(&d);
    with_basepoint(&d, f)
}

/// `alpha` horizontal, `beta` vertical, `gamma` an isotopic translate of
/// `beta` meeting it twice and `alpha` once.
pub fn stabilization_triple() -> PointedMultiDiagram {
    stabilization_summand(3)
}

fn stabilization_summand(k: usize) -> PointedMultiDiagram {
    let beta = polyline(Family::Beta, &[pt((1, 2), (0, 1))], (0, 1));
    let gamma = polyline(
        Family::Gamma,
        &[pt((3, 10), (0, 1)), pt((3, 10), (3, 5)), pt((7, 10), (3, 5)), pt((7, 10), (4, 5)), pt((3, 10), (4, 5))],
        (0, 1),
    );
    let mut b = TorusBuilder::new().line(0, 1, r(1, 2), Family::Alpha).expect("line");
    if k >= 2 {
        b = b.curve(beta);
    }
    if k >= 3 {
        b = b.curve(gamma);
    }
    if k >= 4 {
        b = b.curve(polyline(
            Family::Delta,
            &[pt((1, 4), (0, 1)), pt((1, 4), (11, 20)), pt((3, 4), (11, 20)), pt((3, 4), (7, 10)), pt((1, 4), (7, 10))],
            (0, 1),
        ));
    }
    b.basepoint(r(9, 10), r(1, 10)).build().expect("stabilization summand")
}

/// Three mutually isotopic horizontal curves, pairwise meeting twice.
pub fn one_handle_triple() -> PointedMultiDiagram {
    let beta = polyline(
        Family::Beta,
        &[pt((0, 1), (3, 10)), pt((1, 5), (3, 10)), pt((1, 5), (7, 10)), pt((1, 2), (7, 10)), pt((1, 2), (3, 10))],
        (1, 0),
    );
    let gamma = polyline(
        Family::Gamma,
        &[pt((0, 1), (2, 5)), pt((7, 20), (2, 5)), pt((7, 20), (4, 5)), pt((7, 10), (4, 5)), pt((7, 10), (2, 5))],
        (1, 0),
    );
    TorusBuilder::new()
        .line(0, 1, r(1, 2), Family::Alpha)
        .expect("line")
        .curve(beta)
        .curve(gamma)
        .basepoint(r(9, 10), r(1, 10))
        .build()
        .expect("one-handle triple")
}

/// `S^3` with a finger of `beta` pushed across `alpha`: three crossings and a
/// nonzero differential.
pub fn finger_move_s3() -> PointedMultiDiagram {
    let beta = polyline(
        Family::Beta,
        &[
            pt((1, 2), (0, 1)),
            pt((1, 2), (3, 5)),
            pt((7, 10), (3, 5)),
            pt((7, 10), (2, 5)),
            pt((9, 10), (2, 5)),
            pt((9, 10), (4, 5)),
            pt((1, 2), (4, 5)),
        ],
        (0, 1),
    );
    TorusBuilder::new()
        .line(0, 1, r(1, 2), Family::Alpha)
        .expect("line")
        .curve(beta)
        .basepoint(r(1, 4), r(1, 10))
        .build()
        .expect("finger move")
}

/// Disjoint parallel `alpha` and `beta`: two annuli, basepoint in the second.
pub fn degenerate_s1s2() -> PointedMultiDiagram {
    let edges = vec![Edge { curve: 0, from: None, to: None }, Edge { curve: 1, from: None, to: None }];
    let faces = vec![
        Face { cycles: vec![vec![Dart::fwd(0)], vec![Dart::bwd(1)]], euler: 0 },
        Face { cycles: vec![vec![Dart::bwd(0)], vec![Dart::fwd(1)]], euler: 0 },
    ];
    let surface = CombinatorialSurface { genus: 1, vertices: vec![], edges, faces };
    let mut fam = BTreeMap::new();
    fam.insert(Family::Alpha, vec![0]);
    fam.insert(Family::Beta, vec![1]);
    PointedMultiDiagram::new(surface, fam, 1).expect("degenerate diagram")
}

/// Connected sum with a genus-1 model: one new curve per family; for two
/// families they meet once, for three the last is a translate of the second
/// meeting it twice.
pub fn stabilize(d: &PointedMultiDiagram) -> Result<PointedMultiDiagram, SurfaceError> {
    let labels = d.labels();
    if labels.len() < 2 || labels.len() > 4 {
        return Err(SurfaceError::ArityMismatch { expected: 3, found: labels.len() });
    }
    let summand = stabilization_summand(labels.len());
    let map: Vec<(Family, Family)> = Family::ALL.iter().copied().zip(labels.iter().copied()).collect();
    Ok(connected_sum(d, &summand.relabeled(&map)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corners(d: &PointedMultiDiagram, f: usize) -> usize {
        d.surface.vertices.iter().flat_map(|v| v.corners).filter(|&c| c == f).count()
    }

    #[test]
    fn models_are_valid() {
        for d in [
            sphere(),
            s3_torus(),
            standard_summand(),
            standard_diagram(3),
            lens_diagram(5),
            mcp_triple(),
            framed_unknot_triple(3),
            framed_unknot_triple(-4),
            stabilization_triple(),
            one_handle_triple(),
            finger_move_s3(),
            degenerate_s1s2(),
        ] {
            let rep = d.validate();
            assert!(rep.valid, "{:?}", rep.violations);
        }
    }

    #[test]
    fn s3_torus_shape() {
        let d = s3_torus();
        assert_eq!((d.num_vertices(), d.num_edges(), d.num_faces()), (1, 2, 1));
        assert_eq!(d.enumerate_tuples(Family::Alpha, Family::Beta).unwrap().len(), 1);
    }

    #[test]
    fn lens_tuple_counts() {
        for p in 1..=7 {
            let d = lens_diagram(p);
            assert_eq!(d.enumerate_tuples(Family::Alpha, Family::Beta).unwrap().len(), p as usize);
        }
    }

    #[test]
    fn mcp_faces() {
        let d = mcp_triple();
        assert_eq!((d.num_vertices(), d.num_edges(), d.num_faces()), (3, 6, 3));
        let mut c: Vec<usize> = (0..3).map(|f| corners(&d, f)).collect();
        c.sort();
        assert_eq!(c, vec![3, 3, 6]);
        assert_eq!(corners(&d, d.basepoint), 6);
        for (a, b) in [(Family::Alpha, Family::Beta), (Family::Beta, Family::Gamma), (Family::Alpha, Family::Gamma)] {
            assert_eq!(d.enumerate_tuples(a, b).unwrap().len(), 1);
        }
    }

    #[test]
    fn framed_triple_crossings() {
        for n in [-5i64, -2, 2, 5] {
            let d = framed_unknot_triple(n);
            assert_eq!(d.enumerate_tuples(Family::Alpha, Family::Beta).unwrap().len(), 1);
            assert_eq!(d.enumerate_tuples(Family::Beta, Family::Gamma).unwrap().len(), 1);
            assert_eq!(d.enumerate_tuples(Family::Alpha, Family::Gamma).unwrap().len(), n.unsigned_abs() as usize);
        }
    }

    #[test]
    fn stabilization_counts() {
        let s = stabilize(&s3_torus()).unwrap();
        assert_eq!(s.genus(), 2);
        assert_eq!(s.enumerate_tuples(Family::Alpha, Family::Beta).unwrap().len(), 1);
        let s = stabilize(&standard_diagram(1)).unwrap();
        assert_eq!(s.enumerate_tuples(Family::Alpha, Family::Beta).unwrap().len(), 2);
        let t = stabilization_triple();
        assert_eq!(t.enumerate_tuples(Family::Beta, Family::Gamma).unwrap().len(), 2);
        assert_eq!(t.enumerate_tuples(Family::Alpha, Family::Gamma).unwrap().len(), 1);
        let t2 = stabilize(&mcp_triple()).unwrap();
        assert_eq!(t2.genus(), 2);
        assert_eq!(t2.enumerate_tuples(Family::Beta, Family::Gamma).unwrap().len(), 2);
    }

    #[test]
    fn one_handle_model_shape() {
        let d = one_handle_triple();
        for (a, b) in [(Family::Alpha, Family::Beta), (Family::Beta, Family::Gamma), (Family::Alpha, Family::Gamma)] {
            assert_eq!(d.enumerate_tuples(a, b).unwrap().len(), 2);
        }
        assert_eq!(d.surface.faces[d.basepoint].euler, 0);
    }

    #[test]
    fn parallel_alphas_are_dependent() {
        let d = connected_sum(&degenerate_s1s2(), &s3_torus());
        let mut fam = BTreeMap::new();
        fam.insert(Family::Alpha, vec![0, 1]);
        let rep = super::super::validate_parts(&d.surface, &fam, d.basepoint);
        assert!(rep.violations.iter().any(|v| v.starts_with("IndependenceFailure")), "{:?}", rep.violations);
    }

    #[test]
    fn nonprimitive_and_coincident() {
        assert!(matches!(
            torus_lines(&[(0, 1, r(1, 2)), (2, 2, r(1, 3))], (r(1, 7), r(1, 11))),
            Err(SurfaceError::NonPrimitiveSlope { .. })
        ));
        assert!(matches!(
            torus_lines(&[(0, 1, r(1, 2)), (0, 1, r(1, 2))], (r(1, 7), r(1, 11))),
            Err(SurfaceError::CoincidentCurves { .. })
        ));
    }
}
