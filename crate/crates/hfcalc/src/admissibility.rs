//! Weak, strong and triple admissibility as emptiness of rational cones
//! over the periodic-domain lattice.

use crate::domain::{boundary, periodic_domain_basis};
use crate::linalg::{primitive, q_nullspace, q_rank, q_solve, q_to_primitive, Rat};
use crate::spinc::c1_on_periodic;
use crate::surface::{Family, IntersectionTuple, PointedMultiDiagram, SurfaceError};
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AdmissibilityError {
    #[error("ArityMismatch: {mode:?} mode takes {expected} families, got {found}")]
    ArityMismatch { mode: AdmissibilityMode, expected: usize, found: usize },
    #[error("ArityMismatch: class needs 0 or {expected} tuples, got {found}")]
    ClassArity { expected: usize, found: usize },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

impl AdmissibilityError {
    pub fn name(&self) -> &'static str {
        match self {
            AdmissibilityError::ArityMismatch { .. } | AdmissibilityError::ClassArity { .. } => "ArityMismatch",
            AdmissibilityError::Surface(e) => e.name(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AdmissibilityMode {
    Weak,
    Strong,
    Triple,
}

impl AdmissibilityMode {
    pub fn parse(s: &str) -> Option<AdmissibilityMode> {
        match s {
            "weak" => Some(AdmissibilityMode::Weak),
            "strong" => Some(AdmissibilityMode::Strong),
            "triple" => Some(AdmissibilityMode::Triple),
            _ => None,
        }
    }
}

/// A violating periodic domain and its `c₁` pairing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub chain: Vec<i64>,
    #[serde(serialize_with = "crate::linalg::ser_rat")]
    pub pairing: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibilityVerdict {
    pub mode: AdmissibilityMode,
    pub admissible: bool,
    pub certificate: Option<Certificate>,
    pub lattice_rank: usize,
    /// Rank of the triply-periodic lattice not reached by sums of doubly
    /// periodic domains; zero outside triple mode.
    pub complementary_rank: usize,
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn to_rats(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::from_integer(x)).collect()
}

/// Lineality basis (both signs) and the extreme rays of the pointed part of
/// `{x : row·x >= 0 for all rows}`.
fn minimal(gens: Vec<Vec<Rat>>, rows: &[Vec<Rat>], n: usize) -> Vec<Vec<Rat>> {
    let lin = if rows.is_empty() {
        (0..n).map(|i| (0..n).map(|j| Rat::from_integer((i == j) as i64)).collect()).collect()
    } else {
        q_nullspace(&rows.to_vec(), n)
    };
    let gram: Vec<Vec<Rat>> = lin.iter().map(|a| lin.iter().map(|b| dot(a, b)).collect()).collect();
    let mut out: Vec<Vec<i64>> = Vec::new();
    for l in &lin {
        let v = q_to_primitive(l);
        out.push(v.iter().map(|x| -x).collect());
        out.push(v);
    }
    let mut rays: Vec<Vec<i64>> = Vec::new();
    for g in gens {
        let mut g = g;
        if !lin.is_empty() {
            let rhs: Vec<Rat> = lin.iter().map(|l| dot(l, &g)).collect();
            let lambda = q_solve(&gram, lin.len(), &rhs).expect("gram matrix is invertible");
            for (l, c) in lin.iter().zip(&lambda) {
                for (gi, li) in g.iter_mut().zip(l) {
                    *gi -= c * li;
                }
            }
        }
        if g.iter().all(|x| x.is_zero()) {
            continue;
        }
        let active: Vec<Vec<Rat>> = rows.iter().filter(|r| dot(r, &g).is_zero()).cloned().collect();
        if lin.len() < n && q_rank(&active, n) + lin.len() == n - 1 {
            let v = q_to_primitive(&g);
            if !rays.contains(&v) {
                rays.push(v);
            }
        }
    }
    rays.sort();
    out.extend(rays);
    out.iter().map(|v| to_rats(v)).collect()
}

/// Generators of `{x : A x >= 0}` by double description: a basis of the
/// lineality space with both signs, then the extreme rays of the rest,
/// each as a primitive integer vector. Empty when the cone is `{0}`.
pub fn extreme_rays(a: &[Vec<Rat>], n: usize) -> Vec<Vec<i64>> {
    if n == 0 {
        return vec![];
    }
    let mut gens: Vec<Vec<Rat>> = Vec::new();
    for i in 0..n {
        for s in [1, -1] {
            let mut e = vec![Rat::zero(); n];
            e[i] = Rat::from_integer(s);
            gens.push(e);
        }
    }
    for k in 0..a.len() {
        let row = &a[k];
        let vals: Vec<Rat> = gens.iter().map(|g| dot(row, g)).collect();
        let mut next: Vec<Vec<Rat>> = Vec::new();
        for (g, v) in gens.iter().zip(&vals) {
            if !v.is_negative() {
                next.push(g.clone());
            }
        }
        for (p, vp) in gens.iter().zip(&vals) {
            if !vp.is_positive() {
                continue;
            }
            for (q, vq) in gens.iter().zip(&vals) {
                if !vq.is_negative() {
                    continue;
                }
                next.push(p.iter().zip(q).map(|(pi, qi)| qi * vp - pi * vq).collect());
            }
        }
        gens = minimal(next, &a[..=k], n);
    }
    gens.iter().map(|g| q_to_primitive(g)).collect()
}

/// The verdict for a lattice basis and the `c₁` pairing of each basis
/// element. Weak: no nonzero `P >= 0` with `c(P) = 0`. Strong and triple:
/// no nonzero `P` with `c(P) >= 0` and every multiplicity at most `c(P)/2`.
pub fn cone_verdict(basis: &[Vec<i64>], pairing: &[Rat], mode: AdmissibilityMode) -> Option<Certificate> {
    let r = basis.len();
    if r == 0 {
        return None;
    }
    let faces = basis[0].len();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    match mode {
        AdmissibilityMode::Weak => {
            rows.push(pairing.to_vec());
            rows.push(pairing.iter().map(|c| -c).collect());
            for f in 0..faces {
                rows.push(basis.iter().map(|b| Rat::from_integer(b[f])).collect());
            }
        }
        AdmissibilityMode::Strong | AdmissibilityMode::Triple => {
            rows.push(pairing.to_vec());
            let half = Rat::new(1, 2);
            for f in 0..faces {
                rows.push(basis.iter().zip(pairing).map(|(b, c)| c * half - Rat::from_integer(b[f])).collect());
            }
        }
    }
    for t in extreme_rays(&rows, r) {
        let chain: Vec<i64> = (0..faces).map(|f| basis.iter().zip(&t).map(|(b, ti)| b[f] * ti).sum()).collect();
        if chain.iter().all(|&x| x == 0) {
            continue;
        }
        let g = crate::linalg::gcd_vec(&chain);
        let tq = to_rats(&t);
        let pairing = dot(pairing, &tq) / Rat::from_integer(g);
        return Some(Certificate { chain: primitive(&chain), pairing });
    }
    None
}

fn pairs(families: &[Family]) -> Vec<(Family, Family, usize)> {
    match families {
        [a, b] => vec![(*a, *b, 0)],
        [a, b, c] => vec![(*a, *b, 0), (*b, *c, 1), (*a, *c, 2)],
        _ => vec![],
    }
}

/// Generators of the lattice under test with their `c₁` pairings: the
/// periodic domains of a pair, or the doubly-periodic domains of the
/// three pairs of a triple.
fn generators(
    d: &PointedMultiDiagram,
    families: &[Family],
    class: &[IntersectionTuple],
) -> Result<(Vec<Vec<i64>>, Vec<Rat>), AdmissibilityError> {
    let mut basis = Vec::new();
    let mut pairing = Vec::new();
    for (a, b, i) in pairs(families) {
        for p in periodic_domain_basis(d, &[a, b])?.basis {
            pairing.push(class.get(i).map_or(Rat::zero(), |t| c1_on_periodic(d, t, &p)));
            basis.push(p);
        }
    }
    Ok((basis, pairing))
}

fn check_arity(families: &[Family], class: &[IntersectionTuple], mode: AdmissibilityMode) -> Result<(), AdmissibilityError> {
    let expected = if mode == AdmissibilityMode::Triple { 3 } else { 2 };
    if families.len() != expected {
        return Err(AdmissibilityError::ArityMismatch { mode, expected, found: families.len() });
    }
    let want = if expected == 3 { 3 } else { 1 };
    if !class.is_empty() && class.len() != want {
        return Err(AdmissibilityError::ClassArity { expected: want, found: class.len() });
    }
    Ok(())
}

/// Decides admissibility for the class of `class`: one tuple for a pair,
/// the three corner tuples `(ab, bc, ac)` of a triangle for a triple, or
/// none for the pairing that vanishes identically.
pub fn check_admissible(
    d: &PointedMultiDiagram,
    families: &[Family],
    class: &[IntersectionTuple],
    mode: AdmissibilityMode,
) -> Result<AdmissibilityVerdict, AdmissibilityError> {
    check_arity(families, class, mode)?;
    let (basis, pairing) = generators(d, families, class)?;
    let (lattice_rank, complementary_rank) = if mode == AdmissibilityMode::Triple {
        let full = periodic_domain_basis(d, families)?.rank;
        let span = crate::linalg::rank(&basis, d.num_faces());
        (span, full - span)
    } else {
        (basis.len(), 0)
    };
    let certificate = cone_verdict(&basis, &pairing, mode);
    Ok(AdmissibilityVerdict { mode, admissible: certificate.is_none(), certificate, lattice_rank, complementary_rank })
}

/// Re-checks a certificate against the definitions from its multiplicities
/// alone: a nonzero chain with `n_z = 0` whose boundary is a sum of full
/// curves of the given families, with the pairing recomputed from a
/// decomposition into pair-periodic pieces.
pub fn certificate_violates(
    d: &PointedMultiDiagram,
    families: &[Family],
    class: &[IntersectionTuple],
    mode: AdmissibilityMode,
    cert: &Certificate,
) -> bool {
    let p = &cert.chain;
    if p.len() != d.num_faces() || p.iter().all(|&x| x == 0) || p[d.basepoint] != 0 {
        return false;
    }
    let bd = boundary(d, p);
    if !bd.residual.is_empty() || bd.full.keys().any(|f| !families.contains(f)) {
        return false;
    }
    let c = match recompute_pairing(d, families, class, p) {
        Some(c) => c,
        None => return false,
    };
    let zero = Rat::zero();
    match mode {
        AdmissibilityMode::Weak => c == zero && (p.iter().all(|&x| x >= 0) || p.iter().all(|&x| x <= 0)),
        AdmissibilityMode::Strong | AdmissibilityMode::Triple => {
            c >= zero && p.iter().all(|&x| Rat::from_integer(2 * x) <= c)
        }
    }
}

fn recompute_pairing(d: &PointedMultiDiagram, families: &[Family], class: &[IntersectionTuple], p: &[i64]) -> Option<Rat> {
    if class.is_empty() {
        return Some(Rat::zero());
    }
    if families.len() == 2 {
        return Some(c1_on_periodic(d, &class[0], p));
    }
    let mut pieces: Vec<(Vec<i64>, usize)> = Vec::new();
    for (a, b, i) in pairs(families) {
        for q in periodic_domain_basis(d, &[a, b]).ok()?.basis {
            pieces.push((q, i));
        }
    }
    let faces = d.num_faces();
    let m: Vec<Vec<Rat>> = (0..faces).map(|f| pieces.iter().map(|(q, _)| Rat::from_integer(q[f])).collect()).collect();
    let coef = q_solve(&m, pieces.len(), &to_rats(p))?;
    Some(pieces.iter().zip(&coef).map(|((q, i), k)| k * c1_on_periodic(d, &class[*i], q)).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::*;

    fn q(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter().map(|r| to_rats(r)).collect()
    }

    #[test]
    fn rays_of_orthant() {
        assert_eq!(extreme_rays(&q(&[&[1, 0], &[0, 1]]), 2), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn rays_of_half_plane() {
        let r = extreme_rays(&q(&[&[1, -1]]), 2);
        assert_eq!(r, vec![vec![-1, -1], vec![1, 1], vec![1, -1]]);
    }

    #[test]
    fn rays_of_trivial_cone() {
        assert!(extreme_rays(&q(&[&[1], &[-1]]), 1).is_empty());
        assert!(extreme_rays(&q(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]), 2).is_empty());
    }

    #[test]
    fn rays_of_square_cone() {
        let r = extreme_rays(&q(&[&[1, 0, 1], &[-1, 0, 1], &[0, 1, 1], &[0, -1, 1]]), 3);
        assert_eq!(r.len(), 4);
        assert!(r.iter().all(|v| v[2] == 1 && v[0].abs() == 1 && v[1].abs() == 1));
    }

    #[test]
    fn sphere_is_admissible() {
        let d = s3_torus();
        for mode in [AdmissibilityMode::Weak, AdmissibilityMode::Strong] {
            let v = check_admissible(&d, &[Family::Alpha, Family::Beta], &[], mode).unwrap();
            assert!(v.admissible);
            assert_eq!(v.lattice_rank, 0);
        }
    }

    #[test]
    fn standard_is_admissible() {
        let d = standard_diagram(1);
        let x = d.enumerate_tuples(Family::Alpha, Family::Beta).unwrap()[0].clone();
        for mode in [AdmissibilityMode::Weak, AdmissibilityMode::Strong] {
            let v = check_admissible(&d, &[Family::Alpha, Family::Beta], &[x.clone()], mode).unwrap();
            assert!(v.admissible, "{mode:?}");
        }
    }

    #[test]
    fn degenerate_rejected() {
        let d = degenerate_s1s2();
        let ab = [Family::Alpha, Family::Beta];
        let v = check_admissible(&d, &ab, &[], AdmissibilityMode::Weak).unwrap();
        assert!(!v.admissible);
        let c = v.certificate.unwrap();
        assert_eq!(c.chain, vec![1, 0]);
        assert!(certificate_violates(&d, &ab, &[], AdmissibilityMode::Weak, &c));
        let bad = Certificate { chain: vec![0, 1], pairing: Rat::zero() };
        assert!(!certificate_violates(&d, &ab, &[], AdmissibilityMode::Weak, &bad));
    }

    #[test]
    fn triple_mode_on_mcp() {
        let d = mcp_triple();
        let fams = [Family::Alpha, Family::Beta, Family::Gamma];
        let v = check_admissible(&d, &fams, &[], AdmissibilityMode::Triple).unwrap();
        assert!(v.admissible);
        assert_eq!(v.lattice_rank, 0);
        assert_eq!(v.complementary_rank, 1);
    }

    #[test]
    fn arity_checked() {
        let d = mcp_triple();
        let e = check_admissible(&d, &[Family::Alpha, Family::Beta], &[], AdmissibilityMode::Triple).unwrap_err();
        assert_eq!(e.name(), "ArityMismatch");
    }
}
