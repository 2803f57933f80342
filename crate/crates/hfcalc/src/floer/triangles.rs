//! Triangle maps counted from nonnegative index-zero classes that lift to
//! embedded triangles of the universal cover.

use super::complex::{FloerData, Flavor, Generator, GradedChainComplex};
use super::f2::{self, F2Vec};
use super::FloerError;
use crate::admissibility::{check_admissible, AdmissibilityMode};
use crate::domain::{self, euler_measure, periodic_domain_basis, scale, sigma, sub, Domain, DomainError, UniversalCover};
use crate::linalg::Rat;
use crate::spinc::{c1_evaluate, maslov_index, SpinCClass4, SpincError, TriangleClassifier};
use crate::surface::{Family, IntersectionTuple, PointedMultiDiagram};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleEntry {
    pub from: usize,
    pub to: usize,
    pub n_z: i64,
    pub chain: Vec<i64>,
    pub class: SpinCClass4,
    /// `⟨c₁, H(P)⟩` on each triply-periodic basis domain, empty when the
    /// cover has annular faces.
    #[serde(serialize_with = "crate::linalg::ser_rats")]
    pub c1: Vec<Rat>,
}

/// `f[x, i] = Σ [w, i - n_z(ψ)]` over rigid classes `ψ ∈ π₂(x, Θ, w)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleMap {
    pub fams: [Family; 3],
    pub theta: IntersectionTuple,
    pub sources: Vec<IntersectionTuple>,
    pub targets: Vec<IntersectionTuple>,
    pub entries: Vec<TriangleEntry>,
    pub nz_bound: i64,
}

fn boxes(rank: usize, k: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out.into_iter().flat_map(|v| (-k..=k).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

/// Nonnegative index-zero triangle classes with `n_z <= bound` on a genus-one
/// triple, each checked to lift to an embedded triangle. Classes are searched
/// over triply-periodic coordinates in `[-bound - 2, bound + 2]`.
pub fn rigid_triangle_map(
    d: &PointedMultiDiagram,
    fams: [Family; 3],
    theta: &IntersectionTuple,
    bound: i64,
) -> Result<TriangleMap, FloerError> {
    let [a, b, c] = fams;
    let cover = UniversalCover::new(d)?;
    let sources = d.enumerate_tuples(a, b)?;
    let targets = d.enumerate_tuples(a, c)?;
    let lattice = periodic_domain_basis(d, &fams)?;
    let sig = sigma(d);
    let z = d.basepoint;
    let mut classifier: Option<TriangleClassifier> = None;
    let mut entries = Vec::new();
    for (i, x) in sources.iter().enumerate() {
        for (j, w) in targets.iter().enumerate() {
            let psi0 = match domain::connect_triangle(d, fams, x, theta, w) {
                Ok(p) => p,
                Err(DomainError::NoClass { .. }) => continue,
                Err(e) => return Err(e.into()),
            };
            if classifier.is_none() {
                let v = check_admissible(d, &fams, &[x.clone(), theta.clone(), w.clone()], AdmissibilityMode::Triple)?;
                if let Some(cert) = v.certificate {
                    return Err(FloerError::NotAdmissible(cert));
                }
                classifier = Some(TriangleClassifier::new(d, psi0.clone())?);
            }
            let z0 = psi0.chain[z];
            for k in boxes(lattice.rank, bound + 2) {
                let mut chain = psi0.chain.clone();
                for (p, &kk) in lattice.basis.iter().zip(&k) {
                    chain = domain::add(&chain, &scale(p, kk));
                }
                let raw = Domain { chain, corners: psi0.corners.clone() };
                let lift = cover.lift(d, &raw)?;
                let nz = z0 - lift.sigma_multiple;
                if nz < 0 || nz > bound {
                    continue;
                }
                let chain = sub(&raw.chain, &scale(&sig, lift.sigma_multiple));
                if lift.cells.values().any(|&v| v < 0) || chain.iter().any(|&v| v < 0) {
                    continue;
                }
                let dom = Domain { chain, corners: raw.corners };
                if maslov_index(d, &dom)? != Rat::from_integer(0) {
                    continue;
                }
                if lift.cells.values().any(|&v| v > 1) || euler_measure(d, &dom.chain) != Rat::new(1, 4) {
                    return Err(FloerError::NotRigid {
                        from: x.clone(),
                        to: w.clone(),
                        chain: dom.chain,
                        reason: "index-zero class does not lift to an embedded triangle".into(),
                    });
                }
                let class = classifier.as_ref().expect("classifier").classify(d, &dom)?;
                let c1 = match lattice.basis.iter().map(|p| c1_evaluate(d, &dom, p, None)).collect() {
                    Ok(v) => v,
                    Err(SpincError::NoSpider(_)) => vec![],
                    Err(e) => return Err(e.into()),
                };
                entries.push(TriangleEntry { from: i, to: j, n_z: nz, chain: dom.chain, class, c1 });
            }
        }
    }
    Ok(TriangleMap { fams, theta: theta.clone(), sources, targets, entries, nz_bound: bound })
}

impl TriangleMap {
    /// Entry count mod 2 between two tuples at a given `n_z`.
    pub fn count(&self, from: usize, to: usize, n_z: i64) -> usize {
        self.entries.iter().filter(|e| e.from == from && e.to == to && e.n_z == n_z).count() % 2
    }

    /// The chain map between truncated complexes of the two ends, restricted
    /// to entries accepted by `keep`, as images of source generators.
    pub fn chain_map(
        &self,
        src: &FloerData,
        dst: &FloerData,
        flavor: Flavor,
        n: i64,
        keep: impl Fn(&TriangleEntry) -> bool,
    ) -> (GradedChainComplex, GradedChainComplex, Vec<F2Vec>) {
        let cs = src.complex(flavor, n);
        let cd = dst.complex(flavor, n);
        let images = cs
            .generators
            .iter()
            .map(|g| {
                let mut out = f2::zero(cd.len());
                for e in self.entries.iter().filter(|e| keep(e) && src.tuples[g.tuple] == self.sources[e.from]) {
                    let Some(t) = dst.index_of(&self.targets[e.to]) else { continue };
                    if let Some(k) = cd.index_of(Generator { tuple: t, level: g.level - e.n_z }) {
                        out[k] ^= true;
                    }
                }
                out
            })
            .collect();
        (cs, cd, images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::floer::top_generator;
    use num_traits::Signed;
    use crate::surface::*;

    const ABG: [Family; 3] = [Family::Alpha, Family::Beta, Family::Gamma];

    #[test]
    fn stabilization_counts_one() {
        let d = stabilization_triple();
        let theta = top_generator(&d, [Family::Beta, Family::Gamma]).unwrap();
        let m = rigid_triangle_map(&d, ABG, &theta, 2).unwrap();
        assert_eq!(m.sources.len(), 1);
        assert_eq!(m.targets.len(), 1);
        assert_eq!(m.count(0, 0, 0), 1);
    }

    #[test]
    fn one_handle_counts_one() {
        let d = one_handle_triple();
        let theta = top_generator(&d, [Family::Beta, Family::Gamma]).unwrap();
        let x = top_generator(&d, [Family::Alpha, Family::Beta]).unwrap();
        let w = top_generator(&d, [Family::Alpha, Family::Gamma]).unwrap();
        let m = rigid_triangle_map(&d, ABG, &theta, 2).unwrap();
        let i = m.sources.iter().position(|t| *t == x).unwrap();
        let j = m.targets.iter().position(|t| *t == w).unwrap();
        assert_eq!(m.count(i, j, 0), 1);
    }

    #[test]
    fn mcp_entries_follow_triangular_numbers() {
        let d = mcp_triple();
        let theta = d.enumerate_tuples(Family::Beta, Family::Gamma).unwrap()[0].clone();
        let m = rigid_triangle_map(&d, ABG, &theta, 6).unwrap();
        for e in &m.entries {
            let c = e.c1[0].abs().to_integer();
            let k = (c + 1) / 2;
            assert_eq!(e.n_z, k * (k - 1) / 2);
        }
        assert_eq!(m.entries.len(), 8);
    }
}
