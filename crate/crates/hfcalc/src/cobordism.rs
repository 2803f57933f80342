//! Linking-presentation arithmetic for cobordisms built from one-, two- and
//! three-handles, and for closed four-manifolds.

use crate::linalg::{self, q_inertia, q_solve, smith, IMat, QMat, Rat};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CobordismError {
    #[error("InvalidPresentation: {0}")]
    InvalidPresentation(String),
    #[error("NotCharacteristic: {0:?}")]
    NotCharacteristic(Vec<i64>),
    #[error("NonTorsionBoundary: c is not in the image of the form")]
    NonTorsionBoundary,
    #[error("UnsupportedBoundary: {0}")]
    UnsupportedBoundary(String),
    #[error("IncompatibleRestrictions: {0}")]
    IncompatibleRestrictions(String),
    #[error("DomainError: {0}")]
    DomainError(String),
}

impl CobordismError {
    pub fn name(&self) -> &'static str {
        match self {
            CobordismError::InvalidPresentation(_) => "InvalidPresentation",
            CobordismError::NotCharacteristic(_) => "NotCharacteristic",
            CobordismError::NonTorsionBoundary => "NonTorsionBoundary",
            CobordismError::UnsupportedBoundary(_) => "UnsupportedBoundary",
            CobordismError::IncompatibleRestrictions(_) => "IncompatibleRestrictions",
            CobordismError::DomainError(_) => "DomainError",
        }
    }
}

fn s3() -> String {
    "S3".into()
}

/// Two-handles attached along a framed link with linking matrix `q`, after
/// `one_handles` one-handles and before `three_handles` three-handles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkingPresentation {
    pub q: IMat,
    #[serde(default)]
    pub one_handles: usize,
    #[serde(default)]
    pub three_handles: usize,
    #[serde(default = "s3")]
    pub from: String,
    #[serde(default)]
    pub to: Option<String>,
}

impl LinkingPresentation {
    pub fn new(q: IMat, one_handles: usize, three_handles: usize) -> Result<Self, CobordismError> {
        let p = LinkingPresentation { q, one_handles, three_handles, from: s3(), to: None };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), CobordismError> {
        let n = self.q.len();
        for (i, row) in self.q.iter().enumerate() {
            if row.len() != n {
                return Err(CobordismError::InvalidPresentation(format!("row {i} has length {}, expected {n}", row.len())));
            }
            for j in 0..n {
                if self.q[j][i] != row[j] {
                    return Err(CobordismError::InvalidPresentation(format!("not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.q.len()
    }

    fn starts_at_sphere(&self) -> bool {
        matches!(self.from.as_str(), "S3" | "S^3")
    }
}

/// On-disk form of a presentation, with optional splits and covectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationDocument {
    #[serde(rename = "Q")]
    pub q: IMat,
    #[serde(default)]
    pub one_handles: usize,
    #[serde(default)]
    pub three_handles: usize,
    #[serde(default = "s3")]
    pub from: String,
    #[serde(default)]
    pub to: Option<String>,
    #[serde(default)]
    pub split: Vec<Vec<usize>>,
    #[serde(default)]
    pub spinc: Vec<Vec<i64>>,
}

impl PresentationDocument {
    pub fn presentation(&self) -> Result<LinkingPresentation, CobordismError> {
        let p = LinkingPresentation {
            q: self.q.clone(),
            one_handles: self.one_handles,
            three_handles: self.three_handles,
            from: self.from.clone(),
            to: self.to.clone(),
        };
        p.validate()?;
        for c in &self.spinc {
            check_covector(&p.q, c)?;
        }
        Ok(p)
    }

    pub fn splits(&self) -> Vec<Split> {
        self.split.iter().map(|s| Split { first: s.clone() }).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CobordismInvariants {
    pub chi: i64,
    pub sigma: i64,
    pub b2_plus: usize,
    pub b2_minus: usize,
    pub b2_zero: usize,
}

pub fn cobordism_invariants(p: &LinkingPresentation) -> CobordismInvariants {
    let (pos, neg, zero) = linalg::inertia(&p.q);
    CobordismInvariants {
        chi: p.rank() as i64 - p.one_handles as i64 - p.three_handles as i64,
        sigma: pos as i64 - neg as i64,
        b2_plus: pos,
        b2_minus: neg,
        b2_zero: zero,
    }
}

pub fn is_characteristic(q: &IMat, c: &[i64]) -> bool {
    c.len() == q.len() && c.iter().enumerate().all(|(i, &ci)| (ci - q[i][i]).rem_euclid(2) == 0)
}

fn check_covector(q: &IMat, c: &[i64]) -> Result<(), CobordismError> {
    if c.len() != q.len() {
        return Err(CobordismError::InvalidPresentation(format!("covector of length {} for rank {}", c.len(), q.len())));
    }
    if !is_characteristic(q, c) {
        return Err(CobordismError::NotCharacteristic(c.to_vec()));
    }
    Ok(())
}

fn c1_squared_q(q: &QMat, c: &[Rat]) -> Result<Rat, CobordismError> {
    let x = q_solve(q, c.len(), c).ok_or(CobordismError::NonTorsionBoundary)?;
    Ok(c.iter().zip(&x).map(|(a, b)| a * b).sum())
}

/// `cᵀx` for any rational solution of `Qx = c`.
pub fn c1_squared(q: &IMat, c: &[i64]) -> Result<Rat, CobordismError> {
    check_covector(q, c)?;
    let c: Vec<Rat> = c.iter().map(|&v| Rat::from_integer(v)).collect();
    c1_squared_q(&linalg::to_q(q), &c)
}

fn shift_formula(c1sq: Rat, chi: i64, sigma: i64) -> Rat {
    (c1sq - Rat::from_integer(2 * chi + 3 * sigma)) / 4
}

/// `(c₁² - 2χ - 3σ) / 4`.
pub fn degree_shift(p: &LinkingPresentation, c: &[i64]) -> Result<Rat, CobordismError> {
    let inv = cobordism_invariants(p);
    Ok(shift_formula(c1_squared(&p.q, c)?, inv.chi, inv.sigma))
}

/// Power of `U` for the blow-up class with `⟨c₁, E⟩ = ±(2ℓ + 1)`.
pub fn blowup_power(l: u64) -> u64 {
    l * (l + 1) / 2
}

/// Degree of the closed invariant in `Spin^c` structure `𝔰`.
pub fn d_degree_closed(chi: i64, sigma: i64, c1sq: Rat) -> Rat {
    shift_formula(c1sq, chi, sigma)
}

/// `ker Q` as a free abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KGroup {
    pub rank: usize,
    pub basis: Vec<Vec<i64>>,
}

pub fn k_group(p: &LinkingPresentation) -> Result<KGroup, CobordismError> {
    if !p.starts_at_sphere() {
        return Err(CobordismError::UnsupportedBoundary(format!("incoming boundary {}", p.from)));
    }
    let basis = smith(&p.q, p.rank()).kernel();
    Ok(KGroup { rank: basis.len(), basis })
}

/// Every characteristic covector with entries in `[-bound, bound]`.
pub fn characteristic_covectors(q: &IMat, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for row in q.iter().enumerate().map(|(i, r)| r[i]) {
        let vals: Vec<i64> = (-bound..=bound).filter(|v| (v - row).rem_euclid(2) == 0).collect();
        out = out.into_iter().flat_map(|c| vals.iter().map(move |&v| [c.clone(), vec![v]].concat())).collect();
    }
    out
}

/// A handle-respecting split: one-handles and the two-handles listed in
/// `first` form `W₁`; the remaining two-handles and the three-handles form `W₂`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Split {
    pub first: Vec<usize>,
}

impl Split {
    fn parts(&self, n: usize) -> Result<(Vec<usize>, Vec<usize>), CobordismError> {
        let mut first = self.first.clone();
        first.sort_unstable();
        first.dedup();
        if first.len() != self.first.len() || first.iter().any(|&i| i >= n) {
            return Err(CobordismError::InvalidPresentation(format!("split {:?} of {n} two-handles", self.first)));
        }
        let second = (0..n).filter(|i| !first.contains(i)).collect();
        Ok((first, second))
    }

    /// All `2ⁿ` splits of `n` two-handles.
    pub fn all(n: usize) -> Vec<Split> {
        (0..1u32 << n).map(|m| Split { first: (0..n).filter(|&i| m >> i & 1 == 1).collect() }).collect()
    }
}

fn block(q: &IMat, rows: &[usize], cols: &[usize]) -> IMat {
    rows.iter().map(|&i| cols.iter().map(|&j| q[i][j]).collect()).collect()
}

/// Basis of the classes of `W` carried by `W₂`: vectors `v` with
/// `(Qv)_i = 0` for every two-handle `i` of `W₁`.
pub fn second_lattice(q: &IMat, split: &Split) -> Result<Vec<Vec<i64>>, CobordismError> {
    let n = q.len();
    let (first, _) = split.parts(n)?;
    if first.is_empty() {
        return Ok(linalg::identity(n));
    }
    let all: Vec<usize> = (0..n).collect();
    Ok(smith(&block(q, &first, &all), n).kernel())
}

/// Restrictions of a covector to the two sides: the entries on `W₁` and the
/// evaluations on [`second_lattice`].
pub fn restrictions(q: &IMat, split: &Split, c: &[i64]) -> Result<(Vec<i64>, Vec<i64>), CobordismError> {
    let (first, _) = split.parts(q.len())?;
    let lat = second_lattice(q, split)?;
    Ok((first.iter().map(|&i| c[i]).collect(), lat.iter().map(|v| linalg::dot(v, c)).collect()))
}

/// Degree shifts of the two sides, the second computed on the Schur
/// complement of the `W₁` block.
pub fn split_shifts(p: &LinkingPresentation, split: &Split, c: &[i64]) -> Result<(Rat, Rat), CobordismError> {
    check_covector(&p.q, c)?;
    let (first, second) = split.parts(p.rank())?;
    let qa = linalg::to_q(&block(&p.q, &first, &first));
    let qb = linalg::to_q(&block(&p.q, &first, &second));
    let qc = linalg::to_q(&block(&p.q, &second, &second));
    let k = first.len();
    if linalg::q_rank(&qa, k) != k {
        return Err(CobordismError::UnsupportedBoundary("middle boundary is not a rational homology sphere".into()));
    }
    let ca: Vec<Rat> = first.iter().map(|&i| Rat::from_integer(c[i])).collect();
    let cc: Vec<Rat> = second.iter().map(|&i| Rat::from_integer(c[i])).collect();
    // columns of Q_A⁻¹ Q_B
    let sols: Vec<Vec<Rat>> = (0..second.len())
        .map(|j| {
            let col: Vec<Rat> = qb.iter().map(|r| r[j]).collect();
            q_solve(&qa, k, &col).expect("nondegenerate block")
        })
        .collect();
    let schur: QMat = (0..second.len())
        .map(|i| (0..second.len()).map(|j| qc[i][j] - (0..k).map(|t| qb[t][i] * sols[j][t]).sum::<Rat>()).collect())
        .collect();
    let xa = q_solve(&qa, k, &ca).expect("nondegenerate block");
    let c2: Vec<Rat> = (0..second.len()).map(|i| cc[i] - (0..k).map(|t| qb[t][i] * xa[t]).sum::<Rat>()).collect();
    let sq1: Rat = ca.iter().zip(&xa).map(|(a, b)| a * b).sum();
    let (p1, n1, _) = q_inertia(qa);
    let shift1 = shift_formula(sq1, k as i64 - p.one_handles as i64, p1 as i64 - n1 as i64);
    let sq2 = c1_squared_q(&schur, &c2)?;
    let (p2, n2, _) = q_inertia(schur);
    let shift2 = shift_formula(sq2, second.len() as i64 - p.three_handles as i64, p2 as i64 - n2 as i64);
    Ok((shift1, shift2))
}

/// `Spin^c` structures on `W` with prescribed restrictions to both sides: a
/// coset `c + 2⟨generators⟩` of the image of `δH¹(Y₂)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpinCFiber {
    pub first: Vec<i64>,
    pub second: Vec<i64>,
    pub base: Vec<i64>,
    pub generators: Vec<Vec<i64>>,
    pub free_rank: usize,
    /// Torsion invariants of the image; empty for presentations from `S³`.
    pub torsion: Vec<i64>,
    /// Members, when the fiber is finite or a bound was given.
    pub members: Option<Vec<Vec<i64>>>,
}

impl SpinCFiber {
    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }
}

pub fn composition_fiber(
    p: &LinkingPresentation,
    split: &Split,
    first: &[i64],
    second: &[i64],
    bound: Option<i64>,
) -> Result<SpinCFiber, CobordismError> {
    if !p.starts_at_sphere() {
        return Err(CobordismError::UnsupportedBoundary(format!("incoming boundary {}", p.from)));
    }
    let n = p.rank();
    let (idx, _) = split.parts(n)?;
    let lat = second_lattice(&p.q, split)?;
    if first.len() != idx.len() || second.len() != lat.len() {
        return Err(CobordismError::IncompatibleRestrictions(format!(
            "expected restrictions of lengths {} and {}",
            idx.len(),
            lat.len()
        )));
    }
    let mut a: IMat = idx.iter().map(|&i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    a.extend(lat.iter().cloned());
    let diag: Vec<i64> = (0..n).map(|i| p.q[i][i]).collect();
    let target: Vec<i64> = first.iter().chain(second).copied().collect();
    let ad = linalg::mat_vec(&a, &diag);
    let mut rhs = Vec::with_capacity(target.len());
    for (t, d) in target.iter().zip(&ad) {
        if (t - d).rem_euclid(2) != 0 {
            return Err(CobordismError::IncompatibleRestrictions("restrictions are not characteristic".into()));
        }
        rhs.push((t - d) / 2);
    }
    let s = smith(&a, n);
    let h = s
        .solve(&rhs)
        .ok_or_else(|| CobordismError::IncompatibleRestrictions("no class restricts to both sides".into()))?;
    let base: Vec<i64> = diag.iter().zip(&h).map(|(d, x)| d + 2 * x).collect();
    let generators = s.kernel();
    let torsion = if generators.is_empty() {
        vec![]
    } else {
        smith(&linalg::transpose(&generators, n), generators.len()).divisors.into_iter().filter(|&d| d > 1).collect()
    };
    let free_rank = generators.len();
    let members = match (free_rank, bound) {
        (0, _) => Some(vec![base.clone()]),
        (_, Some(b)) => {
            let mut out = vec![base.clone()];
            for g in &generators {
                out = out
                    .into_iter()
                    .flat_map(|c| (-b..=b).map(move |t| c.iter().zip(g).map(|(x, y)| x + 2 * t * y).collect::<Vec<_>>()))
                    .collect();
            }
            out.sort();
            Some(out)
        }
        _ => None,
    };
    Ok(SpinCFiber { first: first.to_vec(), second: second.to_vec(), base, generators, free_rank, torsion, members })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CutData {
    pub b2_plus_first: usize,
    pub b2_plus_second: usize,
    pub delta_rank: usize,
}

pub fn admissible_cut(data: &CutData) -> bool {
    data.b2_plus_first > 0 && data.b2_plus_second > 0 && data.delta_rank == 0
}

/// Cut data of a split: `b₂⁺` of the `W₁` block, of the form on
/// [`second_lattice`], and the rank of the `δH¹` image.
pub fn cut_data(p: &LinkingPresentation, split: &Split) -> Result<CutData, CobordismError> {
    let n = p.rank();
    let (first, _) = split.parts(n)?;
    let lat = second_lattice(&p.q, split)?;
    let (b1, _, _) = linalg::inertia(&block(&p.q, &first, &first));
    let form: IMat = lat.iter().map(|u| lat.iter().map(|v| linalg::dot(u, &linalg::mat_vec(&p.q, v))).collect()).collect();
    let (b2, _, _) = linalg::inertia(&form);
    let mut a: IMat = first.iter().map(|&i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    a.extend(lat);
    let delta_rank = n - smith(&a, n).rank();
    Ok(CutData { b2_plus_first: b1, b2_plus_second: b2, delta_rank })
}

pub fn admissible_cut_check(p: &LinkingPresentation, split: &Split) -> Result<bool, CobordismError> {
    Ok(admissible_cut(&cut_data(p, split)?))
}

/// Whether the invariant of a sum along `Y` is forced to vanish.
pub fn vanishing_predicate(b2_plus_first: usize, b2_plus_second: usize, hf_red_vanishes: bool) -> bool {
    b2_plus_first > 0 && b2_plus_second > 0 && hf_red_vanishes
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Adjunction {
    Allowed,
    Excluded,
}

/// Excluded iff `⟨c₁, Σ⟩ + Σ·Σ > 2g - 2`.
pub fn adjunction_filter(c1_on_surface: i64, self_int: i64, genus: i64) -> Result<Adjunction, CobordismError> {
    if genus < 1 {
        return Err(CobordismError::DomainError(format!("genus {genus} < 1")));
    }
    if self_int < 0 {
        return Err(CobordismError::DomainError(format!("self-intersection {self_int} < 0")));
    }
    Ok(if c1_on_surface + self_int > 2 * genus - 2 { Adjunction::Excluded } else { Adjunction::Allowed })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(q: IMat) -> LinkingPresentation {
        LinkingPresentation::new(q, 0, 0).unwrap()
    }

    fn r(n: i64) -> Rat {
        Rat::from_integer(n)
    }

    #[test]
    fn invariants_of_small_forms() {
        let i = cobordism_invariants(&pres(vec![vec![-1]]));
        assert_eq!((i.chi, i.sigma, i.b2_plus), (1, -1, 0));
        let i = cobordism_invariants(&pres(vec![vec![1, 0], vec![0, -1]]));
        assert_eq!((i.sigma, i.b2_plus), (0, 1));
        let i = cobordism_invariants(&pres(vec![vec![0, 1], vec![1, 0]]));
        assert_eq!((i.sigma, i.b2_plus), (0, 1));
    }

    #[test]
    fn asymmetric_is_rejected() {
        let e = LinkingPresentation::new(vec![vec![0, 1], vec![2, 0]], 0, 0).unwrap_err();
        assert_eq!(e.name(), "InvalidPresentation");
    }

    #[test]
    fn c1_squared_of_blowup() {
        for k in 0..6 {
            let c = 2 * k + 1;
            assert_eq!(c1_squared(&vec![vec![-1]], &[c]).unwrap(), r(-(c * c)));
        }
        assert_eq!(c1_squared(&vec![vec![0]], &[0]).unwrap(), r(0));
        assert_eq!(c1_squared(&vec![vec![0]], &[2]), Err(CobordismError::NonTorsionBoundary));
        assert_eq!(c1_squared(&vec![vec![-1]], &[2]).unwrap_err().name(), "NotCharacteristic");
    }

    #[test]
    fn shifts() {
        let b = pres(vec![vec![-1]]);
        assert_eq!(degree_shift(&b, &[1]).unwrap(), r(0));
        assert_eq!(degree_shift(&b, &[-1]).unwrap(), r(0));
        assert_eq!(degree_shift(&b, &[3]).unwrap(), r(-2));
        for l in 0..=10i64 {
            let s = degree_shift(&b, &[2 * l + 1]).unwrap();
            assert_eq!(s, r(-l * (l + 1)));
            assert_eq!(s, r(-2 * blowup_power(l as u64) as i64));
        }
        let one = LinkingPresentation::new(vec![], 1, 0).unwrap();
        assert_eq!(degree_shift(&one, &[]).unwrap(), Rat::new(1, 2));
        let three = LinkingPresentation::new(vec![], 0, 1).unwrap();
        assert_eq!(degree_shift(&three, &[]).unwrap(), Rat::new(1, 2));
    }

    #[test]
    fn blowup_powers() {
        assert_eq!([0, 1, 3].map(blowup_power), [0, 1, 6]);
    }

    #[test]
    fn closed_degrees() {
        assert_eq!(d_degree_closed(24, -16, r(0)), r(0));
        assert_eq!(d_degree_closed(3, -1, r(-1)), r(-1));
        assert_eq!(d_degree_closed(2, 0, r(0)), r(-1));
    }

    #[test]
    fn kernels() {
        assert_eq!(k_group(&pres(vec![vec![-1]])).unwrap().rank, 0);
        assert_eq!(k_group(&pres(vec![vec![0]])).unwrap().rank, 1);
        assert_eq!(k_group(&pres(vec![vec![0, 2], vec![2, 0]])).unwrap().rank, 0);
        let mut p = pres(vec![vec![0]]);
        p.from = "L(2,1)".into();
        assert_eq!(k_group(&p).unwrap_err().name(), "UnsupportedBoundary");
    }

    #[test]
    fn fiber_over_sphere_is_a_point() {
        let p = pres(vec![vec![1, 0], vec![0, -1]]);
        let split = Split { first: vec![0] };
        let (a, b) = restrictions(&p.q, &split, &[1, 3]).unwrap();
        let f = composition_fiber(&p, &split, &a, &b, None).unwrap();
        assert!(f.is_finite());
        assert_eq!(f.members, Some(vec![vec![1, 3]]));
    }

    #[test]
    fn fiber_over_handlebody_boundary_is_free() {
        let p = pres(vec![vec![0, 1], vec![1, 0]]);
        let split = Split { first: vec![0] };
        let (a, b) = restrictions(&p.q, &split, &[0, 2]).unwrap();
        let f = composition_fiber(&p, &split, &a, &b, Some(1)).unwrap();
        assert_eq!(f.free_rank, 1);
        assert!(f.torsion.is_empty());
        let m = f.members.unwrap();
        assert_eq!(m.len(), 3);
        assert!(m.contains(&vec![0, 2]));
        assert!(m.iter().all(|c| c[0] == 0 && restrictions(&p.q, &split, c).unwrap() == (a.clone(), b.clone())));
    }

    #[test]
    fn fiber_with_empty_first_side() {
        let p = pres(vec![vec![2, 1], vec![1, 3]]);
        let split = Split { first: vec![] };
        let f = composition_fiber(&p, &split, &[], &[0, 1], None).unwrap();
        assert_eq!(f.members, Some(vec![vec![0, 1]]));
    }

    #[test]
    fn fiber_rejects_mismatch() {
        let p = pres(vec![vec![1, 0], vec![0, -1]]);
        let split = Split { first: vec![0] };
        let e = composition_fiber(&p, &split, &[2], &[1], None).unwrap_err();
        assert_eq!(e.name(), "IncompatibleRestrictions");
    }

    #[test]
    fn cuts() {
        let cut = |ds: [usize; 3]| admissible_cut(&CutData { b2_plus_first: ds[0], b2_plus_second: ds[1], delta_rank: ds[2] });
        assert!(cut([1, 1, 0]));
        assert!(!cut([1, 0, 0]));
        assert!(!cut([1, 1, 1]));
        let split = Split { first: vec![0] };
        assert!(admissible_cut_check(&pres(vec![vec![1, 0], vec![0, 1]]), &split).unwrap());
        for s in Split::all(2) {
            assert!(!admissible_cut_check(&pres(vec![vec![1, 0], vec![0, -1]]), &s).unwrap());
        }
    }

    #[test]
    fn vanishing() {
        assert!(vanishing_predicate(1, 1, true));
        assert!(!vanishing_predicate(0, 2, true));
        assert!(!vanishing_predicate(1, 1, false));
    }

    #[test]
    fn adjunction() {
        assert_eq!(adjunction_filter(0, 0, 1).unwrap(), Adjunction::Allowed);
        assert_eq!(adjunction_filter(2, 0, 1).unwrap(), Adjunction::Excluded);
        assert_eq!(adjunction_filter(1, 1, 2).unwrap(), Adjunction::Allowed);
        assert_eq!(adjunction_filter(0, 0, 0).unwrap_err().name(), "DomainError");
        assert_eq!(adjunction_filter(0, -1, 1).unwrap_err().name(), "DomainError");
    }

    #[test]
    fn split_of_diagonal_form_adds() {
        let p = LinkingPresentation::new(vec![vec![-1, 0], vec![0, -1]], 1, 1).unwrap();
        let c = [3, 5];
        let (a, b) = split_shifts(&p, &Split { first: vec![0] }, &c).unwrap();
        assert_eq!(a, Rat::new(-3, 2));
        assert_eq!(b, Rat::new(-11, 2));
        assert_eq!(a + b, degree_shift(&p, &c).unwrap());
    }

    #[test]
    fn covectors_are_closed_under_negation() {
        let q = vec![vec![1, 2], vec![2, 0]];
        let cs = characteristic_covectors(&q, 3);
        assert_eq!(cs.len(), 4 * 3);
        for c in &cs {
            let neg: Vec<i64> = c.iter().map(|x| -x).collect();
            assert!(cs.contains(&neg));
        }
    }
}
