//! Positive index-one disks of genus-one diagrams, found through their
//! compact lifts to the universal cover.

use super::complex::RigidClass;
use super::FloerError;
use crate::domain::{self, euler_measure, periodic_domain_basis, scale, sigma, sub, Domain, UniversalCover};
use crate::linalg::Rat;
use crate::spinc::maslov_index;
use crate::surface::{Family, IntersectionTuple, PointedMultiDiagram};

/// Range of `k` for which `φ₀ + kP - mΣ` can be nonnegative with
/// `0 <= n_z <= bound`.
pub(super) fn window(phi0: &[i64], p: &[i64], z0: i64, bound: i64) -> Option<(i64, i64)> {
    let mut lo: Option<i64> = None;
    let mut hi: Option<i64> = None;
    for (&c, &pf) in phi0.iter().zip(p) {
        if pf > 0 {
            let v = num_integer::div_ceil(z0 - bound - c, pf);
            lo = Some(lo.map_or(v, |l| l.max(v)));
        } else if pf < 0 {
            let v = num_integer::div_floor(c - z0 + bound, -pf);
            hi = Some(hi.map_or(v, |h| h.min(v)));
        }
    }
    Some((lo?, hi?))
}

/// Every nonnegative class of index one between distinct members, each
/// checked to lift to an embedded bigon.
pub(super) fn genus_one_disks(
    d: &PointedMultiDiagram,
    a: Family,
    b: Family,
    members: &[IntersectionTuple],
    bound: i64,
) -> Result<Vec<RigidClass>, FloerError> {
    let cover = UniversalCover::new(d)?;
    let lattice = periodic_domain_basis(d, &[a, b])?;
    if lattice.rank > 1 {
        return Err(FloerError::UnsupportedGenus(format!("periodic lattice of rank {}", lattice.rank)));
    }
    let sig = sigma(d);
    let z = d.basepoint;
    let mut out = Vec::new();
    for (i, x) in members.iter().enumerate() {
        for (j, y) in members.iter().enumerate() {
            if i == j {
                continue;
            }
            let phi0 = domain::connect_pair(d, a, b, x, y)?;
            let z0 = phi0.chain[z];
            let (lo, hi) = match lattice.basis.first() {
                None => (0, 0),
                Some(p) => window(&phi0.chain, p, z0, bound).ok_or_else(|| {
                    FloerError::UnsupportedGenus("periodic domain of one sign leaves no finite window".into())
                })?,
            };
            for k in lo..=hi {
                let chain = match lattice.basis.first() {
                    Some(p) => domain::add(&phi0.chain, &scale(p, k)),
                    None => phi0.chain.clone(),
                };
                let raw = Domain { chain, corners: phi0.corners.clone() };
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
                if maslov_index(d, &dom)? != Rat::from_integer(1) {
                    continue;
                }
                if lift.cells.values().any(|&v| v > 1) || euler_measure(d, &dom.chain) != Rat::new(1, 2) {
                    return Err(FloerError::NotRigid {
                        from: x.clone(),
                        to: y.clone(),
                        chain: dom.chain,
                        reason: "index-one class does not lift to an embedded bigon".into(),
                    });
                }
                out.push(RigidClass { from: i, to: j, n_z: nz, part: None, chain: dom.chain, lifted_cells: lift.cells.len() });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_from_signs() {
        assert_eq!(window(&[0, 0, 0], &[1, -1, 0], 0, 2), Some((-2, 2)));
        assert_eq!(window(&[0, 0], &[1, 0], 0, 2), None);
    }
}
