//! Dual spiders and first Chern class evaluation on triply-periodic domains.

use super::SpincError;
use crate::domain::{boundary, euler_measure, Corners, Domain, UniversalCover};
use crate::linalg::Rat;
use crate::surface::{Dart, FaceId, Family, PointedMultiDiagram};
use rand::Rng;
use serde::Serialize;
use std::collections::{BTreeMap, VecDeque};

type Cell = (FaceId, (i64, i64));

/// One path of a leg: the edges it crosses, each as a dart that is forward
/// when crossing from the right face to the left face, and the edge it ends
/// on, forward when approached from its right face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Leg {
    pub crossings: Vec<Dart>,
    pub terminal: Dart,
}

/// Central faces and three legs, one per family of the triple; leg `i`
/// has one path per central face and ends on family `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualSpider {
    pub center: Vec<FaceId>,
    pub legs: [Vec<Leg>; 3],
}

fn other_side(d: &PointedMultiDiagram, x: Dart) -> (FaceId, FaceId) {
    if x.forward {
        (d.right_face(x.edge), d.left_face(x.edge))
    } else {
        (d.left_face(x.edge), d.right_face(x.edge))
    }
}

/// `n_center(P)` plus, along each leg, the signed crossings with the pushed
/// off boundary of `P` on that leg's family.
pub fn dual_spider_number(
    d: &PointedMultiDiagram,
    fams: [Family; 3],
    p: &[i64],
    s: &DualSpider,
) -> Result<i64, SpincError> {
    let mut total: i64 = s.center.iter().map(|&f| p[f]).sum();
    for (i, fam) in fams.iter().enumerate() {
        if s.legs[i].len() != s.center.len() {
            return Err(SpincError::NonGenericSpider("leg count differs from center count".into()));
        }
        for (leg, &start) in s.legs[i].iter().zip(&s.center) {
            let mut cur = start;
            for &x in &leg.crossings {
                let (from, to) = other_side(d, x);
                if from != cur {
                    return Err(SpincError::NonGenericSpider(format!("leg jumps at edge {}", x.edge)));
                }
                if d.edge_family(x.edge) == Some(*fam) {
                    total += p[to] - p[from];
                }
                cur = to;
            }
            if d.edge_family(leg.terminal.edge) != Some(*fam) {
                return Err(SpincError::NonGenericSpider(format!("leg ends off the {fam} curves")));
            }
            let (inside, outside) = other_side(d, leg.terminal);
            if inside != cur {
                return Err(SpincError::NonGenericSpider("terminal edge not adjacent".into()));
            }
            total -= (p[inside] - p[outside]).max(0);
        }
    }
    Ok(total)
}

/// `e(P) + #∂P - 2 n_z(P) + 2σ`.
pub fn c1_from_spider_number(d: &PointedMultiDiagram, p: &[i64], sigma: i64) -> Result<Rat, SpincError> {
    let b = boundary(d, p);
    if !b.residual.is_empty() {
        return Err(SpincError::NotPeriodic);
    }
    Ok(euler_measure(d, p) + Rat::from_integer(b.full_count() - 2 * p[d.basepoint] + 2 * sigma))
}

/// Samples dual spiders inside the lift of an embedded genus-one triangle.
#[derive(Clone, Debug)]
pub struct SpiderSampler {
    cover: UniversalCover,
    cells: Vec<Cell>,
    dist: Vec<BTreeMap<Cell, usize>>,
    targets: Vec<BTreeMap<Cell, Vec<Dart>>>,
}

impl SpiderSampler {
    pub fn new(d: &PointedMultiDiagram, psi: &Domain) -> Result<SpiderSampler, SpincError> {
        let Corners::Triangle { fams, .. } = &psi.corners else {
            return Err(SpincError::MalformedCorners);
        };
        let cover = UniversalCover::new(d)?;
        let Some(shift) = cover.shift.clone() else {
            return Err(SpincError::NoSpider("an annular face has no compact lift".into()));
        };
        let lift = cover.lift(d, psi)?;
        let sign = lift.cells.values().next().copied().unwrap_or(0);
        if !lift.is_realizable() || sign.abs() != 1 || lift.cells.values().any(|&v| v != sign) {
            return Err(SpincError::NoSpider("triangle class has no embedded lift".into()));
        }
        let support = &lift.cells;
        let cells: Vec<Cell> = support.keys().copied().collect();
        let lp = cover.lift_boundary(d, psi)?;
        let mut dist = Vec::new();
        let mut targets = Vec::new();
        for fam in fams {
            let mut tg: BTreeMap<Cell, Vec<Dart>> = BTreeMap::new();
            for &(e, t) in lp.keys() {
                if d.edge_family(e) != Some(*fam) {
                    continue;
                }
                let right = (d.right_face(e), t);
                let left = (d.left_face(e), (t.0 + shift[e].0, t.1 + shift[e].1));
                if support.contains_key(&right) {
                    tg.entry(right).or_default().push(Dart::fwd(e));
                } else if support.contains_key(&left) {
                    tg.entry(left).or_default().push(Dart::bwd(e));
                }
            }
            let mut ds: BTreeMap<Cell, usize> = tg.keys().map(|&c| (c, 0)).collect();
            let mut queue: VecDeque<Cell> = tg.keys().copied().collect();
            while let Some(c) = queue.pop_front() {
                for (_, n) in cover.neighbors(d, c.0, c.1) {
                    if support.contains_key(&n) && !ds.contains_key(&n) {
                        ds.insert(n, ds[&c] + 1);
                        queue.push_back(n);
                    }
                }
            }
            if ds.len() != cells.len() {
                return Err(SpincError::NoSpider("lift is not connected".into()));
            }
            dist.push(ds);
            targets.push(tg);
        }
        Ok(SpiderSampler { cover, cells, dist, targets })
    }

    pub fn sample<R: Rng>(&self, d: &PointedMultiDiagram, rng: &mut R) -> DualSpider {
        let center = self.cells[rng.gen_range(0..self.cells.len())];
        let legs: Vec<Vec<Leg>> = (0..3)
            .map(|i| {
                let mut cur = center;
                let mut crossings = Vec::new();
                while self.dist[i][&cur] > 0 {
                    let want = self.dist[i][&cur] - 1;
                    let opts: Vec<(Dart, Cell)> = self
                        .cover
                        .neighbors(d, cur.0, cur.1)
                        .into_iter()
                        .filter(|(_, n)| self.dist[i].get(n) == Some(&want))
                        .collect();
                    let (x, n) = opts[rng.gen_range(0..opts.len())];
                    crossings.push(x);
                    cur = n;
                }
                let ends = &self.targets[i][&cur];
                vec![Leg { crossings, terminal: ends[rng.gen_range(0..ends.len())] }]
            })
            .collect();
        let [a, b, c]: [Vec<Leg>; 3] = legs.try_into().expect("three legs");
        DualSpider { center: vec![center.0], legs: [a, b, c] }
    }

    /// The spider whose center is the cell nearest all three sides, with
    /// legs taking the first descending neighbor.
    pub fn canonical(&self, d: &PointedMultiDiagram) -> DualSpider {
        let center = *self
            .cells
            .iter()
            .min_by_key(|c| (self.dist.iter().map(|m| m[c]).sum::<usize>(), **c))
            .expect("nonempty lift");
        let legs: Vec<Vec<Leg>> = (0..3)
            .map(|i| {
                let mut cur = center;
                let mut crossings = Vec::new();
                while self.dist[i][&cur] > 0 {
                    let want = self.dist[i][&cur] - 1;
                    let (x, n) = self
                        .cover
                        .neighbors(d, cur.0, cur.1)
                        .into_iter()
                        .find(|(_, n)| self.dist[i].get(n) == Some(&want))
                        .expect("descending neighbor");
                    crossings.push(x);
                    cur = n;
                }
                vec![Leg { crossings, terminal: self.targets[i][&cur][0] }]
            })
            .collect();
        let [a, b, c]: [Vec<Leg>; 3] = legs.try_into().expect("three legs");
        DualSpider { center: vec![center.0], legs: [a, b, c] }
    }
}
