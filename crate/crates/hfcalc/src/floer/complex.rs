//! Graded complexes over `F₂[U]`, their truncations and homology.

use super::f2::{self, Echelon, F2Vec};
use crate::linalg::Rat;
use crate::surface::{Family, IntersectionTuple};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Hat,
    Minus,
    Plus,
    Infinity,
}

impl Flavor {
    pub const ALL: [Flavor; 4] = [Flavor::Hat, Flavor::Minus, Flavor::Plus, Flavor::Infinity];

    pub fn parse(s: &str) -> Option<Flavor> {
        match s {
            "hat" => Some(Flavor::Hat),
            "minus" | "-" => Some(Flavor::Minus),
            "plus" | "+" => Some(Flavor::Plus),
            "infinity" | "inf" => Some(Flavor::Infinity),
            _ => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Flavor::Hat => "hat",
            Flavor::Minus => "minus",
            Flavor::Plus => "plus",
            Flavor::Infinity => "infinity",
        }
    }

    /// Level window `[lo, hi]` for truncation `n`.
    pub fn levels(self, n: i64) -> (i64, i64) {
        match self {
            Flavor::Hat => (0, 0),
            Flavor::Minus => (-n, -1),
            Flavor::Plus => (0, n),
            Flavor::Infinity => (-n, n),
        }
    }

    /// Whether the lower and upper ends of the window are cuts rather than
    /// genuine ends of the complex.
    fn cuts(self) -> (bool, bool) {
        match self {
            Flavor::Hat => (false, false),
            Flavor::Minus => (true, false),
            Flavor::Plus => (false, true),
            Flavor::Infinity => (true, true),
        }
    }
}

/// `∂[x, i] ∋ [y, i - n_z]`, counted mod 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    pub n_z: i64,
}

/// A positive class counted by the differential or a triangle map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidClass {
    pub from: usize,
    pub to: usize,
    pub n_z: i64,
    /// Summand index for product diagrams.
    pub part: Option<usize>,
    pub chain: Vec<i64>,
    pub lifted_cells: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RigidityCertificate {
    pub classes: Vec<RigidClass>,
    pub nz_bound: i64,
}

/// Generators of one Spin^c class with their gradings and the mod-2
/// arrows of the `U`-equivariant differential.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FloerData {
    pub families: [Family; 2],
    pub tuples: Vec<IntersectionTuple>,
    #[serde(serialize_with = "crate::linalg::ser_rats")]
    pub gradings: Vec<Rat>,
    pub arrows: Vec<Arrow>,
    pub certificate: RigidityCertificate,
}

/// Reduces a list of arrows mod 2.
pub fn reduce_arrows(arrows: impl IntoIterator<Item = Arrow>) -> Vec<Arrow> {
    let mut count: BTreeMap<Arrow, usize> = BTreeMap::new();
    for a in arrows {
        *count.entry(a).or_default() += 1;
    }
    count.into_iter().filter(|(_, c)| c % 2 == 1).map(|(a, _)| a).collect()
}

impl FloerData {
    /// Shifts all gradings so that tuple `i` sits at `value`.
    pub fn anchor(&mut self, i: usize, value: Rat) {
        let delta = value - self.gradings[i];
        for g in self.gradings.iter_mut() {
            *g += delta;
        }
    }

    pub fn index_of(&self, t: &IntersectionTuple) -> Option<usize> {
        self.tuples.iter().position(|x| x == t)
    }

    pub fn max_nz(&self) -> i64 {
        self.arrows.iter().map(|a| a.n_z).max().unwrap_or(0)
    }

    pub fn complex(&self, flavor: Flavor, n: i64) -> GradedChainComplex {
        GradedChainComplex::build(self, flavor, n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Generator {
    pub tuple: usize,
    pub level: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedChainComplex {
    pub flavor: Flavor,
    pub truncation: i64,
    pub generators: Vec<Generator>,
    #[serde(serialize_with = "crate::linalg::ser_rats")]
    pub gradings: Vec<Rat>,
    pub differential: Vec<Vec<usize>>,
    #[serde(skip)]
    tuple_gradings: Vec<Rat>,
    #[serde(skip)]
    margin: i64,
}

impl GradedChainComplex {
    fn build(data: &FloerData, flavor: Flavor, n: i64) -> GradedChainComplex {
        let (lo, hi) = flavor.levels(n);
        let mut generators = Vec::new();
        for level in lo..=hi {
            for t in 0..data.tuples.len() {
                generators.push(Generator { tuple: t, level });
            }
        }
        let index: BTreeMap<Generator, usize> = generators.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let differential = generators
            .iter()
            .map(|g| {
                let mut out: Vec<usize> = data
                    .arrows
                    .iter()
                    .filter(|a| a.from == g.tuple)
                    .filter_map(|a| index.get(&Generator { tuple: a.to, level: g.level - a.n_z }).copied())
                    .collect();
                out.sort();
                out
            })
            .collect();
        let gradings = generators.iter().map(|g| data.gradings[g.tuple] + Rat::from_integer(2 * g.level)).collect();
        GradedChainComplex {
            flavor,
            truncation: n,
            generators,
            gradings,
            differential,
            tuple_gradings: data.gradings.clone(),
            margin: data.max_nz() + 1,
        }
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn index_of(&self, g: Generator) -> Option<usize> {
        self.generators.iter().position(|&x| x == g)
    }

    /// Generator indices by grading.
    pub fn by_grading(&self) -> BTreeMap<Rat, Vec<usize>> {
        let mut m: BTreeMap<Rat, Vec<usize>> = BTreeMap::new();
        for (i, g) in self.gradings.iter().enumerate() {
            m.entry(*g).or_default().push(i);
        }
        m
    }

    pub fn boundary(&self, v: &[bool]) -> F2Vec {
        let mut out = f2::zero(self.len());
        for (i, &b) in v.iter().enumerate() {
            if b {
                for &j in &self.differential[i] {
                    out[j] ^= true;
                }
            }
        }
        out
    }

    /// `∂² = 0` and `∂` lowers the grading by one.
    pub fn check(&self) -> bool {
        let graded = self
            .differential
            .iter()
            .enumerate()
            .all(|(i, out)| out.iter().all(|&j| self.gradings[j] == self.gradings[i] - Rat::from_integer(1)));
        graded && (0..self.len()).all(|i| f2::is_zero(&self.boundary(&self.boundary(&f2::unit(self.len(), i)))))
    }

    /// `[x, i] ↦ [x, i - 1]`, dropping what leaves the window.
    pub fn u_map(&self, v: &[bool]) -> F2Vec {
        let mut out = f2::zero(self.len());
        for (i, &b) in v.iter().enumerate() {
            if b {
                let g = self.generators[i];
                if let Some(j) = self.index_of(Generator { tuple: g.tuple, level: g.level - 1 }) {
                    out[j] ^= true;
                }
            }
        }
        out
    }

    /// Whether homology at `g` agrees with that of the untruncated complex:
    /// every generator in gradings `g - 1 ..= g + 1` lies at least one
    /// arrow length plus one away from each cut end of the window.
    pub fn interior(&self, g: Rat) -> bool {
        let (lo, hi) = self.flavor.levels(self.truncation);
        let (cut_lo, cut_hi) = self.flavor.cuts();
        for t in &self.tuple_gradings {
            for h in [g - Rat::from_integer(1), g, g + Rat::from_integer(1)] {
                let twice = h - t;
                if !twice.is_integer() || twice.to_integer() % 2 != 0 {
                    continue;
                }
                let level = twice.to_integer() / 2;
                if level < lo || level > hi {
                    continue;
                }
                if (cut_lo && level < lo + self.margin) || (cut_hi && level > hi - self.margin) {
                    return false;
                }
            }
        }
        true
    }
}

/// Homology of a complex at each grading: representatives and an echelon
/// form that writes any cycle in terms of them.
#[derive(Clone, Debug)]
pub struct Homology {
    pub reps: BTreeMap<Rat, Vec<F2Vec>>,
    solvers: BTreeMap<Rat, (usize, Echelon)>,
}

impl Homology {
    pub fn new(c: &GradedChainComplex) -> Homology {
        let n = c.len();
        let groups = c.by_grading();
        let mut reps = BTreeMap::new();
        let mut solvers = BTreeMap::new();
        for (g, idx) in &groups {
            let images: Vec<F2Vec> = idx.iter().map(|&i| c.boundary(&f2::unit(n, i))).collect();
            let cycles: Vec<F2Vec> = f2::kernel(&images).iter().map(|k| embed(k, idx, n)).collect();
            let boundaries: Vec<F2Vec> = match groups.get(&(*g + Rat::from_integer(1))) {
                Some(up) => up.iter().map(|&i| c.boundary(&f2::unit(n, i))).collect(),
                None => vec![],
            };
            let mut e2 = Echelon::new(boundaries.len() + cycles.len());
            let mut nb = 0;
            for b in &boundaries {
                if e2.insert(b, nb).is_none() {
                    nb += 1;
                }
            }
            let mut hs = Vec::new();
            for z in &cycles {
                if e2.insert(z, nb + hs.len()).is_none() {
                    hs.push(z.clone());
                }
            }
            reps.insert(*g, hs);
            solvers.insert(*g, (nb, e2));
        }
        Homology { reps, solvers }
    }

    pub fn dim(&self, g: Rat) -> usize {
        self.reps.get(&g).map_or(0, |r| r.len())
    }

    /// Coordinates of a cycle in grading `g`.
    pub fn coords(&self, g: Rat, z: &[bool]) -> F2Vec {
        let Some((nb, e)) = self.solvers.get(&g) else { return vec![] };
        let t = e.express(z).expect("cycle in the span of boundaries and representatives");
        t[*nb..].to_vec()
    }
}

fn embed(k: &[bool], idx: &[usize], n: usize) -> F2Vec {
    let mut v = f2::zero(n);
    for (b, &i) in k.iter().zip(idx) {
        if *b {
            v[i] = true;
        }
    }
    v
}

/// Rank of the map induced on homology at grading `g` by a chain map of
/// degree `shift`.
pub fn induced_rank(
    src: &Homology,
    dst: &Homology,
    g: Rat,
    shift: Rat,
    map: impl Fn(&[bool]) -> F2Vec,
) -> usize {
    let Some(reps) = src.reps.get(&g) else { return 0 };
    let cols: Vec<F2Vec> = reps.iter().map(|r| dst.coords(g + shift, &map(r))).collect();
    f2::rank(&cols)
}

/// Graded `F₂`-dimensions with the rank of `U` out of each grading.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedModule {
    pub flavor: Flavor,
    pub truncation: i64,
    pub groups: Vec<GradedGroup>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedGroup {
    #[serde(serialize_with = "crate::linalg::ser_rat")]
    pub grading: Rat,
    pub dim: usize,
    pub u_rank: usize,
    pub interior: bool,
}

impl GradedModule {
    pub fn total_rank(&self) -> usize {
        self.groups.iter().map(|g| g.dim).sum()
    }

    pub fn dim(&self, g: Rat) -> usize {
        self.groups.iter().find(|x| x.grading == g).map_or(0, |x| x.dim)
    }

    /// Nonzero groups as `(grading, dim)`.
    pub fn support(&self) -> Vec<(Rat, usize)> {
        self.groups.iter().filter(|g| g.dim > 0).map(|g| (g.grading, g.dim)).collect()
    }
}

pub fn homology(c: &GradedChainComplex) -> GradedModule {
    let h = Homology::new(c);
    let two = Rat::from_integer(2);
    let groups = h
        .reps
        .keys()
        .map(|&g| {
            let u_rank = if c.flavor == Flavor::Hat { 0 } else { induced_rank(&h, &h, g, -two, |v| c.u_map(v)) };
            GradedGroup { grading: g, dim: h.dim(g), u_rank, interior: c.interior(g) }
        })
        .collect();
    GradedModule { flavor: c.flavor, truncation: c.truncation, groups }
}

/// `HF_red` at each interior grading of the plus complex: the cokernel of
/// the projection from the infinity complex.
pub fn reduced(data: &FloerData, n: i64) -> Vec<(Rat, usize)> {
    let inf = data.complex(Flavor::Infinity, n);
    let plus = data.complex(Flavor::Plus, n);
    let hi = Homology::new(&inf);
    let hp = Homology::new(&plus);
    let proj = |v: &[bool]| -> F2Vec {
        let mut out = f2::zero(plus.len());
        for (i, &b) in v.iter().enumerate() {
            if b {
                if let Some(j) = plus.index_of(inf.generators[i]) {
                    out[j] = true;
                }
            }
        }
        out
    };
    hp.reps
        .keys()
        .filter(|&&g| plus.interior(g) && inf.interior(g))
        .map(|&g| (g, hp.dim(g) - induced_rank(&hi, &hp, g, Rat::from_integer(0), proj)))
        .filter(|&(_, d)| d > 0)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_generator() -> FloerData {
        FloerData {
            families: [Family::Alpha, Family::Beta],
            tuples: vec![IntersectionTuple { points: vec![0] }],
            gradings: vec![Rat::from_integer(0)],
            arrows: vec![],
            certificate: RigidityCertificate::default(),
        }
    }

    #[test]
    fn tower_pattern() {
        let h = homology(&one_generator().complex(Flavor::Plus, 4));
        let s: Vec<(Rat, usize)> = (0..=4).map(|i| (Rat::from_integer(2 * i), 1)).collect();
        assert_eq!(h.support(), s);
        assert!(h.groups.iter().skip(1).all(|g| g.u_rank == 1));
        assert_eq!(h.groups[0].u_rank, 0);
    }

    #[test]
    fn acyclic_pair() {
        let mut d = one_generator();
        d.tuples.push(IntersectionTuple { points: vec![1] });
        d.gradings = vec![Rat::from_integer(1), Rat::from_integer(0)];
        d.arrows = vec![Arrow { from: 0, to: 1, n_z: 0 }];
        let c = d.complex(Flavor::Infinity, 3);
        assert!(c.check());
        assert_eq!(homology(&c).total_rank(), 0);
        assert!(reduced(&d, 3).is_empty());
    }

    #[test]
    fn reduce_mod_two() {
        let a = Arrow { from: 0, to: 1, n_z: 0 };
        let b = Arrow { from: 1, to: 0, n_z: 2 };
        assert_eq!(reduce_arrows([a, a, b]), vec![b]);
    }
}
