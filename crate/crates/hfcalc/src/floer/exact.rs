//! Exactness of the long exact sequences induced by
//! `0 → CF⁻ → CF^∞ → CF⁺ → 0` and `0 → ĈF → CF⁺ --U--> CF⁺ → 0`.

use super::complex::{FloerData, Flavor, Generator, GradedChainComplex, Homology};
use super::f2::{self, Echelon, F2Vec};
use super::FloerError;
use crate::linalg::Rat;
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub sequence: String,
    pub gradings: usize,
    pub interior: usize,
}

/// A short exact sequence `0 → A --i--> B --p--> C → 0` of generator-level
/// maps, `i` of degree zero and `p` of degree `dp`.
struct Ses<'a> {
    name: &'a str,
    labels: [&'a str; 3],
    a: &'a GradedChainComplex,
    b: &'a GradedChainComplex,
    c: &'a GradedChainComplex,
    i: Box<dyn Fn(&[bool]) -> F2Vec + 'a>,
    p: Box<dyn Fn(&[bool]) -> F2Vec + 'a>,
    dp: Rat,
}

fn relabel<'a>(src: &'a GradedChainComplex, dst: &'a GradedChainComplex, shift: i64) -> impl Fn(&[bool]) -> F2Vec + 'a {
    move |v: &[bool]| {
        let mut out = f2::zero(dst.len());
        for (k, &bit) in v.iter().enumerate() {
            if bit {
                let g = src.generators[k];
                if let Some(j) = dst.index_of(Generator { tuple: g.tuple, level: g.level + shift }) {
                    out[j] ^= true;
                }
            }
        }
        out
    }
}

/// Some `x` in grading `g` of `src` with `map(x) = target`.
fn preimage(src: &GradedChainComplex, g: Rat, map: &dyn Fn(&[bool]) -> F2Vec, target: &[bool]) -> Option<F2Vec> {
    let idx: Vec<usize> = (0..src.len()).filter(|&k| src.gradings[k] == g).collect();
    let mut e = Echelon::new(idx.len());
    for (t, &k) in idx.iter().enumerate() {
        e.insert(&map(&f2::unit(src.len(), k)), t);
    }
    let tags = e.express(target)?;
    let mut out = f2::zero(src.len());
    for (t, &k) in idx.iter().enumerate() {
        if tags[t] {
            out[k] = true;
        }
    }
    Some(out)
}

/// Matrix, as columns of coordinates, of the map induced on homology from
/// grading `g` of `src` to grading `g + shift` of `dst`.
fn on_homology(src: &Homology, dst: &Homology, g: Rat, shift: Rat, map: &dyn Fn(&[bool]) -> F2Vec) -> Vec<F2Vec> {
    let Some(reps) = src.reps.get(&g) else { return vec![] };
    reps.iter().map(|r| dst.coords(g + shift, &map(r))).collect()
}

fn composes_to_zero(first: &[F2Vec], second: &[F2Vec], mid: usize, out: usize) -> bool {
    if mid == 0 || out == 0 {
        return true;
    }
    first.iter().all(|col| f2::is_zero(&f2::apply(second, col, out)))
}

impl Ses<'_> {
    fn check(&self) -> Result<ExactnessReport, FloerError> {
        let (ha, hb, hc) = (Homology::new(self.a), Homology::new(self.b), Homology::new(self.c));
        let zero = Rat::from_integer(0);
        let one = Rat::from_integer(1);
        let dd = -self.dp - one;
        let delta = |g: Rat, c: &[bool]| -> Option<F2Vec> {
            let b = preimage(self.b, g - self.dp, &*self.p, c)?;
            let db = self.b.boundary(&b);
            let a = preimage(self.a, g - self.dp - one, &*self.i, &db)?;
            Some(ha.coords(g + dd, &a))
        };
        let delta_matrix = |g: Rat| -> Option<Vec<F2Vec>> {
            hc.reps.get(&g).map_or(Some(vec![]), |reps| reps.iter().map(|r| delta(g, r)).collect())
        };
        let fail = |pos: &str, g: Rat| FloerError::ExactnessFailure {
            sequence: self.name.to_string(),
            position: pos.to_string(),
            grading: g,
        };
        let mut gradings: BTreeSet<Rat> = BTreeSet::new();
        for h in [&ha, &hb, &hc] {
            gradings.extend(h.reps.keys().copied());
        }
        let mut interior = 0;
        for &g in &gradings {
            let i_into_b = on_homology(&ha, &hb, g, zero, &*self.i);
            let p_from_b = on_homology(&hb, &hc, g, self.dp, &*self.p);
            if !composes_to_zero(&i_into_b, &p_from_b, hb.dim(g), hc.dim(g + self.dp)) || hb.dim(g) - f2::rank(&p_from_b) != f2::rank(&i_into_b) {
                return Err(fail(self.labels[1], g));
            }
            let p_into_c = on_homology(&hb, &hc, g - self.dp, self.dp, &*self.p);
            let d_from_c = delta_matrix(g).ok_or_else(|| fail(self.labels[2], g))?;
            if !composes_to_zero(&p_into_c, &d_from_c, hc.dim(g), ha.dim(g + dd)) || hc.dim(g) - f2::rank(&d_from_c) != f2::rank(&p_into_c) {
                return Err(fail(self.labels[2], g));
            }
            let d_into_a = delta_matrix(g - dd).ok_or_else(|| fail(self.labels[0], g))?;
            let i_from_a = on_homology(&ha, &hb, g, zero, &*self.i);
            if !composes_to_zero(&d_into_a, &i_from_a, ha.dim(g), hb.dim(g)) || ha.dim(g) - f2::rank(&i_from_a) != f2::rank(&d_into_a) {
                return Err(fail(self.labels[0], g));
            }
            if self.a.interior(g) && self.b.interior(g) && self.c.interior(g) {
                interior += 1;
            }
        }
        Ok(ExactnessReport { sequence: self.name.to_string(), gradings: gradings.len(), interior })
    }
}

/// Checks both long exact sequences at every grading of the truncation-`n`
/// complexes.
pub fn exactness_check(data: &FloerData, n: i64) -> Result<Vec<ExactnessReport>, FloerError> {
    let minus = data.complex(Flavor::Minus, n);
    let inf = data.complex(Flavor::Infinity, n);
    let plus = data.complex(Flavor::Plus, n);
    let hat = data.complex(Flavor::Hat, n);
    let plus_short = data.complex(Flavor::Plus, n - 1);
    let first = Ses {
        name: "minus-infinity-plus",
        labels: ["HF-", "HFinf", "HF+"],
        a: &minus,
        b: &inf,
        c: &plus,
        i: Box::new(relabel(&minus, &inf, 0)),
        p: Box::new(relabel(&inf, &plus, 0)),
        dp: Rat::from_integer(0),
    };
    let second = Ses {
        name: "hat-plus-plus",
        labels: ["HFhat", "HF+", "HF+"],
        a: &hat,
        b: &plus,
        c: &plus_short,
        i: Box::new(relabel(&hat, &plus, 0)),
        p: Box::new(relabel(&plus, &plus_short, -1)),
        dp: Rat::from_integer(-2),
    };
    Ok(vec![first.check()?, second.check()?])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::floer::complex::{Arrow, RigidityCertificate};
    use crate::surface::{Family, IntersectionTuple};

    fn data(arrows: Vec<Arrow>, gradings: Vec<i64>) -> FloerData {
        FloerData {
            families: [Family::Alpha, Family::Beta],
            tuples: (0..gradings.len()).map(|i| IntersectionTuple { points: vec![i] }).collect(),
            gradings: gradings.into_iter().map(Rat::from_integer).collect(),
            arrows,
            certificate: RigidityCertificate::default(),
        }
    }

    #[test]
    fn tower_is_exact() {
        let r = exactness_check(&data(vec![], vec![0]), 5).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|x| x.interior > 0));
    }

    #[test]
    fn complex_with_u_arrow_is_exact() {
        let arrows = vec![Arrow { from: 0, to: 1, n_z: 1 }];
        exactness_check(&data(arrows, vec![1, 2]), 5).unwrap();
    }
}
