//! Linear algebra over the field with two elements.

pub type F2Vec = Vec<bool>;

pub fn zero(n: usize) -> F2Vec {
    vec![false; n]
}

pub fn unit(n: usize, i: usize) -> F2Vec {
    let mut v = zero(n);
    v[i] = true;
    v
}

pub fn add_into(a: &mut [bool], b: &[bool]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x ^= *y;
    }
}

pub fn is_zero(v: &[bool]) -> bool {
    v.iter().all(|x| !x)
}

/// Row echelon form in which every row remembers which inserted vectors
/// it is the sum of.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<(usize, F2Vec, F2Vec)>,
    tags: usize,
}

impl Echelon {
    pub fn new(tags: usize) -> Echelon {
        Echelon { rows: Vec::new(), tags }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[bool]) -> (F2Vec, F2Vec) {
        let mut v = v.to_vec();
        let mut tag = zero(self.tags);
        for (p, r, t) in &self.rows {
            if v[*p] {
                add_into(&mut v, r);
                add_into(&mut tag, t);
            }
        }
        (v, tag)
    }

    /// Inserts `v` as tag `i`. On dependence, returns the tag combination
    /// summing to zero.
    pub fn insert(&mut self, v: &[bool], i: usize) -> Option<F2Vec> {
        let (r, mut t) = self.reduce(v);
        t[i] ^= true;
        match r.iter().position(|&x| x) {
            Some(p) => {
                for (_, row, tag) in self.rows.iter_mut() {
                    if row[p] {
                        add_into(row, &r);
                        add_into(tag, &t);
                    }
                }
                self.rows.push((p, r, t));
                None
            }
            None => Some(t),
        }
    }

    /// Tags summing to `v`, if `v` is in the span.
    pub fn express(&self, v: &[bool]) -> Option<F2Vec> {
        let (r, t) = self.reduce(v);
        is_zero(&r).then_some(t)
    }
}

/// Kernel of the map sending basis vector `j` to `images[j]`.
pub fn kernel(images: &[F2Vec]) -> Vec<F2Vec> {
    let mut e = Echelon::new(images.len());
    images.iter().enumerate().filter_map(|(j, v)| e.insert(v, j)).collect()
}

pub fn rank(vs: &[F2Vec]) -> usize {
    let mut e = Echelon::new(vs.len());
    for (i, v) in vs.iter().enumerate() {
        e.insert(v, i);
    }
    e.rank()
}

/// Applies the matrix whose columns are `images` to `v`.
pub fn apply(images: &[F2Vec], v: &[bool], target: usize) -> F2Vec {
    let mut out = zero(target);
    for (j, &b) in v.iter().enumerate() {
        if b {
            add_into(&mut out, &images[j]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_sum_map() {
        let images = vec![vec![true], vec![true], vec![false]];
        let k = kernel(&images);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(is_zero(&apply(&images, v, 1)));
        }
    }

    #[test]
    fn express_tracks_tags() {
        let mut e = Echelon::new(2);
        e.insert(&[true, true, false], 0);
        e.insert(&[false, true, true], 1);
        assert_eq!(e.express(&[true, false, true]), Some(vec![true, true]));
        assert_eq!(e.express(&[true, false, false]), None);
    }
}
